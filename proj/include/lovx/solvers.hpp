#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "lovx/functional.hpp"
#include "lovx/random.hpp"
#include "lovx/setfun.hpp"

namespace lovx {

using Vec = std::vector<double>;

enum class Region { LinfSphere, LinfBall, NonnegSphere, NonnegBall, Box, Unconstrained, Custom };

struct RegionSpec {
  Region kind = Region::LinfSphere;
  double lo = -1.0;  // Box only
  double hi = 1.0;
  // Custom only: maps a point of [lo,hi]^d into the feasible set.
  std::function<void(Vec&)> custom;
};

// Euclidean projection for balls and boxes. Sphere regions snap the
// largest-magnitude coordinate onto the boundary after clamping.
void project(const RegionSpec& region, Vec& x);
Vec random_point(const RegionSpec& region, int dim, Rng& rng);
// The ball containing a sphere region (identity otherwise).
RegionSpec hull_of(const RegionSpec& region);

using RoundingFn = std::function<std::vector<Vec>(std::span<const double>)>;
// {x >= v} indicators for every level v of x.
std::vector<Vec> threshold_candidates(std::span<const double> x);
// sign(x) * [|x| >= m] for every positive magnitude level m.
std::vector<Vec> signed_threshold_candidates(std::span<const double> x);

// min or max of (F1 - F2) / (G1 - G2).
struct FractionalProblem {
  int dim = 0;
  Functional f1, f2, g1, g2;
  RegionSpec region;
  Sense sense = Sense::Min;
  // Explicit finite feasible set; when nonempty the continuous region is ignored.
  std::vector<Vec> finite;
  // Optional rounding applied after each outer step; a candidate replaces
  // the iterate only when its ratio is strictly better.
  RoundingFn rounding;

  static FractionalProblem ratio(const Functional& f, const Functional& g);

  double F(std::span<const double> x) const { return f1(x) - f2(x); }
  double G(std::span<const double> x) const { return g1(x) - g2(x); }
  double ratio_at(std::span<const double> x) const { return F(x) / G(x); }

  // Spot check P(2x) = 2^p P(x) for every part on 10 random points.
  void check_homogeneity(std::uint64_t seed, double tol = 1e-9) const;
};

struct SolverConfig {
  int max_iter = 100;
  double tol = 1e-9;
  int restarts = 20;
  int inner_restarts = 1;
  int inner_steps = 400;
  double step_c = 0.5;
  std::uint64_t seed = 42;
  double proximal_weight = 1.0;  // lambda; 0 realizes a constant H

  void validate() const;
};

struct TraceEntry {
  int k = 0;
  double r = 0.0;
  Vec x;
  std::string status;
};

struct SolverTrace {
  std::vector<TraceEntry> iterations;
  bool converged = false;
  std::string status;
  double eigen_residual = std::numeric_limits<double>::quiet_NaN();
};

struct SolveResult {
  double r = 0.0;
  Vec x;
  SolverTrace trace;
  std::uint64_t seed = 0;
};

struct DiscreteRatioResult {
  double r = 0.0;
  Arg arg;
  std::vector<double> trace;
  int iterations = 0;
};

// Dinkelbach iteration with each argopt solved by enumeration.
DiscreteRatioResult dinkelbach_discrete(const SetFunction& f, const SetFunction& g,
                                        const Family& family = Family::all(),
                                        Sense sense = Sense::Min);

enum class IpsdVariant { Ball, Normalized };

SolveResult mixed_ipsd(const FractionalProblem& prob, const SolverConfig& cfg,
                       IpsdVariant variant, const Vec& x0);

// Restarts drawn from stream_seed(cfg.seed, i); best by value, then lowest i.
SolveResult mixed_ipsd_multistart(const FractionalProblem& prob, const SolverConfig& cfg,
                                  IpsdVariant variant);

namespace serial {
SolveResult mixed_ipsd_multistart(const FractionalProblem& prob, const SolverConfig& cfg,
                                  IpsdVariant variant);
}

struct ProjectedResult {
  double value = 0.0;
  Vec x;
};

// Minimizes a convex F over the region; restart 0 uses x0 when given.
ProjectedResult projected_subgradient(const Functional& f, const RegionSpec& region,
                                      const SolverConfig& cfg, const Vec& x0 = {});
// Same, with a caller-supplied objective and subgradient.
ProjectedResult projected_subgradient(const std::function<double(std::span<const double>)>& value,
                                      const std::function<Vec(std::span<const double>)>& subgrad,
                                      int dim, const RegionSpec& region, const SolverConfig& cfg,
                                      const Vec& x0 = {});

// x <- x - a_t (y + xi) on F/G with y a subgradient of the ratio and
// xi ~ N(0, noise^2); cfg.max_iter steps. Iterates live on the l-inf sphere.
SolveResult stochastic_subgradient_ratio(const FractionalProblem& prob, const SolverConfig& cfg,
                                         double noise_scale, const Vec& x0 = {});

// dist_inf(0, S + c) for S described by `sub`, via LP.
double linf_distance(const Subdifferential& sub, std::span<const double> shift);

}  // namespace lovx
