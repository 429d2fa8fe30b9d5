#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lovx/graph.hpp"
#include "lovx/setfun.hpp"
#include "lovx/solvers.hpp"

namespace lovx {

// ---------------------------------------------------------------- catalog

struct CatalogRow {
  std::string name;
  std::string description;
  SetFunction discrete;
  std::function<double(std::span<const double>)> closed_form;
};

// t1.* rows are set functions, t2.* rows are set-pair functions.
std::vector<std::string> catalog_names();
CatalogRow functional_catalog(const std::string& name, const Graph& g, double c = 1.0);

// min_t sum_i w_i |x_i - t|
double weighted_median_deviation(std::span<const double> x, std::span<const double> w);

// ---------------------------------------------------------------- invariants

enum class Method { Discrete, Continuous, Both };
Method parse_method(const std::string& s);

// A continuous representation whose optimum equals the discrete invariant.
struct ContinuousForm {
  Sense sense = Sense::Min;
  int dim = 0;
  // NaN where the representation is undefined (zero denominator).
  std::function<double(std::span<const double>)> objective;
  std::function<Vec(Rng&)> sample;
};

struct InvariantResult {
  std::string name;
  double value = 0.0;
  std::string witness;
  Vec indicator;  // the witness in the continuous domain
  std::optional<ContinuousForm> form;
  std::optional<double> continuous;
  bool certified = true;
  std::string note;
};

InvariantResult independence_number(const Graph& g, Method method = Method::Discrete,
                                    const SolverConfig& cfg = {});
InvariantResult chromatic_number(const Graph& g, Method method = Method::Discrete,
                                 const SolverConfig& cfg = {});
InvariantResult max_kcut(const Graph& g, int k, Method method = Method::Discrete,
                         const SolverConfig& cfg = {});
InvariantResult matching_number(const Graph& g, Method method = Method::Discrete,
                                const SolverConfig& cfg = {});
InvariantResult k_independence_number(const Graph& g, int k);
InvariantResult clique_cover_number(const Graph& g);
int clique_number(const Graph& g);

enum class CheegerVariant {
  Classic,         // cut / min(vol A, vol A^c)
  Expansion,       // cut / min(#A, #A^c)
  Multiplicative,  // cut / (#A #A^c)
  Profile,         // IP(k): cut / #A over 1 <= #A <= k
  Internal,
  External,
  Vertex,
  Dirichlet,  // h_1 of the interior
  Neumann     // h of the interior
};
CheegerVariant parse_cheeger_variant(const std::string& s);
std::string cheeger_variant_name(CheegerVariant v);

InvariantResult cheeger(const Graph& g, CheegerVariant v, int profile_k = 0,
                        Method method = Method::Discrete, const SolverConfig& cfg = {});
// The continuous Rayleigh form as a solver problem (not available for Profile).
FractionalProblem cheeger_problem(const Graph& g, CheegerVariant v);
FractionalProblem independence_problem(const Graph& g);
// Colour-major n x n matrix; max sense; gamma = n^2 - optimum.
FractionalProblem chromatic_problem(const Graph& g);

// Continuous chromatic objective n^2 - ratio, x colour-major (row = colour class).
double chromatic_objective(const Graph& g, std::span<const double> x);
// Same quantity from the per-vertex display; m is vertex-major (row = vertex).
double chromatic_objective_by_vertex(const Graph& g, std::span<const double> m);
// n-way pair function whose minimum is the chromatic number.
SetFunction coloring_function(const Graph& g);
// Continuous max k-cut ratio; x holds k-1 nonnegative blocks with disjoint supports.
double maxkcut_ratio(const Graph& g, int k, std::span<const double> x);
double matching_ratio(const Graph& g, std::span<const double> y);

struct CheegerLike {
  double max_form = 0.0;  // max over edges of 1/deg v + 1/deg w
  Edge argmax;
  double bipartite_form = 0.0;  // NaN when the edge set is too large to enumerate
  double continuous_at_argmax = 0.0;
  double continuous_best_sampled = 0.0;
  double companion = 0.0;  // min over edges of |N(v) & N(w)| / max deg
  Edge argmin;
  double companion_at_argmin = 0.0;
  double companion_best_sampled = 0.0;
};
CheegerLike cheeger_like(const Graph& g, int samples = 1000, std::uint64_t seed = 42);
double cheeger_like_ratio(const Graph& g, std::span<const double> x);
double companion_ratio(const Graph& g, std::span<const double> x);

struct PoincareReport {
  double h_int = 0.0, h_ext = 0.0, h_ver = 0.0;
  double p1_at_hver = 0.0;  // quotient at the centred h_ver indicator
  double p1_best = 0.0;
  double lower = 0.0;  // max(h_int, h_ext) / 2
  bool holds = false;
};
double poincare_quotient(const Graph& g, std::span<const double> x);
PoincareReport poincare_profile_check(const Graph& g, const SolverConfig& cfg = {},
                                      double tol = 1e-9);

struct RelaxationResult {
  double exact = 0.0;
  std::string witness;
  double relaxation = 0.0;
  Vec x;
  bool submodular = true;
};
RelaxationResult submodular_vertex_cover(const Graph& g, const SetFunction& f,
                                         const SolverConfig& cfg = {});
RelaxationResult multiway_partition(const SetFunction& f, const std::vector<int>& terminals,
                                    const SolverConfig& cfg = {});

// ---------------------------------------------------------------- discrete vs continuous

struct OptimumCheck {
  double discrete = 0.0;
  double at_indicator = 0.0;
  double best_sampled = 0.0;
  long samples = 0;
  bool indicator_exact = false;
  bool never_beaten = false;
};

// Evaluates the form at the witness and at `samples` feasible points drawn
// from stream_seed(seed, i). Parallel over samples; serial:: is the reference.
OptimumCheck check_discrete_continuous(const InvariantResult& r, long samples,
                                       std::uint64_t seed, double tol = 1e-9);
namespace serial {
OptimumCheck check_discrete_continuous(const InvariantResult& r, long samples,
                                       std::uint64_t seed, double tol = 1e-9);
}

}  // namespace lovx
