#include "lovx/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <omp.h>

#include "lovx/error.hpp"
#include "lovx/lp.hpp"

namespace lovx {

namespace {

constexpr double kZeroDen = 1e-14;

double linf_norm(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::fabs(v));
  return m;
}

bool is_sphere(Region r) { return r == Region::LinfSphere || r == Region::NonnegSphere; }

bool better(double a, double b) { return a < b; }

}  // namespace

void project(const RegionSpec& region, Vec& x) {
  switch (region.kind) {
    case Region::Unconstrained:
      return;
    case Region::Custom:
      require(static_cast<bool>(region.custom), "custom region without a projection");
      region.custom(x);
      return;
    case Region::Box:
      for (double& v : x) v = std::clamp(v, region.lo, region.hi);
      return;
    case Region::LinfBall:
      for (double& v : x) v = std::clamp(v, -1.0, 1.0);
      return;
    case Region::NonnegBall:
      for (double& v : x) v = std::clamp(v, 0.0, 1.0);
      return;
    case Region::LinfSphere:
    case Region::NonnegSphere: {
      const double lo = region.kind == Region::NonnegSphere ? 0.0 : -1.0;
      for (double& v : x) v = std::clamp(v, lo, 1.0);
      if (x.empty()) return;
      std::size_t best = 0;
      for (std::size_t i = 1; i < x.size(); ++i)
        if (std::fabs(x[i]) > std::fabs(x[best])) best = i;
      x[best] = x[best] < 0 ? -1.0 : 1.0;
      return;
    }
  }
}

Vec random_point(const RegionSpec& region, int dim, Rng& rng) {
  Vec x;
  switch (region.kind) {
    case Region::Box:
      x = rng.vec(dim, region.lo, region.hi);
      break;
    case Region::Custom:
      x = rng.vec(dim, region.lo, region.hi);
      project(region, x);
      break;
    case Region::NonnegBall:
    case Region::NonnegSphere:
      x = rng.vec(dim, 0.0, 1.0);
      break;
    default:
      x = rng.vec(dim, -1.0, 1.0);
  }
  if (is_sphere(region.kind)) {
    const double m = linf_norm(x);
    if (m > 0)
      for (double& v : x) v /= m;
    else
      project(region, x);
  }
  return x;
}

RegionSpec hull_of(const RegionSpec& region) {
  RegionSpec r = region;
  if (region.kind == Region::LinfSphere) r.kind = Region::LinfBall;
  if (region.kind == Region::NonnegSphere) r.kind = Region::NonnegBall;
  return r;
}

std::vector<Vec> threshold_candidates(std::span<const double> x) {
  Vec levels(x.begin(), x.end());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  std::vector<Vec> out;
  for (double v : levels) {
    Vec c(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) c[i] = x[i] >= v ? 1.0 : 0.0;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<Vec> signed_threshold_candidates(std::span<const double> x) {
  Vec levels;
  for (double v : x)
    if (v != 0) levels.push_back(std::fabs(v));
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  std::vector<Vec> out;
  for (double m : levels) {
    Vec c(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i)
      if (std::fabs(x[i]) >= m) c[i] = x[i] > 0 ? 1.0 : -1.0;
    out.push_back(std::move(c));
  }
  return out;
}

FractionalProblem FractionalProblem::ratio(const Functional& f, const Functional& g) {
  require(f.dim == g.dim, "numerator and denominator dimensions differ");
  FractionalProblem p;
  p.dim = f.dim;
  p.f1 = f;
  p.f2 = Functional::zero(f.dim);
  p.g1 = g;
  p.g2 = Functional::zero(f.dim);
  return p;
}

void FractionalProblem::check_homogeneity(std::uint64_t seed, double tol) const {
  Rng rng(seed);
  for (const Functional* part : {&f1, &f2, &g1, &g2}) {
    require(part->dim == dim, "part " + part->name + " has the wrong dimension");
    const double scale = std::pow(2.0, part->degree);
    for (int t = 0; t < 10; ++t) {
      Vec x = random_point(hull_of(region), dim, rng);
      Vec x2 = x;
      for (double& v : x2) v *= 2.0;
      const double a = (*part)(x2), b = scale * (*part)(x);
      if (std::fabs(a - b) > tol * std::max({1.0, std::fabs(a), std::fabs(b)}))
        throw InvalidArgument("part " + part->name + " is not homogeneous of the declared degree");
    }
  }
}

void SolverConfig::validate() const {
  require(max_iter > 0 && restarts > 0 && inner_restarts > 0 && inner_steps > 0,
          "solver iteration counts must be positive");
  require(tol > 0 && step_c > 0, "solver tolerance and step constant must be positive");
  require(proximal_weight >= 0, "proximal weight must be nonnegative");
}

// ---------------------------------------------------------------- discrete

DiscreteRatioResult dinkelbach_discrete(const SetFunction& f, const SetFunction& g,
                                        const Family& family, Sense sense) {
  require(f.n() == g.n() && f.mode() == g.mode() && f.k() == g.k(),
          "f and g must share shape");
  require(f.n() <= 20, "dinkelbach_discrete needs n <= 20");
  const double sgn = sense == Sense::Min ? 1.0 : -1.0;

  struct Best {
    bool found = false;
    double val = 0.0;
    Arg arg;
  };
  // argmin over the family of sgn*(f - r g), restricted to g > 0.
  auto argopt = [&](double r) {
    Best b;
    for_each_argument(f, [&](std::span<const Mask> a) {
      if (!family(a)) return;
      const double gv = g.raw(a);
      if (gv < 0) throw InvalidArgument("g is negative at " + format_arg(a, f.mode(), f.n()));
      if (gv <= 0) return;
      const double v = sgn * (f.raw(a) - r * gv);
      if (!b.found || v < b.val) {
        b.found = true;
        b.val = v;
        b.arg.assign(a.begin(), a.end());
      }
    });
    return b;
  };

  DiscreteRatioResult out;
  Best start = argopt(0.0);
  if (!start.found) throw ComputationError("no feasible argument with g > 0");
  out.arg = start.arg;
  out.r = f.raw(out.arg) / g.raw(out.arg);
  out.trace.push_back(out.r);
  for (int it = 0; it < 1000; ++it) {
    ++out.iterations;
    Best b = argopt(out.r);
    const double r = f.raw(b.arg) / g.raw(b.arg);
    const double scale = std::max(1.0, std::fabs(out.r));
    if (b.val >= -1e-12 * scale || sgn * (r - out.r) >= -1e-15 * scale) break;
    out.r = r;
    out.arg = b.arg;
    out.trace.push_back(r);
  }
  return out;
}

// ---------------------------------------------------------------- LP residual

double linf_distance(const Subdifferential& sub, std::span<const double> shift) {
  const int d = static_cast<int>(shift.size());
  lp::Problem p;
  const int t = p.add_var(0.0, lp::kInf, 1.0);
  std::vector<std::vector<std::pair<int, double>>> rows(d);
  for (const Vec& gen : sub.generators) {
    const int s = p.add_var(-1.0, 1.0);
    for (int i = 0; i < d; ++i)
      if (gen[i] != 0) rows[i].push_back({s, gen[i]});
  }
  for (const auto& hull : sub.hulls) {
    std::vector<std::pair<int, double>> simplex;
    for (const Vec& v : hull) {
      const int m = p.add_var(0.0, 1.0);
      simplex.push_back({m, 1.0});
      for (int i = 0; i < d; ++i)
        if (v[i] != 0) rows[i].push_back({m, v[i]});
    }
    p.add_row(simplex, 1.0);
  }
  Vec base(d, 0.0);
  for (int i = 0; i < d; ++i)
    base[i] = (sub.center.empty() ? 0.0 : sub.center[i]) - shift[i];
  for (int i = 0; i < d; ++i) {
    // base_i + row_i - t + slack = 0 and -(base_i + row_i) - t + slack = 0
    for (double sg : {1.0, -1.0}) {
      auto coef = rows[i];
      for (auto& c : coef) c.second *= sg;
      coef.push_back({t, -1.0});
      coef.push_back({p.add_var(0.0, lp::kInf), 1.0});
      p.add_row(coef, -sg * base[i]);
    }
  }
  const lp::Solution s = lp::solve(p, lp::Arithmetic::Float);
  if (s.status != lp::Status::Optimal) throw ComputationError("residual LP did not solve");
  return s.objective;
}

// ---------------------------------------------------------------- projected subgradient

ProjectedResult projected_subgradient(const std::function<double(std::span<const double>)>& value,
                                      const std::function<Vec(std::span<const double>)>& subgrad,
                                      int dim, const RegionSpec& region, const SolverConfig& cfg,
                                      const Vec& x0) {
  cfg.validate();
  ProjectedResult best;
  best.value = std::numeric_limits<double>::infinity();
  Rng rng(cfg.seed);
  for (int rs = 0; rs < cfg.inner_restarts; ++rs) {
    Vec x = (rs == 0 && !x0.empty()) ? x0 : random_point(region, dim, rng);
    project(region, x);
    double fx = value(x);
    if (fx < best.value) best = {fx, x};
    for (int t = 0; t < cfg.inner_steps; ++t) {
      Vec g = subgrad(x);
      double norm = 0.0;
      for (double v : g) norm += v * v;
      norm = std::sqrt(norm);
      if (norm < 1e-15) break;
      const double a = cfg.step_c / std::sqrt(t + 1.0) / norm;
      for (int i = 0; i < dim; ++i) x[i] -= a * g[i];
      project(region, x);
      fx = value(x);
      if (fx < best.value) best = {fx, x};
    }
  }
  return best;
}

ProjectedResult projected_subgradient(const Functional& f, const RegionSpec& region,
                                      const SolverConfig& cfg, const Vec& x0) {
  return projected_subgradient(f.value, f.subgradient, f.dim, region, cfg, x0);
}

// ---------------------------------------------------------------- mixed IP-SD

namespace {

// The problem seen as a minimization: max F/G becomes min (-F)/G.
struct MinView {
  const Functional* f1;
  const Functional* f2;
  const Functional* g1;
  const Functional* g2;
  double sign;
};

MinView min_view(const FractionalProblem& p) {
  if (p.sense == Sense::Min) return {&p.f1, &p.f2, &p.g1, &p.g2, 1.0};
  return {&p.f2, &p.f1, &p.g1, &p.g2, -1.0};
}

double min_ratio(const MinView& v, std::span<const double> x) {
  return ((*v.f1)(x) - (*v.f2)(x)) / ((*v.g1)(x) - (*v.g2)(x));
}

double denominator(const MinView& v, std::span<const double> x) {
  return (*v.g1)(x) - (*v.g2)(x);
}

void axpy(Vec& y, double a, const Vec& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

// Applies the problem's rounding; returns true when the iterate changed.
bool round_iterate(const FractionalProblem& prob, const MinView& v, Vec& x, double& r) {
  if (!prob.rounding) return false;
  bool changed = false;
  for (Vec& c : prob.rounding(x)) {
    if (!(denominator(v, c) > kZeroDen)) continue;
    const double rc = min_ratio(v, c);
    if (rc < r) {
      r = rc;
      x = std::move(c);
      changed = true;
    }
  }
  return changed;
}

// Convex and linearized parts of F - rG at the current r (internal sense).
struct Split {
  const Functional* convex_g;
  const Functional* concave_g;
  double c;
};

Split split_for(const MinView& v, double r) {
  if (r >= 0) return {v.g2, v.g1, r};
  return {v.g1, v.g2, -r};
}

double eigen_residual(const MinView& v, double r, std::span<const double> x) {
  const Split s = split_for(v, r);
  Subdifferential sub(static_cast<int>(x.size()));
  sub.add(v.f1->subdifferential(x, 1e-9), 1.0);
  sub.add(s.convex_g->subdifferential(x, 1e-9), s.c);
  Vec shift = v.f2->subgradient(x);
  axpy(shift, s.c, s.concave_g->subgradient(x));
  std::size_t vars = sub.generators.size();
  for (const auto& h : sub.hulls) vars += h.size();
  if (vars > 4000) {
    // Too many vertices for the dense LP; use the selected subgradients.
    Vec g = v.f1->subgradient(x);
    axpy(g, s.c, s.convex_g->subgradient(x));
    double m = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) m = std::max(m, std::fabs(g[i] - shift[i]));
    return m;
  }
  return linf_distance(sub, shift);
}

}  // namespace

SolveResult mixed_ipsd(const FractionalProblem& prob, const SolverConfig& cfg,
                       IpsdVariant variant, const Vec& x0) {
  cfg.validate();
  require(static_cast<int>(x0.size()) == prob.dim, "x0 has the wrong dimension");
  const MinView v = min_view(prob);
  SolveResult out;
  out.seed = cfg.seed;
  SolverTrace& tr = out.trace;

  Vec x = x0;
  if (!prob.finite.empty()) {
    // Explicit finite set: the optimum is found by inspection.
    double best = std::numeric_limits<double>::infinity();
    for (const Vec& p : prob.finite) {
      if (!(denominator(v, p) > kZeroDen)) continue;
      const double r = min_ratio(v, p);
      if (r < best) {
        best = r;
        x = p;
      }
    }
    if (!std::isfinite(best)) throw ComputationError("finite feasible set has no point with G > 0");
    out.r = v.sign * best;
    out.x = x;
    tr.iterations.push_back({0, out.r, x, "finite"});
    tr.converged = true;
    tr.status = "converged";
    return out;
  }

  if (prob.region.kind != Region::Box && prob.region.kind != Region::Unconstrained) {
    // The ratio is zero-homogeneous, so the start is rescaled onto the sphere.
    const double m = linf_norm(x);
    if (m > 0)
      for (double& e : x) e /= m;
    if (is_sphere(prob.region.kind)) project(prob.region, x);
  }
  if (!(denominator(v, x) > kZeroDen)) {
    out.x = x;
    out.r = 0.0;
    tr.status = "terminated-at-zero-denominator";
    return out;
  }
  double r = min_ratio(v, x);
  if (round_iterate(prob, v, x, r)) tr.iterations.push_back({0, v.sign * r, x, "rounded"});
  else tr.iterations.push_back({0, v.sign * r, x, "start"});

  const RegionSpec inner_region = hull_of(prob.region);
  SolverConfig inner = cfg;
  const double lambda = cfg.proximal_weight;

  for (int k = 1; k <= cfg.max_iter; ++k) {
    const Split s = split_for(v, r);
    // Majorize the concave part at x with its selected subgradients.
    Vec lin = v.f2->subgradient(x);
    axpy(lin, s.c, s.concave_g->subgradient(x));
    const double lin_const = (*v.f2)(x) + s.c * (*s.concave_g)(x);
    double lin_at_x = 0.0;
    for (int i = 0; i < prob.dim; ++i) lin_at_x += lin[i] * x[i];
    const Vec xk = x;
    auto psi = [&](std::span<const double> y) {
      double val = (*v.f1)(y) + s.c * (*s.convex_g)(y) - lin_const + lin_at_x;
      for (int i = 0; i < prob.dim; ++i)
        val += -lin[i] * y[i] + lambda * (y[i] - xk[i]) * (y[i] - xk[i]);
      return val;
    };
    auto dpsi = [&](std::span<const double> y) {
      Vec g = v.f1->subgradient(y);
      axpy(g, s.c, s.convex_g->subgradient(y));
      for (int i = 0; i < prob.dim; ++i) g[i] += -lin[i] + 2.0 * lambda * (y[i] - xk[i]);
      return g;
    };
    inner.seed = stream_seed(cfg.seed, 1000003ULL + k);
    ProjectedResult pr = projected_subgradient(psi, dpsi, prob.dim, inner_region, inner, xk);
    Vec y = pr.x;
    std::string status = "ok";
    if (variant == IpsdVariant::Normalized) {
      const double m = linf_norm(y);
      if (m > 0)
        for (double& e : y) e /= m;
    }
    if (!(denominator(v, y) > kZeroDen)) {
      tr.iterations.push_back({k, v.sign * r, x, "terminated-at-zero-denominator"});
      tr.status = "terminated-at-zero-denominator";
      break;
    }
    double rn = min_ratio(v, y);
    if (round_iterate(prob, v, y, rn)) status = "rounded";
    if (rn > r + 1e-9 * (1.0 + std::fabs(r))) {
      // The inexact inner solve failed to descend; keep x^k.
      tr.iterations.push_back({k, v.sign * r, x, "inner-stall"});
      tr.status = "inner-stall";
      break;
    }
    const bool done = std::fabs(rn - r) <= cfg.tol * (1.0 + std::fabs(r));
    if (rn <= r) {
      x = std::move(y);
      r = rn;
    }
    tr.iterations.push_back({k, v.sign * r, x, status});
    if (done) {
      tr.converged = true;
      tr.status = "converged";
      break;
    }
  }
  if (tr.status.empty()) tr.status = "max-iter";
  out.r = v.sign * r;
  out.x = x;
  if (tr.status != "terminated-at-zero-denominator") tr.eigen_residual = eigen_residual(v, r, x);
  return out;
}

namespace {

SolveResult multistart_impl(const FractionalProblem& prob, const SolverConfig& cfg,
                            IpsdVariant variant, bool parallel) {
  cfg.validate();
  const int R = cfg.restarts;
  std::vector<SolveResult> runs(R);
  std::vector<std::string> errors(R);
  auto one = [&](int i) {
    SolverConfig c = cfg;
    c.seed = stream_seed(cfg.seed, i);
    Rng rng(c.seed);
    Vec x0 = random_point(prob.region, prob.dim, rng);
    try {
      runs[i] = mixed_ipsd(prob, c, variant, x0);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < R; ++i) one(i);
  } else {
    for (int i = 0; i < R; ++i) one(i);
  }
  const double sgn = prob.sense == Sense::Min ? 1.0 : -1.0;
  int best = -1;
  for (int i = 0; i < R; ++i) {
    if (!errors[i].empty() || runs[i].trace.status == "terminated-at-zero-denominator") continue;
    if (best < 0 || better(sgn * runs[i].r, sgn * runs[best].r)) best = i;
  }
  if (best < 0) {
    for (int i = 0; i < R; ++i)
      if (!errors[i].empty()) throw ComputationError(errors[i]);
    return runs[0];
  }
  return runs[best];
}

}  // namespace

SolveResult mixed_ipsd_multistart(const FractionalProblem& prob, const SolverConfig& cfg,
                                  IpsdVariant variant) {
  return multistart_impl(prob, cfg, variant, true);
}

namespace serial {
SolveResult mixed_ipsd_multistart(const FractionalProblem& prob, const SolverConfig& cfg,
                                  IpsdVariant variant) {
  return multistart_impl(prob, cfg, variant, false);
}
}  // namespace serial

// ---------------------------------------------------------------- stochastic

SolveResult stochastic_subgradient_ratio(const FractionalProblem& prob, const SolverConfig& cfg,
                                         double noise_scale, const Vec& x0) {
  cfg.validate();
  require(noise_scale >= 0, "noise scale must be nonnegative");
  const MinView v = min_view(prob);
  Rng rng(cfg.seed);
  Vec x = x0.empty() ? random_point(prob.region, prob.dim, rng) : x0;
  require(static_cast<int>(x.size()) == prob.dim, "x0 has the wrong dimension");
  RegionSpec sphere = prob.region;
  if (sphere.kind == Region::LinfBall || sphere.kind == Region::Unconstrained ||
      sphere.kind == Region::Box)
    sphere.kind = Region::LinfSphere;
  if (sphere.kind == Region::NonnegBall) sphere.kind = Region::NonnegSphere;
  auto renormalize = [&](Vec& y) {
    const double m = linf_norm(y);
    if (m > 0)
      for (double& e : y) e /= m;
    project(sphere, y);
  };
  renormalize(x);

  SolveResult out;
  out.seed = cfg.seed;
  double best = std::numeric_limits<double>::infinity();
  for (int t = 0; t < cfg.max_iter; ++t) {
    const double G = denominator(v, x);
    if (!(G > kZeroDen)) {
      // Denominator underflow: perturb and continue.
      for (double& e : x) e += rng.normal(0.1);
      renormalize(x);
      continue;
    }
    const double r = min_ratio(v, x);
    if (r < best) {
      best = r;
      out.x = x;
      out.trace.iterations.push_back({t, v.sign * r, x, "improved"});
    }
    Vec y = v.f1->subgradient(x);
    axpy(y, -1.0, v.f2->subgradient(x));
    axpy(y, -r, v.g1->subgradient(x));
    axpy(y, r, v.g2->subgradient(x));
    const double a = cfg.step_c / std::sqrt(t + 1.0);
    for (int i = 0; i < prob.dim; ++i) x[i] -= a * (y[i] / G + rng.normal(1.0) * noise_scale);
    renormalize(x);
  }
  if (!std::isfinite(best)) {
    out.trace.status = "terminated-at-zero-denominator";
    return out;
  }
  out.r = v.sign * best;
  out.trace.status = "max-iter";
  return out;
}

}  // namespace lovx
