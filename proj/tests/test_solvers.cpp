#include <doctest.h>

#include <cmath>

#include "lovx/error.hpp"
#include "lovx/solvers.hpp"

using namespace lovx;

namespace {

using Edges = std::vector<std::pair<int, int>>;

SetFunction cut(int n, Edges e) {
  return SetFunction::set(n, [e](Mask a) {
    double c = 0;
    for (auto [i, j] : e) c += (((a >> i) ^ (a >> j)) & 1u) ? 1.0 : 0.0;
    return c;
  });
}

Functional total_variation(int n, const Edges& e) {
  std::vector<Functional::Term> t;
  for (auto [i, j] : e) t.push_back({{{i, 1.0}, {j, -1.0}}, 1.0});
  return Functional::abs_sum(n, t, "tv");
}

Functional balance(int n) {
  return Functional::lovasz(
      SetFunction::set(n, [n](Mask a) {
        const int c = popcount(a);
        return static_cast<double>(std::min(c, n - c));
      }),
      "balance");
}

FractionalProblem cheeger_p3() {
  const Edges e{{0, 1}, {1, 2}};
  FractionalProblem p = FractionalProblem::ratio(total_variation(3, e), balance(3));
  p.region.kind = Region::LinfSphere;
  return p;
}

FractionalProblem independence_k3() {
  const Edges e{{0, 1}, {1, 2}, {0, 2}};
  std::vector<Functional::Term> t;
  for (auto [i, j] : e) {
    t.push_back({{{i, 1.0}, {j, -1.0}}, 1.0});
    t.push_back({{{i, 1.0}, {j, 1.0}}, 1.0});
  }
  std::vector<Functional::Term> w;
  for (int i = 0; i < 3; ++i) w.push_back({{{i, 1.0}}, 2.0 * (2 - 1)});
  FractionalProblem p;
  p.dim = 3;
  p.f1 = Functional::abs_sum(3, t, "I");
  p.f2 = Functional::abs_sum(3, w, "deg'");
  p.g1 = Functional::scaled(Functional::linf(3), 2.0);
  p.g2 = Functional::zero(3);
  p.sense = Sense::Max;
  return p;
}

void check_monotone(const SolverTrace& tr, double sign) {
  for (std::size_t i = 1; i < tr.iterations.size(); ++i)
    CHECK(sign * tr.iterations[i].r <= sign * tr.iterations[i - 1].r + 1e-9);
}

}  // namespace

TEST_CASE("dinkelbach matches enumeration") {
  const SetFunction c = cut(3, {{0, 1}, {1, 2}});
  const SetFunction g = SetFunction::set(3, [](Mask a) {
    return static_cast<double>(std::min(popcount(a), 3 - popcount(a)));
  });
  const auto d = dinkelbach_discrete(c, g);
  CHECK(d.r == doctest::Approx(1.0));
  CHECK(d.r == doctest::Approx(enumerate_ratio_optimum(c, g).value));
  for (std::size_t i = 1; i < d.trace.size(); ++i) CHECK(d.trace[i] < d.trace[i - 1]);

  const auto same = dinkelbach_discrete(g, g);
  CHECK(same.r == doctest::Approx(1.0));
  CHECK(same.iterations == 1);

  // #A - #E(A) on K3, g = 1, maximized.
  const SetFunction h = SetFunction::set(3, [](Mask a) {
    int e = 0;
    for (auto [i, j] : Edges{{0, 1}, {1, 2}, {0, 2}}) e += ((a >> i) & (a >> j) & 1u) ? 1 : 0;
    return static_cast<double>(popcount(a) - e);
  });
  const SetFunction one = SetFunction::set(3, [](Mask) { return 1.0; });
  CHECK(dinkelbach_discrete(h, one, Family::all(), Sense::Max).r == doctest::Approx(1.0));

  const SetFunction zero = SetFunction::set(3, [](Mask) { return 0.0; });
  CHECK_THROWS_AS(dinkelbach_discrete(c, zero), ComputationError);
}

TEST_CASE("random discrete ratios agree with enumeration") {
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const int n = rng.integer(2, 6);
    std::vector<double> fv(1u << n), gv(1u << n);
    for (auto& v : fv) v = rng.uniform(-2, 3);
    for (auto& v : gv) v = rng.uniform(0.1, 2);
    auto f = SetFunction::set(n, [fv](Mask a) { return fv[a]; });
    auto g = SetFunction::set(n, [gv](Mask a) { return gv[a]; });
    for (Sense s : {Sense::Min, Sense::Max})
      CHECK(dinkelbach_discrete(f, g, Family::nonempty(), s).r ==
            doctest::Approx(enumerate_ratio_optimum(f, g, Family::nonempty(), s).value));
  }
}

TEST_CASE("mixed ipsd recovers the P3 Cheeger constant") {
  FractionalProblem p = cheeger_p3();
  p.check_homogeneity(1);
  SolverConfig cfg;
  cfg.restarts = 20;
  p.rounding = threshold_candidates;
  for (IpsdVariant v : {IpsdVariant::Ball, IpsdVariant::Normalized}) {
    const SolveResult r = mixed_ipsd_multistart(p, cfg, v);
    CHECK(r.r <= 1.0 + 1e-6);
    CHECK(r.r >= 1.0 - 1e-9);
    check_monotone(r.trace, 1.0);
    CHECK(r.trace.eigen_residual <= 1e-6);
  }
  // Without rounding the continuous iteration still gets close.
  p.rounding = nullptr;
  const SolveResult raw = mixed_ipsd_multistart(p, cfg, IpsdVariant::Normalized);
  CHECK(raw.r <= 1.0 + 1e-2);
  check_monotone(raw.trace, 1.0);
}

TEST_CASE("mixed ipsd: constant ratio and zero homogeneity") {
  const Functional tv = total_variation(3, {{0, 1}, {1, 2}});
  FractionalProblem p = FractionalProblem::ratio(tv, tv);
  SolverConfig cfg;
  const SolveResult r = mixed_ipsd(p, cfg, IpsdVariant::Ball, {1.0, 0.2, -0.5});
  for (const auto& it : r.trace.iterations) CHECK(it.r == doctest::Approx(1.0));

  FractionalProblem q = cheeger_p3();
  q.region.kind = Region::LinfBall;
  const Vec x0{0.5, -0.25, 0.125};
  Vec x10 = x0;
  for (double& e : x10) e *= 10;
  const double a = mixed_ipsd(q, cfg, IpsdVariant::Normalized, x0).r;
  const double b = mixed_ipsd(q, cfg, IpsdVariant::Normalized, x10).r;
  CHECK(a == doctest::Approx(b).epsilon(1e-9));
}

TEST_CASE("mixed ipsd reports a zero denominator") {
  FractionalProblem p = cheeger_p3();
  const SolveResult r = mixed_ipsd(p, SolverConfig{}, IpsdVariant::Ball, {1.0, 1.0, 1.0});
  CHECK(r.trace.status == "terminated-at-zero-denominator");
}

TEST_CASE("mixed ipsd recovers alpha(K3) in max sense") {
  FractionalProblem p = independence_k3();
  p.check_homogeneity(3);
  p.rounding = signed_threshold_candidates;
  SolverConfig cfg;
  const SolveResult r = mixed_ipsd_multistart(p, cfg, IpsdVariant::Normalized);
  CHECK(r.r >= 1.0 - 1e-6);
  CHECK(r.r <= 1.0 + 1e-9);
  check_monotone(r.trace, -1.0);
}

TEST_CASE("multistart parallel and serial agree") {
  FractionalProblem p = cheeger_p3();
  SolverConfig cfg;
  cfg.restarts = 6;
  cfg.max_iter = 10;
  const SolveResult a = mixed_ipsd_multistart(p, cfg, IpsdVariant::Ball);
  const SolveResult b = serial::mixed_ipsd_multistart(p, cfg, IpsdVariant::Ball);
  CHECK(a.r == b.r);
  CHECK(a.x == b.x);
  CHECK(a.seed == b.seed);
}

TEST_CASE("projected subgradient examples") {
  SolverConfig cfg;
  cfg.inner_restarts = 4;
  cfg.inner_steps = 2000;
  const Functional l1 = Functional::abs_sum(2, {{{{0, 1.0}}, 1.0}, {{{1, 1.0}}, 1.0}});
  const auto a = projected_subgradient(l1, {Region::LinfSphere}, cfg);
  CHECK(a.value == doctest::Approx(1.0).epsilon(1e-6));

  // P3 total variation plus a |<x,1>| penalty on the sphere; (1,0,-1) gives 2.
  const Functional pen = Functional::sum(
      total_variation(3, {{0, 1}, {1, 2}}),
      Functional::abs_sum(3, {{{{0, 10.0}, {1, 10.0}, {2, 10.0}}, 1.0}}));
  const auto b = projected_subgradient(pen, {Region::LinfSphere}, cfg);
  CHECK(b.value <= 2.0 + 1e-4);

  // ||x - c||^2 on [0,1]^3 is minimized at clamp(c).
  const Vec c{1.5, -0.3, 0.4};
  Functional quad;
  quad.dim = 3;
  quad.degree = 2;
  quad.value = [c](std::span<const double> x) {
    double s = 0;
    for (int i = 0; i < 3; ++i) s += (x[i] - c[i]) * (x[i] - c[i]);
    return s;
  };
  quad.subgradient = [c](std::span<const double> x) {
    Vec g(3);
    for (int i = 0; i < 3; ++i) g[i] = 2 * (x[i] - c[i]);
    return g;
  };
  const auto q = projected_subgradient(quad, {Region::Box, 0.0, 1.0}, cfg);
  CHECK(q.x[0] == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(q.x[1] == doctest::Approx(0.0).epsilon(1e-3));
  CHECK(q.x[2] == doctest::Approx(0.4).epsilon(1e-3));
  const auto q2 = projected_subgradient(quad, {Region::Box, 0.0, 1.0}, cfg);
  CHECK(q2.x == q.x);
}

TEST_CASE("stochastic subgradient on the P3 Cheeger ratio") {
  FractionalProblem p = cheeger_p3();
  SolverConfig cfg;
  cfg.max_iter = 10000;
  const SolveResult r = stochastic_subgradient_ratio(p, cfg, 0.01);
  CHECK(r.r <= 1.05);
  CHECK(r.r >= 1.0 - 1e-9);

  cfg.max_iter = 200;
  const SolveResult a = stochastic_subgradient_ratio(p, cfg, 0.0, {1.0, 0.1, -0.4});
  const SolveResult b = stochastic_subgradient_ratio(p, cfg, 0.0, {1.0, 0.1, -0.4});
  CHECK(a.r == b.r);

  const Functional tv = total_variation(3, {{0, 1}, {1, 2}});
  const SolveResult c =
      stochastic_subgradient_ratio(FractionalProblem::ratio(tv, tv), cfg, 0.01, {1.0, 0.0, 0.3});
  for (const auto& it : c.trace.iterations) CHECK(it.r == doctest::Approx(1.0));
}

TEST_CASE("homogeneity spot check rejects a wrong degree") {
  FractionalProblem p = cheeger_p3();
  p.g1.degree = 2.0;
  CHECK_THROWS_AS(p.check_homogeneity(1), InvalidArgument);
}

TEST_CASE("linf distance to a zonotope plus hull") {
  Subdifferential s(2);
  s.center = {0.5, 0.0};
  s.generators.push_back({1.0, 0.0});
  s.hulls.push_back({{0.0, 2.0}, {0.0, 3.0}});
  // Points: (0.5 + s, y) with s in [-1,1], y in [2,3]; distance to (0,0) is 2.
  CHECK(linf_distance(s, Vec{0.0, 0.0}) == doctest::Approx(2.0));
  CHECK(linf_distance(s, Vec{0.0, 2.5}) == doctest::Approx(0.0));
}
