#include <doctest.h>

#include <cmath>

#include "lovx/corpus.hpp"
#include "lovx/error.hpp"
#include "lovx/graphinv.hpp"
#include "lovx/lovasz.hpp"

using namespace lovx;

namespace {

Vec random_point(int d, Rng& rng, bool nonneg = false) {
  Vec x(d);
  for (double& v : x) {
    v = rng.uniform(nonneg ? 0.0 : -1.0, 1.0);
    if (rng.coin(0.25)) v = std::round(v * 2) / 2;
  }
  return x;
}

// max over S of #S - #E(S), brute force.
int difference_formula(const Graph& g) {
  int best = 0;
  for (Mask s = 0; s < (Mask{1} << g.n()); ++s)
    best = std::max(best, popcount(s) - g.edges_inside(s));
  return best;
}

}  // namespace

TEST_CASE("catalog closed forms equal the Lovasz extension") {
  Rng rng(7);
  for (const Graph& g : {Graph::path(3), Graph::complete(3), Graph::cycle(4), Graph::star(3)}) {
    for (const auto& name : catalog_names()) {
      const CatalogRow row = functional_catalog(name, g, 2.5);
      for (int t = 0; t < 200; ++t) {
        const Vec x = random_point(row.discrete.dim(), rng);
        CHECK(row.closed_form(x) == doctest::Approx(lovasz_eval(row.discrete, x)).epsilon(1e-12));
      }
    }
  }
  CHECK_THROWS_AS(functional_catalog("t3.nope", Graph::path(3)), InvalidArgument);
}

TEST_CASE("catalog anchors") {
  const Vec e0{1.0, 0.0, 0.0};
  CHECK(functional_catalog("t1.size_product", Graph::complete(3)).closed_form(e0) == 2.0);
  CHECK(functional_catalog("t1.vertex_boundary", Graph::path(3)).closed_form(e0) == 2.0);
  const Vec x{0.5, -2.0, 1.0};
  CHECK(functional_catalog("t2.const", Graph::path(3), 3.0).closed_form(x) == 6.0);
}

TEST_CASE("unweighted median forms disagree with the extension") {
  // Unweighted min_t ||x - t1||_1 is not the extension of min(vol A, vol A^c) on P3.
  const Graph p3 = Graph::path(3);
  const CatalogRow row = functional_catalog("t1.min_volume", p3);
  const Vec x{1.0, 0.0, 0.0};
  const double unweighted = weighted_median_deviation(x, Vec{1, 1, 1});
  CHECK(unweighted == 1.0);
  CHECK(lovasz_eval(row.discrete, x) == 1.0);
  const Vec y{0.0, 1.0, 0.0};
  CHECK(weighted_median_deviation(y, Vec{1, 1, 1}) == 1.0);
  CHECK(lovasz_eval(row.discrete, y) == 2.0);
  // Set-pair row: min_a || |x| - a 1 || vanishes at (1,-1) on K2, the extension does not.
  const CatalogRow pair = functional_catalog("t2.min_volume_sum", Graph::complete(2));
  CHECK(lovasz_eval(pair.discrete, Vec{1.0, -1.0}) == 2.0);
  CHECK(weighted_median_deviation(Vec{1.0, 1.0}, Vec{1.0, 1.0}) == 0.0);
}

TEST_CASE("independence number") {
  CHECK(independence_number(Graph::complete(3)).value == 1);
  CHECK(independence_number(Graph::path(3)).value == 2);
  CHECK(independence_number(Graph::edgeless(4)).value == 4);
  const auto k3 = independence_number(Graph::complete(3));
  CHECK(k3.form->objective(Vec{1, 0, 0}) == 1.0);
  CHECK(independence_number(Graph::path(3)).form->objective(Vec{1, 0, 1}) == 2.0);
  for (const Graph& g : graph_corpus())
    CHECK(independence_number(g).value == difference_formula(g));
  SolverConfig cfg;
  const auto both = independence_number(Graph::complete(3), Method::Both, cfg);
  CHECK(*both.continuous >= 1.0 - 1e-6);
  CHECK_FALSE(both.certified);
}

TEST_CASE("chromatic number") {
  const Graph k3 = Graph::complete(3);
  const auto r = chromatic_number(k3);
  CHECK(r.value == 3);
  Vec id(9, 0.0);
  for (int i = 0; i < 3; ++i) id[i * 3 + i] = 1.0;
  CHECK(chromatic_objective(k3, id) == 3.0);
  CHECK(chromatic_number(Graph::path(3)).value == 2);
  const Graph e3 = Graph::edgeless(3);
  CHECK(chromatic_number(e3).value == 1);
  CHECK(coloring_function(e3)({0b111, 0, 0, 0, 0, 0}) == 1.0);
  // Perfect graphs: chromatic number equals clique number.
  for (const Graph& g : {Graph::complete(4), Graph::complete_bipartite(2, 3), Graph::cycle(6),
                         Graph::path(5), Graph::complete(5)})
    CHECK(chromatic_number(g).value == clique_number(g));
  CHECK(chromatic_number(Graph::cycle(5)).value == 3);
  // Clique cover of C4 is 2, of its complement (2K2) also 2; of P3 it is 2.
  CHECK(clique_cover_number(Graph::cycle(4)).value == 2);
  CHECK(clique_cover_number(Graph::path(3)).value == 2);
  CHECK(clique_cover_number(Graph::edgeless(3)).value == 3);
}

TEST_CASE("chromatic continuous forms agree everywhere") {
  Rng rng(3);
  for (const Graph& g : {Graph::path(3), Graph::complete(3), Graph(3, {{0, 1}})}) {
    const int n = g.n();
    const SetFunction f = coloring_function(g);
    for (int t = 0; t < 200; ++t) {
      const Vec x = random_point(n * n, rng);
      double m = 0;
      for (double v : x) m = std::max(m, std::fabs(v));
      if (m == 0) continue;
      const double ours = chromatic_objective(g, x);
      CHECK(ours == doctest::Approx(lovasz_eval(f, x) / m).epsilon(1e-12));
      Vec tr(n * n);
      for (int c = 0; c < n; ++c)
        for (int v = 0; v < n; ++v) tr[v * n + c] = x[c * n + v];
      CHECK(chromatic_objective_by_vertex(g, tr) == doctest::Approx(ours).epsilon(1e-12));
    }
  }
}

TEST_CASE("max k-cut") {
  CHECK(max_kcut(Graph::complete(3), 2).value == 2);
  CHECK(max_kcut(Graph::cycle(4), 2).value == 4);
  CHECK(max_kcut(Graph::complete(3), 3).value == 3);
  CHECK_THROWS_AS(max_kcut(Graph::complete(3), 4), InvalidArgument);
  // The ratio equals the k-way extension of half the boundary sum.
  Rng rng(9);
  for (int k : {2, 3}) {
    const Graph g = Graph::cycle(5);
    const int n = g.n();
    const SetFunction fk = SetFunction::from_callable(n, Mode::KWay, k - 1, [g](std::span<const Mask> a) {
      double s = 0;
      Mask u = 0;
      for (Mask m : a) {
        s += g.cut(m);
        u |= m;
      }
      return (s + g.cut(u)) / 2.0;
    });
    const auto form = *max_kcut(g, k).form;
    for (int t = 0; t < 200; ++t) {
      const Vec x = form.sample(rng);
      const double m = *std::max_element(x.begin(), x.end());
      CHECK(form.objective(x) == doctest::Approx(lovasz_eval(fk, x) / m).epsilon(1e-12));
    }
  }
}

TEST_CASE("matching number") {
  const auto p4 = matching_number(Graph::path(4));
  CHECK(p4.value == 2);
  CHECK(matching_ratio(Graph::path(4), Vec{1, 0, 1}) == 2.0);
  CHECK(matching_number(Graph::path(3)).value == 1);
  CHECK(matching_ratio(Graph::path(3), Vec{0.3, 0.0}) == 1.0);
  CHECK(matching_ratio(Graph::path(3), Vec{0.3, 0.7}) == 1.0);
  const Graph pm(6, {{0, 1}, {2, 3}, {4, 5}});
  CHECK(matching_number(pm).value == 3);
  CHECK(matching_ratio(pm, Vec{1, 1, 1}) == 3.0);
  CHECK(matching_number(Graph::edgeless(3)).value == 0);
  for (const Graph& g : graph_corpus()) {
    const auto r = matching_number(g);
    if (g.m() == 0) continue;
    CHECK(matching_ratio(g, r.indicator) == r.value);
    // Matching number of G is the independence number of its line graph.
    std::vector<Edge> le;
    for (int a = 0; a < g.m(); ++a)
      for (int b = a + 1; b < g.m(); ++b) {
        auto [p, q] = g.edges()[a];
        auto [s, t] = g.edges()[b];
        if (p == s || p == t || q == s || q == t) le.push_back({a, b});
      }
    CHECK(independence_number(Graph(g.m(), le)).value == r.value);
  }
}

TEST_CASE("Cheeger variants") {
  const Graph p3 = Graph::path(3);
  CHECK(cheeger(p3, CheegerVariant::Vertex).value == 2.0);
  CHECK(cheeger(p3, CheegerVariant::External).value == 1.0);
  CHECK(cheeger(p3, CheegerVariant::Internal).value == 1.0);
  CHECK(cheeger(p3, CheegerVariant::Classic).value == 1.0);
  CHECK(cheeger(p3, CheegerVariant::Expansion).value == 1.0);
  CHECK(cheeger(p3, CheegerVariant::Multiplicative).value == 0.5);
  CHECK(cheeger(p3, CheegerVariant::Profile, 1).value == 1.0);
  Graph b = p3;
  b.set_interior(0b010);
  const auto h1 = cheeger(b, CheegerVariant::Dirichlet);
  CHECK(h1.value == 1.0);
  CHECK(h1.witness == "{1}");
  CHECK_THROWS_AS(cheeger(p3, CheegerVariant::Dirichlet), InvalidArgument);
  Graph split = Graph::path(5);
  split.set_interior(0b10001);
  CHECK(cheeger(split, CheegerVariant::Dirichlet).note == "interior is disconnected");
  // Continuous forms at the optimizer's indicator reproduce the value.
  for (const Graph& g : graph_corpus())
    for (CheegerVariant v : {CheegerVariant::Classic, CheegerVariant::Expansion,
                             CheegerVariant::Multiplicative, CheegerVariant::Internal,
                             CheegerVariant::External, CheegerVariant::Vertex,
                             CheegerVariant::Dirichlet, CheegerVariant::Neumann}) {
      if ((v == CheegerVariant::Dirichlet || v == CheegerVariant::Neumann) && !g.has_boundary())
        continue;
      const auto r = cheeger(g, v);
      if (std::isnan(r.value)) continue;
      CHECK(r.form->objective(r.indicator) == r.value);
    }
}

TEST_CASE("Cheeger-like constant") {
  const auto p3 = cheeger_like(Graph::path(3));
  CHECK(p3.max_form == 1.5);
  CHECK(cheeger_like(Graph::complete(3)).max_form == 1.0);
  CHECK(cheeger_like(Graph::star(3)).max_form == doctest::Approx(4.0 / 3.0));
  for (const Graph& g : graph_corpus()) {
    if (g.m() == 0) continue;
    const auto c = cheeger_like(g, 300);
    CHECK(c.bipartite_form == doctest::Approx(c.max_form).epsilon(1e-12));
    CHECK(c.continuous_at_argmax == doctest::Approx(c.max_form).epsilon(1e-12));
    CHECK(c.continuous_best_sampled <= c.max_form + 1e-9);
    CHECK(c.companion_at_argmin == doctest::Approx(c.companion).epsilon(1e-12));
    CHECK(c.companion_best_sampled >= c.companion - 1e-9);
  }
  CHECK(cheeger_like(Graph::complete(3)).companion == 0.5);
  CHECK_THROWS_AS(cheeger_like(Graph::edgeless(3)), InvalidArgument);
}

TEST_CASE("Poincare sandwich") {
  SolverConfig cfg;
  for (const Graph& g : {Graph::path(3), Graph::complete(2), Graph::complete(4)}) {
    const auto rep = poincare_profile_check(g, cfg);
    CHECK(rep.holds);
    CHECK(rep.p1_at_hver <= rep.h_ver + 1e-12);
  }
  const auto p3 = poincare_profile_check(Graph::path(3), cfg);
  CHECK(p3.lower == 0.5);
  CHECK(p3.h_ver == 2.0);
}

TEST_CASE("submodular vertex cover") {
  const auto card = [](int n) { return SetFunction::set(n, [](Mask a) { return double(popcount(a)); }); };
  const auto p3 = submodular_vertex_cover(Graph::path(3), card(3));
  CHECK(p3.exact == 1.0);
  CHECK(p3.relaxation <= 1.0 + 1e-9);
  const auto k3 = submodular_vertex_cover(Graph::complete(3), card(3));
  CHECK(k3.exact == 2.0);
  CHECK(k3.relaxation <= 1.5 + 1e-9);
  CHECK(k3.relaxation >= 1.5 - 1e-9);
  CHECK(submodular_vertex_cover(Graph::edgeless(3), card(3)).exact == 0.0);
}

TEST_CASE("multiway partition") {
  const Graph p3 = Graph::path(3);
  const SetFunction half_cut = SetFunction::set(3, [p3](Mask a) { return p3.cut(a) / 2.0; });
  const auto r = multiway_partition(half_cut, {0, 2});
  CHECK(r.exact == 1.0);
  CHECK(r.relaxation <= r.exact + 1e-9);
  const SetFunction f = SetFunction::set(3, [](Mask a) { return a == 0b111 ? 4.0 : 1.0; });
  CHECK(multiway_partition(f, {1}).exact == 4.0);
  const SetFunction zero = SetFunction::set(3, [](Mask) { return 0.0; });
  CHECK(multiway_partition(zero, {0, 1, 2}).exact == 0.0);
  CHECK_THROWS_AS(multiway_partition(half_cut, {0, 0}), InvalidArgument);
}

TEST_CASE("k-independence number") {
  CHECK(k_independence_number(Graph::path(4), 2).value == 2);
  for (const Graph& g : graph_corpus())
    CHECK(k_independence_number(g, 1).value == independence_number(g).value);
  CHECK(k_independence_number(Graph::complete(3), 3).value == 1);
}

TEST_CASE("sampled check is thread independent") {
  const auto r = cheeger(Graph::cycle(5), CheegerVariant::Classic);
  const auto a = check_discrete_continuous(r, 5000, 42);
  const auto b = serial::check_discrete_continuous(r, 5000, 42);
  CHECK(a.best_sampled == b.best_sampled);
  CHECK(a.indicator_exact);
  CHECK(a.never_beaten);
}
