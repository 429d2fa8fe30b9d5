#include <doctest.h>

#include <cmath>

#include "lovx/corpus.hpp"
#include "lovx/error.hpp"
#include "lovx/graphinv.hpp"
#include "lovx/laplace1.hpp"
#include "lovx/random.hpp"

using namespace lovx;

namespace {

Graph with_interior(Graph g, Mask a) {
  g.set_interior(a);
  return g;
}

std::vector<double> indicator(int n, Mask s) {
  std::vector<double> x(n, 0.0);
  for (int v = 0; v < n; ++v) x[v] = (s >> v) & 1u;
  return x;
}

// Antisymmetry is structural; bounds and row sums are checked against x.
void check_certificate(const Graph& g, const EigenCandidate& cand, const EigenCertificate& cert,
                       bool dirichlet, double tol) {
  std::vector<double> sum(g.n(), 0.0);
  for (const auto& [e, z] : cert.z) {
    const SignInterval s = sgn_interval(cand.x[e.first] - cand.x[e.second]);
    CHECK(z >= s.lo);
    CHECK(z <= s.hi);
    sum[e.first] += z;
    sum[e.second] -= z;
  }
  for (const auto& [v, c] : cert.c) {
    const SignInterval s = sgn_interval(cand.x[v]);
    CHECK(c >= s.lo);
    CHECK(c <= s.hi);
  }
  const Mask a = g.interior();
  for (int i = 0; i < g.n(); ++i) {
    if ((a >> i) & 1u) {
      double lhs = sum[i];
      if (dirichlet)
        lhs += popcount(g.neighbors(i) & g.boundary()) * cert.c.at(i) - cand.mu * g.degree(i) * cert.s.at(i);
      else
        lhs -= cand.mu * g.degree(i) * cert.c.at(i);
      CHECK(std::fabs(lhs) <= tol + 1e-12);
    } else if (!dirichlet && ((g.boundary() >> i) & 1u)) {
      CHECK(std::fabs(sum[i]) <= tol + 1e-12);
    }
  }
}

}  // namespace

TEST_CASE("Dirichlet anchors on P3") {
  const Graph g = with_interior(Graph::path(3), 0b010);
  const EigenCandidate ok{{0, 1, 0}, 1.0};
  const auto cert = verify_dirichlet_eigenpair(g, ok);
  CHECK(cert.feasible);
  CHECK(cert.exact);
  CHECK(cert.c.at(1) == 1.0);
  check_certificate(g, ok, cert, true, 1e-9);
  CHECK_FALSE(verify_dirichlet_eigenpair(g, {{0, 1, 0}, 0.5}).feasible);
  CHECK_THROWS_AS(verify_dirichlet_eigenpair(g, {{0, 0, 0}, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(verify_dirichlet_eigenpair(g, {{1, 1, 0}, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(verify_dirichlet_eigenpair(Graph::path(3), ok), InvalidArgument);
}

TEST_CASE("Neumann anchors") {
  const Graph g = with_interior(Graph::path(4), 0b0110);
  const EigenCandidate constant{{1, 1, 1, 1}, 0.0};
  const auto cert = verify_neumann_eigenpair(g, constant);
  CHECK(cert.feasible);
  check_certificate(g, constant, cert, false, 1e-9);

  Rng rng(5);
  std::vector<double> x(4);
  for (double& v : x) v = rng.uniform(-1.0, 1.0);
  CHECK_FALSE(verify_neumann_eigenpair(g, {x, 1e6}).feasible);
}

TEST_CASE("Neumann pair on P3 matches the solver fixed point") {
  const Graph g = with_interior(Graph::path(3), 0b111);
  const std::vector<double> x{1, 0, -1};
  const double mu = rayleigh_1(g, x);
  CHECK(mu == 1.0);
  const auto cert = verify_neumann_eigenpair(g, {x, mu});
  CHECK(cert.feasible);
  check_certificate(g, {x, mu}, cert, false, 1e-9);
  SolverConfig cfg;
  const auto r = cheeger(Graph::path(3), CheegerVariant::Classic, 0, Method::Continuous, cfg);
  CHECK(*r.continuous == doctest::Approx(mu).epsilon(1e-6));
  CHECK(verify_neumann_eigenpair(g, {x, *r.continuous}, 1e-6).feasible);
  CHECK_FALSE(verify_neumann_eigenpair(g, {x, 0.9}).feasible);
}

TEST_CASE("Rayleigh quotients") {
  CHECK(rayleigh_1(Graph::complete(2), {1, -1}) == 1.0);
  CHECK(rayleigh_1(Graph::cycle(5), std::vector<double>(5, 1.0)) == 0.0);
  CHECK_THROWS_AS(rayleigh_1(Graph::path(3), {0, 0, 0}), InvalidArgument);
  const Graph g = with_interior(Graph::path(3), 0b010);
  CHECK(dirichlet_rayleigh(g, {7, 1, -3}) == 1.0);
  CHECK(dirichlet_rayleigh(g, {0, 1, 0}) == cheeger(g, CheegerVariant::Dirichlet).value);
}

TEST_CASE("Dirichlet Cheeger constant is the first eigenvalue") {
  int boundary_graphs = 0;
  for (const Graph& g : graph_corpus()) {
    if (!g.has_boundary()) continue;
    ++boundary_graphs;
    const auto h = cheeger(g, CheegerVariant::Dirichlet);
    // The indicator lives on the interior vertices in increasing order.
    Mask s = 0;
    int i = 0;
    for (int v = 0; v < g.n(); ++v)
      if ((g.interior() >> v) & 1u)
        if (h.indicator[i++] != 0.0) s |= Mask{1} << v;
    const EigenCandidate cand{indicator(g.n(), s), h.value};
    const auto cert = verify_dirichlet_eigenpair(g, cand);
    INFO(g.name());
    CHECK(cert.feasible);
    check_certificate(g, cand, cert, true, 1e-9);
    CHECK(dirichlet_rayleigh(g, cand.x) == doctest::Approx(h.value).epsilon(1e-15));
    // Slightly below h1 the same pair is rejected.
    CHECK_FALSE(verify_dirichlet_eigenpair(g, {cand.x, h.value - 1e-3}).feasible);
  }
  CHECK(boundary_graphs >= 4);
}

TEST_CASE("nodal domains") {
  CHECK(nodal_domains(Graph::path(3), {1, 0, -1}).count == 2);
  CHECK(nodal_domains(Graph::path(3), {1, 1, 1}).count == 1);
  CHECK(nodal_domains(Graph::path(4), {1, -1, 1, -1}).count == 4);
  const Graph star = triangle_star(3);
  std::vector<double> x(star.n(), 0.0);
  for (int t = 0; t < 3; ++t)
    for (int u = 0; u < 3; ++u) x[1 + 3 * t + u] = t % 2 ? -1.0 : 1.0;
  const auto nd = nodal_domains(star, x);
  CHECK(nd.count == 3);
  CHECK(nd.domains[0] == Mask{0b1110});
  x[0] = 1.0;
  CHECK(nodal_domains(star, x).count == 2);
}
