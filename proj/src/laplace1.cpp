#include "lovx/laplace1.hpp"

#include <cmath>

#include "lovx/error.hpp"
#include "lovx/lp.hpp"

namespace lovx {

namespace {

constexpr double kZero = 1e-12;
constexpr int kExactLimit = 200;

void check_candidate(const Graph& g, const EigenCandidate& cand, double tol) {
  require(g.has_boundary(), "eigenpair check needs a graph with boundary");
  require(static_cast<int>(cand.x.size()) == g.n(), "x must have one entry per vertex");
  require(cand.mu >= 0.0 && std::isfinite(cand.mu), "mu must be finite and >= 0");
  require(tol >= 0.0, "tol must be >= 0");
  bool nonzero = false;
  for (int v = 0; v < g.n(); ++v)
    if ((g.closure() >> v) & 1u) nonzero |= std::fabs(cand.x[v]) > kZero;
  require(nonzero, "x must be nonzero on the closure");
}

struct System {
  lp::Problem p;
  std::vector<std::pair<Edge, int>> zvars;
  std::vector<std::pair<int, int>> cvars, svars;
};

EigenCertificate decide(System& sys, double tol) {
  EigenCertificate cert;
  cert.variables = sys.p.vars();
  const bool exact = cert.variables <= kExactLimit;
  const lp::Solution sol = lp::solve(sys.p, exact ? lp::Arithmetic::Exact : lp::Arithmetic::Float, exact ? 0.0 : tol);
  cert.exact = exact;
  cert.feasible = sol.status == lp::Status::Optimal;
  if (!cert.feasible) return cert;
  for (auto [e, k] : sys.zvars) cert.z[e] = sol.x[k];
  for (auto [v, k] : sys.cvars) cert.c[v] = sol.x[k];
  for (auto [v, k] : sys.svars) cert.s[v] = sol.x[k];
  return cert;
}

int add_sign_var(lp::Problem& p, double t) {
  const SignInterval s = sgn_interval(t);
  return p.add_var(s.lo, s.hi);
}

}  // namespace

SignInterval sgn_interval(double t) {
  if (t > kZero) return {1.0, 1.0};
  if (t < -kZero) return {-1.0, -1.0};
  return {-1.0, 1.0};
}

EigenCertificate verify_dirichlet_eigenpair(const Graph& g, const EigenCandidate& cand, double tol) {
  check_candidate(g, cand, tol);
  const Mask a = g.interior();
  for (int v = 0; v < g.n(); ++v)
    if ((g.boundary() >> v) & 1u)
      require(std::fabs(cand.x[v]) <= kZero, "Dirichlet candidate must vanish on the boundary");
  const auto& x = cand.x;
  System sys;
  std::vector<std::vector<std::pair<int, double>>> rows(g.n());
  for (const auto& [i, j] : g.edges()) {
    if (!((a >> i) & 1u) || !((a >> j) & 1u)) continue;
    const int k = add_sign_var(sys.p, x[i] - x[j]);
    sys.zvars.push_back({{i, j}, k});
    rows[i].push_back({k, 1.0});
    rows[j].push_back({k, -1.0});
  }
  for (int i = 0; i < g.n(); ++i) {
    if (!((a >> i) & 1u)) continue;
    const int p_i = popcount(g.neighbors(i) & g.boundary());
    const int c = add_sign_var(sys.p, x[i]);
    const int s = add_sign_var(sys.p, x[i]);
    const int slack = sys.p.add_var(-tol, tol);
    sys.cvars.push_back({i, c});
    sys.svars.push_back({i, s});
    auto row = rows[i];
    row.push_back({c, static_cast<double>(p_i)});
    row.push_back({s, -cand.mu * g.degree(i)});
    row.push_back({slack, 1.0});
    sys.p.add_row(row, 0.0);
  }
  return decide(sys, tol);
}

EigenCertificate verify_neumann_eigenpair(const Graph& g, const EigenCandidate& cand, double tol) {
  check_candidate(g, cand, tol);
  const Mask a = g.interior();
  const Mask bar = g.closure();
  const auto& x = cand.x;
  System sys;
  std::vector<std::vector<std::pair<int, double>>> rows(g.n());
  for (const auto& [i, j] : g.edges()) {
    // Edges with an endpoint in A; both ends then lie in the closure.
    if (!((a >> i) & 1u) && !((a >> j) & 1u)) continue;
    const int k = add_sign_var(sys.p, x[i] - x[j]);
    sys.zvars.push_back({{i, j}, k});
    rows[i].push_back({k, 1.0});
    rows[j].push_back({k, -1.0});
  }
  for (int i = 0; i < g.n(); ++i) {
    if (!((bar >> i) & 1u)) continue;
    auto row = rows[i];
    if ((a >> i) & 1u) {
      const int c = add_sign_var(sys.p, x[i]);
      sys.cvars.push_back({i, c});
      row.push_back({c, -cand.mu * g.degree(i)});
    }
    row.push_back({sys.p.add_var(-tol, tol), 1.0});
    sys.p.add_row(row, 0.0);
  }
  return decide(sys, tol);
}

double rayleigh_1(const Graph& g, const std::vector<double>& x) {
  require(static_cast<int>(x.size()) == g.n(), "x must have one entry per vertex");
  double num = 0.0, den = 0.0;
  for (const auto& [i, j] : g.edges()) num += std::fabs(x[i] - x[j]);
  for (int i = 0; i < g.n(); ++i) den += g.degree(i) * std::fabs(x[i]);
  require(den > 0.0, "Rayleigh quotient has zero denominator");
  return num / den;
}

double dirichlet_rayleigh(const Graph& g, const std::vector<double>& x) {
  require(g.has_boundary(), "Dirichlet quotient needs a graph with boundary");
  require(static_cast<int>(x.size()) == g.n(), "x must have one entry per vertex");
  const Mask a = g.interior();
  double num = 0.0, den = 0.0;
  for (const auto& [i, j] : g.edges())
    if (((a >> i) & 1u) && ((a >> j) & 1u)) num += std::fabs(x[i] - x[j]);
  for (int i = 0; i < g.n(); ++i) {
    if (!((a >> i) & 1u)) continue;
    num += popcount(g.neighbors(i) & g.boundary()) * std::fabs(x[i]);
    den += g.degree(i) * std::fabs(x[i]);
  }
  require(den > 0.0, "Rayleigh quotient has zero denominator");
  return num / den;
}

NodalDomains nodal_domains(const Graph& g, const std::vector<double>& x) {
  require(static_cast<int>(x.size()) == g.n(), "x must have one entry per vertex");
  NodalDomains out;
  for (int sign : {1, -1}) {
    Mask support = 0;
    for (int v = 0; v < g.n(); ++v)
      if (sign * x[v] > kZero) support |= Mask{1} << v;
    while (support) {
      Mask comp = support & (~support + 1);
      Mask frontier = comp;
      while (frontier) {
        Mask next = 0;
        for (int v = 0; v < g.n(); ++v)
          if ((frontier >> v) & 1u) next |= g.neighbors(v);
        frontier = next & support & ~comp;
        comp |= frontier;
      }
      out.domains.push_back(comp);
      support &= ~comp;
    }
  }
  out.count = static_cast<int>(out.domains.size());
  return out;
}

Graph triangle_star(int k) {
  require(k >= 1 && 3 * k + 1 <= 30, "triangle_star needs 1 <= k <= 9");
  std::vector<Edge> e;
  for (int t = 0; t < k; ++t) {
    const int b = 1 + 3 * t;
    for (int u = 0; u < 3; ++u) e.push_back({0, b + u});
    e.push_back({b, b + 1});
    e.push_back({b, b + 2});
    e.push_back({b + 1, b + 2});
  }
  return Graph(3 * k + 1, e, "triangle_star(" + std::to_string(k) + ")");
}

}  // namespace lovx
