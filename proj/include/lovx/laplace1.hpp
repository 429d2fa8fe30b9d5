#pragma once

#include <map>
#include <vector>

#include "lovx/graph.hpp"

namespace lovx {

struct EigenCandidate {
  std::vector<double> x;  // indexed by vertex; entries off the closure are ignored
  double mu = 0.0;
};

// Interval selection from Sgn(t); |t| <= 1e-12 counts as zero.
struct SignInterval {
  double lo = -1.0;
  double hi = 1.0;
};
SignInterval sgn_interval(double t);

struct EigenCertificate {
  bool feasible = false;
  bool exact = false;                // decided in rational arithmetic
  std::map<Edge, double> z;          // z[(i,j)], i < j; z_ji = -z_ij
  std::map<int, double> c;           // c_i in Sgn(x_i)
  std::map<int, double> s;           // right-hand selection from Sgn(x_i)
  int variables = 0;
};

// Linear feasibility of the set-valued eigen-inclusions. Each row is
// allowed a residual of at most tol.
EigenCertificate verify_dirichlet_eigenpair(const Graph& g, const EigenCandidate& cand, double tol = 1e-9);
EigenCertificate verify_neumann_eigenpair(const Graph& g, const EigenCandidate& cand, double tol = 1e-9);

double rayleigh_1(const Graph& g, const std::vector<double>& x);
// Uses only entries on the interior A; boundary edges weigh |x_i|.
double dirichlet_rayleigh(const Graph& g, const std::vector<double>& x);

struct NodalDomains {
  int count = 0;
  std::vector<Mask> domains;  // positive components first
};
NodalDomains nodal_domains(const Graph& g, const std::vector<double>& x);

// Star of k triangles: a hub joined to every vertex of k disjoint triangles.
Graph triangle_star(int k);

}  // namespace lovx
