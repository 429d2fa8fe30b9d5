#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "lovx/setfun.hpp"

namespace lovx {

// Outer description of a Clarke subdifferential:
//   center + sum_j s_j gen_j (s_j in [-1,1]) + sum_k conv(hulls_k).
struct Subdifferential {
  std::vector<double> center;
  std::vector<std::vector<double>> generators;
  std::vector<std::vector<std::vector<double>>> hulls;

  explicit Subdifferential(int dim = 0) : center(dim, 0.0) {}
  void add(const Subdifferential& o, double scale);
};

// A positively homogeneous function with a subgradient oracle.
struct Functional {
  std::string name;
  int dim = 0;
  double degree = 1.0;
  std::function<double(std::span<const double>)> value;
  std::function<std::vector<double>(std::span<const double>)> subgradient;
  // Optional; falls back to the single selected subgradient.
  std::function<Subdifferential(std::span<const double>, double)> subdiff;

  double operator()(std::span<const double> x) const { return value(x); }
  Subdifferential subdifferential(std::span<const double> x, double tie_tol) const;

  static Functional zero(int dim);
  static Functional lovasz(const SetFunction& f, std::string name = "lovasz");
  // sum_t w_t |<a_t, x>| for sparse rows a_t.
  struct Term {
    std::vector<std::pair<int, double>> a;
    double w = 1.0;
  };
  static Functional abs_sum(int dim, std::vector<Term> terms, std::string name = "abs_sum");
  // max_i |x_i|
  static Functional linf(int dim);
  // sum over blocks of max_{i in block} |x_i|
  static Functional block_linf(int dim, std::vector<std::vector<int>> blocks,
                               std::string name = "block_linf");
  // max_i x_i
  static Functional max_entry(int dim);
  // c * F
  static Functional scaled(const Functional& f, double c);
  static Functional sum(const Functional& a, const Functional& b);
};

}  // namespace lovx
