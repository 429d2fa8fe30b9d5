#pragma once

#include <limits>
#include <vector>

namespace lovx::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// min c.x  subject to  A x = b,  lo <= x <= hi  (hi may be kInf; lo finite).
struct Problem {
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  std::vector<double> c;
  std::vector<double> lo;
  std::vector<double> hi;

  int add_var(double lower, double upper, double cost = 0.0);
  // Appends a row; coefficients indexed by variable.
  void add_row(const std::vector<std::pair<int, double>>& coef, double rhs);
  int vars() const { return static_cast<int>(c.size()); }
};

enum class Status { Optimal, Infeasible, Unbounded };
enum class Arithmetic { Float, Exact };

struct Solution {
  Status status = Status::Infeasible;
  std::vector<double> x;
  double objective = 0.0;
  Arithmetic used = Arithmetic::Float;
};

// Two-phase tableau simplex with Bland's rule. Exact mode converts every
// input double to a rational and pivots without rounding.
Solution solve(const Problem& p, Arithmetic arith = Arithmetic::Float, double eps = 1e-9);

}  // namespace lovx::lp
