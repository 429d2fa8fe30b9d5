#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lovx/setfun.hpp"

namespace lovx {

// Points are flat: block s (0-based) holds x^{s+1}, i.e. x[s*n + i].

// Original extension in Set/KWay mode, disjoint-pair extension in the
// signed modes. Exact, via the sorted breakpoint sum.
double lovasz_eval(const SetFunction& f, std::span<const double> x);

struct Subgradient {
  std::vector<double> g;
  // f^L(x) = <g, x> on the selected piece.
  double value = 0.0;
};

// Gradient of the linear piece picked by sorting (ties: value, block, index).
// In the signed modes zero entries are taken on the positive side.
Subgradient lovasz_subgradient(const SetFunction& f, std::span<const double> x);

// Gradients of every linear piece whose closure contains x; their convex
// hull is the Clarke subdifferential. Entries within tie_tol are treated
// as tied. Throws ComputationError past max_vertices.
std::vector<std::vector<double>> lovasz_piece_gradients(const SetFunction& f,
                                                        std::span<const double> x,
                                                        double tie_tol = 1e-12,
                                                        std::size_t max_vertices = 50000);

// Domain of the extension: nonnegative orthant for KWay, everything else R^dim.
bool in_domain(const SetFunction& f, std::span<const double> x);

// Indicator point of an argument.
std::vector<double> indicator(const SetFunction& f, std::span<const Mask> arg);

struct PropertyResult {
  std::string name;
  bool applicable = true;
  bool passed = true;
  int trials = 0;
  double worst = 0.0;  // largest observed defect
  std::string witness;
};

struct StructuralReport {
  std::vector<PropertyResult> properties;
  bool all_passed() const;
};

struct StructuralOptions {
  int trials = 1000;
  std::uint64_t seed = 42;
  double tol = 1e-9;
  // Set-mode h for the pair/original relations; for Set-mode f the
  // function itself (with h(∅) = 0) is used when absent.
  std::optional<SetFunction> h;
};

StructuralReport check_structural(const SetFunction& f, const StructuralOptions& opt = {});

}  // namespace lovx
