#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lovx/lovasz.hpp"
#include "lovx/setfun.hpp"

namespace lovx {

// Discrete lattice of the function's mode: (∪,∩) in Set/KWay,
// the pair join/meet of the signed modes slotwise.
Arg lattice_join(std::span<const Mask> a, std::span<const Mask> b, Mode mode);
Arg lattice_meet(std::span<const Mask> a, std::span<const Mask> b, Mode mode);

struct SubmodularityResult {
  bool holds = true;
  Arg a, b;                // violating pair when !holds
  double violation = 0.0;  // f(a∨b)+f(a∧b)-f(a)-f(b) at the witness
  long long pairs = 0;
  bool exhaustive = true;  // false: local pairs on the full Set lattice
};

// Throws InvalidArgument when the family is not closed under join/meet.
SubmodularityResult is_submodular(const SetFunction& f, const Family& family = Family::all(),
                                  double tol = 1e-10);
namespace serial {
SubmodularityResult is_submodular(const SetFunction& f, const Family& family = Family::all(),
                                  double tol = 1e-10);
}

// Continuous lattices: S2 is componentwise max/min; BS2 is the signed
// variant (opposite signs go to 0). The BS2 inequality only follows from
// bisubmodularity on pairs whose opposite-sign coordinates have equal
// magnitude, so BS2 sampling stays inside that class; BS2Unrestricted
// samples arbitrary pairs.
enum class Lattice { S2, BS2, BS2Unrestricted };
std::vector<double> lattice_join(std::span<const double> x, std::span<const double> y, Lattice l);
std::vector<double> lattice_meet(std::span<const double> x, std::span<const double> y, Lattice l);

using Functional0 = std::function<double(std::span<const double>)>;

struct ContinuousCheck {
  bool holds = true;
  int samples = 0;
  std::vector<double> x, y;
  double violation = 0.0;
};

// Samples pairs uniformly in [-1,1]^d (or [0,1]^d), on the l-inf sphere,
// and on lattice points {-1,0,1}^d (or {0,1}^d). For BS2 the second point
// keeps each sign of the first or mirrors the coordinate exactly.
ContinuousCheck is_continuous_submodular(const Functional0& F, int dim, Lattice lattice,
                                         int samples, std::uint64_t seed, double tol = 1e-9,
                                         bool nonneg = false);

struct ConvexityEquivalence {
  bool discrete_submodular = false;
  bool convex = false;
  bool continuous_submodular = false;
  bool agree() const {
    return discrete_submodular == convex && convex == continuous_submodular;
  }
  SubmodularityResult discrete;
  std::vector<double> convexity_x, convexity_y;  // midpoint witness
  ContinuousCheck continuous;
};

// Set, Pair and KWay modes.
ConvexityEquivalence check_convexity_equivalence(const SetFunction& f, int trials,
                                                 std::uint64_t seed, double tol = 1e-9);

struct CharacterizationReport {
  Mode mode = Mode::Set;
  std::vector<PropertyResult> conditions;
  // Set: homogeneity, translation and S2. Pair: homogeneity, BS2 and the
  // translation inequality.
  bool characterized = false;
  // F agrees with the extension of its own indicator values.
  bool reconstruction_matches = false;
  std::optional<SetFunction> reconstructed;
  bool reconstructed_submodular = false;
};

CharacterizationReport check_characterization(const Functional0& F, Mode mode, int n,
                                              int samples, std::uint64_t seed,
                                              double tol = 1e-9);

}  // namespace lovx
