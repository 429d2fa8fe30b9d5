#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace lovx {

using Mask = std::uint32_t;
using Arg = std::vector<Mask>;

inline constexpr int kMaxGround = 30;
inline constexpr long long kMaxCandidates = 1LL << 26;

// Set:      f(A)
// Pair:     f(A,B) with A and B disjoint
// KWay:     f(A_1..A_k)
// KWayPair: f(A_1,B_1,..,A_k,B_k), each (A_i,B_i) disjoint
enum class Mode { Set, Pair, KWay, KWayPair };

std::string mode_name(Mode m);
Mode parse_mode(const std::string& s);

inline bool is_signed(Mode m) { return m == Mode::Pair || m == Mode::KWayPair; }

inline Mask full_mask(int n) { return n >= 32 ? ~Mask{0} : ((Mask{1} << n) - 1); }
inline int popcount(Mask m) { return __builtin_popcount(m); }

class SetFunction {
 public:
  using Eval = std::function<double(std::span<const Mask>)>;

  SetFunction() = default;

  static SetFunction from_callable(int n, Mode mode, int k, Eval eval);
  // Table entries keyed by argument. Missing entries take `fallback`, or
  // raise when `strict`. The all-empty argument is 0 unless listed.
  static SetFunction from_table(int n, Mode mode, int k, std::map<Arg, double> table,
                                double fallback = 0.0, bool strict = false);
  static SetFunction set(int n, std::function<double(Mask)> eval);
  static SetFunction pair(int n, std::function<double(Mask, Mask)> eval);

  int n() const { return n_; }
  Mode mode() const { return mode_; }
  int k() const { return k_; }
  // Number of masks in one argument.
  int arity() const;
  // Slots per coordinate block: 1 for Set/KWay, 2 for the signed modes.
  int slot_width() const { return is_signed(mode_) ? 2 : 1; }
  // Length of a point in the continuous domain.
  int dim() const { return k_ * n_; }

  double operator()(std::span<const Mask> arg) const;
  double operator()(std::initializer_list<Mask> arg) const {
    return (*this)(std::span<const Mask>(arg.begin(), arg.size()));
  }
  // Skips validation; hot loops only.
  double raw(std::span<const Mask> arg) const;

  void validate(std::span<const Mask> arg) const;
  bool well_formed(std::span<const Mask> arg) const;

  // Copy backed by a dense table when arity*n <= 22; otherwise *this.
  SetFunction materialized() const;
  bool is_dense() const { return dense_ != nullptr; }

  // Number of well-formed arguments.
  long long argument_count() const;

  // Explicit table, if constructed from one.
  const std::map<Arg, double>* table() const { return table_.get(); }
  double fallback() const { return fallback_; }
  bool strict() const { return strict_; }

 private:
  int n_ = 0;
  Mode mode_ = Mode::Set;
  int k_ = 1;
  Eval eval_;
  std::shared_ptr<const std::vector<double>> dense_;
  std::shared_ptr<const std::map<Arg, double>> table_;
  double fallback_ = 0.0;
  bool strict_ = false;
};

// Pointwise combinations; operands must share shape.
SetFunction operator+(const SetFunction& a, const SetFunction& b);
SetFunction operator-(const SetFunction& a, const SetFunction& b);
SetFunction scale(const SetFunction& a, double c);

// Family of admissible arguments.
struct Family {
  std::string name = "all";
  std::function<bool(std::span<const Mask>)> contains;

  bool operator()(std::span<const Mask> a) const { return !contains || contains(a); }

  static Family all();
  // At least one slot nonempty.
  static Family nonempty();
  // Set mode: nonempty and not V.
  static Family proper(int n);
  // k-way: slots pairwise disjoint.
  static Family disjoint_slots();
  static Family explicit_list(std::vector<Arg> args);
};

// Visits well-formed arguments in lexicographic order of the mask tuple.
// `first` restricts slot 0 to the half-open range [lo, hi).
void for_each_argument(int n, Mode mode, int k, Mask lo, Mask hi,
                       const std::function<void(std::span<const Mask>)>& visit);
void for_each_argument(const SetFunction& f,
                       const std::function<void(std::span<const Mask>)>& visit);

enum class Sense { Min, Max };

struct RatioOptimum {
  double value = 0.0;
  Arg arg;
  double f_value = 0.0;
  double g_value = 0.0;
  long long feasible = 0;
};

// Exact optimum of f/g over family ∩ {g > 0}; ties go to the
// lexicographically smallest argument. Parallel over slot-0 chunks.
RatioOptimum enumerate_ratio_optimum(const SetFunction& f, const SetFunction& g,
                                     const Family& family = Family::all(),
                                     Sense sense = Sense::Min);

namespace serial {
RatioOptimum enumerate_ratio_optimum(const SetFunction& f, const SetFunction& g,
                                     const Family& family = Family::all(),
                                     Sense sense = Sense::Min);
}

// f = f1 - f2 with f1, f2 submodular (Set mode).
struct DcSplit {
  SetFunction f1;
  SetFunction f2;
  double c = 0.0;
  double delta_g = 0.0;
  double max_violation = 0.0;
  bool exhaustive = true;  // pairs scanned exhaustively (else local pairs)
};

DcSplit dc_decompose(const SetFunction& f);

std::string format_arg(std::span<const Mask> arg, Mode mode, int n);

}  // namespace lovx
