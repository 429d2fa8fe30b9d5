#include "lovx/setfun.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lovx/error.hpp"

namespace lovx {

std::string mode_name(Mode m) {
  switch (m) {
    case Mode::Set: return "set";
    case Mode::Pair: return "pair";
    case Mode::KWay: return "kway";
    case Mode::KWayPair: return "kway_pair";
  }
  return "?";
}

Mode parse_mode(const std::string& s) {
  if (s == "set") return Mode::Set;
  if (s == "pair") return Mode::Pair;
  if (s == "kway") return Mode::KWay;
  if (s == "kway_pair") return Mode::KWayPair;
  throw InvalidArgument("unknown mode '" + s + "'");
}

int SetFunction::arity() const { return is_signed(mode_) ? 2 * k_ : k_; }

namespace {

void check_shape(int n, Mode mode, int k) {
  require(n >= 1 && n <= kMaxGround, "ground set size must be in [1, 30]");
  require(k >= 1, "k must be positive");
  if (mode == Mode::Set || mode == Mode::Pair) require(k == 1, "set/pair mode requires k = 1");
}

std::size_t dense_index(std::span<const Mask> arg, int n) {
  std::size_t idx = 0;
  for (Mask m : arg) idx = (idx << n) | m;
  return idx;
}

}  // namespace

SetFunction SetFunction::from_callable(int n, Mode mode, int k, Eval eval) {
  check_shape(n, mode, k);
  SetFunction f;
  f.n_ = n;
  f.mode_ = mode;
  f.k_ = k;
  f.eval_ = std::move(eval);
  return f;
}

SetFunction SetFunction::from_table(int n, Mode mode, int k, std::map<Arg, double> table,
                                    double fallback, bool strict) {
  check_shape(n, mode, k);
  SetFunction f;
  f.n_ = n;
  f.mode_ = mode;
  f.k_ = k;
  for (const auto& [arg, v] : table) {
    f.validate(arg);
    require(std::isfinite(v), "table values must be finite");
  }
  auto shared = std::make_shared<const std::map<Arg, double>>(std::move(table));
  f.table_ = shared;
  f.fallback_ = fallback;
  f.strict_ = strict;
  f.eval_ = [shared, fallback, strict, n, mode](std::span<const Mask> a) {
    Arg key(a.begin(), a.end());
    auto it = shared->find(key);
    if (it != shared->end()) return it->second;
    bool empty = std::all_of(a.begin(), a.end(), [](Mask m) { return m == 0; });
    if (empty) return 0.0;
    if (strict) throw InvalidArgument("no table entry for " + format_arg(a, mode, n));
    return fallback;
  };
  return f;
}

SetFunction SetFunction::set(int n, std::function<double(Mask)> eval) {
  return from_callable(n, Mode::Set, 1,
                       [eval = std::move(eval)](std::span<const Mask> a) { return eval(a[0]); });
}

SetFunction SetFunction::pair(int n, std::function<double(Mask, Mask)> eval) {
  return from_callable(n, Mode::Pair, 1, [eval = std::move(eval)](std::span<const Mask> a) {
    return eval(a[0], a[1]);
  });
}

bool SetFunction::well_formed(std::span<const Mask> arg) const {
  if (static_cast<int>(arg.size()) != arity()) return false;
  const Mask full = full_mask(n_);
  for (Mask m : arg)
    if (m & ~full) return false;
  if (is_signed(mode_))
    for (std::size_t i = 0; i + 1 < arg.size(); i += 2)
      if (arg[i] & arg[i + 1]) return false;
  return true;
}

void SetFunction::validate(std::span<const Mask> arg) const {
  if (static_cast<int>(arg.size()) != arity())
    throw InvalidArgument("argument has " + std::to_string(arg.size()) + " slots, expected " +
                          std::to_string(arity()));
  const Mask full = full_mask(n_);
  for (Mask m : arg)
    if (m & ~full) throw InvalidArgument("argument element outside ground set");
  if (is_signed(mode_))
    for (std::size_t i = 0; i + 1 < arg.size(); i += 2)
      if (arg[i] & arg[i + 1])
        throw InvalidArgument("pair argument " + format_arg(arg, mode_, n_) + " is not disjoint");
}

double SetFunction::raw(std::span<const Mask> arg) const {
  if (dense_) return (*dense_)[dense_index(arg, n_)];
  return eval_(arg);
}

double SetFunction::operator()(std::span<const Mask> arg) const {
  validate(arg);
  return raw(arg);
}

long long SetFunction::argument_count() const {
  const int blocks = k_ * n_;
  long double c = std::pow(static_cast<long double>(is_signed(mode_) ? 3 : 2), blocks);
  if (c > static_cast<long double>(std::numeric_limits<long long>::max()))
    return std::numeric_limits<long long>::max();
  return static_cast<long long>(c);
}

SetFunction SetFunction::materialized() const {
  if (dense_ || arity() * n_ > 22) return *this;
  auto table = std::make_shared<std::vector<double>>(std::size_t{1} << (arity() * n_), 0.0);
  for_each_argument(*this, [&](std::span<const Mask> a) { (*table)[dense_index(a, n_)] = eval_(a); });
  SetFunction out = *this;
  out.dense_ = table;
  return out;
}

namespace {

void check_same_shape(const SetFunction& a, const SetFunction& b) {
  require(a.n() == b.n() && a.mode() == b.mode() && a.k() == b.k(),
          "set functions differ in shape");
}

}  // namespace

SetFunction operator+(const SetFunction& a, const SetFunction& b) {
  check_same_shape(a, b);
  return SetFunction::from_callable(a.n(), a.mode(), a.k(), [a, b](std::span<const Mask> x) {
    return a.raw(x) + b.raw(x);
  });
}

SetFunction operator-(const SetFunction& a, const SetFunction& b) {
  check_same_shape(a, b);
  return SetFunction::from_callable(a.n(), a.mode(), a.k(), [a, b](std::span<const Mask> x) {
    return a.raw(x) - b.raw(x);
  });
}

SetFunction scale(const SetFunction& a, double c) {
  return SetFunction::from_callable(a.n(), a.mode(), a.k(),
                                    [a, c](std::span<const Mask> x) { return c * a.raw(x); });
}

Family Family::all() { return {}; }

Family Family::nonempty() {
  return {"nonempty", [](std::span<const Mask> a) {
            return std::any_of(a.begin(), a.end(), [](Mask m) { return m != 0; });
          }};
}

Family Family::proper(int n) {
  const Mask full = full_mask(n);
  return {"proper", [full](std::span<const Mask> a) { return a[0] != 0 && a[0] != full; }};
}

Family Family::disjoint_slots() {
  return {"disjoint", [](std::span<const Mask> a) {
            Mask seen = 0;
            for (Mask m : a) {
              if (seen & m) return false;
              seen |= m;
            }
            return true;
          }};
}

Family Family::explicit_list(std::vector<Arg> args) {
  std::sort(args.begin(), args.end());
  auto shared = std::make_shared<const std::vector<Arg>>(std::move(args));
  return {"explicit", [shared](std::span<const Mask> a) {
            Arg key(a.begin(), a.end());
            return std::binary_search(shared->begin(), shared->end(), key);
          }};
}

namespace {

struct Walker {
  int n;
  bool sign;
  int arity;
  Mask lo, hi;
  const std::function<void(std::span<const Mask>)>& visit;
  Arg a;

  void rec(int slot) {
    if (slot == arity) {
      visit(a);
      return;
    }
    if (sign && (slot % 2 == 1)) {
      const Mask m = full_mask(n) & ~a[slot - 1];
      Mask s = 0;
      do {
        a[slot] = s;
        rec(slot + 1);
        s = (s - m) & m;
      } while (s != 0);
      return;
    }
    const std::uint64_t from = slot == 0 ? lo : 0;
    const std::uint64_t to = slot == 0 ? hi : (std::uint64_t{1} << n);
    for (std::uint64_t m = from; m < to; ++m) {
      a[slot] = static_cast<Mask>(m);
      rec(slot + 1);
    }
  }
};

}  // namespace

void for_each_argument(int n, Mode mode, int k, Mask lo, Mask hi,
                       const std::function<void(std::span<const Mask>)>& visit) {
  const int arity = is_signed(mode) ? 2 * k : k;
  Walker w{n, is_signed(mode), arity, lo, hi, visit, Arg(arity, 0)};
  w.rec(0);
}

void for_each_argument(const SetFunction& f,
                       const std::function<void(std::span<const Mask>)>& visit) {
  const std::uint64_t top = std::uint64_t{1} << f.n();
  // hi is exclusive; 2^30 still fits in Mask.
  for_each_argument(f.n(), f.mode(), f.k(), 0, static_cast<Mask>(top), visit);
}

namespace {

struct Best {
  bool found = false;
  double value = 0.0;
  Arg arg;
  double fv = 0.0, gv = 0.0;
  long long feasible = 0;
  bool negative_g = false;
};

bool better(double r, double best, Sense s) { return s == Sense::Min ? r < best : r > best; }

void scan_range(const SetFunction& f, const SetFunction& g, const Family& family, Sense sense,
                Mask lo, Mask hi, Best& b) {
  for_each_argument(f.n(), f.mode(), f.k(), lo, hi, [&](std::span<const Mask> a) {
    if (!family(a)) return;
    const double gv = g.raw(a);
    if (gv < 0) b.negative_g = true;
    if (!(gv > 0)) return;
    const double fv = f.raw(a);
    const double r = fv / gv;
    ++b.feasible;
    if (!b.found || better(r, b.value, sense)) {
      b.found = true;
      b.value = r;
      b.arg.assign(a.begin(), a.end());
      b.fv = fv;
      b.gv = gv;
    }
  });
}

void check_enumerable(const SetFunction& f, const SetFunction& g) {
  check_same_shape(f, g);
  if (f.n() > kMaxGround || f.argument_count() > kMaxCandidates)
    throw ComputationError("enumeration guard: " + std::to_string(f.argument_count()) +
                           " candidates exceed 2^26");
}

RatioOptimum finish(const Best& b) {
  if (b.negative_g) throw InvalidArgument("denominator takes negative values");
  if (!b.found) throw ComputationError("empty feasible set: no argument in family with g > 0");
  return {b.value, b.arg, b.fv, b.gv, b.feasible};
}

}  // namespace

RatioOptimum enumerate_ratio_optimum(const SetFunction& f0, const SetFunction& g0,
                                     const Family& family, Sense sense) {
  check_enumerable(f0, g0);
  const SetFunction f = f0.materialized();
  const SetFunction g = g0.materialized();
  const std::uint64_t top = std::uint64_t{1} << f.n();
  const int chunks = static_cast<int>(std::min<std::uint64_t>(top, 256));
  std::vector<Best> part(chunks);
  std::vector<std::string> errors(chunks);
#pragma omp parallel for schedule(dynamic)
  for (int c = 0; c < chunks; ++c) {
    const Mask lo = static_cast<Mask>(top * c / chunks);
    const Mask hi = static_cast<Mask>(top * (c + 1) / chunks);
    try {
      scan_range(f, g, family, sense, lo, hi, part[c]);
    } catch (const std::exception& e) {
      errors[c] = e.what();
    }
  }
  Best best;
  for (int c = 0; c < chunks; ++c) {
    if (!errors[c].empty()) throw InvalidArgument(errors[c]);
    const Best& p = part[c];
    best.feasible += p.feasible;
    best.negative_g = best.negative_g || p.negative_g;
    if (p.found && (!best.found || better(p.value, best.value, sense))) {
      best.found = true;
      best.value = p.value;
      best.arg = p.arg;
      best.fv = p.fv;
      best.gv = p.gv;
    }
  }
  return finish(best);
}

namespace serial {

RatioOptimum enumerate_ratio_optimum(const SetFunction& f, const SetFunction& g,
                                     const Family& family, Sense sense) {
  check_enumerable(f, g);
  Best b;
  scan_range(f, g, family, sense, 0, static_cast<Mask>(std::uint64_t{1} << f.n()), b);
  return finish(b);
}

}  // namespace serial

DcSplit dc_decompose(const SetFunction& f0) {
  require(f0.mode() == Mode::Set, "dc_decompose expects a set-mode function");
  require(f0.n() <= 20, "dc_decompose supports n <= 20");
  const SetFunction f = f0.materialized();
  const int n = f.n();
  const Mask top = static_cast<Mask>(std::uint64_t{1} << n);
  auto g = [](Mask a) {
    const double c = popcount(a);
    return -c * c;
  };
  auto val = [&](Mask a) { return f.raw(std::span<const Mask>(&a, 1)); };

  DcSplit out;
  double viol = 0.0;
  double delta = std::numeric_limits<double>::infinity();
  if (n <= 12) {
    for (Mask a = 0; a < top; ++a)
      for (Mask b = a + 1; b < top; ++b) {
        const Mask u = a | b, m = a & b;
        if (u == a || u == b) continue;  // nested
        viol = std::max(viol, val(u) + val(m) - val(a) - val(b));
        delta = std::min(delta, g(a) + g(b) - g(u) - g(m));
      }
  } else {
    out.exhaustive = false;
    for (Mask a = 0; a < top; ++a)
      for (int i = 0; i < n; ++i) {
        if (a >> i & 1) continue;
        for (int j = i + 1; j < n; ++j) {
          if (a >> j & 1) continue;
          const Mask x = a | Mask{1} << i, y = a | Mask{1} << j;
          viol = std::max(viol, val(x | y) + val(a) - val(x) - val(y));
          delta = std::min(delta, g(x) + g(y) - g(x | y) - g(a));
        }
      }
  }
  if (!std::isfinite(delta)) delta = 2.0;  // n = 1: no non-nested pairs
  out.delta_g = delta;
  out.max_violation = viol;
  out.c = viol / delta + 1.0;
  const double c = out.c;
  SetFunction gs = SetFunction::set(n, [c, g](Mask a) { return c * g(a); });
  out.f2 = gs.materialized();
  out.f1 = (f + gs).materialized();
  return out;
}

std::string format_arg(std::span<const Mask> arg, Mode mode, int n) {
  auto one = [n](Mask m) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (int i = 0; i < n; ++i)
      if (m >> i & 1) {
        if (!first) os << ',';
        os << i;
        first = false;
      }
    os << '}';
    return os.str();
  };
  if (mode == Mode::Set && arg.size() == 1) return one(arg[0]);
  std::string s = "(";
  for (std::size_t i = 0; i < arg.size(); ++i) {
    if (i) s += ',';
    s += one(arg[i]);
  }
  return s + ")";
}

}  // namespace lovx
