#include "lovx/lovasz.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "lovx/error.hpp"
#include "lovx/random.hpp"

namespace lovx {

namespace {

void check_point(const SetFunction& f, std::span<const double> x) {
  if (static_cast<int>(x.size()) != f.dim())
    throw InvalidArgument("point has length " + std::to_string(x.size()) + ", expected " +
                          std::to_string(f.dim()));
  for (double v : x)
    if (!std::isfinite(v)) throw InvalidArgument("point has a non-finite entry");
}

double key_of(double v, bool sign) { return sign ? std::fabs(v) : v; }

// Flat indices sorted by (key, flat index).
std::vector<int> sorted_order(std::span<const double> x, bool sign) {
  std::vector<int> o(x.size());
  std::iota(o.begin(), o.end(), 0);
  std::stable_sort(o.begin(), o.end(), [&](int a, int b) {
    return key_of(x[a], sign) < key_of(x[b], sign);
  });
  return o;
}

// Argument slots at the start of the sweep. Unsigned: every block full.
// Signed: positive and negative supports; zeros go positive when
// zeros_positive is set.
Arg initial_arg(const SetFunction& f, std::span<const double> x, bool zeros_positive) {
  const int n = f.n();
  Arg a(f.arity(), 0);
  for (int e = 0; e < f.dim(); ++e) {
    const int s = e / n, i = e % n;
    const Mask bit = Mask{1} << i;
    if (!is_signed(f.mode())) {
      a[s] |= bit;
    } else if (x[e] > 0 || (zeros_positive && x[e] == 0)) {
      a[2 * s] |= bit;
    } else if (x[e] < 0) {
      a[2 * s + 1] |= bit;
    }
  }
  return a;
}

void remove_entry(const SetFunction& f, Arg& a, int e) {
  const int n = f.n();
  const int s = e / n;
  const Mask clear = ~(Mask{1} << (e % n));
  if (is_signed(f.mode())) {
    a[2 * s] &= clear;
    a[2 * s + 1] &= clear;
  } else {
    a[s] &= clear;
  }
}

// Gradient of the piece given by an entry order and the sign choice for
// zero entries (signed modes).
std::vector<double> piece_gradient(const SetFunction& f, std::span<const double> x,
                                   const std::vector<int>& order, const std::vector<int>& sgn) {
  const bool sign = is_signed(f.mode());
  Arg a(f.arity(), 0);
  const int n = f.n();
  for (int e = 0; e < f.dim(); ++e) {
    const int s = e / n;
    const Mask bit = Mask{1} << (e % n);
    if (!sign) a[s] |= bit;
    else if (sgn[e] > 0) a[2 * s] |= bit;
    else a[2 * s + 1] |= bit;
  }
  std::vector<double> g(x.size(), 0.0);
  double cur = f.raw(a);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int e = order[i];
    remove_entry(f, a, e);
    const double next = i + 1 == order.size() ? 0.0 : f.raw(a);
    g[e] = (sign ? sgn[e] : 1) * (cur - next);
    cur = next;
  }
  return g;
}

}  // namespace

double lovasz_eval(const SetFunction& f, std::span<const double> x) {
  check_point(f, x);
  const bool sign = is_signed(f.mode());
  const std::vector<int> o = sorted_order(x, sign);
  Arg a = initial_arg(f, x, false);
  const double k0 = key_of(x[o[0]], sign);
  double value = k0 != 0 ? k0 * f.raw(a) : 0.0;
  for (std::size_t i = 0; i + 1 < o.size(); ++i) {
    remove_entry(f, a, o[i]);
    const double d = key_of(x[o[i + 1]], sign) - key_of(x[o[i]], sign);
    if (d != 0) value += d * f.raw(a);
  }
  return value;
}

Subgradient lovasz_subgradient(const SetFunction& f, std::span<const double> x) {
  check_point(f, x);
  const bool sign = is_signed(f.mode());
  const std::vector<int> o = sorted_order(x, sign);
  std::vector<int> sgn(x.size(), 1);
  if (sign)
    for (std::size_t e = 0; e < x.size(); ++e) sgn[e] = x[e] < 0 ? -1 : 1;
  Subgradient out;
  out.g = piece_gradient(f, x, o, sgn);
  for (std::size_t e = 0; e < x.size(); ++e) out.value += out.g[e] * x[e];
  return out;
}

std::vector<std::vector<double>> lovasz_piece_gradients(const SetFunction& f,
                                                        std::span<const double> x,
                                                        double tie_tol,
                                                        std::size_t max_vertices) {
  check_point(f, x);
  const bool sign = is_signed(f.mode());
  std::vector<int> o = sorted_order(x, sign);
  // Tie groups as [begin, end) ranges of o.
  std::vector<std::pair<int, int>> groups;
  for (std::size_t i = 0; i < o.size();) {
    std::size_t j = i + 1;
    while (j < o.size() && key_of(x[o[j]], sign) - key_of(x[o[j - 1]], sign) <= tie_tol) ++j;
    groups.emplace_back(static_cast<int>(i), static_cast<int>(j));
    i = j;
  }
  std::vector<int> zeros;
  if (sign)
    for (std::size_t e = 0; e < x.size(); ++e)
      if (std::fabs(x[e]) <= tie_tol) zeros.push_back(static_cast<int>(e));

  double count = std::pow(2.0, static_cast<double>(zeros.size()));
  for (auto [b, e] : groups) count *= std::tgamma(e - b + 1.0);
  if (count > static_cast<double>(max_vertices))
    throw ComputationError("too many tie-consistent pieces at this point");

  for (auto [b, e] : groups) std::sort(o.begin() + b, o.begin() + e);
  std::vector<std::vector<double>> out;
  std::vector<int> sgn(x.size(), 1);
  for (std::size_t e = 0; e < x.size(); ++e) sgn[e] = x[e] < 0 ? -1 : 1;

  for (std::uint64_t zs = 0; zs < (std::uint64_t{1} << zeros.size()); ++zs) {
    for (std::size_t z = 0; z < zeros.size(); ++z) sgn[zeros[z]] = (zs >> z & 1) ? -1 : 1;
    std::vector<int> cur = o;
    while (true) {
      out.push_back(piece_gradient(f, x, cur, sgn));
      // Odometer over per-group permutations.
      std::size_t gi = 0;
      for (; gi < groups.size(); ++gi) {
        auto [b, e] = groups[gi];
        if (std::next_permutation(cur.begin() + b, cur.begin() + e)) break;
      }
      if (gi == groups.size()) break;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool in_domain(const SetFunction& f, std::span<const double> x) {
  if (f.mode() != Mode::KWay) return true;
  return std::all_of(x.begin(), x.end(), [](double v) { return v >= 0; });
}

std::vector<double> indicator(const SetFunction& f, std::span<const Mask> arg) {
  f.validate(arg);
  const int n = f.n();
  std::vector<double> x(f.dim(), 0.0);
  for (int s = 0; s < f.k(); ++s)
    for (int i = 0; i < n; ++i) {
      if (is_signed(f.mode())) {
        if (arg[2 * s] >> i & 1) x[s * n + i] = 1.0;
        if (arg[2 * s + 1] >> i & 1) x[s * n + i] = -1.0;
      } else if (arg[s] >> i & 1) {
        x[s * n + i] = 1.0;
      }
    }
  return x;
}

bool StructuralReport::all_passed() const {
  return std::all_of(properties.begin(), properties.end(),
                     [](const PropertyResult& p) { return !p.applicable || p.passed; });
}

namespace {

std::string show(std::span<const double> x) {
  std::ostringstream os;
  os.precision(6);
  os << '(';
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
  os << ')';
  return os.str();
}

double defect(double a, double b) {
  return std::fabs(a - b) / std::max({1.0, std::fabs(a), std::fabs(b)});
}

struct Tracker {
  PropertyResult r;
  double tol;
  void record(double d, const std::string& witness) {
    ++r.trials;
    if (d > r.worst) r.worst = d;
    if (d > tol && r.passed) {
      r.passed = false;
      r.witness = witness;
    }
  }
};

// Random point; every fourth draw is coarsened so ties appear.
std::vector<double> draw(Rng& rng, int dim, bool nonneg, int t) {
  std::vector<double> x = rng.vec(dim, nonneg ? 0.0 : -1.0, 1.0);
  if (t % 4 == 3)
    for (double& v : x) v = std::round(v * 4) / 4;
  return x;
}

SetFunction zero_at_empty(const SetFunction& f) {
  return SetFunction::from_callable(f.n(), f.mode(), f.k(), [f](std::span<const Mask> a) {
    for (Mask m : a)
      if (m) return f.raw(a);
    return 0.0;
  });
}

double max_abs(const SetFunction& f) {
  double m = 0.0;
  for_each_argument(f, [&](std::span<const Mask> a) { m = std::max(m, std::fabs(f.raw(a))); });
  return m;
}

}  // namespace

StructuralReport check_structural(const SetFunction& f0, const StructuralOptions& opt) {
  const SetFunction f = f0.materialized();
  const int n = f.n(), dim = f.dim();
  const Mode mode = f.mode();
  const bool sign = is_signed(mode);
  const bool nonneg = mode == Mode::KWay;
  const double tol = opt.tol;
  Rng rng(opt.seed);
  StructuralReport rep;
  auto L = [&](const SetFunction& g, std::span<const double> x) { return lovasz_eval(g, x); };

  {
    Tracker t{{"homogeneity"}, tol};
    for (int i = 0; i < opt.trials; ++i) {
      auto x = draw(rng, dim, nonneg, i);
      const double s = rng.uniform(0.0, 5.0);
      std::vector<double> y(x);
      for (double& v : y) v *= s;
      t.record(defect(L(f, y), s * L(f, x)), "x=" + show(x) + " t=" + std::to_string(s));
    }
    rep.properties.push_back(t.r);
  }

  {
    Tracker t{{"translation"}, tol};
    if (sign) {
      t.r.applicable = false;
    } else {
      std::vector<Mask> full(f.arity(), full_mask(n));
      const double fv = f.raw(full);
      for (int i = 0; i < opt.trials; ++i) {
        auto x = draw(rng, dim, nonneg, i);
        const double s = nonneg ? rng.uniform(0.0, 2.0) : rng.uniform(-2.0, 2.0);
        std::vector<double> y(x);
        for (double& v : y) v += s;
        t.record(defect(L(f, y), L(f, x) + s * fv), "x=" + show(x) + " t=" + std::to_string(s));
      }
    }
    rep.properties.push_back(t.r);
  }

  {
    Tracker t{{sign ? "absolute_comonotonic_additivity" : "comonotonic_additivity"}, tol};
    for (int i = 0; i < opt.trials; ++i) {
      auto perm = rng.permutation(dim);
      auto a = rng.vec(dim, sign || nonneg ? 0.0 : -1.0, 1.0);
      auto b = rng.vec(dim, sign || nonneg ? 0.0 : -1.0, 1.0);
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      std::vector<double> x(dim), y(dim), z(dim);
      for (int j = 0; j < dim; ++j) {
        const double s = sign && rng.coin() ? -1.0 : 1.0;
        x[perm[j]] = s * a[j];
        y[perm[j]] = s * b[j];
      }
      for (int j = 0; j < dim; ++j) z[j] = x[j] + y[j];
      t.record(defect(L(f, z), L(f, x) + L(f, y)), "x=" + show(x) + " y=" + show(y));
    }
    rep.properties.push_back(t.r);
  }

  {
    Tracker t{{"lipschitz"}, tol};
    if (f.argument_count() > (1LL << 20)) {
      t.r.applicable = false;
    } else {
      const double lip = 2.0 * max_abs(f);
      for (int i = 0; i < opt.trials; ++i) {
        auto x = draw(rng, dim, nonneg, i);
        auto y = draw(rng, dim, nonneg, i + 1);
        if (i % 2 == 0)  // nearby pairs too
          for (int j = 0; j < dim; ++j) y[j] = std::max(nonneg ? 0.0 : -1.0, x[j] + 0.01 * (y[j]));
        double d1 = 0.0;
        for (int j = 0; j < dim; ++j) d1 += std::fabs(x[j] - y[j]);
        const double excess = std::fabs(L(f, x) - L(f, y)) - lip * d1;
        t.record(std::max(0.0, excess), "x=" + show(x) + " y=" + show(y));
      }
    }
    rep.properties.push_back(t.r);
  }

  {
    Tracker t{{"indicator"}, tol};
    auto one = [&](std::span<const Mask> a) {
      if (std::all_of(a.begin(), a.end(), [](Mask m) { return m == 0; })) return;
      auto x = indicator(f, a);
      t.record(defect(L(f, x), f.raw(a)), format_arg(a, mode, n));
    };
    if (f.argument_count() <= 4096) {
      for_each_argument(f, one);
    } else {
      for (int i = 0; i < opt.trials; ++i) {
        Arg a(f.arity(), 0);
        for (int s = 0; s < f.arity(); ++s) a[s] = static_cast<Mask>(rng.engine()() & full_mask(n));
        if (sign)
          for (int s = 0; s + 1 < f.arity(); s += 2) a[s + 1] &= ~a[s];
        one(a);
      }
    }
    rep.properties.push_back(t.r);
  }

  if (sign) {
    // f^L(-x) is the extension of (A,B) -> f(B,A).
    Tracker t{{"reflection"}, tol};
    SetFunction swapped = SetFunction::from_callable(n, mode, f.k(), [f](std::span<const Mask> a) {
      Arg b(a.begin(), a.end());
      for (std::size_t s = 0; s + 1 < b.size(); s += 2) std::swap(b[s], b[s + 1]);
      return f.raw(b);
    });
    for (int i = 0; i < opt.trials; ++i) {
      auto x = draw(rng, dim, false, i);
      std::vector<double> y(x);
      for (double& v : y) v = -v;
      t.record(defect(L(f, y), L(swapped, x)), "x=" + show(x));
    }
    rep.properties.push_back(t.r);
  }

  {
    // Sum of two copies in separate blocks.
    Tracker t{{"separable_sum"}, tol};
    const SetFunction f0z = zero_at_empty(f);
    const int ar = f.arity();
    const Mode km = sign ? Mode::KWayPair : Mode::KWay;
    SetFunction both = SetFunction::from_callable(n, km, 2 * f.k(), [f0z, ar](std::span<const Mask> a) {
      return f0z.raw(a.subspan(0, ar)) + f0z.raw(a.subspan(ar, ar));
    });
    for (int i = 0; i < opt.trials; ++i) {
      auto x = draw(rng, dim, nonneg, i);
      auto y = draw(rng, dim, nonneg, i + 2);
      std::vector<double> xy(x);
      xy.insert(xy.end(), y.begin(), y.end());
      t.record(defect(L(both, xy), L(f, x) + L(f, y)), "x=" + show(x) + " y=" + show(y));
    }
    rep.properties.push_back(t.r);
  }

  // Relations between the two extensions for a set function h.
  std::optional<SetFunction> h;
  if (opt.h) h = opt.h->materialized();
  else if (mode == Mode::Set) h = f;
  const char* names[] = {"setpair_a", "setpair_b", "setpair_c", "setpair_d", "setpair_e_plus",
                         "setpair_e_minus"};
  if (h && h->mode() == Mode::Set && h->n() <= 20) {
    const SetFunction hz = zero_at_empty(*h).materialized();
    const int hn = hz.n();
    const Mask full = full_mask(hn);
    auto hv = [hz](Mask a) { return hz.raw(std::span<const Mask>(&a, 1)); };
    bool symmetric = true;
    for (Mask a = 0; a <= full && symmetric; ++a) {
      if (std::fabs(hv(a) - hv(full & ~a)) > 1e-12) symmetric = false;
      if (a == full) break;
    }
    std::vector<SetFunction> built = {
        SetFunction::pair(hn, [hv, full](Mask a, Mask b) { return hv(a) + hv(full & ~b) - hv(full); }),
        SetFunction::pair(hn, [hv](Mask a, Mask b) { return hv(a) + hv(b); }),
        SetFunction::pair(hn, [hv](Mask a, Mask) { return hv(a); }),
        SetFunction::pair(hn, [hv](Mask a, Mask b) { return hv(a | b); }),
        SetFunction::pair(hn, [hv](Mask a, Mask b) { return hv(a) + hv(b); }),
        SetFunction::pair(hn, [hv](Mask a, Mask b) { return hv(a) - hv(b); }),
    };
    for (int r = 0; r < 6; ++r) {
      Tracker t{{names[r]}, tol};
      if (r == 1 && !symmetric) {
        t.r.applicable = false;
        t.r.witness = "h is not symmetric";
        rep.properties.push_back(t.r);
        continue;
      }
      const SetFunction F = built[r].materialized();
      for (int i = 0; i < opt.trials; ++i) {
        auto x = draw(rng, hn, r == 2, i);
        std::vector<double> xp(hn), xm(hn), xa(hn);
        for (int j = 0; j < hn; ++j) {
          xp[j] = std::max(x[j], 0.0);
          xm[j] = std::max(-x[j], 0.0);
          xa[j] = std::fabs(x[j]);
        }
        double want = 0.0;
        switch (r) {
          case 0: case 1: case 2: want = L(hz, x); break;
          case 3: want = L(hz, xa); break;
          case 4: want = L(hz, xp) + L(hz, xm); break;
          case 5: want = L(hz, xp) - L(hz, xm); break;
        }
        t.record(defect(L(F, x), want), "x=" + show(x));
      }
      rep.properties.push_back(t.r);
    }
  } else {
    for (const char* nm : names) {
      PropertyResult p{nm};
      p.applicable = false;
      rep.properties.push_back(p);
    }
  }
  return rep;
}

}  // namespace lovx
