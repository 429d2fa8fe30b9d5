#include "lovx/submod.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "lovx/error.hpp"
#include "lovx/random.hpp"

namespace lovx {

Arg lattice_join(std::span<const Mask> a, std::span<const Mask> b, Mode mode) {
  Arg out(a.size());
  if (!is_signed(mode)) {
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] | b[i];
    return out;
  }
  for (std::size_t i = 0; i + 1 < a.size(); i += 2) {
    const Mask p = a[i] | b[i], q = a[i + 1] | b[i + 1];
    out[i] = p & ~q;
    out[i + 1] = q & ~p;
  }
  return out;
}

Arg lattice_meet(std::span<const Mask> a, std::span<const Mask> b, Mode) {
  Arg out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] & b[i];
  return out;
}

namespace {

struct Hit {
  bool found = false;
  Arg a, b;
  double v = 0.0;
};

double gap(const SetFunction& f, std::span<const Mask> a, std::span<const Mask> b, Mode mode,
           double& scale) {
  const double fa = f.raw(a), fb = f.raw(b);
  scale = std::max(1.0, std::fabs(fa) + std::fabs(fb));
  const Arg j = lattice_join(a, b, mode), m = lattice_meet(a, b, mode);
  return f.raw(j) + f.raw(m) - fa - fb;
}

std::vector<Arg> members_of(const SetFunction& f, const Family& family) {
  if (f.argument_count() > (1LL << 13))
    throw ComputationError("pairwise submodularity check limited to 8192 arguments");
  std::vector<Arg> out;
  for_each_argument(f, [&](std::span<const Mask> a) {
    if (family(a)) out.emplace_back(a.begin(), a.end());
  });
  return out;
}

void check_closed(const std::vector<Arg>& mem, Mode mode) {
  std::set<Arg> s(mem.begin(), mem.end());
  for (std::size_t i = 0; i < mem.size(); ++i)
    for (std::size_t j = i + 1; j < mem.size(); ++j)
      if (!s.count(lattice_join(mem[i], mem[j], mode)) || !s.count(lattice_meet(mem[i], mem[j], mode)))
        throw InvalidArgument("family is not closed under join and meet");
}

Hit scan_row(const SetFunction& f, const std::vector<Arg>& mem, std::size_t i, double tol) {
  Hit h;
  for (std::size_t j = i + 1; j < mem.size(); ++j) {
    double scale;
    const double v = gap(f, mem[i], mem[j], f.mode(), scale);
    if (v > tol * scale) {
      h = {true, mem[i], mem[j], v};
      break;
    }
  }
  return h;
}

Hit scan_local(const SetFunction& f, Mask a, double tol) {
  Hit h;
  const int n = f.n();
  for (int i = 0; i < n && !h.found; ++i) {
    if (a >> i & 1) continue;
    for (int j = i + 1; j < n; ++j) {
      if (a >> j & 1) continue;
      Arg x{a | Mask{1} << i}, y{a | Mask{1} << j};
      double scale;
      const double v = gap(f, x, y, Mode::Set, scale);
      if (v > tol * scale) {
        h = {true, x, y, v};
        break;
      }
    }
  }
  return h;
}

bool use_local(const SetFunction& f, const Family& family) {
  return !family.contains && f.mode() == Mode::Set && f.n() > 12;
}

SubmodularityResult result_from(const Hit& h, long long pairs, bool exhaustive) {
  SubmodularityResult r;
  r.pairs = pairs;
  r.exhaustive = exhaustive;
  if (h.found) {
    r.holds = false;
    r.a = h.a;
    r.b = h.b;
    r.violation = h.v;
  }
  return r;
}

}  // namespace

SubmodularityResult is_submodular(const SetFunction& f0, const Family& family, double tol) {
  const SetFunction f = f0.materialized();
  if (use_local(f, family)) {
    require(f.n() <= 20, "submodularity check supports n <= 20 in Set mode");
    const long long top = 1LL << f.n();
    std::vector<Hit> hits(top);
#pragma omp parallel for schedule(dynamic, 256)
    for (long long a = 0; a < top; ++a) hits[a] = scan_local(f, static_cast<Mask>(a), tol);
    for (const Hit& h : hits)
      if (h.found) return result_from(h, top * f.n() * (f.n() - 1) / 2, false);
    return result_from({}, top * f.n() * (f.n() - 1) / 2, false);
  }
  const std::vector<Arg> mem = members_of(f, family);
  if (family.contains) check_closed(mem, f.mode());
  const long long m = static_cast<long long>(mem.size());
  std::vector<Hit> hits(mem.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (long long i = 0; i < m; ++i) hits[i] = scan_row(f, mem, static_cast<std::size_t>(i), tol);
  for (const Hit& h : hits)
    if (h.found) return result_from(h, m * (m - 1) / 2, true);
  return result_from({}, m * (m - 1) / 2, true);
}

namespace serial {

SubmodularityResult is_submodular(const SetFunction& f0, const Family& family, double tol) {
  const SetFunction f = f0.materialized();
  if (use_local(f, family)) {
    require(f.n() <= 20, "submodularity check supports n <= 20 in Set mode");
    const long long top = 1LL << f.n();
    for (long long a = 0; a < top; ++a) {
      Hit h = scan_local(f, static_cast<Mask>(a), tol);
      if (h.found) return result_from(h, top * f.n() * (f.n() - 1) / 2, false);
    }
    return result_from({}, top * f.n() * (f.n() - 1) / 2, false);
  }
  const std::vector<Arg> mem = members_of(f, family);
  if (family.contains) check_closed(mem, f.mode());
  const long long m = static_cast<long long>(mem.size());
  for (std::size_t i = 0; i < mem.size(); ++i) {
    Hit h = scan_row(f, mem, i, tol);
    if (h.found) return result_from(h, m * (m - 1) / 2, true);
  }
  return result_from({}, m * (m - 1) / 2, true);
}

}  // namespace serial

std::vector<double> lattice_join(std::span<const double> x, std::span<const double> y, Lattice l) {
  std::vector<double> z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (l == Lattice::S2 || (x[i] >= 0 && y[i] >= 0)) z[i] = std::max(x[i], y[i]);
    else if (x[i] <= 0 && y[i] <= 0) z[i] = std::min(x[i], y[i]);
    else z[i] = 0.0;
  }
  return z;
}

std::vector<double> lattice_meet(std::span<const double> x, std::span<const double> y, Lattice l) {
  std::vector<double> z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (l == Lattice::S2 || (x[i] >= 0 && y[i] >= 0)) z[i] = std::min(x[i], y[i]);
    else if (x[i] <= 0 && y[i] <= 0) z[i] = std::max(x[i], y[i]);
    else z[i] = 0.0;
  }
  return z;
}

namespace {

std::vector<double> sample_point(Rng& rng, int dim, bool nonneg, bool signed_lattice, int s) {
  const double lo = nonneg ? 0.0 : -1.0;
  std::vector<double> x(dim);
  switch (s % 3) {
    case 0:
      x = rng.vec(dim, lo, 1.0);
      break;
    case 1: {
      x = rng.vec(dim, lo, 1.0);
      double m = 0.0;
      for (double v : x) m = std::max(m, std::fabs(v));
      if (m > 0)
        for (double& v : x) v /= m;
      break;
    }
    default:
      for (double& v : x) v = signed_lattice && !nonneg ? rng.integer(-1, 1) : rng.integer(0, 1);
  }
  return x;
}

double rel(double a, double b) { return std::max({1.0, std::fabs(a), std::fabs(b)}); }

// Same-sign partner of x, with some coordinates mirrored.
std::vector<double> admissible_partner(Rng& rng, std::span<const double> x, int s) {
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (rng.coin(1.0 / 3)) {
      y[i] = -x[i];
      continue;
    }
    double mag = s % 3 == 2 ? rng.integer(0, 1) : rng.uniform(0, 1);
    const double sg = x[i] > 0 ? 1 : x[i] < 0 ? -1 : (rng.coin() ? 1 : -1);
    y[i] = sg * mag;
  }
  return y;
}

}  // namespace

ContinuousCheck is_continuous_submodular(const Functional0& F, int dim, Lattice lattice,
                                         int samples, std::uint64_t seed, double tol,
                                         bool nonneg) {
  Rng rng(seed);
  ContinuousCheck out;
  const bool sgn = lattice != Lattice::S2;
  for (int s = 0; s < samples; ++s) {
    auto x = sample_point(rng, dim, nonneg, sgn, s);
    auto y = lattice == Lattice::BS2 ? admissible_partner(rng, x, s)
                                     : sample_point(rng, dim, nonneg, sgn, s);
    const double fx = F(x), fy = F(y);
    const double v = F(lattice_join(x, y, lattice)) + F(lattice_meet(x, y, lattice)) - fx - fy;
    ++out.samples;
    if (v > tol * rel(fx, fy)) {
      out.holds = false;
      out.x = x;
      out.y = y;
      out.violation = v;
      break;
    }
  }
  return out;
}

ConvexityEquivalence check_convexity_equivalence(const SetFunction& f0, int trials,
                                                 std::uint64_t seed, double tol) {
  require(f0.mode() != Mode::KWayPair, "convexity equivalence covers Set, Pair and KWay modes");
  const SetFunction f = f0.materialized();
  ConvexityEquivalence out;
  out.discrete = is_submodular(f);
  out.discrete_submodular = out.discrete.holds;

  const int dim = f.dim();
  const bool nonneg = f.mode() == Mode::KWay;
  auto F = [&f](std::span<const double> x) { return lovasz_eval(f, x); };
  auto midpoint_ok = [&](const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> m(dim);
    for (int i = 0; i < dim; ++i) m[i] = 0.5 * (x[i] + y[i]);
    const double fx = F(x), fy = F(y);
    return F(m) <= 0.5 * (fx + fy) + tol * rel(fx, fy);
  };
  out.convex = true;
  std::vector<std::vector<double>> ind;
  if (f.argument_count() <= 64)
    for_each_argument(f, [&](std::span<const Mask> a) { ind.push_back(indicator(f, a)); });
  for (std::size_t i = 0; i < ind.size() && out.convex; ++i)
    for (std::size_t j = i + 1; j < ind.size(); ++j)
      if (!midpoint_ok(ind[i], ind[j])) {
        out.convex = false;
        out.convexity_x = ind[i];
        out.convexity_y = ind[j];
        break;
      }
  Rng rng(seed);
  for (int t = 0; t < trials && out.convex; ++t) {
    auto x = sample_point(rng, dim, nonneg, is_signed(f.mode()), t);
    auto y = sample_point(rng, dim, nonneg, is_signed(f.mode()), t);
    if (!midpoint_ok(x, y)) {
      out.convex = false;
      out.convexity_x = x;
      out.convexity_y = y;
    }
  }
  const Lattice lat = is_signed(f.mode()) ? Lattice::BS2 : Lattice::S2;
  out.continuous = is_continuous_submodular(F, dim, lat, trials, seed + 1, tol, nonneg);
  out.continuous_submodular = out.continuous.holds;
  return out;
}

namespace {

std::string show(std::span<const double> x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(x[i]);
  }
  return s + ")";
}

struct Cond {
  PropertyResult r;
  double tol;
  void record(double a, double b, const std::string& w) {
    const double d = std::fabs(a - b) / rel(a, b);
    ++r.trials;
    r.worst = std::max(r.worst, d);
    if (d > tol && r.passed) {
      r.passed = false;
      r.witness = w;
    }
  }
  void record_ge(double lhs, double rhs, const std::string& w) {
    const double d = std::max(0.0, (rhs - lhs) / rel(lhs, rhs));
    ++r.trials;
    r.worst = std::max(r.worst, d);
    if (d > tol && r.passed) {
      r.passed = false;
      r.witness = w;
    }
  }
};

}  // namespace

CharacterizationReport check_characterization(const Functional0& F, Mode mode, int n,
                                              int samples, std::uint64_t seed, double tol) {
  require(mode == Mode::Set || mode == Mode::Pair, "characterization covers Set and Pair modes");
  require(n >= 1 && n <= 16, "characterization supports 1 <= n <= 16");
  Rng rng(seed);
  CharacterizationReport rep;
  rep.mode = mode;
  const bool sign = mode == Mode::Pair;

  Cond homog{{"positive_homogeneity"}, tol};
  for (int s = 0; s < samples; ++s) {
    auto x = rng.vec(n, -1, 1);
    const double t = rng.uniform(0, 5);
    std::vector<double> y(x);
    for (double& v : y) v *= t;
    homog.record(F(y), t * F(x), show(x));
  }
  rep.conditions.push_back(homog.r);

  const ContinuousCheck sub =
      is_continuous_submodular(F, n, sign ? Lattice::BS2 : Lattice::S2, samples, seed + 1, tol);
  PropertyResult subr{sign ? "submodular_BS2" : "submodular_S2"};
  subr.trials = sub.samples;
  subr.passed = sub.holds;
  subr.worst = sub.violation;
  if (!sub.holds) subr.witness = "x=" + show(sub.x) + " y=" + show(sub.y);
  rep.conditions.push_back(subr);

  if (!sign) {
    Cond tr{{"translation"}, tol};
    const std::vector<double> ones(n, 1.0);
    const double f1 = F(ones);
    for (int s = 0; s < samples; ++s) {
      auto x = rng.vec(n, -1, 1);
      const double t = rng.uniform(-2, 2);
      std::vector<double> y(x);
      for (double& v : y) v += t;
      tr.record(F(y), F(x) + t * f1, show(x));
    }
    rep.conditions.push_back(tr.r);

    Cond co{{"comonotonic_additivity"}, tol};
    for (int s = 0; s < samples; ++s) {
      auto p = rng.permutation(n);
      auto a = rng.vec(n, -1, 1), b = rng.vec(n, -1, 1);
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      std::vector<double> x(n), y(n), z(n);
      for (int i = 0; i < n; ++i) {
        x[p[i]] = a[i];
        y[p[i]] = b[i];
      }
      for (int i = 0; i < n; ++i) z[i] = x[i] + y[i];
      co.record(F(z), F(x) + F(y), "x=" + show(x) + " y=" + show(y));
    }
    rep.conditions.push_back(co.r);
  } else {
    Cond tr{{"translation_inequality"}, tol};
    for (int s = 0; s < samples; ++s) {
      auto x = rng.vec(n, -1, 1);
      for (double& v : x)
        if (rng.coin(0.2)) v = 0.0;
      const double t = rng.uniform(0, 2);
      std::vector<double> d(n), y(n);
      for (int i = 0; i < n; ++i) {
        const double sg = x[i] > 0 ? 1 : x[i] < 0 ? -1 : (rng.coin() ? 1 : -1);
        d[i] = sg * t;
        y[i] = x[i] + d[i];
      }
      tr.record_ge(F(y), F(x) + F(d), show(x));
    }
    rep.conditions.push_back(tr.r);

    Cond co{{"absolute_comonotonic_additivity"}, tol};
    for (int s = 0; s < samples; ++s) {
      auto p = rng.permutation(n);
      auto a = rng.vec(n, 0, 1), b = rng.vec(n, 0, 1);
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      std::vector<double> x(n), y(n), z(n);
      for (int i = 0; i < n; ++i) {
        const double sg = rng.coin() ? 1 : -1;
        x[p[i]] = sg * a[i];
        y[p[i]] = sg * b[i];
      }
      for (int i = 0; i < n; ++i) z[i] = x[i] + y[i];
      co.record(F(z), F(x) + F(y), "x=" + show(x) + " y=" + show(y));
    }
    rep.conditions.push_back(co.r);

    // Truncation at level c with the signed meet.
    Cond cut{{"truncation_additivity"}, tol};
    for (int s = 0; s < samples; ++s) {
      auto x = rng.vec(n, -1, 1);
      const double c = rng.uniform(0, 1);
      std::vector<double> lo(n), hi(n);
      for (int i = 0; i < n; ++i) {
        const double sg = x[i] < 0 ? -1 : 1;
        lo[i] = sg * std::min(std::fabs(x[i]), c);
        hi[i] = x[i] - lo[i];
      }
      cut.record(F(lo) + F(hi), F(x), show(x) + " c=" + std::to_string(c));
    }
    rep.conditions.push_back(cut.r);
  }

  auto cond = [&](const std::string& name) {
    for (auto& c : rep.conditions)
      if (c.name == name) return c.passed;
    return false;
  };
  rep.characterized = sign ? cond("positive_homogeneity") && cond("submodular_BS2") &&
                                 cond("translation_inequality")
                           : cond("positive_homogeneity") && cond("submodular_S2") &&
                                 cond("translation");

  // Rebuild f from indicator values and compare extensions.
  std::map<Arg, double> table;
  for_each_argument(n, mode, 1, 0, static_cast<Mask>(1u << n), [&](std::span<const Mask> a) {
    bool empty = std::all_of(a.begin(), a.end(), [](Mask m) { return m == 0; });
    if (empty) return;
    std::vector<double> x(n, 0.0);
    for (int i = 0; i < n; ++i) {
      if (a[0] >> i & 1) x[i] = 1.0;
      if (sign && (a[1] >> i & 1)) x[i] = -1.0;
    }
    table[Arg(a.begin(), a.end())] = F(x);
  });
  SetFunction f = SetFunction::from_table(n, mode, 1, std::move(table)).materialized();
  bool match = true;
  for (int s = 0; s < samples && match; ++s) {
    auto x = rng.vec(n, -1, 1);
    const double a = F(x), b = lovasz_eval(f, x);
    if (std::fabs(a - b) > tol * rel(a, b)) match = false;
  }
  rep.reconstruction_matches = match;
  if (n <= 8) rep.reconstructed_submodular = is_submodular(f).holds;
  rep.reconstructed = f;
  return rep;
}

}  // namespace lovx
