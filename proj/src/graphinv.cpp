#include "lovx/graphinv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "lovx/error.hpp"
#include "lovx/lovasz.hpp"
#include "lovx/submod.hpp"

namespace lovx {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double linf(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::fabs(v));
  return m;
}

Vec degrees(const Graph& g) {
  Vec d(g.n());
  for (int v = 0; v < g.n(); ++v) d[v] = g.degree(v);
  return d;
}

Vec indicator_of(Mask a, int n) {
  Vec x(n, 0.0);
  for (int v = 0; v < n; ++v)
    if ((a >> v) & 1u) x[v] = 1.0;
  return x;
}

std::string mask_string(Mask a, int n) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int v = 0; v < n; ++v)
    if ((a >> v) & 1u) {
      if (!first) os << ',';
      os << v;
      first = false;
    }
  os << '}';
  return os.str();
}

// Random signed point with occasional zeros and ties.
Vec signed_sample(int d, Rng& rng) {
  Vec x(d);
  const bool coarse = rng.coin(0.3);
  for (double& v : x) {
    v = rng.uniform(-1.0, 1.0);
    if (coarse) v = std::round(v * 2.0) / 2.0;
    if (rng.coin(0.1)) v = 0.0;
  }
  if (linf(x) == 0.0) x[rng.integer(0, d - 1)] = 1.0;
  return x;
}

Vec nonneg_sample(int d, Rng& rng) {
  Vec x = signed_sample(d, rng);
  for (double& v : x) v = std::fabs(v);
  return x;
}

double sum_abs_diff_edges(const Graph& g, std::span<const double> x) {
  double s = 0.0;
  for (auto [i, j] : g.edges()) s += std::fabs(x[i] - x[j]);
  return s;
}

Functional total_variation(const Graph& g) {
  std::vector<Functional::Term> t;
  for (auto [i, j] : g.edges()) t.push_back({{{i, 1.0}, {j, -1.0}}, 1.0});
  return Functional::abs_sum(g.n(), t, "tv");
}

SetFunction min_size_fn(int n) {
  return SetFunction::set(n, [n](Mask a) {
    const int c = popcount(a);
    return static_cast<double>(std::min(c, n - c));
  });
}

SetFunction min_volume_fn(const Graph& g) {
  return SetFunction::set(g.n(), [g](Mask a) {
    return static_cast<double>(std::min(g.volume(a), g.volume(full_mask(g.n()) & ~a)));
  });
}

Mask ext_boundary(const Graph& g, Mask a) {
  Mask b = 0;
  for (int v = 0; v < g.n(); ++v)
    if ((a >> v) & 1u) b |= g.neighbors(v);
  return b & ~a;
}

Mask int_boundary(const Graph& g, Mask a) {
  const Mask rest = full_mask(g.n()) & ~a;
  Mask b = 0;
  for (int v = 0; v < g.n(); ++v)
    if (((a >> v) & 1u) && (g.neighbors(v) & rest)) b |= Mask{1} << v;
  return b;
}

}  // namespace

double weighted_median_deviation(std::span<const double> x, std::span<const double> w) {
  const int n = static_cast<int>(x.size());
  if (n == 0) return 0.0;
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return x[a] < x[b]; });
  double total = 0.0;
  for (double v : w) total += v;
  // A weighted median minimizes the piecewise-linear objective.
  double acc = 0.0;
  double t = x[idx[n - 1]];
  for (int i : idx) {
    acc += w[i];
    if (2.0 * acc >= total) {
      t = x[i];
      break;
    }
  }
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += w[i] * std::fabs(x[i] - t);
  return s;
}

// ---------------------------------------------------------------- catalog

std::vector<std::string> catalog_names() {
  return {"t1.cut",           "t1.const",         "t1.volume",        "t1.min_volume",
          "t1.size_product",  "t1.vertex_boundary", "t2.cut_sum",     "t2.edges_between",
          "t2.const",         "t2.volume_sum",    "t2.min_volume_sum", "t2.inner_edges",
          "t2.size_inner_edges", "t2.size_product"};
}

CatalogRow functional_catalog(const std::string& name, const Graph& g, double c) {
  const int n = g.n();
  const Vec deg = degrees(g);
  const Mask all = full_mask(n);
  CatalogRow r;
  r.name = name;
  if (name == "t1.cut") {
    r.description = "#E(A, V\\A) -> sum_E |x_i - x_j|";
    r.discrete = SetFunction::set(n, [g](Mask a) { return double(g.cut(a)); });
    r.closed_form = [g](std::span<const double> x) { return sum_abs_diff_edges(g, x); };
  } else if (name == "t1.const") {
    r.description = "C -> C max_i x_i";
    r.discrete = SetFunction::set(n, [c](Mask) { return c; });
    r.closed_form = [c](std::span<const double> x) {
      return c * *std::max_element(x.begin(), x.end());
    };
  } else if (name == "t1.volume") {
    r.description = "vol(A) -> sum_i deg_i x_i";
    r.discrete = SetFunction::set(n, [g](Mask a) { return double(g.volume(a)); });
    r.closed_form = [deg](std::span<const double> x) {
      double s = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) s += deg[i] * x[i];
      return s;
    };
  } else if (name == "t1.min_volume") {
    r.description = "min(vol A, vol V\\A) -> min_t sum_i deg_i |x_i - t|";
    r.discrete = min_volume_fn(g);
    r.closed_form = [deg](std::span<const double> x) { return weighted_median_deviation(x, deg); };
  } else if (name == "t1.size_product") {
    r.description = "#A #(V\\A) -> sum_{i<j} |x_i - x_j|";
    r.discrete = SetFunction::set(n, [n](Mask a) {
      return double(popcount(a)) * double(n - popcount(a));
    });
    r.closed_form = [](std::span<const double> x) {
      double s = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j) s += std::fabs(x[i] - x[j]);
      return s;
    };
  } else if (name == "t1.vertex_boundary") {
    r.description = "#V(E(A, V\\A)) -> sum_i (max_{N(i)} x - min_{N(i)} x)";
    r.discrete = SetFunction::set(n, [g](Mask a) {
      return double(popcount(ext_boundary(g, a) | int_boundary(g, a)));
    });
    r.closed_form = [g](std::span<const double> x) {
      double s = 0.0;
      for (int i = 0; i < g.n(); ++i) {
        double hi = x[i], lo = x[i];
        for (int j = 0; j < g.n(); ++j)
          if (g.adjacent(i, j)) {
            hi = std::max(hi, x[j]);
            lo = std::min(lo, x[j]);
          }
        s += hi - lo;
      }
      return s;
    };
  } else if (name == "t2.cut_sum") {
    r.description = "#E(A, V\\A) + #E(B, V\\B) -> sum_E |x_i - x_j|";
    r.discrete = SetFunction::pair(n, [g](Mask a, Mask b) { return double(g.cut(a) + g.cut(b)); });
    r.closed_form = [g](std::span<const double> x) { return sum_abs_diff_edges(g, x); };
  } else if (name == "t2.edges_between") {
    r.description = "#E(A, B) -> (sum_i deg_i |x_i| - sum_E |x_i + x_j|) / 2";
    r.discrete = SetFunction::pair(n, [g](Mask a, Mask b) { return double(g.cut_between(a, b)); });
    r.closed_form = [g, deg](std::span<const double> x) {
      double s = 0.0;
      for (int i = 0; i < g.n(); ++i) s += deg[i] * std::fabs(x[i]);
      for (auto [i, j] : g.edges()) s -= std::fabs(x[i] + x[j]);
      return s / 2.0;
    };
  } else if (name == "t2.const") {
    r.description = "C -> C ||x||_inf";
    r.discrete = SetFunction::pair(n, [c](Mask, Mask) { return c; });
    r.closed_form = [c](std::span<const double> x) { return c * linf(x); };
  } else if (name == "t2.volume_sum") {
    r.description = "vol(A) + vol(B) -> sum_i deg_i |x_i|";
    r.discrete = SetFunction::pair(n, [g](Mask a, Mask b) { return double(g.volume(a) + g.volume(b)); });
    r.closed_form = [deg](std::span<const double> x) {
      double s = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) s += deg[i] * std::fabs(x[i]);
      return s;
    };
  } else if (name == "t2.min_volume_sum") {
    // Symmetric h(A) + h(B) extends to h's own extension evaluated at x.
    r.description = "min(vol A, vol V\\A) + min(vol B, vol V\\B) -> min_t sum_i deg_i |x_i - t|";
    r.discrete = SetFunction::pair(n, [g, all](Mask a, Mask b) {
      return double(std::min(g.volume(a), g.volume(all & ~a)) +
                    std::min(g.volume(b), g.volume(all & ~b)));
    });
    r.closed_form = [deg](std::span<const double> x) { return weighted_median_deviation(x, deg); };
  } else if (name == "t2.inner_edges") {
    r.description = "#E(A u B) -> sum_E min(|x_i|, |x_j|)";
    r.discrete = SetFunction::pair(n, [g](Mask a, Mask b) { return double(g.edges_inside(a | b)); });
    r.closed_form = [g](std::span<const double> x) {
      double s = 0.0;
      for (auto [i, j] : g.edges()) s += std::min(std::fabs(x[i]), std::fabs(x[j]));
      return s;
    };
  } else if (name == "t2.size_inner_edges") {
    r.description = "#(A u B) #E(A u B) -> sum_{k, E} min(|x_k|, |x_i|, |x_j|)";
    r.discrete = SetFunction::pair(n, [g](Mask a, Mask b) {
      return double(popcount(a | b)) * double(g.edges_inside(a | b));
    });
    r.closed_form = [g](std::span<const double> x) {
      double s = 0.0;
      for (int k = 0; k < g.n(); ++k)
        for (auto [i, j] : g.edges())
          s += std::min({std::fabs(x[k]), std::fabs(x[i]), std::fabs(x[j])});
      return s;
    };
  } else if (name == "t2.size_product") {
    r.description = "#(A u B) #(V \\ (A u B)) -> sum_{i>j} ||x_i| - |x_j||";
    r.discrete = SetFunction::pair(n, [n](Mask a, Mask b) {
      return double(popcount(a | b)) * double(n - popcount(a | b));
    });
    r.closed_form = [](std::span<const double> x) {
      double s = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) s += std::fabs(std::fabs(x[i]) - std::fabs(x[j]));
      return s;
    };
  } else {
    throw InvalidArgument("unknown catalog row: " + name);
  }
  return r;
}

// ---------------------------------------------------------------- helpers

Method parse_method(const std::string& s) {
  if (s == "discrete") return Method::Discrete;
  if (s == "continuous") return Method::Continuous;
  if (s == "both") return Method::Both;
  throw InvalidArgument("unknown method: " + s);
}

namespace {

bool independent(const Graph& g, Mask s) {
  for (int v = 0; v < g.n(); ++v)
    if (((s >> v) & 1u) && (g.neighbors(v) & s)) return false;
  return true;
}

// Largest independent set; ties go to the smallest mask.
Mask max_independent(const Graph& g) {
  require(g.n() <= 20, "exact independence number needs n <= 20");
  Mask best = 0;
  int best_size = 0;
  const Mask all = full_mask(g.n());
  for (Mask s = 0;; ++s) {
    if (popcount(s) > best_size && independent(g, s)) {
      best = s;
      best_size = popcount(s);
    }
    if (s == all) break;
  }
  return best;
}

}  // namespace

FractionalProblem independence_problem(const Graph& g) {
  const int n = g.n();
  std::vector<Functional::Term> pm;
  for (auto [i, j] : g.edges()) {
    pm.push_back({{{i, 1.0}, {j, -1.0}}, 1.0});
    pm.push_back({{{i, 1.0}, {j, 1.0}}, 1.0});
  }
  // 2 sum (deg_i - 1)|x_i|: positive weights stay in F2, isolated vertices
  // contribute +2|x_i| to the numerator and move to F1.
  std::vector<Functional::Term> conc;
  for (int i = 0; i < n; ++i) {
    const double w = 2.0 * (g.degree(i) - 1);
    if (w > 0) conc.push_back({{{i, 1.0}}, w});
    if (w < 0) pm.push_back({{{i, 1.0}}, -w});
  }
  FractionalProblem p;
  p.dim = n;
  p.f1 = Functional::abs_sum(n, pm, "I+ + I-");
  p.f2 = Functional::abs_sum(n, conc, "2||x||_{1,deg'}");
  p.g1 = Functional::scaled(Functional::linf(n), 2.0);
  p.g2 = Functional::zero(n);
  p.sense = Sense::Max;
  p.region.kind = Region::LinfSphere;
  p.rounding = signed_threshold_candidates;
  return p;
}

InvariantResult independence_number(const Graph& g, Method method, const SolverConfig& cfg) {
  InvariantResult r;
  r.name = "independence_number";
  const int n = g.n();
  if (method != Method::Continuous) {
    const Mask s = max_independent(g);
    r.value = popcount(s);
    r.witness = mask_string(s, n);
    r.indicator = indicator_of(s, n);
  }
  if (n > 0) {
    ContinuousForm f;
    f.sense = Sense::Max;
    f.dim = n;
    const Graph gg = g;
    f.objective = [gg](std::span<const double> x) {
      double num = 0.0;
      for (auto [i, j] : gg.edges()) num += std::fabs(x[i] - x[j]) + std::fabs(x[i] + x[j]);
      for (int i = 0; i < gg.n(); ++i) num -= 2.0 * (gg.degree(i) - 1) * std::fabs(x[i]);
      const double den = 2.0 * linf(x);
      return den > 0 ? num / den : kNaN;
    };
    f.sample = [n](Rng& rng) { return signed_sample(n, rng); };
    r.form = f;
  }
  if (method != Method::Discrete && n > 0) {
    const SolveResult s = mixed_ipsd_multistart(independence_problem(g), cfg, IpsdVariant::Normalized);
    r.continuous = s.r;
    r.certified = false;
    if (method == Method::Continuous) {
      r.value = s.r;
      r.indicator = s.x;
    }
  }
  return r;
}

// ---------------------------------------------------------------- chromatic

namespace {

bool color_rec(const Graph& g, const std::vector<int>& order, std::size_t pos, int k,
               std::vector<int>& col) {
  if (pos == order.size()) return true;
  const int v = order[pos];
  // Symmetry breaking: a vertex may open at most one new colour.
  int used = 0;
  for (std::size_t p = 0; p < pos; ++p) used = std::max(used, col[order[p]] + 1);
  for (int c = 0; c < std::min(k, used + 1); ++c) {
    bool ok = true;
    for (int u = 0; u < g.n() && ok; ++u)
      if (g.adjacent(u, v) && col[u] == c) ok = false;
    if (!ok) continue;
    col[v] = c;
    if (color_rec(g, order, pos + 1, k, col)) return true;
    col[v] = -1;
  }
  return false;
}

std::vector<int> optimal_coloring(const Graph& g) {
  const int n = g.n();
  require(n <= 12, "exact chromatic number needs n <= 12");
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return g.degree(a) > g.degree(b); });
  for (int k = 1; k <= std::max(n, 1); ++k) {
    std::vector<int> col(n, -1);
    if (color_rec(g, order, 0, k, col)) return col;
  }
  return std::vector<int>(n, 0);
}

}  // namespace

SetFunction coloring_function(const Graph& g) {
  const int n = g.n();
  return SetFunction::from_callable(n, Mode::KWayPair, n, [g, n](std::span<const Mask> a) {
    double s = 0.0;
    Mask uni = 0;
    for (int i = 0; i < n; ++i) {
      const Mask u = a[2 * i] | a[2 * i + 1];
      s += n * g.edges_inside(u) + (u ? 1.0 : 0.0);
      uni |= u;
    }
    return s + n * (n - popcount(uni));
  });
}

double chromatic_objective(const Graph& g, std::span<const double> x) {
  const int n = g.n();
  require(static_cast<int>(x.size()) == n * n, "colouring matrix must be n x n");
  const double m = linf(x);
  if (m == 0) return kNaN;
  auto at = [&](int c, int v) { return x[c * n + v]; };
  double ipm = 0.0, col_inf = 0.0, deg1 = 0.0, row_inf = 0.0;
  for (int c = 0; c < n; ++c) {
    double rmax = 0.0;
    for (auto [i, j] : g.edges())
      ipm += (std::fabs(at(c, i) - at(c, j)) + std::fabs(at(c, i) + at(c, j))) / 2.0;
    for (int v = 0; v < n; ++v) {
      deg1 += g.degree(v) * std::fabs(at(c, v));
      rmax = std::max(rmax, std::fabs(at(c, v)));
    }
    row_inf += rmax;
  }
  for (int v = 0; v < n; ++v) {
    double cmax = 0.0;
    for (int c = 0; c < n; ++c) cmax = std::max(cmax, std::fabs(at(c, v)));
    col_inf += cmax;
  }
  return double(n) * n - (n * ipm + n * col_inf - n * deg1 - row_inf) / m;
}

double chromatic_objective_by_vertex(const Graph& g, std::span<const double> mx) {
  const int n = g.n();
  require(static_cast<int>(mx.size()) == n * n, "colouring matrix must be n x n");
  const double m = linf(mx);
  if (m == 0) return kNaN;
  auto at = [&](int i, int k) { return mx[i * n + k]; };
  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    double term = 0.0;
    for (auto [i, j] : g.edges())
      term += n * (std::fabs(at(i, k) - at(j, k)) + std::fabs(at(i, k) + at(j, k)));
    double row_inf = 0.0, row_1 = 0.0, col_inf = 0.0;
    for (int c = 0; c < n; ++c) {
      row_inf = std::max(row_inf, std::fabs(at(k, c)));
      row_1 += std::fabs(at(k, c));
      col_inf = std::max(col_inf, std::fabs(at(c, k)));
    }
    term += 2.0 * n * row_inf - 2.0 * n * g.degree(k) * row_1 - 2.0 * col_inf;
    total += term;
  }
  return double(n) * n - total / (2.0 * m);
}

FractionalProblem chromatic_problem(const Graph& g) {
  const int n = g.n();
  const int d = n * n;
  std::vector<Functional::Term> pm, dg;
  for (int c = 0; c < n; ++c) {
    for (auto [i, j] : g.edges()) {
      pm.push_back({{{c * n + i, 1.0}, {c * n + j, -1.0}}, n / 2.0});
      pm.push_back({{{c * n + i, 1.0}, {c * n + j, 1.0}}, n / 2.0});
    }
    for (int v = 0; v < n; ++v)
      if (g.degree(v) > 0) dg.push_back({{{c * n + v, 1.0}}, double(n) * g.degree(v)});
  }
  std::vector<std::vector<int>> rows(n), cols(n);
  for (int c = 0; c < n; ++c)
    for (int v = 0; v < n; ++v) {
      rows[c].push_back(c * n + v);
      cols[v].push_back(c * n + v);
    }
  FractionalProblem p;
  p.dim = d;
  p.f1 = Functional::sum(Functional::abs_sum(d, pm, "n I"),
                         Functional::scaled(Functional::block_linf(d, cols, "col_inf"), n));
  p.f2 = Functional::sum(Functional::abs_sum(d, dg, "n ||x||_{1-deg,1}"),
                         Functional::block_linf(d, rows, "row_inf"));
  p.g1 = Functional::linf(d);
  p.g2 = Functional::zero(d);
  p.sense = Sense::Max;
  p.region.kind = Region::LinfSphere;
  p.rounding = signed_threshold_candidates;
  return p;
}

InvariantResult chromatic_number(const Graph& g, Method method, const SolverConfig& cfg) {
  InvariantResult r;
  r.name = "chromatic_number";
  const int n = g.n();
  if (n == 0) return r;
  if (method != Method::Continuous) {
    const std::vector<int> col = optimal_coloring(g);
    const int k = *std::max_element(col.begin(), col.end()) + 1;
    r.value = k;
    std::ostringstream os;
    Vec x(n * n, 0.0);
    Arg arg(2 * n, 0);
    for (int c = 0; c < k; ++c) {
      Mask cls = 0;
      for (int v = 0; v < n; ++v)
        if (col[v] == c) {
          cls |= Mask{1} << v;
          x[c * n + v] = 1.0;
        }
      arg[2 * c] = cls;
      os << mask_string(cls, n);
    }
    r.witness = os.str();
    r.indicator = x;
    const double at = coloring_function(g).raw(arg);
    if (at != r.value)
      throw ComputationError("colouring formula does not attain the chromatic number");
    r.note = "colouring formula at the witness = " + std::to_string(static_cast<int>(at));
  }
  ContinuousForm f;
  f.sense = Sense::Min;
  f.dim = n * n;
  const Graph gg = g;
  f.objective = [gg](std::span<const double> x) { return chromatic_objective(gg, x); };
  f.sample = [n](Rng& rng) { return signed_sample(n * n, rng); };
  r.form = f;
  if (method != Method::Discrete) {
    const SolveResult s = mixed_ipsd_multistart(chromatic_problem(g), cfg, IpsdVariant::Normalized);
    r.continuous = double(n) * n - s.r;
    r.certified = false;
    if (method == Method::Continuous) {
      r.value = *r.continuous;
      r.indicator = s.x;
    }
  }
  return r;
}

int clique_number(const Graph& g) {
  require(g.n() <= 20, "clique number needs n <= 20");
  return static_cast<int>(independence_number(g.complement()).value);
}

InvariantResult clique_cover_number(const Graph& g) {
  InvariantResult r = chromatic_number(g.complement());
  r.name = "clique_cover_number";
  return r;
}

// ---------------------------------------------------------------- max k-cut

double maxkcut_ratio(const Graph& g, int k, std::span<const double> x) {
  const int n = g.n();
  require(static_cast<int>(x.size()) == (k - 1) * n, "max k-cut point needs k-1 blocks");
  const double m = x.empty() ? 0.0 : *std::max_element(x.begin(), x.end());
  if (!(m > 0)) return kNaN;
  double s = 0.0;
  Vec top(n, 0.0);
  for (int b = 0; b < k - 1; ++b)
    for (int v = 0; v < n; ++v) top[v] = std::max(top[v], x[b * n + v]);
  for (auto [i, j] : g.edges()) {
    for (int b = 0; b < k - 1; ++b) s += std::fabs(x[b * n + i] - x[b * n + j]);
    s += std::fabs(top[i] - top[j]);
  }
  // Every cut edge appears in the boundary of both of its classes.
  return s / (2.0 * m);
}

InvariantResult max_kcut(const Graph& g, int k, Method method, const SolverConfig& cfg) {
  const int n = g.n();
  require(k >= 2, "max k-cut needs k >= 2");
  require(k <= n, "max k-cut needs k <= n");
  require(n <= 12 || method == Method::Continuous, "exact max k-cut needs n <= 12");
  InvariantResult r;
  r.name = "max_" + std::to_string(k) + "cut";

  // Restricted growth strings: label[v] <= 1 + max earlier label, < k.
  std::vector<int> label(n, 0), best_label(n, 0);
  int best = -1;
  std::function<void(int, int)> rec = [&](int v, int used) {
    if (v == n) {
      int c = 0;
      for (auto [i, j] : g.edges()) c += label[i] != label[j];
      if (c > best) {
        best = c;
        best_label = label;
      }
      return;
    }
    for (int c = 0; c <= std::min(used, k - 1); ++c) {
      label[v] = c;
      rec(v + 1, std::max(used, c + 1));
    }
  };
  if (method != Method::Continuous) {
    rec(0, 0);
    r.value = best;
    std::ostringstream os;
    Vec x((k - 1) * n, 0.0);
    for (int c = 0; c < k; ++c) {
      Mask cls = 0;
      for (int v = 0; v < n; ++v)
        if (best_label[v] == c) {
          cls |= Mask{1} << v;
          if (c < k - 1) x[c * n + v] = 1.0;
        }
      os << mask_string(cls, n);
    }
    r.witness = os.str();
    // The last class is the complement of the others; the ratio needs a
    // nonzero block, so relabel when the first k-1 classes are empty.
    if (*std::max_element(x.begin(), x.end()) == 0.0)
      for (int v = 0; v < n; ++v) x[v] = best_label[v] == k - 1 ? 1.0 : 0.0;
    r.indicator = x;
  }
  ContinuousForm f;
  f.sense = Sense::Max;
  f.dim = (k - 1) * n;
  const Graph gg = g;
  f.objective = [gg, k](std::span<const double> x) { return maxkcut_ratio(gg, k, x); };
  f.sample = [n, k](Rng& rng) {
    Vec x((k - 1) * n, 0.0);
    const bool coarse = rng.coin(0.3);
    bool any = false;
    while (!any) {
      for (int v = 0; v < n; ++v) {
        const int b = rng.integer(0, k - 1);
        if (b == k - 1) continue;
        double val = rng.uniform(0.0, 1.0);
        if (coarse) val = std::ceil(val * 2.0) / 2.0;
        x[b * n + v] = val;
        any = any || val > 0;
      }
    }
    return x;
  };
  r.form = f;
  if (method != Method::Discrete) {
    // Random search over the feasible cone; evidence only.
    const long samples = static_cast<long>(cfg.restarts) * cfg.inner_steps;
    double bestc = -std::numeric_limits<double>::infinity();
    for (long i = 0; i < samples; ++i) {
      Rng rng(stream_seed(cfg.seed, i));
      const double v = f.objective(f.sample(rng));
      if (v > bestc) bestc = v;
    }
    r.continuous = bestc;
    r.certified = false;
    if (method == Method::Continuous) r.value = bestc;
  }
  return r;
}

// ---------------------------------------------------------------- matching

double matching_ratio(const Graph& g, std::span<const double> y) {
  const auto& e = g.edges();
  require(y.size() == e.size(), "matching point needs one entry per edge");
  double s = 0.0;
  for (double v : y) s += std::fabs(v);
  double d = 0.0;
  for (std::size_t a = 0; a < e.size(); ++a)
    for (std::size_t b = a + 1; b < e.size(); ++b) {
      const bool disjoint = e[a].first != e[b].first && e[a].first != e[b].second &&
                            e[a].second != e[b].first && e[a].second != e[b].second;
      if (disjoint) d += y[a] * y[b];
    }
  const double den = s * s - 2.0 * d;
  return den > 0 ? s * s / den : kNaN;
}

InvariantResult matching_number(const Graph& g, Method method, const SolverConfig& cfg) {
  const int n = g.n();
  require(n <= 20, "exact matching number needs n <= 20");
  InvariantResult r;
  r.name = "matching_number";
  if (g.m() == 0) {
    r.value = 0;
    r.witness = "{}";
    r.note = "empty edge set";
    return r;
  }
  std::vector<signed char> memo(std::size_t{1} << n, -1);
  std::function<int(Mask)> mm = [&](Mask s) -> int {
    if (s == 0) return 0;
    if (memo[s] >= 0) return memo[s];
    const int v = __builtin_ctz(s);
    const Mask rest = s & ~(Mask{1} << v);
    int best = mm(rest);
    for (int u = 0; u < n; ++u)
      if (((rest >> u) & 1u) && g.adjacent(u, v))
        best = std::max(best, 1 + mm(rest & ~(Mask{1} << u)));
    memo[s] = static_cast<signed char>(best);
    return best;
  };
  const int nu = mm(full_mask(n));
  r.value = nu;
  // Recover one maximum matching.
  Vec y(g.m(), 0.0);
  std::ostringstream os;
  Mask s = full_mask(n);
  while (s) {
    const int v = __builtin_ctz(s);
    const Mask rest = s & ~(Mask{1} << v);
    if (mm(rest) == mm(s)) {
      s = rest;
      continue;
    }
    for (int u = 0; u < n; ++u)
      if (((rest >> u) & 1u) && g.adjacent(u, v) && 1 + mm(rest & ~(Mask{1} << u)) == mm(s)) {
        for (int e = 0; e < g.m(); ++e)
          if (g.edges()[e] == Edge{std::min(u, v), std::max(u, v)}) y[e] = 1.0;
        os << '(' << v << ',' << u << ')';
        s = rest & ~(Mask{1} << u);
        break;
      }
  }
  r.witness = os.str();
  r.indicator = y;
  ContinuousForm f;
  f.sense = Sense::Max;
  f.dim = g.m();
  const Graph gg = g;
  f.objective = [gg](std::span<const double> v) { return matching_ratio(gg, v); };
  const int m = g.m();
  f.sample = [m](Rng& rng) { return nonneg_sample(m, rng); };
  r.form = f;
  if (method != Method::Discrete) {
    const long samples = static_cast<long>(cfg.restarts) * cfg.inner_steps;
    double bestc = 0.0;
    for (long i = 0; i < samples; ++i) {
      Rng rng(stream_seed(cfg.seed, i));
      const double v = f.objective(f.sample(rng));
      if (v > bestc) bestc = v;
    }
    r.continuous = bestc;
    r.certified = false;
  }
  return r;
}

// ---------------------------------------------------------------- k-independence

InvariantResult k_independence_number(const Graph& g, int k) {
  require(g.n() <= 16, "k-independence number needs n <= 16");
  const Graph p = g.distance_power(k);
  InvariantResult r = independence_number(p);
  r.name = "k_independence_number";
  const auto d = g.distances();
  const Vec& x = r.indicator;
  // Quadratic form over pairs at distance > k (including unreachable ones).
  double s = 0.0, far = 0.0;
  for (double v : x) s += std::fabs(v);
  for (int i = 0; i < g.n(); ++i)
    for (int j = i + 1; j < g.n(); ++j)
      if (d[i][j] < 0 || d[i][j] > k) far += x[i] * x[j];
  const double q = s * s / (s * s - 2.0 * far);
  r.note = "quadratic form at the witness = " + std::to_string(q);
  return r;
}

// ---------------------------------------------------------------- Cheeger

CheegerVariant parse_cheeger_variant(const std::string& s) {
  static const std::map<std::string, CheegerVariant> m{
      {"classic", CheegerVariant::Classic},   {"expansion", CheegerVariant::Expansion},
      {"multiplicative", CheegerVariant::Multiplicative}, {"profile", CheegerVariant::Profile},
      {"int", CheegerVariant::Internal},      {"ext", CheegerVariant::External},
      {"ver", CheegerVariant::Vertex},        {"dirichlet", CheegerVariant::Dirichlet},
      {"neumann", CheegerVariant::Neumann}};
  auto it = m.find(s);
  if (it == m.end()) throw InvalidArgument("unknown Cheeger variant: " + s);
  return it->second;
}

std::string cheeger_variant_name(CheegerVariant v) {
  switch (v) {
    case CheegerVariant::Classic: return "classic";
    case CheegerVariant::Expansion: return "expansion";
    case CheegerVariant::Multiplicative: return "multiplicative";
    case CheegerVariant::Profile: return "profile";
    case CheegerVariant::Internal: return "int";
    case CheegerVariant::External: return "ext";
    case CheegerVariant::Vertex: return "ver";
    case CheegerVariant::Dirichlet: return "dirichlet";
    case CheegerVariant::Neumann: return "neumann";
  }
  return "?";
}

namespace {

std::vector<int> members(Mask a, int n) {
  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if ((a >> v) & 1u) out.push_back(v);
  return out;
}

// Position of each vertex inside the local coordinate list, -1 if absent.
std::vector<int> positions(const std::vector<int>& verts, int n) {
  std::vector<int> pos(n, -1);
  for (std::size_t i = 0; i < verts.size(); ++i) pos[verts[i]] = static_cast<int>(i);
  return pos;
}

// |boundary of S relative to A| for S inside the closure of A; edges inside dA ignored.
int relative_boundary(const Graph& g, Mask s) {
  const Mask a = g.interior(), cl = g.closure();
  int c = 0;
  for (auto [u, v] : g.edges()) {
    if (!(((cl >> u) & (cl >> v)) & 1u)) continue;
    if (!(((a >> u) | (a >> v)) & 1u)) continue;
    if (((s >> u) ^ (s >> v)) & 1u) ++c;
  }
  return c;
}

struct RatioParts {
  double num = 0.0;
  double den = 0.0;
  bool ok = false;
};

RatioParts cheeger_parts(const Graph& g, CheegerVariant v, int profile_k, Mask s) {
  const int n = g.n();
  const Mask all = full_mask(n);
  const Mask rest = all & ~s;
  const int a = popcount(s);
  RatioParts p;
  switch (v) {
    case CheegerVariant::Classic:
      if (s == 0 || s == all) return p;
      p.num = g.cut(s);
      p.den = std::min(g.volume(s), g.volume(rest));
      break;
    case CheegerVariant::Expansion:
      if (s == 0 || s == all) return p;
      p.num = g.cut(s);
      p.den = std::min(a, n - a);
      break;
    case CheegerVariant::Multiplicative:
      if (s == 0 || s == all) return p;
      p.num = g.cut(s);
      p.den = double(a) * (n - a);
      break;
    case CheegerVariant::Profile:
      if (a < 1 || a > profile_k) return p;
      p.num = g.cut(s);
      p.den = a;
      break;
    case CheegerVariant::Internal:
    case CheegerVariant::External:
    case CheegerVariant::Vertex: {
      if (s == 0 || s == all) return p;
      Mask b = v == CheegerVariant::Internal ? int_boundary(g, s)
               : v == CheegerVariant::External ? ext_boundary(g, s)
                                               : int_boundary(g, s) | ext_boundary(g, s);
      p.num = popcount(b);
      p.den = std::min(a, n - a);
      break;
    }
    case CheegerVariant::Dirichlet:
      if (s == 0 || (s & ~g.interior())) return p;
      p.num = relative_boundary(g, s);
      p.den = g.volume(s);
      break;
    case CheegerVariant::Neumann: {
      if (s & ~g.closure()) return p;
      const Mask in = g.interior();
      p.num = relative_boundary(g, s);
      p.den = std::min(g.volume(in & s), g.volume(in & ~s));
      break;
    }
  }
  p.ok = p.den > 0;
  return p;
}

// Local coordinates for the boundary variants, all vertices otherwise.
std::vector<int> domain_of(const Graph& g, CheegerVariant v) {
  if (v == CheegerVariant::Dirichlet) return members(g.interior(), g.n());
  if (v == CheegerVariant::Neumann) return members(g.closure(), g.n());
  return members(full_mask(g.n()), g.n());
}

}  // namespace

FractionalProblem cheeger_problem(const Graph& g, CheegerVariant v) {
  const int n = g.n();
  FractionalProblem p;
  p.region.kind = Region::LinfSphere;
  p.rounding = threshold_candidates;
  auto set_fn = [&](auto fn) { return SetFunction::set(n, fn); };
  switch (v) {
    case CheegerVariant::Classic:
      p = FractionalProblem::ratio(total_variation(g), Functional::lovasz(min_volume_fn(g)));
      break;
    case CheegerVariant::Expansion:
      p = FractionalProblem::ratio(total_variation(g), Functional::lovasz(min_size_fn(n)));
      break;
    case CheegerVariant::Multiplicative: {
      std::vector<Functional::Term> t;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) t.push_back({{{i, 1.0}, {j, -1.0}}, 1.0});
      p = FractionalProblem::ratio(total_variation(g), Functional::abs_sum(n, t, "pairs"));
      break;
    }
    case CheegerVariant::Internal:
      p = FractionalProblem::ratio(
          Functional::lovasz(set_fn([g](Mask a) { return double(popcount(int_boundary(g, a))); })),
          Functional::lovasz(min_size_fn(n)));
      break;
    case CheegerVariant::External:
      p = FractionalProblem::ratio(
          Functional::lovasz(set_fn([g](Mask a) { return double(popcount(ext_boundary(g, a))); })),
          Functional::lovasz(min_size_fn(n)));
      break;
    case CheegerVariant::Vertex:
      p = FractionalProblem::ratio(Functional::lovasz(set_fn([g](Mask a) {
                                     return double(popcount(int_boundary(g, a) | ext_boundary(g, a)));
                                   })),
                                   Functional::lovasz(min_size_fn(n)));
      break;
    case CheegerVariant::Dirichlet: {
      require(g.has_boundary(), "dirichlet variant needs a boundary partition");
      const auto dom = domain_of(g, v);
      const auto pos = positions(dom, n);
      const int d = static_cast<int>(dom.size());
      std::vector<Functional::Term> num, den;
      for (auto [i, j] : g.edges())
        if (pos[i] >= 0 && pos[j] >= 0) num.push_back({{{pos[i], 1.0}, {pos[j], -1.0}}, 1.0});
      for (int i : dom) {
        const int pb = popcount(g.neighbors(i) & g.boundary());
        if (pb > 0) num.push_back({{{pos[i], 1.0}}, double(pb)});
        den.push_back({{{pos[i], 1.0}}, double(g.degree(i))});
      }
      p = FractionalProblem::ratio(Functional::abs_sum(d, num, "dirichlet_tv"),
                                   Functional::abs_sum(d, den, "dirichlet_vol"));
      p.rounding = signed_threshold_candidates;
      break;
    }
    case CheegerVariant::Neumann: {
      require(g.has_boundary(), "neumann variant needs a boundary partition");
      const auto dom = domain_of(g, v);
      const auto pos = positions(dom, n);
      const int d = static_cast<int>(dom.size());
      const Mask in = g.interior();
      std::vector<Functional::Term> num;
      for (auto [i, j] : g.edges())
        if (pos[i] >= 0 && pos[j] >= 0 && (((in >> i) | (in >> j)) & 1u))
          num.push_back({{{pos[i], 1.0}, {pos[j], -1.0}}, 1.0});
      // Denominator: min(vol(A & S), vol(A \ S)) on local coordinates.
      std::vector<double> w(d, 0.0);
      for (int i = 0; i < d; ++i)
        if ((in >> dom[i]) & 1u) w[i] = g.degree(dom[i]);
      const SetFunction den = SetFunction::set(d, [w, d](Mask s) {
        double a = 0.0, b = 0.0;
        for (int i = 0; i < d; ++i) ((s >> i) & 1u ? a : b) += w[i];
        return std::min(a, b);
      });
      p = FractionalProblem::ratio(Functional::abs_sum(d, num, "neumann_tv"),
                                   Functional::lovasz(den, "neumann_vol"));
      break;
    }
    case CheegerVariant::Profile:
      throw InvalidArgument("the isoperimetric profile has no solver form");
  }
  p.region.kind = Region::LinfSphere;
  if (!p.rounding) p.rounding = threshold_candidates;
  return p;
}

InvariantResult cheeger(const Graph& g, CheegerVariant v, int profile_k, Method method,
                        const SolverConfig& cfg) {
  const int n = g.n();
  require(n <= 20, "Cheeger enumeration needs n <= 20");
  if (v == CheegerVariant::Profile) require(profile_k >= 1, "profile needs k >= 1");
  if (v == CheegerVariant::Dirichlet || v == CheegerVariant::Neumann)
    require(g.has_boundary(), "boundary variants need a boundary partition");
  InvariantResult r;
  r.name = "cheeger_" + cheeger_variant_name(v);
  const auto dom = domain_of(g, v);
  const auto pos = positions(dom, n);
  const int d = static_cast<int>(dom.size());

  double best = std::numeric_limits<double>::infinity();
  Mask arg = 0;
  const Mask all = full_mask(n);
  for (Mask s = 0;; ++s) {
    const RatioParts p = cheeger_parts(g, v, profile_k, s);
    if (p.ok && p.num / p.den < best) {
      best = p.num / p.den;
      arg = s;
    }
    if (s == all) break;
  }
  if (!std::isfinite(best)) {
    r.value = kNaN;
    r.note = "no admissible set with positive denominator";
    return r;
  }
  r.value = best;
  r.witness = mask_string(arg, n);
  r.indicator.assign(d, 0.0);
  for (int i = 0; i < d; ++i)
    if ((arg >> dom[i]) & 1u) r.indicator[i] = 1.0;
  if (v == CheegerVariant::Dirichlet && !g.connected_within(g.interior()))
    r.note = "interior is disconnected";

  ContinuousForm f;
  f.sense = Sense::Min;
  f.dim = d;
  if (v == CheegerVariant::Profile) {
    const Graph gg = g;
    f.objective = [gg, profile_k](std::span<const double> x) {
      int support = 0;
      double l1 = 0.0;
      for (double e : x) {
        support += e != 0.0;
        l1 += std::fabs(e);
      }
      if (support < 1 || support > profile_k) return kNaN;
      return sum_abs_diff_edges(gg, x) / l1;
    };
    f.sample = [n, profile_k](Rng& rng) {
      Vec x = signed_sample(n, rng);
      const auto perm = rng.permutation(n);
      const int keep = rng.integer(1, std::min(profile_k, n));
      for (int i = keep; i < n; ++i) x[perm[i]] = 0.0;
      if (linf(x) == 0.0) x[perm[0]] = 1.0;
      return x;
    };
  } else {
    const FractionalProblem prob = cheeger_problem(g, v);
    f.objective = [prob](std::span<const double> x) {
      const double den = prob.G(x);
      return den > 1e-12 ? prob.F(x) / den : kNaN;
    };
    f.sample = [d](Rng& rng) { return signed_sample(d, rng); };
  }
  r.form = f;
  if (method != Method::Discrete && v != CheegerVariant::Profile) {
    const SolveResult s =
        mixed_ipsd_multistart(cheeger_problem(g, v), cfg, IpsdVariant::Normalized);
    r.continuous = s.r;
    r.certified = std::fabs(s.r - best) <= 1e-6;
    if (method == Method::Continuous) {
      r.value = s.r;
      r.indicator = s.x;
    }
  }
  return r;
}

// ---------------------------------------------------------------- Cheeger-like

double cheeger_like_ratio(const Graph& g, std::span<const double> x) {
  require(static_cast<int>(x.size()) == g.m(), "edge vector has the wrong length");
  Vec load(g.n(), 0.0);
  double den = 0.0;
  for (int e = 0; e < g.m(); ++e) {
    load[g.edges()[e].first] += x[e];
    load[g.edges()[e].second] += x[e];
    den += std::fabs(x[e]);
  }
  if (den == 0) return kNaN;
  double num = 0.0;
  for (int v = 0; v < g.n(); ++v)
    if (g.degree(v) > 0) num += std::fabs(load[v]) / g.degree(v);
  return num / den;
}

double companion_ratio(const Graph& g, std::span<const double> x) {
  require(static_cast<int>(x.size()) == g.m(), "edge vector has the wrong length");
  double num = 0.0, den = 0.0;
  for (int e = 0; e < g.m(); ++e) {
    auto [i, j] = g.edges()[e];
    const int tri = popcount(g.neighbors(i) & g.neighbors(j));
    // Each edge is reached from both endpoints; count it once.
    num += std::fabs(x[e]) * tri;
    den += std::fabs(x[e]) * std::max(g.degree(i), g.degree(j));
  }
  return den > 0 ? num / den : kNaN;
}

CheegerLike cheeger_like(const Graph& g, int samples, std::uint64_t seed) {
  require(g.m() >= 1, "cheeger_like needs at least one edge");
  CheegerLike out;
  out.max_form = -1.0;
  out.companion = std::numeric_limits<double>::infinity();
  int emax = 0, emin = 0;
  for (int e = 0; e < g.m(); ++e) {
    auto [i, j] = g.edges()[e];
    const double c = 1.0 / g.degree(i) + 1.0 / g.degree(j);
    if (c > out.max_form) {
      out.max_form = c;
      emax = e;
    }
    const double q = double(popcount(g.neighbors(i) & g.neighbors(j))) /
                     std::max(g.degree(i), g.degree(j));
    if (q < out.companion) {
      out.companion = q;
      emin = e;
    }
  }
  out.argmax = g.edges()[emax];
  out.argmin = g.edges()[emin];

  out.bipartite_form = kNaN;
  if (g.m() <= 16) {
    double best = -1.0;
    for (std::uint32_t sub = 1; sub < (1u << g.m()); ++sub) {
      // 2-colour the subgraph spanned by `sub`, one BFS per component.
      std::vector<int> side(g.n(), -1);
      bool bip = true;
      {
        for (int s = 0; s < g.n() && bip; ++s) {
          if (side[s] >= 0) continue;
          side[s] = 0;
          std::vector<int> stack{s};
          while (!stack.empty() && bip) {
            const int u = stack.back();
            stack.pop_back();
            for (int e = 0; e < g.m(); ++e) {
              if (!((sub >> e) & 1u)) continue;
              auto [a, b] = g.edges()[e];
              if (a != u && b != u) continue;
              const int w = a == u ? b : a;
              if (side[w] < 0) {
                side[w] = 1 - side[u];
                stack.push_back(w);
              } else if (side[w] == side[u]) {
                bip = false;
              }
            }
          }
        }
      }
      if (!bip) continue;
      double num = 0.0;
      for (int e = 0; e < g.m(); ++e)
        if ((sub >> e) & 1u) {
          num += 1.0 / g.degree(g.edges()[e].first) + 1.0 / g.degree(g.edges()[e].second);
        }
      best = std::max(best, num / popcount(sub));
    }
    out.bipartite_form = best;
  }

  Vec ind(g.m(), 0.0);
  ind[emax] = 1.0;
  out.continuous_at_argmax = cheeger_like_ratio(g, ind);
  Vec ind2(g.m(), 0.0);
  ind2[emin] = 1.0;
  out.companion_at_argmin = companion_ratio(g, ind2);
  out.continuous_best_sampled = -std::numeric_limits<double>::infinity();
  out.companion_best_sampled = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    Rng rng(stream_seed(seed, s));
    const Vec x = signed_sample(g.m(), rng);
    out.continuous_best_sampled = std::max(out.continuous_best_sampled, cheeger_like_ratio(g, x));
    out.companion_best_sampled = std::min(out.companion_best_sampled, companion_ratio(g, x));
  }
  return out;
}

// ---------------------------------------------------------------- Poincare profile

double poincare_quotient(const Graph& g, std::span<const double> x) {
  double num = 0.0, l1 = 0.0;
  for (int i = 0; i < g.n(); ++i) {
    double m = 0.0;
    for (int j = 0; j < g.n(); ++j)
      if (g.adjacent(i, j)) m = std::max(m, std::fabs(x[i] - x[j]));
    num += m;
    l1 += std::fabs(x[i]);
  }
  return l1 > 0 ? num / l1 : kNaN;
}

PoincareReport poincare_profile_check(const Graph& g, const SolverConfig& cfg, double tol) {
  const int n = g.n();
  require(n >= 2 && n <= 12, "poincare check needs 2 <= n <= 12");
  PoincareReport rep;
  const InvariantResult hv = cheeger(g, CheegerVariant::Vertex);
  rep.h_int = cheeger(g, CheegerVariant::Internal).value;
  rep.h_ext = cheeger(g, CheegerVariant::External).value;
  rep.h_ver = hv.value;
  rep.lower = std::max(rep.h_int, rep.h_ext) / 2.0;

  auto centred = [n](Vec x) {
    double mean = 0.0;
    for (double v : x) mean += v / n;
    for (double& v : x) v -= mean;
    return x;
  };
  rep.p1_at_hver = poincare_quotient(g, centred(hv.indicator));
  rep.p1_best = rep.p1_at_hver;
  const Mask all = full_mask(n);
  for (Mask s = 1; s < all; ++s)
    rep.p1_best = std::min(rep.p1_best, poincare_quotient(g, centred(indicator_of(s, n))));

  // Continuous search on y -> y - mean(y), which removes the constraint.
  Functional num;
  num.name = "poincare_tv";
  num.dim = n;
  num.value = [g](std::span<const double> y) {
    double s = 0.0;
    for (int i = 0; i < g.n(); ++i) {
      double m = 0.0;
      for (int j = 0; j < g.n(); ++j)
        if (g.adjacent(i, j)) m = std::max(m, std::fabs(y[i] - y[j]));
      s += m;
    }
    return s;
  };
  num.subgradient = [g](std::span<const double> y) {
    Vec d(g.n(), 0.0);
    for (int i = 0; i < g.n(); ++i) {
      int best = -1;
      double m = -1.0;
      for (int j = 0; j < g.n(); ++j)
        if (g.adjacent(i, j) && std::fabs(y[i] - y[j]) > m) {
          m = std::fabs(y[i] - y[j]);
          best = j;
        }
      if (best < 0 || m == 0.0) continue;
      const double s = y[i] > y[best] ? 1.0 : -1.0;
      d[i] += s;
      d[best] -= s;
    }
    return d;
  };
  std::vector<Functional::Term> cen;
  for (int i = 0; i < n; ++i) {
    Functional::Term t;
    for (int j = 0; j < n; ++j) t.a.push_back({j, (i == j ? 1.0 : 0.0) - 1.0 / n});
    cen.push_back(t);
  }
  FractionalProblem prob = FractionalProblem::ratio(num, Functional::abs_sum(n, cen, "centred_l1"));
  SolverConfig sc = cfg;
  sc.max_iter = std::min(cfg.max_iter * 20, 4000);
  for (int r = 0; r < std::min(cfg.restarts, 5); ++r) {
    sc.seed = stream_seed(cfg.seed, r);
    const SolveResult s = stochastic_subgradient_ratio(prob, sc, 0.0);
    if (s.trace.status != "terminated-at-zero-denominator")
      rep.p1_best = std::min(rep.p1_best, poincare_quotient(g, centred(s.x)));
  }
  rep.holds = rep.p1_best >= rep.lower - tol && rep.p1_best <= rep.h_ver + tol;
  return rep;
}

// ---------------------------------------------------------------- relaxations

RelaxationResult submodular_vertex_cover(const Graph& g, const SetFunction& f,
                                         const SolverConfig& cfg) {
  const int n = g.n();
  require(f.mode() == Mode::Set && f.n() == n, "vertex cover needs a set function on V");
  require(n <= 16, "vertex cover needs n <= 16");
  RelaxationResult out;
  out.submodular = is_submodular(f, Family::all()).holds;
  double best = std::numeric_limits<double>::infinity();
  Mask arg = 0;
  const Mask all = full_mask(n);
  for (Mask s = 0;; ++s) {
    bool cover = true;
    for (auto [u, v] : g.edges())
      if (!(((s >> u) | (s >> v)) & 1u)) cover = false;
    if (cover) {
      const Mask a[1] = {s};
      const double v = f.raw(a);
      if (v < best) {
        best = v;
        arg = s;
      }
    }
    if (s == all) break;
  }
  out.exact = best;
  out.witness = mask_string(arg, n);

  // Edge constraints repaired by raising both endpoints; one pass suffices
  // because raising a coordinate never breaks another edge.
  RegionSpec region;
  region.kind = Region::Custom;
  region.lo = 0.0;
  region.hi = 1.0;
  region.custom = [g](Vec& x) {
    for (double& v : x) v = std::clamp(v, 0.0, 1.0);
    for (auto [i, j] : g.edges())
      if (x[i] + x[j] < 1.0) {
        const double d = (1.0 - x[i] - x[j]) / 2.0;
        x[i] += d;
        x[j] += d;
      }
  };
  const Functional fl = Functional::lovasz(f);
  SolverConfig sc = cfg;
  sc.inner_restarts = std::max(cfg.inner_restarts, 4);
  sc.inner_steps = std::max(cfg.inner_steps, 1000);
  const ProjectedResult a = projected_subgradient(fl, region, sc, indicator_of(arg, n));
  const ProjectedResult b = projected_subgradient(fl, region, sc, Vec(n, 0.5));
  const ProjectedResult& w = a.value <= b.value ? a : b;
  out.relaxation = w.value;
  out.x = w.x;
  return out;
}

namespace {

// Euclidean projection onto the probability simplex.
void project_simplex(std::span<double> v) {
  Vec u(v.begin(), v.end());
  std::sort(u.begin(), u.end(), std::greater<double>());
  double css = 0.0, theta = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    css += u[i];
    const double t = (css - 1.0) / double(i + 1);
    if (u[i] - t > 0) theta = t;
  }
  for (double& e : v) e = std::max(e - theta, 0.0);
}

}  // namespace

RelaxationResult multiway_partition(const SetFunction& f, const std::vector<int>& terminals,
                                    const SolverConfig& cfg) {
  require(f.mode() == Mode::Set, "multiway partition needs a set function");
  const int n = f.n();
  const int k = static_cast<int>(terminals.size());
  require(n <= 12, "multiway partition needs n <= 12");
  require(k >= 1 && k <= 4 && k <= n, "multiway partition needs 1 <= k <= 4 terminals");
  Mask tmask = 0;
  for (int t : terminals) {
    require(t >= 0 && t < n, "terminal out of range");
    require(!((tmask >> t) & 1u), "duplicate terminals");
    tmask |= Mask{1} << t;
  }
  RelaxationResult out;
  out.submodular = is_submodular(f, Family::all()).holds;

  std::vector<int> free;
  for (int v = 0; v < n; ++v)
    if (!((tmask >> v) & 1u)) free.push_back(v);
  std::vector<int> label(n, 0), best_label;
  for (int i = 0; i < k; ++i) label[terminals[i]] = i;
  double best = std::numeric_limits<double>::infinity();
  long long total = 1;
  for (std::size_t i = 0; i < free.size(); ++i) total *= k;
  for (long long code = 0; code < total; ++code) {
    long long c = code;
    for (int v : free) {
      label[v] = static_cast<int>(c % k);
      c /= k;
    }
    std::vector<Mask> parts(k, 0);
    for (int v = 0; v < n; ++v) parts[label[v]] |= Mask{1} << v;
    double val = 0.0;
    for (Mask p : parts) {
      const Mask a[1] = {p};
      val += f.raw(a);
    }
    if (val < best) {
      best = val;
      best_label = label;
    }
  }
  out.exact = best;
  std::ostringstream os;
  for (int i = 0; i < k; ++i) {
    Mask p = 0;
    for (int v = 0; v < n; ++v)
      if (best_label[v] == i) p |= Mask{1} << v;
    os << mask_string(p, n);
  }
  out.witness = os.str();

  // Product of per-vertex simplices with terminals pinned to their class.
  const int d = k * n;
  RegionSpec region;
  region.kind = Region::Custom;
  region.lo = 0.0;
  region.hi = 1.0;
  region.custom = [n, k, terminals](Vec& x) {
    Vec col(k);
    for (int v = 0; v < n; ++v) {
      for (int i = 0; i < k; ++i) col[i] = x[i * n + v];
      project_simplex(col);
      for (int i = 0; i < k; ++i) x[i * n + v] = col[i];
    }
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) x[j * n + terminals[i]] = i == j ? 1.0 : 0.0;
  };
  const SetFunction fm = f.materialized();
  auto value = [fm, n, k](std::span<const double> x) {
    double s = 0.0;
    for (int i = 0; i < k; ++i) s += lovasz_eval(fm, x.subspan(i * n, n));
    return s;
  };
  auto subgrad = [fm, n, k](std::span<const double> x) {
    Vec g(k * n);
    for (int i = 0; i < k; ++i) {
      const Vec gi = lovasz_subgradient(fm, x.subspan(i * n, n)).g;
      std::copy(gi.begin(), gi.end(), g.begin() + i * n);
    }
    return g;
  };
  Vec x0(d, 0.0);
  for (int v = 0; v < n; ++v) x0[best_label[v] * n + v] = 1.0;
  Vec x1(d, 1.0 / k);
  region.custom(x1);
  SolverConfig sc = cfg;
  sc.inner_restarts = std::max(cfg.inner_restarts, 4);
  sc.inner_steps = std::max(cfg.inner_steps, 1000);
  const ProjectedResult a = projected_subgradient(value, subgrad, d, region, sc, x0);
  const ProjectedResult b = projected_subgradient(value, subgrad, d, region, sc, x1);
  const ProjectedResult& w = a.value <= b.value ? a : b;
  out.relaxation = w.value;
  out.x = w.x;
  return out;
}

// ---------------------------------------------------------------- discrete vs continuous

namespace {

OptimumCheck check_impl(const InvariantResult& r, long samples, std::uint64_t seed, double tol,
                        bool parallel) {
  require(r.form.has_value(), r.name + " has no continuous form");
  const ContinuousForm& f = *r.form;
  OptimumCheck out;
  out.discrete = r.value;
  out.samples = samples;
  out.at_indicator = f.objective(r.indicator);
  out.indicator_exact = out.at_indicator == r.value;
  const double sgn = f.sense == Sense::Min ? 1.0 : -1.0;
  // Best per chunk, merged in chunk order so the result is thread-independent.
  const long chunks = std::max(1L, std::min(samples, 64L));
  std::vector<double> best(chunks, std::numeric_limits<double>::infinity());
  auto run = [&](long c) {
    for (long i = c * samples / chunks; i < (c + 1) * samples / chunks; ++i) {
      Rng rng(stream_seed(seed, i));
      const double v = f.objective(f.sample(rng));
      if (!std::isnan(v)) best[c] = std::min(best[c], sgn * v);
    }
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long c = 0; c < chunks; ++c) run(c);
  } else {
    for (long c = 0; c < chunks; ++c) run(c);
  }
  double b = std::numeric_limits<double>::infinity();
  for (double v : best) b = std::min(b, v);
  out.best_sampled = sgn * b;
  out.never_beaten = sgn * b >= sgn * r.value - tol;
  return out;
}

}  // namespace

OptimumCheck check_discrete_continuous(const InvariantResult& r, long samples, std::uint64_t seed,
                                       double tol) {
  return check_impl(r, samples, seed, tol, true);
}

namespace serial {
OptimumCheck check_discrete_continuous(const InvariantResult& r, long samples, std::uint64_t seed,
                                       double tol) {
  return check_impl(r, samples, seed, tol, false);
}
}  // namespace serial

}  // namespace lovx
