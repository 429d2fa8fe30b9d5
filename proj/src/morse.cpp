#include "lovx/morse.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "lovx/error.hpp"
#include "lovx/lovasz.hpp"

namespace lovx {

namespace {

bool face_less(Mask a, Mask b) {
  const int pa = popcount(a), pb = popcount(b);
  return pa != pb ? pa < pb : a < b;
}

bool proper_subset(Mask a, Mask b) { return a != b && (a & b) == a; }

int dim_of(Mask f) { return popcount(f) - 1; }

// All inclusion chains of a family of distinct sets, each chain listed
// bottom-up as family indices.
std::vector<std::vector<int>> chains_of(const std::vector<Mask>& fam) {
  const int m = static_cast<int>(fam.size());
  std::vector<std::vector<int>> up(m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if (proper_subset(fam[a], fam[b])) up[a].push_back(b);
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto dfs = [&](auto&& self, int v) -> void {
    cur.push_back(v);
    if (static_cast<long long>(out.size()) >= kMaxChains)
      throw ComputationError("order complex has more than 10^6 chains");
    out.push_back(cur);
    for (int w : up[v]) self(self, w);
    cur.pop_back();
  };
  for (int v = 0; v < m; ++v) dfs(dfs, v);
  return out;
}

OrderComplex build_order_complex(int n, const std::vector<Mask>& fam) {
  OrderComplex oc;
  oc.n = n;
  oc.vertices = fam;
  oc.chains = chains_of(fam);
  const int m = static_cast<int>(fam.size());
  // cover[a][b]: a is a maximal proper subset of b inside the family.
  std::vector<std::vector<char>> cover(m, std::vector<char>(m, 0));
  std::vector<char> has_below(m, 0), has_above(m, 0);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      if (!proper_subset(fam[a], fam[b])) continue;
      has_above[a] = has_below[b] = 1;
      bool direct = true;
      for (int c = 0; c < m && direct; ++c)
        if (proper_subset(fam[a], fam[c]) && proper_subset(fam[c], fam[b])) direct = false;
      cover[a][b] = direct;
    }
  for (const auto& ch : oc.chains) {
    bool maximal = !has_below[ch.front()] && !has_above[ch.back()];
    for (std::size_t i = 0; maximal && i + 1 < ch.size(); ++i) maximal = cover[ch[i]][ch[i + 1]];
    if (maximal) oc.maximal.push_back(ch);
  }
  return oc;
}

void require_values(int size, const FaceFunction& f) {
  require(static_cast<int>(f.values.size()) == size, "face function must give one value per face");
  for (double v : f.values) require(std::isfinite(v), "face function values must be finite");
}

}  // namespace

SimplicialComplex::SimplicialComplex(int n, std::vector<Mask> faces, bool close) : n_(n) {
  require(n >= 1 && n <= 30, "complex needs 1 <= n <= 30");
  const Mask all = full_mask(n);
  for (Mask f : faces) require(f != 0 && (f & ~all) == 0, "faces must be nonempty subsets of the vertex set");
  if (close) {
    std::set<Mask> closed;
    for (int v = 0; v < n; ++v) closed.insert(Mask{1} << v);
    for (Mask f : faces)
      for (Mask s = f; s; s = (s - 1) & f) closed.insert(s);
    faces.assign(closed.begin(), closed.end());
  }
  std::sort(faces.begin(), faces.end(), face_less);
  require(std::adjacent_find(faces.begin(), faces.end()) == faces.end(), "duplicate face");
  faces_ = std::move(faces);
  for (int v = 0; v < n; ++v) require(index_of(Mask{1} << v) >= 0, "every vertex must be a face");
  for (Mask f : faces_)
    for (int v = 0; v < n; ++v)
      if (((f >> v) & 1u) && popcount(f) > 1)
        require(index_of(f & ~(Mask{1} << v)) >= 0, "face family is not closed under taking faces");
}

SimplicialComplex SimplicialComplex::full_simplex(int n) { return SimplicialComplex(n, {full_mask(n)}, true); }

SimplicialComplex SimplicialComplex::circle() { return SimplicialComplex(3, {0b011, 0b101, 0b110}, true); }

int SimplicialComplex::index_of(Mask f) const {
  auto it = std::lower_bound(faces_.begin(), faces_.end(), f, face_less);
  return it != faces_.end() && *it == f ? static_cast<int>(it - faces_.begin()) : -1;
}

int SimplicialComplex::dimension() const { return faces_.empty() ? -1 : dim_of(faces_.back()); }

AbstractComplex SimplicialComplex::abstract() const {
  AbstractComplex a;
  for (Mask f : faces_) {
    Simplex s;
    for (int v = 0; v < n_; ++v)
      if ((f >> v) & 1u) s.push_back(v);
    a.simplices.push_back(std::move(s));
  }
  return a;
}

void Hypergraph::validate() const {
  require(n >= 1 && n <= 30, "hypergraph needs 1 <= n <= 30");
  std::set<Mask> seen;
  for (Mask e : edges) {
    require(e != 0 && (e & ~full_mask(n)) == 0, "hyperedges must be nonempty subsets of the vertex set");
    require(seen.insert(e).second, "duplicate hyperedge");
  }
}

bool FaceFunction::injective() const {
  std::vector<double> v = values;
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) == v.end();
}

MorseValidation validate_discrete_morse(const SimplicialComplex& k, const FaceFunction& f) {
  require_values(k.size(), f);
  MorseValidation out;
  for (int i = 0; i < k.size(); ++i) {
    const Mask s = k.face(i);
    int up = 0, low = 0;
    for (int v = 0; v < k.n(); ++v) {
      const Mask bit = Mask{1} << v;
      if (s & bit) {
        if (s == bit) continue;
        if (f.values[k.index_of(s & ~bit)] >= f.values[i]) ++low;
      } else {
        const int t = k.index_of(s | bit);
        if (t >= 0 && f.values[t] <= f.values[i]) ++up;
      }
    }
    if (up > 1) out.violations.push_back({i, 'U', up});
    if (low > 1) out.violations.push_back({i, 'L', low});
  }
  out.valid = out.violations.empty();
  return out;
}

namespace {

bool forman_critical_at(const SimplicialComplex& k, const FaceFunction& f, int i) {
  const Mask s = k.face(i);
  for (int v = 0; v < k.n(); ++v) {
    const Mask bit = Mask{1} << v;
    if (s & bit) {
      if (s != bit && f.values[k.index_of(s & ~bit)] >= f.values[i]) return false;
    } else {
      const int t = k.index_of(s | bit);
      if (t >= 0 && f.values[t] <= f.values[i]) return false;
    }
  }
  return true;
}

}  // namespace

FormanCritical forman_critical(const SimplicialComplex& k, const FaceFunction& f) {
  require(validate_discrete_morse(k, f).valid, "not a discrete Morse function");
  FormanCritical out;
  out.morse_vector.assign(k.dimension() + 1, 0);
  for (int i = 0; i < k.size(); ++i) {
    if (!forman_critical_at(k, f, i)) continue;
    out.critical.push_back(i);
    out.index.push_back(dim_of(k.face(i)));
    ++out.morse_vector[dim_of(k.face(i))];
  }
  return out;
}

std::vector<double> OrderComplex::coordinates(int v) const {
  std::vector<double> x(n, 0.0);
  for (int i = 0; i < n; ++i) x[i] = (vertices[v] >> i) & 1u;
  return x;
}

AbstractComplex OrderComplex::abstract() const {
  AbstractComplex a;
  a.simplices.reserve(chains.size());
  for (auto s : chains) {
    std::sort(s.begin(), s.end());
    a.simplices.push_back(std::move(s));
  }
  return a;
}

std::vector<long long> OrderComplex::f_vector() const {
  std::vector<long long> fv;
  for (const auto& c : chains) {
    if (c.size() > fv.size()) fv.resize(c.size(), 0);
    ++fv[c.size() - 1];
  }
  return fv;
}

OrderComplex order_complex(const SimplicialComplex& k) { return build_order_complex(k.n(), k.faces()); }

OrderComplex order_complex(const Hypergraph& h) {
  h.validate();
  return build_order_complex(h.n, h.edges);
}

OrderComplexValue lovasz_on_order_complex(const SimplicialComplex& k, const FaceFunction& f,
                                          const std::vector<double>& x) {
  require_values(k.size(), f);
  require(static_cast<int>(x.size()) == k.n(), "point must have one coordinate per vertex");
  double top = 0.0;
  for (double v : x) {
    require(v >= 0.0, "point is not in the realization: negative coordinate");
    top = std::max(top, v);
  }
  require(top <= 1.0 + 1e-12, "point is not in the realization: coefficients sum above 1");
  std::vector<double> levels;
  for (double v : x)
    if (v > 0.0) levels.push_back(v);
  std::sort(levels.begin(), levels.end(), std::greater<>());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  OrderComplexValue out;
  for (std::size_t j = 0; j < levels.size(); ++j) {
    Mask s = 0;
    for (int i = 0; i < k.n(); ++i)
      if (x[i] >= levels[j]) s |= Mask{1} << i;
    const int idx = k.index_of(s);
    require(idx >= 0, "point is not in the realization: level set is not a face");
    const double lam = levels[j] - (j + 1 < levels.size() ? levels[j + 1] : 0.0);
    out.chain.push_back(idx);
    out.lambda.push_back(lam);
    out.value += lam * f.values[idx];
  }
  std::reverse(out.chain.begin(), out.chain.end());
  std::reverse(out.lambda.begin(), out.lambda.end());

  const SetFunction ext = SetFunction::set(k.n(), [&k, &f](Mask m) {
    const int idx = k.index_of(m);
    return idx < 0 ? 0.0 : f.values[idx];
  });
  out.lovasz = lovasz_eval(ext, x);
  double scale = 1.0;
  for (double v : f.values) scale = std::max(scale, std::fabs(v));
  if (std::fabs(out.value - out.lovasz) > 1e-12 * scale)
    throw ComputationError("order-complex value disagrees with the Lovasz extension");
  return out;
}

OrderComplexValue lovasz_on_order_complex(const SimplicialComplex& k, const FaceFunction& f,
                                          const std::vector<int>& chain, const std::vector<double>& lambda) {
  require(chain.size() == lambda.size(), "chain and coefficients differ in length");
  std::vector<double> x(k.n(), 0.0);
  double total = 0.0;
  for (std::size_t j = 0; j < chain.size(); ++j) {
    require(chain[j] >= 0 && chain[j] < k.size(), "chain entry is not a face");
    require(lambda[j] >= 0.0, "coefficients must be >= 0");
    if (j > 0) require(proper_subset(k.face(chain[j - 1]), k.face(chain[j])), "faces do not form a chain");
    total += lambda[j];
  }
  require(total <= 1.0 + 1e-12, "coefficients must sum to at most 1");
  // Coordinates in the same level block accumulate identical terms in the same order.
  for (std::size_t j = 0; j < chain.size(); ++j)
    for (int i = 0; i < k.n(); ++i)
      if ((k.face(chain[j]) >> i) & 1u) x[i] += lambda[j];
  return lovasz_on_order_complex(k, f, x);
}

PlCritical pl_critical(const SimplicialComplex& k, const FaceFunction& f, int face) {
  require_values(k.size(), f);
  require(f.injective(), "PL criticality needs an injective function");
  require(face >= 0 && face < k.size(), "face index out of range");
  require(validate_discrete_morse(k, f).valid, "not a discrete Morse function");
  const Mask s = k.face(face);
  std::vector<Mask> lower;
  for (int i = 0; i < k.size(); ++i) {
    const Mask t = k.face(i);
    if ((proper_subset(t, s) || proper_subset(s, t)) && f.values[i] <= f.values[face]) lower.push_back(t);
  }
  const OrderComplex link = build_order_complex(k.n(), lower);
  PlCritical out;
  out.reduced_betti = reduced_betti_gf2(link.abstract());
  for (std::size_t j = 0; j < out.reduced_betti.size(); ++j)
    if (out.reduced_betti[j] > 0) out.indices.push_back({static_cast<int>(j), out.reduced_betti[j]});
  out.critical = !out.indices.empty();
  out.forman_critical = forman_critical_at(k, f, face);
  const std::vector<std::pair<int, int>> expected{{dim_of(s), 1}};
  out.agrees = out.critical == out.forman_critical && (!out.critical || out.indices == expected);
  return out;
}

MorseEulerReport morse_euler_check(const SimplicialComplex& k, const FaceFunction& f) {
  MorseEulerReport r;
  r.morse_vector = forman_critical(k, f).morse_vector;
  for (std::size_t i = 0; i < r.morse_vector.size(); ++i) r.alternating_sum += (i % 2 ? -1 : 1) * r.morse_vector[i];
  for (Mask face : k.faces()) r.chi_complex += dim_of(face) % 2 ? -1 : 1;
  const auto fv = order_complex(k).f_vector();
  for (std::size_t i = 0; i < fv.size(); ++i) r.chi_order += (i % 2 ? -1 : 1) * fv[i];
  r.pl_vector.assign(r.morse_vector.size(), 0);
  for (int i = 0; i < k.size(); ++i)
    for (auto [idx, mult] : pl_critical(k, f, i).indices) {
      if (idx >= static_cast<int>(r.pl_vector.size())) r.pl_vector.resize(idx + 1, 0);
      r.pl_vector[idx] += mult;
    }
  r.holds = r.alternating_sum == r.chi_complex && r.chi_complex == r.chi_order && r.pl_vector == r.morse_vector;
  return r;
}

HypergraphMorse hypergraph_morse(const Hypergraph& h, const FaceFunction& f) {
  h.validate();
  const int m = static_cast<int>(h.edges.size());
  require_values(m, f);
  auto sequential = [&](int a, int b) {
    if (!proper_subset(h.edges[a], h.edges[b])) return false;
    for (int c = 0; c < m; ++c)
      if (proper_subset(h.edges[a], h.edges[c]) && proper_subset(h.edges[c], h.edges[b])) return false;
    return true;
  };
  HypergraphMorse out;
  out.height.assign(m, 0);
  std::vector<int> order(m);
  for (int i = 0; i < m; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return popcount(h.edges[a]) < popcount(h.edges[b]); });
  for (int b : order)
    for (int a : order)
      if (proper_subset(h.edges[a], h.edges[b])) out.height[b] = std::max(out.height[b], out.height[a] + 1);
  for (int e = 0; e < m; ++e) {
    int low = 0, up = 0;
    for (int o = 0; o < m; ++o) {
      if (sequential(o, e) && f.values[o] >= f.values[e]) ++low;
      if (sequential(e, o) && f.values[e] >= f.values[o]) ++up;
    }
    if (up > 1) out.validation.violations.push_back({e, 'U', up});
    if (low > 1) out.validation.violations.push_back({e, 'L', low});
    if (up == 0 && low == 0) out.critical.push_back(e);
  }
  out.validation.valid = out.validation.violations.empty();
  return out;
}

SimplicialComplex random_complex(int n, Rng& rng, int facets) {
  require(n >= 1 && n <= 12, "random complexes need 1 <= n <= 12");
  std::vector<Mask> gens;
  for (int i = 0; i < facets; ++i) {
    Mask f = 0;
    while (f == 0)
      for (int v = 0; v < n; ++v)
        if (rng.coin(0.5)) f |= Mask{1} << v;
    gens.push_back(f);
  }
  return SimplicialComplex(n, gens, true);
}

FaceFunction random_morse_function(const SimplicialComplex& k, Rng& rng, int attempts) {
  FaceFunction f;
  f.values.resize(k.size());
  for (int i = 0; i < k.size(); ++i) f.values[i] = dim_of(k.face(i)) + 0.5 * rng.uniform(0.01, 0.99);
  std::vector<char> paired(k.size(), 0);
  for (int a = 0; a < attempts; ++a) {
    const int i = rng.integer(0, k.size() - 1);
    std::vector<int> cofaces;
    for (int v = 0; v < k.n(); ++v) {
      const Mask bit = Mask{1} << v;
      const int t = (k.face(i) & bit) ? -1 : k.index_of(k.face(i) | bit);
      if (t >= 0) cofaces.push_back(t);
    }
    if (paired[i] || cofaces.empty()) continue;
    const int t = cofaces[rng.integer(0, static_cast<int>(cofaces.size()) - 1)];
    if (paired[t]) continue;
    const double old = f.values[i];
    f.values[i] = f.values[t] + 0.01 * rng.uniform(0.01, 1.0);
    if (validate_discrete_morse(k, f).valid && f.injective()) {
      paired[i] = paired[t] = 1;
    } else {
      f.values[i] = old;
    }
  }
  return f;
}

}  // namespace lovx
