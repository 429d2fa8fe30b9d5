#include "lovx/homology.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "lovx/error.hpp"

namespace lovx {

namespace {

bool by_size_then_lex(const Simplex& a, const Simplex& b) {
  return a.size() != b.size() ? a.size() < b.size() : a < b;
}

// Simplices grouped by dimension with their position inside the group.
struct Graded {
  std::vector<std::vector<Simplex>> cells;
  std::vector<std::map<Simplex, int>> index;
};

Graded grade(const AbstractComplex& k, const AbstractComplex* skip) {
  std::set<Simplex> drop;
  if (skip) drop.insert(skip->simplices.begin(), skip->simplices.end());
  Graded g;
  const int d = k.dimension();
  g.cells.resize(d + 1);
  g.index.resize(d + 1);
  for (const Simplex& s : k.simplices) {
    if (drop.count(s)) continue;
    const int p = static_cast<int>(s.size()) - 1;
    g.index[p][s] = static_cast<int>(g.cells[p].size());
    g.cells[p].push_back(s);
  }
  return g;
}

// Rank of the boundary map C_p -> C_{p-1}; faces outside the graded set vanish.
int boundary_rank(const Graded& g, int p) {
  if (p <= 0 || p >= static_cast<int>(g.cells.size())) return 0;
  const auto& rowsrc = g.cells[p];
  const int cols = static_cast<int>(g.cells[p - 1].size());
  if (rowsrc.empty() || cols == 0) return 0;
  const int words = (cols + 63) / 64;
  std::vector<std::vector<std::uint64_t>> rows;
  rows.reserve(rowsrc.size());
  for (const Simplex& s : rowsrc) {
    std::vector<std::uint64_t> row(words, 0);
    for (std::size_t drop = 0; drop < s.size(); ++drop) {
      Simplex f;
      for (std::size_t i = 0; i < s.size(); ++i)
        if (i != drop) f.push_back(s[i]);
      auto it = g.index[p - 1].find(f);
      if (it != g.index[p - 1].end()) row[it->second / 64] ^= std::uint64_t{1} << (it->second % 64);
    }
    rows.push_back(std::move(row));
  }
  return gf2_rank(std::move(rows), cols);
}

std::vector<int> betti_of(const Graded& g) {
  const int d = static_cast<int>(g.cells.size()) - 1;
  std::vector<int> rank(d + 2, 0);
  for (int p = 1; p <= d; ++p) rank[p] = boundary_rank(g, p);
  std::vector<int> b(d + 1);
  for (int p = 0; p <= d; ++p) b[p] = static_cast<int>(g.cells[p].size()) - rank[p] - rank[p + 1];
  return b;
}

}  // namespace

int AbstractComplex::dimension() const {
  int d = -1;
  for (const Simplex& s : simplices) d = std::max(d, static_cast<int>(s.size()) - 1);
  return d;
}

bool AbstractComplex::contains(const Simplex& s) const {
  return std::find(simplices.begin(), simplices.end(), s) != simplices.end();
}

bool AbstractComplex::closed() const {
  std::set<Simplex> all(simplices.begin(), simplices.end());
  if (all.size() != simplices.size()) return false;
  for (const Simplex& s : simplices) {
    if (s.empty() || !std::is_sorted(s.begin(), s.end()) ||
        std::adjacent_find(s.begin(), s.end()) != s.end())
      return false;
    if (s.size() == 1) continue;
    for (std::size_t drop = 0; drop < s.size(); ++drop) {
      Simplex f;
      for (std::size_t i = 0; i < s.size(); ++i)
        if (i != drop) f.push_back(s[i]);
      if (!all.count(f)) return false;
    }
  }
  return true;
}

std::vector<long long> AbstractComplex::f_vector() const {
  std::vector<long long> f(dimension() + 1, 0);
  for (const Simplex& s : simplices) ++f[s.size() - 1];
  return f;
}

long long AbstractComplex::euler_characteristic() const {
  long long chi = 0;
  const auto f = f_vector();
  for (std::size_t p = 0; p < f.size(); ++p) chi += (p % 2 ? -1 : 1) * f[p];
  return chi;
}

AbstractComplex closure_of(const std::vector<Simplex>& generators) {
  std::set<Simplex> out;
  for (Simplex g : generators) {
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    require(!g.empty(), "simplices must be nonempty");
    require(g.size() < 31, "simplex too large to close");
    const unsigned total = 1u << g.size();
    for (unsigned m = 1; m < total; ++m) {
      Simplex f;
      for (std::size_t i = 0; i < g.size(); ++i)
        if ((m >> i) & 1u) f.push_back(g[i]);
      out.insert(std::move(f));
    }
  }
  AbstractComplex k{{out.begin(), out.end()}};
  std::sort(k.simplices.begin(), k.simplices.end(), by_size_then_lex);
  return k;
}

int gf2_rank(std::vector<std::vector<std::uint64_t>> rows, int cols) {
  int rank = 0;
  const int n = static_cast<int>(rows.size());
  for (int c = 0; c < cols && rank < n; ++c) {
    const int w = c / 64;
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    int pivot = -1;
    for (int r = rank; r < n; ++r)
      if (rows[r][w] & bit) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    for (int r = 0; r < n; ++r)
      if (r != rank && (rows[r][w] & bit))
        for (std::size_t k = w; k < rows[r].size(); ++k) rows[r][k] ^= rows[rank][k];
    ++rank;
  }
  return rank;
}

std::vector<int> betti_gf2(const AbstractComplex& k) {
  require(k.closed(), "complex is not closed under taking faces");
  return betti_of(grade(k, nullptr));
}

std::vector<int> betti_gf2(const AbstractComplex& k, const AbstractComplex& sub) {
  require(k.closed(), "complex is not closed under taking faces");
  require(sub.closed(), "subcomplex is not closed under taking faces");
  std::set<Simplex> all(k.simplices.begin(), k.simplices.end());
  for (const Simplex& s : sub.simplices) require(all.count(s) > 0, "subcomplex is not contained in the complex");
  return betti_of(grade(k, &sub));
}

std::vector<int> reduced_betti_gf2(const AbstractComplex& k) {
  if (k.simplices.empty()) return {1};
  std::vector<int> b = betti_gf2(k);
  b.insert(b.begin(), 0);
  b[1] -= 1;
  return b;
}

}  // namespace lovx
