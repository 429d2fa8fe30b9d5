#include "lovx/graph.hpp"

#include <algorithm>
#include <queue>

#include "lovx/error.hpp"

namespace lovx {

Graph::Graph(int n, std::vector<Edge> edges, std::string name)
    : n_(n), adj_(n, 0), name_(std::move(name)) {
  require(n >= 0 && n <= kMaxGround, "graph needs 0 <= n <= 30");
  for (auto [u, v] : edges) {
    require(u >= 0 && v >= 0 && u < n && v < n, "edge endpoint out of range");
    require(u != v, "loops are not allowed");
    if (u > v) std::swap(u, v);
    require(!adjacent(u, v), "duplicate edge");
    adj_[u] |= Mask{1} << v;
    adj_[v] |= Mask{1} << u;
    edges_.push_back({u, v});
  }
}

Graph Graph::edgeless(int n) { return Graph(n, {}, "E" + std::to_string(n)); }

Graph Graph::complete(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.push_back({i, j});
  return Graph(n, e, "K" + std::to_string(n));
}

Graph Graph::path(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return Graph(n, e, "P" + std::to_string(n));
}

Graph Graph::cycle(int n) {
  require(n >= 3, "cycle needs n >= 3");
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
  return Graph(n, e, "C" + std::to_string(n));
}

Graph Graph::star(int leaves) {
  std::vector<Edge> e;
  for (int i = 1; i <= leaves; ++i) e.push_back({0, i});
  return Graph(leaves + 1, e, "S" + std::to_string(leaves));
}

Graph Graph::complete_bipartite(int a, int b) {
  std::vector<Edge> e;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) e.push_back({i, a + j});
  return Graph(a + b, e, "K" + std::to_string(a) + "," + std::to_string(b));
}

int Graph::edges_inside(Mask a) const {
  int c = 0;
  for (auto [u, v] : edges_) c += ((a >> u) & (a >> v) & 1u) ? 1 : 0;
  return c;
}

int Graph::cut(Mask a) const {
  int c = 0;
  for (auto [u, v] : edges_) c += (((a >> u) ^ (a >> v)) & 1u) ? 1 : 0;
  return c;
}

int Graph::cut_between(Mask a, Mask b) const {
  int c = 0;
  for (auto [u, v] : edges_)
    if ((((a >> u) & (b >> v)) | ((a >> v) & (b >> u))) & 1u) ++c;
  return c;
}

int Graph::volume(Mask a) const {
  int s = 0;
  for (int v = 0; v < n_; ++v)
    if ((a >> v) & 1u) s += degree(v);
  return s;
}

bool Graph::connected_within(Mask s) const {
  if (s == 0) return true;
  Mask seen = s & (~s + 1);
  Mask frontier = seen;
  while (frontier) {
    Mask next = 0;
    for (int v = 0; v < n_; ++v)
      if ((frontier >> v) & 1u) next |= adj_[v] & s;
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == s;
}

bool Graph::connected() const { return connected_within(full_mask(n_)); }

std::vector<std::vector<int>> Graph::distances() const {
  std::vector<std::vector<int>> d(n_, std::vector<int>(n_, -1));
  for (int s = 0; s < n_; ++s) {
    std::queue<int> q;
    q.push(s);
    d[s][s] = 0;
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v = 0; v < n_; ++v)
        if (adjacent(u, v) && d[s][v] < 0) {
          d[s][v] = d[s][u] + 1;
          q.push(v);
        }
    }
  }
  return d;
}

Graph Graph::complement() const {
  std::vector<Edge> e;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (!adjacent(i, j)) e.push_back({i, j});
  return Graph(n_, e, name_ + "^c");
}

Graph Graph::distance_power(int k) const {
  require(k >= 1, "distance power needs k >= 1");
  const auto d = distances();
  std::vector<Edge> e;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (d[i][j] >= 1 && d[i][j] <= k) e.push_back({i, j});
  return Graph(n_, e, name_ + "^" + std::to_string(k));
}

void Graph::set_interior(Mask a) {
  require((a & ~full_mask(n_)) == 0, "interior set out of range");
  require(a != 0, "interior set must be nonempty");
  Mask b = 0;
  for (int v = 0; v < n_; ++v)
    if ((a >> v) & 1u) b |= adj_[v];
  has_boundary_ = true;
  interior_ = a;
  boundary_ = b & ~a;
}

}  // namespace lovx
