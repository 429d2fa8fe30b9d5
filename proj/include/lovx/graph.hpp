#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lovx/setfun.hpp"

namespace lovx {

using Edge = std::pair<int, int>;

// Simple undirected graph on at most 30 vertices, with an optional
// interior set A whose boundary dA = {v not in A adjacent to A} is derived.
class Graph {
 public:
  Graph() = default;
  Graph(int n, std::vector<Edge> edges, std::string name = "");

  static Graph edgeless(int n);
  static Graph complete(int n);
  static Graph path(int n);
  static Graph cycle(int n);
  static Graph star(int leaves);
  static Graph complete_bipartite(int a, int b);

  int n() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int m() const { return static_cast<int>(edges_.size()); }
  const std::string& name() const { return name_; }
  void set_name(std::string s) { name_ = std::move(s); }

  int degree(int v) const { return popcount(adj_[v]); }
  Mask neighbors(int v) const { return adj_[v]; }
  // N(v) = {v} plus neighbors.
  Mask closed_neighborhood(int v) const { return adj_[v] | (Mask{1} << v); }
  bool adjacent(int u, int v) const { return (adj_[u] >> v) & 1u; }

  int edges_inside(Mask a) const;
  int cut(Mask a) const;
  int cut_between(Mask a, Mask b) const;
  int volume(Mask a) const;
  bool connected() const;
  bool connected_within(Mask s) const;
  // Hop distances; -1 when unreachable.
  std::vector<std::vector<int>> distances() const;

  Graph complement() const;
  // Vertices u != v joined when 1 <= dist(u,v) <= k.
  Graph distance_power(int k) const;

  void set_interior(Mask a);
  bool has_boundary() const { return has_boundary_; }
  Mask interior() const { return interior_; }
  Mask boundary() const { return boundary_; }
  Mask closure() const { return interior_ | boundary_; }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<Mask> adj_;
  std::string name_;
  bool has_boundary_ = false;
  Mask interior_ = 0;
  Mask boundary_ = 0;
};

}  // namespace lovx
