#include "lovx/corpus.hpp"

#include "lovx/random.hpp"

namespace lovx {

namespace {

Graph named(int n, std::vector<Edge> e, const char* name) { return Graph(n, std::move(e), name); }

Graph with_interior(Graph g, Mask a) {
  g.set_interior(a);
  g.set_name(g.name() + "/A");
  return g;
}

Graph random_graph(int n, double p, std::uint64_t seed, const char* name) {
  Rng rng(seed);
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.coin(p)) e.push_back({i, j});
  return Graph(n, e, name);
}

}  // namespace

std::vector<Graph> graph_corpus() {
  std::vector<Graph> c;
  c.push_back(Graph::complete(2));
  c.push_back(Graph::path(3));
  c.push_back(Graph::path(4));
  c.push_back(Graph::path(5));
  c.push_back(Graph::complete(3));
  c.push_back(Graph::complete(4));
  c.push_back(Graph::complete(5));
  c.push_back(Graph::cycle(4));
  c.push_back(Graph::cycle(5));
  c.push_back(Graph::cycle(6));
  c.push_back(Graph::star(3));
  c.push_back(Graph::star(4));
  c.push_back(Graph::complete_bipartite(2, 3));
  c.push_back(Graph::complete_bipartite(3, 3));
  c.push_back(Graph::edgeless(3));
  c.push_back(named(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}}, "paw"));
  c.push_back(named(4, {{0, 1}, {1, 2}, {0, 2}, {1, 3}, {2, 3}}, "diamond"));
  c.push_back(named(5, {{0, 1}, {1, 2}, {0, 2}, {1, 3}, {2, 4}}, "bull"));
  c.push_back(named(5, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {2, 4}, {3, 4}}, "house"));
  c.push_back(named(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}},
                    "W5"));
  c.push_back(named(5, {{0, 1}, {1, 2}, {3, 4}}, "P3+K2"));
  c.push_back(named(4, {{0, 1}, {1, 2}, {0, 2}}, "K3+K1"));
  c.push_back(named(7, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 5}, {5, 3}, {5, 6}}, "two_triangles"));
  c.push_back(random_graph(6, 0.5, 11, "G(6,0.5)#11"));
  c.push_back(random_graph(7, 0.4, 12, "G(7,0.4)#12"));
  c.push_back(random_graph(7, 0.6, 13, "G(7,0.6)#13"));
  c.push_back(with_interior(Graph::path(3), 0b010));
  c.push_back(with_interior(Graph::path(5), 0b01110));
  c.push_back(with_interior(Graph::cycle(6), 0b000111));
  c.push_back(with_interior(Graph::complete(4), 0b0011));
  return c;
}

}  // namespace lovx
