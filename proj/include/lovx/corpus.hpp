#pragma once

#include <vector>

#include "lovx/graph.hpp"

namespace lovx {

// Fixed list of 30 small graphs (n <= 7). Graphs whose name ends in "/A"
// carry an interior set for the boundary variants.
std::vector<Graph> graph_corpus();

}  // namespace lovx
