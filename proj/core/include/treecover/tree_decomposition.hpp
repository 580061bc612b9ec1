#pragma once

#include <string>
#include <utility>
#include <vector>

#include "treecover/graph.hpp"

namespace treecover {

struct TreeDecomposition {
  int vertex_count = 0;
  std::vector<std::vector<int>> bags;  // each bag sorted ascending
  std::vector<std::pair<int, int>> tree_edges;

  int width() const;
  std::vector<std::vector<int>> tree_adjacency() const;
};

// Throws InvariantViolation naming the first broken condition: vertex coverage,
// edge coverage, connectivity of each vertex's bag set, or tree shape.
void validate_decomposition(const Graph& g, const TreeDecomposition& td);

// Greedy elimination by minimum fill-in (ties: smaller degree, then smaller id).
TreeDecomposition min_fill_decomposition(const Graph& g);

// PACE .td text; bag and vertex ids are 1-based on disk.
std::string write_pace(const TreeDecomposition& td);
TreeDecomposition read_pace(const std::string& text);

}  // namespace treecover
