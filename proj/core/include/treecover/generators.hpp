#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "treecover/graph.hpp"
#include "treecover/planar.hpp"
#include "treecover/tree_decomposition.hpp"

namespace treecover {

enum class InstanceKind { Grid, CylinderGrid, RandomTriangulation, SeriesParallel };

struct GenParams {
  InstanceKind kind = InstanceKind::Grid;
  int rows = 0;  // grid rows / cylinder height
  int cols = 0;  // grid columns / cylinder circumference
  int n = 0;     // random-triangulation and series-parallel size
  double wmin = 1.0;
  double wmax = 1.0;
  double delete_fraction = 0.0;  // fraction of removable edges dropped
  uint64_t seed = 1;
};

struct Instance {
  Graph graph;
  std::optional<Embedding> embedding;
  std::optional<TreeDecomposition> decomposition;
};

Instance generate(const GenParams& p);

InstanceKind parse_instance_kind(const std::string& name);
std::string instance_kind_name(InstanceKind kind);

}  // namespace treecover
