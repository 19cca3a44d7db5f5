#pragma once

#include <chrono>
#include <cstdint>
#include <vector>

namespace wbc {

enum class Normalization {
  Raw,     // sum over ordered (s, t) pairs
  Halved,  // divided by 2: unordered-pair convention for undirected graphs
};

/// Betweenness scores plus traversal statistics for one computation.
struct BcResult {
  std::vector<double> node_bc;  // one entry per vertex
  /// One entry per canonical edge when edge centrality was requested, else empty.
  std::vector<double> edge_bc;
  /// Settlement rounds per computed source (0 for sources not run). Filled by
  /// the parallel engine; the sequential baseline has no round structure and
  /// leaves it empty.
  std::vector<std::uint32_t> depth_per_source;
  std::chrono::duration<double> elapsed{0.0};
};

}  // namespace wbc
