#pragma once

#include <optional>

#include "wbc/graph.hpp"
#include "wbc/result.hpp"

namespace wbc {

struct BrandesOptions {
  bool compute_edge_bc = false;
  Normalization normalization = Normalization::Raw;
  /// Relative tolerance for the d(u) == d(v) + w tests that detect
  /// shortest-path DAG edges. 0 means exact comparison, which is exact for
  /// integer-valued weights; 1e-12 is a reasonable setting for arbitrary
  /// real weights.
  double equality_epsilon = 0.0;
  /// Restrict the per-source accumulation to these sources (default: all).
  std::optional<std::vector<NodeId>> sources;
};

/// Sequential Brandes with binary-heap Dijkstra. This is the baseline every
/// parallel strategy is validated against; it is single-threaded by contract.
BcResult brandes_sequential(const CsrGraph& g, const BrandesOptions& opt = {});

/// Definitional all-pairs check: per-source Dijkstra distances, path counts by
/// a separate increasing-distance pass over the finished distances, centrality
/// by direct pair-dependency summation over all ordered (s, t) pairs. Meant
/// for tests only; refuses graphs with more than 300 vertices.
BcResult brute_force_bc(const CsrGraph& g);

}  // namespace wbc
