#pragma once

#include <cstdint>

#include "wbc/graph.hpp"

namespace wbc {

/// Quadrant probabilities for the recursive Kronecker descent (R-MAT style).
struct KroneckerInitiator {
  double a = 0.57;
  double b = 0.19;
  double c = 0.19;
  double d = 0.05;
};

/// G(n, m) random graph: exactly round(n * avg_degree / 2) distinct undirected
/// edges sampled uniformly without replacement over unordered vertex pairs,
/// deterministic in `seed`. Weights are 1; see assign_weights.
EdgeList gen_er(std::uint64_t n, double avg_degree, std::uint64_t seed);

/// Kronecker graph over 2^scale vertex ids: round(n * avg_degree / 2) edges
/// drawn by weighted-quadrant recursive descent. Self-loops and duplicates are
/// discarded and resampled up to a retry cap; when the cap is exhausted the
/// list simply holds fewer edges (callers can compare against the request).
EdgeList gen_kronecker(int scale, double avg_degree, std::uint64_t seed,
                       const KroneckerInitiator& init = {});

/// Replaces every weight with an independent uniform integer in [lo, hi],
/// deterministic in `seed` and independent of how the topology was drawn.
EdgeList assign_weights(EdgeList edges, int lo, int hi, std::uint64_t seed);

/// k distinct vertex ids sampled uniformly from [0, n), ascending,
/// deterministic in `seed`. Used for source subsetting.
std::vector<NodeId> sample_sources(NodeId n, NodeId k, std::uint64_t seed);

}  // namespace wbc
