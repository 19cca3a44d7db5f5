#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wbc {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;
using RawId = std::uint64_t;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// One undirected edge as read from input, endpoints in the original id space.
struct WeightedEdge {
  RawId u = 0;
  RawId v = 0;
  double w = 1.0;
};

/// Validated edge list: strictly positive weights, no self-loops. Duplicate
/// undirected edges may remain; build_csr merges them to the minimum weight.
struct EdgeList {
  std::vector<WeightedEdge> entries;
  std::size_t self_loops_dropped = 0;
};

/// Input failure carrying the 1-based line number that caused it.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Reads whitespace-separated "u v" or "u v w" lines. Lines starting with '#'
/// and blank lines are skipped; a missing weight takes default_weight.
/// Self-loops are dropped and counted; w <= 0 or a malformed token raises
/// ParseError with the offending line number.
EdgeList parse_edge_list(std::istream& in, double default_weight = 1.0);

/// Immutable undirected weighted graph in CSR form. Vertex ids are dense,
/// assigned by first appearance in the source edge list. Every undirected edge
/// occupies one slot in each endpoint's row; the two slots carry the same
/// weight and the same canonical edge id in [0, m).
///
/// Construction is single-threaded; afterwards the structure is read-only and
/// safe to share across any number of workers.
struct CsrGraph {
  NodeId n = 0;
  EdgeId m = 0;
  std::vector<EdgeId> offsets;              // n+1, offsets[n] == 2m
  std::vector<NodeId> adjacency;            // 2m neighbor ids
  std::vector<double> weights;              // 2m, parallel to adjacency
  std::vector<EdgeId> edge_id;              // 2m, slot -> canonical edge
  std::vector<double> min_incident_weight;  // n, +inf for isolated vertices
  std::vector<RawId> original_id;           // n, dense id -> original id
  std::vector<NodeId> edge_u, edge_v;       // m, canonical edge endpoints (dense ids)
  std::size_t merged_duplicates = 0;

  NodeId degree(NodeId v) const { return offsets[v + 1] - offsets[v]; }
};

/// Compacts ids, merges duplicate undirected edges keeping the minimum weight,
/// emits both directed slots per edge and precomputes per-vertex minimum
/// incident weights. An empty edge list yields the empty graph.
CsrGraph build_csr(const EdgeList& edges);

struct GraphStats {
  NodeId n = 0;
  EdgeId m = 0;
  NodeId max_degree = 0;
  double avg_degree = 0.0;  // 2m/n, 0 for the empty graph
};

GraphStats graph_stats(const CsrGraph& g);

/// Canonical edges mapped back to original ids, one entry per undirected edge.
EdgeList to_edge_list(const CsrGraph& g);

/// Writes the edge-list text format; each header string becomes a '#' line.
void write_edge_list(std::ostream& out, const EdgeList& edges,
                     std::span<const std::string> header = {});

}  // namespace wbc
