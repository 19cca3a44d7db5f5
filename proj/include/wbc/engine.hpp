#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wbc/graph.hpp"
#include "wbc/result.hpp"

namespace wbc {

/// How relax work items are generated each round.
enum class FrontierMode {
  ScanAll,  // one item per vertex; non-frontier items no-op
  Queue,    // items only for entries of a compact frontier queue
};

/// Scheduling strategy: frontier representation x lane width.
///
/// (ScanAll, 1) is node-parallel, (Queue, 1) work-efficient. A lane width
/// W > 1 splits each frontier vertex's adjacency row across W lanes (lane j
/// takes slots j, j+W, j+2W, ...), emulating cooperating warp threads so a
/// high-degree vertex's edges become W work items instead of one.
struct Strategy {
  FrontierMode frontier_mode = FrontierMode::Queue;
  int lane_width = 1;  // one of 1, 4, 8, 16, 32
};

bool valid_lane_width(int w);

/// Canonical token: np, we, warpW, we-warpW.
std::string strategy_name(const Strategy& s);

/// Parses np | we | warp[W] | we-warp[W]. Bare "warp"/"we-warp" default to
/// W = 32. Throws std::invalid_argument on unknown tokens or widths.
Strategy parse_strategy(const std::string& token);

/// Settlement rule. LessEqual is the distance-only variant: all distances stay
/// correct but path counts can be undercounted when a vertex settles while a
/// same-round neighbor still had a contribution to add. Kept for regression
/// tests; StrictLess is the correct rule.
enum class SettleRule { StrictLess, LessEqual };

/// Per-source working set. `order`/`ends` record settlement rounds in CSR-like
/// form: order[ends[k-1] .. ends[k]) is round k's settled set, and the vertices
/// settled in the latest round form the frontier relaxed next round.
struct TraversalState {
  std::vector<double> dist;               // tentative distance, +inf sentinel
  std::vector<double> sigma;              // shortest-path counts from the source
  std::vector<double> delta;              // accumulated dependencies
  std::vector<std::uint8_t> unsettled;    // U: 1 while the distance is not final
  std::vector<std::uint8_t> in_frontier;  // ScanAll frontier flags
  std::vector<NodeId> frontier;           // Queue frontier, first frontier_len entries
  std::uint32_t frontier_len = 0;
  std::vector<NodeId> order;              // S: settlement order, first order_len entries
  std::uint32_t order_len = 0;
  std::vector<std::uint32_t> ends;        // level boundaries into order, ends_len entries
  std::uint32_t ends_len = 0;
  double threshold = 0.0;                 // current settlement threshold
  NodeId source = 0;

  std::uint32_t depth() const { return ends_len - 1; }
};

/// Resets st for a run from `source`: d[s]=0, sigma[s]=1, s settled, sole
/// frontier member, order=[s], ends=[0,1], threshold=0. Arrays are reused
/// across calls, so one state can be pooled per worker.
void init_state(const CsrGraph& g, NodeId source, TraversalState& st);

/// One relax round: for every frontier vertex v and unsettled neighbor u,
/// improve d[u] (resetting sigma[u]) and add sigma[v] on distance equality.
void relax_frontier(const CsrGraph& g, const Strategy& strat, TraversalState& st);

/// Settlement threshold: min over unsettled v with finite d of
/// d[v] + min_incident_weight[v]; +inf when no such vertex remains. Scans all
/// vertices regardless of strategy. Stores the value in st.threshold.
double compute_threshold(const CsrGraph& g, TraversalState& st);

/// Settles every unsettled vertex with d below the threshold (strictly below
/// under StrictLess), appends them to the settlement order, makes them the new
/// frontier and appends a level boundary. Returns the number settled. No-op
/// when the threshold is +inf.
std::size_t settle_and_advance(const CsrGraph& g, const Strategy& strat, TraversalState& st,
                               SettleRule rule = SettleRule::StrictLess);

/// Brandes dependency accumulation over the recorded levels, deepest first.
/// delta[w] = sum over DAG successors v of sigma[w]/sigma[v] * (1 + delta[v]);
/// node_acc[w] += delta[w] for w != source. When edge_acc is non-empty, each
/// DAG edge's term is also added at its canonical edge id. Empty spans skip
/// the respective accumulation; delta is always filled.
void accumulate_dependencies(const CsrGraph& g, const Strategy& strat, TraversalState& st,
                             std::span<double> node_acc, std::span<double> edge_acc = {});

/// Full single-source shortest-path phase (init + relax/threshold/settle loop
/// until the threshold reaches +inf), single-threaded.
void solve_source(const CsrGraph& g, NodeId source, const Strategy& strat, TraversalState& st,
                  SettleRule rule = SettleRule::StrictLess);

/// Same loop with `workers` threads cooperating on every round. Phases are
/// barrier-separated and each relaxation of an edge into u runs as one
/// exclusive read-modify-write unit under u's lock, so the round's outcome
/// equals some sequential interleaving of its per-edge relax steps.
void solve_source_parallel(const CsrGraph& g, NodeId source, const Strategy& strat, int workers,
                           TraversalState& st, SettleRule rule = SettleRule::StrictLess);

struct EngineOptions {
  Strategy strategy{};
  int workers = 1;
  bool compute_edge_bc = false;
  Normalization normalization = Normalization::Raw;
  /// Commit per-source contributions in fixed source order so scores are
  /// bitwise reproducible across runs and worker counts. Somewhat slower than
  /// the default per-worker-buffer reduction.
  bool strict_merge = false;
  SettleRule settle_rule = SettleRule::StrictLess;
  /// Subset of sources to run (default: every vertex).
  std::optional<std::vector<NodeId>> sources;
};

/// Parallel betweenness centrality: runs the per-source pipeline
/// (init -> rounds -> accumulate) for every requested source and merges the
/// contributions. Sources are distributed across workers, each with a pooled
/// private state; when there are fewer sources than workers (for instance a
/// single source) the workers instead cooperate on each source's rounds.
/// Scores match the sequential baseline for any worker count and strategy, up
/// to floating-point summation order. depth_per_source[s] is the number of
/// settlement rounds for s.
BcResult bc_parallel(const CsrGraph& g, const EngineOptions& opt = {});

}  // namespace wbc
