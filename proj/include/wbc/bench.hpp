#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "wbc/graph.hpp"

namespace wbc {

struct GraphDescriptor {
  std::string name;
  NodeId n = 0;
  EdgeId m = 0;
  double avg_degree = 0.0;
  NodeId max_degree = 0;
};

/// One timed run of one strategy on one graph.
struct BenchRecord {
  GraphDescriptor graph;
  std::string strategy_name;
  int lane_width = 0;  // 0 for the sequential baseline
  int workers = 1;
  double wall_time = 0.0;  // median of times, seconds
  double speedup_vs_baseline = 1.0;
  double avg_depth = 0.0;  // mean settlement depth over sources (0 for sequential)
  int reps = 1;
  std::vector<double> times;  // per-rep wall times, seconds
};

struct BenchOptions {
  /// Strategy tokens: np, we, warpW, we-warpW, or "sequential" to time the
  /// baseline itself as a strategy.
  std::vector<std::string> strategies{"np", "we", "warp32", "we-warp32"};
  int workers = 1;
  int reps = 3;
  /// Source subset used for the baseline and every strategy (default: all).
  std::optional<std::vector<NodeId>> sources;
};

class BenchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws BenchError when candidate scores differ from the baseline beyond
/// rel_tol (relative, with a 1e-9 absolute floor). `label` names the candidate
/// in the diagnostic.
void verify_scores(std::span<const double> baseline, std::span<const double> candidate,
                   double rel_tol, const std::string& label);

/// Times the sequential baseline once on the configured sources, then every
/// strategy `reps` times with the same sources. Each strategy's scores are
/// checked against the baseline (1e-6 relative) before its record is emitted;
/// a mismatch throws BenchError. The baseline record comes first. Also asserts
/// that avg_depth agrees across strategies, since depth is a property of the
/// graph, not the schedule.
std::vector<BenchRecord> run_bench(const CsrGraph& g, const std::string& graph_name,
                                   const BenchOptions& opt);

/// CSV: one header row plus one row per record, fields in BenchRecord order,
/// floats at 6 significant digits, per-rep times ';'-joined in the last column.
std::string write_csv(std::span<const BenchRecord> records);

}  // namespace wbc
