#include "wbc/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "wbc/brandes.hpp"
#include "wbc/engine.hpp"

namespace wbc {

namespace {

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t k = xs.size();
  return k % 2 ? xs[k / 2] : 0.5 * (xs[k / 2 - 1] + xs[k / 2]);
}

double mean_depth(const BcResult& r, const std::vector<NodeId>& sources) {
  if (sources.empty()) return 0.0;
  double sum = 0.0;
  for (const NodeId s : sources) sum += r.depth_per_source[s];
  return sum / static_cast<double>(sources.size());
}

std::string fmt6(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

void verify_scores(std::span<const double> baseline, std::span<const double> candidate,
                   double rel_tol, const std::string& label) {
  if (baseline.size() != candidate.size())
    throw BenchError(label + ": score vector size mismatch");
  for (std::size_t v = 0; v < baseline.size(); ++v) {
    const double a = baseline[v];
    const double b = candidate[v];
    const double bound = std::max(1e-9, rel_tol * std::max(std::abs(a), std::abs(b)));
    if (!(std::abs(a - b) <= bound))
      throw BenchError(label + ": score mismatch at vertex " + std::to_string(v) + ": baseline " +
                       std::to_string(a) + " vs " + std::to_string(b));
  }
}

std::vector<BenchRecord> run_bench(const CsrGraph& g, const std::string& graph_name,
                                   const BenchOptions& opt) {
  if (opt.reps < 1) throw std::invalid_argument("run_bench: reps must be >= 1");
  const GraphStats stats = graph_stats(g);
  GraphDescriptor desc{graph_name, stats.n, stats.m, stats.avg_degree, stats.max_degree};

  std::vector<NodeId> sources;
  if (opt.sources) {
    sources = *opt.sources;
  } else {
    sources.resize(g.n);
    std::iota(sources.begin(), sources.end(), NodeId{0});
  }
  BrandesOptions base_opt;
  base_opt.sources = sources;
  const BcResult baseline = brandes_sequential(g, base_opt);
  const double baseline_time = baseline.elapsed.count();

  std::vector<BenchRecord> records;
  records.push_back({desc, "sequential", 0, 1, baseline_time, 1.0, 0.0, 1, {baseline_time}});

  double parallel_avg_depth = -1.0;
  for (const std::string& token : opt.strategies) {
    BenchRecord rec;
    rec.graph = desc;
    rec.workers = opt.workers;
    rec.reps = opt.reps;
    if (token == "sequential" || token == "seq") {
      rec.strategy_name = "sequential";
      rec.lane_width = 0;
      rec.workers = 1;
      for (int i = 0; i < opt.reps; ++i)
        rec.times.push_back(brandes_sequential(g, base_opt).elapsed.count());
    } else {
      const Strategy strat = parse_strategy(token);
      rec.strategy_name = strategy_name(strat);
      rec.lane_width = strat.lane_width;
      EngineOptions eng;
      eng.strategy = strat;
      eng.workers = opt.workers;
      eng.sources = sources;
      BcResult last;
      for (int i = 0; i < opt.reps; ++i) {
        last = bc_parallel(g, eng);
        rec.times.push_back(last.elapsed.count());
      }
      // A benchmark of wrong answers is invalid: gate on baseline equality.
      verify_scores(baseline.node_bc, last.node_bc, 1e-6, rec.strategy_name);
      rec.avg_depth = mean_depth(last, sources);
      if (parallel_avg_depth < 0.0) {
        parallel_avg_depth = rec.avg_depth;
      } else if (rec.avg_depth != parallel_avg_depth) {
        // Depth is a property of the graph and settlement criterion, never of
        // the schedule.
        throw BenchError(rec.strategy_name + ": avg_depth " + std::to_string(rec.avg_depth) +
                         " disagrees with " + std::to_string(parallel_avg_depth));
      }
    }
    rec.wall_time = median(rec.times);
    rec.speedup_vs_baseline = baseline_time / rec.wall_time;
    records.push_back(std::move(rec));
  }
  return records;
}

std::string write_csv(std::span<const BenchRecord> records) {
  if (records.empty()) throw std::invalid_argument("write_csv: no records");
  std::ostringstream out;
  out << "name,n,m,avg_degree,max_degree,strategy_name,lane_width,workers,"
         "wall_time,speedup_vs_baseline,avg_depth,reps,times\n";
  for (const BenchRecord& r : records) {
    out << r.graph.name << ',' << r.graph.n << ',' << r.graph.m << ','
        << fmt6(r.graph.avg_degree) << ',' << r.graph.max_degree << ',' << r.strategy_name << ','
        << r.lane_width << ',' << r.workers << ',' << fmt6(r.wall_time) << ','
        << fmt6(r.speedup_vs_baseline) << ',' << fmt6(r.avg_depth) << ',' << r.reps << ',';
    for (std::size_t i = 0; i < r.times.size(); ++i) {
      if (i) out << ';';
      out << fmt6(r.times[i]);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace wbc
