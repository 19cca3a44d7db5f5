#include "wbc/engine.hpp"

#include <omp.h>

#include <atomic>
#include <chrono>
#include <memory>
#include <numeric>

namespace wbc {

bool valid_lane_width(int w) { return w == 1 || w == 4 || w == 8 || w == 16 || w == 32; }

std::string strategy_name(const Strategy& s) {
  const bool queue = s.frontier_mode == FrontierMode::Queue;
  if (s.lane_width == 1) return queue ? "we" : "np";
  const std::string w = std::to_string(s.lane_width);
  return queue ? "we-warp" + w : "warp" + w;
}

Strategy parse_strategy(const std::string& token) {
  Strategy s;
  std::string rest;
  if (token == "np") return {FrontierMode::ScanAll, 1};
  if (token == "we") return {FrontierMode::Queue, 1};
  if (token.rfind("we-warp", 0) == 0) {
    s.frontier_mode = FrontierMode::Queue;
    rest = token.substr(7);
  } else if (token.rfind("warp", 0) == 0) {
    s.frontier_mode = FrontierMode::ScanAll;
    rest = token.substr(4);
  } else {
    throw std::invalid_argument("unknown strategy '" + token + "'");
  }
  s.lane_width = rest.empty() ? 32 : std::atoi(rest.c_str());
  if (!valid_lane_width(s.lane_width))
    throw std::invalid_argument("invalid lane width in strategy '" + token +
                                "' (expected 1, 4, 8, 16 or 32)");
  return s;
}

namespace {

class SpinLock {
 public:
  void lock() noexcept {
    while (flag_.test_and_set(std::memory_order_acquire))
      while (flag_.test(std::memory_order_relaxed)) {
      }
  }
  void unlock() noexcept { flag_.clear(std::memory_order_release); }

 private:
  std::atomic_flag flag_;  // default-constructed clear
};

// Relax one directed slot v -> u. With a lock array the distance compare,
// sigma reset and sigma add execute as one exclusive unit per target vertex.
inline void relax_edge(TraversalState& st, NodeId u, double dv, double sv, double w,
                       SpinLock* locks) {
  if (!st.unsettled[u]) return;  // settled targets never change; U is stable during relax
  const double nd = dv + w;
  if (locks) {
    SpinLock& lk = locks[u];
    lk.lock();
    if (nd < st.dist[u]) {
      st.dist[u] = nd;
      st.sigma[u] = 0.0;
    }
    if (st.dist[u] == nd) st.sigma[u] += sv;
    lk.unlock();
  } else {
    if (nd < st.dist[u]) {
      st.dist[u] = nd;
      st.sigma[u] = 0.0;
    }
    if (st.dist[u] == nd) st.sigma[u] += sv;
  }
}

// One relax work item: lane item%W of the frontier vertex at domain position
// item/W. In ScanAll mode the domain is every vertex and non-frontier items
// no-op; in Queue mode the domain is the compact frontier.
inline void relax_item(const CsrGraph& g, const Strategy& strat, TraversalState& st,
                       std::size_t item, SpinLock* locks) {
  const std::size_t lanes = static_cast<std::size_t>(strat.lane_width);
  const std::size_t pos = item / lanes;
  const EdgeId lane = static_cast<EdgeId>(item % lanes);
  NodeId v;
  if (strat.frontier_mode == FrontierMode::Queue) {
    v = st.frontier[pos];
  } else {
    v = static_cast<NodeId>(pos);
    if (!st.in_frontier[v]) return;
  }
  const double dv = st.dist[v];
  const double sv = st.sigma[v];
  const EdgeId row_end = g.offsets[v + 1];
  for (EdgeId e = g.offsets[v] + lane; e < row_end; e += static_cast<EdgeId>(lanes))
    relax_edge(st, g.adjacency[e], dv, sv, g.weights[e], locks);
}

inline std::size_t relax_item_count(const CsrGraph& g, const Strategy& strat,
                                    const TraversalState& st) {
  const std::size_t domain =
      strat.frontier_mode == FrontierMode::Queue ? st.frontier_len : g.n;
  return domain * static_cast<std::size_t>(strat.lane_width);
}

void validate_strategy(const Strategy& s) {
  if (!valid_lane_width(s.lane_width))
    throw std::invalid_argument("invalid lane width " + std::to_string(s.lane_width) +
                                " (expected 1, 4, 8, 16 or 32)");
}

}  // namespace

void init_state(const CsrGraph& g, NodeId source, TraversalState& st) {
  if (source >= g.n) throw std::invalid_argument("init_state: source out of range");
  const NodeId n = g.n;
  st.dist.assign(n, kInf);
  st.sigma.assign(n, 0.0);
  st.delta.assign(n, 0.0);
  st.unsettled.assign(n, std::uint8_t{1});
  st.in_frontier.assign(n, std::uint8_t{0});
  st.frontier.resize(n);
  st.order.resize(n);
  st.ends.resize(n + 2u);
  st.dist[source] = 0.0;
  st.sigma[source] = 1.0;
  st.unsettled[source] = 0;
  st.in_frontier[source] = 1;
  st.frontier[0] = source;
  st.frontier_len = 1;
  st.order[0] = source;
  st.order_len = 1;
  st.ends[0] = 0;
  st.ends[1] = 1;
  st.ends_len = 2;
  st.threshold = 0.0;
  st.source = source;
}

void relax_frontier(const CsrGraph& g, const Strategy& strat, TraversalState& st) {
  const std::size_t items = relax_item_count(g, strat, st);
  for (std::size_t i = 0; i < items; ++i) relax_item(g, strat, st, i, nullptr);
}

double compute_threshold(const CsrGraph& g, TraversalState& st) {
  double t = kInf;
  for (NodeId v = 0; v < g.n; ++v)
    if (st.unsettled[v] && st.dist[v] < kInf)
      t = std::min(t, st.dist[v] + g.min_incident_weight[v]);
  st.threshold = t;
  return t;
}

std::size_t settle_and_advance(const CsrGraph& g, const Strategy& strat, TraversalState& st,
                               SettleRule rule) {
  const double thr = st.threshold;
  if (thr == kInf) return 0;
  const bool queue = strat.frontier_mode == FrontierMode::Queue;
  if (queue) st.frontier_len = 0;
  const std::uint32_t before = st.order_len;
  for (NodeId v = 0; v < g.n; ++v) {
    if (!queue) st.in_frontier[v] = 0;
    if (!st.unsettled[v]) continue;
    const bool take =
        rule == SettleRule::StrictLess ? st.dist[v] < thr : st.dist[v] <= thr;
    if (!take) continue;
    st.unsettled[v] = 0;
    st.order[st.order_len++] = v;
    if (queue)
      st.frontier[st.frontier_len++] = v;
    else
      st.in_frontier[v] = 1;
  }
  const std::uint32_t count = st.order_len - before;
  if (count > 0) st.ends[st.ends_len++] = st.order_len;
  return count;
}

void accumulate_dependencies(const CsrGraph& g, const Strategy& strat, TraversalState& st,
                             std::span<double> node_acc, std::span<double> edge_acc) {
  const EdgeId lanes = static_cast<EdgeId>(strat.lane_width);
  double* const edges = edge_acc.empty() ? nullptr : edge_acc.data();
  for (std::uint32_t depth = st.ends_len - 1; depth >= 1; --depth) {
    const std::uint32_t start = st.ends[depth - 1];
    const std::uint32_t level_end = st.ends[depth];
    for (std::uint32_t pos = start; pos < level_end; ++pos) {
      const NodeId w = st.order[pos];
      const double dw = st.dist[w];
      const double sw = st.sigma[w];
      const EdgeId row_end = g.offsets[w + 1];
      double dsw = 0.0;
      for (EdgeId lane = 0; lane < lanes; ++lane) {
        double part = 0.0;
        for (EdgeId e = g.offsets[w] + lane; e < row_end; e += lanes) {
          const NodeId v = g.adjacency[e];
          if (st.dist[v] == dw + g.weights[e]) {
            const double c = sw / st.sigma[v] * (1.0 + st.delta[v]);
            part += c;
            if (edges) edges[g.edge_id[e]] += c;
          }
        }
        dsw += part;
      }
      st.delta[w] = dsw;
      if (w != st.source && !node_acc.empty()) node_acc[w] += dsw;
    }
  }
}

void solve_source(const CsrGraph& g, NodeId source, const Strategy& strat, TraversalState& st,
                  SettleRule rule) {
  init_state(g, source, st);
  for (;;) {
    relax_frontier(g, strat, st);
    if (compute_threshold(g, st) == kInf) break;
    settle_and_advance(g, strat, st, rule);
  }
}

namespace {

// Runs one source's rounds (and its accumulation) with a team of threads.
// Phases are barrier-separated; relax serializes per-target updates through
// the shared lock array.
class FineSolver {
 public:
  FineSolver(const CsrGraph& g, int workers)
      : g_(g),
        workers_(workers),
        locks_(new SpinLock[g.n ? g.n : 1]),
        thread_min_(static_cast<std::size_t>(workers), kInf) {}

  void solve(NodeId source, const Strategy& strat, TraversalState& st, SettleRule rule) {
    init_state(g_, source, st);
    const bool queue = strat.frontier_mode == FrontierMode::Queue;
    const std::int64_t n = g_.n;
    std::atomic<std::uint32_t> order_cursor{st.order_len};
    std::atomic<std::uint32_t> frontier_cursor{0};
#pragma omp parallel num_threads(workers_)
    {
      const int tid = omp_get_thread_num();
      for (;;) {
        const std::int64_t items = static_cast<std::int64_t>(relax_item_count(g_, strat, st));
#pragma omp for schedule(dynamic, 16)
        for (std::int64_t i = 0; i < items; ++i)
          relax_item(g_, strat, st, static_cast<std::size_t>(i), locks_.get());
        // implicit barrier: all relaxations of this round are visible
        double local_min = kInf;
#pragma omp for schedule(static) nowait
        for (std::int64_t v = 0; v < n; ++v)
          if (st.unsettled[v] && st.dist[v] < kInf)
            local_min = std::min(local_min, st.dist[v] + g_.min_incident_weight[v]);
        thread_min_[tid] = local_min;
#pragma omp barrier
#pragma omp single
        {
          double t = kInf;
          for (int w = 0; w < workers_; ++w) t = std::min(t, thread_min_[w]);
          st.threshold = t;
          frontier_cursor.store(0, std::memory_order_relaxed);
        }  // implicit barrier: every thread sees the same threshold
        if (st.threshold == kInf) break;
        const double thr = st.threshold;
#pragma omp for schedule(static)
        for (std::int64_t v = 0; v < n; ++v) {
          if (!queue) st.in_frontier[v] = 0;
          if (!st.unsettled[v]) continue;
          const bool take =
              rule == SettleRule::StrictLess ? st.dist[v] < thr : st.dist[v] <= thr;
          if (!take) continue;
          st.unsettled[v] = 0;
          const std::uint32_t pos = order_cursor.fetch_add(1, std::memory_order_relaxed);
          st.order[pos] = static_cast<NodeId>(v);
          if (queue)
            st.frontier[frontier_cursor.fetch_add(1, std::memory_order_relaxed)] =
                static_cast<NodeId>(v);
          else
            st.in_frontier[v] = 1;
        }
#pragma omp single
        {
          const std::uint32_t new_len = order_cursor.load(std::memory_order_relaxed);
          if (new_len != st.order_len) {
            st.ends[st.ends_len++] = new_len;
            st.order_len = new_len;
          }
          st.frontier_len = queue ? frontier_cursor.load(std::memory_order_relaxed) : 0;
        }  // implicit barrier
      }
    }
  }

  void accumulate(const Strategy& strat, TraversalState& st, double* node_acc,
                  double* edge_acc) {
    const std::int64_t lanes = strat.lane_width;
    const NodeId source = st.source;
#pragma omp parallel num_threads(workers_)
    {
      for (std::uint32_t depth = st.ends_len - 1; depth >= 1; --depth) {
        const std::uint32_t start = st.ends[depth - 1];
        const std::uint32_t level_end = st.ends[depth];
        const std::int64_t items = static_cast<std::int64_t>(level_end - start) * lanes;
#pragma omp for schedule(dynamic, 16)
        for (std::int64_t i = 0; i < items; ++i) {
          const NodeId w = st.order[start + static_cast<std::uint32_t>(i / lanes)];
          const EdgeId lane = static_cast<EdgeId>(i % lanes);
          const double dw = st.dist[w];
          const double sw = st.sigma[w];
          const EdgeId row_end = g_.offsets[w + 1];
          double part = 0.0;
          for (EdgeId e = g_.offsets[w] + lane; e < row_end; e += static_cast<EdgeId>(lanes)) {
            const NodeId v = g_.adjacency[e];
            if (st.dist[v] == dw + g_.weights[e]) {
              const double c = sw / st.sigma[v] * (1.0 + st.delta[v]);
              part += c;
              if (edge_acc) edge_acc[g_.edge_id[e]] += c;  // one writer per edge id
            }
          }
          if (part != 0.0) {
            if (lanes == 1) {
              st.delta[w] = part;
            } else {
#pragma omp atomic
              st.delta[w] += part;
            }
          }
        }
        // implicit barrier: delta of this level is complete
#pragma omp for schedule(static)
        for (std::int64_t pos = start; pos < static_cast<std::int64_t>(level_end); ++pos) {
          const NodeId w = st.order[pos];
          if (w != source && node_acc) node_acc[w] += st.delta[w];
        }
      }
    }
  }

 private:
  const CsrGraph& g_;
  int workers_;
  std::unique_ptr<SpinLock[]> locks_;
  std::vector<double> thread_min_;
};

std::vector<NodeId> resolve_sources(const CsrGraph& g,
                                    const std::optional<std::vector<NodeId>>& wanted) {
  std::vector<NodeId> sources;
  if (wanted) {
    for (NodeId s : *wanted)
      if (s >= g.n) throw std::invalid_argument("bc_parallel: source id out of range");
    sources = *wanted;
  } else {
    sources.resize(g.n);
    std::iota(sources.begin(), sources.end(), NodeId{0});
  }
  return sources;
}

}  // namespace

void solve_source_parallel(const CsrGraph& g, NodeId source, const Strategy& strat, int workers,
                           TraversalState& st, SettleRule rule) {
  validate_strategy(strat);
  if (workers < 1) throw std::invalid_argument("solve_source_parallel: workers must be >= 1");
  FineSolver(g, workers).solve(source, strat, st, rule);
}

BcResult bc_parallel(const CsrGraph& g, const EngineOptions& opt) {
  validate_strategy(opt.strategy);
  if (opt.workers < 1) throw std::invalid_argument("bc_parallel: workers must be >= 1");
  const auto t0 = std::chrono::steady_clock::now();
  BcResult r;
  r.node_bc.assign(g.n, 0.0);
  if (opt.compute_edge_bc) r.edge_bc.assign(g.m, 0.0);
  r.depth_per_source.assign(g.n, 0);
  const std::vector<NodeId> sources = resolve_sources(g, opt.sources);
  const std::int64_t num_sources = static_cast<std::int64_t>(sources.size());
  if (num_sources == 0) {
    r.elapsed = std::chrono::steady_clock::now() - t0;
    return r;
  }
  const Strategy strat = opt.strategy;
  const SettleRule rule = opt.settle_rule;

  if (opt.strict_merge) {
    // Coarse grain with an ordered commit: contributions enter the shared
    // accumulators in source order, making the sums bitwise reproducible for
    // any worker count.
    const int team = static_cast<int>(std::min<std::int64_t>(opt.workers, num_sources));
#pragma omp parallel num_threads(team)
    {
      TraversalState st;
      std::vector<double> edge_scratch(opt.compute_edge_bc ? g.m : 0u, 0.0);
#pragma omp for ordered schedule(dynamic, 1)
      for (std::int64_t i = 0; i < num_sources; ++i) {
        const NodeId s = sources[i];
        solve_source(g, s, strat, st, rule);
        if (opt.compute_edge_bc) std::fill(edge_scratch.begin(), edge_scratch.end(), 0.0);
        accumulate_dependencies(g, strat, st, {}, edge_scratch);
#pragma omp ordered
        {
          for (NodeId v = 0; v < g.n; ++v)
            if (v != s) r.node_bc[v] += st.delta[v];
          for (EdgeId e = 0; e < (opt.compute_edge_bc ? g.m : 0u); ++e)
            r.edge_bc[e] += edge_scratch[e];
          r.depth_per_source[s] = st.depth();
        }
      }
    }
  } else if (opt.workers > 1 && num_sources < opt.workers) {
    // Fewer sources than workers: the whole team cooperates on each source.
    FineSolver solver(g, opt.workers);
    TraversalState st;
    for (const NodeId s : sources) {
      solver.solve(s, strat, st, rule);
      solver.accumulate(strat, st, r.node_bc.data(),
                        opt.compute_edge_bc ? r.edge_bc.data() : nullptr);
      r.depth_per_source[s] = st.depth();
    }
  } else {
    // Coarse grain: workers take whole sources and accumulate into private
    // buffers, reduced once at the end.
    const int team = static_cast<int>(std::min<std::int64_t>(opt.workers, num_sources));
    std::vector<std::vector<double>> node_buf(team);
    std::vector<std::vector<double>> edge_buf(team);
#pragma omp parallel num_threads(team)
    {
      const int tid = omp_get_thread_num();
      node_buf[tid].assign(g.n, 0.0);
      if (opt.compute_edge_bc) edge_buf[tid].assign(g.m, 0.0);
      TraversalState st;
#pragma omp for schedule(dynamic, 1)
      for (std::int64_t i = 0; i < num_sources; ++i) {
        const NodeId s = sources[i];
        solve_source(g, s, strat, st, rule);
        accumulate_dependencies(g, strat, st, node_buf[tid], edge_buf[tid]);
        r.depth_per_source[s] = st.depth();
      }
    }
    for (int t = 0; t < team; ++t) {
      for (NodeId v = 0; v < g.n; ++v) r.node_bc[v] += node_buf[t][v];
      if (opt.compute_edge_bc)
        for (EdgeId e = 0; e < g.m; ++e) r.edge_bc[e] += edge_buf[t][e];
    }
  }

  if (opt.normalization == Normalization::Halved) {
    for (double& x : r.node_bc) x *= 0.5;
    for (double& x : r.edge_bc) x *= 0.5;
  }
  r.elapsed = std::chrono::steady_clock::now() - t0;
  return r;
}

}  // namespace wbc
