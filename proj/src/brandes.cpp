#include "wbc/brandes.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <queue>

namespace wbc {

namespace {

inline bool dag_equal(double a, double b, double eps) {
  if (eps <= 0.0) return a == b;
  return std::abs(a - b) <= eps * std::max({1.0, std::abs(a), std::abs(b)});
}

std::vector<NodeId> resolve_sources(const CsrGraph& g,
                                    const std::optional<std::vector<NodeId>>& wanted) {
  std::vector<NodeId> sources;
  if (wanted) {
    for (NodeId s : *wanted)
      if (s >= g.n) throw std::invalid_argument("source id out of range");
    sources = *wanted;
  } else {
    sources.resize(g.n);
    std::iota(sources.begin(), sources.end(), NodeId{0});
  }
  return sources;
}

}  // namespace

BcResult brandes_sequential(const CsrGraph& g, const BrandesOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const NodeId n = g.n;
  BcResult r;
  r.node_bc.assign(n, 0.0);
  if (opt.compute_edge_bc) r.edge_bc.assign(g.m, 0.0);
  const std::vector<NodeId> sources = resolve_sources(g, opt.sources);
  const double eps = opt.equality_epsilon;

  std::vector<double> dist(n), sigma(n), delta(n);
  std::vector<std::uint8_t> settled(n);
  std::vector<NodeId> order;
  order.reserve(n);
  using QueueEntry = std::pair<double, NodeId>;
  std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>> pq;

  for (const NodeId s : sources) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    std::fill(settled.begin(), settled.end(), std::uint8_t{0});
    order.clear();
    dist[s] = 0.0;
    sigma[s] = 1.0;
    pq.push({0.0, s});
    while (!pq.empty()) {
      const auto [dv, v] = pq.top();
      pq.pop();
      if (settled[v]) continue;  // stale heap entry
      settled[v] = 1;
      order.push_back(v);
      for (EdgeId e = g.offsets[v]; e < g.offsets[v + 1]; ++e) {
        const NodeId u = g.adjacency[e];
        if (settled[u]) continue;
        const double nd = dv + g.weights[e];
        if (nd < dist[u]) {
          dist[u] = nd;
          sigma[u] = sigma[v];
          pq.push({nd, u});
        } else if (dag_equal(dist[u], nd, eps)) {
          sigma[u] += sigma[v];
        }
      }
    }
    // Backward sweep in reverse settlement order; DAG successors of w (strictly
    // farther, hence settled later) already carry their final delta.
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const NodeId w = *it;
      const double dw = dist[w];
      const double sw = sigma[w];
      double dsw = 0.0;
      for (EdgeId e = g.offsets[w]; e < g.offsets[w + 1]; ++e) {
        const NodeId v = g.adjacency[e];
        if (dag_equal(dist[v], dw + g.weights[e], eps)) {
          const double c = sw / sigma[v] * (1.0 + delta[v]);
          dsw += c;
          if (opt.compute_edge_bc) r.edge_bc[g.edge_id[e]] += c;
        }
      }
      delta[w] = dsw;
      if (w != s) r.node_bc[w] += dsw;
    }
  }

  if (opt.normalization == Normalization::Halved) {
    for (double& x : r.node_bc) x *= 0.5;
    for (double& x : r.edge_bc) x *= 0.5;
  }
  r.elapsed = std::chrono::steady_clock::now() - t0;
  return r;
}

BcResult brute_force_bc(const CsrGraph& g) {
  if (g.n > 300) throw std::invalid_argument("brute_force_bc: refusing graph with n > 300");
  const auto t0 = std::chrono::steady_clock::now();
  const NodeId n = g.n;

  // All-pairs distances by plain per-source Dijkstra (no path counting here).
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, kInf));
  {
    std::vector<std::uint8_t> settled(n);
    using QueueEntry = std::pair<double, NodeId>;
    std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>> pq;
    for (NodeId s = 0; s < n; ++s) {
      auto& d = dist[s];
      std::fill(settled.begin(), settled.end(), std::uint8_t{0});
      d[s] = 0.0;
      pq.push({0.0, s});
      while (!pq.empty()) {
        const auto [dv, v] = pq.top();
        pq.pop();
        if (settled[v]) continue;
        settled[v] = 1;
        for (EdgeId e = g.offsets[v]; e < g.offsets[v + 1]; ++e) {
          const NodeId u = g.adjacency[e];
          const double nd = dv + g.weights[e];
          if (nd < d[u]) {
            d[u] = nd;
            pq.push({nd, u});
          }
        }
      }
    }
  }

  // Path counts by a separate pass over the finished distances: process
  // targets in increasing distance, summing counts over incoming DAG edges.
  std::vector<std::vector<double>> sigma(n, std::vector<double>(n, 0.0));
  {
    std::vector<NodeId> by_dist(n);
    for (NodeId s = 0; s < n; ++s) {
      const auto& d = dist[s];
      auto& sig = sigma[s];
      std::iota(by_dist.begin(), by_dist.end(), NodeId{0});
      std::sort(by_dist.begin(), by_dist.end(),
                [&](NodeId a, NodeId b) { return d[a] < d[b]; });
      sig[s] = 1.0;
      for (const NodeId v : by_dist) {
        if (v == s || d[v] == kInf) continue;
        for (EdgeId e = g.offsets[v]; e < g.offsets[v + 1]; ++e) {
          const NodeId u = g.adjacency[e];
          if (d[u] + g.weights[e] == d[v]) sig[v] += sig[u];
        }
      }
    }
  }

  // Direct pair-dependency summation over all ordered (s, t) pairs.
  BcResult r;
  r.node_bc.assign(n, 0.0);
  for (NodeId v = 0; v < n; ++v) {
    double acc = 0.0;
    for (NodeId s = 0; s < n; ++s) {
      if (s == v || dist[s][v] == kInf) continue;
      for (NodeId t = 0; t < n; ++t) {
        if (t == s || t == v || dist[s][t] == kInf) continue;
        if (dist[s][v] + dist[v][t] == dist[s][t])
          acc += sigma[s][v] * sigma[v][t] / sigma[s][t];
      }
    }
    r.node_bc[v] = acc;
  }
  r.elapsed = std::chrono::steady_clock::now() - t0;
  return r;
}

}  // namespace wbc
