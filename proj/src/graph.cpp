#include "wbc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace wbc {

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

bool parse_raw_id(const std::string& tok, RawId& out) {
  if (tok.empty() || tok[0] == '-' || tok[0] == '+') return false;
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(tok.c_str(), &end, 10);
  if (errno != 0 || end != tok.c_str() + tok.size()) return false;
  out = v;
  return true;
}

bool parse_weight(const std::string& tok, double& out) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (errno != 0 || end != tok.c_str() + tok.size() || !std::isfinite(v)) return false;
  out = v;
  return true;
}

}  // namespace

EdgeList parse_edge_list(std::istream& in, double default_weight) {
  if (!(default_weight > 0.0))
    throw std::invalid_argument("parse_edge_list: default weight must be positive");
  EdgeList out;
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> tok;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    tok.clear();
    std::istringstream fields(line);
    std::string t;
    while (fields >> t) tok.push_back(t);
    if (tok.size() < 2 || tok.size() > 3)
      throw ParseError(lineno, "expected 'u v' or 'u v w', got " + std::to_string(tok.size()) +
                                   " fields");
    RawId u, v;
    if (!parse_raw_id(tok[0], u)) throw ParseError(lineno, "bad node id '" + tok[0] + "'");
    if (!parse_raw_id(tok[1], v)) throw ParseError(lineno, "bad node id '" + tok[1] + "'");
    double w = default_weight;
    if (tok.size() == 3 && !parse_weight(tok[2], w))
      throw ParseError(lineno, "bad weight '" + tok[2] + "'");
    if (!(w > 0.0)) throw ParseError(lineno, "non-positive weight " + tok[tok.size() - 1]);
    if (u == v) {
      ++out.self_loops_dropped;
      continue;
    }
    out.entries.push_back({u, v, w});
  }
  return out;
}

CsrGraph build_csr(const EdgeList& edges) {
  CsrGraph g;
  std::unordered_map<RawId, NodeId> dense;
  dense.reserve(edges.entries.size() * 2);
  const auto intern = [&](RawId raw) {
    const auto [it, inserted] = dense.try_emplace(raw, static_cast<NodeId>(g.original_id.size()));
    if (inserted) g.original_id.push_back(raw);
    return it->second;
  };

  // Deduplicate undirected edges, keeping the minimum weight and the
  // first-appearance orientation.
  std::unordered_map<std::uint64_t, EdgeId> seen;
  seen.reserve(edges.entries.size());
  std::vector<double> edge_w;
  for (const WeightedEdge& e : edges.entries) {
    const NodeId du = intern(e.u);
    const NodeId dv = intern(e.v);
    if (du == dv) continue;  // validated lists have none
    const auto [a, b] = std::minmax(du, dv);
    const std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | b;
    const auto [it, inserted] = seen.try_emplace(key, static_cast<EdgeId>(g.edge_u.size()));
    if (inserted) {
      g.edge_u.push_back(du);
      g.edge_v.push_back(dv);
      edge_w.push_back(e.w);
    } else {
      edge_w[it->second] = std::min(edge_w[it->second], e.w);
      ++g.merged_duplicates;
    }
  }

  g.n = static_cast<NodeId>(g.original_id.size());
  g.m = static_cast<EdgeId>(g.edge_u.size());
  g.offsets.assign(g.n + 1, 0);
  for (EdgeId e = 0; e < g.m; ++e) {
    ++g.offsets[g.edge_u[e] + 1];
    ++g.offsets[g.edge_v[e] + 1];
  }
  for (NodeId v = 0; v < g.n; ++v) g.offsets[v + 1] += g.offsets[v];

  g.adjacency.resize(2 * static_cast<std::size_t>(g.m));
  g.weights.resize(2 * static_cast<std::size_t>(g.m));
  g.edge_id.resize(2 * static_cast<std::size_t>(g.m));
  g.min_incident_weight.assign(g.n, kInf);
  std::vector<EdgeId> cursor(g.offsets.begin(), g.offsets.begin() + g.n);
  const auto emit = [&](NodeId from, NodeId to, double w, EdgeId id) {
    const EdgeId slot = cursor[from]++;
    g.adjacency[slot] = to;
    g.weights[slot] = w;
    g.edge_id[slot] = id;
    g.min_incident_weight[from] = std::min(g.min_incident_weight[from], w);
  };
  for (EdgeId e = 0; e < g.m; ++e) {
    emit(g.edge_u[e], g.edge_v[e], edge_w[e], e);
    emit(g.edge_v[e], g.edge_u[e], edge_w[e], e);
  }
  return g;
}

GraphStats graph_stats(const CsrGraph& g) {
  GraphStats s;
  s.n = g.n;
  s.m = g.m;
  for (NodeId v = 0; v < g.n; ++v) s.max_degree = std::max(s.max_degree, g.degree(v));
  s.avg_degree = g.n ? 2.0 * static_cast<double>(g.m) / static_cast<double>(g.n) : 0.0;
  return s;
}

EdgeList to_edge_list(const CsrGraph& g) {
  // Recover canonical weights from the slots (each edge appears twice with the
  // same weight).
  std::vector<double> edge_w(g.m, 0.0);
  for (std::size_t slot = 0; slot < g.weights.size(); ++slot)
    edge_w[g.edge_id[slot]] = g.weights[slot];
  EdgeList out;
  out.entries.reserve(g.m);
  for (EdgeId e = 0; e < g.m; ++e)
    out.entries.push_back({g.original_id[g.edge_u[e]], g.original_id[g.edge_v[e]], edge_w[e]});
  return out;
}

void write_edge_list(std::ostream& out, const EdgeList& edges,
                     std::span<const std::string> header) {
  for (const std::string& h : header) out << "# " << h << '\n';
  char buf[64];
  for (const WeightedEdge& e : edges.entries) {
    std::snprintf(buf, sizeof buf, "%.17g", e.w);
    out << e.u << ' ' << e.v << ' ' << buf << '\n';
  }
}

}  // namespace wbc
