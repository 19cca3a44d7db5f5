#include "wbc/report.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace wbc {

namespace {

void append_score(std::string& out, double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  out += buf;
}

}  // namespace

std::string format_node_bc_tsv(const CsrGraph& g, const BcResult& r) {
  std::vector<NodeId> by_original(g.n);
  std::iota(by_original.begin(), by_original.end(), NodeId{0});
  std::sort(by_original.begin(), by_original.end(),
            [&](NodeId a, NodeId b) { return g.original_id[a] < g.original_id[b]; });
  std::string out;
  for (const NodeId v : by_original) {
    out += std::to_string(g.original_id[v]);
    out += '\t';
    append_score(out, r.node_bc[v]);
    out += '\n';
  }
  return out;
}

std::string format_edge_bc_tsv(const CsrGraph& g, const BcResult& r) {
  std::string out;
  for (EdgeId e = 0; e < g.m; ++e) {
    out += std::to_string(g.original_id[g.edge_u[e]]);
    out += '\t';
    out += std::to_string(g.original_id[g.edge_v[e]]);
    out += '\t';
    append_score(out, r.edge_bc[e]);
    out += '\n';
  }
  return out;
}

}  // namespace wbc
