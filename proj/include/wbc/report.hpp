#pragma once

#include <string>

#include "wbc/graph.hpp"
#include "wbc/result.hpp"

namespace wbc {

/// "original_id<TAB>score" per vertex, one line each, sorted by original id.
std::string format_node_bc_tsv(const CsrGraph& g, const BcResult& r);

/// "u<TAB>v<TAB>score" per canonical edge in edge-id order, original ids.
std::string format_edge_bc_tsv(const CsrGraph& g, const BcResult& r);

}  // namespace wbc
