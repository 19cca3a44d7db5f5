#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "test_util.hpp"
#include "wbc/brandes.hpp"
#include "wbc/engine.hpp"
#include "wbc/generate.hpp"

using namespace wbc;
using testutil::approx_rel;

namespace {

const Strategy kNodeParallel{FrontierMode::ScanAll, 1};
const Strategy kWorkEfficient{FrontierMode::Queue, 1};

std::vector<Strategy> all_strategies() {
  std::vector<Strategy> out;
  for (const FrontierMode mode : {FrontierMode::ScanAll, FrontierMode::Queue})
    for (const int w : {1, 4, 8, 16, 32}) out.push_back({mode, w});
  return out;
}

void check_close(const std::vector<double>& got, const std::vector<double>& want, double rtol) {
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    INFO("index ", i);
    CHECK(approx_rel(got[i], want[i], rtol));
  }
}

std::vector<NodeId> settled_this_round(const TraversalState& st) {
  return {st.order.begin() + st.ends[st.ends_len - 2], st.order.begin() + st.ends[st.ends_len - 1]};
}

}  // namespace

TEST_CASE("strategy names and parsing") {
  CHECK(strategy_name(kNodeParallel) == "np");
  CHECK(strategy_name(kWorkEfficient) == "we");
  CHECK(strategy_name({FrontierMode::ScanAll, 8}) == "warp8");
  CHECK(strategy_name({FrontierMode::Queue, 32}) == "we-warp32");
  CHECK(parse_strategy("np").frontier_mode == FrontierMode::ScanAll);
  CHECK(parse_strategy("we-warp4").lane_width == 4);
  CHECK(parse_strategy("warp").lane_width == 32);
  CHECK(parse_strategy("we-warp").frontier_mode == FrontierMode::Queue);
  CHECK_THROWS_AS(parse_strategy("bogus"), std::invalid_argument);
  CHECK_THROWS_AS(parse_strategy("warp5"), std::invalid_argument);
}

TEST_CASE("init_state matches the contract") {
  const CsrGraph g = testutil::path_graph(3);
  TraversalState st;
  init_state(g, 0, st);
  CHECK(st.dist == std::vector<double>{0.0, kInf, kInf});
  CHECK(st.sigma == std::vector<double>{1.0, 0.0, 0.0});
  CHECK(st.order_len == 1);
  CHECK(st.order[0] == 0);
  CHECK(st.ends_len == 2);
  CHECK(st.ends[0] == 0);
  CHECK(st.ends[1] == 1);
  CHECK(st.threshold == 0.0);
  int unsettled = 0;
  for (NodeId v = 0; v < g.n; ++v) unsettled += st.unsettled[v];
  CHECK(unsettled == 2);  // n - 1
  CHECK_THROWS_AS(init_state(g, 3, st), std::invalid_argument);
}

TEST_CASE("single-vertex graph terminates on the first threshold") {
  CsrGraph g;
  g.n = 1;
  g.offsets = {0, 0};
  g.min_incident_weight = {kInf};
  g.original_id = {0};
  TraversalState st;
  init_state(g, 0, st);
  relax_frontier(g, kWorkEfficient, st);
  CHECK(compute_threshold(g, st) == kInf);
  CHECK(st.depth() == 1);

  solve_source(g, 0, kNodeParallel, st);
  CHECK(st.depth() == 1);
}

TEST_CASE("first relax round on the tie-square graph") {
  const CsrGraph g = testutil::tie_square_graph();
  for (const Strategy& strat : all_strategies()) {
    INFO("strategy ", strategy_name(strat));
    TraversalState st;
    init_state(g, 0, st);
    relax_frontier(g, strat, st);
    CHECK(st.dist == std::vector<double>{0.0, 1.0, 2.0, kInf});
    // v2's single count comes from the direct weight-2 edge.
    CHECK(st.sigma == std::vector<double>{1.0, 1.0, 1.0, 0.0});
    CHECK(compute_threshold(g, st) == 2.0);
  }
}

TEST_CASE("threshold on the three-vertex path after round one") {
  const CsrGraph g = testutil::path_graph(3);
  TraversalState st;
  init_state(g, 0, st);
  relax_frontier(g, kWorkEfficient, st);
  CHECK(compute_threshold(g, st) == 2.0);  // d[v1] + min incident weight
}

TEST_CASE("strict settlement takes only v1 on the tie-square graph") {
  const CsrGraph g = testutil::tie_square_graph();
  TraversalState st;
  init_state(g, 0, st);
  relax_frontier(g, kWorkEfficient, st);
  compute_threshold(g, st);
  const std::size_t count = settle_and_advance(g, kWorkEfficient, st);
  CHECK(count == 1);
  CHECK(settled_this_round(st) == std::vector<NodeId>{1});
}

TEST_CASE("non-strict settlement takes v1 and v2, then undercounts") {
  const CsrGraph g = testutil::tie_square_graph();
  TraversalState st;
  init_state(g, 0, st);
  relax_frontier(g, kWorkEfficient, st);
  compute_threshold(g, st);
  const std::size_t count = settle_and_advance(g, kWorkEfficient, st, SettleRule::LessEqual);
  CHECK(count == 2);
  const std::vector<NodeId> settled = settled_this_round(st);
  CHECK(std::set<NodeId>(settled.begin(), settled.end()) == std::set<NodeId>{1, 2});

  // Full runs: distances stay correct under either rule, but the tie through
  // v1 is missed, so sigma(v3) drops from 2 to 1.
  TraversalState strict, loose;
  solve_source(g, 0, kWorkEfficient, strict, SettleRule::StrictLess);
  solve_source(g, 0, kWorkEfficient, loose, SettleRule::LessEqual);
  CHECK(strict.sigma[3] == 2.0);
  CHECK(loose.sigma[3] == 1.0);
  CHECK(strict.dist == std::vector<double>{0.0, 1.0, 2.0, 3.0});
  CHECK(loose.dist == strict.dist);
}

TEST_CASE("full run on the three-vertex path records levels") {
  const CsrGraph g = testutil::path_graph(3);
  for (const Strategy& strat : {kNodeParallel, kWorkEfficient}) {
    TraversalState st;
    solve_source(g, 0, strat, st);
    CHECK(std::vector<NodeId>(st.order.begin(), st.order.begin() + st.order_len) ==
          std::vector<NodeId>{0, 1, 2});
    CHECK(std::vector<std::uint32_t>(st.ends.begin(), st.ends.begin() + st.ends_len) ==
          std::vector<std::uint32_t>{0, 1, 2, 3});
    CHECK(st.depth() == 3);
  }
}

TEST_CASE("two frontier vertices summing into a shared target") {
  // Diamond: both a and b settle in round one and relax t with equal totals.
  const CsrGraph g = testutil::graph_of({{0, 1, 1}, {0, 2, 1}, {1, 3, 1}, {2, 3, 1}});
  TraversalState st;
  solve_source(g, 0, kWorkEfficient, st);
  CHECK(st.sigma[3] == 2.0);
}

TEST_CASE("accumulate_dependencies per-source slices") {
  SUBCASE("path from the endpoint") {
    const CsrGraph g = testutil::path_graph(3);
    TraversalState st;
    solve_source(g, 0, kWorkEfficient, st);
    std::vector<double> bc(g.n, 0.0);
    accumulate_dependencies(g, kWorkEfficient, st, bc);
    CHECK(st.delta[1] == 1.0);
    CHECK(st.delta[2] == 0.0);
    CHECK(bc == std::vector<double>{0.0, 1.0, 0.0});
  }
  SUBCASE("star from the center gains nothing") {
    const CsrGraph g = testutil::star_graph(4);
    TraversalState st;
    solve_source(g, 0, kNodeParallel, st);
    std::vector<double> bc(g.n, 0.0);
    accumulate_dependencies(g, kNodeParallel, st, bc);
    CHECK(bc == std::vector<double>(4, 0.0));
  }
  SUBCASE("tie-square dependencies from v0") {
    const CsrGraph g = testutil::tie_square_graph();
    TraversalState st;
    solve_source(g, 0, kWorkEfficient, st);
    std::vector<double> bc(g.n, 0.0);
    accumulate_dependencies(g, kWorkEfficient, st, bc);
    // delta = [., 1, 1, 0]: v2 feeds v3 (2/2), v1 feeds v2 (1/2 * 2).
    CHECK(st.delta[1] == 1.0);
    CHECK(st.delta[2] == 1.0);
    CHECK(st.delta[3] == 0.0);
  }
}

TEST_CASE("bc_parallel single-source slice on the path") {
  EngineOptions opt;
  opt.sources = std::vector<NodeId>{0};
  const BcResult r = bc_parallel(testutil::path_graph(3), opt);
  check_close(r.node_bc, {0.0, 1.0, 0.0}, 0.0);
  CHECK(r.depth_per_source[0] == 3);
}

TEST_CASE("bc_parallel equals the enumerated tie-square scores") {
  const CsrGraph g = testutil::tie_square_graph();
  EngineOptions opt;
  opt.compute_edge_bc = true;
  const BcResult r = bc_parallel(g, opt);
  check_close(r.node_bc, {0.0, 2.0, 4.0, 0.0}, 1e-12);
  check_close(r.edge_bc, {4.0, 2.0, 6.0, 6.0}, 1e-12);
  check_close(brute_force_bc(g).node_bc, r.node_bc, 1e-9);
}

TEST_CASE("every strategy and worker count matches the oracle") {
  BrandesOptions oracle_opt;
  oracle_opt.compute_edge_bc = true;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const std::uint32_t n = 15 + static_cast<std::uint32_t>(seed * 9);
    const CsrGraph g = build_csr(testutil::random_edges(n, 2 * n, 10, seed));
    const BcResult oracle = brandes_sequential(g, oracle_opt);
    for (const Strategy& strat : all_strategies()) {
      for (const int workers : {1, 4}) {
        INFO("seed ", seed, " strategy ", strategy_name(strat), " workers ", workers);
        EngineOptions opt;
        opt.strategy = strat;
        opt.workers = workers;
        opt.compute_edge_bc = true;
        const BcResult got = bc_parallel(g, opt);
        for (std::size_t v = 0; v < oracle.node_bc.size(); ++v)
          CHECK(approx_rel(got.node_bc[v], oracle.node_bc[v], 1e-6));
        for (std::size_t e = 0; e < oracle.edge_bc.size(); ++e)
          CHECK(approx_rel(got.edge_bc[e], oracle.edge_bc[e], 1e-6));
      }
    }
  }
}

TEST_CASE("dependency slices on trees count descendants") {
  // In a tree the shortest-path tree is the tree itself, so delta_s(v) is v's
  // descendant count when rooted at s.
  const CsrGraph g = build_csr(testutil::random_tree(60, 7, 42));
  for (const NodeId s : {NodeId{0}, NodeId{7}, NodeId{31}}) {
    EngineOptions opt;
    opt.sources = std::vector<NodeId>{s};
    const BcResult r = bc_parallel(g, opt);
    check_close(r.node_bc, testutil::tree_descendant_counts(g, s), 1e-9);
  }
}

TEST_CASE("single relax step on the path after v1 settles") {
  const CsrGraph g = testutil::path_graph(3);
  TraversalState st;
  init_state(g, 0, st);
  relax_frontier(g, kWorkEfficient, st);
  compute_threshold(g, st);
  settle_and_advance(g, kWorkEfficient, st);  // settles v1 with d=1
  relax_frontier(g, kWorkEfficient, st);
  CHECK(st.dist[2] == 2.0);
  CHECK(st.sigma[2] == 1.0);
  compute_threshold(g, st);
  settle_and_advance(g, kWorkEfficient, st);
  relax_frontier(g, kWorkEfficient, st);
  CHECK(compute_threshold(g, st) == kInf);  // everything settled
}

TEST_CASE("level structure is consistent and level-parallel safe") {
  for (std::uint64_t seed : {3u, 14u, 15u}) {
    const CsrGraph g = build_csr(testutil::random_edges(80, 160, 10, seed));
    TraversalState st;
    solve_source(g, 5, kWorkEfficient, st);

    // ends strictly increasing, covering the settled prefix of order.
    for (std::uint32_t k = 1; k < st.ends_len; ++k) CHECK(st.ends[k] > st.ends[k - 1]);
    CHECK(st.ends[st.ends_len - 1] == st.order_len);
    CHECK(st.depth() <= g.n);

    // Settled set == vertices recorded in order, each exactly once, and the
    // distances match the reference Dijkstra.
    const auto [dist, sigma] = testutil::dijkstra_count_ref(g, 5);
    std::vector<int> seen(g.n, 0);
    for (std::uint32_t i = 0; i < st.order_len; ++i) ++seen[st.order[i]];
    for (NodeId v = 0; v < g.n; ++v) {
      CHECK(seen[v] == (dist[v] < kInf ? 1 : 0));
      CHECK(seen[v] == (st.unsettled[v] ? 0 : 1));
      CHECK(st.dist[v] == dist[v]);
      CHECK(st.sigma[v] == sigma[v]);
    }

    // No DAG edge stays inside one level: successors live strictly deeper.
    std::vector<std::uint32_t> level(g.n, 0);
    for (std::uint32_t k = 1; k < st.ends_len; ++k)
      for (std::uint32_t i = st.ends[k - 1]; i < st.ends[k]; ++i) level[st.order[i]] = k;
    for (NodeId w = 0; w < g.n; ++w) {
      if (st.unsettled[w]) continue;
      for (EdgeId e = g.offsets[w]; e < g.offsets[w + 1]; ++e) {
        const NodeId v = g.adjacency[e];
        if (!st.unsettled[v] && st.dist[v] == st.dist[w] + g.weights[e])
          CHECK(level[v] > level[w]);
      }
    }
  }
}

TEST_CASE("parallel single-source run resolves shared-target races") {
  // Hub pattern: 64 middle vertices settle together, then all relax the target
  // in the same round. Pushing the source edges first keeps dense ids aligned
  // with the raw ids.
  EdgeList el;
  for (RawId i = 1; i <= 64; ++i) el.entries.push_back({0, i, 1.0});
  for (RawId i = 1; i <= 64; ++i) el.entries.push_back({i, 65, 1.0});
  const CsrGraph g = build_csr(el);
  REQUIRE(g.original_id[65] == 65);
  const NodeId target = 65;
  const auto [dist, sigma] = testutil::dijkstra_count_ref(g, 0);
  REQUIRE(sigma[target] == 64.0);
  const auto strategies = all_strategies();
  for (int rep = 0; rep < 20; ++rep) {
    const Strategy strat = strategies[rep % strategies.size()];
    TraversalState st;
    solve_source_parallel(g, 0, strat, 4, st);
    INFO("rep ", rep, " strategy ", strategy_name(strat));
    CHECK(st.sigma[target] == 64.0);
    CHECK(st.dist[target] == 2.0);
    CHECK(st.depth() == 3);
  }
}

TEST_CASE("fine-grained path matches the oracle end to end") {
  const CsrGraph g = build_csr(testutil::random_edges(70, 140, 10, 99));
  const BcResult oracle = brandes_sequential(g);
  // One source at a time with more workers than sources forces team solves.
  for (const NodeId s : {NodeId{0}, NodeId{13}}) {
    EngineOptions opt;
    opt.sources = std::vector<NodeId>{s};
    opt.workers = 4;
    opt.strategy = {FrontierMode::Queue, 4};
    opt.compute_edge_bc = true;
    const BcResult got = bc_parallel(g, opt);
    BrandesOptions bopt;
    bopt.sources = std::vector<NodeId>{s};
    bopt.compute_edge_bc = true;
    const BcResult want = brandes_sequential(g, bopt);
    for (std::size_t v = 0; v < want.node_bc.size(); ++v)
      CHECK(approx_rel(got.node_bc[v], want.node_bc[v], 1e-9));
    for (std::size_t e = 0; e < want.edge_bc.size(); ++e)
      CHECK(approx_rel(got.edge_bc[e], want.edge_bc[e], 1e-9));
  }
}

TEST_CASE("strict merge is bitwise reproducible across worker counts") {
  const CsrGraph g = build_csr(testutil::random_edges(60, 120, 10, 7));
  EngineOptions opt;
  opt.strict_merge = true;
  opt.compute_edge_bc = true;
  opt.strategy = {FrontierMode::Queue, 4};
  opt.workers = 1;
  const BcResult first = bc_parallel(g, opt);
  for (const int workers : {1, 2, 4}) {
    opt.workers = workers;
    const BcResult again = bc_parallel(g, opt);
    CHECK(again.node_bc == first.node_bc);
    CHECK(again.edge_bc == first.edge_bc);
  }
}

TEST_CASE("worker count never changes scores beyond summation order") {
  const CsrGraph g = build_csr(testutil::random_edges(50, 100, 10, 21));
  EngineOptions opt;
  const BcResult one = bc_parallel(g, opt);
  opt.workers = 4;
  const BcResult four = bc_parallel(g, opt);
  for (std::size_t v = 0; v < one.node_bc.size(); ++v)
    CHECK(approx_rel(one.node_bc[v], four.node_bc[v], 1e-9));
}

TEST_CASE("depth per source matches the recorded rounds") {
  const CsrGraph g = testutil::path_graph(3);
  const BcResult r = bc_parallel(g, {});
  CHECK(r.depth_per_source == std::vector<std::uint32_t>{3, 2, 3});
}

TEST_CASE("argument validation") {
  const CsrGraph g = testutil::path_graph(3);
  EngineOptions opt;
  opt.strategy.lane_width = 5;
  CHECK_THROWS_AS(bc_parallel(g, opt), std::invalid_argument);
  opt.strategy.lane_width = 1;
  opt.workers = 0;
  CHECK_THROWS_AS(bc_parallel(g, opt), std::invalid_argument);
  opt.workers = 1;
  opt.sources = std::vector<NodeId>{7};
  CHECK_THROWS_AS(bc_parallel(g, opt), std::invalid_argument);
}

TEST_CASE("empty graph and empty source set") {
  const CsrGraph empty = build_csr(EdgeList{});
  CHECK(bc_parallel(empty, {}).node_bc.empty());
  EngineOptions opt;
  opt.sources = std::vector<NodeId>{};
  const BcResult r = bc_parallel(testutil::path_graph(3), opt);
  CHECK(r.node_bc == std::vector<double>(3, 0.0));
}
