// wbc: betweenness centrality on weighted undirected graphs.
//
// Subcommands: compute, generate, bench, stats. Data goes to stdout or
// --output; diagnostics go to stderr. Exit status 0 means the requested
// artifact was fully written; bad input or arguments exit with 2.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "wbc/bench.hpp"
#include "wbc/brandes.hpp"
#include "wbc/engine.hpp"
#include "wbc/generate.hpp"
#include "wbc/graph.hpp"
#include "wbc/report.hpp"

namespace {

struct CommonIn {
  std::string input;
  double default_weight = 1.0;
  bool unit_weights = false;
};

struct ComputeCfg {
  CommonIn in;
  std::string output;
  std::string strategy = "we-warp32";
  int lane_width = 0;  // 0 = keep the strategy token's width
  int workers = static_cast<int>(std::thread::hardware_concurrency());
  bool edge_bc = false;
  std::string normalize = "raw";
  bool strict = false;
  std::uint64_t sources_sample = 0;
  std::optional<std::uint64_t> seed;
};

struct GenerateCfg {
  std::string model;
  std::uint64_t nodes = 0;
  int scale = 0;
  double avg_degree = 0.0;
  std::optional<std::uint64_t> seed;
  int weight_lo = 1;
  int weight_hi = 10;
  std::vector<double> initiator;
  std::string output;
};

struct BenchCfg {
  CommonIn in;
  std::string strategies = "np,we,warp32,we-warp32";
  int workers = static_cast<int>(std::thread::hardware_concurrency());
  int reps = 3;
  std::uint64_t sources_sample = 0;
  std::optional<std::uint64_t> seed;
  std::string output;
};

struct StatsCfg {
  CommonIn in;
  bool depth = false;
  std::uint64_t sources_sample = 64;
  std::optional<std::uint64_t> seed;
};

std::uint64_t ensure_seed(std::optional<std::uint64_t>& seed) {
  if (!seed) {
    seed = std::random_device{}();
    std::cerr << "seed: " << *seed << " (drawn; pass --seed to reproduce)\n";
  }
  return *seed;
}

wbc::CsrGraph load_graph(const CommonIn& in) {
  std::ifstream f(in.input);
  if (!f) throw std::runtime_error("cannot open input file '" + in.input + "'");
  wbc::EdgeList edges = wbc::parse_edge_list(f, in.default_weight);
  if (in.unit_weights)
    for (wbc::WeightedEdge& e : edges.entries) e.w = 1.0;
  return wbc::build_csr(edges);
}

// Writes `text` to path ("" or "-" = stdout). Returns false on I/O failure.
bool write_artifact(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return static_cast<bool>(std::cout);
  }
  std::ofstream f(path);
  if (!f) return false;
  f << text;
  f.flush();
  return static_cast<bool>(f);
}

std::string fmt_avg(double x) {
  char buf[48];
  if (x == static_cast<std::uint64_t>(x))
    std::snprintf(buf, sizeof buf, "%.1f", x);
  else
    std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

std::optional<std::vector<wbc::NodeId>> sample_or_all(const wbc::CsrGraph& g, std::uint64_t k,
                                                      std::optional<std::uint64_t>& seed) {
  if (k == 0 || k >= g.n) return std::nullopt;
  return wbc::sample_sources(g.n, static_cast<wbc::NodeId>(k), ensure_seed(seed));
}

int run_compute(ComputeCfg& cfg) {
  const wbc::CsrGraph g = load_graph(cfg.in);
  const wbc::Normalization norm =
      cfg.normalize == "half" ? wbc::Normalization::Halved : wbc::Normalization::Raw;
  wbc::BcResult result;
  std::string strat_label = cfg.strategy;
  if (cfg.strategy == "seq" || cfg.strategy == "sequential") {
    strat_label = "sequential";
    wbc::BrandesOptions opt;
    opt.compute_edge_bc = cfg.edge_bc;
    opt.normalization = norm;
    if (auto sub = sample_or_all(g, cfg.sources_sample, cfg.seed)) opt.sources = *sub;
    result = wbc::brandes_sequential(g, opt);
  } else {
    wbc::EngineOptions opt;
    opt.strategy = wbc::parse_strategy(cfg.strategy);
    if (cfg.lane_width != 0) {
      opt.strategy.lane_width = cfg.lane_width;
      if (!wbc::valid_lane_width(cfg.lane_width))
        throw std::invalid_argument("invalid --lane-width (expected 1, 4, 8, 16 or 32)");
    }
    strat_label = wbc::strategy_name(opt.strategy);
    opt.workers = std::max(1, cfg.workers);
    opt.compute_edge_bc = cfg.edge_bc;
    opt.normalization = norm;
    opt.strict_merge = cfg.strict;
    if (auto sub = sample_or_all(g, cfg.sources_sample, cfg.seed)) opt.sources = *sub;
    result = wbc::bc_parallel(g, opt);
  }
  std::string text = wbc::format_node_bc_tsv(g, result);
  if (cfg.edge_bc) text += wbc::format_edge_bc_tsv(g, result);
  if (!write_artifact(cfg.output, text))
    throw std::runtime_error("failed to write output '" + cfg.output + "'");
  std::cerr << "n=" << g.n << " m=" << g.m << " strategy=" << strat_label
            << " wall_time=" << result.elapsed.count() << "s\n";
  return 0;
}

int run_generate(GenerateCfg& cfg) {
  const std::uint64_t seed = ensure_seed(cfg.seed);
  wbc::EdgeList edges;
  std::vector<std::string> header;
  std::uint64_t requested = 0;
  if (cfg.model == "er") {
    if (cfg.nodes == 0) throw std::invalid_argument("--model er requires --nodes");
    requested = static_cast<std::uint64_t>(std::llround(cfg.nodes * cfg.avg_degree / 2.0));
    edges = wbc::gen_er(cfg.nodes, cfg.avg_degree, seed);
    std::ostringstream params;
    params << "model=er nodes=" << cfg.nodes << " avg_degree=" << cfg.avg_degree
         << " seed=" << seed << " weight_lo=" << cfg.weight_lo << " weight_hi=" << cfg.weight_hi;
    header.push_back(params.str());
  } else if (cfg.model == "kronecker") {
    if (cfg.scale == 0) throw std::invalid_argument("--model kronecker requires --scale");
    wbc::KroneckerInitiator init;
    if (!cfg.initiator.empty()) {
      if (cfg.initiator.size() != 4)
        throw std::invalid_argument("--initiator needs exactly 4 values a,b,c,d");
      init = {cfg.initiator[0], cfg.initiator[1], cfg.initiator[2], cfg.initiator[3]};
    }
    requested = static_cast<std::uint64_t>(
        std::llround(static_cast<double>(1ULL << cfg.scale) * cfg.avg_degree / 2.0));
    edges = wbc::gen_kronecker(cfg.scale, cfg.avg_degree, seed, init);
    std::ostringstream params;
    params << "model=kronecker scale=" << cfg.scale << " avg_degree=" << cfg.avg_degree
         << " seed=" << seed << " initiator=" << init.a << ',' << init.b << ',' << init.c << ','
         << init.d << " weight_lo=" << cfg.weight_lo << " weight_hi=" << cfg.weight_hi;
    header.push_back(params.str());
  } else {
    throw std::invalid_argument("--model must be er or kronecker");
  }
  if (edges.entries.size() < requested)
    std::cerr << "warning: achieved " << edges.entries.size() << " of " << requested
              << " requested edges (resampling cap)\n";
  edges = wbc::assign_weights(std::move(edges), cfg.weight_lo, cfg.weight_hi, seed);
  std::ostringstream counts;
  counts << "edges_requested=" << requested << " edges_achieved=" << edges.entries.size();
  header.push_back(counts.str());
  std::ostringstream body;
  wbc::write_edge_list(body, edges, header);
  if (!write_artifact(cfg.output, body.str()))
    throw std::runtime_error("failed to write output '" + cfg.output + "'");
  return 0;
}

int run_bench(BenchCfg& cfg) {
  const wbc::CsrGraph g = load_graph(cfg.in);
  wbc::BenchOptions opt;
  opt.strategies.clear();
  std::istringstream toks(cfg.strategies);
  std::string tok;
  while (std::getline(toks, tok, ','))
    if (!tok.empty()) opt.strategies.push_back(tok);
  opt.workers = std::max(1, cfg.workers);
  opt.reps = cfg.reps;
  if (auto sub = sample_or_all(g, cfg.sources_sample, cfg.seed)) opt.sources = *sub;
  const auto records = wbc::run_bench(g, cfg.in.input, opt);
  if (!write_artifact(cfg.output, wbc::write_csv(records)))
    throw std::runtime_error("failed to write output '" + cfg.output + "'");
  return 0;
}

int run_stats(StatsCfg& cfg) {
  const wbc::CsrGraph g = load_graph(cfg.in);
  const wbc::GraphStats s = wbc::graph_stats(g);
  std::ostringstream line;
  line << "n=" << s.n << " m=" << s.m << " max_degree=" << s.max_degree
       << " avg_degree=" << fmt_avg(s.avg_degree);
  if (cfg.depth && g.n > 0) {
    std::vector<wbc::NodeId> sources;
    if (auto sub = sample_or_all(g, cfg.sources_sample, cfg.seed))
      sources = *sub;
    else
      for (wbc::NodeId v = 0; v < g.n; ++v) sources.push_back(v);
    wbc::TraversalState st;
    const wbc::Strategy strat{wbc::FrontierMode::Queue, 1};
    double sum = 0.0;
    for (const wbc::NodeId src : sources) {
      wbc::solve_source(g, src, strat, st);
      sum += st.depth();
    }
    line << " avg_depth=" << fmt_avg(sum / static_cast<double>(sources.size()));
  }
  line << '\n';
  if (!write_artifact("", line.str())) throw std::runtime_error("failed to write stats");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"betweenness centrality on weighted undirected graphs"};
  app.require_subcommand(1);

  ComputeCfg ccfg;
  CLI::App* compute = app.add_subcommand("compute", "compute node (and edge) betweenness");
  compute->add_option("input", ccfg.in.input, "edge-list file")->required();
  compute->add_option("--output,-o", ccfg.output, "output path (default stdout)");
  compute->add_option("--strategy", ccfg.strategy,
                      "np | we | warpW | we-warpW | sequential (default we-warp32)");
  compute->add_option("--lane-width", ccfg.lane_width, "override lane width (1,4,8,16,32)");
  compute->add_option("--workers", ccfg.workers, "worker threads (default: logical cores)");
  compute->add_flag("--edge-bc", ccfg.edge_bc, "also emit per-edge scores");
  compute->add_option("--normalize", ccfg.normalize, "raw | half (default raw)")
      ->check(CLI::IsMember({"raw", "half"}));
  compute->add_flag("--unit-weights", ccfg.in.unit_weights, "treat every weight as 1");
  compute->add_flag("--strict", ccfg.strict, "bitwise-reproducible accumulation order");
  compute->add_option("--sources-sample", ccfg.sources_sample,
                      "run only K sampled sources (0 = all)");
  compute->add_option("--seed", ccfg.seed, "seed for source sampling");
  compute->add_option("--default-weight", ccfg.in.default_weight,
                      "weight for two-field input lines (default 1)");

  GenerateCfg gcfg;
  CLI::App* generate = app.add_subcommand("generate", "write a synthetic edge-list file");
  generate->add_option("--model", gcfg.model, "er | kronecker")->required();
  generate->add_option("--nodes", gcfg.nodes, "vertex count (er)");
  generate->add_option("--scale", gcfg.scale, "log2 vertex count (kronecker)");
  generate->add_option("--avg-degree", gcfg.avg_degree, "target average degree")->required();
  generate->add_option("--seed", gcfg.seed, "generation seed (drawn and printed if absent)");
  generate->add_option("--weight-lo", gcfg.weight_lo, "minimum integer weight (default 1)");
  generate->add_option("--weight-hi", gcfg.weight_hi, "maximum integer weight (default 10)");
  generate->add_option("--initiator", gcfg.initiator, "kronecker quadrant weights a,b,c,d")
      ->delimiter(',');
  generate->add_option("--output,-o", gcfg.output, "output path (default stdout)");

  BenchCfg bcfg;
  CLI::App* bench = app.add_subcommand("bench", "timed strategy comparison, CSV output");
  bench->add_option("input", bcfg.in.input, "edge-list file")->required();
  bench->add_option("--strategies", bcfg.strategies, "comma list (default np,we,warp32,we-warp32)");
  bench->add_option("--workers", bcfg.workers, "worker threads (default: logical cores)");
  bench->add_option("--reps", bcfg.reps, "repetitions per strategy (default 3)");
  bench->add_option("--sources-sample", bcfg.sources_sample,
                    "bench on K sampled sources (0 = all)");
  bench->add_option("--seed", bcfg.seed, "seed for source sampling");
  bench->add_flag("--unit-weights", bcfg.in.unit_weights, "treat every weight as 1");
  bench->add_option("--default-weight", bcfg.in.default_weight, "weight for two-field lines");
  bench->add_option("--output,-o", bcfg.output, "CSV path (default stdout)");

  StatsCfg scfg;
  CLI::App* stats = app.add_subcommand("stats", "print graph statistics");
  stats->add_option("input", scfg.in.input, "edge-list file")->required();
  stats->add_flag("--depth", scfg.depth, "also report average settlement depth");
  stats->add_option("--sources-sample", scfg.sources_sample,
                    "depth sample size (default 64, 0 = all)");
  stats->add_option("--seed", scfg.seed, "seed for depth sampling");
  stats->add_option("--default-weight", scfg.in.default_weight, "weight for two-field lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (compute->parsed()) return run_compute(ccfg);
    if (generate->parsed()) return run_generate(gcfg);
    if (bench->parsed()) return run_bench(bcfg);
    if (stats->parsed()) return run_stats(scfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
