#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

#ifndef WBC_CLI_PATH
#error "WBC_CLI_PATH must point at the built binary"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

int run_counter = 0;

RunResult run_cli(const std::string& args) {
  const std::string tag = "/tmp/wbc_cli_test_" + std::to_string(getpid()) + "_" +
                          std::to_string(run_counter++);
  const std::string out = tag + ".out";
  const std::string err = tag + ".err";
  const std::string cmd = std::string(WBC_CLI_PATH) + " " + args + " >" + out + " 2>" + err;
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(status);
  r.out = slurp(out);
  r.err = slurp(err);
  std::remove(out.c_str());
  std::remove(err.c_str());
  return r;
}

std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path = "/tmp/wbc_cli_test_" + std::to_string(getpid()) + "_" + name;
  std::ofstream f(path);
  f << content;
  return path;
}

const std::string kP3 = write_temp("p3.txt", "0 1 1\n1 2 1\n");

}  // namespace

TEST_CASE("compute on the three-vertex path") {
  const RunResult r = run_cli("compute " + kP3 + " --strategy we-warp --lane-width 4");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "0\t0\n1\t2\n2\t0\n");
  CHECK(r.err.find("n=3 m=2") != std::string::npos);
  CHECK(r.err.find("we-warp4") != std::string::npos);
}

TEST_CASE("compute with halved normalization") {
  const RunResult r = run_cli("compute " + kP3 + " --normalize half --strategy we");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "0\t0\n1\t1\n2\t0\n");
}

TEST_CASE("compute with the sequential baseline strategy") {
  const RunResult r = run_cli("compute " + kP3 + " --strategy sequential");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "0\t0\n1\t2\n2\t0\n");
}

TEST_CASE("unit-weights flag overrides stored weights") {
  const std::string weighted = write_temp("p3w.txt", "0 1 5\n1 2 9\n");
  const RunResult r = run_cli("compute " + weighted + " --unit-weights --strategy np");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "0\t0\n1\t2\n2\t0\n");
}

TEST_CASE("compute writes edge scores after node scores") {
  const RunResult r = run_cli("compute " + kP3 + " --edge-bc --strategy we");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "0\t0\n1\t2\n2\t0\n0\t1\t4\n1\t2\t4\n");
}

TEST_CASE("compute honors the output file and reports original ids") {
  const std::string input = write_temp("sparse_ids.txt", "900 7 1\n7 30 1\n");
  const std::string out = write_temp("out.tsv", "");
  const RunResult r = run_cli("compute " + input + " -o " + out + " --strategy we");
  CHECK(r.exit_code == 0);
  CHECK(slurp(out) == "7\t2\n30\t0\n900\t0\n");
}

TEST_CASE("compute failure modes exit with 2") {
  CHECK(run_cli("compute /tmp/definitely_missing_wbc.txt").exit_code == 2);
  const std::string bad = write_temp("bad.txt", "0 1 1\nnot numbers\n");
  const RunResult r = run_cli("compute " + bad);
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("line 2") != std::string::npos);
  CHECK(run_cli("compute " + kP3 + " --strategy bogus").exit_code == 2);
  CHECK(run_cli("compute " + kP3 + " --lane-width 5").exit_code == 2);
  CHECK(run_cli("compute " + kP3 + " --unknown-flag").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);
}

TEST_CASE("generate er writes the requested edges deterministically") {
  const std::string out1 = write_temp("gen1.txt", "");
  const std::string out2 = write_temp("gen2.txt", "");
  const std::string flags = "generate --model er --nodes 16 --avg-degree 4 --seed 7 -o ";
  CHECK(run_cli(flags + out1).exit_code == 0);
  CHECK(run_cli(flags + out2).exit_code == 0);
  const std::string a = slurp(out1);
  CHECK(a == slurp(out2));  // byte-identical rerun
  int data_lines = 0;
  std::istringstream lines(a);
  std::string line;
  bool saw_seed = false;
  while (std::getline(lines, line)) {
    if (line.rfind('#', 0) == 0) {
      saw_seed = saw_seed || line.find("seed=7") != std::string::npos;
      continue;
    }
    ++data_lines;
  }
  CHECK(data_lines == 32);
  CHECK(saw_seed);
}

TEST_CASE("generate kronecker keeps ids inside 2^scale") {
  const std::string out = write_temp("gen_kron.txt", "");
  CHECK(run_cli("generate --model kronecker --scale 4 --avg-degree 4 --seed 3 -o " + out)
            .exit_code == 0);
  std::istringstream lines(slurp(out));
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    unsigned long long u, v;
    double w;
    fields >> u >> v >> w;
    CHECK(u < 16);
    CHECK(v < 16);
    CHECK(w >= 1.0);
    CHECK(w <= 10.0);
  }
}

TEST_CASE("generate validates the model") {
  CHECK(run_cli("generate --model banana --avg-degree 4").exit_code == 2);
  CHECK(run_cli("generate --model er --avg-degree 4").exit_code == 2);  // missing --nodes
}

TEST_CASE("stats prints the pinned format") {
  const std::string tri = write_temp("tri.txt", "0 1 1\n1 2 1\n0 2 1\n");
  const RunResult r = run_cli("stats " + tri);
  CHECK(r.exit_code == 0);
  CHECK(r.out == "n=3 m=3 max_degree=2 avg_degree=2.0\n");
}

TEST_CASE("stats with depth sampling") {
  const RunResult r = run_cli("stats " + kP3 + " --depth --seed 1");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("avg_depth=") != std::string::npos);
}

TEST_CASE("bench emits one CSV row per strategy plus the baseline") {
  const std::string graph = write_temp("bench_graph.txt", [] {
    std::ostringstream g;
    for (int i = 0; i < 63; ++i) g << i << ' ' << i + 1 << ' ' << 1 + i % 7 << '\n';
    return g.str();
  }());
  const RunResult r =
      run_cli("bench " + graph + " --strategies np,we,warp32,we-warp32 --reps 1 --workers 2");
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string line;
  int rows = 0;
  bool header_ok = false;
  while (std::getline(lines, line)) {
    if (rows == 0) header_ok = line.find("speedup_vs_baseline") != std::string::npos;
    ++rows;
  }
  CHECK(rows == 6);  // header + baseline + 4 strategies
  CHECK(header_ok);
}

TEST_CASE("bench rejects unknown strategies with exit 2") {
  CHECK(run_cli("bench " + kP3 + " --strategies np,zigzag").exit_code == 2);
}
