// Sensitive distance / reachability oracle driver.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "sens/io.hpp"

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw sens::ParseError(path + ": cannot open");
  return in;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sensitive distance and reachability oracle"};
  std::string mode = "distance", graph, updates, queries, bench;
  sens::RunConfig cfg;
  app.add_option("--mode", mode, "distance or reach")->check(CLI::IsMember({"distance", "reach"}));
  app.add_option("--mu", cfg.mu, "preprocessing/query trade-off in [0, 1]")->check(CLI::Range(0.0, 1.0));
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--prime", cfg.prime, "field modulus (decimal) or auto");
  app.add_option("--graph", graph, "graph file")->required();
  app.add_option("--updates", updates, "update file")->required();
  app.add_option("--queries", queries, "query file")->required();
  app.add_flag("--verify", cfg.verify, "check answers against brute force");
  app.add_option("--bench", bench, "write per-phase CSV to this path");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : sens::kExitParse;
  }
  cfg.mode = mode == "reach" ? sens::Mode::Reach : sens::Mode::Distance;
  cfg.bench = !bench.empty();

  sens::RunResult r;
  try {
    auto gin = open_input(graph);
    const sens::GraphSpec spec = sens::parse_graph(gin, graph);
    auto uin = open_input(updates);
    const sens::UpdateBatch batch = sens::parse_updates(uin, spec, cfg.mode, updates);
    auto qin = open_input(queries);
    const sens::QueryList q = sens::parse_queries(qin, spec, queries);
    r = sens::run_pipeline(cfg, spec, batch, q);
  } catch (const sens::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return sens::kExitParse;
  }

  for (const std::string& line : r.lines) std::cout << line << '\n';
  if (r.exit_code != sens::kExitOk) {
    std::cerr << "error: " << r.message << '\n';
    return r.exit_code;
  }
  if (cfg.bench) {
    std::ofstream out(bench);
    if (!out) {
      std::cerr << "error: cannot write " << bench << '\n';
      return sens::kExitParse;
    }
    sens::write_bench_csv(out, r.bench);
  }
  return sens::kExitOk;
}
