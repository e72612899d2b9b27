#pragma once

// Input formats and the preprocess -> update -> query pipeline.
//
//   graph:   p dgraph <n> <m> <W>  followed by m lines  e <u> <v> <w>
//   updates: add <u> <v> <w> | del <u> <v> | rew <u> <v> <w> | delnode <v>
//   queries: <u> <v>
//
// Blank lines are ignored. Nodes are 1-based.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "sens/graph.hpp"

namespace sens {

enum class Mode { Distance, Reach };

using QueryList = std::vector<std::pair<std::size_t, std::size_t>>;

GraphSpec parse_graph(std::istream& in, const std::string& name = "graph");
/// Parses and validates against `spec`; delnode is rejected in distance mode.
UpdateBatch parse_updates(std::istream& in, const GraphSpec& spec, Mode mode, const std::string& name = "updates");
QueryList parse_queries(std::istream& in, const GraphSpec& spec, const std::string& name = "queries");

struct RunConfig {
  Mode mode = Mode::Distance;
  double mu = 0.5;
  std::uint64_t seed = 1;
  /// Decimal prime or "auto".
  std::string prime = "auto";
  bool verify = false;
  bool bench = false;
};

struct BenchRow {
  std::string phase;
  std::size_t n = 0;
  std::size_t f = 0;
  double mu = 0.0;
  std::uint64_t field_ops = 0;
  double wall_ms = 0.0;
};

struct RunResult {
  int exit_code = 0;
  std::vector<std::string> lines;
  /// Diagnostic for a non-zero exit code.
  std::string message;
  std::vector<BenchRow> bench;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 1;
inline constexpr int kExitAlgebra = 2;
inline constexpr int kExitMismatch = 3;

/// Runs one batch and all queries; errors are mapped to exit codes.
RunResult run_pipeline(const RunConfig& cfg, const GraphSpec& spec, const UpdateBatch& batch,
                       const QueryList& queries);

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace sens
