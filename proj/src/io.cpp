#include "sens/io.hpp"

#include <charconv>
#include <chrono>
#include <istream>
#include <ostream>
#include <sstream>

#include "sens/refcheck.hpp"

namespace sens {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  for (std::string tok; ss >> tok;) out.push_back(tok);
  return out;
}

template <class T>
T parse_int(const std::string& tok, const std::string& where) {
  T x{};
  const char* end = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(tok.data(), end, x);
  if (ec != std::errc{} || ptr != end) throw ParseError(where + ": expected an integer, got '" + tok + "'");
  return x;
}

std::string at(const std::string& name, std::size_t line) { return name + ":" + std::to_string(line); }

void expect_tokens(const std::vector<std::string>& t, std::size_t count, const std::string& where) {
  if (t.size() != count) {
    throw ParseError(where + ": expected " + std::to_string(count) + " fields, got " + std::to_string(t.size()));
  }
}

}  // namespace

GraphSpec parse_graph(std::istream& in, const std::string& name) {
  GraphSpec g;
  std::size_t m = 0;
  bool header = false;
  std::string line;
  for (std::size_t ln = 1; std::getline(in, line); ++ln) {
    const auto t = split(line);
    if (t.empty()) continue;
    const std::string where = at(name, ln);
    if (!header) {
      if (t[0] != "p" || t.size() < 2 || t[1] != "dgraph") throw ParseError(where + ": expected 'p dgraph <n> <m> <W>'");
      expect_tokens(t, 5, where);
      g.n = parse_int<std::size_t>(t[2], where);
      m = parse_int<std::size_t>(t[3], where);
      g.W = parse_int<int>(t[4], where);
      if (g.n == 0) throw ParseError(where + ": n must be positive");
      if (g.W < 0) throw ParseError(where + ": W must be non-negative");
      header = true;
      continue;
    }
    if (t[0] != "e") throw ParseError(where + ": expected 'e <u> <v> <w>'");
    expect_tokens(t, 4, where);
    g.edges.push_back({parse_int<std::size_t>(t[1], where), parse_int<std::size_t>(t[2], where),
                       parse_int<int>(t[3], where)});
    try {
      GraphSpec prefix{g.n, g.W, g.edges};
      prefix.validate();
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  if (!header) throw ParseError(name + ": missing 'p dgraph' header");
  if (g.edges.size() != m) {
    throw ParseError(name + ": header declares " + std::to_string(m) + " edges, found " +
                     std::to_string(g.edges.size()));
  }
  return g;
}

UpdateBatch parse_updates(std::istream& in, const GraphSpec& spec, Mode mode, const std::string& name) {
  UpdateBatch batch;
  std::string line;
  for (std::size_t ln = 1; std::getline(in, line); ++ln) {
    const auto t = split(line);
    if (t.empty()) continue;
    const std::string where = at(name, ln);
    UpdateOp op;
    if (t[0] == "add" || t[0] == "rew") {
      expect_tokens(t, 4, where);
      op.kind = t[0] == "add" ? OpKind::Insert : OpKind::Reweight;
      op.u = parse_int<std::size_t>(t[1], where);
      op.v = parse_int<std::size_t>(t[2], where);
      op.w = parse_int<int>(t[3], where);
    } else if (t[0] == "del") {
      expect_tokens(t, 3, where);
      op.kind = OpKind::Delete;
      op.u = parse_int<std::size_t>(t[1], where);
      op.v = parse_int<std::size_t>(t[2], where);
    } else if (t[0] == "delnode") {
      expect_tokens(t, 2, where);
      op.kind = OpKind::DeleteNode;
      op.u = parse_int<std::size_t>(t[1], where);
    } else {
      throw ParseError(where + ": unknown update '" + t[0] + "'");
    }
    batch.push_back(op);
    try {
      validate_batch(spec, batch, mode == Mode::Reach);
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  return batch;
}

QueryList parse_queries(std::istream& in, const GraphSpec& spec, const std::string& name) {
  QueryList q;
  std::string line;
  for (std::size_t ln = 1; std::getline(in, line); ++ln) {
    const auto t = split(line);
    if (t.empty()) continue;
    const std::string where = at(name, ln);
    expect_tokens(t, 2, where);
    const auto u = parse_int<std::size_t>(t[0], where);
    const auto v = parse_int<std::size_t>(t[1], where);
    if (u < 1 || u > spec.n || v < 1 || v > spec.n) throw ParseError(where + ": node outside 1.." + std::to_string(spec.n));
    q.emplace_back(u, v);
  }
  return q;
}

namespace {

Field pick_field(const RunConfig& cfg, const GraphSpec& spec) {
  const bool dist = cfg.mode == Mode::Distance;
  if (cfg.prime == "auto") return dist ? distance_field(spec) : reach_field(spec);
  const auto p = parse_int<u64>(cfg.prime, "--prime");
  return dist ? checked_field(p, spec.n, 2 * static_cast<u64>(spec.W)) : checked_field(p, 2 * spec.n, 0);
}

class Phase {
 public:
  Phase(RunResult& r, std::string name, const RunConfig& cfg, std::size_t n, std::size_t f)
      : r_(r), name_(std::move(name)), cfg_(cfg), n_(n), f_(f), t0_(std::chrono::steady_clock::now()) {}
  ~Phase() {
    if (!cfg_.bench) return;
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_).count();
    r_.bench.push_back({name_, n_, f_, cfg_.mu, scope_.elapsed(), ms});
  }

 private:
  RunResult& r_;
  std::string name_;
  const RunConfig& cfg_;
  std::size_t n_, f_;
  ops::Scope scope_;
  std::chrono::steady_clock::time_point t0_;
};

template <class Oracle>
std::vector<QueryAnswer> run_phases(RunResult& r, const RunConfig& cfg, const GraphSpec& spec,
                                    const UpdateBatch& batch, const QueryList& queries, Oracle build) {
  const std::size_t n = spec.n, f = batch.size();
  std::optional<decltype(build())> o;
  {
    Phase ph(r, "preprocess", cfg, n, f);
    o.emplace(build());
  }
  {
    Phase ph(r, "update", cfg, n, f);
    o->update(batch);
  }
  std::vector<QueryAnswer> answers;
  {
    Phase ph(r, "query", cfg, n, f);
    for (const auto& [u, v] : queries) answers.push_back(o->query(u, v));
  }
  return answers;
}

}  // namespace

RunResult run_pipeline(const RunConfig& cfg, const GraphSpec& spec, const UpdateBatch& batch,
                       const QueryList& queries) {
  RunResult r;
  try {
    if (!(cfg.mu >= 0.0 && cfg.mu <= 1.0)) throw ConfigError("--mu must lie in [0, 1]");
    spec.validate();
    validate_batch(spec, batch, cfg.mode == Mode::Reach);
    const Field F = pick_field(cfg, spec);
    std::vector<QueryAnswer> answers;
    if (cfg.mode == Mode::Distance) {
      answers = run_phases(r, cfg, spec, batch, queries,
                           [&] { return DistanceOracle::build(spec, cfg.mu, cfg.seed, F); });
    } else {
      answers = run_phases(r, cfg, spec, batch, queries, [&] { return ReachOracle::build(spec, cfg.seed, F); });
    }
    for (std::size_t k = 0; k < queries.size(); ++k) r.lines.push_back(answers[k].format(queries[k].first, queries[k].second));

    if (cfg.verify) {
      const ref::RefGraph g = ref::RefGraph::from(spec, batch);
      for (std::size_t k = 0; k < queries.size(); ++k) {
        const auto [u, v] = queries[k];
        const QueryAnswer want =
            cfg.mode == Mode::Distance ? ref::distance_answer(g, u, v) : QueryAnswer::reach(ref::bfs_reach(g, u, v));
        if (!(want == answers[k])) {
          r.exit_code = kExitMismatch;
          r.message = "verification mismatch on query " + std::to_string(u) + " " + std::to_string(v) + ": oracle '" +
                      answers[k].format(u, v) + "', reference '" + want.format(u, v) + "'";
          return r;
        }
      }
    }
  } catch (const ParseError& e) {
    r.exit_code = kExitParse;
    r.message = e.what();
  } catch (const ConfigError& e) {
    r.exit_code = kExitParse;
    r.message = e.what();
  } catch (const SingularMatrix& e) {
    r.exit_code = kExitAlgebra;
    r.message = std::string(e.what()) + " (retry with another --seed)";
  } catch (const Error& e) {
    r.exit_code = kExitAlgebra;
    r.message = e.what();
  }
  if (r.exit_code != kExitOk) r.lines.clear();
  return r;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "phase,n,f,mu,field_ops,wall_ms\n";
  for (const BenchRow& b : rows) {
    out << b.phase << ',' << b.n << ',' << b.f << ',' << b.mu << ',' << b.field_ops << ',' << b.wall_ms << '\n';
  }
}

}  // namespace sens
