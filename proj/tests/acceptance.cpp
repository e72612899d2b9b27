// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance [--csv <path>] [--only <k>] [--seed <s>]

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "sens/graph.hpp"
#include "sens/io.hpp"
#include "sens/kbd.hpp"
#include "sens/refcheck.hpp"
#include "sens/smw.hpp"
#include "support.hpp"

using namespace sens;
using testing::Rng;

namespace {

// Wall-clock limits in seconds.
constexpr double kLimit1 = 60;
constexpr double kLimit2 = 120;
constexpr double kLimit3 = 300;
constexpr double kLimit4 = 120;
constexpr double kLimit7 = 300;

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

std::vector<EntryChange> random_changes(const Field& F, Rng& rng, std::size_t n, std::size_t f, int d) {
  std::set<std::pair<std::size_t, std::size_t>> used;
  std::vector<EntryChange> out;
  while (out.size() < f) {
    const std::size_t i = rng.index(n), j = rng.index(n);
    if (!used.emplace(i, j).second) continue;
    out.push_back({i, j, rng.unit() < 0.2 ? Poly{} : rng.poly_upto(F, d)});
  }
  return out;
}

// U column c = delta_c e_{i_c}, V column c = e_{j_c}.
std::pair<PolyMatrix, PolyMatrix> low_rank(const Field& F, const PolyMatrix& A, const std::vector<EntryChange>& ch) {
  const std::size_t n = A.rows(), f = ch.size();
  PolyMatrix U(n, f), V(n, f);
  for (std::size_t c = 0; c < f; ++c) {
    U.at(ch[c].i, c) = sub(F, ch[c].value, A.at(ch[c].i, ch[c].j));
    V.at(ch[c].j, c) = Poly{1};
  }
  return {U, V};
}

// ---------------------------------------------------------------- 1
Outcome criterion1(std::uint64_t seed) {
  Outcome out;
  const Field& F = testing::big_field();
  Rng rng(seed);
  int scalar_done = 0;
  while (scalar_done < 50) {
    const std::size_t n = 1 + rng.index(12), f = rng.index(5);
    const ScalarMatrix A = rng.smat(F, n, n);
    if (scalar_det(F, A).v == 0) continue;
    const auto ch = random_changes(F, rng, n, std::min(f, n * n), 0);
    ScalarMatrix U(n, ch.size()), V(n, ch.size()), upd = A;
    for (std::size_t c = 0; c < ch.size(); ++c) {
      U.at(ch[c].i, c) = F.sub(ch[c].value.coeff(0), A.at(ch[c].i, ch[c].j));
      V.at(ch[c].j, c) = F.one();
      upd.at(ch[c].i, ch[c].j) = ch[c].value.coeff(0);
    }
    if (scalar_det(F, upd).v == 0) continue;
    ++scalar_done;
    if (!smw_identity_check(F, A, U, V)) out.fail("scalar identity check failed");
    const BaseState b = BaseState::preprocess_scalar(F, A);
    const UpdatePatch p = apply_batch(b, ch);
    const PolyMatrix want = adj_naive(F, PolyMatrix::from_scalar(upd));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (!(query_adj_entry(b, p, i, j) == want.at(i, j))) out.fail("scalar entry mismatch");
      }
    }
  }
  int poly_done = 0;
  while (poly_done < 30) {
    const std::size_t n = 1 + rng.index(6), f = rng.index(4);
    const int d = rng.range(0, 2);
    const PolyMatrix A = testing::random_nonsingular(F, rng, n, d);
    const auto ch = random_changes(F, rng, n, std::min(f, n * n), d);
    const PolyMatrix upd = apply_changes(A, ch);
    if (det_poly(F, upd).is_zero()) continue;
    ++poly_done;
    const auto [U, V] = low_rank(F, A, ch);
    if (!smw_identity_check(F, A, U, V)) out.fail("polynomial identity check failed");
    const PolyMatrix want = adj_naive(F, upd);
    for (AdjMode mode : {AdjMode::Naive, AdjMode::Oracle}) {
      const BaseState b = BaseState::preprocess(F, A, rng.unit(), mode, d);
      const UpdatePatch p = apply_batch(b, ch);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (!(query_adj_entry(b, p, i, j) == want.at(i, j))) out.fail("polynomial entry mismatch");
        }
      }
    }
  }
  out.detail = out.ok ? "50 scalar + 30 polynomial instances, all entries exact" : out.detail;
  return out;
}

// Degree-bound bookkeeping shared by criteria 2, 3 and 6.
struct DegreeAudit {
  long chains = 0;
  long violations = 0;
  std::string first;

  void chain(const KbdOracle& o, int d) {
    ++chains;
    const long dn = static_cast<long>(d) * static_cast<long>(o.n());
    if (o.det().deg() > dn) note("deg det > dn");
    for (const BlockDiagonalLevel& lvl : o.chain()) {
      for (const KbdBlock& blk : lvl.blocks) {
        long block_sum = 0;
        for (const PolyMatrix* N : {&blk.left, &blk.right}) {
          long s = 0;
          for (int x : cdeg_shifted(*N, blk.shift)) s += std::max(x, 0);
          if (s > dn) note("factor cdeg sum > dn");
          block_sum += s;
        }
        if (block_sum > 2 * dn) note("block cdeg sum > 2dn");
      }
    }
  }
  void adj_entry(const Poly& e, int d, std::size_t n) {
    if (e.deg() > d * static_cast<long>(n - 1)) note("deg adj > d(n-1)");
  }
  void note(const std::string& s) {
    if (violations++ == 0) first = s;
  }
};

DegreeAudit g_audit;

// ---------------------------------------------------------------- 2
Outcome criterion2(std::uint64_t seed) {
  Outcome out;
  const Field& F = testing::big_field();
  Rng rng(seed);
  long queries = 0;
  for (std::size_t n : {2, 4, 8, 16}) {
    for (int d : {0, 1, 2}) {
      for (int t = 0; t < 10; ++t) {
        const PolyMatrix B = testing::random_nonsingular(F, rng, n, d);
        KbdOracle o = KbdOracle::build_chain(F, B);
        g_audit.chain(o, d);
        const PolyMatrix prod = o.chain_product();
        const PolyMatrix D = pm_mul(F, B, prod);
        if (!testing::is_diagonal(D)) out.fail("B * prod A_i not diagonal");
        for (std::size_t j = 0; j < n; ++j) {
          if (!(D.at(j, j) == o.diagonal()[j])) out.fail("diagonal does not match D");
          for (std::size_t i = 0; i < n; ++i) {
            if (!divmod(F, mul(F, prod.at(i, j), o.det()), o.diagonal()[j]).second.is_zero()) {
              out.fail("D divisibility");
            }
          }
        }
        const PolyMatrix adj = adj_naive(F, B);
        std::vector<std::pair<std::size_t, std::size_t>> pos;
        for (int k = 0; k < 20; ++k) pos.emplace_back(rng.index(n), rng.index(n));
        PolyRow v(n);
        for (Poly& x : v) x = rng.poly_upto(F, d);
        const PolyRow vrow = pm_vec_mul(F, v, adj);
        std::vector<Poly> first;
        PolyRow first_row;
        for (double mu : {0.0, 0.5, 1.0}) {
          o.build_prefix(mu);
          std::vector<Poly> got;
          for (const auto& [i, j] : pos) {
            got.push_back(o.query_entry(i, j));
            g_audit.adj_entry(got.back(), d, n);
            if (!(got.back() == adj.at(i, j))) out.fail("query_entry != adj_naive");
            ++queries;
          }
          const PolyRow row = o.query_row(v);
          if (!(row == vrow)) out.fail("query_row != v adj_naive");
          if (mu == 0.0) {
            first = got;
            first_row = row;
          } else if (got != first || row != first_row) {
            out.fail("results differ across mu");
          }
        }
      }
    }
  }
  if (out.ok) out.detail = "120 chains, " + std::to_string(queries) + " entry queries, identical across mu";
  return out;
}

// Edge weights. With a potential pi in {0,1}^n, w = c - pi(u) + pi(v) for
// c in [0, W - 1] never closes a negative cycle; without one, w is uniform.
struct WeightGen {
  int W = 0;
  std::vector<int> pi;
  int operator()(Rng& rng, std::size_t u, std::size_t v) const {
    if (pi.empty() || W == 0) return rng.range(-W, W);
    return rng.range(0, W - 1) - pi[u] + pi[v];
  }
};

WeightGen weights(Rng& rng, std::size_t n, int W, bool potential) {
  WeightGen g{W, {}};
  if (potential) {
    g.pi.resize(n + 1);
    for (int& x : g.pi) x = rng.range(0, 1);
  }
  return g;
}

GraphSpec random_graph(Rng& rng, std::size_t n, double density, const WeightGen& wg) {
  GraphSpec g{n, wg.W, {}};
  for (std::size_t u = 1; u <= n; ++u) {
    for (std::size_t v = 1; v <= n; ++v) {
      if (u == v || rng.unit() >= density) continue;
      g.edges.push_back({u, v, wg(rng, u, v)});
    }
  }
  return g;
}

UpdateBatch random_batch(Rng& rng, const GraphSpec& g, std::size_t f, bool nodes, const WeightGen& wg) {
  std::set<std::pair<std::size_t, std::size_t>> present, touched;
  for (const Edge& e : g.edges) present.emplace(e.u, e.v);
  std::set<std::size_t> dead;
  UpdateBatch b;
  for (int guard = 0; b.size() < f && guard < 10000; ++guard) {
    if (nodes && rng.unit() < 0.25) {
      const std::size_t v = 1 + rng.index(g.n);
      if (dead.insert(v).second) b.push_back({OpKind::DeleteNode, v, 0, 0});
      continue;
    }
    const std::size_t u = 1 + rng.index(g.n), v = 1 + rng.index(g.n);
    if (u == v || !touched.emplace(u, v).second) continue;
    const int w = wg(rng, u, v);
    if (!present.count({u, v})) {
      b.push_back({OpKind::Insert, u, v, w});
    } else if (rng.unit() < 0.5) {
      b.push_back({OpKind::Delete, u, v, 0});
    } else {
      b.push_back({OpKind::Reweight, u, v, w});
    }
  }
  return b;
}

template <class Build>
auto with_retry(std::uint64_t seed, Build build) {
  for (int attempt = 0;; ++attempt) {
    try {
      return build(seed + static_cast<std::uint64_t>(attempt) * 0x9E3779B97F4A7C15ULL);
    } catch (const SingularMatrix&) {
      if (attempt == 4) throw;
    }
  }
}

// ---------------------------------------------------------------- 3 and 5
struct DistanceRun {
  Outcome dist;
  Outcome det;
};

DistanceRun criteria3and5(std::uint64_t seed) {
  DistanceRun r;
  Rng rng(seed);
  long queries = 0, negcycles = 0, unreachable = 0, finite = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.index(31);
    const int W = rng.range(1, 4);
    const double density = 0.02 + 0.28 * rng.unit();
    const WeightGen wg = weights(rng, n, W, trial % 4 != 0);
    const GraphSpec g = random_graph(rng, n, density, wg);
    const UpdateBatch b = random_batch(rng, g, rng.index(7), false, wg);
    const double mu = std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}[rng.index(5)];
    std::uint64_t used_seed = 0;
    DistanceOracle o = with_retry(rng.next(), [&](std::uint64_t s) {
      used_seed = s;
      DistanceOracle x = DistanceOracle::build(g, mu, s);
      x.update(b);
      return x;
    });
    g_audit.chain(*o.base().oracle(), 2 * W);
    const ref::RefGraph ref_g = ref::RefGraph::from(g, b);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (int k = 0; k < 24; ++k) pairs.emplace_back(1 + rng.index(n), 1 + rng.index(n));
    for (const auto& [u, v] : pairs) {
      const QueryAnswer got = o.query(u, v), want = ref::distance_answer(ref_g, u, v);
      ++queries;
      if (!(got == want)) {
        r.dist.fail("trial " + std::to_string(trial) + " query " + std::to_string(u) + " " + std::to_string(v) +
                    ": oracle '" + got.format(u, v) + "', reference '" + want.format(u, v) + "'");
      }
      switch (want.kind()) {
        case QueryAnswer::Kind::NegativeCycle: ++negcycles; break;
        case QueryAnswer::Kind::Unreachable: ++unreachable; break;
        default: ++finite;
      }
    }
    const Poly want_det = det_poly(o.field(), encode_distance_updated(o.field(), g, b, used_seed));
    if (!(o.current_det() == want_det)) r.det.fail("trial " + std::to_string(trial) + ": maintained det differs");
  }
  if (r.dist.ok) {
    r.dist.detail = std::to_string(queries) + " queries (" + std::to_string(finite) + " finite, " +
                    std::to_string(unreachable) + " unreachable, " + std::to_string(negcycles) +
                    " negative-cycle), 0 mismatches";
  }
  if (r.det.ok) r.det.detail = "200 batches, current_det == det_poly(re-encoding)";
  return r;
}

// ---------------------------------------------------------------- 4
Outcome criterion4(std::uint64_t seed) {
  Outcome out;
  Rng rng(seed);
  long trials = 0, positives = 0;
  for (int graph = 0; graph < 100; ++graph) {
    const std::size_t n = graph % 10 == 0 ? 128 : 2 + rng.index(127);
    const double density = (0.5 + 2.5 * rng.unit()) / static_cast<double>(n);
    const WeightGen wg = weights(rng, n, 0, false);
    const GraphSpec g = random_graph(rng, n, density, wg);
    const UpdateBatch b = random_batch(rng, g, rng.index(17), true, wg);
    ReachOracle o = with_retry(rng.next(), [&](std::uint64_t s) {
      ReachOracle x = ReachOracle::build(g, s);
      x.update(b);
      return x;
    });
    const ref::RefGraph ref_g = ref::RefGraph::from(g, b);
    for (int k = 0; k < 10; ++k) {
      const std::size_t u = 1 + rng.index(n), v = 1 + rng.index(n);
      const bool want = ref::bfs_reach(ref_g, u, v);
      positives += want;
      ++trials;
      if (o.query(u, v).reachable() != want) {
        out.fail("graph " + std::to_string(graph) + " pair " + std::to_string(u) + " " + std::to_string(v));
      }
    }
  }
  if (out.ok) {
    out.detail = std::to_string(trials) + " trials (" + std::to_string(positives) + " reachable), exact agreement";
  }
  return out;
}

// ---------------------------------------------------------------- 7
Outcome criterion7(std::uint64_t seed, const std::string& csv_path) {
  Outcome out;
  Rng rng(seed);
  const std::size_t n = 128;
  const WeightGen wg = weights(rng, n, 1, true);
  const GraphSpec g = random_graph(rng, n, 3.0 / n, wg);
  const UpdateBatch b = random_batch(rng, g, 2, false, wg);
  QueryList q;
  for (int k = 0; k < 16; ++k) q.emplace_back(1 + rng.index(n), 1 + rng.index(n));
  const std::uint64_t oracle_seed = rng.next();
  std::vector<BenchRow> rows;
  std::vector<std::uint64_t> pre, qry;
  std::vector<std::vector<std::string>> lines;
  for (double mu : {0.0, 0.5, 1.0}) {
    RunConfig cfg;
    cfg.mu = mu;
    cfg.seed = oracle_seed;
    cfg.bench = true;
    const RunResult r = run_pipeline(cfg, g, b, q);
    if (r.exit_code != kExitOk) {
      out.fail("pipeline failed at mu=" + std::to_string(mu) + ": " + r.message);
      return out;
    }
    for (const BenchRow& row : r.bench) {
      rows.push_back(row);
      if (row.phase == "preprocess") pre.push_back(row.field_ops);
      if (row.phase == "query") qry.push_back(row.field_ops);
    }
    lines.push_back(r.lines);
  }
  if (lines[0] != lines[1] || lines[0] != lines[2]) out.fail("answers differ across mu");
  for (std::size_t k = 1; k < qry.size(); ++k) {
    if (qry[k] > qry[k - 1]) out.fail("query-phase field ops increased with mu");
    if (pre[k] < pre[k - 1]) out.fail("preprocess-phase field ops decreased with mu");
  }
  std::ostringstream csv;
  write_bench_csv(csv, rows);
  if (!csv_path.empty()) std::ofstream(csv_path) << csv.str();
  std::cout << csv.str();
  if (out.ok) {
    out.detail = "query ops " + std::to_string(qry[0]) + " >= " + std::to_string(qry[1]) + " >= " +
                 std::to_string(qry[2]) + ", preprocess ops " + std::to_string(pre[0]) + " <= " +
                 std::to_string(pre[1]) + " <= " + std::to_string(pre[2]);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance suite"};
  std::string csv;
  int only = 0;
  std::uint64_t seed = 20240611;
  app.add_option("--csv", csv, "write the trade-off CSV here");
  app.add_option("--only", only, "run a single criterion");
  app.add_option("--seed", seed, "base seed");
  CLI11_PARSE(app, argc, argv);

  bool all_ok = true;
  auto report = [&](int k, const std::string& name, double limit, const std::function<Outcome()>& run) {
    if (only != 0 && only != k) return;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit > 0 && s > limit) o.fail("runtime " + std::to_string(s) + " s exceeds " + std::to_string(limit) + " s");
    all_ok = all_ok && o.ok;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1f s", s);
    std::cout << "criterion " << k << " [" << name << "]: " << (o.ok ? "PASS" : "FAIL") << " (" << buf << ") "
              << o.detail << std::endl;
  };

  DistanceRun dist;
  bool dist_ran = false;
  report(1, "adjoint-update identity", kLimit1, [&] { return criterion1(seed + 1); });
  report(2, "kernel basis decomposition", kLimit2, [&] { return criterion2(seed + 2); });
  report(3, "distance oracle vs Bellman-Ford", kLimit3, [&] {
    dist = criteria3and5(seed + 3);
    dist_ran = true;
    return dist.dist;
  });
  report(4, "reachability oracle vs BFS", kLimit4, [&] { return criterion4(seed + 4); });
  report(5, "determinant maintenance", 0, [&] {
    if (!dist_ran) dist = criteria3and5(seed + 3);
    return dist.det;
  });
  report(6, "degree bounds", 0, [&] {
    Outcome o;
    if (g_audit.chains == 0) {
      criterion2(seed + 2);
      criteria3and5(seed + 3);
    }
    if (g_audit.violations > 0) o.fail(std::to_string(g_audit.violations) + " violations, first: " + g_audit.first);
    if (o.ok) o.detail = std::to_string(g_audit.chains) + " chains audited";
    return o;
  });
  report(7, "trade-off shape", kLimit7, [&] { return criterion7(seed + 7, csv); });
  return all_ok ? 0 : 1;
}
