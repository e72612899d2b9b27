#include "sens/refcheck.hpp"

#include <deque>
#include <limits>

namespace sens::ref {

RefGraph RefGraph::from(const GraphSpec& spec, const UpdateBatch& batch) {
  const GraphSpec g = apply_edge_ops(spec, batch);
  RefGraph r;
  r.n = g.n;
  r.adj.resize(g.n + 1);
  r.deleted.assign(g.n + 1, 0);
  for (const Edge& e : g.edges) r.adj[e.u].emplace_back(e.v, e.w);
  for (const UpdateOp& op : batch) {
    if (op.kind == OpKind::DeleteNode) r.deleted[op.u] = 1;
  }
  return r;
}

namespace {

constexpr long kInf = std::numeric_limits<long>::max();

// Runs n rounds of relaxation from the given initial distances; returns false
// when round n still relaxes.
bool relax(const RefGraph& g, std::vector<long>& dist) {
  for (std::size_t round = 0; round <= g.n; ++round) {
    bool changed = false;
    for (std::size_t u = 1; u <= g.n; ++u) {
      if (dist[u] == kInf) continue;
      for (const auto& [v, w] : g.adj[u]) {
        if (dist[u] + w < dist[v]) {
          dist[v] = dist[u] + w;
          changed = true;
        }
      }
    }
    if (!changed) return true;
    if (round == g.n) return false;
  }
  return true;
}

}  // namespace

bool has_negative_cycle(const RefGraph& g) {
  std::vector<long> dist(g.n + 1, 0);
  dist[0] = kInf;
  return !relax(g, dist);
}

std::optional<std::vector<std::optional<long>>> bellman_ford_all(const RefGraph& g, std::size_t src) {
  if (has_negative_cycle(g)) return std::nullopt;
  std::vector<long> dist(g.n + 1, kInf);
  dist[src] = 0;
  relax(g, dist);
  std::vector<std::optional<long>> out(g.n + 1);
  for (std::size_t v = 1; v <= g.n; ++v) {
    if (dist[v] != kInf) out[v] = dist[v];
  }
  return out;
}

bool bfs_reach(const RefGraph& g, std::size_t u, std::size_t v) {
  if (g.deleted[u] || g.deleted[v]) return false;
  std::vector<char> seen(g.n + 1, 0);
  std::deque<std::size_t> q{u};
  seen[u] = 1;
  while (!q.empty()) {
    const std::size_t x = q.front();
    q.pop_front();
    if (x == v) return true;
    for (const auto& [y, w] : g.adj[x]) {
      if (!seen[y] && !g.deleted[y]) {
        seen[y] = 1;
        q.push_back(y);
      }
    }
  }
  return false;
}

QueryAnswer distance_answer(const RefGraph& g, std::size_t u, std::size_t v) {
  const auto d = bellman_ford_all(g, u);
  if (!d) return QueryAnswer::negative_cycle();
  if (!(*d)[v]) return QueryAnswer::unreachable();
  return QueryAnswer::dist(*(*d)[v]);
}

namespace {

PolyMatrix minor_of(const PolyMatrix& B, std::size_t row, std::size_t col) {
  const std::size_t n = B.rows();
  PolyMatrix m(n - 1, n - 1);
  for (std::size_t i = 0, mi = 0; i < n; ++i) {
    if (i == row) continue;
    for (std::size_t j = 0, mj = 0; j < n; ++j) {
      if (j == col) continue;
      m.at(mi, mj++) = B.at(i, j);
    }
    ++mi;
  }
  return m;
}

}  // namespace

Poly cofactor_det(const Field& F, const PolyMatrix& B) {
  if (!B.square()) throw DimensionError("cofactor_det: matrix is not square");
  const std::size_t n = B.rows();
  if (n > 5) throw ConfigError("cofactor_det: n must be at most 5");
  if (n == 0) return Poly{1};
  if (n == 1) return B.at(0, 0);
  Poly det;
  for (std::size_t j = 0; j < n; ++j) {
    if (B.at(0, j).is_zero()) continue;
    const Poly t = mul(F, B.at(0, j), cofactor_det(F, minor_of(B, 0, j)));
    det = j % 2 == 0 ? add(F, det, t) : sub(F, det, t);
  }
  return det;
}

PolyMatrix cofactor_adjoint(const Field& F, const PolyMatrix& B) {
  if (!B.square()) throw DimensionError("cofactor_adjoint: matrix is not square");
  const std::size_t n = B.rows();
  if (n > 5) throw ConfigError("cofactor_adjoint: n must be at most 5");
  if (n <= 1) return PolyMatrix::identity(n);
  PolyMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // (-1)^{i+j} det(B without row j and column i)
      const Poly c = cofactor_det(F, minor_of(B, j, i));
      out.at(i, j) = (i + j) % 2 == 0 ? c : neg(F, c);
    }
  }
  return out;
}

}  // namespace sens::ref
