#include "sens/graph.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <string>
#include <utility>

namespace sens {

namespace {

std::string slot(std::size_t u, std::size_t v) { return "(" + std::to_string(u) + ", " + std::to_string(v) + ")"; }

void check_node(const GraphSpec& g, std::size_t x) {
  if (x < 1 || x > g.n) throw ParseError("node " + std::to_string(x) + " outside 1.." + std::to_string(g.n));
}

void check_edge(const GraphSpec& g, std::size_t u, std::size_t v, int w, bool has_weight) {
  check_node(g, u);
  check_node(g, v);
  if (u == v) throw ParseError("self-loop at node " + std::to_string(u));
  if (has_weight && (w > g.W || w < -g.W)) {
    throw ParseError("weight " + std::to_string(w) + " on edge " + slot(u, v) + " exceeds W = " + std::to_string(g.W));
  }
}

std::uint64_t splitmix64(std::uint64_t& s) {
  std::uint64_t z = (s += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Tag separating node-liveness coefficients from edge coefficients.
constexpr std::uint64_t kNodeTag = 0x6e6f6465ULL;

}  // namespace

void GraphSpec::validate() const {
  if (n == 0) throw ParseError("graph must have at least one node");
  if (W < 0) throw ParseError("weight bound must be non-negative");
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const Edge& e : edges) {
    check_edge(*this, e.u, e.v, e.w, true);
    if (!seen.emplace(e.u, e.v).second) throw ParseError("duplicate edge " + slot(e.u, e.v));
  }
}

void validate_batch(const GraphSpec& spec, const UpdateBatch& batch, bool allow_delete_node) {
  std::set<std::pair<std::size_t, std::size_t>> present;
  for (const Edge& e : spec.edges) present.emplace(e.u, e.v);
  std::set<std::pair<std::size_t, std::size_t>> touched;
  std::set<std::size_t> nodes;
  for (const UpdateOp& op : batch) {
    switch (op.kind) {
      case OpKind::Insert:
      case OpKind::Reweight:
      case OpKind::Delete: {
        check_edge(spec, op.u, op.v, op.w, op.kind != OpKind::Delete);
        const bool has = present.count({op.u, op.v}) > 0;
        if (op.kind == OpKind::Insert && has) throw ParseError("add on existing edge " + slot(op.u, op.v));
        if (op.kind != OpKind::Insert && !has) throw ParseError("update on absent edge " + slot(op.u, op.v));
        if (!touched.emplace(op.u, op.v).second) throw ParseError("more than one update for edge " + slot(op.u, op.v));
        break;
      }
      case OpKind::DeleteNode:
        if (!allow_delete_node) throw ParseError("delnode is only supported in reach mode");
        check_node(spec, op.u);
        if (!nodes.insert(op.u).second) throw ParseError("node " + std::to_string(op.u) + " deleted twice");
        break;
    }
  }
}

GraphSpec apply_edge_ops(const GraphSpec& spec, const UpdateBatch& batch) {
  std::map<std::pair<std::size_t, std::size_t>, int> edges;
  for (const Edge& e : spec.edges) edges[{e.u, e.v}] = e.w;
  for (const UpdateOp& op : batch) {
    if (op.kind == OpKind::Insert || op.kind == OpKind::Reweight) edges[{op.u, op.v}] = op.w;
    if (op.kind == OpKind::Delete) edges.erase({op.u, op.v});
  }
  GraphSpec out{spec.n, spec.W, {}};
  for (const auto& [k, w] : edges) out.edges.push_back({k.first, k.second, w});
  return out;
}

std::string QueryAnswer::format(std::size_t u, std::size_t v) const {
  const std::string pair = std::to_string(u) + " " + std::to_string(v);
  switch (kind_) {
    case Kind::Dist:
      return "dist " + pair + " " + std::to_string(value_);
    case Kind::Unreachable:
      return "dist " + pair + " inf";
    case Kind::NegativeCycle:
      return "negcycle";
    case Kind::Reach:
      return "reach " + pair + (reach_ ? " true" : " false");
  }
  return {};
}

Fe random_coefficient(const Field& F, std::uint64_t seed, std::uint64_t epoch, std::uint64_t u, std::uint64_t v) {
  std::uint64_t s = seed;
  s = splitmix64(s) ^ epoch;
  s = splitmix64(s) ^ u;
  s = splitmix64(s) ^ v;
  const u64 p = F.p();
  const u64 mask = ~u64{0} >> std::countl_zero(p);
  for (;;) {
    const u64 x = splitmix64(s) & mask;
    if (x != 0 && x < p) return Fe{x};
  }
}

Field distance_field(const GraphSpec& spec) {
  return select_field(spec.n, 2 * static_cast<u64>(spec.W));
}

Field reach_field(const GraphSpec& spec) { return select_field(2 * spec.n, 0); }

PolyMatrix encode_distance(const Field& F, const GraphSpec& spec, std::uint64_t seed) {
  return encode_distance_updated(F, spec, {}, seed);
}

PolyMatrix encode_distance_updated(const Field& F, const GraphSpec& spec, const UpdateBatch& batch,
                                   std::uint64_t seed) {
  std::set<std::pair<std::size_t, std::size_t>> fresh;
  for (const UpdateOp& op : batch) {
    if (op.kind == OpKind::Insert || op.kind == OpKind::Reweight) fresh.emplace(op.u, op.v);
  }
  const GraphSpec g = apply_edge_ops(spec, batch);
  PolyMatrix A(g.n, g.n);
  for (std::size_t i = 0; i < g.n; ++i) A.at(i, i) = Poly::monomial(F.one(), g.W);
  for (const Edge& e : g.edges) {
    const std::uint64_t epoch = fresh.count({e.u, e.v}) ? 1 : 0;
    A.at(e.u - 1, e.v - 1) = Poly::monomial(random_coefficient(F, seed, epoch, e.u, e.v), g.W + e.w);
  }
  return A;
}

DistanceOracle DistanceOracle::build(const GraphSpec& spec, double mu, std::uint64_t seed, std::optional<Field> field,
                                     AdjMode mode) {
  spec.validate();
  const Field F = field ? *field : distance_field(spec);
  BaseState base = BaseState::preprocess(F, encode_distance(F, spec, seed), mu, mode, 2 * spec.W);
  DistanceOracle o(F, spec, seed, std::move(base));
  o.patch_ = apply_batch(o.base_, {});
  o.refresh_det();
  return o;
}

void DistanceOracle::update(const UpdateBatch& batch) {
  validate_batch(spec_, batch, false);
  std::vector<EntryChange> changes;
  for (const UpdateOp& op : batch) {
    EntryChange c{op.u - 1, op.v - 1, {}};
    if (op.kind != OpKind::Delete) {
      c.value = Poly::monomial(random_coefficient(F_, seed_, 1, op.u, op.v), spec_.W + op.w);
    }
    changes.push_back(std::move(c));
  }
  patch_ = apply_batch(base_, changes);
  batch_ = batch;
  refresh_det();
}

void DistanceOracle::refresh_det() {
  det_ = sens::current_det(base_, patch_);
  const auto low = min_nonzero_degree(det_);
  if (!low) throw InvariantError("distance oracle: updated determinant vanished");
  negcycle_ = static_cast<long>(*low) < static_cast<long>(spec_.W) * static_cast<long>(spec_.n);
}

QueryAnswer DistanceOracle::query(std::size_t u, std::size_t v) const {
  check_node(spec_, u);
  check_node(spec_, v);
  if (negcycle_) return QueryAnswer::negative_cycle();
  if (u == v) return QueryAnswer::dist(0);
  const Poly e = query_adj_entry(base_, patch_, u - 1, v - 1);
  const auto low = min_nonzero_degree(e);
  if (!low) return QueryAnswer::unreachable();
  const long bound = static_cast<long>(spec_.W) * static_cast<long>(spec_.n - 1);
  const long k = static_cast<long>(*low) - bound;
  if (k > bound || k < -bound) throw InvariantError("distance oracle: decoded distance outside [-W(n-1), W(n-1)]");
  return QueryAnswer::dist(k);
}

ReachOracle ReachOracle::build(const GraphSpec& spec, std::uint64_t seed, std::optional<Field> field) {
  spec.validate();
  const Field F = field ? *field : reach_field(spec);
  const std::size_t n = spec.n;
  ScalarMatrix A = ScalarMatrix::identity(2 * n);
  for (std::size_t v = 1; v <= n; ++v) A.at(v - 1, n + v - 1) = random_coefficient(F, seed, kNodeTag, v, v);
  for (const Edge& e : spec.edges) A.at(n + e.u - 1, e.v - 1) = random_coefficient(F, seed, 0, e.u, e.v);
  ReachOracle o(F, spec, seed, BaseState::preprocess_scalar(F, A));
  o.patch_ = apply_batch(o.base_, {});
  return o;
}

void ReachOracle::update(const UpdateBatch& batch) {
  validate_batch(spec_, batch, true);
  const std::size_t n = spec_.n;
  std::vector<EntryChange> changes;
  for (const UpdateOp& op : batch) {
    if (op.kind == OpKind::DeleteNode) {
      changes.push_back({op.u - 1, n + op.u - 1, {}});
      continue;
    }
    EntryChange c{n + op.u - 1, op.v - 1, {}};
    if (op.kind != OpKind::Delete) c.value = Poly::constant(random_coefficient(F_, seed_, 1, op.u, op.v));
    changes.push_back(std::move(c));
  }
  patch_ = apply_batch(base_, changes);
  changes_ = std::move(changes);
}

QueryAnswer ReachOracle::query(std::size_t u, std::size_t v) const {
  check_node(spec_, u);
  check_node(spec_, v);
  const Fe e = query_adj_entry_scalar(base_, patch_, u - 1, spec_.n + v - 1);
  return QueryAnswer::reach(e.v != 0);
}

ScalarMatrix ReachOracle::current_matrix() const {
  ScalarMatrix A = base_.scalar_matrix();
  for (const EntryChange& c : changes_) A.at(c.i, c.j) = c.value.coeff(0);
  return A;
}

}  // namespace sens
