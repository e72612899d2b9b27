#pragma once

// Graph oracles on top of the sensitive adjoint engine. Node labels are
// 1-based throughout this header; matrix indices are 0-based.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sens/field.hpp"
#include "sens/pmat.hpp"
#include "sens/smw.hpp"

namespace sens {

struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  int w = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct GraphSpec {
  std::size_t n = 0;
  int W = 0;
  std::vector<Edge> edges;

  /// Throws ParseError on out-of-range nodes, self-loops, |w| > W or
  /// parallel edges.
  void validate() const;
};

enum class OpKind { Insert, Delete, Reweight, DeleteNode };

struct UpdateOp {
  OpKind kind = OpKind::Insert;
  std::size_t u = 0;  // node for DeleteNode
  std::size_t v = 0;
  int w = 0;
  friend bool operator==(const UpdateOp&, const UpdateOp&) = default;
};

using UpdateBatch = std::vector<UpdateOp>;

/// Checks a batch against the graph: Insert needs an absent edge, Delete and
/// Reweight a present one, at most one op per slot, DeleteNode only when
/// allowed. Throws ParseError.
void validate_batch(const GraphSpec& spec, const UpdateBatch& batch, bool allow_delete_node);

/// Edge set after the batch (node deletions are not reflected here).
GraphSpec apply_edge_ops(const GraphSpec& spec, const UpdateBatch& batch);

class QueryAnswer {
 public:
  enum class Kind { Dist, Unreachable, NegativeCycle, Reach };

  static QueryAnswer dist(long k) { return QueryAnswer(Kind::Dist, k, false); }
  static QueryAnswer unreachable() { return QueryAnswer(Kind::Unreachable, 0, false); }
  static QueryAnswer negative_cycle() { return QueryAnswer(Kind::NegativeCycle, 0, false); }
  static QueryAnswer reach(bool r) { return QueryAnswer(Kind::Reach, 0, r); }

  Kind kind() const { return kind_; }
  long distance() const { return value_; }
  bool reachable() const { return reach_; }

  /// Output line for query (u, v).
  std::string format(std::size_t u, std::size_t v) const;

  friend bool operator==(const QueryAnswer&, const QueryAnswer&) = default;

 private:
  QueryAnswer(Kind k, long v, bool r) : kind_(k), value_(v), reach_(r) {}
  Kind kind_;
  long value_;
  bool reach_;
};

/// Keyed coefficient in [1, p), deterministic in (seed, epoch, u, v).
Fe random_coefficient(const Field& F, std::uint64_t seed, std::uint64_t epoch, std::uint64_t u, std::uint64_t v);

/// Field for a distance instance: p >= n^3 and room for degree 2W n products.
Field distance_field(const GraphSpec& spec);
/// Field for a reach instance (dimension 2n, degree 0).
Field reach_field(const GraphSpec& spec);

/// Diagonal X^W, edge (u, v, c) at a X^{W+c}; a = random_coefficient(seed, 0, u, v).
PolyMatrix encode_distance(const Field& F, const GraphSpec& spec, std::uint64_t seed);
/// Encoding of the graph after `batch`: inserted and reweighted edges use
/// epoch 1 coefficients, untouched edges epoch 0.
PolyMatrix encode_distance_updated(const Field& F, const GraphSpec& spec, const UpdateBatch& batch,
                                   std::uint64_t seed);

class DistanceOracle {
 public:
  /// Throws SingularMatrix on a singular encoding (retry with another seed).
  static DistanceOracle build(const GraphSpec& spec, double mu, std::uint64_t seed,
                              std::optional<Field> field = std::nullopt, AdjMode mode = AdjMode::Oracle);

  /// Replaces the current batch. Throws ParseError on an invalid batch and
  /// SingularMatrix when the updated encoding is singular.
  void update(const UpdateBatch& batch);
  QueryAnswer query(std::size_t u, std::size_t v) const;

  bool negative_cycle() const { return negcycle_; }
  const Poly& current_det() const { return det_; }
  const GraphSpec& spec() const { return spec_; }
  const Field& field() const { return F_; }
  const BaseState& base() const { return base_; }
  const UpdatePatch& patch() const { return patch_; }
  const UpdateBatch& batch() const { return batch_; }

 private:
  DistanceOracle(const Field& F, GraphSpec spec, std::uint64_t seed, BaseState base)
      : F_(F), spec_(std::move(spec)), seed_(seed), base_(std::move(base)) {}
  void refresh_det();

  Field F_;
  GraphSpec spec_;
  std::uint64_t seed_;
  BaseState base_;
  UpdatePatch patch_;
  UpdateBatch batch_;
  Poly det_;
  bool negcycle_ = false;
};

class ReachOracle {
 public:
  static ReachOracle build(const GraphSpec& spec, std::uint64_t seed, std::optional<Field> field = std::nullopt);

  void update(const UpdateBatch& batch);
  QueryAnswer query(std::size_t u, std::size_t v) const;

  /// Explicit split-graph matrix after the current batch.
  ScalarMatrix current_matrix() const;
  const GraphSpec& spec() const { return spec_; }
  const Field& field() const { return F_; }
  const BaseState& base() const { return base_; }
  const UpdatePatch& patch() const { return patch_; }

 private:
  ReachOracle(const Field& F, GraphSpec spec, std::uint64_t seed, BaseState base)
      : F_(F), spec_(std::move(spec)), seed_(seed), base_(std::move(base)) {}

  Field F_;
  GraphSpec spec_;
  std::uint64_t seed_;
  BaseState base_;
  UpdatePatch patch_;
  std::vector<EntryChange> changes_;
};

}  // namespace sens
