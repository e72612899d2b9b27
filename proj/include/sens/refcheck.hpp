#pragma once

// Brute-force reference oracles for tests and --verify.

#include <cstddef>
#include <optional>
#include <vector>

#include "sens/graph.hpp"
#include "sens/pmat.hpp"

namespace sens::ref {

struct RefGraph {
  std::size_t n = 0;
  /// adj[u] = (v, w), 1-based labels (index 0 unused).
  std::vector<std::vector<std::pair<std::size_t, int>>> adj;
  std::vector<char> deleted;

  /// Graph after applying the batch literally.
  static RefGraph from(const GraphSpec& spec, const UpdateBatch& batch = {});
};

/// Distances from src (nullopt = unreachable), or nullopt overall when the
/// graph contains a negative cycle anywhere.
std::optional<std::vector<std::optional<long>>> bellman_ford_all(const RefGraph& g, std::size_t src);

/// Global negative-cycle test through a virtual super-source.
bool has_negative_cycle(const RefGraph& g);

/// Reachability on the node-split graph: a deleted node reaches nothing,
/// itself included.
bool bfs_reach(const RefGraph& g, std::size_t u, std::size_t v);

/// Expected answer for a distance query.
QueryAnswer distance_answer(const RefGraph& g, std::size_t u, std::size_t v);

/// Adjugate by literal cofactor expansion, n <= 5.
PolyMatrix cofactor_adjoint(const Field& F, const PolyMatrix& B);
/// Determinant by Laplace expansion, n <= 5.
Poly cofactor_det(const Field& F, const PolyMatrix& B);

}  // namespace sens::ref
