#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "mfsteiner/instance.hpp"

namespace mfsteiner {

inline constexpr double kUnreached = std::numeric_limits<double>::infinity();

/// Single-source shortest paths inside an allowed vertex subset.
/// dist and parent are indexed by vertex over the whole graph; vertices
/// outside `allowed` (or unreachable) keep dist = kUnreached and
/// parent = kNoVertex.
struct DistanceMap {
  Vertex source = kNoVertex;
  std::vector<double> dist;
  std::vector<Vertex> parent;

  bool reached(Vertex v) const { return dist[v] != kUnreached; }
  /// Vertices from source to v along parent pointers (source first).
  std::vector<Vertex> path_to(Vertex v) const;
};

/// Dense O(|allowed|^2) Dijkstra. Among equal tentative distances the lowest
/// vertex index is settled first; a parent is only replaced on strict
/// improvement. `allowed` need not be sorted; duplicates are ignored.
/// Throws InvalidArgument if source is not in `allowed`.
DistanceMap shortest_paths(const Instance& inst, Vertex source,
                           std::span<const Vertex> allowed);

/// Shortest paths over the whole vertex set.
DistanceMap shortest_paths(const Instance& inst, Vertex source);

struct SteinerResult {
  std::vector<Vertex> terminals;  // sorted, unique
  double weight = 0.0;
  std::vector<Edge> edges;  // sorted
};

struct SteinerOptions {
  std::size_t k_max = 8;
};

/// Dreyfus-Wagner table over the subsets of a terminal list.
///
/// cost(mask, v) is the weight of a minimum tree spanning the terminals in
/// `mask` together with vertex v. Each mask is filled by merging complementary
/// submasks at every vertex and then running a dense Dijkstra seeded with
/// the merged values, which costs O(3^t n + 2^t n^2) for t terminals.
class SteinerTable {
 public:
  SteinerTable(const Instance& inst, std::span<const Vertex> terminals,
               const SteinerOptions& options = {});

  std::size_t terminal_count() const noexcept { return terminals_.size(); }
  const std::vector<Vertex>& terminals() const noexcept { return terminals_; }
  std::uint32_t full_mask() const noexcept {
    return (std::uint32_t{1} << terminals_.size()) - 1;
  }

  double cost(std::uint32_t mask, Vertex v) const noexcept {
    return cost_[index(mask, v)];
  }
  /// Weight of the minimum Steiner tree on terminals plus v.
  double cost_with(Vertex v) const noexcept { return cost(full_mask(), v); }
  /// Weight of the minimum Steiner tree on the terminals alone.
  double optimum() const noexcept { return cost_with(terminals_.front()); }

  /// Edges of the tree realizing cost(mask, v), sorted and deduplicated.
  std::vector<Edge> tree(std::uint32_t mask, Vertex v) const;

 private:
  std::size_t index(std::uint32_t mask, Vertex v) const noexcept {
    return static_cast<std::size_t>(mask) * n_ + v;
  }
  void collect(std::uint32_t mask, Vertex v, std::vector<Edge>& out) const;

  std::size_t n_;
  std::vector<Vertex> terminals_;
  std::vector<double> cost_;
  std::vector<std::uint32_t> split_;  // 0 when not a merge
  std::vector<Vertex> pred_;          // kNoVertex when not a path extension
};

/// Exact minimum Steiner tree. Throws InvalidArgument for an empty or
/// out-of-range terminal set, CapabilityError when |S| > options.k_max.
SteinerResult steiner_exact(const Instance& inst, std::span<const Vertex> S,
                            const SteinerOptions& options = {});

/// Minimum spanning tree weight of the complete subgraph induced on X
/// (dense Prim). Throws InvalidArgument for an empty X.
double mst(const Instance& inst, std::span<const Vertex> X);

/// Weight of the MST on all vertices.
double mst(const Instance& inst);

inline constexpr std::size_t kBruteforceMaxVertices = 12;

/// Independent oracle: minimum over all X with S subset of X of mst(X).
/// Throws CapabilityError for n > 12.
double steiner_bruteforce(const Instance& inst, std::span<const Vertex> S);

/// Weight of the MST of the metric closure restricted to S (the classical
/// 2-approximation upper bound on w(S)).
double metric_closure_mst(const Instance& inst, std::span<const Vertex> S);

}  // namespace mfsteiner
