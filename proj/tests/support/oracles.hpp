#pragma once

// Test-only reference implementations. They share nothing with the library
// beyond the Instance container, so agreement is meaningful.

#include <cstddef>
#include <tuple>
#include <vector>

#include "mfsteiner/instance.hpp"
#include "mfsteiner/rng.hpp"

namespace oracle {

using mfsteiner::Edge;
using mfsteiner::Instance;
using mfsteiner::Vertex;

/// Builds an instance from explicit (i, j, weight) triples; every other
/// pair gets `fill`.
Instance hand_instance(std::size_t n,
                       const std::vector<std::tuple<Vertex, Vertex, double>>& w,
                       double fill = 100.0);

/// All-pairs shortest paths by Floyd-Warshall.
std::vector<std::vector<double>> floyd_warshall(const Instance& inst);

/// MST weight of the subgraph induced on X by Kruskal with a plain
/// union-find.
double kruskal(const Instance& inst, const std::vector<Vertex>& X);

/// Minimum of kruskal(X) over all X containing S. Exponential in n.
double steiner_by_supersets(const Instance& inst, const std::vector<Vertex>& S);

/// Maximum of steiner_by_supersets({0..k-1} + L) over every l-subset L of
/// the remaining vertices.
double w_max_by_enumeration(const Instance& inst, std::size_t k, std::size_t l);

/// Checks that `edges` form a tree whose vertex set contains `terminals`
/// and whose leaves are all terminals.
bool is_steiner_tree(std::size_t n, const std::vector<Edge>& edges,
                     const std::vector<Vertex>& terminals, bool leaves_terminal);

/// Stage-1 duration of the first ball (root 0, domain excluding 1..k-1,
/// target m) on the instance gen_instance(n, seed) would produce, computed
/// without materializing the weight array: the weight of pair (i, j) is
/// recomputed from the counter of its position in the edge order.
double lazy_first_ball_duration(std::size_t n, std::size_t k, std::size_t m,
                                const mfsteiner::Seed& seed);

}  // namespace oracle
