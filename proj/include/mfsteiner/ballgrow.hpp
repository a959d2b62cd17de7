#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mfsteiner/instance.hpp"
#include "mfsteiner/rng.hpp"

namespace mfsteiner {

/// c_{k,n} = n^{(k-1)/k} * ((k+1) ln n)^{1/k}.
/// Throws DomainError for n < 2 or k < 1.
double c_kn(std::size_t n, std::size_t k);

/// Ball and annulus size used by the construction: ceil(c_{k,n}).
std::size_t ball_size(std::size_t n, std::size_t k);

/// Stage-1 infection ball. Vertices are listed in arrival order, so
/// vertices.front() is the root and arrival.back() is the duration.
struct Ball {
  Vertex root = kNoVertex;
  std::vector<Vertex> vertices;
  std::vector<double> arrival;
  std::vector<Vertex> parent;  // kNoVertex for the root
  double duration = 0.0;
};

/// Stage-2 single-hop annulus around a ball.
struct Annulus {
  std::vector<Vertex> vertices;  // in order of arrival
  std::vector<double> arrival;   // absolute times, all >= start
  std::vector<Vertex> parent;    // ball vertex realizing the arrival
  double start = 0.0;            // Z^1 of the ball
  double duration = 0.0;         // Z^2
};

/// The m vertices of `domain` closest to root inside the subgraph induced by
/// `domain`. Throws InvalidArgument if root is not in the domain and
/// InfeasibleSize if m exceeds |domain|.
Ball grow_ball(const Instance& inst, Vertex root,
               std::span<const Vertex> domain, std::size_t m);

/// Single-hop continuation: each eligible v arrives at
/// min over ball vertices u of arrival(u) + T_uv; the m earliest are kept.
/// Throws InfeasibleSize if m exceeds |eligible| and std::logic_error if an
/// arrival precedes the ball's completion time.
Annulus grow_annulus(const Instance& inst, const Ball& ball,
                     std::span<const Vertex> eligible, std::size_t m);

struct RootTrace {
  Ball ball;
  Annulus annulus;
  double z1 = 0.0;
  double z2 = 0.0;
};

struct BallGrowthTrace {
  std::size_t m = 0;
  std::vector<RootTrace> roots;
};

enum class BallGrowthStatus { success, failed_intersection, infeasible_size };

const char* to_string(BallGrowthStatus status) noexcept;

enum class MeetingRule {
  lowest_index,   // smallest vertex index in the common annulus
  shortest_total  // minimizes the summed path lengths, then index
};

struct BallGrowthOptions {
  std::optional<std::size_t> m;  // overrides ceil(c_{k,n})
  MeetingRule meeting = MeetingRule::lowest_index;
};

struct BallGrowthOutcome {
  BallGrowthStatus status = BallGrowthStatus::infeasible_size;
  Vertex meeting = kNoVertex;
  std::vector<Edge> tree;  // sorted
  double tree_weight = 0.0;
  /// Sum over roots of Z_i^1 + Z_i^2.
  double certificate = 0.0;
  /// Length of the path from each root to the meeting vertex.
  std::vector<double> path_lengths;
  BallGrowthTrace trace;
};

/// Staged construction of a tree on the terminals v_1..v_k.
///
/// Stage 1 grows disjoint balls in turn, each in a domain that excludes the
/// later roots and all earlier balls. Stage 2 grows an annulus around every
/// ball inside the vertices no ball claimed. If the annuli share a vertex w,
/// the tree is the union of the ball-parent chains from each root to the
/// annulus parent of w plus the final hop. An edge shared by several paths
/// counts once, and any cycle is broken at its heaviest edge.
///
/// With k = 1 the result is the single root, weight 0, and an empty trace.
/// Throws InvalidArgument for k = 0 or k > n.
BallGrowthOutcome ball_growth_tree(const Instance& inst, std::size_t k,
                                   const BallGrowthOptions& options = {});

struct StageTimes {
  double z1 = 0.0;
  double z2 = 0.0;
};

/// Draws (Z^1, Z^2) for the first root from independent exponentials:
/// Z^1 sums Exp(i (n' - i)) for i < c and Z^2 sums Exp(c (n' - k c - i + 1))
/// for i <= c, where n' = n - k + 1 and c = ball_size(n, k). Rates are per
/// unit time. Throws InfeasibleSize when a rate is not positive.
StageTimes simulate_stage_times(std::size_t n, std::size_t k, Stream& stream);

/// Sum over i < c of 1 / (i (n' - i)), the mean of Z^1.
double stage1_mean(std::size_t n, std::size_t k);
/// Sum over i < c of 1 / (i (n' - i))^2, the variance of Z^1.
double stage1_variance(std::size_t n, std::size_t k);

/// E exp(n t Z_1) under the independent-exponential stage model: the product
/// of (1 - n t / rate)^{-1} over every stage-1 and stage-2 rate. Throws
/// DivergenceError when n t reaches the smallest rate.
double mgf_exact(std::size_t n, std::size_t k, double t);

}  // namespace mfsteiner
