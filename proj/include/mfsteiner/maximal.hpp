#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mfsteiner/instance.hpp"
#include "mfsteiner/steiner.hpp"

namespace mfsteiner {

struct MaximalOptions {
  std::size_t k_max = 8;
  /// Hard cap on C(n-k, l) subset evaluations for the general enumeration.
  std::uint64_t budget = 10'000'000;
};

struct MaximalResult {
  double weight = 0.0;
  /// The l free vertices of a maximizing set, sorted; lexicographically
  /// smallest among maximizers.
  std::vector<Vertex> witness;
};

/// W_{k,l}: the Steiner weight of {v_1..v_k} plus l further vertices,
/// maximized over the choice of those l vertices.
///
/// Throws InvalidArgument unless 1 <= k + l <= n, CapabilityError when
/// k + l > k_max or the enumeration exceeds the budget.
MaximalResult w_max(const Instance& inst, std::size_t k, std::size_t l,
                    const MaximalOptions& options = {});

/// Largest shortest-path distance from v.
double eccentricity(const Instance& inst, Vertex v);

struct DiameterResult {
  double weight = 0.0;
  Vertex first = kNoVertex;  // lexicographically smallest maximizing pair
  Vertex second = kNoVertex;
};

/// Largest shortest-path distance over all pairs, with a witness pair.
DiameterResult diameter_pair(const Instance& inst);
double diameter(const Instance& inst);

/// Binomial coefficient saturating at UINT64_MAX.
std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t r) noexcept;

}  // namespace mfsteiner
