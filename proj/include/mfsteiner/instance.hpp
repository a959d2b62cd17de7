#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mfsteiner/rng.hpp"

namespace mfsteiner {

/// Vertex index. Vertex 0 is v_1, vertex n-1 is v_n.
using Vertex = std::size_t;

inline constexpr Vertex kNoVertex = static_cast<Vertex>(-1);

/// Undirected edge, always stored with first < second.
struct Edge {
  Vertex first;
  Vertex second;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(Vertex a, Vertex b) noexcept {
  return a < b ? Edge{a, b} : Edge{b, a};
}

/// Inverse-CDF transform of a uniform on [0, 1) to an Exp(1) variate.
/// Throws DomainError when u is outside [0, 1).
double sample_exp(double u);

/// Complete graph on n vertices with positive edge weights.
///
/// Weights live in a dense upper-triangular array in row-major order over
/// pairs i < j: (0,1), (0,2), ..., (0,n-1), (1,2), ..., (n-2,n-1). The pair
/// (i, j) with i < j sits at index i*n - i*(i+1)/2 + (j - i - 1).
class Instance {
 public:
  /// Takes ownership of an explicit weight array in the layout above.
  /// Throws InvalidArgument if n < 2, the array size is not n(n-1)/2, or a
  /// weight is not strictly positive and finite.
  Instance(std::size_t n, std::vector<double> weights, Seed seed = {});

  std::size_t size() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return weights_.size(); }
  const Seed& seed() const noexcept { return seed_; }
  std::span<const double> weights() const noexcept { return weights_; }

  /// T_ij. Throws DomainError for i == j or an index out of range.
  double weight(Vertex i, Vertex j) const;

  /// Same as weight() without validation; requires i != j, both < n.
  double operator()(Vertex i, Vertex j) const noexcept {
    return i < j ? weights_[index_unchecked(i, j)]
                 : weights_[index_unchecked(j, i)];
  }

  /// Position of pair (i, j), i < j, in the weight array.
  static std::size_t edge_index(std::size_t n, Vertex i, Vertex j) noexcept {
    return i * n - i * (i + 1) / 2 + (j - i - 1);
  }

 private:
  std::size_t index_unchecked(Vertex i, Vertex j) const noexcept {
    return edge_index(n_, i, j);
  }

  std::size_t n_;
  std::vector<double> weights_;
  Seed seed_;
};

struct GenerationOptions {
  /// Upper bound on the weight array size in bytes (2 GiB by default, which
  /// admits n up to 23170).
  std::size_t max_bytes = std::size_t{1} << 31;
};

/// Realizes the mean-field model: every weight is sample_exp of the next
/// open-interval uniform from Stream(seed), filled in the documented edge
/// order. Throws InvalidArgument for n < 2, ResourceError above the cap.
Instance gen_instance(std::size_t n, const Seed& seed,
                      const GenerationOptions& options = {});

/// Largest n whose weight array fits in options.max_bytes.
std::size_t max_vertices(const GenerationOptions& options = {}) noexcept;

}  // namespace mfsteiner
