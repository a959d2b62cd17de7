#include "mfsteiner/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

#include "mfsteiner/errors.hpp"

namespace mfsteiner {

namespace {

struct Candidate {
  double weight = -1.0;
  std::vector<Vertex> witness;

  // Callers visit witnesses in lexicographic order, so only a strictly
  // larger weight replaces the incumbent.
  void offer(double w, const std::vector<Vertex>& set) {
    if (w > weight) {
      weight = w;
      witness = set;
    }
  }
};

// Threshold-graph acceleration for all-pairs distances on a dense instance.
// Any pair at distance <= tau is joined by a path made of edges <= tau, so
// Dijkstra on the sparse graph of those edges is exact for such pairs. A
// source whose sparse eccentricity exceeds tau is recomputed densely.
class ThresholdGraph {
 public:
  ThresholdGraph(const Instance& inst, double tau) : n_(inst.size()) {
    std::vector<std::size_t> degree(n_, 0);
    const auto w = inst.weights();
    std::size_t at = 0;
    for (Vertex i = 0; i < n_; ++i) {
      for (Vertex j = i + 1; j < n_; ++j, ++at) {
        if (w[at] <= tau) {
          ++degree[i];
          ++degree[j];
        }
      }
    }
    offset_.assign(n_ + 1, 0);
    for (Vertex i = 0; i < n_; ++i) offset_[i + 1] = offset_[i] + degree[i];
    target_.resize(offset_[n_]);
    length_.resize(offset_[n_]);
    std::vector<std::size_t> fill(offset_.begin(), offset_.end() - 1);
    at = 0;
    for (Vertex i = 0; i < n_; ++i) {
      for (Vertex j = i + 1; j < n_; ++j, ++at) {
        if (w[at] <= tau) {
          target_[fill[i]] = j;
          length_[fill[i]++] = w[at];
          target_[fill[j]] = i;
          length_[fill[j]++] = w[at];
        }
      }
    }
  }

  // Distances from s; unreachable vertices stay at kUnreached.
  void distances(Vertex s, std::vector<double>& dist) const {
    using Item = std::pair<double, Vertex>;
    dist.assign(n_, kUnreached);
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[s] = 0.0;
    heap.emplace(0.0, s);
    while (!heap.empty()) {
      const auto [d, u] = heap.top();
      heap.pop();
      if (d > dist[u]) continue;
      for (std::size_t e = offset_[u]; e < offset_[u + 1]; ++e) {
        const double cand = d + length_[e];
        if (cand < dist[target_[e]]) {
          dist[target_[e]] = cand;
          heap.emplace(cand, target_[e]);
        }
      }
    }
  }

 private:
  std::size_t n_;
  std::vector<std::size_t> offset_;
  std::vector<Vertex> target_;
  std::vector<double> length_;
};

void check_vertex(const Instance& inst, Vertex v) {
  if (v >= inst.size()) {
    throw InvalidArgument("vertex " + std::to_string(v) + " out of range");
  }
}

}  // namespace

std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t r) noexcept {
  if (r > n) return 0;
  r = std::min(r, n - r);
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    // result * (n - r + i) / i stays integral at every step.
    const std::uint64_t factor = n - r + i;
    const std::uint64_t g = std::gcd(result, i);
    const std::uint64_t reduced = result / g;
    const std::uint64_t divisor = i / g;
    const std::uint64_t f = factor / divisor;
    if (reduced != 0 && f > kMax / reduced) return kMax;
    result = reduced * f;
  }
  return result;
}

double eccentricity(const Instance& inst, Vertex v) {
  check_vertex(inst, v);
  const DistanceMap dm = shortest_paths(inst, v);
  return *std::max_element(dm.dist.begin(), dm.dist.end());
}

DiameterResult diameter_pair(const Instance& inst) {
  const std::size_t n = inst.size();
  const double tau = 4.5 * std::log(static_cast<double>(n)) /
                     static_cast<double>(n);
  const ThresholdGraph sparse(inst, tau);
  DiameterResult best;
  best.weight = -1.0;
  std::vector<double> dist;
  for (Vertex s = 0; s < n; ++s) {
    sparse.distances(s, dist);
    const double ecc = *std::max_element(dist.begin(), dist.end());
    if (!(ecc <= tau)) dist = shortest_paths(inst, s).dist;
    for (Vertex v = 0; v < n; ++v) {
      if (v == s) continue;
      const Vertex a = std::min(s, v);
      const Vertex b = std::max(s, v);
      if (dist[v] > best.weight ||
          (dist[v] == best.weight &&
           std::pair(a, b) < std::pair(best.first, best.second))) {
        best = {dist[v], a, b};
      }
    }
  }
  return best;
}

double diameter(const Instance& inst) { return diameter_pair(inst).weight; }

MaximalResult w_max(const Instance& inst, std::size_t k, std::size_t l,
                    const MaximalOptions& options) {
  const std::size_t n = inst.size();
  if (k + l < 1) throw InvalidArgument("w_max: need k + l >= 1");
  if (k + l > n) throw InvalidArgument("w_max: need k + l <= n");
  if (k + l > options.k_max) {
    throw CapabilityError("w_max: k + l = " + std::to_string(k + l) +
                          " exceeds k_max = " + std::to_string(options.k_max));
  }

  std::vector<Vertex> fixed(k);
  for (Vertex v = 0; v < k; ++v) fixed[v] = v;
  // Free vertices are exactly k..n-1 because the typical ones are v_1..v_k.

  if (k + l == 1) return {0.0, l == 1 ? std::vector<Vertex>{0} : std::vector<Vertex>{}};

  SteinerOptions steiner_options{options.k_max};
  if (l == 0) return {steiner_exact(inst, fixed, steiner_options).weight, {}};

  if (k == 0 && l == 2) {
    const DiameterResult d = diameter_pair(inst);
    return {d.weight, {d.first, d.second}};
  }

  if (k == 1 && l == 1) {
    const DistanceMap dm = shortest_paths(inst, 0);
    Candidate best;
    for (Vertex v = 1; v < n; ++v) best.offer(dm.dist[v], {v});
    return {best.weight, best.witness};
  }

  if (l == 1) {
    const SteinerTable table(inst, fixed, steiner_options);
    Candidate best;
    for (Vertex v = k; v < n; ++v) best.offer(table.cost_with(v), {v});
    return {best.weight, best.witness};
  }

  const std::uint64_t evaluations = binomial_saturating(n - k, l);
  if (evaluations > options.budget) {
    throw CapabilityError("w_max: C(" + std::to_string(n - k) + ", " +
                          std::to_string(l) + ") = " +
                          std::to_string(evaluations) +
                          " subsets exceed the enumeration budget of " +
                          std::to_string(options.budget));
  }

  // Enumerate the first l-1 free vertices; one Dreyfus-Wagner run on
  // fixed + prefix scores every completion v beyond the prefix at once.
  Candidate best;
  std::vector<Vertex> prefix(l - 1);
  for (std::size_t i = 0; i + 1 < l; ++i) prefix[i] = k + i;
  std::vector<Vertex> terminals;
  std::vector<Vertex> witness;
  for (;;) {
    terminals = fixed;
    terminals.insert(terminals.end(), prefix.begin(), prefix.end());
    const SteinerTable table(inst, terminals, steiner_options);
    witness = prefix;
    witness.push_back(0);
    for (Vertex v = prefix.back() + 1; v < n; ++v) {
      witness.back() = v;
      best.offer(table.cost_with(v), witness);
    }
    // Next (l-1)-combination of {k..n-2}; the last slot needs room for v.
    std::size_t pos = l - 1;
    while (pos > 0 && prefix[pos - 1] == n - 1 - (l - pos)) --pos;
    if (pos == 0) break;
    ++prefix[pos - 1];
    for (std::size_t i = pos; i + 1 < l; ++i) prefix[i] = prefix[i - 1] + 1;
  }
  return {best.weight, best.witness};
}

}  // namespace mfsteiner
