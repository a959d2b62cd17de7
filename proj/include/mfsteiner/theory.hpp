#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mfsteiner/instance.hpp"
#include "mfsteiner/rng.hpp"

namespace mfsteiner {

// The exponential family appears with both parametrizations: Exp(1) edge
// weights have mean 1, while the minima U_i are Exp(n_B) with rate n_B.
// Every interface here names which one it takes.
struct Rate {
  double value;
};
struct Mean {
  double value;
};

/// Exponential variate with the given rate (mean 1 / rate).
double sample_exponential(Stream& stream, Rate rate);
/// Exponential variate with the given mean.
double sample_exponential(Stream& stream, Mean mean);

// ---------------------------------------------------------------------------
// Random subset intersections

/// exp(-m^k n^{1-k}), the bound on the probability that k independent
/// uniform m-subsets of [n] have empty intersection. Throws DomainError
/// unless 1 <= m <= n and k >= 1.
double lemma2_bound(std::size_t n, std::size_t m, std::size_t k);

/// Fraction of `trials` in which k independent uniform m-subsets of [n]
/// (drawn by partial Fisher-Yates) have empty intersection.
double subset_intersection_empty_freq(std::size_t n, std::size_t m,
                                      std::size_t k, std::size_t trials,
                                      Stream& stream);

// ---------------------------------------------------------------------------
// The conditioning transform f

/// f(x) = -mu log(e^{-b/mu} + (1 - e^{-b/mu}) e^{-x/mu}), evaluated as
/// -mu log1p(-p q) with p = 1 - e^{-b/mu} and q = 1 - e^{-x/mu}. Maps
/// [0, inf) increasingly into [0, b); `mu` is the mean of X.
double f_transform(double x, Mean mu, double b);

/// CDF of X given X <= b for X with mean mu, evaluated at t in [0, b].
double conditional_cdf(double t, Mean mu, double b);

/// Draws X with mean mu and returns the Kolmogorov distance between the
/// empirical law of f(X) and the conditional law of X given X <= b.
double check_f_conditional_law(Mean mu, double b, std::size_t samples,
                               Stream& stream);

/// alpha (1 - ln alpha) / (1 - alpha): smallest b / mu for which the tail
/// bound applies.
double f_tail_threshold(double alpha);

struct TailCheck {
  double freq = 0.0;   // empirical P(f(X) <= alpha X), X = 0 excluded
  double bound = 0.0;  // e^{1 - b / (alpha mu)}
  double standard_error = 0.0;
  bool passed = false;  // freq <= bound + 3 * standard_error
};

/// Throws PreconditionError, naming the threshold, when
/// b / mu < f_tail_threshold(alpha) or alpha is outside (0, 1).
TailCheck check_f_tail_bound(Mean mu, double b, double alpha,
                             std::size_t samples, Stream& stream);

/// Checks f(x) >= alpha x on `points` evenly spaced x in [0, b/alpha - mu].
bool f_dominates_linear_on_grid(Mean mu, double b, double alpha,
                                std::size_t points);

// ---------------------------------------------------------------------------
// Lower-bound partition and coupling

/// Blocks A_1..A_k of n_A = ceil(n^{1-epsilon}) consecutive vertices, then
/// B with the remaining n - k n_A vertices.
class Partition {
 public:
  /// Throws InvalidArgument unless 0 < epsilon < 1, k >= 1 and k n_A < n.
  Partition(std::size_t n, double epsilon, std::size_t k);

  std::size_t n() const noexcept { return n_; }
  double epsilon() const noexcept { return epsilon_; }
  std::size_t blocks() const noexcept { return k_; }
  std::size_t block_size() const noexcept { return n_a_; }
  std::size_t b_size() const noexcept { return n_ - k_ * n_a_; }
  /// Vertices of A in block order; size k n_A.
  std::size_t a_size() const noexcept { return k_ * n_a_; }

  Vertex block_begin(std::size_t j) const noexcept { return j * n_a_; }
  Vertex block_end(std::size_t j) const noexcept { return (j + 1) * n_a_; }
  bool in_b(Vertex v) const noexcept { return v >= a_size(); }
  /// Block holding v; requires !in_b(v).
  std::size_t block_of(Vertex v) const noexcept { return v / n_a_; }

 private:
  std::size_t n_;
  double epsilon_;
  std::size_t k_;
  std::size_t n_a_;
};

struct CouplingSpec {
  Partition partition;
  std::vector<Vertex> chosen;  // l_j in block j
  double b;                    // shift added at l_j
  Mean mu;                     // mean of U_i, i.e. 1 / n_B

  /// chosen = first vertex of each block, b = (1 - 2 eps) ln n / n,
  /// mu = 1 / n_B.
  static CouplingSpec standard(const Partition& partition);
  /// Same as standard() with explicit chosen vertices.
  static CouplingSpec with_chosen(const Partition& partition,
                                  std::vector<Vertex> chosen);

  /// Throws InvalidArgument if l_j is not in A_j or b, mu are not positive.
  void validate() const;
};

/// U_i = min over m in B of T_im for every i in A, indexed by i.
std::vector<double> u_minima(const Instance& inst, const Partition& part);

/// U'_i from U_i: f(U_i) before l_j in its block, U_i + b at l_j, U_i after.
std::vector<double> u_prime(const std::vector<double>& u,
                            const CouplingSpec& spec);

/// T'_im = T_im + (U'_i - U_i) for i in A, m in B; every other weight is
/// copied bit for bit. At l_j the shift is exactly b, so T'_{l_j m} is the
/// rounded sum T_{l_j m} + b. Throws std::logic_error on a nonpositive T'.
Instance apply_coupling(const Instance& inst, const CouplingSpec& spec);

/// The events E^{(j)}_{l_j}: U_{l_j} > b and U_i <= b for earlier i in A_j.
bool coupling_event_holds(const std::vector<double>& u,
                          const CouplingSpec& spec);

/// Probability of the intersection of the events under the model law.
double coupling_event_probability(const CouplingSpec& spec);

struct CouplingLawOptions {
  std::size_t n = 60;
  double epsilon = 0.25;
  std::size_t k = 1;
  /// Offset of l_j inside each block (0 = first vertex).
  std::size_t chosen_offset = 0;
  std::size_t accepted = 10'000;
  /// Rejection sampling is refused below this acceptance probability.
  double min_acceptance = 1e-4;
};

struct SummaryComparison {
  std::string name;
  double statistic = 0.0;  // two-sample Kolmogorov distance
};

struct CouplingLawReport {
  std::vector<SummaryComparison> summaries;
  double statistic = 0.0;  // max over summaries
  double threshold = 0.0;  // 2 * DKW(accepted, 0.01)
  double acceptance_rate = 0.0;
  std::size_t attempts = 0;
  /// Kolmogorov distance of the coupled U'_{l_1} from b + Exp(rate n_B).
  double memoryless_statistic = 0.0;
};

/// Compares scalar summaries of (a) apply_coupling on unconditioned
/// instances with (b) instances conditioned on the events by rejection.
/// Summaries: U'_{l_j} for each j, U' at the vertex before and after l_1
/// (when they exist), and the Steiner weight of {l_1..l_k, v_n}.
/// Throws CapabilityError when the acceptance probability is below
/// min_acceptance.
CouplingLawReport coupling_law_check(const CouplingLawOptions& options,
                                     const Seed& seed);

struct LowerBoundConditions {
  bool shifted_minima = false;  // U'_i >= (1 - 2 eps) U_i for all i in A
  bool far_from_chosen = false; // T_{i l_j} >= (2k-1) ln n / n, i in A, i != l_j
  bool typical_weight = false;  // w({l_j}) > (k - 1 - eps) ln n / n
};

/// Diagnostic evaluation of the three sufficient conditions of the lower
/// bound argument on one instance.
LowerBoundConditions evaluate_lower_bound_conditions(const Instance& inst,
                                                     const CouplingSpec& spec);

}  // namespace mfsteiner
