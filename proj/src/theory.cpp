#include "mfsteiner/theory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "mfsteiner/errors.hpp"
#include "mfsteiner/stats.hpp"
#include "mfsteiner/steiner.hpp"

namespace mfsteiner {

double sample_exponential(Stream& stream, Rate rate) {
  return sample_exp(stream.uniform()) / rate.value;
}

double sample_exponential(Stream& stream, Mean mean) {
  return sample_exp(stream.uniform()) * mean.value;
}

double lemma2_bound(std::size_t n, std::size_t m, std::size_t k) {
  if (k < 1) throw DomainError("lemma2_bound: need k >= 1");
  if (m < 1 || m > n) throw DomainError("lemma2_bound: need 1 <= m <= n");
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  // m^k n^{1-k} = n (m/n)^k
  return std::exp(-nd * std::pow(static_cast<double>(m) / nd, kd));
}

double subset_intersection_empty_freq(std::size_t n, std::size_t m,
                                      std::size_t k, std::size_t trials,
                                      Stream& stream) {
  if (k < 1) throw DomainError("subset_intersection_empty_freq: need k >= 1");
  if (m > n) throw DomainError("subset_intersection_empty_freq: need m <= n");
  if (trials < 1) {
    throw InvalidArgument("subset_intersection_empty_freq: need trials >= 1");
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<std::size_t> hits(n);
  std::size_t empty = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    std::fill(hits.begin(), hits.end(), 0);
    for (std::size_t s = 0; s < k; ++s) {
      // Partial Fisher-Yates: perm[0..m) becomes a uniform m-subset.
      for (std::size_t i = 0; i < m; ++i) {
        const std::size_t j = i + stream.below(n - i);
        std::swap(perm[i], perm[j]);
        ++hits[perm[i]];
      }
    }
    bool shared = false;
    for (std::size_t i = 0; i < m && !shared; ++i) shared = hits[perm[i]] == k;
    if (!shared) ++empty;
  }
  return static_cast<double>(empty) / static_cast<double>(trials);
}

double f_transform(double x, Mean mu, double b) {
  if (!(x >= 0.0)) throw DomainError("f_transform: need x >= 0");
  const double p = -std::expm1(-b / mu.value);
  const double q = -std::expm1(-x / mu.value);
  if (p * q < 0.5) return -mu.value * std::log1p(-p * q);
  // Near the top p q rounds towards 1; add the two terms in log space.
  const double lo = -b / mu.value;
  const double hi = std::log(p) - x / mu.value;
  const double top = std::max(lo, hi);
  return -mu.value * (top + std::log1p(std::exp(std::min(lo, hi) - top)));
}

double conditional_cdf(double t, Mean mu, double b) {
  if (t <= 0.0) return 0.0;
  if (t >= b) return 1.0;
  return std::expm1(-t / mu.value) / std::expm1(-b / mu.value);
}

double check_f_conditional_law(Mean mu, double b, std::size_t samples,
                               Stream& stream) {
  if (samples < 1000) {
    throw PreconditionError("check_f_conditional_law: need samples >= 1000");
  }
  std::vector<double> transformed(samples);
  for (double& y : transformed) {
    y = f_transform(sample_exponential(stream, mu), mu, b);
  }
  return stats::ks_statistic(std::move(transformed), [&](double t) {
    return conditional_cdf(t, mu, b);
  });
}

double f_tail_threshold(double alpha) {
  return alpha * (1.0 - std::log(alpha)) / (1.0 - alpha);
}

TailCheck check_f_tail_bound(Mean mu, double b, double alpha,
                             std::size_t samples, Stream& stream) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw PreconditionError("check_f_tail_bound: need 0 < alpha < 1");
  }
  const double threshold = f_tail_threshold(alpha);
  if (b / mu.value < threshold) {
    throw PreconditionError("check_f_tail_bound: b/mu = " +
                            std::to_string(b / mu.value) +
                            " is below the required alpha(1 - ln alpha)/(1 - "
                            "alpha) = " +
                            std::to_string(threshold));
  }
  if (samples < 10'000) {
    throw PreconditionError("check_f_tail_bound: need samples >= 10000");
  }
  std::size_t considered = 0;
  std::size_t hits = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const double x = sample_exponential(stream, mu);
    if (x == 0.0) continue;
    ++considered;
    if (f_transform(x, mu, b) <= alpha * x) ++hits;
  }
  TailCheck check;
  check.freq = static_cast<double>(hits) / static_cast<double>(considered);
  check.bound = std::exp(1.0 - b / (alpha * mu.value));
  check.standard_error =
      stats::binomial_se(std::min(check.bound, 1.0), considered);
  check.passed = check.freq <= check.bound + 3.0 * check.standard_error;
  return check;
}

bool f_dominates_linear_on_grid(Mean mu, double b, double alpha,
                                std::size_t points) {
  const double upper = b / alpha - mu.value;
  if (upper <= 0.0 || points < 2) return f_transform(0.0, mu, b) >= 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    const double x =
        upper * static_cast<double>(i) / static_cast<double>(points - 1);
    if (f_transform(x, mu, b) < alpha * x) return false;
  }
  return true;
}

Partition::Partition(std::size_t n, double epsilon, std::size_t k)
    : n_(n), epsilon_(epsilon), k_(k) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw InvalidArgument("Partition: need 0 < epsilon < 1");
  }
  if (k < 1) throw InvalidArgument("Partition: need k >= 1");
  const double raw = std::pow(static_cast<double>(n), 1.0 - epsilon);
  // An exact integer power must not be pushed up a block by rounding noise.
  const double nearest = std::round(raw);
  n_a_ = static_cast<std::size_t>(
      std::abs(raw - nearest) <= 1e-9 * raw ? nearest : std::ceil(raw));
  if (k_ * n_a_ >= n_) {
    throw InvalidArgument("Partition: k * n_A = " + std::to_string(k_ * n_a_) +
                          " leaves B empty for n = " + std::to_string(n_));
  }
}

CouplingSpec CouplingSpec::standard(const Partition& partition) {
  std::vector<Vertex> chosen;
  for (std::size_t j = 0; j < partition.blocks(); ++j) {
    chosen.push_back(partition.block_begin(j));
  }
  return with_chosen(partition, std::move(chosen));
}

CouplingSpec CouplingSpec::with_chosen(const Partition& partition,
                                       std::vector<Vertex> chosen) {
  const double n = static_cast<double>(partition.n());
  CouplingSpec spec{partition, std::move(chosen),
                    (1.0 - 2.0 * partition.epsilon()) * std::log(n) / n,
                    Mean{1.0 / static_cast<double>(partition.b_size())}};
  spec.validate();
  return spec;
}

void CouplingSpec::validate() const {
  if (chosen.size() != partition.blocks()) {
    throw InvalidArgument("CouplingSpec: need one chosen vertex per block");
  }
  for (std::size_t j = 0; j < chosen.size(); ++j) {
    if (chosen[j] < partition.block_begin(j) ||
        chosen[j] >= partition.block_end(j)) {
      throw InvalidArgument("CouplingSpec: chosen vertex " +
                            std::to_string(chosen[j]) + " is not in block " +
                            std::to_string(j));
    }
  }
  if (!(b > 0.0)) {
    throw InvalidArgument(
        "CouplingSpec: b = (1 - 2 epsilon) ln n / n must be positive "
        "(epsilon < 1/2), got " +
        std::to_string(b));
  }
  if (!(mu.value > 0.0)) throw InvalidArgument("CouplingSpec: need mu > 0");
}

std::vector<double> u_minima(const Instance& inst, const Partition& part) {
  if (part.n() != inst.size()) {
    throw InvalidArgument("u_minima: partition built for a different n");
  }
  const std::size_t n = inst.size();
  const auto w = inst.weights();
  std::vector<double> u(part.a_size(), kUnreached);
  for (Vertex i = 0; i < part.a_size(); ++i) {
    // A precedes B, so row i over B is a contiguous run of the array.
    const std::size_t base = Instance::edge_index(n, i, part.a_size());
    for (std::size_t m = 0; m < part.b_size(); ++m) {
      u[i] = std::min(u[i], w[base + m]);
    }
  }
  return u;
}

std::vector<double> u_prime(const std::vector<double>& u,
                            const CouplingSpec& spec) {
  const Partition& part = spec.partition;
  std::vector<double> out(u);
  for (std::size_t j = 0; j < part.blocks(); ++j) {
    const Vertex l = spec.chosen[j];
    for (Vertex i = part.block_begin(j); i < l; ++i) {
      out[i] = f_transform(u[i], spec.mu, spec.b);
    }
    out[l] = u[l] + spec.b;
  }
  return out;
}

Instance apply_coupling(const Instance& inst, const CouplingSpec& spec) {
  spec.validate();
  const Partition& part = spec.partition;
  if (part.n() != inst.size()) {
    throw InvalidArgument("apply_coupling: partition built for a different n");
  }
  const std::size_t n = inst.size();
  const std::vector<double> u = u_minima(inst, part);
  std::vector<double> weights(inst.weights().begin(), inst.weights().end());

  auto shift_row = [&](Vertex i, double shift) {
    const std::size_t base = Instance::edge_index(n, i, part.a_size());
    for (std::size_t m = 0; m < part.b_size(); ++m) {
      double& t = weights[base + m];
      t += shift;
      if (!(t > 0.0)) {
        throw std::logic_error("apply_coupling: nonpositive coupled weight");
      }
    }
  };

  for (std::size_t j = 0; j < part.blocks(); ++j) {
    const Vertex l = spec.chosen[j];
    for (Vertex i = part.block_begin(j); i < l; ++i) {
      shift_row(i, f_transform(u[i], spec.mu, spec.b) - u[i]);
    }
    shift_row(l, spec.b);
    // Vertices after l_j keep U'_i = U_i: their rows are untouched.
  }
  return Instance(n, std::move(weights), inst.seed());
}

bool coupling_event_holds(const std::vector<double>& u,
                          const CouplingSpec& spec) {
  const Partition& part = spec.partition;
  for (std::size_t j = 0; j < part.blocks(); ++j) {
    const Vertex l = spec.chosen[j];
    if (!(u[l] > spec.b)) return false;
    for (Vertex i = part.block_begin(j); i < l; ++i) {
      if (u[i] > spec.b) return false;
    }
  }
  return true;
}

double coupling_event_probability(const CouplingSpec& spec) {
  // U_i has rate n_B = 1 / mu.
  const double above = std::exp(-spec.b / spec.mu.value);
  double p = 1.0;
  for (std::size_t j = 0; j < spec.partition.blocks(); ++j) {
    const double before =
        static_cast<double>(spec.chosen[j] - spec.partition.block_begin(j));
    p *= std::pow(1.0 - above, before) * above;
  }
  return p;
}

namespace {

struct CouplingSummaries {
  std::vector<std::string> names;
  std::vector<Vertex> u_vertices;  // vertices whose minimum to B is tracked

  CouplingSummaries(const CouplingSpec& spec) {
    const Partition& part = spec.partition;
    for (std::size_t j = 0; j < part.blocks(); ++j) {
      names.push_back("U'(l_" + std::to_string(j + 1) + ")");
      u_vertices.push_back(spec.chosen[j]);
    }
    const Vertex l1 = spec.chosen[0];
    if (l1 > part.block_begin(0)) {
      names.push_back("U'(l_1 - 1)");
      u_vertices.push_back(l1 - 1);
    }
    if (l1 + 1 < part.block_end(0)) {
      names.push_back("U'(l_1 + 1)");
      u_vertices.push_back(l1 + 1);
    }
    names.push_back("w(S + v_n)");
  }

  std::vector<double> measure(const Instance& inst,
                              const CouplingSpec& spec) const {
    const std::vector<double> u = u_minima(inst, spec.partition);
    std::vector<double> row;
    for (Vertex v : u_vertices) row.push_back(u[v]);
    std::vector<Vertex> terminals = spec.chosen;
    terminals.push_back(inst.size() - 1);
    row.push_back(steiner_exact(inst, terminals).weight);
    return row;
  }
};

}  // namespace

CouplingLawReport coupling_law_check(const CouplingLawOptions& options,
                                     const Seed& seed) {
  const Partition part(options.n, options.epsilon, options.k);
  std::vector<Vertex> chosen;
  for (std::size_t j = 0; j < part.blocks(); ++j) {
    if (options.chosen_offset >= part.block_size()) {
      throw InvalidArgument("coupling_law_check: chosen offset outside block");
    }
    chosen.push_back(part.block_begin(j) + options.chosen_offset);
  }
  const CouplingSpec spec = CouplingSpec::with_chosen(part, std::move(chosen));
  const double p = coupling_event_probability(spec);
  if (p < options.min_acceptance) {
    throw CapabilityError("coupling_law_check: acceptance probability " +
                          std::to_string(p) + " is below " +
                          std::to_string(options.min_acceptance));
  }

  const CouplingSummaries summaries(spec);
  const std::size_t columns = summaries.names.size();
  std::vector<std::vector<double>> coupled(columns);
  std::vector<std::vector<double>> conditioned(columns);

  const std::uint64_t coupled_tag = seed.purpose ^ purpose_tag("coupling/unconditioned");
  const std::uint64_t conditioned_tag = seed.purpose ^ purpose_tag("coupling/conditioned");

  for (std::size_t t = 0; t < options.accepted; ++t) {
    const Instance inst = gen_instance(options.n, {seed.master, coupled_tag, t});
    const auto row = summaries.measure(apply_coupling(inst, spec), spec);
    for (std::size_t c = 0; c < columns; ++c) coupled[c].push_back(row[c]);
  }

  CouplingLawReport report;
  const auto max_attempts = static_cast<std::size_t>(
      10.0 * static_cast<double>(options.accepted) / options.min_acceptance);
  std::size_t accepted = 0;
  while (accepted < options.accepted) {
    if (report.attempts >= max_attempts) {
      throw CapabilityError("coupling_law_check: rejection sampling exhausted");
    }
    const Instance inst =
        gen_instance(options.n, {seed.master, conditioned_tag, report.attempts});
    ++report.attempts;
    if (!coupling_event_holds(u_minima(inst, part), spec)) continue;
    ++accepted;
    const auto row = summaries.measure(inst, spec);
    for (std::size_t c = 0; c < columns; ++c) conditioned[c].push_back(row[c]);
  }
  report.acceptance_rate =
      static_cast<double>(accepted) / static_cast<double>(report.attempts);

  for (std::size_t c = 0; c < columns; ++c) {
    const double d = stats::ks_two_sample(coupled[c], conditioned[c]);
    report.summaries.push_back({summaries.names[c], d});
    report.statistic = std::max(report.statistic, d);
  }
  report.threshold = 2.0 * stats::dkw_bound(options.accepted, 0.01);

  const double rate = 1.0 / spec.mu.value;
  const auto shifted_exp = [&](double x) {
    return x <= spec.b ? 0.0 : -std::expm1(-rate * (x - spec.b));
  };
  report.memoryless_statistic =
      std::max(stats::ks_statistic(coupled[0], shifted_exp),
               stats::ks_statistic(conditioned[0], shifted_exp));
  return report;
}

LowerBoundConditions evaluate_lower_bound_conditions(const Instance& inst,
                                                     const CouplingSpec& spec) {
  spec.validate();
  const Partition& part = spec.partition;
  const double n = static_cast<double>(inst.size());
  const double scale = std::log(n) / n;
  const double eps = part.epsilon();
  const double k = static_cast<double>(part.blocks());

  const std::vector<double> u = u_minima(inst, part);
  const std::vector<double> up = u_prime(u, spec);

  LowerBoundConditions c;
  c.shifted_minima = true;
  for (Vertex i = 0; i < part.a_size(); ++i) {
    if (up[i] < (1.0 - 2.0 * eps) * u[i]) c.shifted_minima = false;
  }
  c.far_from_chosen = true;
  for (Vertex l : spec.chosen) {
    for (Vertex i = 0; i < part.a_size(); ++i) {
      if (i != l && inst(i, l) < (2.0 * k - 1.0) * scale) {
        c.far_from_chosen = false;
      }
    }
  }
  c.typical_weight =
      steiner_exact(inst, spec.chosen).weight > (k - 1.0 - eps) * scale;
  return c;
}

}  // namespace mfsteiner
