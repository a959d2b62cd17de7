#include "mfsteiner/harness.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <thread>

#include "mfsteiner/ballgrow.hpp"
#include "mfsteiner/errors.hpp"
#include "mfsteiner/instance.hpp"
#include "mfsteiner/maximal.hpp"
#include "mfsteiner/steiner.hpp"
#include "mfsteiner/theory.hpp"

namespace mfsteiner {

namespace {

constexpr double kZeta3 = 1.2020569031595942;

double log_scale(std::size_t n) {
  return std::log(static_cast<double>(n)) / static_cast<double>(n);
}

std::vector<Vertex> first_vertices(std::size_t k) {
  std::vector<Vertex> vs(k);
  for (Vertex v = 0; v < k; ++v) vs[v] = v;
  return vs;
}

std::optional<double> reference_value(const ExperimentConfig& c,
                                      std::size_t n) {
  switch (c.quantity) {
    case Quantity::wkl:
      return static_cast<double>(limit_constant(c.k, c.l));
    case Quantity::ball_growth:
      return static_cast<double>(2 * c.k) - 1.0;
    case Quantity::ball_ratio:
      return 1.0;
    case Quantity::mst:
      return kZeta3;
    case Quantity::lemma2:
      return lemma2_bound(n, c.l, c.k);
    case Quantity::f_lemma:
      return 0.5;
    case Quantity::coupling:
      return static_cast<double>(c.k) * (2.0 - 2.0 * c.epsilon);
    case Quantity::mgf:
      return std::nullopt;
  }
  return std::nullopt;
}

double mgf_argument(std::size_t n, double epsilon) {
  return (1.0 - 1.0 / std::log(static_cast<double>(n))) * (1.0 - epsilon);
}

std::size_t parse_count(std::string_view text, std::string_view label) {
  std::size_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ConfigError("bad count '" + std::string(text) + "' in quantity '" +
                      std::string(label) + "'");
  }
  return value;
}

}  // namespace

int limit_constant(std::size_t k, std::size_t l) {
  if (k + l <= 1) {
    throw DomainError("limit_constant: need k + l >= 2 (W is 0 otherwise)");
  }
  return static_cast<int>(k + 2 * l) - 1;
}

std::string quantity_label(const ExperimentConfig& c) {
  const std::string k = std::to_string(c.k);
  switch (c.quantity) {
    case Quantity::wkl:
      return "W(" + k + "," + std::to_string(c.l) + ")";
    case Quantity::ball_growth:
      return "ball_growth(" + k + ")";
    case Quantity::ball_ratio:
      return "ball_ratio(" + k + ")";
    case Quantity::mst:
      return "mst";
    case Quantity::lemma2:
      return "lemma2(" + k + "," + std::to_string(c.l) + ")";
    case Quantity::f_lemma:
      return "f_lemma";
    case Quantity::coupling:
      return "coupling(" + k + ")";
    case Quantity::mgf:
      return "mgf(" + k + ")";
  }
  return "unknown";
}

void parse_quantity(std::string_view label, ExperimentConfig& config) {
  std::string_view name = label;
  std::vector<std::string_view> args;
  if (const auto open = label.find('('); open != std::string_view::npos) {
    if (label.back() != ')') {
      throw ConfigError("unterminated quantity '" + std::string(label) + "'");
    }
    name = label.substr(0, open);
    std::string_view inner = label.substr(open + 1, label.size() - open - 2);
    while (true) {
      const auto comma = inner.find(',');
      args.push_back(inner.substr(0, comma));
      if (comma == std::string_view::npos) break;
      inner.remove_prefix(comma + 1);
    }
  }
  auto expect = [&](std::size_t count) {
    if (args.size() != count) {
      throw ConfigError("quantity '" + std::string(label) + "' takes " +
                        std::to_string(count) + " argument(s)");
    }
  };
  if (name == "W") {
    expect(2);
    config.quantity = Quantity::wkl;
    config.k = parse_count(args[0], label);
    config.l = parse_count(args[1], label);
  } else if (name == "ball_growth" || name == "ball_ratio" ||
             name == "coupling" || name == "mgf") {
    expect(1);
    config.quantity = name == "ball_growth"  ? Quantity::ball_growth
                      : name == "ball_ratio" ? Quantity::ball_ratio
                      : name == "coupling"   ? Quantity::coupling
                                             : Quantity::mgf;
    config.k = parse_count(args[0], label);
    config.l = 0;
  } else if (name == "lemma2") {
    expect(2);
    config.quantity = Quantity::lemma2;
    config.k = parse_count(args[0], label);
    config.l = parse_count(args[1], label);
  } else if (name == "mst" || name == "f_lemma") {
    expect(0);
    config.quantity = name == "mst" ? Quantity::mst : Quantity::f_lemma;
    config.k = 0;
    config.l = 0;
  } else {
    throw ConfigError("unknown quantity '" + std::string(label) + "'");
  }
}

void validate(const ExperimentConfig& c) {
  const std::string label = quantity_label(c);
  if (c.n_grid.empty()) throw ConfigError("n_grid is empty");
  for (std::size_t i = 0; i < c.n_grid.size(); ++i) {
    if (c.n_grid[i] < 2) throw ConfigError("n_grid entries must be >= 2");
    if (i > 0 && c.n_grid[i] <= c.n_grid[i - 1]) {
      throw ConfigError("n_grid must be strictly increasing");
    }
  }
  if (c.trials < 1) throw ConfigError("trials must be >= 1");
  if (c.threads < 1) throw ConfigError("threads must be >= 1");
  const std::size_t cap = max_vertices();
  for (std::size_t n : c.n_grid) {
    if (n > cap) {
      throw ConfigError("n = " + std::to_string(n) + " exceeds the memory cap");
    }
  }

  switch (c.quantity) {
    case Quantity::wkl:
      if (c.k + c.l < 2) throw ConfigError(label + ": need k + l >= 2");
      if (c.k + c.l > 8) throw ConfigError(label + ": need k + l <= 8");
      for (std::size_t n : c.n_grid) {
        if (n < c.k + c.l) throw ConfigError(label + ": need k + l <= n");
      }
      break;
    case Quantity::ball_growth:
    case Quantity::ball_ratio:
      if (c.k < 1) throw ConfigError(label + ": need k >= 1");
      if (c.quantity == Quantity::ball_ratio && c.k < 2) {
        throw ConfigError(label + ": ratio undefined for k = 1 (both weights 0)");
      }
      if (c.k > 8) throw ConfigError(label + ": need k <= 8");
      for (std::size_t n : c.n_grid) {
        if (c.k >= 2 && 2 * c.k * ball_size(n, c.k) > n) {
          throw ConfigError(label + ": balls and annuli do not fit at n = " +
                            std::to_string(n));
        }
      }
      break;
    case Quantity::mst:
    case Quantity::f_lemma:
      break;
    case Quantity::lemma2:
      if (c.k < 1) throw ConfigError(label + ": need k >= 1");
      for (std::size_t n : c.n_grid) {
        if (c.l < 1 || c.l > n) throw ConfigError(label + ": need 1 <= m <= n");
      }
      break;
    case Quantity::coupling:
      if (c.k < 1 || c.k + 1 > 8) throw ConfigError(label + ": need 1 <= k <= 7");
      if (!(c.epsilon > 0.0 && c.epsilon < 0.5)) {
        throw ConfigError(label + ": need 0 < epsilon < 1/2 so that b > 0");
      }
      for (std::size_t n : c.n_grid) {
        try {
          Partition(n, c.epsilon, c.k);
        } catch (const InvalidArgument& e) {
          throw ConfigError(label + ": " + e.what());
        }
      }
      break;
    case Quantity::mgf:
      if (c.k < 1) throw ConfigError(label + ": need k >= 1");
      if (!(c.epsilon > 0.0 && c.epsilon < 1.0)) {
        throw ConfigError(label + ": need 0 < epsilon < 1");
      }
      for (std::size_t n : c.n_grid) {
        if (n < 3) throw ConfigError(label + ": need n >= 3");
        try {
          mgf_exact(n, c.k, mgf_argument(n, c.epsilon));
        } catch (const Error& e) {
          throw ConfigError(label + ": " + e.what());
        }
      }
      break;
  }
}

std::optional<double> trial_statistic(const ExperimentConfig& c,
                                      std::size_t n, std::uint64_t trial) {
  const Seed seed{c.seed,
                  purpose_tag(quantity_label(c) + "/n=" + std::to_string(n)),
                  trial};
  const double scale = log_scale(n);
  try {
    switch (c.quantity) {
      case Quantity::wkl: {
        const Instance inst = gen_instance(n, seed);
        MaximalOptions options;
        options.budget = c.budget;
        return w_max(inst, c.k, c.l, options).weight / scale;
      }
      case Quantity::ball_growth:
      case Quantity::ball_ratio: {
        const Instance inst = gen_instance(n, seed);
        const BallGrowthOutcome out = ball_growth_tree(inst, c.k);
        if (out.status != BallGrowthStatus::success) return std::nullopt;
        if (c.quantity == Quantity::ball_growth) return out.tree_weight / scale;
        return out.tree_weight /
               steiner_exact(inst, first_vertices(c.k)).weight;
      }
      case Quantity::mst:
        return mst(gen_instance(n, seed));
      case Quantity::lemma2: {
        Stream stream(seed);
        return subset_intersection_empty_freq(n, c.l, c.k, 1, stream);
      }
      case Quantity::f_lemma: {
        Stream stream(seed);
        const Mean mu{1.0 / static_cast<double>(n)};
        const double x = sample_exponential(stream, mu);
        return conditional_cdf(f_transform(x, mu, scale), mu, scale);
      }
      case Quantity::coupling: {
        const Instance inst = gen_instance(n, seed);
        const CouplingSpec spec =
            CouplingSpec::standard(Partition(n, c.epsilon, c.k));
        std::vector<Vertex> terminals = spec.chosen;
        terminals.push_back(n - 1);
        return steiner_exact(apply_coupling(inst, spec), terminals).weight /
               scale;
      }
      case Quantity::mgf:
        return mgf_exact(n, c.k, mgf_argument(n, c.epsilon)) / c_kn(n, c.k);
    }
  } catch (const CapabilityError&) {
    return std::nullopt;
  }
  return std::nullopt;
}

std::size_t ExperimentReport::total_trials() const {
  std::size_t total = 0;
  for (const ReportRow& row : rows) total += row.trials;
  return total;
}

std::size_t ExperimentReport::total_failures() const {
  std::size_t total = 0;
  for (const ReportRow& row : rows) total += row.failures;
  return total;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  validate(config);
  const auto started = std::chrono::steady_clock::now();
  ExperimentReport report;
  report.config = config;

  for (std::size_t n : config.n_grid) {
    std::vector<std::optional<double>> results(config.trials);
    std::vector<std::exception_ptr> errors(config.trials);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t t = next++; t < config.trials; t = next++) {
        try {
          results[t] = trial_statistic(config, n, t);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      }
    };
    const std::size_t workers = std::min(config.threads, config.trials);
    if (workers <= 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    for (const auto& error : errors) {
      if (error) std::rethrow_exception(error);
    }

    ReportRow row;
    row.n = n;
    row.trials = config.trials;
    std::vector<double> values;
    for (const auto& r : results) {
      if (r) {
        values.push_back(*r);
      } else {
        ++row.failures;
      }
    }
    if (!values.empty()) row.summary = stats::summarize(values);
    row.reference = reference_value(config, n);
    if (config.quantity == Quantity::ball_growth ||
        config.quantity == Quantity::ball_ratio) {
      row.failure_bound =
          std::pow(static_cast<double>(n), -static_cast<double>(config.k + 1));
    }
    if (config.retain_trials) row.values = std::move(values);
    report.rows.push_back(std::move(row));
  }

  report.wall_seconds = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - started)
                            .count();
  return report;
}

ExperimentReport compare_ballgrow_exact(ExperimentConfig config) {
  if (config.quantity != Quantity::ball_growth &&
      config.quantity != Quantity::ball_ratio) {
    throw ConfigError("compare_ballgrow_exact: quantity must be ball_growth(k)");
  }
  config.quantity = Quantity::ball_ratio;
  return run_experiment(config);
}

}  // namespace mfsteiner
