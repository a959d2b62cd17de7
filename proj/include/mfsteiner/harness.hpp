#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mfsteiner/stats.hpp"

namespace mfsteiner {

/// k + 2l - 1, the limit of W_{k,l} / (ln n / n). Throws DomainError for
/// k + l <= 1, where the weight is identically zero.
int limit_constant(std::size_t k, std::size_t l);

enum class Quantity {
  wkl,          // W(k,l): n W_{k,l} / ln n
  ball_growth,  // ball_growth(k): n * tree weight / ln n
  ball_ratio,   // ball_ratio(k): tree weight / exact Steiner weight
  mst,          // mst: MST weight of K_n
  lemma2,       // lemma2(k,m): indicator of an empty k-fold intersection
  f_lemma,      // f_lemma: conditional CDF at f(X), uniform in law
  coupling,     // coupling(k): n w'(S + v_n) / ln n on the coupled instance
  mgf           // mgf(k): mgf_exact(n, k, t) / c_{k,n}
};

struct ExperimentConfig {
  Quantity quantity = Quantity::wkl;
  std::size_t k = 2;
  std::size_t l = 0;
  std::vector<std::size_t> n_grid;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  /// Worker threads. Not part of the report: output never depends on it.
  std::size_t threads = 1;
  bool retain_trials = false;
  /// epsilon of the coupling partition and of the mgf argument
  /// t = (1 - 1/ln n)(1 - epsilon).
  double epsilon = 0.25;
  /// Enumeration budget for W(k,l).
  std::uint64_t budget = 10'000'000;
};

/// "W(2,0)", "ball_growth(2)", "mst", ... (inverse of parse_quantity).
std::string quantity_label(const ExperimentConfig& config);

/// Parses a label into quantity, k and l of `config`. Accepted forms:
/// W(k,l), ball_growth(k), ball_ratio(k), mst, lemma2(k,m), f_lemma,
/// coupling(k), mgf(k). Throws ConfigError on anything else.
void parse_quantity(std::string_view label, ExperimentConfig& config);

/// Throws ConfigError describing the first problem found.
void validate(const ExperimentConfig& config);

struct ReportRow {
  std::size_t n = 0;
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::optional<stats::Summary> summary;  // empty when every trial failed
  std::optional<double> reference;        // limit or reference value
  /// Ball-growth quantities only: the n^{-(k+1)} bound on the probability
  /// that the annuli miss each other.
  std::optional<double> failure_bound;
  std::vector<double> values;             // per trial, when retained
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<ReportRow> rows;
  double wall_seconds = 0.0;  // not part of the serialized report

  std::size_t total_trials() const;
  std::size_t total_failures() const;
};

/// Runs every (n, trial) pair on its own substream
/// Seed{config.seed, purpose_tag(label + "/n=" + n), trial} and folds the
/// results in trial order. Capability errors and intersection failures are
/// counted per trial; anything else propagates.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// run_experiment for ball_ratio(k). Throws ConfigError unless the
/// quantity is ball_growth or ball_ratio with k >= 2.
ExperimentReport compare_ballgrow_exact(ExperimentConfig config);

/// Value of the statistic for one trial, or nullopt for a failed trial
/// (capability error or ball-growth intersection failure).
std::optional<double> trial_statistic(const ExperimentConfig& config,
                                      std::size_t n, std::uint64_t trial);

enum class ReportFormat { json, csv };

std::string render_json(const ExperimentReport& report,
                        bool include_timing = false);
std::string render_csv(const ExperimentReport& report);
ExperimentReport parse_report_json(std::string_view text);

/// Writes the report to `path` ("-" for stdout). Throws IoError with the
/// path on failure.
void emit_report(const ExperimentReport& report, ReportFormat format,
                 const std::string& path, bool include_timing = false);

inline constexpr const char* kReportVersion = "mfsteiner-report/1";

}  // namespace mfsteiner
