#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace mfsteiner::stats {

/// DKW band: sup |F_n - F| <= sqrt(ln(2/alpha) / (2 n)) with prob 1 - alpha.
double dkw_bound(std::size_t n, double alpha);

/// Kolmogorov distance between the empirical CDF of `sample` and `cdf`.
double ks_statistic(std::vector<double> sample,
                    const std::function<double(double)>& cdf);

/// Kolmogorov distance between two empirical CDFs.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Quantile with linear interpolation between order statistics (the
/// "type 7" rule). `sorted` must be ascending and nonempty.
double quantile(std::span<const double> sorted, double p);

/// Binomial standard error sqrt(p (1 - p) / n).
double binomial_se(double p, std::size_t n);

struct Summary {
  std::size_t count = 0;
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation, 0 for a single value
  double min = 0.0;
  double max = 0.0;
  double q05 = 0.0;
  double q50 = 0.0;
  double q95 = 0.0;
};

/// Summary of `values` accumulated in the given order. Requires a
/// nonempty input.
Summary summarize(std::span<const double> values);

}  // namespace mfsteiner::stats
