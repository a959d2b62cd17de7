#include "mfsteiner/instance.hpp"

#include <cmath>
#include <string>

#include "mfsteiner/errors.hpp"

namespace mfsteiner {

double sample_exp(double u) {
  if (!(u >= 0.0 && u < 1.0)) {
    throw DomainError("sample_exp: u must lie in [0, 1), got " +
                      std::to_string(u));
  }
  return -std::log1p(-u);
}

Instance::Instance(std::size_t n, std::vector<double> weights, Seed seed)
    : n_(n), weights_(std::move(weights)), seed_(seed) {
  if (n_ < 2) throw InvalidArgument("Instance: need at least 2 vertices");
  if (weights_.size() != n_ * (n_ - 1) / 2) {
    throw InvalidArgument("Instance: expected " +
                          std::to_string(n_ * (n_ - 1) / 2) +
                          " weights, got " + std::to_string(weights_.size()));
  }
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw InvalidArgument("Instance: weights must be positive and finite");
    }
  }
}

double Instance::weight(Vertex i, Vertex j) const {
  if (i >= n_ || j >= n_) {
    throw DomainError("Instance::weight: vertex out of range");
  }
  if (i == j) throw DomainError("Instance::weight: no self loops");
  return (*this)(i, j);
}

std::size_t max_vertices(const GenerationOptions& options) noexcept {
  // Largest n with n(n-1)/2 * sizeof(double) <= max_bytes.
  const double pairs =
      static_cast<double>(options.max_bytes / sizeof(double));
  auto n = static_cast<std::size_t>((1.0 + std::sqrt(1.0 + 8.0 * pairs)) / 2.0);
  while (n > 1 && n * (n - 1) / 2 > options.max_bytes / sizeof(double)) --n;
  return n;
}

Instance gen_instance(std::size_t n, const Seed& seed,
                      const GenerationOptions& options) {
  if (n < 2) throw InvalidArgument("gen_instance: need n >= 2");
  if (n > max_vertices(options)) {
    throw ResourceError("gen_instance: n = " + std::to_string(n) +
                        " exceeds the memory cap of " +
                        std::to_string(options.max_bytes) + " bytes");
  }
  Stream stream(seed);
  std::vector<double> weights(n * (n - 1) / 2);
  for (double& w : weights) w = sample_exp(stream.uniform_open());
  return Instance(n, std::move(weights), seed);
}

}  // namespace mfsteiner
