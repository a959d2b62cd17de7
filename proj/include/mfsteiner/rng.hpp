#pragma once

#include <cstdint>
#include <limits>
#include <string_view>

namespace mfsteiner {

/// Identity of an independent random stream.
///
/// A stream is keyed by the triple (master, purpose, trial). The purpose tag
/// is usually derived from a human-readable label with purpose_tag(); the
/// trial index distinguishes repetitions. Equal triples give equal streams.
struct Seed {
  std::uint64_t master = 0;
  std::uint64_t purpose = 0;
  std::uint64_t trial = 0;

  friend bool operator==(const Seed&, const Seed&) = default;
};

/// FNV-1a 64-bit hash of a label, used to turn purpose names into tags.
std::uint64_t purpose_tag(std::string_view label) noexcept;

/// Stafford "Mix13" finalizer, the output function of SplitMix64.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based generator derived from SplitMix64.
///
/// The seed triple is folded into a 64-bit key and an odd 64-bit increment
/// (gamma), following the SplittableRandom construction. Output number i
/// (counting from 0) is mix64(key + (i + 1) * gamma), so any position in a
/// stream can be computed directly with at(i). All arithmetic is on
/// uint64_t, so streams are identical on every platform.
class Stream {
 public:
  using result_type = std::uint64_t;

  explicit Stream(const Seed& seed) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept { return at(counter_++); }

  /// Output at position `counter` without advancing the stream.
  result_type at(std::uint64_t counter) const noexcept {
    return mix64(key_ + (counter + 1) * gamma_);
  }

  std::uint64_t position() const noexcept { return counter_; }
  const Seed& seed() const noexcept { return seed_; }

  /// 53-bit uniform in the half-open interval [0, 1).
  double uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  /// Uniform in the open interval (0, 1): 52-bit grid shifted by half a step.
  double uniform_open() noexcept {
    return (static_cast<double>((*this)() >> 12) + 0.5) * 0x1.0p-52;
  }

  /// Uniform integer in [0, bound) by modulo reduction, rejecting the short
  /// low range so the result is exactly uniform.
  std::uint64_t below(std::uint64_t bound) noexcept;

 private:
  Seed seed_;
  std::uint64_t key_;
  std::uint64_t gamma_;
  std::uint64_t counter_ = 0;
};

}  // namespace mfsteiner
