#include "mfsteiner/rng.hpp"

#include <bit>

namespace mfsteiner {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// Variant of the finalizer used only for gamma derivation (MurmurHash3 fmix64
// constants), so key and gamma are not the same function of the seed.
constexpr std::uint64_t mix_gamma(std::uint64_t z) noexcept {
  z = (z ^ (z >> 33)) * 0xff51afd7ed558ccdULL;
  z = (z ^ (z >> 33)) * 0xc4ceb9fe1a85ec53ULL;
  z = (z ^ (z >> 33)) | 1ULL;
  // Reject gammas with too few bit transitions.
  if (std::popcount(z ^ (z >> 1)) < 24) z ^= 0xaaaaaaaaaaaaaaaaULL;
  return z;
}

}  // namespace

std::uint64_t purpose_tag(std::string_view label) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Stream::Stream(const Seed& seed) noexcept : seed_(seed) {
  // Fold the triple one word at a time; each step passes through the full
  // avalanche of mix64 before the next word is absorbed.
  std::uint64_t h = mix64(seed.master + kGolden);
  h = mix64(h ^ (seed.purpose + 2 * kGolden));
  h = mix64(h ^ (seed.trial + 3 * kGolden));
  key_ = h;
  gamma_ = mix_gamma(h + kGolden);
}

std::uint64_t Stream::below(std::uint64_t bound) noexcept {
  if (bound <= 1) return 0;
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t x = (*this)();
    if (x >= threshold) return x % bound;
  }
}

}  // namespace mfsteiner
