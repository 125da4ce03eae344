#pragma once

#include <cstdint>

namespace sphdiff::rng {

// Counter-based generator contract: the splitmix64 step, the avalanche mix,
// the (seed, a, b) -> state derivation and the Box-Muller transform below are
// all fixed. Sampled fields are therefore reproducible from (seed, l, m)
// alone, independent of evaluation order and thread count.

inline constexpr std::uint64_t golden_gamma = 0x9e3779b97f4a7c15ull;

/// splitmix64 finalizer (stateless avalanche).
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// One splitmix64 step: advances the state and returns the next word.
constexpr std::uint64_t splitmix64(std::uint64_t& state) {
  state += golden_gamma;
  return mix64(state);
}

/// Stream-state derivation for the substream (a, b) of a master seed.
constexpr std::uint64_t derive_state(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = mix64(seed + golden_gamma);
  s = mix64(s ^ (a + 2 * golden_gamma));
  s = mix64(s ^ (b + 3 * golden_gamma));
  return s;
}

/// Uniform double in [0, 1) from the top 53 bits.
constexpr double to_unit(std::uint64_t x) {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

/// Uniform double in (0, 1]; safe as a log argument.
constexpr double to_unit_positive(std::uint64_t x) {
  return static_cast<double>((x >> 11) + 1) * 0x1.0p-53;
}

/// Deterministic stream of standard normal deviates for substream (a, b):
/// Box-Muller over consecutive splitmix64 words.
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, std::uint64_t a, std::uint64_t b)
      : state_(derive_state(seed, a, b)) {}

  double next();

 private:
  std::uint64_t state_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace sphdiff::rng
