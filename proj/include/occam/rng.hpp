#pragma once

#include <cstdint>

namespace occam {

// splitmix64 (Steele, Lea, Flood 2014). All randomized operations in the
// library draw from this generator so that every implementation of the file
// formats and masks agrees bit-exactly:
//
//   state += 0x9E3779B97F4A7C15
//   z = state
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   return z ^ (z >> 31)
//
// A uniform double in [0,1) is (next() >> 11) * 2^-53.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  constexpr double next_unit() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Uniform symbol in {0, ..., alphabet-1} as floor(next_unit() * alphabet).
  constexpr unsigned next_symbol(unsigned alphabet) noexcept {
    return static_cast<unsigned>(next_unit() * alphabet);
  }

 private:
  std::uint64_t state_;
};

// Seed for sweep task `index`: first output of splitmix64 seeded with
// master ^ index.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return SplitMix64(master ^ index).next();
}

}  // namespace occam
