#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "nrefl/scalar.hpp"

namespace nrefl {

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;
inline constexpr std::size_t kDefaultSamplesPerVariable = 5;
inline constexpr long kSampleBound = 20;

/// Deterministic source of random rational sample points.
///
/// Numerators are uniform in [-20, 20] and denominators in [1, 20]; the bit
/// stream comes from mt19937_64, whose output sequence is fixed by the standard.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed = kDefaultSeed) : engine_(seed) {}

  Rational next_rational();
  std::vector<Scalar> next_point(std::size_t arity);

 private:
  long uniform(long lo, long hi);

  std::mt19937_64 engine_;
};

}  // namespace nrefl
