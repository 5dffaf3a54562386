#include "nrefl/sampling.hpp"

namespace nrefl {

long Sampler::uniform(long lo, long hi) {
  // Rejection keeps the draw unbiased and independent of the standard library's distributions.
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return lo + static_cast<long>(x % span);
}

Rational Sampler::next_rational() {
  const long num = uniform(-kSampleBound, kSampleBound);
  const long den = uniform(1, kSampleBound);
  return make_rational(num, den);
}

std::vector<Scalar> Sampler::next_point(std::size_t arity) {
  std::vector<Scalar> p;
  p.reserve(arity);
  for (std::size_t i = 0; i < arity; ++i) p.emplace_back(next_rational());
  return p;
}

}  // namespace nrefl
