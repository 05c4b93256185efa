#include "urllc/rng.hpp"

#include <cmath>

#include "urllc/error.hpp"

namespace urllc {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr double kMaxInversionMean = 50.0;

std::uint64_t poisson_inversion(SplitMix64& rng, double mean) {
  const double u = uniform01(rng);
  double p = std::exp(-mean);
  double cdf = p;
  std::uint64_t k = 0;
  // The cap only matters if u lands within rounding of 1.
  while (u >= cdf && k < 10'000) {
    ++k;
    p *= mean / static_cast<double>(k);
    cdf += p;
    if (p == 0.0 && static_cast<double>(k) > mean) {
      break;
    }
  }
  return k;
}

}  // namespace

std::uint64_t SplitMix64::mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

SplitMix64::SplitMix64(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), state_(stream == 0 ? seed : seed ^ mix(stream * kGolden + 1)) {}

SplitMix64::result_type SplitMix64::operator()() {
  state_ += kGolden;
  return mix(state_);
}

double uniform01(SplitMix64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

double exponential(SplitMix64& rng, double mean) {
  if (!(mean > 0.0)) {
    throw DomainError("exponential: mean must be > 0");
  }
  return -mean * std::log1p(-uniform01(rng));
}

std::uint64_t poisson(SplitMix64& rng, double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw DomainError("poisson: mean must be finite and >= 0");
  }
  if (mean == 0.0) {
    return 0;
  }
  if (mean <= kMaxInversionMean) {
    return poisson_inversion(rng, mean);
  }
  const auto chunks = static_cast<std::uint64_t>(std::ceil(mean / kMaxInversionMean));
  const double chunk_mean = mean / static_cast<double>(chunks);
  std::uint64_t total = 0;
  for (std::uint64_t i = 0; i < chunks; ++i) {
    total += poisson_inversion(rng, chunk_mean);
  }
  return total;
}

}  // namespace urllc
