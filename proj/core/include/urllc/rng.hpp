#pragma once

#include <cstdint>
#include <limits>

namespace urllc {

// SplitMix64 used as a counter-based generator: the k-th output is
// mix(key + k * 0x9E3779B97F4A7C15), so any (seed, stream, position) triple is
// reproducible on every platform. Substreams get independent keys by hashing
// the stream id into the seed.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  // Generator for an independent substream, e.g. one per sweep point.
  SplitMix64 split(std::uint64_t stream) const { return SplitMix64(seed_, stream); }

  static std::uint64_t mix(std::uint64_t z);

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

// Uniform on [0, 1) with 53 random bits.
double uniform01(SplitMix64& rng);

// Exponential with the given mean (> 0).
double exponential(SplitMix64& rng, double mean);

// Poisson with the given mean (>= 0), by sequential inversion. Means above 50
// are split into equal chunks and summed.
std::uint64_t poisson(SplitMix64& rng, double mean);

}  // namespace urllc
