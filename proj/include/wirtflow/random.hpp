#pragma once

#include <cstdint>

#include "wirtflow/types.hpp"

namespace wirtflow {

/// Splittable, seedable random source. A (seed, stream) pair fully
/// determines the draw sequence, so parallel trials can each construct
/// their own stream and get results independent of scheduling order.
///
/// Internally xoshiro256++ keyed by hashing (seed, stream); normals come
/// from Box-Muller on top of the raw 64-bit output, so the sequence does
/// not depend on any library distribution implementation.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();

  /// Uniform double in [0, 1).
  double uniform();

  /// Standard normal N(0, 1).
  double normal();

  /// Complex draw with real and imaginary parts each N(0, 1/2),
  /// so E|value|^2 = 1.
  Complex complex_gaussian();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  /// A fresh source on a stream derived from (this stream, tag).
  /// Derivation is stateless: it does not consume draws from *this.
  RandomSource derived(std::uint64_t tag) const;

  /// Stream id for trial `trial` of sweep point `point`.
  static std::uint64_t trial_stream(std::uint64_t point, std::uint64_t trial);

 private:
  std::uint64_t state_[4];
  std::uint64_t seed_;
  std::uint64_t stream_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Length-n vector with i.i.d. entries distributed as complex_gaussian().
ComplexVector sample_complex_gaussian(int n, RandomSource& rng);

}  // namespace wirtflow
