#include "wirtflow/random.hpp"

#include <cmath>

#include "wirtflow/errors.hpp"

namespace wirtflow {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t splitmix_next(std::uint64_t& x) {
  x += kGamma;
  return mix64(x);
}

std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream) {
  std::uint64_t x = mix64(seed + kGamma) ^ rotl(mix64(stream + 0x5851F42D4C957F2DULL), 32);
  for (auto& word : state_) word = splitmix_next(x);
  // xoshiro must not start from the all-zero state
  if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = kGamma;
}

std::uint64_t RandomSource::next_u64() {
  // xoshiro256++
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RandomSource::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomSource::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller; 1 - uniform() keeps the log argument in (0, 1]
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * M_PI * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Complex RandomSource::complex_gaussian() {
  const double re = normal() * M_SQRT1_2;
  const double im = normal() * M_SQRT1_2;
  return {re, im};
}

RandomSource RandomSource::derived(std::uint64_t tag) const {
  return RandomSource(seed_, mix64(stream_ + kGamma) ^ mix64(tag + 0x0123456789ABCDEFULL));
}

std::uint64_t RandomSource::trial_stream(std::uint64_t point, std::uint64_t trial) {
  // mix64 is a bijection, so distinct (point, trial) pairs with
  // trial < 2^32 map to distinct streams
  return mix64((point << 32) | (trial & 0xFFFFFFFFULL));
}

ComplexVector sample_complex_gaussian(int n, RandomSource& rng) {
  if (n < 1) throw DimensionError("sample_complex_gaussian: n must be >= 1");
  ComplexVector v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.complex_gaussian();
  return v;
}

}  // namespace wirtflow
