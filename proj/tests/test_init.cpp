#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include "oracles.hpp"
#include "wirtflow/core.hpp"
#include "wirtflow/errors.hpp"
#include "wirtflow/init.hpp"
#include "wirtflow/objective.hpp"

using namespace wirtflow;

namespace {

ComplexVector unit_gaussian(int n, RandomSource& rng) {
  ComplexVector v = sample_complex_gaussian(n, rng);
  v /= v.norm();
  return v;
}

std::function<ComplexVector(const ComplexVector&)> dense_apply(const ComplexMatrix& matrix) {
  return [matrix](const ComplexVector& v) { return ComplexVector(matrix * v); };
}

// Hermitian PSD matrix with prescribed top eigenvalues 3 and 2 and the
// rest uniform in (0, 1.5).
ComplexMatrix gapped_psd(int n, RandomSource& rng, ComplexVector* top_out) {
  ComplexMatrix raw(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) raw(i, j) = rng.complex_gaussian();
  }
  const Eigen::HouseholderQR<ComplexMatrix> qr(raw);
  const ComplexMatrix q = qr.householderQ();
  RealVector eigenvalues(n);
  eigenvalues[0] = 3.0;
  eigenvalues[1] = 2.0;
  for (int i = 2; i < n; ++i) eigenvalues[i] = 1.5 * rng.uniform();
  if (top_out) *top_out = q.col(0);
  return q * eigenvalues.asDiagonal() * q.adjoint();
}

}  // namespace

TEST_CASE("power method finds the planted direction of I + 2xx*") {
  RandomSource rng(71, 0);
  const int n = 24;
  const ComplexVector x = unit_gaussian(n, rng);
  const auto apply = [&x](const ComplexVector& v) {
    return ComplexVector(v + 2.0 * x * x.dot(v));
  };
  const ComplexVector v = power_method(apply, n, 50, rng);
  CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(x.dot(v)) >= 1.0 - 1e-10);
}

TEST_CASE("power method on the identity returns some unit vector") {
  RandomSource rng(72, 0);
  const auto apply = [](const ComplexVector& v) { return v; };
  const ComplexVector v = power_method(apply, 8, 25, rng);
  CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("power method agrees with a dense eigensolver on gapped matrices") {
  RandomSource rng(73, 0);
  for (int trial = 0; trial < 3; ++trial) {
    const ComplexMatrix matrix = gapped_psd(32, rng, nullptr);
    const ComplexVector dense = oracles::dense_top_eigenvector(matrix);
    const ComplexVector iterated = power_method(dense_apply(matrix), 32, 200, rng);
    CHECK(std::abs(dense.dot(iterated)) >= 1.0 - 1e-8);
  }
}

TEST_CASE("power method rejects the zero operator") {
  RandomSource rng(74, 0);
  const auto apply = [](const ComplexVector& v) {
    return ComplexVector(ComplexVector::Zero(v.size()));
  };
  CHECK_THROWS_AS(power_method(apply, 5, 10, rng), DegenerateOperatorError);
  CHECK_THROWS_AS(power_method(dense_apply(ComplexMatrix::Identity(3, 3)), 3, 0, rng),
                  PreconditionError);
}

TEST_CASE("rayleigh quotient is monotone along the iteration") {
  RandomSource rng(75, 0);
  const ComplexMatrix matrix = gapped_psd(16, rng, nullptr);
  double previous = -1.0;
  for (int iterations = 1; iterations <= 12; ++iterations) {
    RandomSource fresh(75, 1);  // same start vector every time
    const ComplexVector v = power_method(dense_apply(matrix), 16, iterations, fresh);
    const double rayleigh = v.dot(matrix * v).real();
    CHECK(rayleigh >= previous - 1e-12);
    previous = rayleigh;
  }
}

TEST_CASE("spectral init matches the dense eigendecomposition of Y") {
  RandomSource rng(76, 0);
  const int n = 16;
  const ComplexVector x = unit_gaussian(n, rng);
  const GaussianEnsemble ensemble = GaussianEnsemble::sample(n, 40 * n, rng);
  const RealVector y = observe(ensemble, x);

  ComplexMatrix dense_y = ComplexMatrix::Zero(n, n);
  for (int r = 0; r < ensemble.m(); ++r) {
    const ComplexVector a = ensemble.sampling_vector(r);
    dense_y += y[r] * (a * a.adjoint());
  }
  dense_y /= static_cast<double>(ensemble.m());

  SpectralConfig config;
  config.power_iterations = 300;
  const SpectralInit init = spectral_init(ensemble, y, config, rng);
  REQUIRE_FALSE(init.degenerate);

  const ComplexVector top = oracles::dense_top_eigenvector(dense_y);
  const ComplexVector direction = init.z0 / init.z0.norm();
  CHECK(std::abs(top.dot(direction)) >= 1.0 - 1e-8);

  // row-norm normalization: ||z0||^2 = n sum y / sum ||a_r||^2
  const double expected_lambda_sq =
      n * y.sum() / ensemble.sum_row_norms_squared();
  CHECK(init.z0.squaredNorm() == doctest::Approx(expected_lambda_sq).epsilon(1e-10));

  SpectralConfig mean_config;
  mean_config.power_iterations = 50;
  mean_config.normalization = SpectralNormalization::mean_intensity;
  const SpectralInit mean_init = spectral_init(ensemble, y, mean_config, rng);
  CHECK(mean_init.z0.squaredNorm() == doctest::Approx(y.mean()).epsilon(1e-10));
}

TEST_CASE("spectral init is equivariant under intensity scaling") {
  RandomSource rng(77, 0);
  const int n = 32;
  const CdpEnsemble ensemble =
      CdpEnsemble::sample(n, 6, PatternDistribution::octanary(), rng);
  const RealVector y = observe(ensemble, sample_complex_gaussian(n, rng));
  const double scale = 7.5;

  SpectralConfig config;
  RandomSource rng_a(99, 3);
  RandomSource rng_b(99, 3);
  const SpectralInit base = spectral_init(ensemble, y, config, rng_a);
  const SpectralInit scaled = spectral_init(ensemble, RealVector(scale * y), config, rng_b);

  CHECK(scaled.z0.norm() ==
        doctest::Approx(std::sqrt(scale) * base.z0.norm()).epsilon(1e-10));
  const ComplexVector u = base.z0 / base.z0.norm();
  const ComplexVector v = scaled.z0 / scaled.z0.norm();
  CHECK(std::abs(u.dot(v)) >= 1.0 - 1e-8);
}

TEST_CASE("spectral init flags all-zero observations") {
  RandomSource rng(78, 0);
  const GaussianEnsemble ensemble = GaussianEnsemble::sample(8, 16, rng);
  const SpectralInit init =
      spectral_init(ensemble, RealVector::Zero(16), SpectralConfig{}, rng);
  CHECK(init.degenerate);
  CHECK(init.z0.norm() == 0.0);
}

TEST_CASE("spectral init beats a random direction at m = 6n") {
  RandomSource rng(79, 0);
  const int n = 64;
  std::vector<double> spectral_distances, random_distances;
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexVector x = unit_gaussian(n, rng);
    const GaussianEnsemble ensemble = GaussianEnsemble::sample(n, 6 * n, rng);
    const RealVector y = observe(ensemble, x);
    const SpectralInit init = spectral_init(ensemble, y, SpectralConfig{}, rng);
    spectral_distances.push_back(dist(init.z0, x));
    // baseline: same norm, uninformed direction
    random_distances.push_back(dist(init.z0.norm() * unit_gaussian(n, rng), x));
    // concentration: ||z0||^2 tracks the signal energy
    CHECK(std::abs(y.mean() - 1.0) <= 31.0 / 256.0);
  }
  std::sort(spectral_distances.begin(), spectral_distances.end());
  std::sort(random_distances.begin(), random_distances.end());
  CHECK(spectral_distances[5] < random_distances[5]);
  CHECK(spectral_distances[5] < 1.1);
}

TEST_CASE("partition_cdp groups whole patterns with remainder in block 0") {
  RandomSource rng(80, 0);
  const int n = 16;
  const int L = 24;
  const int B = 9;
  const CdpEnsemble ensemble = CdpEnsemble::sample(n, L, PatternDistribution::octanary(), rng);
  const RealVector y = observe(ensemble, sample_complex_gaussian(n, rng));
  const BlockedCdp blocked = partition_cdp(ensemble, y, B);

  REQUIRE(blocked.ensembles.size() == static_cast<std::size_t>(B + 1));
  CHECK(blocked.ensembles[0].L() == 2 + 24 % 10);
  for (int b = 1; b <= B; ++b) CHECK(blocked.ensembles[static_cast<std::size_t>(b)].L() == 2);

  // pattern 0 of block 1 is pattern 6 of the parent, with its y slice
  CHECK((blocked.ensembles[1].code(0) - ensemble.code(6)).norm() == 0.0);
  CHECK((blocked.observations[1].segment(0, n) -
         y.segment(6 * n, n)).norm() == 0.0);

  CHECK_THROWS_AS(partition_cdp(ensemble, y, L), PreconditionError);
  CHECK_THROWS_AS(partition_cdp(ensemble, y, 0), PreconditionError);
}

TEST_CASE("resampled init reduces to spectral init plus one fresh gradient step at B=1") {
  RandomSource rng(81, 0);
  const int n = 32;
  const ComplexVector x = unit_gaussian(n, rng);
  const CdpEnsemble ensemble = CdpEnsemble::sample(n, 8, PatternDistribution::octanary(), rng);
  const RealVector y = observe(ensemble, x);
  const BlockedCdp blocked = partition_cdp(ensemble, y, 1);

  ResampleConfig config;
  config.blocks = 1;
  config.mu_tilde = 0.2;
  SpectralConfig spectral;

  RandomSource rng_a(81, 7);
  const std::vector<const Ensemble*> blocks = {&blocked.ensembles[0], &blocked.ensembles[1]};
  const ComplexVector result =
      resampled_init(blocks, blocked.observations, config, spectral, rng_a);

  RandomSource rng_b(81, 7);
  const SpectralInit u0 = spectral_init(blocked.ensembles[0], blocked.observations[0],
                                        spectral, rng_b);
  const ComplexVector gradient =
      wirtinger_gradient(blocked.ensembles[1], blocked.observations[1], u0.z0);
  const ComplexVector expected = u0.z0 - (config.mu_tilde / u0.z0.squaredNorm()) * gradient;
  CHECK((result - expected).norm() == 0.0);
}

TEST_CASE("resampled init with zero step returns u0 unchanged") {
  RandomSource rng(82, 0);
  const int n = 16;
  const CdpEnsemble ensemble = CdpEnsemble::sample(n, 6, PatternDistribution::octanary(), rng);
  const RealVector y = observe(ensemble, sample_complex_gaussian(n, rng));
  const BlockedCdp blocked = partition_cdp(ensemble, y, 2);
  std::vector<const Ensemble*> blocks;
  for (const auto& block : blocked.ensembles) blocks.push_back(&block);

  ResampleConfig config;
  config.blocks = 2;
  config.mu_tilde = 0.0;

  RandomSource rng_a(82, 5);
  const ComplexVector result =
      resampled_init(blocks, blocked.observations, config, SpectralConfig{}, rng_a);
  RandomSource rng_b(82, 5);
  const SpectralInit u0 =
      spectral_init(blocked.ensembles[0], blocked.observations[0], SpectralConfig{}, rng_b);
  CHECK((result - u0.z0).norm() == 0.0);
}

TEST_CASE("resampled init validates its block structure") {
  RandomSource rng(83, 0);
  const CdpEnsemble a = CdpEnsemble::sample(8, 2, PatternDistribution::octanary(), rng);
  const CdpEnsemble b = CdpEnsemble::sample(12, 2, PatternDistribution::octanary(), rng);
  const RealVector ya = RealVector::Ones(a.m());
  const RealVector yb = RealVector::Ones(b.m());

  ResampleConfig config;
  config.blocks = 1;
  CHECK_THROWS_AS(resampled_init({&a}, {ya}, config, SpectralConfig{}, rng), DimensionError);
  CHECK_THROWS_AS(resampled_init({&a, &b}, {ya, yb}, config, SpectralConfig{}, rng),
                  DimensionError);
  ResampleConfig zero_blocks;
  zero_blocks.blocks = 0;
  CHECK_THROWS_AS(resampled_init({&a}, {ya}, zero_blocks, SpectralConfig{}, rng),
                  PreconditionError);

  CHECK(default_resample_blocks(64) == 9);  // ceil(2 ln 64)
  CHECK(default_resample_blocks(128) == 10);
}
