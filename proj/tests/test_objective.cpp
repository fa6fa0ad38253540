#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include "oracles.hpp"
#include "wirtflow/core.hpp"
#include "wirtflow/errors.hpp"
#include "wirtflow/objective.hpp"

using namespace wirtflow;

namespace {

double hermitian_operator_norm(const ComplexMatrix& matrix) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(matrix);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

ComplexVector unit_gaussian(int n, RandomSource& rng) {
  ComplexVector v = sample_complex_gaussian(n, rng);
  v /= v.norm();
  return v;
}

}  // namespace

TEST_CASE("loss vanishes on the solution set and matches a direct sum") {
  RandomSource rng(51, 0);
  const int n = 12;
  const ComplexVector x = sample_complex_gaussian(n, rng);
  const GaussianEnsemble ensemble = GaussianEnsemble::sample(n, 3 * n, rng);
  const RealVector y = observe(ensemble, x);

  CHECK(loss(ensemble, y, x) <= 1e-18 * y.squaredNorm());
  CHECK(loss(ensemble, y, std::polar(1.0, 0.9) * x) <= 1e-18 * y.squaredNorm());

  // y = 0 turns the loss into (1/2m) sum |(Az)_r|^4
  const ComplexVector z = sample_complex_gaussian(n, rng);
  const RealVector zero_y = RealVector::Zero(ensemble.m());
  const auto rows = oracles::dense_rows(ensemble);
  CHECK(loss(ensemble, zero_y, z) ==
        doctest::Approx(oracles::loss_via_rows(rows, zero_y, z)).epsilon(1e-10));

  const ComplexVector general = sample_complex_gaussian(n, rng);
  CHECK(loss(ensemble, y, general) ==
        doctest::Approx(oracles::loss_via_rows(rows, y, general)).epsilon(1e-10));
  CHECK(loss(ensemble, y, general) >= 0.0);
}

TEST_CASE("gradient vanishes at the planted solution") {
  RandomSource rng(52, 0);
  const int n = 16;
  for (int trial = 0; trial < 3; ++trial) {
    const ComplexVector x = sample_complex_gaussian(n, rng);
    const CdpEnsemble ensemble =
        CdpEnsemble::sample(n, 4, PatternDistribution::octanary(), rng);
    const RealVector y = observe(ensemble, x);
    CHECK(wirtinger_gradient(ensemble, y, x).norm() <= 1e-12 * x.norm());
  }
}

TEST_CASE("gradient passes central finite differences") {
  RandomSource rng(53, 0);
  const double h = 1e-6;
  const double relative_tol = 1e-5;
  const double absolute_floor = 1e-10;

  auto check_instance = [&](const Ensemble& ensemble) {
    ComplexVector x = unit_gaussian(ensemble.n(), rng);
    const RealVector y = observe(ensemble, x);
    ComplexVector z = x + 0.3 * unit_gaussian(ensemble.n(), rng);
    const ComplexVector gradient = wirtinger_gradient(ensemble, y, z);
    const auto f = [&](const ComplexVector& point) { return loss(ensemble, y, point); };
    for (int k = 0; k < ensemble.n(); ++k) {
      const auto fd = oracles::finite_difference(f, z, k, h);
      const double expected_re = 2.0 * gradient[k].real();
      const double expected_im = 2.0 * gradient[k].imag();
      CHECK(std::abs(fd.d_re - expected_re) <=
            relative_tol * std::abs(expected_re) + absolute_floor);
      CHECK(std::abs(fd.d_im - expected_im) <=
            relative_tol * std::abs(expected_im) + absolute_floor);
    }
  };

  for (int trial = 0; trial < 4; ++trial) {
    check_instance(GaussianEnsemble::sample(16, 64, rng));
    check_instance(CdpEnsemble::sample(16, 4, PatternDistribution::octanary(), rng));
  }
}

TEST_CASE("matrix-free gradient equals the explicit per-row sum") {
  RandomSource rng(54, 0);
  for (int n : {4, 17, 32}) {
    const GaussianEnsemble gaussian = GaussianEnsemble::sample(n, 2 * n + 1, rng);
    const CdpEnsemble cdp = CdpEnsemble::sample(n, 3, PatternDistribution::octanary(), rng);
    for (const Ensemble* ensemble : std::initializer_list<const Ensemble*>{&gaussian, &cdp}) {
      const ComplexVector x = sample_complex_gaussian(n, rng);
      const RealVector y = observe(*ensemble, x);
      const ComplexVector z = sample_complex_gaussian(n, rng);
      const ComplexVector fast = wirtinger_gradient(*ensemble, y, z);
      const ComplexVector slow =
          ensemble == static_cast<const Ensemble*>(&gaussian)
              ? oracles::gradient_via_rows(oracles::dense_rows(gaussian), y, z)
              : oracles::gradient_via_rows(oracles::dense_rows(cdp), y, z);
      CHECK((fast - slow).norm() <= 1e-10 * slow.norm());
    }
  }
}

TEST_CASE("loss and gradient are equivariant under a global phase") {
  RandomSource rng(55, 0);
  const int n = 20;
  const GaussianEnsemble ensemble = GaussianEnsemble::sample(n, 5 * n, rng);
  const RealVector y = observe(ensemble, sample_complex_gaussian(n, rng));
  const ComplexVector z = sample_complex_gaussian(n, rng);
  const ComplexVector base = wirtinger_gradient(ensemble, y, z);
  const double base_loss = loss(ensemble, y, z);
  for (double phi : {0.3, 2.0, 5.5}) {
    const Complex rotation = std::polar(1.0, phi);
    const ComplexVector rotated = wirtinger_gradient(ensemble, y, rotation * z);
    CHECK((rotated - rotation * base).norm() <= 1e-10 * base.norm());
    CHECK(loss(ensemble, y, rotation * z) == doctest::Approx(base_loss).epsilon(1e-12));
  }
}

TEST_CASE("monte carlo error shrinks at the square-root rate") {
  RandomSource rng(63, 0);
  const ComplexVector v = unit_gaussian(5, rng);
  const MomentEstimates small = gaussian_moment_oracle(v, v, 20000, rng);
  const MomentEstimates large = gaussian_moment_oracle(v, v, 80000, rng);
  // quadrupling the samples should halve the standard error
  const double ratio = large.abs_pow[1].standard_error / small.abs_pow[1].standard_error;
  CHECK(ratio > 0.3);
  CHECK(ratio < 0.7);
  CHECK(std::abs(small.abs_pow[1].mean - 2.0) <= 3.5 * small.abs_pow[1].standard_error);
  CHECK(std::abs(large.abs_pow[1].mean - 2.0) <= 3.5 * large.abs_pow[1].standard_error);
}

TEST_CASE("expected gradient closed form") {
  RandomSource rng(56, 0);
  const int n = 8;
  const ComplexVector x = unit_gaussian(n, rng);

  CHECK(expected_gradient(x, x).norm() <= 1e-12);

  // z = 2x: (I - xx*) 2x = 0 and 2 (4 - 1) 2x = 12x
  const ComplexVector at_twice = expected_gradient(x, 2.0 * x);
  CHECK((at_twice - 12.0 * x).norm() <= 1e-12);

  CHECK_THROWS_AS(expected_gradient(2.0 * x, x), PreconditionError);

  SUBCASE("Monte Carlo over fresh single-row ensembles") {
    ComplexVector w = sample_complex_gaussian(n, rng);
    w -= x * x.dot(w);
    w /= w.norm();
    const ComplexVector z = 1.5 * x + 0.4 * w;
    const ComplexVector expected = expected_gradient(x, z);
    ComplexVector mean = ComplexVector::Zero(n);
    const int samples = 100000;
    for (int s = 0; s < samples; ++s) {
      const GaussianEnsemble ensemble = GaussianEnsemble::sample(n, 1, rng);
      mean += wirtinger_gradient(ensemble, observe(ensemble, x), z);
    }
    mean /= static_cast<double>(samples);
    CHECK((mean - expected).norm() <= 0.05 * expected.norm());
  }
}

TEST_CASE("expected hessian closed form") {
  SUBCASE("n = 1, x = 1 gives the all-2 matrix") {
    ComplexVector x(1);
    x << Complex(1.0, 0.0);
    const ComplexMatrix hessian = expected_hessian(x);
    REQUIRE(hessian.rows() == 2);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        CHECK(hessian(i, j).real() == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(std::abs(hessian(i, j).imag()) <= 1e-12);
      }
    }
  }

  SUBCASE("I + 2xx* has eigenvalue ratio 1 + 2||x||^2") {
    RandomSource rng(57, 0);
    const int n = 6;
    const ComplexVector x = unit_gaussian(n, rng);
    const ComplexMatrix block =
        ComplexMatrix::Identity(n, n) + 2.0 * (x * x.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(block);
    const RealVector eigenvalues = solver.eigenvalues();
    CHECK(eigenvalues[n - 1] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(eigenvalues[n - 2] == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("empirical hessian concentrates in operator norm") {
    RandomSource rng(58, 0);
    const int n = 4;
    const int m = 100000 * n;
    const ComplexVector x = unit_gaussian(n, rng);
    std::vector<ComplexVector> rows;
    rows.reserve(m);
    RealVector y(m);
    for (int r = 0; r < m; ++r) {
      rows.push_back(sample_complex_gaussian(n, rng));
      y[r] = std::norm(rows.back().dot(x));
    }
    const ComplexMatrix empirical = oracles::dense_hessian(rows, y, x);
    CHECK(hermitian_operator_norm(empirical - expected_hessian(x)) <= 0.1);
  }
}

TEST_CASE("hessian quadratic form matches the dense block sandwich") {
  RandomSource rng(59, 0);
  for (int n : {2, 7, 16}) {
    const GaussianEnsemble gaussian = GaussianEnsemble::sample(n, 3 * n, rng);
    const CdpEnsemble cdp = CdpEnsemble::sample(n, 2, PatternDistribution::octanary(), rng);
    const ComplexVector x = sample_complex_gaussian(n, rng);
    const ComplexVector z = sample_complex_gaussian(n, rng);
    const ComplexVector h = sample_complex_gaussian(n, rng);

    const RealVector y_gaussian = observe(gaussian, x);
    const double fast_gaussian = hessian_quadratic_form(gaussian, y_gaussian, z, h);
    const double slow_gaussian = oracles::block_sandwich(
        oracles::dense_hessian(oracles::dense_rows(gaussian), y_gaussian, z), h);
    CHECK(fast_gaussian == doctest::Approx(slow_gaussian).epsilon(1e-9));

    const RealVector y_cdp = observe(cdp, x);
    const double fast_cdp = hessian_quadratic_form(cdp, y_cdp, z, h);
    const double slow_cdp = oracles::block_sandwich(
        oracles::dense_hessian(oracles::dense_rows(cdp), y_cdp, z), h);
    CHECK(fast_cdp == doctest::Approx(slow_cdp).epsilon(1e-9));

    CHECK(hessian_quadratic_form(gaussian, y_gaussian, z, ComplexVector::Zero(n)) == 0.0);
  }
}

TEST_CASE("hessian quadratic form at the solution matches the closed form in mean") {
  RandomSource rng(60, 0);
  const int n = 4;
  const ComplexVector x = unit_gaussian(n, rng);
  const ComplexVector h = unit_gaussian(n, rng);
  const double expected = oracles::block_sandwich(expected_hessian(x), h);
  double mean = 0.0;
  const int samples = 400000;
  for (int s = 0; s < samples; ++s) {
    const GaussianEnsemble ensemble = GaussianEnsemble::sample(n, 1, rng);
    mean += hessian_quadratic_form(ensemble, observe(ensemble, x), x, h);
  }
  mean /= static_cast<double>(samples);
  CHECK(std::abs(mean - expected) <= 0.05 * std::abs(expected));
}

TEST_CASE("gaussian moment oracle reproduces the closed-form identities") {
  RandomSource rng(61, 0);
  const int n = 6;
  const int samples = 100000;

  SUBCASE("u = v") {
    const ComplexVector v = unit_gaussian(n, rng);
    const MomentEstimates estimates = gaussian_moment_oracle(v, v, samples, rng);
    CHECK(std::abs(estimates.re_bilinear_sq.mean - 2.0) <=
          3.0 * estimates.re_bilinear_sq.standard_error);
    // E|a^* v|^{2k} = k!
    const double factorial[4] = {1.0, 2.0, 6.0, 24.0};
    for (int k = 0; k < 4; ++k) {
      CHECK(std::abs(estimates.abs_pow[k].mean - factorial[k]) <=
            3.0 * estimates.abs_pow[k].standard_error);
      CHECK(estimates.abs_pow[k].standard_error > 0.0);
    }
  }

  SUBCASE("orthogonal u and v") {
    const ComplexVector v = unit_gaussian(n, rng);
    ComplexVector u = sample_complex_gaussian(n, rng);
    u -= v * v.dot(u);
    u /= u.norm();
    const MomentEstimates estimates = gaussian_moment_oracle(u, v, samples, rng);
    CHECK(std::abs(estimates.re_bilinear_abs2.mean) <=
          3.0 * estimates.re_bilinear_abs2.standard_error);
  }

  SUBCASE("general pair against both closed forms") {
    const ComplexVector v = unit_gaussian(n, rng);
    const ComplexVector u = unit_gaussian(n, rng);
    const Complex inner = u.dot(v);  // u^* v
    const MomentEstimates estimates = gaussian_moment_oracle(u, v, samples, rng);
    const double term1 = 0.5 + 1.5 * inner.real() * inner.real() -
                         0.5 * inner.imag() * inner.imag();
    const double term2 = 2.0 * inner.real();
    CHECK(std::abs(estimates.re_bilinear_sq.mean - term1) <=
          4.0 * estimates.re_bilinear_sq.standard_error);
    CHECK(std::abs(estimates.re_bilinear_abs2.mean - term2) <=
          4.0 * estimates.re_bilinear_abs2.standard_error);
  }
}

TEST_CASE("regularity diagnostic signs") {
  RandomSource rng(62, 0);
  const int n = 24;
  const ComplexVector x = unit_gaussian(n, rng);
  const GaussianEnsemble ensemble = GaussianEnsemble::sample(n, 20 * n, rng);
  const RealVector y = observe(ensemble, x);

  SUBCASE("zero at the solution") {
    CHECK(std::abs(regularity_diagnostic(ensemble, y, x, x, 30.0, 500.0)) <= 1e-12);
  }

  SUBCASE("alpha beta < 4 forces a non-positive diagnostic") {
    for (int trial = 0; trial < 20; ++trial) {
      ComplexVector w = unit_gaussian(n, rng);
      const ComplexVector z = x + (0.02 + 0.1 * rng.uniform()) * w;
      CHECK(regularity_diagnostic(ensemble, y, x, z, 1.0, 1.0) <= 1e-12);
      CHECK(regularity_diagnostic(ensemble, y, x, z, 3.9, 1.0) <= 1e-12);
    }
  }

  SUBCASE("holds near the solution at the reference thresholds") {
    int non_negative = 0;
    const int points = 40;
    for (int trial = 0; trial < points; ++trial) {
      ComplexVector w = unit_gaussian(n, rng);
      const double radius = 0.125 * rng.uniform();
      const ComplexVector z = x + radius * w;
      if (regularity_diagnostic(ensemble, y, x, z, 30.0, 3.0 * n + 550.0) >= 0.0) {
        ++non_negative;
      }
    }
    CHECK(non_negative >= points - 2);
  }

  CHECK_THROWS_AS(regularity_diagnostic(ensemble, y, x, x, -1.0, 2.0), PreconditionError);
}
