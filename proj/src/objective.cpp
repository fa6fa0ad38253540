#include "wirtflow/objective.hpp"

#include <cmath>

#include "wirtflow/core.hpp"
#include "wirtflow/errors.hpp"

namespace wirtflow {

namespace {

void check_dims(const Ensemble& ensemble, const RealVector& y, const ComplexVector& z) {
  if (z.size() != ensemble.n()) throw DimensionError("objective: z has wrong length");
  if (y.size() != ensemble.m()) throw DimensionError("objective: y has wrong length");
}

void check_unit(const ComplexVector& x, const char* what) {
  if (std::abs(x.norm() - 1.0) > 1e-9) {
    throw PreconditionError(std::string(what) + ": requires ||x|| = 1");
  }
}

}  // namespace

double loss(const Ensemble& ensemble, const RealVector& y, const ComplexVector& z) {
  check_dims(ensemble, y, z);
  const ComplexVector az = ensemble.forward(z);
  double total = 0.0;
  for (Eigen::Index r = 0; r < az.size(); ++r) {
    const double residual = y[r] - std::norm(az[r]);
    total += residual * residual;
  }
  return total / (2.0 * static_cast<double>(ensemble.m()));
}

ComplexVector wirtinger_gradient(const Ensemble& ensemble, const RealVector& y,
                                 const ComplexVector& z) {
  return evaluate(ensemble, y, z).gradient;
}

Evaluation evaluate(const Ensemble& ensemble, const RealVector& y, const ComplexVector& z) {
  check_dims(ensemble, y, z);
  const ComplexVector az = ensemble.forward(z);
  const double m = static_cast<double>(ensemble.m());
  ComplexVector weighted(az.size());
  double total = 0.0;
  for (Eigen::Index r = 0; r < az.size(); ++r) {
    const double residual = std::norm(az[r]) - y[r];
    total += residual * residual;
    weighted[r] = residual * az[r];
  }
  Evaluation result;
  result.loss = total / (2.0 * m);
  result.gradient = ensemble.adjoint(weighted) / m;
  return result;
}

ComplexVector expected_gradient(const ComplexVector& x, const ComplexVector& z) {
  if (x.size() != z.size()) throw DimensionError("expected_gradient: length mismatch");
  check_unit(x, "expected_gradient");
  const Complex projection = x.dot(z);  // x^* z
  return (z - x * projection) + 2.0 * (z.squaredNorm() - 1.0) * z;
}

ComplexMatrix expected_hessian(const ComplexVector& x) {
  check_unit(x, "expected_hessian");
  const Eigen::Index n = x.size();
  ComplexVector stacked_plus(2 * n);
  stacked_plus << x, x.conjugate();
  ComplexVector stacked_minus(2 * n);
  stacked_minus << x, -x.conjugate();
  ComplexMatrix hessian = ComplexMatrix::Identity(2 * n, 2 * n);
  hessian += 1.5 * stacked_plus * stacked_plus.adjoint();
  hessian -= 0.5 * stacked_minus * stacked_minus.adjoint();
  return hessian;
}

double hessian_quadratic_form(const Ensemble& ensemble, const RealVector& y,
                              const ComplexVector& z, const ComplexVector& h) {
  check_dims(ensemble, y, z);
  if (h.size() != ensemble.n()) throw DimensionError("hessian_quadratic_form: h has wrong length");
  const ComplexVector az = ensemble.forward(z);
  const ComplexVector ah = ensemble.forward(h);
  double total = 0.0;
  for (Eigen::Index r = 0; r < az.size(); ++r) {
    const Complex c = az[r];
    const Complex g = ah[r];
    const Complex cross = c * c * std::conj(g) * std::conj(g);
    total += 2.0 * (2.0 * std::norm(c) - y[r]) * std::norm(g) + 2.0 * cross.real();
  }
  return total / static_cast<double>(ensemble.m());
}

MomentEstimates gaussian_moment_oracle(const ComplexVector& u, const ComplexVector& v,
                                       int samples, RandomSource& rng) {
  if (u.size() != v.size()) throw DimensionError("gaussian_moment_oracle: length mismatch");
  check_unit(u, "gaussian_moment_oracle");
  check_unit(v, "gaussian_moment_oracle");
  if (samples < 2) throw PreconditionError("gaussian_moment_oracle: needs >= 2 samples");

  const int n = static_cast<int>(u.size());
  double sum_sq = 0.0, sumsq_sq = 0.0;
  double sum_cross = 0.0, sumsq_cross = 0.0;
  std::array<double, 4> sum_pow{};
  std::array<double, 4> sumsq_pow{};
  for (int s = 0; s < samples; ++s) {
    const ComplexVector a = sample_complex_gaussian(n, rng);
    const Complex au = a.dot(u);  // a^* u
    const Complex av = a.dot(v);  // a^* v
    // u^* a a^* v = (u^* a)(a^* v) = conj(a^* u) (a^* v)
    const double bilinear = (std::conj(au) * av).real();
    const double av2 = std::norm(av);
    const double value_sq = bilinear * bilinear;
    const double value_cross = bilinear * av2;
    sum_sq += value_sq;
    sumsq_sq += value_sq * value_sq;
    sum_cross += value_cross;
    sumsq_cross += value_cross * value_cross;
    double power = 1.0;
    for (int k = 0; k < 4; ++k) {
      power *= av2;
      sum_pow[k] += power;
      sumsq_pow[k] += power * power;
    }
  }

  const double count = static_cast<double>(samples);
  auto estimate = [count](double sum, double sumsq) {
    const double mean = sum / count;
    const double variance = std::max(sumsq / count - mean * mean, 0.0);
    return MomentEstimate{mean, std::sqrt(variance / count)};
  };
  MomentEstimates result;
  result.re_bilinear_sq = estimate(sum_sq, sumsq_sq);
  result.re_bilinear_abs2 = estimate(sum_cross, sumsq_cross);
  for (int k = 0; k < 4; ++k) result.abs_pow[k] = estimate(sum_pow[k], sumsq_pow[k]);
  return result;
}

double regularity_diagnostic(const Ensemble& ensemble, const RealVector& y,
                             const ComplexVector& x, const ComplexVector& z,
                             double alpha, double beta) {
  check_dims(ensemble, y, z);
  if (x.size() != z.size()) throw DimensionError("regularity_diagnostic: length mismatch");
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw PreconditionError("regularity_diagnostic: alpha, beta must be positive");
  }
  const ComplexVector gradient = wirtinger_gradient(ensemble, y, z);
  const double phi = optimal_phase(z, x);
  const ComplexVector direction = z - std::polar(1.0, phi) * x;
  const double inner = gradient.dot(direction).real();
  const double distance = dist(z, x);
  return inner - distance * distance / alpha - gradient.squaredNorm() / beta;
}

}  // namespace wirtflow
