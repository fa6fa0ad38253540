#pragma once

#include <array>

#include "wirtflow/ensemble.hpp"
#include "wirtflow/random.hpp"
#include "wirtflow/types.hpp"

namespace wirtflow {

/// f(z) = (1/2m) sum_r (y_r - |a_r^* z|^2)^2.
double loss(const Ensemble& ensemble, const RealVector& y, const ComplexVector& z);

/// Wirtinger gradient, convention grad f = (df/dz)^*:
///   grad f(z) = (1/m) sum_r (|a_r^* z|^2 - y_r) (a_r a_r^*) z,
/// computed matrix-free as adjoint((|Az|^2 - y) .* Az) / m.
ComplexVector wirtinger_gradient(const Ensemble& ensemble, const RealVector& y,
                                 const ComplexVector& z);

/// Loss and gradient from a single forward/adjoint pair.
struct Evaluation {
  double loss;
  ComplexVector gradient;
};
Evaluation evaluate(const Ensemble& ensemble, const RealVector& y, const ComplexVector& z);

/// Closed-form E[grad f(z)] = (I - x x^*) z + 2 (||z||^2 - 1) z for the
/// Gaussian and admissible CDP models. Requires ||x|| = 1.
ComplexVector expected_gradient(const ComplexVector& x, const ComplexVector& z);

/// Closed-form 2n x 2n expected Hessian at the solution,
///   I_{2n} + (3/2) [x; conj(x)] [x^*, x^T] - (1/2) [x; -conj(x)] [x^*, -x^T].
/// Requires ||x|| = 1. Oracle/diagnostic only, never on the solver path.
ComplexMatrix expected_hessian(const ComplexVector& x);

/// [h; conj(h)]^* grad^2 f(z) [h; conj(h)] evaluated matrix-free as
///   (1/m) sum_r [ 2 (2|a_r^* z|^2 - y_r) |a_r^* h|^2
///               + 2 Re((a_r^* z)^2 conj(a_r^* h)^2) ].
double hessian_quadratic_form(const Ensemble& ensemble, const RealVector& y,
                              const ComplexVector& z, const ComplexVector& h);

struct MomentEstimate {
  double mean;
  double standard_error;
};

/// Monte Carlo estimates of the Gaussian-model expectations
///   E[Re(u^* a a^* v)^2], E[Re(u^* a a^* v) |a^* v|^2],
///   and E|a^* v|^{2k} for k = 1..4.
struct MomentEstimates {
  MomentEstimate re_bilinear_sq;
  MomentEstimate re_bilinear_abs2;
  std::array<MomentEstimate, 4> abs_pow;  // index k-1 holds E|a^* v|^{2k}
};
MomentEstimates gaussian_moment_oracle(const ComplexVector& u, const ComplexVector& v,
                                       int samples, RandomSource& rng);

/// Regularity-condition margin at z:
///   Re(<grad f(z), z - x e^{i phi(z)}>) - dist^2(z, x)/alpha - ||grad f(z)||^2/beta.
/// Non-negative iff RC(alpha, beta, .) holds at z.
double regularity_diagnostic(const Ensemble& ensemble, const RealVector& y,
                             const ComplexVector& x, const ComplexVector& z,
                             double alpha, double beta);

}  // namespace wirtflow
