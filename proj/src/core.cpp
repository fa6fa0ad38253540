#include "wirtflow/core.hpp"

#include <cmath>

#include "wirtflow/errors.hpp"

namespace wirtflow {

bool all_finite(const ComplexVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) return false;
  }
  return true;
}

bool all_finite(const RealVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) return false;
  }
  return true;
}

double optimal_phase(const ComplexVector& z, const ComplexVector& x) {
  if (z.size() != x.size()) throw DimensionError("optimal_phase: length mismatch");
  // x.dot(z) = sum_t conj(x_t) z_t; its argument rotates x onto z
  const Complex s = x.dot(z);
  if (std::abs(s) == 0.0) return 0.0;
  double phi = std::atan2(s.imag(), s.real());
  if (phi < 0.0) phi += 2.0 * M_PI;
  if (phi >= 2.0 * M_PI) phi = 0.0;
  return phi;
}

double dist(const ComplexVector& z, const ComplexVector& x) {
  if (z.size() != x.size()) throw DimensionError("dist: length mismatch");
  // Evaluated as ||z - e^{i phi(z)} x|| rather than the algebraically
  // equal sqrt(||z||^2 + ||x||^2 - 2 |<z, x>|): the subtracted form
  // cancels catastrophically near the solution set and floors out at
  // about sqrt(eps) * ||x||.
  const Complex s = x.dot(z);
  const double magnitude = std::abs(s);
  if (magnitude == 0.0) return std::sqrt(z.squaredNorm() + x.squaredNorm());
  return (z - (s / magnitude) * x).norm();
}

double relative_error(const ComplexVector& zhat, const ComplexVector& x) {
  const double norm_x = x.norm();
  if (norm_x == 0.0) throw PreconditionError("relative_error: ||x|| must be positive");
  return dist(zhat, x) / norm_x;
}

}  // namespace wirtflow
