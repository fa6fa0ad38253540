#pragma once

#include "wirtflow/types.hpp"

namespace wirtflow {

/// Phase phi in [0, 2pi) minimizing ||z - e^{i phi} x||. Equals
/// arg(sum_t conj(x_t) z_t); returns 0 when that inner product vanishes
/// (any phase is optimal there, 0 keeps results reproducible).
double optimal_phase(const ComplexVector& z, const ComplexVector& x);

/// Distance up to global phase:
///   dist(z, x) = min_phi ||z - e^{i phi} x||
///             = sqrt(||z||^2 + ||x||^2 - 2 |<z, x>|).
double dist(const ComplexVector& z, const ComplexVector& x);

/// dist(zhat, x) / ||x||. Requires ||x|| > 0.
double relative_error(const ComplexVector& zhat, const ComplexVector& x);

}  // namespace wirtflow
