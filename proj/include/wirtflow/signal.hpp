#pragma once

#include "wirtflow/random.hpp"
#include "wirtflow/types.hpp"

namespace wirtflow {

enum class SignalKind {
  /// i.i.d. entries X + iY with X, Y ~ N(0, 1).
  gaussian_complex,
  /// Band-limited synthesis over M frequencies with N(0,1) coefficients.
  lowpass,
};

struct SignalModel {
  SignalKind kind = SignalKind::gaussian_complex;
  /// Band size M for lowpass; 0 means the default n/8. Must be even,
  /// with 2 <= M <= n.
  int band = 0;
};

ComplexVector generate_signal(const SignalModel& model, int n, RandomSource& rng);

}  // namespace wirtflow
