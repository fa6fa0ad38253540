#include "wirtflow/signal.hpp"

#include "wirtflow/errors.hpp"
#include "wirtflow/fft.hpp"

namespace wirtflow {

namespace {

ComplexVector lowpass_signal(int n, int band, RandomSource& rng) {
  const int M = band > 0 ? band : n / 8;
  if (M < 2 || M > n || M % 2 != 0) {
    throw PreconditionError("generate_signal: lowpass band must be even with 2 <= M <= n");
  }
  // Coefficients on frequencies -M/2 .. M/2-1; synthesis is the
  // unnormalized inverse DFT of the zero-padded spectrum.
  ComplexVector spectrum = ComplexVector::Zero(n);
  for (int f = -M / 2; f < M / 2; ++f) {
    const Complex coefficient(rng.normal(), rng.normal());
    const int bin = f >= 0 ? f : f + n;
    spectrum[bin] = coefficient;
  }
  ComplexVector x(n);
  Dft::plan(n)->backward(spectrum, x);
  return x;
}

}  // namespace

ComplexVector generate_signal(const SignalModel& model, int n, RandomSource& rng) {
  if (n < 1) throw DimensionError("generate_signal: n must be >= 1");
  switch (model.kind) {
    case SignalKind::gaussian_complex: {
      ComplexVector x(n);
      for (int t = 0; t < n; ++t) {
        const double re = rng.normal();
        const double im = rng.normal();
        x[t] = Complex(re, im);
      }
      return x;
    }
    case SignalKind::lowpass:
      return lowpass_signal(n, model.band, rng);
  }
  throw PreconditionError("generate_signal: unknown signal kind");
}

}  // namespace wirtflow
