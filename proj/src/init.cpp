#include "wirtflow/init.hpp"

#include <cmath>

#include "wirtflow/errors.hpp"
#include "wirtflow/objective.hpp"

namespace wirtflow {

ComplexVector power_method(const std::function<ComplexVector(const ComplexVector&)>& apply,
                           int n, int iterations, RandomSource& rng) {
  if (n < 1) throw DimensionError("power_method: n must be >= 1");
  if (iterations < 1) throw PreconditionError("power_method: iterations must be >= 1");
  ComplexVector v = sample_complex_gaussian(n, rng);
  v /= v.norm();
  for (int i = 0; i < iterations; ++i) {
    ComplexVector next = apply(v);
    const double norm = next.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw DegenerateOperatorError("power_method: Y v vanished");
    }
    v = next / norm;
  }
  return v;
}

SpectralInit spectral_init(const Ensemble& ensemble, const RealVector& y,
                           const SpectralConfig& config, RandomSource& rng) {
  if (y.size() != ensemble.m()) throw DimensionError("spectral_init: y has wrong length");
  const double sum_y = y.sum();
  if (sum_y == 0.0) {
    // all-zero observations: the zero signal is the (flagged) answer
    return {ComplexVector::Zero(ensemble.n()), true};
  }
  const double m = static_cast<double>(ensemble.m());
  const auto apply_Y = [&](const ComplexVector& v) {
    ComplexVector av = ensemble.forward(v);
    for (Eigen::Index r = 0; r < av.size(); ++r) av[r] *= y[r];
    return ComplexVector(ensemble.adjoint(av) / m);
  };
  ComplexVector direction =
      power_method(apply_Y, ensemble.n(), config.power_iterations, rng);
  double lambda_sq = 0.0;
  switch (config.normalization) {
    case SpectralNormalization::row_norm_lambda:
      lambda_sq = static_cast<double>(ensemble.n()) * sum_y / ensemble.sum_row_norms_squared();
      break;
    case SpectralNormalization::mean_intensity:
      lambda_sq = sum_y / m;
      break;
  }
  return {std::sqrt(lambda_sq) * direction, false};
}

int default_resample_blocks(int n) {
  return static_cast<int>(std::ceil(2.0 * std::log(static_cast<double>(n))));
}

ComplexVector resampled_init(const std::vector<const Ensemble*>& blocks,
                             const std::vector<RealVector>& observations,
                             const ResampleConfig& config,
                             const SpectralConfig& spectral, RandomSource& rng) {
  const int B = config.blocks;
  if (B < 1) throw PreconditionError("resampled_init: needs B >= 1");
  if (blocks.size() != static_cast<std::size_t>(B + 1) ||
      observations.size() != static_cast<std::size_t>(B + 1)) {
    throw DimensionError("resampled_init: expected B+1 blocks");
  }
  const int n = blocks.front()->n();
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b]->n() != n) throw DimensionError("resampled_init: block dimensions differ");
    if (observations[b].size() != blocks[b]->m()) {
      throw DimensionError("resampled_init: observations do not match block");
    }
  }

  const SpectralInit start = spectral_init(*blocks[0], observations[0], spectral, rng);
  ComplexVector u = start.z0;
  if (start.degenerate) return u;
  const double norm_u0_sq = u.squaredNorm();
  for (int b = 0; b < B; ++b) {
    // step b consumes the fresh block b+1; block 0 stays init-only
    const ComplexVector gradient =
        wirtinger_gradient(*blocks[static_cast<std::size_t>(b + 1)],
                           observations[static_cast<std::size_t>(b + 1)], u);
    u -= (config.mu_tilde / norm_u0_sq) * gradient;
  }
  return u;
}

BlockedCdp partition_cdp(const CdpEnsemble& ensemble, const RealVector& y, int blocks) {
  const int B = blocks;
  if (B < 1) throw PreconditionError("partition_cdp: needs B >= 1");
  const int L = ensemble.L();
  if (L < B + 1) throw PreconditionError("partition_cdp: needs L >= B + 1 patterns");
  if (y.size() != ensemble.m()) throw DimensionError("partition_cdp: y has wrong length");

  const int n = ensemble.n();
  const int per_block = L / (B + 1);
  const int remainder = L % (B + 1);
  BlockedCdp result;
  int next_pattern = 0;
  for (int b = 0; b <= B; ++b) {
    const int count = per_block + (b == 0 ? remainder : 0);
    std::vector<ComplexVector> codes;
    codes.reserve(static_cast<std::size_t>(count));
    RealVector y_block(static_cast<Eigen::Index>(count) * n);
    for (int j = 0; j < count; ++j, ++next_pattern) {
      codes.push_back(ensemble.code(next_pattern));
      y_block.segment(static_cast<Eigen::Index>(j) * n, n) =
          y.segment(static_cast<Eigen::Index>(next_pattern) * n, n);
    }
    result.ensembles.push_back(CdpEnsemble::from_codes(std::move(codes)));
    result.observations.push_back(std::move(y_block));
  }
  return result;
}

}  // namespace wirtflow
