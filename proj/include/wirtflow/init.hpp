#pragma once

#include <functional>
#include <vector>

#include "wirtflow/ensemble.hpp"
#include "wirtflow/random.hpp"
#include "wirtflow/types.hpp"

namespace wirtflow {

enum class SpectralNormalization {
  /// lambda^2 = n sum_r y_r / sum_r ||a_r||^2.
  row_norm_lambda,
  /// lambda^2 = (1/m) sum_r y_r.
  mean_intensity,
};

struct SpectralConfig {
  int power_iterations = 50;
  SpectralNormalization normalization = SpectralNormalization::row_norm_lambda;
};

/// Power iteration v <- Y v / ||Y v|| from a random unit start; returns
/// the unit vector after `iterations` steps. Throws
/// DegenerateOperatorError if Y v vanishes.
ComplexVector power_method(const std::function<ComplexVector(const ComplexVector&)>& apply,
                           int n, int iterations, RandomSource& rng);

struct SpectralInit {
  ComplexVector z0;
  /// Set when y is identically zero; z0 is then the zero vector.
  bool degenerate = false;
};

/// Leading eigenvector of Y = (1/m) sum_r y_r a_r a_r^*, computed
/// matrix-free and scaled to norm lambda.
SpectralInit spectral_init(const Ensemble& ensemble, const RealVector& y,
                           const SpectralConfig& config, RandomSource& rng);

struct ResampleConfig {
  int blocks = 1;           // B; the data is split into B+1 groups
  double mu_tilde = 0.1;
};

/// Default block count B = ceil(2 ln n).
int default_resample_blocks(int n);

/// Block-wise initializer: spectral init on block 0, then one gradient
/// step per fresh block b+1 (b = 0..B-1) with step mu_tilde/||u_0||^2.
/// Expects B+1 independent blocks of matching dimension.
ComplexVector resampled_init(const std::vector<const Ensemble*>& blocks,
                             const std::vector<RealVector>& observations,
                             const ResampleConfig& config,
                             const SpectralConfig& spectral, RandomSource& rng);

/// Partition of a CDP ensemble into whole-pattern groups: blocks get
/// floor(L/(B+1)) patterns each, the remainder goes to block 0.
struct BlockedCdp {
  std::vector<CdpEnsemble> ensembles;
  std::vector<RealVector> observations;
};
BlockedCdp partition_cdp(const CdpEnsemble& ensemble, const RealVector& y, int blocks);

}  // namespace wirtflow
