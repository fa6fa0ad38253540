#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "wirtflow/fft.hpp"
#include "wirtflow/pattern.hpp"
#include "wirtflow/random.hpp"
#include "wirtflow/types.hpp"

namespace wirtflow {

/// Measurement operator A with rows a_r^*. forward applies A, adjoint
/// applies A^*. Implementations are immutable after construction and
/// safe to share across threads.
class Ensemble {
 public:
  virtual ~Ensemble() = default;

  virtual int n() const = 0;
  virtual int m() const = 0;

  /// (A z)_r = a_r^* z.
  virtual ComplexVector forward(const ComplexVector& z) const = 0;

  /// A^* v = sum_r v_r a_r.
  virtual ComplexVector adjoint(const ComplexVector& v) const = 0;

  /// sum_r ||a_r||^2, used by the spectral initializer's row-norm
  /// lambda normalization.
  virtual double sum_row_norms_squared() const = 0;
};

/// Intensities y_r = |a_r^* x|^2.
RealVector observe(const Ensemble& ensemble, const ComplexVector& x);

/// Dense m x n ensemble with i.i.d. rows from the complex Gaussian model.
class GaussianEnsemble final : public Ensemble {
 public:
  static GaussianEnsemble sample(int n, int m, RandomSource& rng);

  /// Ensemble with the given sampling vectors a_r (stored conjugated,
  /// one per row of A).
  static GaussianEnsemble from_sampling_vectors(const std::vector<ComplexVector>& vectors);

  int n() const override { return static_cast<int>(rows_.cols()); }
  int m() const override { return static_cast<int>(rows_.rows()); }
  ComplexVector forward(const ComplexVector& z) const override;
  ComplexVector adjoint(const ComplexVector& v) const override;
  double sum_row_norms_squared() const override;

  /// The sampling vector a_r (the conjugate of stored row r).
  ComplexVector sampling_vector(int r) const;

 private:
  explicit GaussianEnsemble(ComplexMatrix rows) : rows_(std::move(rows)) {}

  ComplexMatrix rows_;  // row r holds a_r^*
};

/// Coded diffraction ensemble: L modulation codes d_l of length n with
/// the measurement rows a_{(l,k)}[t] = d_l(t) e^{+i 2 pi k t / n},
/// ordered r = l*n + k. Applies are FFT-based; only the codes are stored.
class CdpEnsemble final : public Ensemble {
 public:
  static CdpEnsemble sample(int n, int L, const PatternDistribution& dist,
                            RandomSource& rng);
  static CdpEnsemble from_codes(std::vector<ComplexVector> codes);

  CdpEnsemble(CdpEnsemble&& other) noexcept
      : n_(other.n_),
        codes_(std::move(other.codes_)),
        dft_(std::move(other.dft_)),
        fft_ops_(other.fft_ops_.load()) {}

  int n() const override { return n_; }
  int L() const { return static_cast<int>(codes_.size()); }
  int m() const override { return n_ * L(); }
  ComplexVector forward(const ComplexVector& z) const override;
  ComplexVector adjoint(const ComplexVector& v) const override;
  double sum_row_norms_squared() const override;

  const ComplexVector& code(int l) const { return codes_[static_cast<std::size_t>(l)]; }

  /// Dense row a_{(l,k)} materialized for oracle comparisons.
  ComplexVector sampling_vector(int l, int k) const;

  /// Number of length-n transforms executed so far by forward/adjoint
  /// (each apply costs L of them).
  std::int64_t fft_count() const { return fft_ops_.load(); }

 private:
  explicit CdpEnsemble(std::vector<ComplexVector> codes);

  int n_;
  std::vector<ComplexVector> codes_;
  std::shared_ptr<const Dft> dft_;
  mutable std::atomic<std::int64_t> fft_ops_{0};
};

// CDPE1 file: magic "CDPE1", u32 version=1, u64 n, u64 L, then L code
// vectors in the CVEC1 body layout.
void write_cdpe(const std::string& path, const CdpEnsemble& ensemble);
CdpEnsemble read_cdpe(const std::string& path);

}  // namespace wirtflow
