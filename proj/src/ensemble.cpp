#include "wirtflow/ensemble.hpp"

#include <cmath>
#include <fstream>

#include "wirtflow/core.hpp"
#include "wirtflow/errors.hpp"
#include "wirtflow/vector_io.hpp"

namespace wirtflow {

RealVector observe(const Ensemble& ensemble, const ComplexVector& x) {
  if (x.size() != ensemble.n()) throw DimensionError("observe: x has wrong length");
  const ComplexVector ax = ensemble.forward(x);
  RealVector y(ax.size());
  for (Eigen::Index r = 0; r < ax.size(); ++r) y[r] = std::norm(ax[r]);
  return y;
}

GaussianEnsemble GaussianEnsemble::sample(int n, int m, RandomSource& rng) {
  if (n < 1 || m < 1) throw DimensionError("GaussianEnsemble: n, m must be >= 1");
  ComplexMatrix rows(m, n);
  for (int r = 0; r < m; ++r) {
    for (int t = 0; t < n; ++t) {
      // row r stores a_r^*, i.e. the conjugated sampling vector
      rows(r, t) = std::conj(rng.complex_gaussian());
    }
  }
  return GaussianEnsemble(std::move(rows));
}

GaussianEnsemble GaussianEnsemble::from_sampling_vectors(
    const std::vector<ComplexVector>& vectors) {
  if (vectors.empty()) throw DimensionError("GaussianEnsemble: needs at least one row");
  const Eigen::Index n = vectors.front().size();
  if (n < 1) throw DimensionError("GaussianEnsemble: n must be >= 1");
  ComplexMatrix rows(static_cast<Eigen::Index>(vectors.size()), n);
  for (std::size_t r = 0; r < vectors.size(); ++r) {
    if (vectors[r].size() != n) throw DimensionError("GaussianEnsemble: row lengths differ");
    rows.row(static_cast<Eigen::Index>(r)) = vectors[r].conjugate().transpose();
  }
  return GaussianEnsemble(std::move(rows));
}

ComplexVector GaussianEnsemble::forward(const ComplexVector& z) const {
  if (z.size() != rows_.cols()) throw DimensionError("forward: z has wrong length");
  return rows_ * z;
}

ComplexVector GaussianEnsemble::adjoint(const ComplexVector& v) const {
  if (v.size() != rows_.rows()) throw DimensionError("adjoint: v has wrong length");
  return rows_.adjoint() * v;
}

double GaussianEnsemble::sum_row_norms_squared() const {
  return rows_.squaredNorm();
}

ComplexVector GaussianEnsemble::sampling_vector(int r) const {
  return rows_.row(r).conjugate().transpose();
}

CdpEnsemble::CdpEnsemble(std::vector<ComplexVector> codes) : codes_(std::move(codes)) {
  if (codes_.empty()) throw DimensionError("CdpEnsemble: needs at least one code");
  n_ = static_cast<int>(codes_.front().size());
  if (n_ < 1) throw DimensionError("CdpEnsemble: n must be >= 1");
  for (const auto& code : codes_) {
    if (code.size() != n_) throw DimensionError("CdpEnsemble: code lengths differ");
    if (!all_finite(code)) throw PreconditionError("CdpEnsemble: non-finite code entries");
  }
  dft_ = Dft::plan(n_);
}

CdpEnsemble CdpEnsemble::sample(int n, int L, const PatternDistribution& dist,
                                RandomSource& rng) {
  if (n < 1 || L < 1) throw DimensionError("CdpEnsemble: n, L must be >= 1");
  std::vector<ComplexVector> codes;
  codes.reserve(static_cast<std::size_t>(L));
  for (int l = 0; l < L; ++l) codes.push_back(sample_pattern(dist, n, rng));
  return CdpEnsemble(std::move(codes));
}

CdpEnsemble CdpEnsemble::from_codes(std::vector<ComplexVector> codes) {
  return CdpEnsemble(std::move(codes));
}

ComplexVector CdpEnsemble::forward(const ComplexVector& z) const {
  if (z.size() != n_) throw DimensionError("forward: z has wrong length");
  ComplexVector out(m());
  ComplexVector modulated(n_);
  ComplexVector block(n_);
  for (int l = 0; l < L(); ++l) {
    const ComplexVector& d = codes_[static_cast<std::size_t>(l)];
    for (int t = 0; t < n_; ++t) modulated[t] = z[t] * std::conj(d[t]);
    dft_->forward(modulated, block);
    out.segment(static_cast<Eigen::Index>(l) * n_, n_) = block;
  }
  fft_ops_.fetch_add(L(), std::memory_order_relaxed);
  return out;
}

ComplexVector CdpEnsemble::adjoint(const ComplexVector& v) const {
  if (v.size() != m()) throw DimensionError("adjoint: v has wrong length");
  ComplexVector out = ComplexVector::Zero(n_);
  ComplexVector block(n_);
  ComplexVector transformed(n_);
  for (int l = 0; l < L(); ++l) {
    block = v.segment(static_cast<Eigen::Index>(l) * n_, n_);
    dft_->backward(block, transformed);
    const ComplexVector& d = codes_[static_cast<std::size_t>(l)];
    for (int t = 0; t < n_; ++t) out[t] += d[t] * transformed[t];
  }
  fft_ops_.fetch_add(L(), std::memory_order_relaxed);
  return out;
}

double CdpEnsemble::sum_row_norms_squared() const {
  // ||a_{(l,k)}||^2 = sum_t |d_l(t)|^2 for every k
  double per_k = 0.0;
  for (const auto& code : codes_) per_k += code.squaredNorm();
  return static_cast<double>(n_) * per_k;
}

ComplexVector CdpEnsemble::sampling_vector(int l, int k) const {
  const ComplexVector& d = codes_[static_cast<std::size_t>(l)];
  ComplexVector a(n_);
  for (int t = 0; t < n_; ++t) {
    const double angle = 2.0 * M_PI * static_cast<double>(k) * static_cast<double>(t) /
                         static_cast<double>(n_);
    a[t] = d[t] * Complex(std::cos(angle), std::sin(angle));
  }
  return a;
}

void write_cdpe(const std::string& path, const CdpEnsemble& ensemble) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path);
  out.write("CDPE1", 5);
  detail::put_u32(out, 1);
  detail::put_u64(out, static_cast<std::uint64_t>(ensemble.n()));
  detail::put_u64(out, static_cast<std::uint64_t>(ensemble.L()));
  for (int l = 0; l < ensemble.L(); ++l) write_cvec_body(out, ensemble.code(l));
  if (!out) throw IoError("write failed: " + path);
}

CdpEnsemble read_cdpe(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  detail::expect_magic(in, "CDPE1");
  const std::uint32_t version = detail::get_u32(in);
  if (version != 1) throw FormatError("CDPE1: unsupported version");
  const std::uint64_t n = detail::get_u64(in);
  const std::uint64_t L = detail::get_u64(in);
  if (n == 0 || L == 0) throw FormatError("CDPE1: n and L must be >= 1");
  std::vector<ComplexVector> codes;
  codes.reserve(L);
  for (std::uint64_t l = 0; l < L; ++l) {
    ComplexVector code = read_cvec_body(in);
    if (code.size() != static_cast<Eigen::Index>(n)) {
      throw FormatError("CDPE1: code length disagrees with header");
    }
    codes.push_back(std::move(code));
  }
  return CdpEnsemble::from_codes(std::move(codes));
}

}  // namespace wirtflow
