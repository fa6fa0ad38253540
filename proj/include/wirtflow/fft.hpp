#pragma once

#include <memory>

#include "wirtflow/types.hpp"

namespace wirtflow {

/// Unnormalized length-n DFT backed by FFTW.
///
/// forward uses the kernel e^{-i 2 pi k t / n}, backward the conjugate
/// kernel without any 1/n factor, so backward(forward(v)) == n * v.
///
/// Plans are created once per size and cached (planning is serialized
/// internally; execution goes through per-thread scratch buffers and is
/// safe to call concurrently on a shared plan).
class Dft {
 public:
  static std::shared_ptr<const Dft> plan(int n);

  ~Dft();
  Dft(const Dft&) = delete;
  Dft& operator=(const Dft&) = delete;

  int size() const { return n_; }

  void forward(const ComplexVector& in, ComplexVector& out) const;
  void backward(const ComplexVector& in, ComplexVector& out) const;

 private:
  explicit Dft(int n);

  int n_;
  void* plan_forward_;
  void* plan_backward_;
};

}  // namespace wirtflow
