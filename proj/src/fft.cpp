#include "wirtflow/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>
#include <unordered_map>

#include "wirtflow/errors.hpp"

namespace wirtflow {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// Per-thread aligned scratch, reused across calls of the same size.
struct Scratch {
  fftw_complex* in = nullptr;
  fftw_complex* out = nullptr;
  ~Scratch() {
    if (in) fftw_free(in);
    if (out) fftw_free(out);
  }
};

Scratch& scratch_for(int n) {
  thread_local std::unordered_map<int, Scratch> buffers;
  Scratch& s = buffers[n];
  if (!s.in) {
    s.in = fftw_alloc_complex(static_cast<std::size_t>(n));
    s.out = fftw_alloc_complex(static_cast<std::size_t>(n));
  }
  return s;
}

}  // namespace

Dft::Dft(int n) : n_(n) {
  if (n < 1) throw DimensionError("Dft: size must be >= 1");
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_complex* in = fftw_alloc_complex(static_cast<std::size_t>(n));
  fftw_complex* out = fftw_alloc_complex(static_cast<std::size_t>(n));
  plan_forward_ = fftw_plan_dft_1d(n, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
  plan_backward_ = fftw_plan_dft_1d(n, in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
  fftw_free(in);
  fftw_free(out);
  if (!plan_forward_ || !plan_backward_) throw Error("Dft: FFTW planning failed");
}

Dft::~Dft() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_forward_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_backward_));
}

std::shared_ptr<const Dft> Dft::plan(int n) {
  static std::mutex cache_mutex;
  static std::map<int, std::shared_ptr<const Dft>> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto& entry = cache[n];
  if (!entry) entry = std::shared_ptr<const Dft>(new Dft(n));
  return entry;
}

namespace {

void execute(const void* plan, int n, const ComplexVector& in, ComplexVector& out) {
  Scratch& s = scratch_for(n);
  std::memcpy(s.in, in.data(), sizeof(fftw_complex) * static_cast<std::size_t>(n));
  fftw_execute_dft(static_cast<fftw_plan>(const_cast<void*>(plan)), s.in, s.out);
  out.resize(n);
  std::memcpy(out.data(), s.out, sizeof(fftw_complex) * static_cast<std::size_t>(n));
}

}  // namespace

void Dft::forward(const ComplexVector& in, ComplexVector& out) const {
  if (in.size() != n_) throw DimensionError("Dft::forward: length mismatch");
  execute(plan_forward_, n_, in, out);
}

void Dft::backward(const ComplexVector& in, ComplexVector& out) const {
  if (in.size() != n_) throw DimensionError("Dft::backward: length mismatch");
  execute(plan_backward_, n_, in, out);
}

}  // namespace wirtflow
