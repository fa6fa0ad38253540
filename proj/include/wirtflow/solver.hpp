#pragma once

#include <iosfwd>
#include <vector>

#include "wirtflow/ensemble.hpp"
#include "wirtflow/errors.hpp"
#include "wirtflow/types.hpp"

namespace wirtflow {

/// Step-size schedule: either a constant mu or the heuristic ramp
/// mu_tau = min(1 - e^{-tau/tau0}, mu_max).
class Schedule {
 public:
  static Schedule constant(double mu);
  static Schedule heuristic(double tau0 = 330.0, double mu_max = 0.4);

  /// mu_tau for iteration tau >= 1.
  double mu_at(int tau) const;

  bool is_constant() const { return constant_; }
  double mu() const { return mu_; }
  double tau0() const { return tau0_; }
  double mu_max() const { return mu_max_; }

 private:
  Schedule() = default;
  bool constant_ = false;
  double mu_ = 0.0;
  double tau0_ = 0.0;
  double mu_max_ = 0.0;
};

struct SolverConfig {
  int max_iterations = 2500;
  Schedule schedule = Schedule::heuristic();
  /// Stop once ||grad f|| <= gradient_tolerance * ||z0||^3 (the gradient
  /// is cubic in the signal scale); 0 disables and the loop runs the
  /// full budget.
  double gradient_tolerance = 0.0;
  int trace_every = 1;
};

struct TraceRecord {
  int iteration;    // 1-based; state is the iterate before this step
  double loss;
  double mu;
  double grad_norm;
  double rel_error;  // NaN when no ground truth was supplied
};

struct IterateTrace {
  std::vector<TraceRecord> records;
  bool has_rel_error = false;

  /// CSV with columns iteration,loss,mu,grad_norm,rel_error (the last
  /// empty when no ground truth was supplied).
  void write_csv(std::ostream& out) const;
};

struct SolveResult {
  ComplexVector z_final;
  int iterations_run = 0;
  IterateTrace trace;
  bool converged = false;
  double norm_z0_squared = 0.0;
};

/// The loss or gradient became non-finite; carries the trace up to the
/// last finite iteration.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, IterateTrace trace, int iteration)
      : Error(what), trace(std::move(trace)), iteration(iteration) {}
  IterateTrace trace;
  int iteration;
};

/// One update z - (mu / ||z0||^2) * gradient.
ComplexVector step(const ComplexVector& z, const ComplexVector& gradient, double mu,
                   double norm_z0_squared);

/// Gradient iteration z_{tau+1} = z_tau - (mu_{tau+1}/||z0||^2) grad f(z_tau)
/// from the supplied z0; the divisor ||z0||^2 is frozen at entry.
/// `ground_truth`, when given, only feeds the rel_error trace column.
SolveResult solve(const Ensemble& ensemble, const RealVector& y, const ComplexVector& z0,
                  const SolverConfig& config, const ComplexVector* ground_truth = nullptr);

/// relative_error(z_final, x) < threshold.
bool success(const SolveResult& result, const ComplexVector& x, double threshold = 1e-5);

}  // namespace wirtflow
