#include "wirtflow/solver.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "wirtflow/core.hpp"
#include "wirtflow/objective.hpp"

namespace wirtflow {

Schedule Schedule::constant(double mu) {
  if (!(mu > 0.0)) throw PreconditionError("Schedule: constant mu must be positive");
  Schedule s;
  s.constant_ = true;
  s.mu_ = mu;
  return s;
}

Schedule Schedule::heuristic(double tau0, double mu_max) {
  if (!(tau0 > 0.0)) throw PreconditionError("Schedule: tau0 must be positive");
  if (!(mu_max > 0.0) || mu_max > 1.0) {
    throw PreconditionError("Schedule: mu_max must lie in (0, 1]");
  }
  Schedule s;
  s.constant_ = false;
  s.tau0_ = tau0;
  s.mu_max_ = mu_max;
  return s;
}

double Schedule::mu_at(int tau) const {
  if (tau < 1) throw PreconditionError("Schedule: tau must be >= 1");
  if (constant_) return mu_;
  return std::min(1.0 - std::exp(-static_cast<double>(tau) / tau0_), mu_max_);
}

namespace {

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

}  // namespace

void IterateTrace::write_csv(std::ostream& out) const {
  out << "iteration,loss,mu,grad_norm,rel_error\n";
  for (const auto& record : records) {
    out << record.iteration << ',' << format_double(record.loss) << ','
        << format_double(record.mu) << ',' << format_double(record.grad_norm) << ',';
    if (has_rel_error) out << format_double(record.rel_error);
    out << '\n';
  }
}

ComplexVector step(const ComplexVector& z, const ComplexVector& gradient, double mu,
                   double norm_z0_squared) {
  if (!(norm_z0_squared > 0.0)) {
    throw PreconditionError("step: ||z0||^2 must be positive");
  }
  if (z.size() != gradient.size()) throw DimensionError("step: length mismatch");
  return z - (mu / norm_z0_squared) * gradient;
}

SolveResult solve(const Ensemble& ensemble, const RealVector& y, const ComplexVector& z0,
                  const SolverConfig& config, const ComplexVector* ground_truth) {
  if (config.max_iterations < 1) throw PreconditionError("solve: max_iterations must be >= 1");
  if (config.trace_every < 1) throw PreconditionError("solve: trace_every must be >= 1");
  const double norm_z0_sq = z0.squaredNorm();
  if (!(norm_z0_sq > 0.0)) throw PreconditionError("solve: ||z0|| must be positive");
  if (ground_truth && ground_truth->size() != z0.size()) {
    throw DimensionError("solve: ground truth has wrong length");
  }

  SolveResult result;
  result.norm_z0_squared = norm_z0_sq;
  result.trace.has_rel_error = ground_truth != nullptr;
  const double gradient_scale = std::pow(std::sqrt(norm_z0_sq), 3);

  ComplexVector z = z0;
  for (int tau = 1; tau <= config.max_iterations; ++tau) {
    const Evaluation eval = evaluate(ensemble, y, z);
    const double grad_norm = eval.gradient.norm();
    if (!std::isfinite(eval.loss) || !std::isfinite(grad_norm)) {
      throw DivergenceError("solve: non-finite loss or gradient at iteration " +
                                std::to_string(tau),
                            std::move(result.trace), tau);
    }
    const double mu = config.schedule.mu_at(tau);
    if (tau == 1 || tau % config.trace_every == 0) {
      TraceRecord record;
      record.iteration = tau;
      record.loss = eval.loss;
      record.mu = mu;
      record.grad_norm = grad_norm;
      record.rel_error =
          ground_truth ? relative_error(z, *ground_truth) : std::nan("");
      result.trace.records.push_back(record);
    }
    result.iterations_run = tau;
    if (config.gradient_tolerance > 0.0 &&
        grad_norm <= config.gradient_tolerance * gradient_scale) {
      result.converged = true;
      break;
    }
    z -= (mu / norm_z0_sq) * eval.gradient;
  }
  result.z_final = std::move(z);
  return result;
}

bool success(const SolveResult& result, const ComplexVector& x, double threshold) {
  return relative_error(result.z_final, x) < threshold;
}

}  // namespace wirtflow
