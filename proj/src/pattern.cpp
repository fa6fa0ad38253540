#include "wirtflow/pattern.hpp"

#include <cmath>
#include <utility>

#include "wirtflow/errors.hpp"

namespace wirtflow {

PatternDistribution::PatternDistribution(std::vector<PatternAtom> atoms, std::string name)
    : atoms_(std::move(atoms)), name_(std::move(name)) {
  if (atoms_.empty()) throw PreconditionError("pattern distribution: empty atom table");
  double total = 0.0;
  for (const auto& atom : atoms_) {
    if (!(atom.probability > 0.0) || !std::isfinite(atom.probability)) {
      throw PreconditionError("pattern distribution: probabilities must be positive");
    }
    if (!std::isfinite(atom.value.real()) || !std::isfinite(atom.value.imag())) {
      throw PreconditionError("pattern distribution: atom values must be finite");
    }
    total += atom.probability;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw PreconditionError("pattern distribution: probabilities must sum to 1");
  }
}

PatternDistribution PatternDistribution::octanary() {
  // d = b1 * b2 with b1 uniform on {1, -1, -i, i} and
  // b2 = sqrt(2)/2 w.p. 4/5, sqrt(3) w.p. 1/5
  const double lo = std::sqrt(2.0) / 2.0;
  const double hi = std::sqrt(3.0);
  std::vector<PatternAtom> atoms = {
      {{lo, 0.0}, 0.2},  {{-lo, 0.0}, 0.2},  {{0.0, -lo}, 0.2},  {{0.0, lo}, 0.2},
      {{hi, 0.0}, 0.05}, {{-hi, 0.0}, 0.05}, {{0.0, -hi}, 0.05}, {{0.0, hi}, 0.05},
  };
  return PatternDistribution(std::move(atoms), "octanary");
}

PatternDistribution PatternDistribution::ternary() {
  std::vector<PatternAtom> atoms = {
      {{1.0, 0.0}, 0.25},
      {{0.0, 0.0}, 0.5},
      {{-1.0, 0.0}, 0.25},
  };
  return PatternDistribution(std::move(atoms), "ternary");
}

PatternDistribution PatternDistribution::custom(std::vector<PatternAtom> atoms,
                                                std::string name) {
  return PatternDistribution(std::move(atoms), std::move(name));
}

namespace {

bool negation_symmetric(const std::vector<PatternAtom>& atoms, double tol) {
  // Aggregate probability mass per distinct value, then require the map
  // to be invariant under v -> -v.
  std::vector<std::pair<Complex, double>> mass;
  for (const auto& atom : atoms) {
    bool merged = false;
    for (auto& [value, probability] : mass) {
      if (std::abs(value - atom.value) <= tol) {
        probability += atom.probability;
        merged = true;
        break;
      }
    }
    if (!merged) mass.emplace_back(atom.value, atom.probability);
  }
  for (const auto& [value, probability] : mass) {
    double negated_mass = 0.0;
    for (const auto& [other, other_probability] : mass) {
      if (std::abs(other + value) <= tol) negated_mass += other_probability;
    }
    if (std::abs(negated_mass - probability) > tol) return false;
  }
  return true;
}

}  // namespace

MomentReport pattern_moments(const PatternDistribution& dist, double tol) {
  MomentReport report{};
  report.mean = Complex(0.0, 0.0);
  report.second_moment_d2 = Complex(0.0, 0.0);
  report.abs2 = 0.0;
  report.abs4 = 0.0;
  report.max_abs = 0.0;
  for (const auto& atom : dist.atoms()) {
    const double p = atom.probability;
    const Complex d = atom.value;
    const double a2 = std::norm(d);
    report.mean += p * d;
    report.second_moment_d2 += p * d * d;
    report.abs2 += p * a2;
    report.abs4 += p * a2 * a2;
    report.max_abs = std::max(report.max_abs, std::abs(d));
  }
  report.symmetric = negation_symmetric(dist.atoms(), tol);
  report.degenerate = report.abs2 <= tol;
  report.admissible = std::abs(report.mean) <= tol &&
                      std::abs(report.second_moment_d2) <= tol &&
                      std::abs(report.abs4 - 2.0 * report.abs2 * report.abs2) <= tol &&
                      report.symmetric && !report.degenerate &&
                      std::isfinite(report.max_abs);
  return report;
}

ComplexVector sample_pattern(const PatternDistribution& dist, int n, RandomSource& rng) {
  if (n < 1) throw DimensionError("sample_pattern: n must be >= 1");
  const auto& atoms = dist.atoms();
  ComplexVector code(n);
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    double cumulative = 0.0;
    Complex value = atoms.back().value;
    for (const auto& atom : atoms) {
      cumulative += atom.probability;
      if (u < cumulative) {
        value = atom.value;
        break;
      }
    }
    code[i] = value;
  }
  return code;
}

}  // namespace wirtflow
