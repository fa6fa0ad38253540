#pragma once

#include <string>
#include <vector>

#include "wirtflow/random.hpp"
#include "wirtflow/types.hpp"

namespace wirtflow {

struct PatternAtom {
  Complex value;
  double probability;
};

/// Finite distribution for the modulation variable d of a coded
/// diffraction pattern.
class PatternDistribution {
 public:
  static PatternDistribution octanary();
  static PatternDistribution ternary();
  static PatternDistribution custom(std::vector<PatternAtom> atoms,
                                    std::string name = "custom");

  const std::vector<PatternAtom>& atoms() const { return atoms_; }
  const std::string& name() const { return name_; }

 private:
  PatternDistribution(std::vector<PatternAtom> atoms, std::string name);

  std::vector<PatternAtom> atoms_;
  std::string name_;
};

/// Exact moments of a pattern distribution, enumerated over the atom
/// table (no sampling involved).
///
/// admissible requires, within `tol`: E d = 0, E d^2 = 0,
/// E|d|^4 = 2 (E|d|^2)^2, a negation-symmetric atom multiset, and a
/// non-degenerate second moment E|d|^2 > tol.
struct MomentReport {
  Complex mean;
  Complex second_moment_d2;
  double abs2;
  double abs4;
  double max_abs;
  bool symmetric;
  bool degenerate;
  bool admissible;
};

MomentReport pattern_moments(const PatternDistribution& dist, double tol = 1e-12);

/// n i.i.d. draws from the atom table.
ComplexVector sample_pattern(const PatternDistribution& dist, int n, RandomSource& rng);

}  // namespace wirtflow
