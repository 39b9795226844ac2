#pragma once

// Exact feasibility of affine systems over the rationals.

#include <map>
#include <string>
#include <vector>

#include "tropfact/scalar.hpp"

namespace tropfact {

enum class Relation { LessEqual, GreaterEqual, Equal };

/// sum(coeffs[v] * v) <relation> rhs over free rational unknowns.
struct AffineConstraint {
  std::map<std::string, Rational> coeffs;
  Relation relation = Relation::LessEqual;
  Rational rhs;

  bool satisfied_by(const std::map<std::string, Rational>& point) const;
};

struct FeasibilityResult {
  bool feasible = false;
  /// Every unknown mentioned by the system when feasible; empty otherwise.
  std::map<std::string, Rational> witness;
};

/// Phase-one simplex in exact arithmetic with Bland's rule, so it always
/// terminates. The witness satisfies every constraint exactly.
FeasibilityResult linear_feasible(const std::vector<AffineConstraint>& system);

/// Parses `2a - b + 1/2 c >= 3` style constraints (for tests and the CLI).
AffineConstraint parse_constraint(const std::string& text);

}  // namespace tropfact
