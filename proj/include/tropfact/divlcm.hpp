#pragma once

// Division by residuation, least common multiples by alternating
// residuation, and the derived greatest common divisor.

#include <cstdint>
#include <optional>
#include <string>

#include "tropfact/poly.hpp"

namespace tropfact {

/// Coefficientwise least q of degree <= quotient_degree with d (x) q >= s.
/// Coefficients below `floor` are raised to it; nullopt disables the clamp.
/// Requires deg d + quotient_degree >= deg s and d nonzero.
TropPoly least_superquotient(const TropPoly& d, const TropPoly& s,
                             int quotient_degree,
                             const std::optional<Rational>& floor = Rational(0));

struct DivisionResult {
  bool divides = false;
  /// The unclamped least superquotient; exact quotient when `divides`.
  TropPoly quotient;
};

/// Exact divisibility: d divides s iff d (x) q* == s for the least
/// superquotient q*. Requires deg s >= deg d.
DivisionResult divides(const TropPoly& d, const TropPoly& s);

enum class LcmStatus { Converged, NoCommonMultiple, IterationLimit };

std::string to_string(LcmStatus status);

struct LcmReport {
  int degree = 0;
  std::optional<TropPoly> result;
  LcmStatus status = LcmStatus::IterationLimit;
  std::int64_t iterations = 0;
  /// Why the iteration stopped when it did not converge.
  std::string detail;
};

inline constexpr std::int64_t kDefaultLcmIterations = 100000;

/// Starting from all-zero coefficients in the given degree, alternately
/// replaces h by f (x) superquot(f, h) and g (x) superquot(g, h) until a fixed
/// point. f and g need constant term 0 and nonnegative coefficients, and
/// max(deg f, deg g) <= degree <= deg f + deg g.
///
/// Reports no common multiple only on proof: an end coefficient became
/// infinite, or h came back to an earlier shape translated upward with the
/// zero floor never binding in between (the iteration then grows forever).
/// Anything else runs until the fixed point or the iteration limit.
LcmReport lcm(const TropPoly& f, const TropPoly& g, int degree,
              std::int64_t iteration_limit = kDefaultLcmIterations);

struct GcdReport {
  LcmReport lcm;
  TropPoly gcd;
};

/// Least superquotient of f (x) g by their lcm at the smallest degree where
/// the lcm iteration converges. Throws std::runtime_error when an iteration
/// limit is hit before that degree is settled.
GcdReport gcd(const TropPoly& f, const TropPoly& g,
              std::int64_t iteration_limit = kDefaultLcmIterations);

}  // namespace tropfact
