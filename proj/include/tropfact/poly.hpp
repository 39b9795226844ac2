#pragma once

// Formal polynomials over the min-plus semiring and their Boolean
// specialisations (one and two variables).

#include <initializer_list>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tropfact/scalar.hpp"

namespace tropfact {

/// Dense coefficient sequence c_0..c_n; missing terms are infinity.
///
/// Trailing infinite coefficients are trimmed on construction, so a nonzero
/// polynomial always has a finite top coefficient. The tropical zero (every
/// coefficient infinite) is the empty sequence and has degree -1.
/// Equality is formal (coefficientwise), not equality as functions.
class TropPoly {
 public:
  TropPoly() = default;
  explicit TropPoly(std::vector<TropScalar> coeffs);
  TropPoly(std::initializer_list<TropScalar> coeffs)
      : TropPoly(std::vector<TropScalar>(coeffs)) {}

  /// Densifies a sparse (degree, coefficient) list; repeated degrees keep the
  /// minimum.
  static TropPoly from_terms(
      const std::vector<std::pair<int, TropScalar>>& terms);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  /// Coefficient at `k`; infinity outside 0..degree().
  const TropScalar& operator[](int k) const;
  const std::vector<TropScalar>& coeffs() const { return coeffs_; }

  bool all_finite() const;
  /// Degree of the lowest finite coefficient; -1 for the zero polynomial.
  int low_degree() const;

  friend bool operator==(const TropPoly&, const TropPoly&) = default;

 private:
  std::vector<TropScalar> coeffs_;
};

TropPoly trop_add(const TropPoly& p, const TropPoly& q);
TropPoly trop_mul(const TropPoly& p, const TropPoly& q);
TropScalar eval(const TropPoly& p, const TropScalar& x);

/// Adds `shift` to every finite coefficient.
TropPoly translate(const TropPoly& p, const Rational& shift);
/// Multiplies by x^k.
TropPoly shift_degree(const TropPoly& p, int k);

/// Coefficientwise p <= q, with infinity-padding.
bool coefficientwise_le(const TropPoly& p, const TropPoly& q);

/// Whitespace separated tokens, lowest degree first.
TropPoly parse_poly(std::string_view text);
std::string to_string(const TropPoly& p);

/// Boolean polynomial in one variable, stored as its support.
class BoolPoly {
 public:
  BoolPoly() = default;
  /// Rejects negative degrees; duplicates collapse.
  explicit BoolPoly(std::vector<int> support);
  BoolPoly(std::initializer_list<int> support)
      : BoolPoly(std::vector<int>(support)) {}

  const std::vector<int>& support() const { return support_; }
  bool contains(int d) const;
  int degree() const { return support_.empty() ? -1 : support_.back(); }
  bool empty() const { return support_.empty(); }

  /// Coefficient 0 on the support, infinity elsewhere.
  TropPoly to_trop() const;
  /// Rejects coefficients other than 0 and infinity.
  static BoolPoly from_trop(const TropPoly& p);

  friend bool operator==(const BoolPoly&, const BoolPoly&) = default;

 private:
  std::vector<int> support_;
};

BoolPoly bool_mul(const BoolPoly& a, const BoolPoly& b);

BoolPoly parse_bool_poly(std::string_view text);
std::string to_string(const BoolPoly& b);

using Exponent2 = std::pair<int, int>;

/// Boolean polynomial in x and y, stored as its support.
class BoolPoly2 {
 public:
  BoolPoly2() = default;
  explicit BoolPoly2(std::set<Exponent2> support);
  BoolPoly2(std::initializer_list<Exponent2> support)
      : BoolPoly2(std::set<Exponent2>(support)) {}

  const std::set<Exponent2>& support() const { return support_; }
  std::size_t size() const { return support_.size(); }

  /// Downward closed: (a,b) present implies every (c,d) <= (a,b).
  bool is_filled() const;
  /// Maximal elements under the componentwise order, sorted by x.
  std::vector<Exponent2> frontier() const;

  friend bool operator==(const BoolPoly2&, const BoolPoly2&) = default;

 private:
  std::set<Exponent2> support_;
};

BoolPoly2 bool2_mul(const BoolPoly2& a, const BoolPoly2& b);
/// Downward closure of the support.
BoolPoly2 fill(const BoolPoly2& s);

/// One `i j` pair per line.
BoolPoly2 parse_bool_poly2(std::string_view text);
std::string to_string(const BoolPoly2& s);

/// A filled 2-D support kept as its staircase of maximal points. Memory is
/// linear in the frontier; `support()` expands it.
class Staircase {
 public:
  Staircase() = default;
  /// Keeps only the maximal points of `points`.
  explicit Staircase(const std::vector<Exponent2>& points);

  const std::vector<Exponent2>& corners() const { return corners_; }
  bool contains(const Exponent2& e) const;
  BoolPoly2 support() const;

  friend bool operator==(const Staircase&, const Staircase&) = default;

 private:
  std::vector<Exponent2> corners_;  // x strictly increasing, y decreasing
};

/// Product of filled supports: the staircase of pairwise corner sums.
Staircase staircase_mul(const Staircase& a, const Staircase& b);

}  // namespace tropfact
