#pragma once

// Irreducibility certificates and exhaustive factorization search for
// tropical and Boolean polynomials in one variable.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tropfact/newton.hpp"
#include "tropfact/poly.hpp"

namespace tropfact {

/// Degrees of a candidate factor pair and how each hull edge of the product
/// is shared between them.
struct DegreeSplit {
  int left_degree = 0;
  int right_degree = 0;
  /// (width_left, width_right) per product hull edge, left to right. Empty
  /// means only the degrees are prescribed.
  std::vector<std::pair<int, int>> edge_assignment;

  static DegreeSplit degrees_only(int left, int right) {
    return DegreeSplit{left, right, {}};
  }
  /// The same split with the roles of the two factors exchanged.
  DegreeSplit mirrored() const;

  friend bool operator==(const DegreeSplit&, const DegreeSplit&) = default;
};

/// input = x^monomial_degree (x) constant (x) factors[0] (x) factors[1] ...
struct FactorizationCertificate {
  std::vector<TropPoly> factors;
  int monomial_degree = 0;
  TropScalar constant = TropScalar(0);

  TropPoly recombine() const;
  bool verifies(const TropPoly& input) const { return recombine() == input; }
};

/// For each product degree k the index i_k with c_k = a_{i_k} + b_{k-i_k};
/// -1 where c_k is infinite.
struct ChoiceProfile {
  std::vector<int> index;
};

struct BnbStats {
  std::uint64_t nodes = 0;
  std::uint64_t trials = 0;
};

struct BnbResult {
  std::optional<std::pair<TropPoly, TropPoly>> factors;
  ChoiceProfile profile;
  BnbStats stats;
};

/// Strictly-above-the-chord certificate: true means irreducible up to monomial factors.
/// Needs a normalized polynomial with finite coefficients; false is
/// inconclusive.
bool irreducible_by_chord(const TropPoly& p);

/// Linear factorization of a polynomial whose finite points all lie on its
/// lower hull. Factors are 0 (+) (slope + x), one per unit of edge width, in
/// increasing slope order; the constant term goes into `constant`.
FactorizationCertificate factor_convex(const TropPoly& p);

/// Every split of the product hull into two nonempty factor hulls. In
/// integer_only mode splits with a non-integer factor vertex are dropped.
std::vector<DegreeSplit> candidate_degree_splits(const TropPoly& p,
                                                 bool integer_only);

/// Branch and bound over choice profiles with exact feasibility pruning.
/// Returns factors (a, b) with a (x) b == p and the prescribed degrees and
/// hull split, or nothing when none exists over the rationals. Requires a
/// normalized p; infinite coefficients are handled by enumerating Boolean
/// support decompositions first.
BnbResult factor_bnb_search(const TropPoly& p, const DegreeSplit& split);

std::optional<FactorizationCertificate> factor_bnb(const TropPoly& p,
                                                   const DegreeSplit& split);

struct IrreducibilityVerdict {
  bool irreducible = false;
  /// "degree <= 1", "chord certificate", "triple test", "exhaustive search",
  /// "convex", "branch and bound", "boolean search".
  std::string reason;
  std::optional<FactorizationCertificate> certificate;
};

/// Exact decision for rational coefficients. In integer_only mode the
/// returned factors have integer coefficients whenever p does.
IrreducibilityVerdict is_irreducible(const TropPoly& p,
                                     bool integer_only = false);

/// Complete factorization into irreducible factors by recursive splitting.
FactorizationCertificate factor_completely(const TropPoly& p,
                                           bool integer_only = false);

/// Minkowski decomposition A + B = support with |A|,|B| >= 2 and 0 in both;
/// nothing when the support is indecomposable. Requires 0 in the support.
std::optional<std::pair<BoolPoly, BoolPoly>> factor_boolean_bnb(
    const BoolPoly& b);

/// All decompositions A + B = support with max A = left_degree; used for
/// tropical polynomials with infinite interior coefficients.
std::vector<std::pair<BoolPoly, BoolPoly>> boolean_decompositions(
    const BoolPoly& b, int left_degree);

/// True when the positive degrees are not a union of triples
/// {d1, d2, d1 + d2} drawn from the support; true certifies irreducibility.
bool boolean_triple_test(const BoolPoly& b);

/// Rounds f up and g down coefficientwise. Requires f (x) g to have integer
/// coefficients; the product is then unchanged.
std::pair<TropPoly, TropPoly> round_to_integer_factorization(const TropPoly& f,
                                                             const TropPoly& g);

}  // namespace tropfact
