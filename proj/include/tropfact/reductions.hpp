#pragma once

// SAT -> tropical factoring encoder/decoder built on gadget degree layouts,
// and the tropical -> two-variable Boolean encoding.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tropfact/poly.hpp"

namespace tropfact {

struct Literal {
  int variable = 0;  // 0-based
  bool positive = true;
  friend bool operator==(const Literal&, const Literal&) = default;
};

struct SatInstance {
  int variable_count = 0;
  std::vector<std::vector<Literal>> clauses;

  /// Throws std::invalid_argument on empty clauses or out-of-range variables.
  void validate() const;
  bool satisfied_by(const std::vector<bool>& assignment) const;
};

/// DIMACS CNF: `c` comment lines, one `p cnf V C` header, clauses as signed
/// 1-based literals terminated by 0.
SatInstance parse_dimacs(std::string_view text);
std::string to_dimacs(const SatInstance& inst);

/// Brute force over all 2^V assignments; returns the first satisfying one.
std::optional<std::vector<bool>> solve_by_exhaustion(const SatInstance& inst);

enum class CouplingRole { Same, Opposite, Unconstrained };
std::string to_string(CouplingRole role);

struct GadgetLayout {
  int n = 0;
  std::vector<int> z;
  /// pairs[i][j] = (x_ij, y_ij) with x_ij + y_ij = z[i].
  std::vector<std::vector<std::pair<int, int>>> pairs;
  /// Every sum of two gadget degrees other than the z's, with its role.
  std::map<int, CouplingRole> constraint_degrees;
  /// Filled by sat_to_poly: the literal behind each (i, j) slot.
  int variable_count = 0;
  std::vector<std::vector<Literal>> literals;

  std::vector<int> gadget_degrees() const;
};

/// Greedy choice: z_i increasing in (n/5, n/4), then x_ij <= n/8 increasing,
/// avoiding every collision. The result always passes audit_layout.
/// Throws std::invalid_argument naming the first choice that cannot be made.
GadgetLayout build_gadget(const std::vector<int>& clause_literal_counts, int n);

/// Empty when the layout satisfies every distinctness condition; otherwise
/// a description of the first violation.
std::string audit_layout(const GadgetLayout& layout);

/// Smallest n >= lo at which build_gadget succeeds for the shape.
int minimal_gadget_n(const std::vector<int>& clause_literal_counts, int lo = 2);

/// Degree 2n, c_0 = c_n = c_2n = 0, all other coefficients in {1, 2, 3}.
std::pair<TropPoly, GadgetLayout> sat_to_poly(const SatInstance& inst, int n);

/// The polynomial a layout (with its couplings) encodes.
TropPoly encoded_polynomial(const GadgetLayout& layout);

/// Factors of degree n reproducing sat_to_poly's output. Throws
/// std::invalid_argument when the assignment leaves a clause unsatisfied.
std::pair<TropPoly, TropPoly> assignment_to_factors(const SatInstance& inst,
                                                    const GadgetLayout& layout,
                                                    const std::vector<bool>& assignment);

/// Puts factors (a, b) of a polynomial c with c_0 = c_n = c_2n = 0 and other
/// coefficients in {1, 2, 3} into the normal form: a_0 = b_0 = 0, (1,1),
/// (1,3) or (3,1) where c_i = 1, (2,2) where c_i = c_{i+n} = 2, (3,3)
/// elsewhere. Throws std::invalid_argument if a (x) b != c or the normal form
/// does not reproduce c.
std::pair<TropPoly, TropPoly> normalize_reduction_factors(const TropPoly& c,
                                                          const TropPoly& a,
                                                          const TropPoly& b);

/// Reads a satisfying assignment off any factorization of the encoded
/// polynomial. Throws std::invalid_argument when parities are inconsistent
/// or a clause ends up unsatisfied.
std::vector<bool> factors_to_assignment(const GadgetLayout& layout, const TropPoly& f,
                                        const TropPoly& g);

std::string layout_to_json(const GadgetLayout& layout);
GadgetLayout layout_from_json(std::string_view text);

/// Filled support of {(m0 - j, m0 - c_j)}. Needs nonnegative integer
/// coefficients, m0 >= deg p and m0 >= every coefficient.
BoolPoly2 trop_to_bool2(const TropPoly& p, int m0);
/// The same set kept as its staircase.
Staircase trop_to_staircase(const TropPoly& p, int m0);

}  // namespace tropfact
