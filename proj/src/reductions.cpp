#include "tropfact/reductions.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

namespace tropfact {

void SatInstance::validate() const {
  if (variable_count < 0) throw std::invalid_argument("negative variable count");
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    if (clauses[i].empty()) {
      throw std::invalid_argument("clause " + std::to_string(i + 1) + " is empty");
    }
    for (const Literal& l : clauses[i]) {
      if (l.variable < 0 || l.variable >= variable_count) {
        throw std::invalid_argument("clause " + std::to_string(i + 1) + " uses variable " +
                                    std::to_string(l.variable + 1) + " out of range");
      }
    }
  }
}

bool SatInstance::satisfied_by(const std::vector<bool>& assignment) const {
  return std::all_of(clauses.begin(), clauses.end(), [&](const auto& clause) {
    return std::any_of(clause.begin(), clause.end(), [&](const Literal& l) {
      return assignment.at(l.variable) == l.positive;
    });
  });
}

SatInstance parse_dimacs(std::string_view text) {
  SatInstance inst;
  std::istringstream lines{std::string(text)};
  std::string line;
  std::size_t position = 0;
  bool header = false;
  int declared_clauses = 0;
  std::vector<Literal> current;
  while (std::getline(lines, line)) {
    std::istringstream in(line);
    std::string tok;
    if (!(in >> tok)) continue;
    if (tok[0] == 'c') continue;
    if (tok[0] == '%') break;  // SATLIB trailer
    if (tok == "p") {
      std::string fmt;
      if (header || !(in >> fmt >> inst.variable_count >> declared_clauses) || fmt != "cnf" ||
          inst.variable_count < 0 || declared_clauses < 0) {
        throw ParseError(position, "malformed or repeated 'p cnf V C' header");
      }
      header = true;
      position += 4;
      continue;
    }
    if (!header) throw ParseError(position, "clause before the 'p cnf' header");
    for (bool first = true; first || (in >> tok); first = false) {
      long v = 0;
      std::size_t used = 0;
      try {
        v = std::stol(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw ParseError(position, "expected an integer literal, got '" + tok + "'");
      if (v == 0) {
        if (current.empty()) throw ParseError(position, "empty clause");
        inst.clauses.push_back(std::move(current));
        current.clear();
      } else {
        const long var = v < 0 ? -v : v;
        if (var > inst.variable_count) {
          throw ParseError(position, "literal " + tok + " exceeds the declared variable count");
        }
        current.push_back({static_cast<int>(var - 1), v > 0});
      }
      ++position;
    }
  }
  if (!header) throw ParseError(position, "missing 'p cnf' header");
  if (!current.empty()) throw ParseError(position, "last clause is not terminated by 0");
  if (static_cast<int>(inst.clauses.size()) != declared_clauses) {
    throw ParseError(position, "header declares " + std::to_string(declared_clauses) +
                                   " clauses, found " + std::to_string(inst.clauses.size()));
  }
  return inst;
}

std::string to_dimacs(const SatInstance& inst) {
  std::string out = "p cnf " + std::to_string(inst.variable_count) + " " +
                    std::to_string(inst.clauses.size()) + "\n";
  for (const auto& clause : inst.clauses) {
    for (const Literal& l : clause) {
      out += std::to_string(l.positive ? l.variable + 1 : -(l.variable + 1)) + " ";
    }
    out += "0\n";
  }
  return out;
}

std::optional<std::vector<bool>> solve_by_exhaustion(const SatInstance& inst) {
  inst.validate();
  if (inst.variable_count > 24) throw std::invalid_argument("too many variables for exhaustion");
  std::vector<bool> a(inst.variable_count);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << inst.variable_count); ++mask) {
    for (int v = 0; v < inst.variable_count; ++v) a[v] = mask >> v & 1;
    if (inst.satisfied_by(a)) return a;
  }
  return std::nullopt;
}

std::string to_string(CouplingRole role) {
  switch (role) {
    case CouplingRole::Same:
      return "same";
    case CouplingRole::Opposite:
      return "opposite";
    case CouplingRole::Unconstrained:
      return "unconstrained";
  }
  return "unknown";
}

std::vector<int> GadgetLayout::gadget_degrees() const {
  std::vector<int> out;
  for (const auto& clause : pairs) {
    for (const auto& [x, y] : clause) {
      out.push_back(x);
      out.push_back(y);
    }
  }
  return out;
}

namespace {

struct Element {
  int value;
  int slot;  // elements with the same slot form a designated pair
};

std::vector<Element> elements_of(const GadgetLayout& layout) {
  std::vector<Element> out;
  int slot = 0;
  for (const auto& clause : layout.pairs) {
    for (const auto& [x, y] : clause) {
      out.push_back({x, slot});
      out.push_back({y, slot});
      ++slot;
    }
  }
  return out;
}

std::set<int> cross_sums(const std::vector<Element>& e) {
  std::set<int> out;
  for (std::size_t a = 0; a < e.size(); ++a) {
    for (std::size_t b = a + 1; b < e.size(); ++b) {
      if (e[a].slot != e[b].slot) out.insert(e[a].value + e[b].value);
    }
  }
  return out;
}

// Set-based collision test used during the greedy choice.
bool collides(const std::vector<Element>& e, const std::vector<int>& z) {
  std::unordered_set<int> singles, sums;
  const std::unordered_set<int> zs(z.begin(), z.end());
  for (const Element& x : e) {
    if (!singles.insert(x.value).second || zs.count(x.value)) return true;
  }
  for (std::size_t a = 0; a < e.size(); ++a) {
    for (std::size_t b = a + 1; b < e.size(); ++b) {
      if (e[a].slot == e[b].slot) continue;
      const int s = e[a].value + e[b].value;
      if (!sums.insert(s).second || zs.count(s) || singles.count(s)) return true;
    }
  }
  for (const Element& x : e) {
    const int d = 2 * x.value;
    if (singles.count(d) || zs.count(d) || sums.count(d)) return true;
  }
  return false;
}

std::string slot_name(std::size_t i, std::size_t j) {
  return "clause " + std::to_string(i + 1) + " literal " + std::to_string(j + 1);
}

}  // namespace

GadgetLayout build_gadget(const std::vector<int>& shape, int n) {
  if (n < 1) throw std::invalid_argument("gadget needs n >= 1");
  GadgetLayout layout;
  layout.n = n;
  int next_z = n / 5 + 1;
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (shape[i] < 1) throw std::invalid_argument("clause " + std::to_string(i + 1) + " has no literals");
    if (4 * next_z >= n) {
      throw std::invalid_argument("n = " + std::to_string(n) + ": no room for z_" +
                                  std::to_string(i + 1) + " in (n/5, n/4)");
    }
    layout.z.push_back(next_z++);
  }
  std::vector<Element> chosen;
  int slot = 0;
  layout.pairs.resize(shape.size());
  for (std::size_t i = 0; i < shape.size(); ++i) {
    for (int j = 0; j < shape[i]; ++j, ++slot) {
      bool placed = false;
      for (int x = 1; 8 * x <= n && x < layout.z[i]; ++x) {
        const int y = layout.z[i] - x;
        chosen.push_back({x, slot});
        chosen.push_back({y, slot});
        if (!collides(chosen, layout.z)) {
          layout.pairs[i].push_back({x, y});
          placed = true;
          break;
        }
        chosen.resize(chosen.size() - 2);
      }
      if (!placed) {
        throw std::invalid_argument("n = " + std::to_string(n) + ": no x for " + slot_name(i, j) +
                                    " in [1, n/8] avoids every collision");
      }
    }
  }
  for (int s : cross_sums(chosen)) layout.constraint_degrees[s] = CouplingRole::Unconstrained;
  const std::string problem = audit_layout(layout);
  if (!problem.empty()) throw std::logic_error("greedy gadget failed its audit: " + problem);
  return layout;
}

std::string audit_layout(const GadgetLayout& L) {
  const int n = L.n;
  if (L.z.size() != L.pairs.size()) return "z and pairs differ in length";
  for (std::size_t i = 0; i < L.z.size(); ++i) {
    if (5 * L.z[i] <= n || 4 * L.z[i] >= n) return "z_" + std::to_string(i + 1) + " outside (n/5, n/4)";
    for (std::size_t k = 0; k < i; ++k) {
      if (L.z[k] == L.z[i]) return "z_" + std::to_string(k + 1) + " = z_" + std::to_string(i + 1);
    }
    for (std::size_t j = 0; j < L.pairs[i].size(); ++j) {
      const auto [x, y] = L.pairs[i][j];
      if (x < 1 || y < 1) return slot_name(i, j) + " has a nonpositive degree";
      if (x + y != L.z[i]) return slot_name(i, j) + ": x + y != z";
      if (4 * x >= n || 4 * y >= n) return slot_name(i, j) + " reaches n/4";
    }
  }
  const std::vector<Element> e = elements_of(L);
  auto name = [&](std::size_t a) { return "degree " + std::to_string(e[a].value); };
  for (std::size_t a = 0; a < e.size(); ++a) {
    for (std::size_t b = a + 1; b < e.size(); ++b) {
      if (e[a].value == e[b].value) return name(a) + " repeats";
    }
    for (int z : L.z) {
      if (e[a].value == z) return name(a) + " equals a z";
    }
  }
  // All cross sums against each other, the z's, the singles and the doubles.
  for (std::size_t a = 0; a < e.size(); ++a) {
    for (std::size_t b = a + 1; b < e.size(); ++b) {
      if (e[a].slot == e[b].slot) continue;
      const int s = e[a].value + e[b].value;
      const std::string what = "sum " + std::to_string(e[a].value) + "+" + std::to_string(e[b].value);
      if (s >= n) return what + " reaches n";
      for (std::size_t c = 0; c < e.size(); ++c) {
        for (std::size_t d = c + 1; d < e.size(); ++d) {
          if (e[c].slot == e[d].slot || (c == a && d == b)) continue;
          if (e[c].value + e[d].value == s) {
            return what + " equals " + std::to_string(e[c].value) + "+" + std::to_string(e[d].value);
          }
        }
        if (e[c].value == s) return what + " equals a gadget degree";
        if (2 * e[c].value == s) return what + " equals twice " + std::to_string(e[c].value);
      }
      for (int z : L.z) {
        if (z == s) return what + " equals a z";
      }
      if (!L.constraint_degrees.count(s)) return what + " has no coupling role";
    }
  }
  for (std::size_t a = 0; a < e.size(); ++a) {
    const int d = 2 * e[a].value;
    for (std::size_t c = 0; c < e.size(); ++c) {
      if (e[c].value == d) return "twice " + std::to_string(e[a].value) + " is a gadget degree";
    }
    for (int z : L.z) {
      if (z == d) return "twice " + std::to_string(e[a].value) + " equals a z";
    }
  }
  if (L.constraint_degrees.size() != cross_sums(e).size()) return "coupling roles on non-sum degrees";
  return {};
}

int minimal_gadget_n(const std::vector<int>& shape, int lo) {
  for (int n = std::max(lo, 1);; ++n) {
    try {
      build_gadget(shape, n);
      return n;
    } catch (const std::invalid_argument&) {
    }
  }
}

TropPoly encoded_polynomial(const GadgetLayout& L) {
  const int n = L.n;
  std::vector<TropScalar> c(2 * n + 1, TropScalar(3));
  c[0] = c[n] = c[2 * n] = TropScalar(0);
  auto put = [&](int k, int low, int high) {
    c[k] = TropScalar(low);
    c[k + n] = TropScalar(high);
  };
  for (const auto& [s, role] : L.constraint_degrees) {
    switch (role) {
      case CouplingRole::Same:
        put(s, 3, 3);
        break;
      case CouplingRole::Opposite:
        put(s, 2, 3);
        break;
      case CouplingRole::Unconstrained:
        put(s, 2, 2);
        break;
    }
  }
  for (int z : L.z) put(z, 2, 3);
  for (int t : L.gadget_degrees()) put(t, 1, 1);
  return TropPoly(std::move(c));
}

namespace {

void require_literals(const GadgetLayout& L) {
  if (L.literals.size() != L.pairs.size()) throw std::invalid_argument("layout has no literal map");
  for (std::size_t i = 0; i < L.pairs.size(); ++i) {
    if (L.literals[i].size() != L.pairs[i].size()) {
      throw std::invalid_argument("literal map does not match the gadget shape");
    }
  }
}

// First occurrence of each variable, as (clause, slot).
std::vector<std::optional<std::pair<int, int>>> anchors(const GadgetLayout& L) {
  std::vector<std::optional<std::pair<int, int>>> out(L.variable_count);
  for (std::size_t i = 0; i < L.literals.size(); ++i) {
    for (std::size_t j = 0; j < L.literals[i].size(); ++j) {
      auto& a = out.at(L.literals[i][j].variable);
      if (!a) a = std::make_pair(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return out;
}

}  // namespace

std::pair<TropPoly, GadgetLayout> sat_to_poly(const SatInstance& inst, int n) {
  inst.validate();
  std::vector<int> shape;
  for (const auto& clause : inst.clauses) shape.push_back(static_cast<int>(clause.size()));
  GadgetLayout L = build_gadget(shape, n);
  L.variable_count = inst.variable_count;
  L.literals = inst.clauses;
  const auto anchor = anchors(L);
  for (std::size_t i = 0; i < L.literals.size(); ++i) {
    for (std::size_t j = 0; j < L.literals[i].size(); ++j) {
      const Literal& lit = L.literals[i][j];
      const auto [ai, aj] = *anchor[lit.variable];
      if (ai == static_cast<int>(i) && aj == static_cast<int>(j)) continue;
      const auto [x, y] = L.pairs[i][j];
      const auto [ax, ay] = L.pairs[ai][aj];
      L.constraint_degrees.at(x + ax) = CouplingRole::Same;
      L.constraint_degrees.at(y + ay) =
          lit.positive == L.literals[ai][aj].positive ? CouplingRole::Same : CouplingRole::Opposite;
    }
  }
  return {encoded_polynomial(L), std::move(L)};
}

std::pair<TropPoly, TropPoly> assignment_to_factors(const SatInstance& inst,
                                                    const GadgetLayout& layout,
                                                    const std::vector<bool>& assignment) {
  inst.validate();
  require_literals(layout);
  if (static_cast<int>(assignment.size()) != inst.variable_count) {
    throw std::invalid_argument("assignment has the wrong number of variables");
  }
  for (std::size_t i = 0; i < inst.clauses.size(); ++i) {
    const auto& clause = inst.clauses[i];
    if (std::none_of(clause.begin(), clause.end(),
                     [&](const Literal& l) { return assignment[l.variable] == l.positive; })) {
      throw std::invalid_argument("assignment leaves clause " + std::to_string(i + 1) + " unsatisfied");
    }
  }
  const int n = layout.n;
  const TropPoly c = encoded_polynomial(layout);
  std::vector<TropScalar> a(n + 1), b(n + 1);
  for (int k = 1; k < n; ++k) {
    const bool two = c[k] == TropScalar(2) && c[k + n] == TropScalar(2);
    a[k] = b[k] = TropScalar(two ? 2 : 3);
  }
  a[0] = a[n] = b[0] = b[n] = TropScalar(0);
  // Parity 0 puts the 1 in a. Every x gets parity 0; y differs from its x
  // exactly when the literal is true.
  auto set = [&](int t, bool parity) {
    a[t] = TropScalar(parity ? 3 : 1);
    b[t] = TropScalar(parity ? 1 : 3);
  };
  for (std::size_t i = 0; i < layout.pairs.size(); ++i) {
    for (std::size_t j = 0; j < layout.pairs[i].size(); ++j) {
      const Literal& lit = layout.literals[i][j];
      set(layout.pairs[i][j].first, false);
      set(layout.pairs[i][j].second, assignment[lit.variable] == lit.positive);
    }
  }
  std::pair<TropPoly, TropPoly> out{TropPoly(std::move(a)), TropPoly(std::move(b))};
  if (trop_mul(out.first, out.second) != c) {
    throw std::invalid_argument("factors built from the assignment do not reproduce the polynomial");
  }
  return out;
}

std::pair<TropPoly, TropPoly> normalize_reduction_factors(const TropPoly& c, const TropPoly& a,
                                                          const TropPoly& b) {
  if (c.degree() < 2 || c.degree() % 2) throw std::invalid_argument("product must have even degree");
  const int n = c.degree() / 2;
  if (a.degree() != n || b.degree() != n) throw std::invalid_argument("factors must have degree n");
  if (trop_mul(a, b) != c) throw std::invalid_argument("factors do not multiply to the polynomial");
  if (c[0] != TropScalar(0) || c[n] != TropScalar(0) || c[2 * n] != TropScalar(0)) {
    throw std::invalid_argument("product needs c_0 = c_n = c_2n = 0");
  }
  if (a[0].is_infinite()) throw std::invalid_argument("factor with infinite constant term");
  const Rational shift = a[0].value();
  const TropPoly an = translate(a, -shift);
  const TropPoly bn = translate(b, shift);
  std::vector<TropScalar> x(n + 1), y(n + 1);
  x[0] = x[n] = y[0] = y[n] = TropScalar(0);
  const TropScalar one(1), two(2), three(3);
  for (int k = 1; k < n; ++k) {
    if (c[k] == one) {
      x[k] = an[k] == one ? one : three;
      y[k] = bn[k] == one ? one : three;
    } else if (c[k] == two && c[k + n] == two) {
      x[k] = y[k] = two;
    } else {
      x[k] = y[k] = three;
    }
  }
  std::pair<TropPoly, TropPoly> out{TropPoly(std::move(x)), TropPoly(std::move(y))};
  if (trop_mul(out.first, out.second) != c) {
    throw std::invalid_argument("normal form of the factors does not reproduce the polynomial");
  }
  return out;
}

std::vector<bool> factors_to_assignment(const GadgetLayout& layout, const TropPoly& f,
                                        const TropPoly& g) {
  require_literals(layout);
  const TropPoly c = encoded_polynomial(layout);
  const auto [a, b] = normalize_reduction_factors(c, f, g);
  const TropScalar one(1);
  auto parity = [&](int t) {
    if (a[t] == one && b[t] == one) {
      throw std::invalid_argument("degree " + std::to_string(t) + " has no parity");
    }
    return a[t] != one;
  };
  auto truth = [&](std::size_t i, std::size_t j) {
    return parity(layout.pairs[i][j].first) != parity(layout.pairs[i][j].second);
  };
  std::vector<bool> assignment(layout.variable_count, false);
  const auto anchor = anchors(layout);
  for (int v = 0; v < layout.variable_count; ++v) {
    if (!anchor[v]) continue;
    const auto [i, j] = *anchor[v];
    assignment[v] = truth(i, j) == layout.literals[i][j].positive;
  }
  for (std::size_t i = 0; i < layout.literals.size(); ++i) {
    bool satisfied = false;
    for (std::size_t j = 0; j < layout.literals[i].size(); ++j) {
      const Literal& lit = layout.literals[i][j];
      const bool value = assignment[lit.variable] == lit.positive;
      if (value != truth(i, j)) {
        throw std::invalid_argument("inconsistent parities at " + slot_name(i, j));
      }
      satisfied = satisfied || value;
    }
    if (!satisfied) throw std::invalid_argument("decoded assignment leaves clause " + std::to_string(i + 1) + " unsatisfied");
  }
  return assignment;
}

std::string layout_to_json(const GadgetLayout& L) {
  nlohmann::ordered_json j;
  j["n"] = L.n;
  j["z"] = L.z;
  j["pairs"] = L.pairs;
  auto roles = nlohmann::ordered_json::array();
  for (const auto& [deg, role] : L.constraint_degrees) roles.push_back({deg, to_string(role)});
  j["constraint_degrees"] = roles;
  j["variable_count"] = L.variable_count;
  auto lits = nlohmann::ordered_json::array();
  for (const auto& clause : L.literals) {
    auto row = nlohmann::ordered_json::array();
    for (const Literal& l : clause) row.push_back(l.positive ? l.variable + 1 : -(l.variable + 1));
    lits.push_back(row);
  }
  j["literals"] = lits;
  return j.dump(2);
}

GadgetLayout layout_from_json(std::string_view text) {
  GadgetLayout L;
  try {
    const auto j = nlohmann::json::parse(text);
    L.n = j.at("n").get<int>();
    L.z = j.at("z").get<std::vector<int>>();
    L.pairs = j.at("pairs").get<std::vector<std::vector<std::pair<int, int>>>>();
    for (const auto& entry : j.at("constraint_degrees")) {
      const std::string role = entry.at(1).get<std::string>();
      CouplingRole r;
      if (role == "same") {
        r = CouplingRole::Same;
      } else if (role == "opposite") {
        r = CouplingRole::Opposite;
      } else if (role == "unconstrained") {
        r = CouplingRole::Unconstrained;
      } else {
        throw std::invalid_argument("unknown coupling role '" + role + "'");
      }
      L.constraint_degrees[entry.at(0).get<int>()] = r;
    }
    L.variable_count = j.value("variable_count", 0);
    for (const auto& row : j.value("literals", nlohmann::json::array())) {
      L.literals.emplace_back();
      for (int v : row.get<std::vector<int>>()) {
        if (v == 0 || std::abs(v) > L.variable_count) throw std::invalid_argument("bad literal in layout");
        L.literals.back().push_back({std::abs(v) - 1, v > 0});
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("layout JSON: ") + e.what());
  }
  const std::string problem = audit_layout(L);
  if (!problem.empty()) throw std::invalid_argument("layout fails its audit: " + problem);
  return L;
}

namespace {

std::vector<Exponent2> bool2_points(const TropPoly& p, int m0) {
  if (p.is_zero()) throw std::invalid_argument("zero polynomial has no Boolean image");
  if (m0 < p.degree()) throw std::invalid_argument("m0 must be at least deg p");
  std::vector<Exponent2> pts;
  for (int j = 0; j <= p.degree(); ++j) {
    if (p[j].is_infinite()) continue;
    const Rational& v = p[j].value();
    if (!is_integer(v) || v < 0) {
      throw std::invalid_argument("coefficients must be nonnegative integers");
    }
    if (v > m0) throw std::invalid_argument("m0 must be at least every coefficient");
    pts.push_back({m0 - j, m0 - static_cast<int>(v.get_num().get_si())});
  }
  return pts;
}

}  // namespace

BoolPoly2 trop_to_bool2(const TropPoly& p, int m0) {
  return trop_to_staircase(p, m0).support();
}

Staircase trop_to_staircase(const TropPoly& p, int m0) {
  return Staircase(bool2_points(p, m0));
}

}  // namespace tropfact
