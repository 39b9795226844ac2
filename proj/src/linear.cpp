#include "tropfact/linear.hpp"

#include <cctype>
#include <stdexcept>

namespace tropfact {

bool AffineConstraint::satisfied_by(
    const std::map<std::string, Rational>& point) const {
  Rational lhs = 0;
  for (const auto& [name, coef] : coeffs) {
    auto it = point.find(name);
    if (it != point.end()) lhs += coef * it->second;
  }
  switch (relation) {
    case Relation::LessEqual:
      return lhs <= rhs;
    case Relation::GreaterEqual:
      return lhs >= rhs;
    case Relation::Equal:
      return lhs == rhs;
  }
  return false;
}

namespace {

// Dense tableau; column layout is [x+ ... | x- ... | slack ... | artificial
// ...], with the right-hand side kept separately.
class PhaseOne {
 public:
  PhaseOne(const std::vector<AffineConstraint>& system,
           const std::vector<std::string>& names)
      : rows_(system.size()), vars_(names.size()) {
    std::map<std::string, std::size_t> index;
    for (std::size_t v = 0; v < names.size(); ++v) index[names[v]] = v;
    std::size_t slack_count = 0;
    for (const auto& c : system) {
      if (c.relation != Relation::Equal) ++slack_count;
    }
    slack_begin_ = 2 * vars_;
    art_begin_ = slack_begin_ + slack_count;
    cols_ = art_begin_ + rows_;
    table_.assign(rows_, std::vector<Rational>(cols_, Rational(0)));
    rhs_.assign(rows_, Rational(0));
    basis_.assign(rows_, 0);

    std::size_t slack = slack_begin_;
    for (std::size_t r = 0; r < rows_; ++r) {
      const auto& c = system[r];
      auto& row = table_[r];
      for (const auto& [name, coef] : c.coeffs) {
        const std::size_t v = index.at(name);
        row[v] += coef;
        row[vars_ + v] -= coef;
      }
      if (c.relation == Relation::LessEqual) row[slack++] = 1;
      if (c.relation == Relation::GreaterEqual) row[slack++] = -1;
      rhs_[r] = c.rhs;
      if (rhs_[r] < 0) {
        for (auto& x : row) x = -x;
        rhs_[r] = -rhs_[r];
      }
      row[art_begin_ + r] = 1;
      basis_[r] = art_begin_ + r;
    }
  }

  bool solve() {
    // Reduced costs of the phase-one objective (sum of artificials).
    std::vector<Rational> reduced(cols_, Rational(0));
    Rational objective = 0;
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t j = 0; j < art_begin_; ++j) reduced[j] -= table_[r][j];
      objective -= rhs_[r];
    }
    for (;;) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (reduced[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) break;
      std::size_t leave = rows_;
      Rational best_ratio;
      for (std::size_t r = 0; r < rows_; ++r) {
        if (table_[r][enter] <= 0) continue;
        Rational ratio = rhs_[r] / table_[r][enter];
        if (leave == rows_ || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      // Phase one is bounded below by zero, so a leaving row always exists.
      if (leave == rows_) throw std::logic_error("unbounded phase-one simplex");
      pivot(leave, enter, reduced, objective);
    }
    return objective == 0;
  }

  std::map<std::string, Rational> witness(
      const std::vector<std::string>& names) const {
    std::vector<Rational> value(cols_, Rational(0));
    for (std::size_t r = 0; r < rows_; ++r) value[basis_[r]] = rhs_[r];
    std::map<std::string, Rational> out;
    for (std::size_t v = 0; v < vars_; ++v) {
      out[names[v]] = value[v] - value[vars_ + v];
    }
    return out;
  }

 private:
  void pivot(std::size_t row, std::size_t col, std::vector<Rational>& reduced,
             Rational& objective) {
    const Rational p = table_[row][col];
    for (auto& x : table_[row]) x /= p;
    rhs_[row] /= p;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == row || table_[r][col] == 0) continue;
      const Rational f = table_[r][col];
      for (std::size_t j = 0; j < cols_; ++j) {
        if (table_[row][j] != 0) table_[r][j] -= f * table_[row][j];
      }
      rhs_[r] -= f * rhs_[row];
    }
    const Rational f = reduced[col];
    for (std::size_t j = 0; j < cols_; ++j) {
      if (table_[row][j] != 0) reduced[j] -= f * table_[row][j];
    }
    objective -= f * rhs_[row];
    basis_[row] = col;
  }

  std::size_t rows_;
  std::size_t vars_;
  std::size_t slack_begin_ = 0;
  std::size_t art_begin_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::vector<Rational>> table_;
  std::vector<Rational> rhs_;
  std::vector<std::size_t> basis_;
};

}  // namespace

FeasibilityResult linear_feasible(const std::vector<AffineConstraint>& system) {
  std::vector<std::string> names;
  {
    std::map<std::string, bool> seen;
    for (const auto& c : system) {
      for (const auto& [name, coef] : c.coeffs) seen[name] = true;
    }
    for (const auto& [name, unused] : seen) names.push_back(name);
  }
  PhaseOne lp(system, names);
  FeasibilityResult result;
  result.feasible = lp.solve();
  if (result.feasible) {
    result.witness = lp.witness(names);
    for (const auto& c : system) {
      if (!c.satisfied_by(result.witness)) {
        throw std::logic_error("simplex witness violates a constraint");
      }
    }
  }
  return result;
}

namespace {

// Parses `[+-] [coef] [name]` terms; returns accumulated coefficients and the
// constant part.
void parse_side(const std::string& text, int sign,
                std::map<std::string, Rational>& coeffs, Rational& constant) {
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
  };
  bool first = true;
  while (true) {
    skip();
    if (i >= text.size()) break;
    int term_sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      term_sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      throw std::invalid_argument("expected '+' or '-' in '" + text + "'");
    }
    first = false;
    std::string number;
    while (i < text.size() &&
           (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '/'))
      number += text[i++];
    skip();
    std::string name;
    while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) ||
                               text[i] == '_'))
      name += text[i++];
    if (number.empty() && name.empty()) {
      throw std::invalid_argument("empty term in '" + text + "'");
    }
    Rational value = number.empty() ? Rational(1) : parse_rational(number);
    value *= term_sign * sign;
    if (name.empty()) {
      constant += value;
    } else {
      coeffs[name] += value;
    }
  }
}

}  // namespace

AffineConstraint parse_constraint(const std::string& text) {
  AffineConstraint c;
  std::size_t pos = text.find("<=");
  std::size_t len = 2;
  if (pos != std::string::npos) {
    c.relation = Relation::LessEqual;
  } else if ((pos = text.find(">=")) != std::string::npos) {
    c.relation = Relation::GreaterEqual;
  } else if ((pos = text.find('=')) != std::string::npos) {
    c.relation = Relation::Equal;
    len = 1;
  } else {
    throw std::invalid_argument("no relation in '" + text + "'");
  }
  Rational constant = 0;
  parse_side(text.substr(0, pos), 1, c.coeffs, constant);
  parse_side(text.substr(pos + len), -1, c.coeffs, constant);
  c.rhs = -constant;
  return c;
}

}  // namespace tropfact
