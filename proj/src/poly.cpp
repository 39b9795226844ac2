#include "tropfact/poly.hpp"

#include <algorithm>
#include <sstream>

namespace tropfact {

namespace {

const TropScalar kInfinity = TropScalar::infinity();

std::vector<std::string> split_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

int parse_degree_token(const std::string& tok, std::size_t position) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(tok, &used);
  } catch (const std::exception&) {
    throw ParseError(position, "expected a nonnegative integer, got '" + tok +
                                   "'");
  }
  if (used != tok.size() || v < 0 || v > (1L << 30)) {
    throw ParseError(position, "expected a nonnegative integer, got '" + tok +
                                   "'");
  }
  return static_cast<int>(v);
}

}  // namespace

TropPoly::TropPoly(std::vector<TropScalar> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back().is_infinite()) coeffs_.pop_back();
}

TropPoly TropPoly::from_terms(
    const std::vector<std::pair<int, TropScalar>>& terms) {
  int top = -1;
  for (const auto& [deg, c] : terms) {
    if (deg < 0) throw std::invalid_argument("negative degree");
    top = std::max(top, deg);
  }
  std::vector<TropScalar> coeffs(static_cast<std::size_t>(top + 1));
  for (const auto& [deg, c] : terms) {
    coeffs[deg] = trop_min(coeffs[deg], c);
  }
  return TropPoly(std::move(coeffs));
}

const TropScalar& TropPoly::operator[](int k) const {
  if (k < 0 || k > degree()) return kInfinity;
  return coeffs_[k];
}

bool TropPoly::all_finite() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const TropScalar& c) { return c.is_finite(); });
}

int TropPoly::low_degree() const {
  for (int k = 0; k <= degree(); ++k) {
    if (coeffs_[k].is_finite()) return k;
  }
  return -1;
}

TropPoly trop_add(const TropPoly& p, const TropPoly& q) {
  const int n = std::max(p.degree(), q.degree());
  std::vector<TropScalar> out(static_cast<std::size_t>(n + 1));
  for (int k = 0; k <= n; ++k) out[k] = trop_min(p[k], q[k]);
  return TropPoly(std::move(out));
}

TropPoly trop_mul(const TropPoly& p, const TropPoly& q) {
  if (p.is_zero() || q.is_zero()) return TropPoly();
  const int n = p.degree() + q.degree();
  std::vector<TropScalar> out(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= p.degree(); ++i) {
    if (p[i].is_infinite()) continue;
    for (int j = 0; j <= q.degree(); ++j) {
      if (q[j].is_infinite()) continue;
      TropScalar s = p[i] + q[j];
      if (s < out[i + j]) out[i + j] = std::move(s);
    }
  }
  return TropPoly(std::move(out));
}

TropScalar eval(const TropPoly& p, const TropScalar& x) {
  TropScalar best;
  for (int i = 0; i <= p.degree(); ++i) {
    if (p[i].is_infinite()) continue;
    TropScalar term =
        x.is_finite() ? p[i] + TropScalar(Rational(x.value() * i))
                      : (i == 0 ? p[i] : TropScalar::infinity());
    best = trop_min(best, term);
  }
  return best;
}

TropPoly translate(const TropPoly& p, const Rational& shift) {
  std::vector<TropScalar> out = p.coeffs();
  for (auto& c : out) c += TropScalar(shift);
  return TropPoly(std::move(out));
}

TropPoly shift_degree(const TropPoly& p, int k) {
  if (k < 0) throw std::invalid_argument("negative degree shift");
  if (p.is_zero()) return p;
  std::vector<TropScalar> out(static_cast<std::size_t>(k));
  out.insert(out.end(), p.coeffs().begin(), p.coeffs().end());
  return TropPoly(std::move(out));
}

bool coefficientwise_le(const TropPoly& p, const TropPoly& q) {
  const int n = std::max(p.degree(), q.degree());
  for (int k = 0; k <= n; ++k) {
    if (q[k] < p[k]) return false;
  }
  return true;
}

TropPoly parse_poly(std::string_view text) {
  const auto tokens = split_tokens(text);
  if (tokens.empty()) throw ParseError(0, "empty polynomial");
  std::vector<TropScalar> coeffs;
  coeffs.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    try {
      coeffs.push_back(parse_scalar(tokens[i]));
    } catch (const std::invalid_argument& e) {
      throw ParseError(i, e.what());
    }
  }
  return TropPoly(std::move(coeffs));
}

std::string to_string(const TropPoly& p) {
  if (p.is_zero()) return "inf";
  std::string out;
  for (int k = 0; k <= p.degree(); ++k) {
    if (k) out += ' ';
    out += to_string(p[k]);
  }
  return out;
}

BoolPoly::BoolPoly(std::vector<int> support) : support_(std::move(support)) {
  std::sort(support_.begin(), support_.end());
  support_.erase(std::unique(support_.begin(), support_.end()), support_.end());
  if (!support_.empty() && support_.front() < 0) {
    throw std::invalid_argument("negative degree in Boolean support");
  }
}

bool BoolPoly::contains(int d) const {
  return std::binary_search(support_.begin(), support_.end(), d);
}

TropPoly BoolPoly::to_trop() const {
  std::vector<TropScalar> coeffs(static_cast<std::size_t>(degree() + 1));
  for (int d : support_) coeffs[d] = TropScalar(0);
  return TropPoly(std::move(coeffs));
}

BoolPoly BoolPoly::from_trop(const TropPoly& p) {
  std::vector<int> support;
  for (int k = 0; k <= p.degree(); ++k) {
    if (p[k].is_infinite()) continue;
    if (p[k].value() != 0) {
      throw std::invalid_argument("coefficient at degree " + std::to_string(k) +
                                  " is neither 0 nor inf");
    }
    support.push_back(k);
  }
  return BoolPoly(std::move(support));
}

BoolPoly bool_mul(const BoolPoly& a, const BoolPoly& b) {
  std::vector<int> sums;
  sums.reserve(a.support().size() * b.support().size());
  for (int x : a.support()) {
    for (int y : b.support()) sums.push_back(x + y);
  }
  return BoolPoly(std::move(sums));
}

BoolPoly parse_bool_poly(std::string_view text) {
  const auto tokens = split_tokens(text);
  std::vector<int> support;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const int d = parse_degree_token(tokens[i], i);
    if (std::find(support.begin(), support.end(), d) != support.end()) {
      throw ParseError(i, "repeated degree " + tokens[i]);
    }
    support.push_back(d);
  }
  return BoolPoly(std::move(support));
}

std::string to_string(const BoolPoly& b) {
  std::string out;
  for (std::size_t i = 0; i < b.support().size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(b.support()[i]);
  }
  return out;
}

BoolPoly2::BoolPoly2(std::set<Exponent2> support) : support_(std::move(support)) {
  for (const auto& [x, y] : support_) {
    if (x < 0 || y < 0) throw std::invalid_argument("negative exponent");
  }
}

bool BoolPoly2::is_filled() const {
  for (const auto& [x, y] : support_) {
    // Checking the two immediate predecessors suffices by induction.
    if (x > 0 && !support_.count({x - 1, y})) return false;
    if (y > 0 && !support_.count({x, y - 1})) return false;
  }
  return true;
}

std::vector<Exponent2> BoolPoly2::frontier() const {
  std::vector<Exponent2> pts(support_.begin(), support_.end());
  return Staircase(pts).corners();
}

BoolPoly2 bool2_mul(const BoolPoly2& a, const BoolPoly2& b) {
  std::set<Exponent2> out;
  for (const auto& [ax, ay] : a.support()) {
    for (const auto& [bx, by] : b.support()) out.insert({ax + bx, ay + by});
  }
  return BoolPoly2(std::move(out));
}

BoolPoly2 fill(const BoolPoly2& s) {
  std::vector<Exponent2> pts(s.support().begin(), s.support().end());
  return Staircase(pts).support();
}

BoolPoly2 parse_bool_poly2(std::string_view text) {
  std::set<Exponent2> support;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t token_index = 0;
  while (std::getline(in, line)) {
    const auto tokens = split_tokens(line);
    if (tokens.empty()) continue;
    if (tokens.size() != 2) {
      throw ParseError(token_index, "expected an 'i j' pair per line");
    }
    const int x = parse_degree_token(tokens[0], token_index);
    const int y = parse_degree_token(tokens[1], token_index + 1);
    support.insert({x, y});
    token_index += 2;
  }
  return BoolPoly2(std::move(support));
}

std::string to_string(const BoolPoly2& s) {
  std::string out;
  for (const auto& [x, y] : s.support()) {
    out += std::to_string(x) + " " + std::to_string(y) + "\n";
  }
  return out;
}

Staircase::Staircase(const std::vector<Exponent2>& points) {
  std::vector<Exponent2> pts = points;
  for (const auto& [x, y] : pts) {
    if (x < 0 || y < 0) throw std::invalid_argument("negative exponent");
  }
  // Sort by x descending (y descending on ties); keep points whose y beats
  // every point further right.
  std::sort(pts.begin(), pts.end(), std::greater<>());
  int best_y = -1;
  for (const auto& p : pts) {
    if (p.second > best_y) {
      corners_.push_back(p);
      best_y = p.second;
    }
  }
  std::reverse(corners_.begin(), corners_.end());
}

bool Staircase::contains(const Exponent2& e) const {
  return std::any_of(corners_.begin(), corners_.end(), [&](const Exponent2& c) {
    return e.first <= c.first && e.second <= c.second;
  });
}

BoolPoly2 Staircase::support() const {
  std::set<Exponent2> out;
  for (const auto& [cx, cy] : corners_) {
    for (int x = 0; x <= cx; ++x) {
      for (int y = 0; y <= cy; ++y) out.insert({x, y});
    }
  }
  return BoolPoly2(std::move(out));
}

Staircase staircase_mul(const Staircase& a, const Staircase& b) {
  std::vector<Exponent2> sums;
  for (const auto& [ax, ay] : a.corners()) {
    for (const auto& [bx, by] : b.corners()) sums.push_back({ax + bx, ay + by});
  }
  return Staircase(sums);
}

}  // namespace tropfact
