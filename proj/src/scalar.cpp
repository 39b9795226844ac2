#include "tropfact/scalar.hpp"

#include <cctype>

namespace tropfact {

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational q{mpz_class(std::to_string(num)), mpz_class(std::to_string(den))};
  q.canonicalize();
  return q;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

bool is_signed_integer(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return all_digits(s);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view{"1"}
                                      : text.substr(slash + 1);
  if (!is_signed_integer(num) || !all_digits(den)) {
    throw std::invalid_argument("malformed rational '" + std::string(text) +
                                "'");
  }
  if (num.front() == '+') num.remove_prefix(1);
  mpz_class n(std::string{num});
  mpz_class d(std::string{den});
  if (d == 0) {
    throw std::invalid_argument("zero denominator in '" + std::string(text) +
                                "'");
  }
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational floor(const Rational& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(r);
}

Rational ceil(const Rational& q) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(r);
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

const Rational& TropScalar::value() const {
  if (!finite_) throw std::domain_error("value() of tropical infinity");
  return value_;
}

TropScalar operator+(const TropScalar& x, const TropScalar& y) {
  if (!x.finite_ || !y.finite_) return TropScalar::infinity();
  return TropScalar(Rational(x.value_ + y.value_));
}

TropScalar operator-(const TropScalar& x, const TropScalar& y) {
  if (!y.finite_) throw std::domain_error("subtracting tropical infinity");
  if (!x.finite_) return TropScalar::infinity();
  return TropScalar(Rational(x.value_ - y.value_));
}

bool operator==(const TropScalar& x, const TropScalar& y) {
  if (x.finite_ != y.finite_) return false;
  return !x.finite_ || x.value_ == y.value_;
}

std::strong_ordering operator<=>(const TropScalar& x, const TropScalar& y) {
  if (!x.finite_ || !y.finite_) {
    if (x.finite_ == y.finite_) return std::strong_ordering::equal;
    return x.finite_ ? std::strong_ordering::less
                     : std::strong_ordering::greater;
  }
  const int c = cmp(x.value_, y.value_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string to_string(const TropScalar& x) {
  return x.is_finite() ? to_string(x.value()) : std::string("inf");
}

TropScalar parse_scalar(std::string_view token) {
  if (token == "inf" || token == "+inf") return TropScalar::infinity();
  return TropScalar(parse_rational(token));
}

std::ostream& operator<<(std::ostream& os, const TropScalar& x) {
  return os << to_string(x);
}

}  // namespace tropfact
