#pragma once

// Exact rationals and the min-plus semiring element built on top of them.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tropfact {

using Rational = mpq_class;

/// Raised by every text parser; `position` is the 0-based token index.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : std::runtime_error("token " + std::to_string(position) + ": " + what),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

Rational make_rational(std::int64_t num, std::int64_t den = 1);

/// Parses `12`, `-3`, or `p/q` (q > 0 after canonicalisation). Throws
/// std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

Rational floor(const Rational& q);
Rational ceil(const Rational& q);
bool is_integer(const Rational& q);

/// Element of the tropical semiring: a rational or +infinity.
///
/// `min` is the semiring sum and ordinary `+` the semiring product, so
/// infinity is the additive identity and absorbs under `+`.
class TropScalar {
 public:
  /// Default-constructs the tropical zero (infinity).
  TropScalar() = default;
  TropScalar(const Rational& value) : finite_(true), value_(value) {}  // NOLINT
  TropScalar(long value) : finite_(true), value_(value) {}             // NOLINT
  TropScalar(int value) : finite_(true), value_(value) {}              // NOLINT

  static TropScalar infinity() { return TropScalar(); }

  bool is_finite() const { return finite_; }
  bool is_infinite() const { return !finite_; }

  /// Throws std::domain_error for infinity.
  const Rational& value() const;

  friend TropScalar operator+(const TropScalar& x, const TropScalar& y);
  /// x - y for finite y; infinity - finite is infinity.
  friend TropScalar operator-(const TropScalar& x, const TropScalar& y);
  TropScalar& operator+=(const TropScalar& y) { return *this = *this + y; }

  friend bool operator==(const TropScalar& x, const TropScalar& y);
  friend std::strong_ordering operator<=>(const TropScalar& x,
                                          const TropScalar& y);

 private:
  bool finite_ = false;
  Rational value_;
};

inline TropScalar trop_min(const TropScalar& x, const TropScalar& y) {
  return (y < x) ? y : x;
}

inline TropScalar trop_max(const TropScalar& x, const TropScalar& y) {
  return (x < y) ? y : x;
}

/// Token form: integer, `p/q`, or `inf`.
std::string to_string(const TropScalar& x);
TropScalar parse_scalar(std::string_view token);

std::ostream& operator<<(std::ostream& os, const TropScalar& x);

}  // namespace tropfact
