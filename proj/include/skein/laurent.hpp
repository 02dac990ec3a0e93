#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace skein {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Element of Z[A, A^-1].
///
/// Terms are kept sorted by strictly descending exponent with no zero
/// coefficients, so two equal polynomials always have identical term lists.
class LaurentPoly {
 public:
  struct Term {
    int exponent;
    Integer coeff;
    bool operator==(const Term&) const = default;
  };

  LaurentPoly() = default;
  LaurentPoly(Integer constant);  // NOLINT: implicit from integers is intended
  LaurentPoly(int constant) : LaurentPoly(Integer(constant)) {}

  static LaurentPoly monomial(Integer coeff, int exponent);
  /// A^exponent
  static LaurentPoly var(int exponent = 1) { return monomial(1, exponent); }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  /// Single term with coefficient +-1.
  bool is_unit() const;
  int max_exponent() const;
  int min_exponent() const;
  Integer coeff(int exponent) const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& rhs);
  LaurentPoly& operator-=(const LaurentPoly& rhs);
  LaurentPoly& operator*=(const LaurentPoly& rhs);
  friend LaurentPoly operator+(LaurentPoly lhs, const LaurentPoly& rhs) { return lhs += rhs; }
  friend LaurentPoly operator-(LaurentPoly lhs, const LaurentPoly& rhs) { return lhs -= rhs; }
  friend LaurentPoly operator*(const LaurentPoly& lhs, const LaurentPoly& rhs);
  bool operator==(const LaurentPoly&) const = default;

  /// Multiply by A^shift.
  LaurentPoly shifted(int shift) const;
  /// Substitute A -> A^-1.
  LaurentPoly bar() const;
  LaurentPoly pow(unsigned k) const;

  /// gcd of all coefficients, made positive; zero for the zero polynomial.
  Integer content() const;
  /// Divides every coefficient by d; throws if some coefficient is not a multiple.
  LaurentPoly divided_exact(const Integer& d) const;

  /// Exact value at A = a; throws std::domain_error for a == 0.
  Rational eval(const Rational& a) const;

  /// Canonical text, e.g. "-A^2 - A^-2", "2A + A^-1", "1", "0".
  std::string to_string() const;
  static LaurentPoly parse(std::string_view text);

  /// [[exponent, "coefficient"], ...] in descending exponent order.
  nlohmann::json to_json() const;
  static LaurentPoly from_json(const nlohmann::json& j);

 private:
  explicit LaurentPoly(std::vector<Term> sorted_terms) : terms_(std::move(sorted_terms)) {}
  std::vector<Term> terms_;
};

LaurentPoly add(const LaurentPoly& p, const LaurentPoly& q);
LaurentPoly mul(const LaurentPoly& p, const LaurentPoly& q);
Rational eval(const LaurentPoly& p, const Rational& a);

/// delta = -A^2 - A^-2, the value of a trivial loop.
const LaurentPoly& loop_value();
/// -A^3: coefficient of a positive kink (and of a positive framing twist).
const LaurentPoly& positive_kink_value();
/// -A^-3: coefficient of a negative kink.
const LaurentPoly& negative_kink_value();

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p);

}  // namespace skein
