#include "skein/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <stdexcept>

#include "skein/error.hpp"

namespace skein {

LaurentPoly::LaurentPoly(Integer constant) {
  if (constant != 0) terms_.push_back({0, std::move(constant)});
}

LaurentPoly LaurentPoly::monomial(Integer coeff, int exponent) {
  if (coeff == 0) return {};
  return LaurentPoly(std::vector<Term>{{exponent, std::move(coeff)}});
}

bool LaurentPoly::is_one() const {
  return terms_.size() == 1 && terms_[0].exponent == 0 && terms_[0].coeff == 1;
}

bool LaurentPoly::is_unit() const {
  return terms_.size() == 1 && (terms_[0].coeff == 1 || terms_[0].coeff == -1);
}

int LaurentPoly::max_exponent() const {
  if (terms_.empty()) throw std::domain_error("max_exponent of zero polynomial");
  return terms_.front().exponent;
}

int LaurentPoly::min_exponent() const {
  if (terms_.empty()) throw std::domain_error("min_exponent of zero polynomial");
  return terms_.back().exponent;
}

Integer LaurentPoly::coeff(int exponent) const {
  for (const auto& t : terms_) {
    if (t.exponent == exponent) return t.coeff;
    if (t.exponent < exponent) break;
  }
  return 0;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

namespace {

// Merge two descending term lists; sign is +1 or -1 for the right operand.
std::vector<LaurentPoly::Term> merge(const std::vector<LaurentPoly::Term>& a,
                                     const std::vector<LaurentPoly::Term>& b, int sign) {
  std::vector<LaurentPoly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].exponent > b[j].exponent)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].exponent > a[i].exponent) {
      out.push_back({b[j].exponent, sign > 0 ? b[j].coeff : Integer(-b[j].coeff)});
      ++j;
    } else {
      Integer c = sign > 0 ? Integer(a[i].coeff + b[j].coeff) : Integer(a[i].coeff - b[j].coeff);
      if (c != 0) out.push_back({a[i].exponent, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& rhs) {
  if (rhs.terms_.empty()) return *this;
  if (terms_.empty()) return *this = rhs;
  terms_ = merge(terms_, rhs.terms_, +1);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& rhs) {
  if (rhs.terms_.empty()) return *this;
  terms_ = merge(terms_, rhs.terms_, -1);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& lhs, const LaurentPoly& rhs) {
  if (lhs.is_zero() || rhs.is_zero()) return {};
  if (rhs.terms_.size() == 1) {
    const auto& m = rhs.terms_[0];
    std::vector<LaurentPoly::Term> out;
    out.reserve(lhs.terms_.size());
    for (const auto& t : lhs.terms_) out.push_back({t.exponent + m.exponent, t.coeff * m.coeff});
    return LaurentPoly(std::move(out));
  }
  if (lhs.terms_.size() == 1) return rhs * lhs;

  const long hi = static_cast<long>(lhs.max_exponent()) + rhs.max_exponent();
  const long lo = static_cast<long>(lhs.min_exponent()) + rhs.min_exponent();
  const long span = hi - lo + 1;
  std::vector<LaurentPoly::Term> out;
  if (span <= 4 * static_cast<long>(lhs.terms_.size() * rhs.terms_.size()) + 64) {
    std::vector<Integer> acc(static_cast<std::size_t>(span));
    for (const auto& a : lhs.terms_)
      for (const auto& b : rhs.terms_) acc[static_cast<std::size_t>(hi - (a.exponent + b.exponent))] += a.coeff * b.coeff;
    for (long k = 0; k < span; ++k)
      if (acc[static_cast<std::size_t>(k)] != 0)
        out.push_back({static_cast<int>(hi - k), std::move(acc[static_cast<std::size_t>(k)])});
    return LaurentPoly(std::move(out));
  }
  LaurentPoly sum;
  for (const auto& b : rhs.terms_) sum += lhs * LaurentPoly::monomial(b.coeff, b.exponent);
  return sum;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& rhs) { return *this = *this * rhs; }

LaurentPoly LaurentPoly::shifted(int shift) const {
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.exponent += shift;
  return r;
}

LaurentPoly LaurentPoly::bar() const {
  std::vector<Term> out(terms_.rbegin(), terms_.rend());
  for (auto& t : out) t.exponent = -t.exponent;
  return LaurentPoly(std::move(out));
}

LaurentPoly LaurentPoly::pow(unsigned k) const {
  LaurentPoly result(1), base = *this;
  while (k > 0) {
    if (k & 1U) result *= base;
    k >>= 1U;
    if (k > 0) base *= base;
  }
  return result;
}

Integer LaurentPoly::content() const {
  Integer g = 0;
  for (const auto& t : terms_) {
    g = boost::multiprecision::gcd(g, t.coeff);
    if (g == 1) break;
  }
  return boost::multiprecision::abs(g);
}

LaurentPoly LaurentPoly::divided_exact(const Integer& d) const {
  if (d == 0) throw std::domain_error("division by zero");
  LaurentPoly r = *this;
  for (auto& t : r.terms_) {
    Integer q, rem;
    boost::multiprecision::divide_qr(t.coeff, d, q, rem);
    if (rem != 0) throw std::domain_error("inexact division of LaurentPoly coefficient");
    t.coeff = std::move(q);
  }
  return r;
}

Rational LaurentPoly::eval(const Rational& a) const {
  if (a == 0) throw std::domain_error("LaurentPoly::eval: zero substitution");
  if (terms_.empty()) return 0;
  // Horner from the lowest exponent: value = a^min * sum c_k a^(k-min)
  Rational acc = 0;
  int prev = terms_.front().exponent;
  for (const auto& t : terms_) {
    for (int e = prev; e > t.exponent; --e) acc *= a;
    acc += Rational(t.coeff);
    prev = t.exponent;
  }
  int low = terms_.back().exponent;
  if (low >= 0) {
    for (int e = 0; e < low; ++e) acc *= a;
  } else {
    for (int e = 0; e < -low; ++e) acc /= a;
  }
  return acc;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    bool negative = t.coeff < 0;
    Integer mag = negative ? Integer(-t.coeff) : t.coeff;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (t.exponent == 0) {
      out += mag.str();
      continue;
    }
    if (mag != 1) out += mag.str();
    out += "A";
    if (t.exponent != 1) out += "^" + std::to_string(t.exponent);
  }
  return out;
}

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view s) : s_(s) {}

  LaurentPoly parse() {
    LaurentPoly result;
    skip_ws();
    if (at_end()) fail("empty polynomial");
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-' between terms");
      }
      first = false;
      result += parse_term(sign);
      skip_ws();
    }
    return result;
  }

 private:
  LaurentPoly parse_term(int sign) {
    Integer coeff = 1;
    bool have_digits = false;
    if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = parse_unsigned();
      have_digits = true;
      skip_ws();
      if (!at_end() && peek() == '*') {
        ++pos_;
        skip_ws();
        if (at_end() || peek() != 'A') fail("expected 'A' after '*'");
      }
    }
    int exponent = 0;
    if (!at_end() && peek() == 'A') {
      ++pos_;
      exponent = 1;
      skip_ws();
      if (!at_end() && peek() == '^') {
        ++pos_;
        skip_ws();
        int esign = 1;
        if (!at_end() && (peek() == '-' || peek() == '+')) {
          esign = peek() == '-' ? -1 : 1;
          ++pos_;
        }
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent");
        Integer e = parse_unsigned();
        if (e > 1000000) fail("exponent out of range");
        exponent = esign * e.convert_to<int>();
      }
    } else if (!have_digits) {
      fail("expected coefficient or 'A'");
    }
    return LaurentPoly::monomial(sign * coeff, exponent);
  }

  Integer parse_unsigned() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("polynomial: " + msg, 1, static_cast<int>(pos_) + 1);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

LaurentPoly LaurentPoly::parse(std::string_view text) { return PolyParser(text).parse(); }

nlohmann::json LaurentPoly::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& t : terms_) arr.push_back({t.exponent, t.coeff.str()});
  return arr;
}

LaurentPoly LaurentPoly::from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw ParseError("polynomial JSON must be an array");
  LaurentPoly r;
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer())
      throw ParseError("polynomial JSON term must be [exponent, coefficient]");
    Integer c = pair[1].is_string() ? Integer(pair[1].get<std::string>()) : Integer(pair[1].get<long long>());
    r += monomial(std::move(c), pair[0].get<int>());
  }
  return r;
}

LaurentPoly add(const LaurentPoly& p, const LaurentPoly& q) { return p + q; }
LaurentPoly mul(const LaurentPoly& p, const LaurentPoly& q) { return p * q; }
Rational eval(const LaurentPoly& p, const Rational& a) { return p.eval(a); }

const LaurentPoly& loop_value() {
  static const LaurentPoly delta = LaurentPoly::monomial(-1, 2) + LaurentPoly::monomial(-1, -2);
  return delta;
}

const LaurentPoly& positive_kink_value() {
  static const LaurentPoly v = LaurentPoly::monomial(-1, 3);
  return v;
}

const LaurentPoly& negative_kink_value() {
  static const LaurentPoly v = LaurentPoly::monomial(-1, -3);
  return v;
}

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.to_string(); }

}  // namespace skein
