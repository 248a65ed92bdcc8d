#pragma once

#include <gmpxx.h>

#include <cctype>
#include <compare>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ietkit {

using Integer = mpz_class;
using Rational = mpq_class;

/// Domain errors raised by every module (bad input, violated precondition).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Raised when an iteration bound is exhausted before a result is found.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline Integer isqrt(const Integer& n) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

inline bool is_perfect_square(const Integer& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

/// Splits d > 0 as k^2 * s with s square-free. Trial division runs to 10^6;
/// a leftover cofactor is accepted only when it is provably square-free.
inline void square_free_split(const Integer& d, Integer& k, Integer& s) {
  Integer m = d;
  k = 1;
  s = 1;
  const unsigned long bound = 1000000UL;
  unsigned long p = 2;
  for (; p <= bound; p += (p == 2 ? 1 : 2)) {
    if (Integer(p) * p > m) break;
    if (mpz_divisible_ui_p(m.get_mpz_t(), p) == 0) continue;
    unsigned e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p) != 0) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
      ++e;
    }
    for (unsigned i = 0; i < e / 2; ++i) k *= p;
    if (e % 2 == 1) s *= p;
  }
  if (m == 1) return;
  if (Integer(p) * p > m) {  // m is prime
    s *= m;
    return;
  }
  if (is_perfect_square(m)) {
    k *= isqrt(m);
    return;
  }
  // no prime factor below 10^6, so m < 10^18 has at most two prime factors
  if (m < Integer("1000000000000000000")) {
    s *= m;
    return;
  }
  throw DomainError("radicand too large to certify square-free: " + d.get_str());
}

}  // namespace detail

/// Exact element p + q*sqrt(d) of a real quadratic field, or of Q when q == 0.
///
/// Canonical form: d is square-free and >= 2 whenever q != 0; otherwise d == 0.
/// Two canonical values are equal iff their fields coincide.
class FieldValue {
 public:
  FieldValue() = default;
  FieldValue(long v) : p_(v) {}  // NOLINT(google-explicit-constructor)
  FieldValue(const Rational& r) : p_(r) { p_.canonicalize(); }  // NOLINT

  static FieldValue rational(const Integer& num, const Integer& den) {
    if (den == 0) throw DomainError("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return FieldValue(r);
  }

  /// p + q*sqrt(d) for any integer d >= 0; square factors of d are folded into q.
  static FieldValue quadratic(const Rational& p, const Rational& q, const Integer& d) {
    if (d < 0) throw DomainError("negative radicand");
    FieldValue v(p);
    if (q == 0 || d == 0) return v;
    Integer k, s;
    detail::square_free_split(d, k, s);
    Rational qq = q * Rational(k);
    qq.canonicalize();
    if (s == 1) {
      v.p_ += qq;
      v.p_.canonicalize();
      return v;
    }
    v.q_ = qq;
    v.d_ = s;
    return v;
  }

  const Rational& rational_part() const { return p_; }
  const Rational& surd_part() const { return q_; }
  const Integer& radicand() const { return d_; }
  bool is_rational() const { return q_ == 0; }
  bool is_zero() const { return p_ == 0 && q_ == 0; }

  /// True when both values live in a common field.
  bool compatible(const FieldValue& o) const { return d_ == 0 || o.d_ == 0 || d_ == o.d_; }

  FieldValue operator-() const {
    FieldValue r = *this;
    r.p_ = -r.p_;
    r.q_ = -r.q_;
    return r;
  }

  friend FieldValue operator+(const FieldValue& a, const FieldValue& b) {
    FieldValue r;
    r.p_ = a.p_ + b.p_;
    r.q_ = a.q_ + b.q_;
    r.d_ = common(a, b);
    return r.normalized();
  }

  friend FieldValue operator-(const FieldValue& a, const FieldValue& b) { return a + (-b); }

  friend FieldValue operator*(const FieldValue& a, const FieldValue& b) {
    Integer d = common(a, b);
    FieldValue r;
    r.p_ = a.p_ * b.p_ + a.q_ * b.q_ * Rational(d);
    r.q_ = a.p_ * b.q_ + a.q_ * b.p_;
    r.d_ = d;
    return r.normalized();
  }

  friend FieldValue operator/(const FieldValue& a, const FieldValue& b) {
    if (b.is_zero()) throw DomainError("division by zero");
    Integer d = common(a, b);
    // b * conj(b) = p^2 - q^2 d, nonzero because d is not a square
    Rational norm = b.p_ * b.p_ - b.q_ * b.q_ * Rational(d);
    FieldValue conj;
    conj.p_ = b.p_ / norm;
    conj.q_ = -b.q_ / norm;
    conj.d_ = b.d_;
    return a * conj.normalized();
  }

  FieldValue& operator+=(const FieldValue& o) { return *this = *this + o; }
  FieldValue& operator-=(const FieldValue& o) { return *this = *this - o; }
  FieldValue& operator*=(const FieldValue& o) { return *this = *this * o; }
  FieldValue& operator/=(const FieldValue& o) { return *this = *this / o; }

  /// Exact sign: -1, 0 or 1.
  int sign() const {
    int a = sgn(p_);
    int b = sgn(q_);
    if (b == 0) return a;
    if (a == 0 || a == b) return b;
    // opposite signs: compare p^2 with q^2 d
    int c = cmp(p_ * p_, q_ * q_ * Rational(d_));
    return c > 0 ? a : (c < 0 ? b : 0);
  }

  friend bool operator==(const FieldValue& a, const FieldValue& b) {
    return a.p_ == b.p_ && a.q_ == b.q_ && a.d_ == b.d_;
  }

  /// Throws DomainError when the radicands differ.
  friend std::strong_ordering operator<=>(const FieldValue& a, const FieldValue& b) {
    int s = (a - b).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// Canonical text: "p", "p/q", "q*sqrt(d)" or "p + q*sqrt(d)".
  std::string to_string() const {
    if (q_ == 0) return p_.get_str();
    std::string surd = abs(q_) == 1 ? "sqrt(" + d_.get_str() + ")"
                                    : Rational(abs(q_)).get_str() + "*sqrt(" + d_.get_str() + ")";
    if (p_ == 0) return (q_ < 0 ? "-" : "") + surd;
    return p_.get_str() + (q_ < 0 ? " - " : " + ") + surd;
  }

  /// Decimal approximation for display only; never used in decisions.
  std::string approx(int digits = 20) const {
    const mp_bitcnt_t prec = 256;
    mpf_class v(p_, prec);
    if (q_ != 0) {
      mpf_class root(d_, prec);
      root = sqrt(root);
      v += mpf_class(q_, prec) * root;
    }
    std::ostringstream os;
    os << std::setprecision(digits) << v;
    return os.str();
  }

  /// Parses "p/q", "p/q + r/s*sqrt(D)", "sqrt(D)" and sums of such terms.
  static FieldValue parse(std::string_view text);

 private:
  static int sgn(const Rational& r) { return ::sgn(r); }

  static Integer common(const FieldValue& a, const FieldValue& b) {
    if (!a.compatible(b))
      throw DomainError("incompatible radicands " + a.d_.get_str() + " and " + b.d_.get_str());
    return a.d_ != 0 ? a.d_ : b.d_;
  }

  FieldValue normalized() {
    p_.canonicalize();
    q_.canonicalize();
    if (q_ == 0) d_ = 0;
    return *this;
  }

  Rational p_ = 0;
  Rational q_ = 0;
  Integer d_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const FieldValue& v) { return os << v.to_string(); }

inline FieldValue make_rational(long num, long den = 1) { return FieldValue::rational(num, den); }

inline FieldValue make_quadratic(const Rational& p, const Rational& q, const Integer& d) {
  return FieldValue::quadratic(p, q, d);
}

namespace detail {

class FieldParser {
 public:
  explicit FieldParser(std::string_view s) : s_(s) {}

  FieldValue parse() {
    skip();
    if (at_end()) fail("empty input");
    FieldValue acc = term(read_sign(true));
    skip();
    while (!at_end()) {
      char c = s_[i_];
      if (c != '+' && c != '-') fail("expected '+' or '-'");
      ++i_;
      skip();
      acc += term(c == '-' ? -1 : 1);
      skip();
    }
    return acc;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw DomainError("cannot parse field value '" + std::string(s_) + "': " + why);
  }
  bool at_end() const { return i_ >= s_.size(); }
  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  int read_sign(bool allow) {
    skip();
    int sg = 1;
    while (allow && !at_end() && (s_[i_] == '-' || s_[i_] == '+')) {
      if (s_[i_] == '-') sg = -sg;
      ++i_;
      skip();
    }
    return sg;
  }
  Integer integer() {
    skip();
    std::size_t start = i_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) fail("expected digits");
    if (!at_end() && (s_[i_] == '.' || s_[i_] == 'e' || s_[i_] == 'E')) fail("decimals are not exact");
    return Integer(std::string(s_.substr(start, i_ - start)));
  }
  bool keyword_sqrt() {
    skip();
    if (s_.substr(i_, 4) == "sqrt") {
      i_ += 4;
      skip();
      if (at_end() || s_[i_] != '(') fail("expected '(' after sqrt");
      return true;
    }
    return false;
  }
  Integer radicand() {
    ++i_;  // '('
    Integer d = integer();
    skip();
    if (at_end() || s_[i_] != ')') fail("expected ')'");
    ++i_;
    return d;
  }
  FieldValue term(int outer) {
    int sg = outer * read_sign(true);
    if (keyword_sqrt()) return FieldValue::quadratic(0, sg, radicand());
    Integer num = integer();
    Integer den = 1;
    skip();
    if (!at_end() && s_[i_] == '/') {
      ++i_;
      den = integer();
      if (den == 0) fail("zero denominator");
    }
    Rational coef(num * sg, den);
    coef.canonicalize();
    skip();
    if (!at_end() && s_[i_] == '*') {
      ++i_;
      if (!keyword_sqrt()) fail("expected sqrt after '*'");
      return FieldValue::quadratic(0, coef, radicand());
    }
    return FieldValue(coef);
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace detail

inline FieldValue FieldValue::parse(std::string_view text) { return detail::FieldParser(text).parse(); }

inline FieldValue min(const FieldValue& a, const FieldValue& b) { return b < a ? b : a; }
inline FieldValue max(const FieldValue& a, const FieldValue& b) { return a < b ? b : a; }

/// Half-open interval [left, right).
struct Interval {
  FieldValue left;
  FieldValue right;

  FieldValue length() const { return right - left; }
  bool empty() const { return !(left < right); }
  bool contains(const FieldValue& x) const { return left <= x && x < right; }
  bool contains_open(const FieldValue& x) const { return left < x && x < right; }
  bool contains(const Interval& o) const { return left <= o.left && o.right <= right; }
  Interval intersect(const Interval& o) const { return {max(left, o.left), min(right, o.right)}; }
  Interval shifted(const FieldValue& t) const { return {left + t, right + t}; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const Interval& iv) {
  return os << '[' << iv.left << ", " << iv.right << ')';
}

}  // namespace ietkit
