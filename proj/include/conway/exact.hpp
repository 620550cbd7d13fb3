#pragma once

// Exact arithmetic: big integers, rationals and canonical real quadratic
// irrationals (A + B*sqrt(D))/C. Nothing in this header rounds; the only
// approximate output is the explicit decimal printer.

#include <compare>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

namespace conway {

using BigInt = mpz_class;

/// Canonical rational: den > 0, gcd(num, den) = 1.
class Rational {
 public:
  Rational() = default;
  Rational(const BigInt& integer) : value_(integer) {}  // NOLINT(implicit)
  Rational(long integer) : value_(integer) {}           // NOLINT(implicit)
  Rational(const BigInt& num, const BigInt& den);

  BigInt num() const { return value_.get_num(); }
  BigInt den() const { return value_.get_den(); }
  int sign() const { return sgn(value_); }
  bool is_integer() const { return value_.get_den() == 1; }

  const mpq_class& raw() const { return value_; }

  friend Rational operator+(const Rational& x, const Rational& y) { return Rational(mpq_class(x.value_ + y.value_)); }
  friend Rational operator-(const Rational& x, const Rational& y) { return Rational(mpq_class(x.value_ - y.value_)); }
  friend Rational operator*(const Rational& x, const Rational& y) { return Rational(mpq_class(x.value_ * y.value_)); }
  friend Rational operator/(const Rational& x, const Rational& y);
  Rational operator-() const { return Rational(mpq_class(-value_)); }

  friend bool operator==(const Rational& x, const Rational& y) { return x.value_ == y.value_; }
  friend std::strong_ordering operator<=>(const Rational& x, const Rational& y) {
    return cmp(x.value_, y.value_) <=> 0;
  }

  std::string to_string() const;

 private:
  explicit Rational(mpq_class v) : value_(std::move(v)) {}
  mpq_class value_;
};

/// Greatest integer <= sqrt(n), n >= 0.
BigInt isqrt(const BigInt& n);
bool is_perfect_square(const BigInt& n);

/// Splits n > 0 as f^2 * k with k squarefree. Primes below 2^20 are removed
/// by trial division; a cofactor with no such primes is squarefree whenever it
/// is below 2^60 or is not a perfect square times a larger prime power.
std::pair<BigInt, BigInt> split_square_factor(const BigInt& n);

/// The real number (A + B*sqrt(D)) / C in canonical form:
///   C > 0, D squarefree (D > 1) or the value is rational (B = 0, D = 0),
///   gcd(A, B, C) = 1.
/// Immutable; every operation returns a new canonical value.
class QuadraticIrrational {
 public:
  QuadraticIrrational() = default;
  QuadraticIrrational(const BigInt& integer) : a_(integer) {}  // NOLINT(implicit)
  QuadraticIrrational(long integer) : a_(integer) {}           // NOLINT(implicit)
  QuadraticIrrational(const Rational& q) : a_(q.num()), c_(q.den()) {}  // NOLINT(implicit)

  /// Canonicalizes (A + B*sqrt(D)) / C. Throws DivisionByZero for C = 0 and
  /// DomainError for D < 0.
  static QuadraticIrrational normalize(BigInt a, BigInt b, BigInt d, BigInt c);

  /// sqrt(q) for a nonnegative rational q.
  static QuadraticIrrational sqrt(const Rational& q);

  const BigInt& a() const { return a_; }
  const BigInt& b() const { return b_; }
  const BigInt& d() const { return d_; }
  const BigInt& c() const { return c_; }

  bool is_rational() const { return b_ == 0; }
  bool is_integer() const { return b_ == 0 && c_ == 1; }
  Rational to_rational() const;

  int sign() const;
  QuadraticIrrational conjugate() const;
  BigInt floor() const;
  /// 1 / (x - n); throws DivisionByZero when x == n.
  QuadraticIrrational recip_shift(const BigInt& n) const;
  QuadraticIrrational reciprocal() const;

  friend QuadraticIrrational operator+(const QuadraticIrrational& x, const QuadraticIrrational& y);
  friend QuadraticIrrational operator-(const QuadraticIrrational& x, const QuadraticIrrational& y);
  friend QuadraticIrrational operator*(const QuadraticIrrational& x, const QuadraticIrrational& y);
  friend QuadraticIrrational operator/(const QuadraticIrrational& x, const QuadraticIrrational& y);
  QuadraticIrrational operator-() const;

  friend bool operator==(const QuadraticIrrational& x, const QuadraticIrrational& y);
  friend std::strong_ordering operator<=>(const QuadraticIrrational& x, const QuadraticIrrational& y);

  /// Value grammar: `(A+B*sqrt(D))/C`, `A/C`, `sqrt(D)`, integers.
  std::string to_string() const;
  static QuadraticIrrational parse(std::string_view text);

  /// Decimal approximation with `digits` digits after the point.
  std::string to_decimal(int digits = 12) const;
  double to_double() const;

 private:
  // Assumes d is already squarefree (or zero); only fixes signs and gcds.
  static QuadraticIrrational reduce(BigInt a, BigInt b, BigInt d, BigInt c);

  BigInt a_{0};
  BigInt b_{0};
  BigInt d_{0};
  BigInt c_{1};
};

/// Exact three-way comparison of real values.
std::strong_ordering compare(const QuadraticIrrational& x, const QuadraticIrrational& y);

/// Sign of a + b*sqrt(d) for d >= 0, decided with one squaring.
int sign_of_surd(const BigInt& a, const BigInt& b, const BigInt& d);

}  // namespace conway
