#include <algorithm>
#include "conway/exact.hpp"

#include <cctype>
#include <cstdint>
#include <vector>

#include <mpfr.h>

#include "conway/error.hpp"

namespace conway {

namespace {

constexpr std::uint32_t kTrialLimit = 1u << 20;

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kTrialLimit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= kTrialLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t{i} * i; j <= kTrialLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

// Products of consecutive runs of small primes, so a gcd can rule out many
// trial divisors at once.
constexpr std::size_t kPrimeBlock = 256;

const std::vector<BigInt>& prime_block_products() {
  static const std::vector<BigInt> products = [] {
    const auto& primes = small_primes();
    std::vector<BigInt> out;
    for (std::size_t i = 0; i < primes.size(); i += kPrimeBlock) {
      BigInt prod = 1;
      for (std::size_t j = i; j < std::min(primes.size(), i + kPrimeBlock); ++j) prod *= primes[j];
      out.push_back(prod);
    }
    return out;
  }();
  return products;
}

// Product of every small prime outside the first block.
const BigInt& large_small_primorial() {
  static const BigInt product = [] {
    std::vector<BigInt> level(prime_block_products().begin() + 1, prime_block_products().end());
    while (level.size() > 1) {
      std::vector<BigInt> next;
      for (std::size_t i = 0; i < level.size(); i += 2) next.push_back(i + 1 < level.size() ? BigInt(level[i] * level[i + 1]) : level[i]);
      level = std::move(next);
    }
    return level.front();
  }();
  return product;
}

BigInt gcd3(const BigInt& x, const BigInt& y, const BigInt& z) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
  return g;
}

// Sign of a + b*sqrt(d1) + c*sqrt(d2): split as u + v with u = a + b*sqrt(d1)
// and v = c*sqrt(d2); when they disagree compare u^2 with v^2.
int sign_of_two_surds(const BigInt& a, const BigInt& b, const BigInt& d1, const BigInt& c, const BigInt& d2) {
  const int su = sign_of_surd(a, b, d1);
  const int sv = (d2 == 0) ? 0 : sgn(c);
  if (sv == 0) return su;
  if (su == 0) return sv;
  if (su == sv) return su;
  // u^2 - v^2 = (a^2 + b^2 d1 - c^2 d2) + 2ab sqrt(d1)
  const int diff = sign_of_surd(BigInt(a * a + b * b * d1 - c * c * d2), BigInt(2 * a * b), d1);
  if (diff == 0) return 0;
  return diff > 0 ? su : sv;
}

}  // namespace

// ---------------------------------------------------------------------------
// Rational

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational operator/(const Rational& x, const Rational& y) {
  if (y.value_ == 0) throw DivisionByZero("division of rational by zero");
  return Rational(mpq_class(x.value_ / y.value_));
}

std::string Rational::to_string() const {
  if (is_integer()) return num().get_str();
  return num().get_str() + "/" + den().get_str();
}

// ---------------------------------------------------------------------------
// integer helpers

BigInt isqrt(const BigInt& n) {
  if (n < 0) throw DomainError("isqrt of a negative integer");
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_perfect_square(const BigInt& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

std::pair<BigInt, BigInt> split_square_factor(const BigInt& n) {
  if (n <= 0) throw DomainError("split_square_factor expects a positive integer");
  if (is_perfect_square(n)) return {isqrt(n), BigInt(1)};

  BigInt rest = n;
  BigInt square_root_part = 1;
  BigInt kernel = 1;
  const auto take = [&](std::uint32_t p) {
    unsigned exponent = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p) != 0) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++exponent;
    }
    for (unsigned i = 0; i < exponent / 2; ++i) square_root_part *= p;
    if (exponent % 2 == 1) kernel *= p;
  };

  const auto& primes = small_primes();
  const auto& blocks = prime_block_products();
  // Plain trial division over the first block. Once p^3 exceeds the
  // cofactor it has at most two prime factors, all > p.
  bool done = false;
  for (std::size_t j = 0; j < kPrimeBlock && !done; ++j) {
    const std::uint32_t p = primes[j];
    if (BigInt(p) * p * p > rest) done = true;
    else take(p);
  }
  if (!done && rest != 1) {
    // g: product of the distinct larger small primes dividing the cofactor
    BigInt g;
    mpz_mod(g.get_mpz_t(), large_small_primorial().get_mpz_t(), rest.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), rest.get_mpz_t());
    BigInt hit;
    for (std::size_t blk = 1; blk < blocks.size() && g != 1; ++blk) {
      mpz_gcd(hit.get_mpz_t(), g.get_mpz_t(), blocks[blk].get_mpz_t());
      const std::size_t end = std::min(primes.size(), (blk + 1) * kPrimeBlock);
      for (std::size_t j = blk * kPrimeBlock; j < end && hit != 1; ++j) {
        const std::uint32_t p = primes[j];
        if (mpz_divisible_ui_p(hit.get_mpz_t(), p) == 0) continue;
        mpz_divexact_ui(hit.get_mpz_t(), hit.get_mpz_t(), p);
        mpz_divexact_ui(g.get_mpz_t(), g.get_mpz_t(), p);
        take(p);
      }
    }
  }
  if (rest > 1 && is_perfect_square(rest)) {
    square_root_part *= isqrt(rest);
    rest = 1;
  }
  kernel *= rest;
  return {square_root_part, kernel};
}

int sign_of_surd(const BigInt& a, const BigInt& b, const BigInt& d) {
  const int sa = sgn(a);
  const int sb = (d == 0) ? 0 : sgn(b);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  const int c = cmp(BigInt(a * a), BigInt(b * b * d));
  if (c == 0) return 0;
  return c > 0 ? sa : sb;
}

// ---------------------------------------------------------------------------
// QuadraticIrrational

QuadraticIrrational QuadraticIrrational::reduce(BigInt a, BigInt b, BigInt d, BigInt c) {
  if (c == 0) throw DivisionByZero("quadratic irrational with zero denominator");
  if (b == 0 || d == 0) {
    b = 0;
    d = 0;
  }
  if (c < 0) {
    a = -a;
    b = -b;
    c = -c;
  }
  const BigInt g = gcd3(a, b, c);
  if (g > 1) {
    mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(b.get_mpz_t(), b.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  }
  QuadraticIrrational x;
  x.a_ = std::move(a);
  x.b_ = std::move(b);
  x.d_ = std::move(d);
  x.c_ = std::move(c);
  return x;
}

QuadraticIrrational QuadraticIrrational::normalize(BigInt a, BigInt b, BigInt d, BigInt c) {
  if (c == 0) throw DivisionByZero("quadratic irrational with zero denominator");
  if (d < 0) throw DomainError("negative radicand " + d.get_str() + ": complex values are unsupported");
  if (b == 0 || d == 0) return reduce(std::move(a), 0, 0, std::move(c));
  auto [root, kernel] = split_square_factor(d);
  b *= root;
  if (kernel == 1) return reduce(a + b, 0, 0, std::move(c));
  return reduce(std::move(a), std::move(b), std::move(kernel), std::move(c));
}

QuadraticIrrational QuadraticIrrational::sqrt(const Rational& q) {
  if (q.sign() < 0) throw DomainError("sqrt of a negative value");
  // sqrt(p/r) = sqrt(p*r)/r
  return normalize(0, 1, q.num() * q.den(), q.den());
}

Rational QuadraticIrrational::to_rational() const {
  if (!is_rational()) throw DomainError(to_string() + " is irrational");
  return Rational(a_, c_);
}

int QuadraticIrrational::sign() const { return sign_of_surd(a_, b_, d_); }

QuadraticIrrational QuadraticIrrational::conjugate() const {
  QuadraticIrrational x = *this;
  x.b_ = -x.b_;
  return x;
}

BigInt QuadraticIrrational::floor() const {
  BigInt numerator_floor = a_;
  if (b_ != 0) {
    // d is squarefree > 1 so b*sqrt(d) is never an integer.
    const BigInt s = isqrt(BigInt(b_ * b_ * d_));
    numerator_floor += (b_ > 0) ? s : BigInt(-s - 1);
  }
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), numerator_floor.get_mpz_t(), c_.get_mpz_t());
  return q;
}

QuadraticIrrational QuadraticIrrational::reciprocal() const {
  // c / (a + b sqrt d) = c (a - b sqrt d) / (a^2 - b^2 d)
  const BigInt norm = a_ * a_ - b_ * b_ * d_;
  if (norm == 0) throw DivisionByZero("reciprocal of zero");
  return reduce(a_ * c_, -b_ * c_, d_, norm);
}

QuadraticIrrational QuadraticIrrational::recip_shift(const BigInt& n) const {
  QuadraticIrrational shifted = reduce(a_ - n * c_, b_, d_, c_);
  if (shifted.a_ == 0 && shifted.b_ == 0) {
    throw DivisionByZero("recip_shift: " + to_string() + " equals " + n.get_str());
  }
  return shifted.reciprocal();
}

namespace {

// Common radicand of two canonical values, or throws when both are irrational
// over different fields.
BigInt common_radicand(const QuadraticIrrational& x, const QuadraticIrrational& y) {
  if (x.is_rational()) return y.d();
  if (y.is_rational()) return x.d();
  if (x.d() != y.d()) {
    throw DomainError("values " + x.to_string() + " and " + y.to_string() + " lie in different quadratic fields");
  }
  return x.d();
}

}  // namespace

QuadraticIrrational operator+(const QuadraticIrrational& x, const QuadraticIrrational& y) {
  const BigInt d = common_radicand(x, y);
  return QuadraticIrrational::reduce(x.a_ * y.c_ + y.a_ * x.c_, x.b_ * y.c_ + y.b_ * x.c_, d, x.c_ * y.c_);
}

QuadraticIrrational operator-(const QuadraticIrrational& x, const QuadraticIrrational& y) { return x + (-y); }

QuadraticIrrational operator*(const QuadraticIrrational& x, const QuadraticIrrational& y) {
  const BigInt d = common_radicand(x, y);
  return QuadraticIrrational::reduce(x.a_ * y.a_ + x.b_ * y.b_ * d, x.a_ * y.b_ + x.b_ * y.a_, d, x.c_ * y.c_);
}

QuadraticIrrational operator/(const QuadraticIrrational& x, const QuadraticIrrational& y) {
  return x * y.reciprocal();
}

QuadraticIrrational QuadraticIrrational::operator-() const {
  QuadraticIrrational x = *this;
  x.a_ = -x.a_;
  x.b_ = -x.b_;
  return x;
}

bool operator==(const QuadraticIrrational& x, const QuadraticIrrational& y) {
  if (x.a_ == y.a_ && x.b_ == y.b_ && x.d_ == y.d_ && x.c_ == y.c_) return true;
  // Canonical forms over the same radicand are unique; only radicands whose
  // square part escaped trial division can disagree field-wise.
  if (x.is_rational() || y.is_rational() || x.d_ == y.d_) return false;
  return compare(x, y) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const QuadraticIrrational& x, const QuadraticIrrational& y) { return compare(x, y); }

std::strong_ordering compare(const QuadraticIrrational& x, const QuadraticIrrational& y) {
  // sign of x - y = sign of (x.a y.c - y.a x.c) + x.b y.c sqrt(x.d) - y.b x.c sqrt(y.d)
  const BigInt rational_part = x.a() * y.c() - y.a() * x.c();
  int s;
  if (x.is_rational() || y.is_rational() || x.d() == y.d()) {
    const BigInt d = x.is_rational() ? y.d() : x.d();
    s = sign_of_surd(rational_part, BigInt(x.b() * y.c() - y.b() * x.c()), d);
  } else {
    s = sign_of_two_surds(rational_part, BigInt(x.b() * y.c()), x.d(), BigInt(-y.b() * x.c()), y.d());
  }
  return s <=> 0;
}

std::string QuadraticIrrational::to_string() const {
  if (is_rational()) return Rational(a_, c_).to_string();
  std::string surd = (abs(b_) == 1) ? std::string() : BigInt(abs(b_)).get_str() + "*";
  surd += "sqrt(" + d_.get_str() + ")";
  std::string numerator;
  if (a_ == 0) {
    numerator = (b_ < 0 ? "-" : "") + surd;
    if (c_ == 1) return numerator;
  } else {
    numerator = a_.get_str() + (b_ < 0 ? "-" : "+") + surd;
  }
  std::string out = "(" + numerator + ")";
  if (c_ != 1) out += "/" + c_.get_str();
  return out;
}

std::string QuadraticIrrational::to_decimal(int digits) const {
  if (digits < 0) digits = 0;
  const mpfr_prec_t prec = static_cast<mpfr_prec_t>(digits * 3.33) + 64 + static_cast<mpfr_prec_t>(mpz_sizeinbase(a_.get_mpz_t(), 2) + mpz_sizeinbase(c_.get_mpz_t(), 2));
  mpfr_t value, tmp;
  mpfr_inits2(prec, value, tmp, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_z(value, d_.get_mpz_t(), MPFR_RNDN);
  mpfr_sqrt(value, value, MPFR_RNDN);
  mpfr_mul_z(value, value, b_.get_mpz_t(), MPFR_RNDN);
  mpfr_set_z(tmp, a_.get_mpz_t(), MPFR_RNDN);
  mpfr_add(value, value, tmp, MPFR_RNDN);
  mpfr_div_z(value, value, c_.get_mpz_t(), MPFR_RNDN);
  char* buffer = nullptr;
  mpfr_asprintf(&buffer, "%.*Rf", digits, value);
  std::string out(buffer);
  mpfr_free_str(buffer);
  mpfr_clears(value, tmp, static_cast<mpfr_ptr>(nullptr));
  return out;
}

double QuadraticIrrational::to_double() const { return std::stod(to_decimal(20)); }

// ---------------------------------------------------------------------------
// value grammar
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | primary
//   primary := integer | 'sqrt' '(' expr ')' | '(' expr ')'

namespace {

class ValueParser {
 public:
  explicit ValueParser(std::string_view text) : text_(text) {}

  QuadraticIrrational parse() {
    skip_space();
    if (pos_ == text_.size()) throw ParseError("empty value");
    QuadraticIrrational v = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("cannot parse value '" + std::string(text_) + "' at offset " + std::to_string(pos_) + ": " + why);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char ch) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  QuadraticIrrational expr() {
    QuadraticIrrational v = term();
    for (;;) {
      if (accept('+')) {
        v = v + term();
      } else if (accept('-')) {
        v = v - term();
      } else {
        return v;
      }
    }
  }

  QuadraticIrrational term() {
    QuadraticIrrational v = unary();
    for (;;) {
      if (accept('*')) {
        v = v * unary();
      } else if (accept('/')) {
        QuadraticIrrational divisor = unary();
        if (divisor.sign() == 0) throw DivisionByZero("division by zero in '" + std::string(text_) + "'");
        v = v / divisor;
      } else {
        return v;
      }
    }
  }

  QuadraticIrrational unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return primary();
  }

  QuadraticIrrational primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (accept('(')) {
      QuadraticIrrational v = expr();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    if (text_.substr(pos_, 4) == "sqrt") {
      pos_ += 4;
      if (!accept('(')) fail("expected '(' after sqrt");
      QuadraticIrrational arg = expr();
      if (!accept(')')) fail("expected ')'");
      if (!arg.is_rational()) fail("nested radicals are unsupported");
      return QuadraticIrrational::sqrt(arg.to_rational());
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return QuadraticIrrational(BigInt(std::string(text_.substr(start, pos_ - start))));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

QuadraticIrrational QuadraticIrrational::parse(std::string_view text) { return ValueParser(text).parse(); }

}  // namespace conway
