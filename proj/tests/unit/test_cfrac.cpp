#include <gtest/gtest.h>

#include <random>

#include "conway/cfrac.hpp"
#include "conway/error.hpp"
#include "oracles.hpp"

using conway::BigInt;
using conway::ContinuedFraction;
using conway::DomainError;
using conway::ParseError;
using conway::QuadraticIrrational;
using conway::Rational;
namespace cf = conway::cf;

namespace conway {
void PrintTo(const ContinuedFraction& c, std::ostream* os) { *os << c.to_string(); }
}  // namespace conway

namespace {

QuadraticIrrational qi(const char* text) { return QuadraticIrrational::parse(text); }
ContinuedFraction cfp(const char* text) { return ContinuedFraction::parse(text); }

// Digits of the periodic expansion unrolled to n terms.
std::vector<BigInt> unrolled(const ContinuedFraction& c, std::size_t n) {
  std::vector<BigInt> out = c.preperiod;
  for (std::size_t i = 0; out.size() < n && !c.period.empty(); ++i) out.push_back(c.period[i % c.period.size()]);
  out.resize(std::min(n, out.size()));
  return out;
}

}  // namespace

TEST(ExpandRational, EuclidOracle) {
  EXPECT_EQ(cf::expand(Rational(BigInt(5), BigInt(3))), cfp("[1,1,2]"));
  EXPECT_EQ(cf::expand(Rational(0)), cfp("[0]"));
  EXPECT_EQ(cf::expand(Rational(BigInt(355), BigInt(113))), cfp("[3,7,16]"));
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<long long> num(-100000, 100000), den(1, 100000);
  for (int i = 0; i < 1000; ++i) {
    const long long p = num(rng), q = den(rng);
    const auto got = cf::expand(Rational(BigInt(static_cast<long>(p)), BigInt(static_cast<long>(q))));
    const auto want = oracle::euclid_digits(p, q);
    ASSERT_EQ(got.preperiod.size(), want.size());
    for (std::size_t j = 0; j < want.size(); ++j) EXPECT_EQ(got.preperiod[j], static_cast<long>(want[j]));
    if (got.preperiod.size() > 1) EXPECT_GE(got.preperiod.back(), 2);
  }
}

TEST(ExpandQuadratic, WorkedExamples) {
  EXPECT_EQ(cf::expand(qi("(6+sqrt(2))/17")), cfp("[0,2,3;(2)]"));
  EXPECT_EQ(cf::expand(qi("(11523+sqrt(15006))/9222")), cfp("[1,3,1,4;(7,2,3,9)]"));
  EXPECT_EQ(cf::expand(qi("(1+sqrt(5))/2")), cfp("[;(1)]"));
  EXPECT_EQ(cf::expand(qi("1+sqrt(3)")), cfp("[;(2,1)]"));
  EXPECT_THROW(cf::expand(qi("5/3")), DomainError);
}

TEST(ExpandQuadratic, DigitsMatchFloatingOracle) {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 300; ++i) {
    const auto x = oracle::random_irrational(rng);
    const auto c = cf::expand(x);
    const auto want = oracle::float_digits(x, 40);
    EXPECT_EQ(unrolled(c, want.size()), want) << x.to_string();
  }
}

TEST(ExpandQuadratic, CanonicalShape) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 500; ++i) {
    const auto c = cf::expand(oracle::random_irrational(rng));
    ASSERT_FALSE(c.period.empty());
    EXPECT_EQ(c.sign, 1);
    for (std::size_t j = 1; j < c.preperiod.size(); ++j) EXPECT_GE(c.preperiod[j], 1);
    for (const auto& b : c.period) EXPECT_GE(b, 1);
    if (!c.preperiod.empty()) EXPECT_NE(c.preperiod.back(), c.period.back());
    EXPECT_EQ(cf::normalize(c), c);
  }
}

TEST(Value, KnownValues) {
  EXPECT_EQ(cf::value(cfp("[0,2,3;(2)]")), qi("(6+sqrt(2))/17"));
  EXPECT_EQ(cf::value(cfp("[1,1,2]")), qi("5/3"));
  // x = 2 + 1/(1 + 1/x) gives x^2 - 2x - 2 = 0, dominant root 1 + sqrt 3
  const auto v = cf::value(cfp("[;(2,1)]"));
  EXPECT_EQ(v, qi("1+sqrt(3)"));
  EXPECT_NEAR(oracle::to_double(v), 2.7320508075688772, 1e-12);
  EXPECT_THROW(cf::value(cfp("[3,0]")), DomainError);
}

TEST(Value, RoundTripRandom) {
  std::mt19937_64 rng(24);
  for (int i = 0; i < 1000; ++i) {
    const auto x = oracle::random_irrational(rng);
    EXPECT_EQ(cf::value(cf::expand(x)), x) << x.to_string();
  }
}

TEST(Normalize, ZeroRemoval) {
  EXPECT_EQ(cf::normalize(cfp("[0,2,0,1,1;(2)]")), cfp("[0,3,1;(2)]"));
  EXPECT_EQ(cf::normalize(cfp("[1,3,0,1,4;(3,2,7,9)]")), cfp("[1,4,4;(3,2,7,9)]"));
  EXPECT_EQ(cf::normalize(cfp("[5,0,0,7]")), cfp("[5,7]"));
  EXPECT_EQ(cf::normalize(cfp("[2,1]")), cfp("[3]"));
  EXPECT_EQ(cf::normalize(cfp("[1;(1,1)]")), cfp("[;(1)]"));
  EXPECT_EQ(cf::normalize(cfp("[2;(3,0,4)]")), cf::expand(cf::value(cfp("[2;(7)]"))));
  EXPECT_THROW(cf::normalize(cfp("[3,0]")), DomainError);
}

TEST(Normalize, PreservesValueUnderRandomZeroInsertion) {
  std::mt19937_64 rng(25);
  std::uniform_int_distribution<int> pick(0, 6);
  for (int i = 0; i < 300; ++i) {
    const auto x = oracle::random_irrational(rng);
    const auto c = cf::expand(x);
    // [.., a, b, ..] = [.., a - t, 0, t, b, ..] for any t
    ContinuedFraction noisy = c;
    noisy.preperiod = unrolled(c, c.preperiod.size() + 2 * c.period.size());
    if (noisy.preperiod.size() < 2) continue;
    const std::size_t at = 1 + static_cast<std::size_t>(pick(rng)) % (noisy.preperiod.size() - 1);
    const BigInt t = pick(rng);
    noisy.preperiod[at] -= t;
    noisy.preperiod.insert(noisy.preperiod.begin() + static_cast<std::ptrdiff_t>(at) + 1, {BigInt(0), t});
    EXPECT_EQ(cf::value(cf::normalize(noisy)), x);
    if (noisy.preperiod[at] > 0) EXPECT_EQ(cf::normalize(noisy), c);
  }
}

TEST(Negate, Identity) {
  EXPECT_EQ(cf::negate(cfp("[2,3]")), cfp("[-3,1,2]"));
  EXPECT_EQ(cf::value(cfp("[-3,1,2]")), -qi("7/3"));
  EXPECT_EQ(cf::negate(cfp("[1;(1)]")), cfp("[-2,2;(1)]"));
  EXPECT_EQ(cf::value(cfp("[-2,2;(1)]")), -qi("(1+sqrt(5))/2"));
  EXPECT_EQ(cf::negate(cf::negate(cfp("[0,2,3;(2)]"))), cfp("[0,2,3;(2)]"));
}

TEST(Negate, RandomMatchesExpansionOfNegative) {
  std::mt19937_64 rng(26);
  for (int i = 0; i < 500; ++i) {
    const auto x = oracle::random_irrational(rng);
    const auto c = cf::expand(x);
    EXPECT_EQ(cf::negate(c), cf::expand(-x)) << x.to_string();
    EXPECT_EQ(cf::negate(cf::negate(c)), c);
  }
}

TEST(Conjugate, WorkedExamples) {
  EXPECT_EQ(cf::conjugate(cfp("[0,2,3;(2)]")), cfp("[0,3,1;(2)]"));
  EXPECT_EQ(cf::conjugate(cfp("[1,3,1,4;(7,2,3,9)]")), cfp("[1,4,4;(3,2,7,9)]"));
  EXPECT_EQ(cf::conjugate(cfp("[;(1)]")), cfp("-[0;(1)]"));
  EXPECT_THROW(cf::conjugate(cfp("[1,1,2]")), DomainError);
}

TEST(Conjugate, EveryCaseAgainstExactValue) {
  // a_k < b_l, a_k > b_l, k = 0 below and above, pure periodic
  for (const char* s : {"[1,2;(5,3)]", "[1,7;(5,3)]", "[1;(2,5)]", "[9;(2,5)]", "[;(3,1,4)]", "[0;(1,2)]", "[5;(1,2)]"}) {
    const auto c = cfp(s);
    const auto conj = cf::conjugate(c);
    EXPECT_EQ(cf::value(conj), cf::value(c).conjugate()) << s << " -> " << conj.to_string();
  }
  EXPECT_EQ(cf::conjugate(cfp("[0;(1,2)]")), cfp("-[;(2,1)]"));
  EXPECT_EQ(cf::conjugate(cfp("[5;(1,2)]")), cfp("[2,3;(1,2)]"));
}

TEST(Conjugate, RandomCoherenceAndInvolution) {
  std::mt19937_64 rng(27);
  for (int i = 0; i < 1000; ++i) {
    const auto x = oracle::random_irrational(rng);
    const auto c = cf::expand(x);
    const auto conj = cf::conjugate(c);
    EXPECT_EQ(cf::to_canonical(conj), cf::expand(x.conjugate())) << x.to_string();
    // a negative value comes back as a negative presentation
    EXPECT_EQ(cf::to_canonical(cf::conjugate(conj)), c) << x.to_string();
    if (c.preperiod.empty() || c.preperiod[0] >= 0) EXPECT_EQ(cf::conjugate(conj), c) << x.to_string();
  }
}

TEST(Galois, PurePeriodicIffReduced) {
  EXPECT_TRUE(cf::is_pure_periodic(cf::expand(qi("(1+sqrt(5))/2"))));
  EXPECT_TRUE(conway::is_galois(qi("(1+sqrt(5))/2")));
  EXPECT_FALSE(cf::is_pure_periodic(cf::expand(qi("(6+sqrt(2))/17"))));
  EXPECT_FALSE(conway::is_galois(qi("(6+sqrt(2))/17")));
  EXPECT_TRUE(cf::is_pure_periodic(cf::expand(qi("1+sqrt(3)"))));
  EXPECT_TRUE(conway::is_galois(qi("1+sqrt(3)")));
  EXPECT_FALSE(conway::is_galois(qi("5/3")));
  EXPECT_FALSE(cf::is_pure_periodic(cfp("[1,1,2]")));

  std::mt19937_64 rng(28);
  for (int i = 0; i < 1000; ++i) {
    const auto x = oracle::random_irrational(rng);
    // independent check of the interval conditions from 600-bit approximations
    const bool reduced = oracle::approx_compare(x, QuadraticIrrational(1)) > 0 &&
                         oracle::approx_compare(x.conjugate(), QuadraticIrrational(-1)) > 0 &&
                         oracle::approx_compare(x.conjugate(), QuadraticIrrational(0)) < 0;
    EXPECT_EQ(cf::is_pure_periodic(cf::expand(x)), reduced) << x.to_string();
    EXPECT_EQ(conway::is_galois(x), reduced) << x.to_string();
  }
}

TEST(Text, GrammarRoundTrip) {
  for (const char* s : {"[1,3,1,4;(7,2,3,9)]", "[;(1)]", "[1,1,2]", "-[0;(1)]", "[-2,2;(1)]"}) {
    EXPECT_EQ(cfp(s).to_string(), s);
  }
  EXPECT_EQ(cfp("[0,2,3,(2)]"), cfp("[0,2,3;(2)]"));
  EXPECT_EQ(cfp(" [ 0 , 2 ; ( 2 ) ] "), cfp("[0,2;(2)]"));
  for (const char* bad : {"", "[]", "[1,,2]", "[1;()]", "[1;(2]", "(1,2)", "[a]", "[1;2]"}) {
    EXPECT_THROW(cfp(bad), ParseError) << bad;
  }
}
