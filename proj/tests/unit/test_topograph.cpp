#include <gtest/gtest.h>

#include <random>

#include "conway/cfrac.hpp"
#include "conway/error.hpp"
#include "conway/topograph.hpp"
#include "oracles.hpp"

using namespace conway;

namespace conway {
void PrintTo(const SuperbaseTriple& t, std::ostream* os) { *os << t.to_string(); }
void PrintTo(const QuadraticForm& q, std::ostream* os) { *os << q.to_string(); }
void PrintTo(const Mat2& m, std::ostream* os) { *os << m.to_string(); }
}  // namespace conway

namespace {

QuadraticForm form(long a, long h, long b) { return {a, h, b}; }
QuadraticIrrational qi(const char* s) { return QuadraticIrrational::parse(s); }

Mat2 word_matrix(const TurnWord& w) {
  Mat2 m;
  for (Turn t : w) m = m * (t == Turn::L ? Mat2::left() : Mat2::right());
  return m;
}

// Direct 3x3 product of the hat matrix with a coefficient vector.
std::array<BigInt, 3> mul(const Mat3& m, const std::array<BigInt, 3>& v) {
  std::array<BigInt, 3> out;
  for (int i = 0; i < 3; ++i) out[static_cast<std::size_t>(i)] = m(i, 0) * v[0] + m(i, 1) * v[1] + m(i, 2) * v[2];
  return out;
}

}  // namespace

TEST(FormValues, Examples) {
  EXPECT_EQ(form_values(form(1, 0, 1)), (SuperbaseTriple{1, 1, 2}));
  EXPECT_EQ(form_values(form(1, -2, -2)), (SuperbaseTriple{1, -2, -3}));
  EXPECT_EQ(form_values(form(17, -12, 2)), (SuperbaseTriple{17, 2, 7}));
}

TEST(Step, ArithmeticProgressionRule) {
  const SuperbaseTriple t{1, 1, 2};
  EXPECT_EQ(step(t, Turn::L), (SuperbaseTriple{1, 2, 5}));
  EXPECT_EQ(step(t, Turn::R), (SuperbaseTriple{2, 1, 5}));
  TopographCursor cur(form(1, 0, 1));
  cur.advance(Turn::L);
  EXPECT_EQ(cur.basis(), Mat2::left());
  EXPECT_EQ(cur.triple(), (SuperbaseTriple{1, 2, 5}));
}

TEST(Step, MatchesLatticeEvaluation) {
  std::mt19937_64 rng(31);
  const QuadraticForm fig = form(17, -12, 2);
  for (int i = 0; i < 100; ++i) {
    const QuadraticForm q = i == 0 ? fig : oracle::random_form(rng, 50);
    TopographCursor cur(q);
    for (Turn t : oracle::random_word(rng, 30)) {
      cur.advance(t);
      ASSERT_EQ(cur.triple(), oracle::lattice_triple(q, cur.basis()));
      ASSERT_EQ(cur.basis().det(), 1);
      ASSERT_EQ(markov_discriminant(cur.triple()), q.discriminant());
    }
  }
}

TEST(Step, ParallelogramIdentity) {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 100; ++i) {
    const QuadraticForm q = oracle::random_form(rng, 40);
    const Mat2 m = word_matrix(oracle::random_word(rng, 12));
    const BigInt lhs = q(m.p + m.q, m.r + m.s) + q(m.p - m.q, m.r - m.s);
    EXPECT_EQ(lhs, 2 * (q(m.p, m.r) + q(m.q, m.s)));
  }
}

TEST(Walk, FibonacciPathOnSumOfSquares) {
  // The path of the golden ratio alternates turns; the new face after each
  // pair of turns carries every second Fibonacci number.
  TurnWord w = turns_from_digits({1, 1, 1, 1, 1, 1, 1, 1});
  const auto triples = walk(form(1, 0, 1), w);
  ASSERT_EQ(triples.size(), w.size() + 1);
  EXPECT_EQ(triples.front(), (SuperbaseTriple{1, 1, 2}));
  std::vector<BigInt> faces;
  for (const auto& t : triples) faces.push_back(t.c);
  EXPECT_EQ(faces, (std::vector<BigInt>{2, 5, 13, 34, 89, 233, 610, 1597, 4181}));
  EXPECT_EQ(walk(form(3, 1, 4), {}).size(), 1u);
}

TEST(Turns, DigitsAndText) {
  EXPECT_EQ(to_string(turns_from_digits({1, 1, 2})), "LRLL");
  EXPECT_EQ(to_string(turns_from_digits({0, 2, 3})), "RRLLL");
  EXPECT_EQ(to_string(turns_from_digits({2, 0, 1})), "LLL");
  EXPECT_EQ(parse_turns("L,R R"), parse_turns("LRR"));
  EXPECT_TRUE(parse_turns("").empty());
  EXPECT_THROW(parse_turns("LXR"), ParseError);
  EXPECT_EQ(period_turns({2, 1}, 0).size(), 3u);
  EXPECT_EQ(period_turns({1}, 0).size(), 2u);
  EXPECT_EQ(to_string(period_turns({1}, 0)), "LR");
  EXPECT_EQ(to_string(period_turns({1}, 1)), "RL");
}

TEST(Transform, Examples) {
  EXPECT_EQ(transform_form(form(3, -1, 7), Mat2::identity()), form(3, -1, 7));
  EXPECT_EQ(transform_form(form(1, 0, 1), Mat2::left()), form(1, 2, 2));
  EXPECT_THROW(transform_form(form(1, 0, 1), Mat2{2, 0, 0, 1}), DomainError);
  std::mt19937_64 rng(33);
  for (int i = 0; i < 100; ++i) {
    const QuadraticForm q = oracle::random_form(rng, 30);
    const Mat2 a = word_matrix(oracle::random_word(rng, 10));
    const QuadraticForm t = transform_form(q, a);
    EXPECT_EQ(t.discriminant(), q.discriminant());
    // Q o A evaluated at (x, y) is Q at A (x, y)
    EXPECT_EQ(t(3, -2), q(3 * a.p - 2 * a.q, 3 * a.r - 2 * a.s));
  }
}

TEST(Hat, ActsOnDoubledCoefficients) {
  EXPECT_EQ(hat_matrix(Mat2::identity()), Mat3::identity());
  EXPECT_THROW(hat_matrix(Mat2{1, 1, 1, 1}), DomainError);
  std::mt19937_64 rng(34);
  for (int i = 0; i < 100; ++i) {
    const QuadraticForm q = oracle::random_form(rng, 30);
    for (const Mat2& a : {Mat2::left(), Mat2::right(), word_matrix(oracle::random_word(rng, 8))}) {
      EXPECT_EQ(mul(hat_matrix(a), doubled_coefficients(q)), doubled_coefficients(transform_form(q, a)));
    }
  }
}

TEST(Hat, RightActionAndTrace) {
  std::mt19937_64 rng(35);
  for (int i = 0; i < 100; ++i) {
    const Mat2 a = word_matrix(oracle::random_word(rng, 6));
    const Mat2 b = word_matrix(oracle::random_word(rng, 6));
    EXPECT_EQ(hat_matrix(a * b), hat_matrix(b) * hat_matrix(a));
    // eigenvalues lambda^2, 1, lambda^-2 give trace (lambda + 1/lambda)^2 - 1
    EXPECT_EQ(hat_matrix(a).trace(), a.trace() * a.trace() - 1);
  }
  EXPECT_EQ(hat_matrix(Mat2::left() * Mat2::right()).trace(), 8);
}

TEST(Vieta, FlipsAndInvariance) {
  EXPECT_EQ(vieta_flip({1, 1, 2}, TriplePosition::C), (SuperbaseTriple{1, 1, 2}));
  EXPECT_EQ(vieta_flip({1, -1, -1}, TriplePosition::C), (SuperbaseTriple{1, -1, 1}));
  EXPECT_EQ(vieta_flip({1, 2, 5}, TriplePosition::A), (SuperbaseTriple{13, 2, 5}));
  EXPECT_EQ(markov_discriminant({1, 1, 2}), -4);
  EXPECT_EQ(markov_discriminant({1, -1, -1}), 5);
  EXPECT_EQ(markov_discriminant({0, 0, 0}), 0);
  std::mt19937_64 rng(36);
  std::uniform_int_distribution<long> dist(-1000, 1000);
  for (int i = 0; i < 1000; ++i) {
    const SuperbaseTriple t{dist(rng), dist(rng), dist(rng)};
    for (auto pos : {TriplePosition::A, TriplePosition::B, TriplePosition::C}) {
      const auto f = vieta_flip(t, pos);
      EXPECT_EQ(markov_discriminant(f), markov_discriminant(t));
      EXPECT_EQ(vieta_flip(f, pos), t);
    }
    EXPECT_EQ(markov_discriminant(t), t.h() * t.h() - 4 * t.a * t.b);
  }
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify(form(1, 0, 1)), FormClass::PositiveDefinite);
  EXPECT_EQ(classify(form(-1, 1, -1)), FormClass::NegativeDefinite);
  EXPECT_EQ(classify(form(1, -2, -2)), FormClass::IndefiniteAnisotropic);
  EXPECT_EQ(classify(form(2, -1, -3)), FormClass::IndefiniteIsotropic);
  EXPECT_EQ(classify(form(0, 1, 0)), FormClass::IndefiniteIsotropic);
  EXPECT_EQ(classify(form(1, 2, 1)), FormClass::Semidefinite);
  EXPECT_EQ(classify(form(1, 0, 0)), FormClass::Semidefinite);
  EXPECT_EQ(classify(form(0, 0, 0)), FormClass::Semidefinite);
  EXPECT_EQ(classify(form(0, 0, -3)), FormClass::Semidefinite);
}

TEST(Roots, Examples) {
  auto r = roots(form(1, -2, -2));
  EXPECT_EQ(*r.dominant, qi("1+sqrt(3)"));
  EXPECT_EQ(*r.conjugate, qi("1-sqrt(3)"));
  r = roots(form(17, -12, 2));
  EXPECT_EQ(*r.dominant, qi("(6+sqrt(2))/17"));
  EXPECT_EQ(*r.conjugate, qi("(6-sqrt(2))/17"));
  r = roots(form(2, -1, -3));
  EXPECT_EQ(*r.dominant, qi("3/2"));
  EXPECT_EQ(*r.conjugate, qi("-1"));
  r = roots(form(0, 2, -3));
  EXPECT_FALSE(r.dominant.has_value());
  EXPECT_EQ(*r.conjugate, qi("3/2"));
  EXPECT_THROW(roots(form(1, 0, 1)), DomainError);
  EXPECT_THROW(roots(form(0, 0, 0)), DomainError);
}

TEST(Roots, SubstitutionOracle) {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 200; ++i) {
    const QuadraticForm q = oracle::random_anisotropic(rng, 40);
    const auto r = roots(q);
    for (const auto& x : {*r.dominant, *r.conjugate}) {
      EXPECT_EQ(QuadraticIrrational(q.a) * x * x + QuadraticIrrational(q.h) * x + QuadraticIrrational(q.b),
                QuadraticIrrational(0));
    }
    EXPECT_GE(oracle::approx_compare(*r.dominant * *r.dominant, *r.conjugate * *r.conjugate), 0);
  }
}

TEST(GaloisForm, ExamplesAndCoherence) {
  EXPECT_TRUE(is_galois_form(form(1, -1, -1)));
  EXPECT_FALSE(is_galois_form(form(1, 0, 1)));
  EXPECT_TRUE(is_galois_form(form(1, -2, -2)));
  EXPECT_FALSE(is_galois_form(form(17, -12, 2)));
  std::mt19937_64 rng(38);
  int galois = 0;
  for (int i = 0; i < 200; ++i) {
    // small coefficients make reduced forms common enough to matter
    const QuadraticForm q = oracle::random_anisotropic(rng, i < 100 ? 4 : 30);
    const bool expected = cf::is_pure_periodic(cf::expand(*roots(q).dominant));
    EXPECT_EQ(is_galois_form(q), expected) << q.to_string();
    galois += expected;
  }
  EXPECT_GT(galois, 5);
}

TEST(River, GoldenAndSquareRootThree) {
  const auto river = find_river(form(1, -2, -2));
  EXPECT_TRUE(river.entry_path.empty());
  EXPECT_FALSE(river.reflected);
  EXPECT_EQ(river.river_period.size(), 3u);
  EXPECT_EQ(river.period_states.size(), 3u);
  EXPECT_EQ(river.dominant_root, qi("1+sqrt(3)"));
  EXPECT_EQ(river.path_expansion, ContinuedFraction::parse("[;(2,1)]"));
  for (const auto& e : river.period_states) {
    EXPECT_GT(e.positive, 0);
    EXPECT_LT(e.negative, 0);
  }
  EXPECT_TRUE(same_river_cycle(river.period_states, trace_river_by_signs(form(1, -2, -2))));
}

TEST(River, EntryPathFromExpansion) {
  const auto river = find_river(form(17, -12, 2));
  EXPECT_EQ(river.path_expansion, ContinuedFraction::parse("[0,2,3;(2)]"));
  EXPECT_EQ(river.entry_digits, (std::vector<BigInt>{0, 2, 0}));
  EXPECT_EQ(river.entry_path.size(), 2u);
  EXPECT_EQ(to_string(river.entry_path), "RR");
  // a one-digit period gives two turns once the parity realigns
  EXPECT_EQ(river.river_period.size(), 4u);
  const auto landing = walk(form(17, -12, 2), river.entry_path).back();
  EXPECT_EQ(landing, river.landing);
  EXPECT_TRUE(same_river_cycle(river.period_states, trace_river_by_signs(form(17, -12, 2))));
}

TEST(River, RejectsOtherClasses) {
  EXPECT_THROW(find_river(form(1, 0, 1)), DomainError);
  EXPECT_THROW(find_river(form(2, -1, -3)), DomainError);
  EXPECT_THROW(find_river(form(1, 2, 1)), DomainError);
}

TEST(River, RandomFormsAgreeWithSignOracle) {
  std::mt19937_64 rng(39);
  for (int i = 0; i < 50; ++i) {
    const QuadraticForm q = oracle::random_anisotropic(rng, 30);
    const auto river = find_river(q);
    ASSERT_EQ(river.period_states.size(), river.river_period.size());
    EXPECT_TRUE(same_river_cycle(river.period_states, trace_river_by_signs(q))) << q.to_string();
    // walking one more period from the landing reproduces the states exactly
    const QuadraticForm walked = river.reflected ? QuadraticForm{q.a, -q.h, q.b} : q;
    TurnWord path = river.entry_path;
    SuperbaseTriple t = walk(walked, path).back();
    EXPECT_EQ(t, river.landing);
    EXPECT_FALSE(sgn(t.a) == sgn(t.b) && sgn(t.b) == sgn(t.c));  // mixed signs
    for (const auto& e : river.period_states) {
      EXPECT_GT(e.positive, 0);
      EXPECT_LT(e.negative, 0);
      EXPECT_EQ(e.positive * e.positive + e.negative * e.negative + e.behind * e.behind -
                    2 * (e.positive * e.negative + e.positive * e.behind + e.negative * e.behind),
                q.discriminant());
    }
  }
}

TEST(River, SameCycleIsRotationReversalAndRepetition) {
  const std::vector<RiverEdge> cyc{{1, -2, 3}, {4, -5, 6}, {7, -8, 9}};
  std::vector<RiverEdge> rot{cyc[1], cyc[2], cyc[0]};
  EXPECT_TRUE(same_river_cycle(cyc, rot));
  std::vector<RiverEdge> twice = cyc;
  twice.insert(twice.end(), cyc.begin(), cyc.end());
  EXPECT_TRUE(same_river_cycle(cyc, twice));
  std::vector<RiverEdge> back{cyc[2].reversed(), cyc[1].reversed(), cyc[0].reversed()};
  EXPECT_TRUE(same_river_cycle(cyc, back));
  std::vector<RiverEdge> other{cyc[0], cyc[2], cyc[1]};
  EXPECT_FALSE(same_river_cycle(cyc, other));
}

TEST(Lakes, FiniteRiverBetweenLakes) {
  const auto lakes = find_lakes(form(2, -1, -3));
  EXPECT_EQ(lakes.m, 5);
  EXPECT_EQ(lakes.n, 3);
  EXPECT_EQ(lakes.reduced, form(0, 5, -3));
  EXPECT_EQ(to_string(lakes.river_word), "RLRR");
  EXPECT_EQ(transform_form(form(2, -1, -3), lakes.reduction), lakes.reduced);
}

TEST(Lakes, AdjacentLakes) {
  const auto lakes = find_lakes(form(0, 1, 0));
  EXPECT_EQ(lakes.n, 0);
  EXPECT_TRUE(lakes.river_word.empty());
  EXPECT_THROW(find_lakes(form(1, -2, -2)), DomainError);
}

TEST(Lakes, RandomIsotropicForms) {
  std::mt19937_64 rng(40);
  std::uniform_int_distribution<long> dist(-12, 12);
  int done = 0;
  while (done < 100) {
    // (p x + q y)(r x + s y) with independent factors
    const long p = dist(rng), q = dist(rng), r = dist(rng), s = dist(rng);
    if (p * s - q * r == 0) continue;
    const QuadraticForm f = form(p * r, p * s + q * r, q * s);
    ++done;
    const auto lakes = find_lakes(f);
    for (const auto& [x, y] : lakes.zero_vectors) {
      EXPECT_EQ(f(x, y), 0) << f.to_string();
      BigInt g;
      mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
      EXPECT_EQ(g, 1);
    }
    EXPECT_EQ(lakes.reduction.det(), 1);
    EXPECT_EQ(transform_form(f, lakes.reduction), lakes.reduced);
    EXPECT_EQ(lakes.reduced.a, 0);
    EXPECT_EQ(lakes.reduced.h, lakes.m);
    EXPECT_EQ(lakes.reduced.b, -lakes.n);
    EXPECT_GT(lakes.m, 0);
    EXPECT_GE(lakes.n, 0);
    EXPECT_LT(lakes.n, lakes.m);
    EXPECT_EQ(lakes.m * lakes.m, f.discriminant());
    if (lakes.n != 0) {
      EXPECT_EQ(lakes.river_word, turns_from_digits(cf::expand(Rational(lakes.n, lakes.m)).preperiod));
    }
  }
}

TEST(Climbing, MaxEntryGrowsOncePositive) {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<long> dist(1, 50);
  for (int i = 0; i < 1000; ++i) {
    SuperbaseTriple t{dist(rng), dist(rng), 0};
    t.c = t.a + t.b + dist(rng);  // h >= 1
    BigInt top = std::max({t.a, t.b, t.c});
    for (Turn turn : oracle::random_word(rng, 40)) {
      t = step(t, turn);
      const BigInt next = std::max({t.a, t.b, t.c});
      ASSERT_GT(next, top);
      ASSERT_GE(t.h(), 1);
      top = next;
    }
  }
}

TEST(FormText, ParseAndPrint) {
  EXPECT_EQ(QuadraticForm::parse("1,-2,-2"), form(1, -2, -2));
  EXPECT_EQ(QuadraticForm::parse("x^2-2*x*y-2*y^2"), form(1, -2, -2));
  EXPECT_EQ(QuadraticForm::parse("17x^2 - 12xy + 2y^2"), form(17, -12, 2));
  EXPECT_EQ(QuadraticForm::parse("xy"), form(0, 1, 0));
  std::mt19937_64 rng(42);
  for (int i = 0; i < 200; ++i) {
    const auto q = oracle::random_form(rng, 20);
    EXPECT_EQ(QuadraticForm::parse(q.to_string()), q) << q.to_string();
  }
  for (const char* bad : {"", "1,2", "1,2,3,4", "x^3", "z^2", "1,a,3"}) {
    EXPECT_THROW(QuadraticForm::parse(bad), ParseError) << bad;
  }
}
