#include "conway/lyapunov.hpp"

#include <algorithm>
#include <cctype>

#include <mpfr.h>

#include "conway/error.hpp"

namespace conway {

namespace {

constexpr mpfr_prec_t kLogBits = 256;

// RAII wrapper over an mpfr_t at kLogBits.
class Real {
 public:
  Real() { mpfr_init2(v_, kLogBits); }
  Real(const Real&) = delete;
  Real& operator=(const Real&) = delete;
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  void set_log(const BigInt& x) {
    mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN);
    mpfr_log(v_, v_, MPFR_RNDN);
  }

  // (A + B sqrt(D)) / C
  void set(const QuadraticIrrational& x) {
    Real root;
    mpfr_set_z(root.get(), x.d().get_mpz_t(), MPFR_RNDN);
    mpfr_sqrt(root.get(), root.get(), MPFR_RNDN);
    mpfr_mul_z(root.get(), root.get(), x.b().get_mpz_t(), MPFR_RNDN);
    mpfr_add_z(v_, root.get(), x.a().get_mpz_t(), MPFR_RNDN);
    mpfr_div_z(v_, v_, x.c().get_mpz_t(), MPFR_RNDN);
  }

  std::string decimal(int digits) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rf", std::max(digits, 0), v_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
  }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

 private:
  mpfr_t v_;
};

BigInt max_abs(const BigInt& x, const BigInt& y, const BigInt& z) { return std::max({abs(x), abs(y), abs(z)}); }

void compute_log_ratio(Real& out, const BigInt& x, const BigInt& divisor) {
  if (x <= 0) throw DomainError("logarithm of the non-positive value " + x.get_str());
  if (divisor == 0) throw DivisionByZero("log ratio with zero divisor");
  out.set_log(x);
  mpfr_div_z(out.get(), out.get(), divisor.get_mpz_t(), MPFR_RNDN);
}

void finish_series(GrowthSeries& s) {
  if (s.points.empty()) return;
  const std::size_t tail = std::max<std::size_t>(1, s.points.size() / 10);
  s.tail_max = s.points[s.points.size() - tail].log_ratio;
  for (std::size_t i = s.points.size() - tail; i < s.points.size(); ++i) s.tail_max = std::max(s.tail_max, s.points[i].log_ratio);
}

Mat2 word_product(const TurnWord& word) {
  Mat2 out;
  for (Turn t : word) out = out * (t == Turn::L ? Mat2::left() : Mat2::right());
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

PathSpec PathSpec::from_value(const QuadraticIrrational& xi) {
  if (xi.sign() < 0) {
    throw DomainError("negative xi = " + xi.to_string() +
                      " is not a path; Lambda is reflection invariant, use -xi (the mirrored path)");
  }
  PathSpec out;
  if (xi.sign() == 0) {
    out.cycle_ = {Turn::R};
    out.label_ = "0";
    return out;
  }
  out = from_expansion(cf::expand_any(xi));
  out.label_ = xi.to_string();
  return out;
}

PathSpec PathSpec::from_expansion(const ContinuedFraction& input) {
  const ContinuedFraction cf = cf::to_canonical(input);
  if (!cf.preperiod.empty() && cf.preperiod[0] < 0) {
    throw DomainError("expansion " + input.to_string() +
                      " is negative; Lambda is reflection invariant, use the negated value (the mirrored path)");
  }
  PathSpec out;
  out.label_ = cf.to_string();
  if (!cf.is_periodic() && cf.preperiod.size() == 1 && cf.preperiod[0] == 0) {
    out.cycle_ = {Turn::R};
    return out;
  }
  out.head_ = turns_from_digits(cf.preperiod);
  if (cf.is_periodic()) out.cycle_ = period_turns(cf.period, cf.preperiod.size());
  return out;
}

PathSpec PathSpec::from_turns(TurnWord word, bool repeat) {
  PathSpec out;
  out.label_ = repeat ? "(" + to_string(word) + ")" : to_string(word);
  if (repeat) {
    if (word.empty()) throw DomainError("cannot repeat the empty turn word");
    out.cycle_ = std::move(word);
  } else {
    out.head_ = std::move(word);
  }
  return out;
}

PathSpec PathSpec::parse(std::string_view text) {
  const bool turn_text = !text.empty() && std::all_of(text.begin(), text.end(), [](char ch) {
    return ch == 'L' || ch == 'R' || ch == '(' || ch == ')' || ch == ',' || std::isspace(static_cast<unsigned char>(ch));
  }) && text.find_first_of("LR") != std::string_view::npos;
  if (turn_text) {
    const std::size_t open = text.find('(');
    if (open == std::string_view::npos) return from_turns(parse_turns(text));
    const std::size_t close = text.find(')', open);
    if (close == std::string_view::npos || text.find_first_not_of(" \t", close + 1) != std::string_view::npos) {
      throw ParseError("repeated turn block must close the path: '" + std::string(text) + "'");
    }
    PathSpec out;
    out.head_ = parse_turns(text.substr(0, open));
    out.cycle_ = parse_turns(text.substr(open + 1, close - open - 1));
    if (out.cycle_.empty()) throw ParseError("empty repeated turn block in '" + std::string(text) + "'");
    out.label_ = std::string(text);
    return out;
  }
  if (text.find('[') != std::string_view::npos) return from_expansion(ContinuedFraction::parse(text));
  return from_value(QuadraticIrrational::parse(text));
}

Turn PathSpec::turn(std::size_t i) const {
  if (i < head_.size()) return head_[i];
  if (cycle_.empty()) throw std::out_of_range("turn past the end of a finite path");
  return cycle_[(i - head_.size()) % cycle_.size()];
}

Turn PathSpec::first_turn() const {
  if (!head_.empty()) return head_.front();
  if (!cycle_.empty()) return cycle_.front();
  return Turn::R;
}

PathMatrices path_matrices(const PathSpec& path, std::size_t n) {
  PathMatrices out;
  Mat2 a;
  for (std::size_t i = 0; i < n; ++i) {
    if (path.is_finite() && i >= path.length()) {
      out.exhausted = true;
      break;
    }
    a = a * (path.turn(i) == Turn::L ? Mat2::left() : Mat2::right());
    out.products.push_back(a);
  }
  return out;
}

QuadraticIrrational spectral_radius(const Mat2& a) {
  if (a.det() != 1) throw DomainError("spectral radius needs det 1, got " + a.to_string());
  if (a.p < 0 || a.q < 0 || a.r < 0 || a.s < 0) throw DomainError("spectral radius needs nonnegative entries, got " + a.to_string());
  const BigInt tr = a.trace();
  if (tr <= 2) return QuadraticIrrational(1);
  return QuadraticIrrational::normalize(tr, 1, tr * tr - 4, 2);
}

BigInt growth_weight(const Mat2& a, Turn first) { return first == Turn::R ? BigInt(a.r + a.s) : BigInt(a.p + a.q); }

std::string log_ratio_decimal(const BigInt& x, const BigInt& divisor, int digits) {
  Real r;
  compute_log_ratio(r, x, divisor);
  return r.decimal(digits);
}

double log_ratio(const BigInt& x, const BigInt& divisor) {
  Real r;
  compute_log_ratio(r, x, divisor);
  return r.to_double();
}

std::string MonoidExponent::to_decimal(int digits) const {
  Real r;
  if (is_zero()) {
    mpfr_set_zero(r.get(), 1);
    return r.decimal(digits);
  }
  r.set(rho);
  mpfr_log(r.get(), r.get(), MPFR_RNDN);
  mpfr_div_ui(r.get(), r.get(), turns, MPFR_RNDN);
  return r.decimal(digits);
}

double MonoidExponent::value() const {
  if (is_zero()) return 0.0;
  Real r;
  r.set(rho);
  mpfr_log(r.get(), r.get(), MPFR_RNDN);
  mpfr_div_ui(r.get(), r.get(), turns, MPFR_RNDN);
  return r.to_double();
}

MonoidExponent lambda_monoid_exact(const ContinuedFraction& input) {
  const ContinuedFraction cf = cf::normalize(input);
  if (!cf.is_periodic()) return {};
  const TurnWord block = period_turns(cf.period, 0);
  return {spectral_radius(word_product(block)), block.size()};
}

MonoidExponent lambda_monoid_exact(const QuadraticIrrational& xi) {
  if (xi.is_rational()) return {};
  return lambda_monoid_exact(cf::expand(xi));
}

std::string GrowthSeries::last_log_ratio(int digits) const {
  if (points.empty()) return log_ratio_decimal(1, 1, digits);  // ln 1 = 0
  const GrowthPoint& p = points.back();
  return log_ratio_decimal(kind == Kind::Monoid ? p.w : p.norm, BigInt(static_cast<unsigned long>(p.n)), digits);
}

GrowthSeries lambda_monoid(const PathSpec& path, std::size_t n) {
  GrowthSeries out;
  out.kind = GrowthSeries::Kind::Monoid;
  const Turn first = path.first_turn();
  Mat2 a;
  out.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (path.is_finite() && i >= path.length()) {
      out.exhausted = true;
      break;
    }
    a = a * (path.turn(i) == Turn::L ? Mat2::left() : Mat2::right());
    GrowthPoint p;
    p.n = i + 1;
    p.w = growth_weight(a, first);
    p.log_ratio = log_ratio(p.w, BigInt(static_cast<unsigned long>(p.n)));
    out.points.push_back(std::move(p));
  }
  if (path.is_finite()) {
    out.exact = MonoidExponent{};
  } else {
    out.exact = MonoidExponent{spectral_radius(word_product(path.cycle())), path.cycle().size()};
  }
  finish_series(out);
  return out;
}

GrowthSeries lambda_form(const QuadraticForm& q, const PathSpec& path, std::size_t n) {
  if (q.a == 0 && q.h == 0 && q.b == 0) throw DomainError("the zero form has no growth");
  GrowthSeries out;
  out.kind = GrowthSeries::Kind::Form;
  const Turn first = path.first_turn();
  TopographCursor cursor(q);
  out.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (path.is_finite() && i >= path.length()) {
      out.exhausted = true;
      break;
    }
    cursor.advance(path.turn(i));
    const SuperbaseTriple& t = cursor.triple();
    GrowthPoint p;
    p.n = i + 1;
    p.w = growth_weight(cursor.basis(), first);
    p.norm = max_abs(t.a, t.b, t.c);
    p.norm_h = max_abs(t.a, t.b, t.h());
    p.log_ratio = log_ratio(p.norm, BigInt(static_cast<unsigned long>(p.n)));
    out.points.push_back(std::move(p));
  }
  finish_series(out);
  return out;
}

SandwichReport sandwich_check(const QuadraticForm& q, const PathSpec& path, std::size_t n) {
  if (q.a < 1 || q.b < 1 || q.h < 1) {
    throw DomainError("the sandwich bounds need a, b, h >= 1; got " + q.to_string());
  }
  const BigInt q_norm_h = max_abs(q.a, q.b, q.h);
  const GrowthSeries s = lambda_form(q, path, n);
  SandwichReport out;
  for (const GrowthPoint& p : s.points) {
    const BigInt w2 = p.w * p.w;
    const bool ok = w2 <= 2 * p.norm_h && p.norm_h <= 4 * w2 * q_norm_h;
    if (!ok && !out.first_failure) {
      out.holds = false;
      out.first_failure = p.n;
    }
    ++out.steps;
  }
  return out;
}

TheoremRatio theorem_ratio(const QuadraticForm& q, const PathSpec& path, std::size_t n, int digits) {
  const GrowthSeries s = lambda_form(q, path, n);
  TheoremRatio out;
  if (s.points.empty()) {
    out.decimal = log_ratio_decimal(1, 1, digits);
    return out;
  }
  const GrowthPoint& p = s.points.back();
  out.n = p.n;
  Real num, den;
  num.set_log(p.norm);
  den.set_log(p.w);
  mpfr_mul_ui(den.get(), den.get(), 2, MPFR_RNDN);
  if (mpfr_zero_p(den.get())) throw DivisionByZero("w_n = 1 gives no ratio");
  mpfr_div(num.get(), num.get(), den.get(), MPFR_RNDN);
  out.ratio = num.to_double();
  out.decimal = num.decimal(digits);
  return out;
}

}  // namespace conway
