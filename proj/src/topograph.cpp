#include "conway/topograph.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>
#include <tuple>

#include "conway/error.hpp"

namespace conway {

namespace {

int sign(const BigInt& x) { return sgn(x); }

bool same_sign(const SuperbaseTriple& t) {
  const int s = sign(t.a);
  return s != 0 && sign(t.b) == s && sign(t.c) == s;
}

QuadraticIrrational abs_value(const QuadraticIrrational& x) { return x.sign() < 0 ? -x : x; }

std::pair<BigInt, BigInt> primitive_zero(BigInt x, BigInt y) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  x /= g;
  y /= g;
  if (y < 0 || (y == 0 && x < 0)) {
    x = -x;
    y = -y;
  }
  return {x, y};
}

// Term parser for polynomial form text. Each term is an optional integer
// coefficient times a product of x and y powers of total degree 2.
class FormTextParser {
 public:
  explicit FormTextParser(std::string_view text) : original_(text) {
    for (char ch : text) {
      if (!std::isspace(static_cast<unsigned char>(ch))) s_.push_back(ch);
    }
  }

  QuadraticForm parse() {
    if (s_.empty()) fail("empty form");
    QuadraticForm q{0, 0, 0};
    while (pos_ < s_.size()) {
      int term_sign = 1;
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        term_sign = s_[pos_] == '-' ? -1 : 1;
        ++pos_;
      } else if (pos_ != 0) {
        fail("expected '+' or '-'");
      }
      BigInt coef = 1;
      bool has_coef = false;
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ > start) {
        coef = BigInt(s_.substr(start, pos_ - start));
        has_coef = true;
        if (pos_ < s_.size() && s_[pos_] == '*') ++pos_;
      }
      int dx = 0;
      int dy = 0;
      while (pos_ < s_.size() && (s_[pos_] == 'x' || s_[pos_] == 'y')) {
        const char var = s_[pos_++];
        int power = 1;
        if (pos_ < s_.size() && s_[pos_] == '^') {
          ++pos_;
          if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("bad exponent");
          power = s_[pos_++] - '0';
        }
        (var == 'x' ? dx : dy) += power;
        if (pos_ < s_.size() && s_[pos_] == '*') ++pos_;
      }
      if (!has_coef && dx + dy == 0) fail("empty term");
      if (dx + dy != 2) fail("every term must have degree 2");
      coef *= term_sign;
      if (dx == 2) q.a += coef;
      else if (dy == 2) q.b += coef;
      else q.h += coef;
    }
    return q;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError(why + " in form '" + std::string(original_) + "'");
  }

  std::string_view original_;
  std::string s_;
  std::size_t pos_ = 0;
};

BigInt parse_integer(std::string_view token, std::string_view whole) {
  std::string t;
  for (char ch : token) {
    if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
  }
  std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
  if (i == t.size()) throw ParseError("missing coefficient in '" + std::string(whole) + "'");
  for (std::size_t j = i; j < t.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(t[j]))) {
      throw ParseError("bad coefficient '" + t + "' in '" + std::string(whole) + "'");
    }
  }
  if (t[0] == '+') t.erase(0, 1);
  return BigInt(t);
}

struct EdgeLess {
  bool operator()(const RiverEdge& x, const RiverEdge& y) const {
    return std::tie(x.positive, x.negative, x.behind) < std::tie(y.positive, y.negative, y.behind);
  }
};

RiverEdge edge_for_turn(const SuperbaseTriple& t, Turn turn) {
  const BigInt& u = turn == Turn::L ? t.a : t.c;
  const BigInt& v = turn == Turn::L ? t.c : t.b;
  const BigInt& behind = turn == Turn::L ? t.b : t.a;
  if (sign(u) * sign(v) >= 0) throw std::logic_error("river walk left the river at " + t.to_string());
  return u > 0 ? RiverEdge{u, v, behind} : RiverEdge{v, u, behind};
}

std::vector<RiverEdge> minimal_cycle(const std::vector<RiverEdge>& x) {
  const std::size_t n = x.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool repeats = true;
    for (std::size_t i = p; i < n && repeats; ++i) repeats = x[i] == x[i % p];
    if (repeats) return {x.begin(), x.begin() + static_cast<std::ptrdiff_t>(p)};
  }
  return x;
}

bool is_rotation(const std::vector<RiverEdge>& x, const std::vector<RiverEdge>& y) {
  const std::size_t n = x.size();
  if (n != y.size()) return false;
  for (std::size_t r = 0; r < n; ++r) {
    bool match = true;
    for (std::size_t i = 0; i < n && match; ++i) match = x[(i + r) % n] == y[i];
    if (match) return true;
  }
  return n == 0;
}

// Digits of the entry path for a root with expansion [a0..ak; (b1..bl)]
// when the root vertex is off the river.
std::vector<BigInt> entry_digits_for(const ContinuedFraction& cf) {
  const auto& pre = cf.preperiod;
  if (pre.empty()) throw std::logic_error("pure periodic root off the river: " + cf.to_string());
  const BigInt& bl = cf.period.back();
  const std::size_t k = pre.size() - 1;
  std::vector<BigInt> out;
  if (k == 0) {
    if (pre[0] > bl) out.push_back(pre[0] - bl);
    return out;
  }
  if (pre[k] > bl) {
    out.assign(pre.begin(), pre.end() - 1);
    out.push_back(pre[k] - bl - 1);
  } else {
    out.assign(pre.begin(), pre.end() - 2);
    out.push_back(pre[k - 1] - 1);
  }
  for (const BigInt& d : out) {
    if (d < 0) throw std::logic_error("negative entry digit for " + cf.to_string());
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

std::string Mat2::to_string() const {
  return "[[" + p.get_str() + "," + q.get_str() + "],[" + r.get_str() + "," + s.get_str() + "]]";
}

Mat3 Mat3::identity() {
  Mat3 out;
  out(0, 0) = out(1, 1) = out(2, 2) = 1;
  return out;
}

std::array<BigInt, 3> Mat3::apply(const std::array<BigInt, 3>& v) const {
  std::array<BigInt, 3> out;
  for (int i = 0; i < 3; ++i) out[static_cast<std::size_t>(i)] = (*this)(i, 0) * v[0] + (*this)(i, 1) * v[1] + (*this)(i, 2) * v[2];
  return out;
}

Mat3 operator*(const Mat3& x, const Mat3& y) {
  Mat3 out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out(i, j) = x(i, 0) * y(0, j) + x(i, 1) * y(1, j) + x(i, 2) * y(2, j);
  }
  return out;
}

std::string QuadraticForm::to_string() const {
  std::string out;
  auto term = [&out](const BigInt& coef, const char* monomial) {
    if (coef == 0) return;
    if (coef < 0) out += "-";
    else if (!out.empty()) out += "+";
    const BigInt mag = abs(coef);
    if (mag != 1) out += mag.get_str() + "*";
    out += monomial;
  };
  term(a, "x^2");
  term(h, "x*y");
  term(b, "y^2");
  return out.empty() ? "0*x^2" : out;
}

QuadraticForm QuadraticForm::parse(std::string_view text) {
  if (text.find(',') != std::string_view::npos) {
    std::vector<BigInt> parts;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = text.find(',', start);
      parts.push_back(parse_integer(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start), text));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (parts.size() != 3) throw ParseError("form triple needs exactly a,h,b: '" + std::string(text) + "'");
    return {parts[0], parts[1], parts[2]};
  }
  return FormTextParser(text).parse();
}

std::string SuperbaseTriple::to_string() const {
  return "(" + a.get_str() + "," + b.get_str() + "," + c.get_str() + ")";
}

std::string to_string(const TurnWord& word) {
  std::string out;
  out.reserve(word.size());
  for (Turn t : word) out.push_back(static_cast<char>(t));
  return out;
}

TurnWord parse_turns(std::string_view text) {
  TurnWord out;
  for (char ch : text) {
    if (ch == 'L' || ch == 'l') out.push_back(Turn::L);
    else if (ch == 'R' || ch == 'r') out.push_back(Turn::R);
    else if (ch != ',' && !std::isspace(static_cast<unsigned char>(ch))) {
      throw ParseError("turn words use L and R only: '" + std::string(text) + "'");
    }
  }
  return out;
}

Turn mirror(Turn t) { return t == Turn::L ? Turn::R : Turn::L; }

TurnWord turns_from_digits(const std::vector<BigInt>& digits, bool start_with_left) {
  TurnWord out;
  bool left = start_with_left;
  for (const BigInt& d : digits) {
    if (d < 0) throw DomainError("negative digit " + d.get_str() + " has no path");
    if (!d.fits_ulong_p() || d.get_ui() > 100'000'000UL) throw DomainError("digit " + d.get_str() + " is too large to walk");
    out.insert(out.end(), d.get_ui(), left ? Turn::L : Turn::R);
    left = !left;
  }
  return out;
}

TurnWord period_turns(const std::vector<BigInt>& period, std::size_t offset) {
  std::vector<BigInt> block = period;
  if (period.size() % 2 == 1) block.insert(block.end(), period.begin(), period.end());
  return turns_from_digits(block, offset % 2 == 0);
}

TopographCursor::TopographCursor(QuadraticForm form) : form_(std::move(form)), triple_(form_values(form_)) {}

TopographCursor TopographCursor::step(Turn turn) const {
  TopographCursor next = *this;
  next.advance(turn);
  return next;
}

void TopographCursor::advance(Turn turn) {
  basis_ = basis_ * (turn == Turn::L ? Mat2::left() : Mat2::right());
  triple_ = conway::step(triple_, turn);
}

SuperbaseTriple form_values(const QuadraticForm& q) { return {q.a, q.b, q.a + q.b + q.h}; }

SuperbaseTriple step(const SuperbaseTriple& t, Turn turn) {
  if (turn == Turn::L) return {t.a, t.c, 2 * (t.a + t.c) - t.b};
  return {t.c, t.b, 2 * (t.b + t.c) - t.a};
}

std::vector<SuperbaseTriple> walk(const QuadraticForm& q, const TurnWord& word) {
  std::vector<SuperbaseTriple> out;
  out.reserve(word.size() + 1);
  out.push_back(form_values(q));
  for (Turn t : word) out.push_back(step(out.back(), t));
  return out;
}

QuadraticForm transform_form(const QuadraticForm& q, const Mat2& m) {
  if (m.det() != 1) throw DomainError("change of basis " + m.to_string() + " is not in SL2(Z)");
  // Q(px + qy, rx + sy)
  return {q(m.p, m.r), 2 * q.a * m.p * m.q + q.h * (m.p * m.s + m.q * m.r) + 2 * q.b * m.r * m.s, q(m.q, m.s)};
}

Mat3 hat_matrix(const Mat2& m) {
  if (m.det() != 1) throw DomainError("matrix " + m.to_string() + " is not in SL2(Z)");
  Mat3 out;
  out.m = {m.p * m.p, 2 * m.p * m.r, m.r * m.r,
           m.p * m.q, m.p * m.s + m.q * m.r, m.r * m.s,
           m.q * m.q, 2 * m.q * m.s, m.s * m.s};
  return out;
}

std::array<BigInt, 3> doubled_coefficients(const QuadraticForm& q) { return {2 * q.a, q.h, 2 * q.b}; }

SuperbaseTriple vieta_flip(const SuperbaseTriple& t, TriplePosition pos) {
  switch (pos) {
    case TriplePosition::A: return {2 * (t.b + t.c) - t.a, t.b, t.c};
    case TriplePosition::B: return {t.a, 2 * (t.a + t.c) - t.b, t.c};
    case TriplePosition::C: return {t.a, t.b, 2 * (t.a + t.b) - t.c};
  }
  throw std::logic_error("unknown triple position");
}

BigInt markov_discriminant(const SuperbaseTriple& t) {
  return t.a * t.a + t.b * t.b + t.c * t.c - 2 * (t.a * t.b + t.a * t.c + t.b * t.c);
}

std::string_view to_string(FormClass c) {
  switch (c) {
    case FormClass::PositiveDefinite: return "positive-definite";
    case FormClass::NegativeDefinite: return "negative-definite";
    case FormClass::Semidefinite: return "semidefinite";
    case FormClass::IndefiniteAnisotropic: return "indefinite-anisotropic";
    case FormClass::IndefiniteIsotropic: return "indefinite-isotropic";
  }
  return "unknown";
}

FormClass classify(const QuadraticForm& q) {
  const BigInt d = q.discriminant();
  if (d < 0) return q.a > 0 ? FormClass::PositiveDefinite : FormClass::NegativeDefinite;
  if (d == 0) return FormClass::Semidefinite;
  return is_perfect_square(d) ? FormClass::IndefiniteIsotropic : FormClass::IndefiniteAnisotropic;
}

FormRoots roots(const QuadraticForm& q) {
  const BigInt d = q.discriminant();
  if (d < 0) throw DomainError("form " + q.to_string() + " has no real roots (D = " + d.get_str() + ")");
  if (q.a == 0 && q.h == 0 && q.b == 0) throw DomainError("the zero form has no roots");
  FormRoots out;
  if (q.a == 0) {
    if (q.h != 0) out.conjugate = QuadraticIrrational(Rational(-q.b, q.h));
    return out;
  }
  QuadraticIrrational plus = QuadraticIrrational::normalize(-q.h, 1, d, 2 * q.a);
  QuadraticIrrational minus = QuadraticIrrational::normalize(-q.h, -1, d, 2 * q.a);
  const auto by_modulus = compare(abs_value(plus), abs_value(minus));
  if (by_modulus < 0 || (by_modulus == 0 && minus > plus)) std::swap(plus, minus);
  out.dominant = std::move(plus);
  out.conjugate = std::move(minus);
  return out;
}

bool is_galois_form(const QuadraticForm& q) {
  const SuperbaseTriple t = form_values(q);
  return t.a * t.b < 0 && t.a * t.c < 0 && t.a * (2 * t.a + 2 * t.b - t.c) > 0;
}

RiverDescription find_river(const QuadraticForm& q) {
  const FormClass cls = classify(q);
  if (cls != FormClass::IndefiniteAnisotropic) {
    throw DomainError("a river needs an indefinite anisotropic form; " + q.to_string() + " is " + std::string(to_string(cls)));
  }
  const FormRoots rt = roots(q);
  RiverDescription out;
  out.dominant_root = *rt.dominant;
  out.conjugate_root = *rt.conjugate;

  const SuperbaseTriple start = form_values(q);
  QuadraticForm walked = q;
  if (!same_sign(start)) {
    out.path_root = out.dominant_root.sign() > 0 ? out.dominant_root : out.conjugate_root;
  } else if (sign(q.a) * sign(q.h) < 0) {
    out.path_root = std::max(out.dominant_root, out.conjugate_root);
  } else {
    // Both roots are negative: walk the mirror form Q(x, -y) instead.
    out.reflected = true;
    walked = {q.a, -q.h, q.b};
    out.path_root = std::max(-out.dominant_root, -out.conjugate_root);
  }
  if (out.path_root.sign() <= 0) throw std::logic_error("no positive root to follow for " + q.to_string());
  out.path_expansion = cf::expand(out.path_root);
  if (same_sign(start)) out.entry_digits = entry_digits_for(out.path_expansion);
  out.entry_path = turns_from_digits(out.entry_digits);

  const TurnWord head = turns_from_digits(out.path_expansion.preperiod);
  if (out.entry_path.size() > head.size() || !std::equal(out.entry_path.begin(), out.entry_path.end(), head.begin())) {
    throw std::logic_error("entry path is not a prefix of the root's path for " + q.to_string());
  }
  TopographCursor cursor(walked);
  for (Turn t : out.entry_path) cursor.advance(t);
  out.landing = cursor.triple();
  if (same_sign(out.landing)) throw std::logic_error("entry path of " + q.to_string() + " ends off the river");
  for (std::size_t i = out.entry_path.size(); i < head.size(); ++i) cursor.advance(head[i]);

  out.river_period = period_turns(out.path_expansion.period, out.path_expansion.preperiod.size());
  const SuperbaseTriple period_start = cursor.triple();
  out.period_states.reserve(out.river_period.size());
  for (Turn t : out.river_period) {
    out.period_states.push_back(edge_for_turn(cursor.triple(), t));
    cursor.advance(t);
  }
  if (!(cursor.triple() == period_start)) throw std::logic_error("river of " + q.to_string() + " did not close up");
  if (!same_river_cycle(out.period_states, trace_river_by_signs(q))) {
    throw std::logic_error("river of " + q.to_string() + " disagrees with the sign-steering search");
  }
  return out;
}

std::vector<RiverEdge> trace_river_by_signs(const QuadraticForm& q) {
  if (classify(q) != FormClass::IndefiniteAnisotropic) {
    throw DomainError("a river needs an indefinite anisotropic form; got " + q.to_string());
  }
  SuperbaseTriple t = form_values(q);
  while (same_sign(t)) {
    const BigInt ma = abs(t.a), mb = abs(t.b), mc = abs(t.c);
    if (ma >= mb && ma >= mc) t = vieta_flip(t, TriplePosition::A);
    else if (mb >= mc) t = vieta_flip(t, TriplePosition::B);
    else t = vieta_flip(t, TriplePosition::C);
  }
  // The face whose sign is in the minority borders both river edges here.
  std::array<BigInt, 3> f{t.a, t.b, t.c};
  std::size_t odd = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    if (sign(f[i]) != sign(f[(i + 1) % 3]) && sign(f[i]) != sign(f[(i + 2) % 3])) odd = i;
  }
  const BigInt& u = f[odd];
  const BigInt& v = f[(odd + 1) % 3];
  RiverEdge state = u > 0 ? RiverEdge{u, v, f[(odd + 2) % 3]} : RiverEdge{v, u, f[(odd + 2) % 3]};

  std::vector<RiverEdge> seq;
  std::map<RiverEdge, std::size_t, EdgeLess> seen;
  for (;;) {
    auto [it, inserted] = seen.emplace(state, seq.size());
    if (!inserted) return {seq.begin() + static_cast<std::ptrdiff_t>(it->second), seq.end()};
    seq.push_back(state);
    BigInt ahead = 2 * (state.positive + state.negative) - state.behind;
    if (ahead > 0) state = {std::move(ahead), state.negative, state.positive};
    else state = {state.positive, std::move(ahead), state.negative};
  }
}

bool same_river_cycle(const std::vector<RiverEdge>& x, const std::vector<RiverEdge>& y) {
  const std::vector<RiverEdge> cx = minimal_cycle(x);
  const std::vector<RiverEdge> cy = minimal_cycle(y);
  if (is_rotation(cx, cy)) return true;
  std::vector<RiverEdge> back;
  back.reserve(cy.size());
  for (auto it = cy.rbegin(); it != cy.rend(); ++it) back.push_back(it->reversed());
  return is_rotation(cx, back);
}

LakeDescription find_lakes(const QuadraticForm& q) {
  const FormClass cls = classify(q);
  if (cls != FormClass::IndefiniteIsotropic) {
    throw DomainError("lakes need an indefinite isotropic form; " + q.to_string() + " is " + std::string(to_string(cls)));
  }
  LakeDescription out;
  const BigInt root_d = isqrt(q.discriminant());
  if (q.a == 0) {
    out.zero_vectors = {std::pair<BigInt, BigInt>{1, 0}, primitive_zero(q.b, -q.h)};
  } else {
    out.zero_vectors = {primitive_zero(-q.h + root_d, 2 * q.a), primitive_zero(-q.h - root_d, 2 * q.a)};
  }

  for (const auto& [p, r] : out.zero_vectors) {
    // Extend (p, r) to a basis [[p, q], [r, s]] of determinant 1.
    BigInt g, x, y;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), p.get_mpz_t(), r.get_mpz_t());
    Mat2 basis{p, -y, r, x};
    QuadraticForm reduced = transform_form(q, basis);
    if (reduced.h <= 0) continue;
    // Shifting the second vector by t*(p, r) changes b by t*h; bring -b into [0, h).
    BigInt n;
    const BigInt minus_b = -reduced.b;
    mpz_fdiv_r(n.get_mpz_t(), minus_b.get_mpz_t(), reduced.h.get_mpz_t());
    const BigInt t = (minus_b - n) / reduced.h;
    basis.q += t * p;
    basis.s += t * r;
    out.reduction = basis;
    out.reduced = transform_form(q, basis);
    out.m = out.reduced.h;
    out.n = -out.reduced.b;
    out.river_word = turns_from_digits(cf::expand(Rational(out.n, out.m)).preperiod);
    return out;
  }
  throw std::logic_error("no zero vector of " + q.to_string() + " gives a positive reduced form");
}

}  // namespace conway
