#include "conway/cfrac.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <utility>

#include "conway/error.hpp"

namespace conway {

namespace {

using Digits = std::vector<BigInt>;

// Zero removal on a linear digit list: [.., c, 0, d, ..] -> [.., c+d, ..].
// Position 0 is a free integer part, so a zero there is kept.
Digits merge_zeros(const Digits& in) {
  Digits out;
  out.reserve(in.size());
  for (const BigInt& d : in) {
    if (out.size() >= 2 && out.back() == 0) {
      out.pop_back();
      out.back() += d;
    } else {
      out.push_back(d);
    }
  }
  return out;
}

bool contains_zero(const Digits& digits) {
  return std::any_of(digits.begin(), digits.end(), [](const BigInt& d) { return d == 0; });
}

// Smallest block that generates `period` cyclically.
Digits minimal_period(const Digits& period) {
  const std::size_t l = period.size();
  for (std::size_t p = 1; p < l; ++p) {
    if (l % p != 0) continue;
    bool repeats = true;
    for (std::size_t i = p; i < l && repeats; ++i) repeats = period[i] == period[i % p];
    if (repeats) return Digits(period.begin(), period.begin() + static_cast<std::ptrdiff_t>(p));
  }
  return period;
}

void rotate_right(Digits& period) { std::rotate(period.rbegin(), period.rbegin() + 1, period.rend()); }

// (b_{l-1}, ..., b_1, b_l)
Digits reverse_rotated(const Digits& period) {
  Digits out(period.rbegin() + 1, period.rend());
  out.push_back(period.back());
  return out;
}

// Moves zeros out of a periodic block by peeling digits into the preperiod
// until every zero sits strictly inside the block, then merging.
void remove_period_zeros(Digits& preperiod, Digits& period) {
  while (contains_zero(period)) {
    const std::size_t l = period.size();
    if (std::all_of(period.begin(), period.end(), [](const BigInt& d) { return d == 0; })) {
      throw DomainError("periodic block of zeros has no value");
    }
    std::size_t cut = l;
    for (std::size_t r = 0; r < l; ++r) {
      if (period[r] != 0 && period[(r + l - 1) % l] != 0) {
        cut = r;
        break;
      }
    }
    if (cut == l) throw DomainError("periodic block alternates with zeros and diverges");
    preperiod.insert(preperiod.end(), period.begin(), period.begin() + static_cast<std::ptrdiff_t>(cut));
    std::rotate(period.begin(), period.begin() + static_cast<std::ptrdiff_t>(cut), period.end());
    Digits merged = merge_zeros(period);
    if (merged.size() == period.size()) throw DomainError("cannot remove zeros from periodic block");
    period = std::move(merged);
  }
}

// -[c0, c1, ...] = [-c0, -c1, ...]; applied when no positive digit remains.
void fold_negative_digits(ContinuedFraction& cf) {
  auto all_nonpositive = [](const Digits& v, std::size_t from) {
    for (std::size_t i = from; i < v.size(); ++i) {
      if (v[i] > 0) return false;
    }
    return true;
  };
  bool any_negative = false;
  for (const auto* v : {&cf.preperiod, &cf.period}) {
    for (const BigInt& d : *v) any_negative = any_negative || d < 0;
  }
  if (!any_negative || !all_nonpositive(cf.preperiod, 0) || !all_nonpositive(cf.period, 0)) return;
  for (auto* v : {&cf.preperiod, &cf.period}) {
    for (BigInt& d : *v) d = -d;
  }
  cf.sign = -cf.sign;
}

// Parses a decimal integer that may carry a sign.
BigInt parse_digit(std::string_view token, std::string_view whole) {
  std::size_t i = 0;
  if (i < token.size() && (token[i] == '-' || token[i] == '+')) ++i;
  if (i == token.size()) throw ParseError("empty digit in continued fraction '" + std::string(whole) + "'");
  for (std::size_t j = i; j < token.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(token[j]))) {
      throw ParseError("bad digit '" + std::string(token) + "' in continued fraction '" + std::string(whole) + "'");
    }
  }
  std::string text(token[0] == '+' ? token.substr(1) : token);
  return BigInt(text);
}

Digits parse_digit_list(std::string_view body, std::string_view whole) {
  Digits out;
  if (body.empty()) return out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = body.find(',', start);
    out.push_back(parse_digit(body.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start), whole));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string join(const Digits& digits) {
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i) out += ",";
    out += digits[i].get_str();
  }
  return out;
}

// 2x2 product of the digit matrices [[c, 1], [1, 0]].
struct Convergents {
  BigInt p{1}, p_prev{0}, q{0}, q_prev{1};

  void push(const BigInt& c) {
    BigInt np = c * p + p_prev;
    BigInt nq = c * q + q_prev;
    p_prev = std::move(p);
    q_prev = std::move(q);
    p = std::move(np);
    q = std::move(nq);
  }
};

// [(b1, ..., bl)] with positive digits: the root > 1 of the period's fixed
// point equation q y^2 + (q' - p) y - p' = 0.
QuadraticIrrational periodic_value(const Digits& period) {
  Convergents m;
  for (const BigInt& b : period) m.push(b);
  const BigInt disc = (m.q_prev - m.p) * (m.q_prev - m.p) + 4 * m.p_prev * m.q;
  return QuadraticIrrational::normalize(m.p - m.q_prev, 1, disc, 2 * m.q);
}

// Conjugate when a_k < b_l and k >= 1:
//   [a0, ..., a_{k-1} - 1, 1, b_l - a_k - 1, (b_{l-1}, ..., b_1, b_l)]
ContinuedFraction conjugate_tail_below(const Digits& pre, const Digits& period) {
  const std::size_t k = pre.size() - 1;
  Digits out(pre.begin(), pre.begin() + static_cast<std::ptrdiff_t>(k - 1));
  out.push_back(pre[k - 1] - 1);
  out.push_back(1);
  out.push_back(period.back() - pre[k] - 1);
  return {std::move(out), reverse_rotated(period), 1};
}

// a_k > b_l (any k >= 0): rewrite as [.., a_k - b_l, 0, (b_l, b_1, ..., b_{l-1})]
// whose last preperiod digit 0 is below the new last period digit.
ContinuedFraction conjugate_tail_above(const Digits& pre, const Digits& period) {
  Digits shifted(pre.begin(), pre.end() - 1);
  shifted.push_back(pre.back() - period.back());
  shifted.push_back(0);
  Digits rotated = period;
  rotate_right(rotated);
  return conjugate_tail_below(shifted, rotated);
}

// Conjugate of a canonical expansion with sign +1.
ContinuedFraction conjugate_positive(const ContinuedFraction& cf) {
  const Digits& pre = cf.preperiod;
  const Digits& period = cf.period;
  if (pre.empty()) {
    // Galois: conj [(b1..bl)] = -[0, (bl, ..., b1)]
    return {{BigInt(0)}, Digits(period.rbegin(), period.rend()), -1};
  }
  const BigInt& last = pre.back();
  const BigInt& bl = period.back();
  if (pre.size() == 1 && last < bl) {
    // a0 + [0, (b)] with a0 < b_l: -[b_l - a0, (b_{l-1}, ..., b_1, b_l)]
    return {{BigInt(bl - last)}, reverse_rotated(period), -1};
  }
  if (last < bl) return conjugate_tail_below(pre, period);
  return conjugate_tail_above(pre, period);
}

}  // namespace

// ---------------------------------------------------------------------------

std::string ContinuedFraction::to_string() const {
  std::string out = sign < 0 ? "-[" : "[";
  out += join(preperiod);
  if (!period.empty()) out += ";(" + join(period) + ")";
  out += "]";
  return out;
}

ContinuedFraction ContinuedFraction::parse(std::string_view text) {
  std::string compact;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) compact.push_back(ch);
  }
  std::string_view s = compact;
  ContinuedFraction cf;
  if (!s.empty() && s.front() == '-') {
    cf.sign = -1;
    s.remove_prefix(1);
  }
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
    throw ParseError("continued fraction must look like [a0,a1;(b1,b2)]: '" + std::string(text) + "'");
  }
  s = s.substr(1, s.size() - 2);
  const std::size_t open = s.find('(');
  if (open == std::string_view::npos) {
    if (s.find_first_of(";)") != std::string_view::npos) throw ParseError("malformed period in '" + std::string(text) + "'");
    cf.preperiod = parse_digit_list(s, text);
    if (cf.preperiod.empty()) throw ParseError("empty continued fraction '" + std::string(text) + "'");
    return cf;
  }
  if (s.back() != ')') throw ParseError("period must close the continued fraction: '" + std::string(text) + "'");
  std::string_view head = s.substr(0, open);
  if (!head.empty()) {
    if (head.back() != ';' && head.back() != ',') throw ParseError("expected ';' before period in '" + std::string(text) + "'");
    head.remove_suffix(1);
  }
  cf.preperiod = parse_digit_list(head, text);
  cf.period = parse_digit_list(s.substr(open + 1, s.size() - open - 2), text);
  if (cf.period.empty()) throw ParseError("empty period in '" + std::string(text) + "'");
  return cf;
}

namespace cf {

ContinuedFraction expand(const Rational& x) {
  ContinuedFraction out;
  BigInt num = x.num();
  BigInt den = x.den();
  while (den != 0) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    BigInt r = num - q * den;
    out.preperiod.push_back(std::move(q));
    num = std::move(den);
    den = std::move(r);
  }
  return out;
}

ContinuedFraction expand(const QuadraticIrrational& x) {
  if (x.is_rational()) {
    throw DomainError(x.to_string() + " is rational; use the finite expansion");
  }
  // x = (P + sqrt(N)) / Q with Q | N - P^2; the pair (P, Q) is the exact
  // remainder after each digit.
  BigInt n = x.b() * x.b() * x.d();
  BigInt p = x.b() > 0 ? x.a() : BigInt(-x.a());
  BigInt q = x.b() > 0 ? x.c() : BigInt(-x.c());
  if (!mpz_divisible_p(BigInt(n - p * p).get_mpz_t(), q.get_mpz_t())) {
    const BigInt scale = abs(q);
    p *= scale;
    n *= scale * scale;
    q *= scale;
  }
  const BigInt root = isqrt(n);

  Digits digits;
  std::map<std::pair<BigInt, BigInt>, std::size_t> seen;
  for (;;) {
    auto [it, inserted] = seen.try_emplace({p, q}, digits.size());
    if (!inserted) {
      const auto start = static_cast<std::ptrdiff_t>(it->second);
      ContinuedFraction out;
      out.preperiod.assign(digits.begin(), digits.begin() + start);
      out.period.assign(digits.begin() + start, digits.end());
      return out;
    }
    BigInt a;
    const BigInt top = p + root;
    if (q > 0) {
      mpz_fdiv_q(a.get_mpz_t(), top.get_mpz_t(), q.get_mpz_t());
    } else {
      const BigInt aq = -q;
      mpz_fdiv_q(a.get_mpz_t(), top.get_mpz_t(), aq.get_mpz_t());
      a = -(a + 1);
    }
    BigInt next_p = a * q - p;
    BigInt next_q = n - next_p * next_p;
    mpz_divexact(next_q.get_mpz_t(), next_q.get_mpz_t(), q.get_mpz_t());
    digits.push_back(std::move(a));
    p = std::move(next_p);
    q = std::move(next_q);
  }
}

ContinuedFraction expand_any(const QuadraticIrrational& x) {
  return x.is_rational() ? expand(x.to_rational()) : expand(x);
}

QuadraticIrrational value(const ContinuedFraction& input) {
  if (input.preperiod.empty() && input.period.empty()) throw DomainError("empty continued fraction");
  ContinuedFraction cf = input;
  if (cf.is_periodic() && std::any_of(cf.period.begin(), cf.period.end(), [](const BigInt& d) { return d <= 0; })) {
    cf = normalize(cf);
    if (std::any_of(cf.period.begin(), cf.period.end(), [](const BigInt& d) { return d <= 0; })) {
      throw DomainError("periodic block " + input.to_string() + " must have positive digits");
    }
  }
  Convergents m;
  for (const BigInt& c : cf.preperiod) m.push(c);
  QuadraticIrrational result;
  if (cf.is_periodic()) {
    const QuadraticIrrational tail = periodic_value(cf.period);
    if (cf.preperiod.empty()) {
      result = tail;
    } else {
      result = (QuadraticIrrational(m.p) * tail + QuadraticIrrational(m.p_prev)) /
               (QuadraticIrrational(m.q) * tail + QuadraticIrrational(m.q_prev));
    }
  } else {
    if (m.q == 0) throw DomainError("continued fraction " + input.to_string() + " evaluates to infinity");
    result = QuadraticIrrational(Rational(m.p, m.q));
  }
  return cf.sign < 0 ? -result : result;
}

ContinuedFraction normalize(ContinuedFraction cf) {
  if (cf.preperiod.empty() && cf.period.empty()) throw DomainError("empty continued fraction");
  if (!cf.is_periodic()) {
    Digits digits = merge_zeros(cf.preperiod);
    for (bool changed = true; changed;) {
      changed = false;
      if (digits.size() >= 2 && digits.back() == 0) {
        // [.., x, c, 0] = [.., x] since c + 1/0 is infinite
        if (digits.size() == 2) throw DomainError("continued fraction " + cf.to_string() + " evaluates to infinity");
        digits.resize(digits.size() - 2);
        changed = true;
      } else if (digits.size() >= 2 && digits.back() == 1) {
        digits.pop_back();
        digits.back() += 1;
        changed = true;
      }
    }
    cf.preperiod = std::move(digits);
    fold_negative_digits(cf);
    return cf;
  }

  remove_period_zeros(cf.preperiod, cf.period);
  // Unroll one copy so zeros at the preperiod boundary merge into the period.
  Digits linear = cf.preperiod;
  linear.insert(linear.end(), cf.period.begin(), cf.period.end());
  linear = merge_zeros(linear);
  for (std::size_t guard = 0; linear.size() >= 2 && linear.back() == 0; ++guard) {
    if (guard > 4 * cf.period.size() + 8) throw DomainError("cannot normalize " + cf.to_string());
    linear.insert(linear.end(), cf.period.begin(), cf.period.end());
    linear = merge_zeros(linear);
  }
  cf.preperiod = std::move(linear);
  cf.period = minimal_period(cf.period);
  // Fold matching trailing preperiod digits into the period, then rotate once.
  const std::size_t l = cf.period.size();
  std::size_t shift = 0;
  while (shift < cf.preperiod.size() &&
         cf.preperiod[cf.preperiod.size() - 1 - shift] == cf.period[l - 1 - shift % l]) {
    ++shift;
  }
  cf.preperiod.resize(cf.preperiod.size() - shift);
  std::rotate(cf.period.begin(), cf.period.begin() + static_cast<std::ptrdiff_t>(l - shift % l), cf.period.end());
  fold_negative_digits(cf);
  return cf;
}

ContinuedFraction negate(const ContinuedFraction& input) {
  if (input.sign < 0) {
    ContinuedFraction out = input;
    out.sign = 1;
    return normalize(out);
  }
  Digits pre = input.preperiod;
  Digits period = input.period;
  if (period.empty()) {
    if (pre.empty()) throw DomainError("empty continued fraction");
    if (pre.size() == 1) return {{BigInt(-pre[0])}, {}, 1};
  } else {
    while (pre.size() < 2) {
      pre.push_back(period.front());
      std::rotate(period.begin(), period.begin() + 1, period.end());
    }
  }
  Digits out;
  out.reserve(pre.size() + 1);
  out.push_back(-pre[0] - 1);
  out.push_back(1);
  out.push_back(pre[1] - 1);
  out.insert(out.end(), pre.begin() + 2, pre.end());
  return normalize({std::move(out), std::move(period), 1});
}

ContinuedFraction to_canonical(const ContinuedFraction& cf) {
  ContinuedFraction n = normalize(cf);
  if (n.sign > 0) return n;
  n.sign = 1;
  return negate(n);
}

ContinuedFraction conjugate(const ContinuedFraction& input) {
  if (!input.is_periodic()) throw DomainError("conjugate of the finite expansion " + input.to_string());
  ContinuedFraction cf = normalize(input);
  if (cf.sign > 0) return normalize(conjugate_positive(cf));
  // conj(-y) = -conj(y), reported canonically
  cf.sign = 1;
  ContinuedFraction inner = normalize(conjugate_positive(cf));
  if (inner.sign < 0) {
    inner.sign = 1;
    return normalize(inner);
  }
  return negate(inner);
}

bool is_pure_periodic(const ContinuedFraction& input) {
  if (!input.is_periodic()) return false;
  const ContinuedFraction cf = normalize(input);
  return cf.sign > 0 && cf.preperiod.empty() &&
         std::all_of(cf.period.begin(), cf.period.end(), [](const BigInt& d) { return d > 0; });
}

}  // namespace cf

bool is_galois(const QuadraticIrrational& x) {
  if (x.is_rational()) return false;
  const QuadraticIrrational xbar = x.conjugate();
  return x > QuadraticIrrational(1) && xbar > QuadraticIrrational(-1) && xbar < QuadraticIrrational(0);
}

}  // namespace conway
