#pragma once

// Continued fractions of rationals and real quadratic irrationals.
//
// A ContinuedFraction is sign * [preperiod ; (period)]. The canonical form
// produced by expand() has sign +1, every digit after position 0 positive,
// a minimal period, and (when the preperiod is nonempty) a last preperiod
// digit different from the last period digit. Negative presentations
// -[c0, c1, ...] are kept where the conjugation formulas produce them.

#include <string>
#include <string_view>
#include <vector>

#include "conway/exact.hpp"

namespace conway {

struct ContinuedFraction {
  std::vector<BigInt> preperiod;
  std::vector<BigInt> period;  // empty for rationals
  int sign = 1;

  bool is_periodic() const { return !period.empty(); }

  friend bool operator==(const ContinuedFraction&, const ContinuedFraction&) = default;

  /// `[1,3,1,4;(7,2,3,9)]`, `[;(1)]`, `[1,1,2]`, `-[0;(1)]`.
  std::string to_string() const;
  static ContinuedFraction parse(std::string_view text);
};

namespace cf {

ContinuedFraction expand(const Rational& x);
/// Periodic expansion of an irrational; throws DomainError for rationals.
ContinuedFraction expand(const QuadraticIrrational& x);
/// Dispatches on rationality.
ContinuedFraction expand_any(const QuadraticIrrational& x);

/// Exact value; periodic blocks are solved as the fixed point of the period.
QuadraticIrrational value(const ContinuedFraction& cf);

/// Removes zero digits ([.., c, 0, d, ..] -> [.., c+d, ..]), merges a
/// trailing 1 of a finite expansion, minimizes and rotates the period.
/// Digits that stay non-positive past position 0 become a negative
/// presentation. The value is preserved exactly.
ContinuedFraction normalize(ContinuedFraction cf);

/// Canonical expansion of -x via -[c0,c1,c2,..] = [-c0-1, 1, c1-1, c2, ..].
ContinuedFraction negate(const ContinuedFraction& cf);

/// Rewrites a negative presentation as the canonical (sign +1) expansion.
ContinuedFraction to_canonical(const ContinuedFraction& cf);

/// Expansion of the Galois conjugate, computed on the digits alone.
/// Throws DomainError for finite input.
ContinuedFraction conjugate(const ContinuedFraction& cf);

bool is_pure_periodic(const ContinuedFraction& cf);

}  // namespace cf

/// x > 1 and -1 < conjugate(x) < 0, decided exactly.
bool is_galois(const QuadraticIrrational& x);

}  // namespace conway
