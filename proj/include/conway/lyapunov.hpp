#pragma once

// Growth of matrix products and form values along paths in the Farey tree.
//
// A path is a turn word, possibly with a repeating tail. A_n is the product
// of the first n turn matrices and Q_n = Q o A_n is the form seen at the n-th
// vertex. Everything here is exact except the final logarithms, which are
// evaluated with MPFR at 256 bits and rounded once.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "conway/cfrac.hpp"
#include "conway/exact.hpp"
#include "conway/topograph.hpp"

namespace conway {

class PathSpec {
 public:
  /// The path of xi >= 0: xi = 0 is the endless R ray, a positive rational
  /// gives the finite path of its digit blocks, a quadratic irrational a
  /// path with periodic tail. Negative xi is rejected: Lambda(-xi) = Lambda(xi)
  /// by the reflection x -> -x, so walk the mirrored path instead.
  static PathSpec from_value(const QuadraticIrrational& xi);
  static PathSpec from_expansion(const ContinuedFraction& cf);
  /// An explicit finite word, or an endlessly repeated one.
  static PathSpec from_turns(TurnWord word, bool repeat = false);
  /// A value (`(1+sqrt(5))/2`), an expansion (`[0;(2)]`) or a turn word
  /// (`LRRL`, `(LR)` for a repeated word).
  static PathSpec parse(std::string_view text);

  const TurnWord& head() const { return head_; }
  const TurnWord& cycle() const { return cycle_; }
  bool is_finite() const { return cycle_.empty(); }
  /// Number of turns of a finite path.
  std::size_t length() const { return head_.size(); }
  Turn turn(std::size_t i) const;
  /// R for 0 <= xi < 1; an empty path counts as R.
  Turn first_turn() const;
  const std::string& label() const { return label_; }

 private:
  TurnWord head_;
  TurnWord cycle_;
  std::string label_;
};

struct PathMatrices {
  std::vector<Mat2> products;  // A_1, ..., A_k
  bool exhausted = false;      // the path ended before the requested count
};
PathMatrices path_matrices(const PathSpec& path, std::size_t n);

/// (tr + sqrt(tr^2 - 4)) / 2, or 1 when tr <= 2. Requires det A = 1 and
/// nonnegative entries.
QuadraticIrrational spectral_radius(const Mat2& a);

/// w_n: r_n + s_n for paths starting with R, p_n + q_n for paths starting
/// with L. The second is the first one for the mirrored path.
BigInt growth_weight(const Mat2& a, Turn first);

/// ln(x) / divisor to `digits` decimals, x > 0.
std::string log_ratio_decimal(const BigInt& x, const BigInt& divisor, int digits);
double log_ratio(const BigInt& x, const BigInt& divisor);

/// Lambda = ln(rho) / turns for a periodic path; turns = 0 is the zero
/// exponent of a finite path.
struct MonoidExponent {
  QuadraticIrrational rho{1};
  std::size_t turns = 0;

  bool is_zero() const { return turns == 0; }
  std::string to_decimal(int digits = 12) const;
  double value() const;
};

/// rho is the spectral radius of the period block and turns its length: the
/// digit sum of the period, doubled when the period has odd length (the L/R
/// parity only realigns after two copies).
MonoidExponent lambda_monoid_exact(const ContinuedFraction& cf);
MonoidExponent lambda_monoid_exact(const QuadraticIrrational& xi);

struct GrowthPoint {
  std::size_t n = 0;
  BigInt w;       // w_n
  BigInt norm;    // max(|a_n|, |b_n|, |c_n|), forms only
  BigInt norm_h;  // max(|a_n|, |b_n|, |h_n|), forms only
  double log_ratio = 0;  // ln(w_n)/n or ln|Q_n|/n
};

struct GrowthSeries {
  enum class Kind { Monoid, Form };
  Kind kind = Kind::Monoid;
  std::vector<GrowthPoint> points;  // n = 1, 2, ...
  bool exhausted = false;
  /// Largest log ratio over the last tenth of the steps; a finite stand-in
  /// for the limsup.
  double tail_max = 0;
  /// For a periodic path the exact exponent of its tail.
  std::optional<MonoidExponent> exact;

  /// High-precision rendering of the last log ratio.
  std::string last_log_ratio(int digits = 12) const;
};

GrowthSeries lambda_monoid(const PathSpec& path, std::size_t n);
/// Throws DomainError for the zero form.
GrowthSeries lambda_form(const QuadraticForm& q, const PathSpec& path, std::size_t n);

struct SandwichReport {
  bool holds = true;
  std::size_t steps = 0;
  std::optional<std::size_t> first_failure;
};

/// Checks w_n^2 <= 2|Q_n|_h and |Q_n|_h <= 4 w_n^2 |Q|_h at every step, in
/// integers. Throws DomainError unless a, b, h >= 1.
SandwichReport sandwich_check(const QuadraticForm& q, const PathSpec& path, std::size_t n);

struct TheoremRatio {
  std::size_t n = 0;
  double ratio = 0;
  std::string decimal;
};

/// ln|Q_n| / (2 ln w_n) at the last step reached. Tends to 1 off the river
/// ends and to 0 along them.
TheoremRatio theorem_ratio(const QuadraticForm& q, const PathSpec& path, std::size_t n, int digits = 12);

}  // namespace conway
