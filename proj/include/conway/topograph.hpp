#pragma once

// Conway's topograph of an integer binary quadratic form Q = ax^2 + hxy + by^2.
//
// A vertex of the topograph is a superbase (e1, e2, e1+e2), stored as the SL2
// matrix whose columns are e1 and e2 together with the values
// (Q(e1), Q(e2), Q(e1+e2)). From the root vertex the two turns are
//   L: (e1, e2) -> (e1, e1+e2)      R: (e1, e2) -> (e1+e2, e2)
// which are right multiplication by [[1,1],[0,1]] and [[1,0],[1,1]].

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "conway/cfrac.hpp"
#include "conway/exact.hpp"

namespace conway {

/// [[p, q], [r, s]]; columns (p, r) and (q, s) are the basis vectors.
struct Mat2 {
  BigInt p{1}, q{0}, r{0}, s{1};

  static Mat2 identity() { return {}; }
  static Mat2 left() { return {1, 1, 0, 1}; }
  static Mat2 right() { return {1, 0, 1, 1}; }

  BigInt det() const { return p * s - q * r; }
  BigInt trace() const { return p + s; }

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.p * y.p + x.q * y.r, x.p * y.q + x.q * y.s, x.r * y.p + x.s * y.r, x.r * y.q + x.s * y.s};
  }
  friend bool operator==(const Mat2&, const Mat2&) = default;

  std::string to_string() const;
};

/// Row-major 3x3 integer matrix.
struct Mat3 {
  std::array<BigInt, 9> m{};

  static Mat3 identity();
  const BigInt& operator()(int i, int j) const { return m[static_cast<std::size_t>(3 * i + j)]; }
  BigInt& operator()(int i, int j) { return m[static_cast<std::size_t>(3 * i + j)]; }
  BigInt trace() const { return m[0] + m[4] + m[8]; }
  std::array<BigInt, 3> apply(const std::array<BigInt, 3>& v) const;

  friend Mat3 operator*(const Mat3& x, const Mat3& y);
  friend bool operator==(const Mat3&, const Mat3&) = default;
};

struct QuadraticForm {
  BigInt a, h, b;

  BigInt discriminant() const { return h * h - 4 * a * b; }
  BigInt operator()(const BigInt& x, const BigInt& y) const { return a * x * x + h * x * y + b * y * y; }
  friend bool operator==(const QuadraticForm&, const QuadraticForm&) = default;

  /// Polynomial text such as `x^2-2*x*y-2*y^2`.
  std::string to_string() const;
  /// Accepts `a,h,b` or a polynomial in x and y of degree 2.
  static QuadraticForm parse(std::string_view text);
};

/// Values (Q(e1), Q(e2), Q(e1+e2)) at a vertex.
struct SuperbaseTriple {
  BigInt a, b, c;

  BigInt h() const { return c - a - b; }
  friend bool operator==(const SuperbaseTriple&, const SuperbaseTriple&) = default;
  std::string to_string() const;
};

enum class Turn : char { L = 'L', R = 'R' };
using TurnWord = std::vector<Turn>;

std::string to_string(const TurnWord& word);
/// `LRRL`, `L,R,R,L` or `L R R L`; the empty string is the empty word.
TurnWord parse_turns(std::string_view text);
Turn mirror(Turn t);

/// Digit blocks alternate L, R, L, ... starting with L: c0 left turns, then
/// c1 right turns, and so on. A zero digit contributes nothing but still
/// flips the parity. Digits must be nonnegative.
TurnWord turns_from_digits(const std::vector<BigInt>& digits, bool start_with_left = true);

/// Turns of one full period of a periodic path starting after `offset` digits:
/// the block of `period` (doubled when its length is odd so the L/R parity
/// realigns). `offset` only fixes the parity of the first block.
TurnWord period_turns(const std::vector<BigInt>& period, std::size_t offset);

class TopographCursor {
 public:
  explicit TopographCursor(QuadraticForm form);

  const QuadraticForm& form() const { return form_; }
  const Mat2& basis() const { return basis_; }
  const SuperbaseTriple& triple() const { return triple_; }

  TopographCursor step(Turn turn) const;
  void advance(Turn turn);

 private:
  QuadraticForm form_;
  Mat2 basis_;
  SuperbaseTriple triple_;
};

SuperbaseTriple form_values(const QuadraticForm& q);
/// Arithmetic progression rule. L: (a, c, 2(a+c)-b); R: (c, b, 2(b+c)-a).
SuperbaseTriple step(const SuperbaseTriple& t, Turn turn);
/// Triples after each turn, the initial triple first.
std::vector<SuperbaseTriple> walk(const QuadraticForm& q, const TurnWord& word);

/// Q o A, i.e. A^T Q A. Throws DomainError unless det A = 1.
QuadraticForm transform_form(const QuadraticForm& q, const Mat2& a);

/// The matrix sending the doubled coefficient vector (2a, h, 2b) of Q to that
/// of Q o A:
///   [[p^2, 2pr, r^2], [pq, ps+qr, rs], [q^2, 2qs, s^2]].
/// It is a right action: hat(AB) = hat(B) hat(A). Throws DomainError unless
/// det A = 1.
Mat3 hat_matrix(const Mat2& a);
std::array<BigInt, 3> doubled_coefficients(const QuadraticForm& q);

enum class TriplePosition { A, B, C };
/// Replaces the chosen entry x by 2(sum of the other two) - x.
SuperbaseTriple vieta_flip(const SuperbaseTriple& t, TriplePosition pos);
/// a^2 + b^2 + c^2 - 2ab - 2ac - 2bc, which equals h^2 - 4ab.
BigInt markov_discriminant(const SuperbaseTriple& t);

enum class FormClass {
  PositiveDefinite,
  NegativeDefinite,
  Semidefinite,
  IndefiniteAnisotropic,
  IndefiniteIsotropic,
};
std::string_view to_string(FormClass c);
FormClass classify(const QuadraticForm& q);

/// Roots of Q(x, 1) = 0. The dominant root has the larger modulus (the
/// positive one on a tie). std::nullopt stands for the root at infinity,
/// which occurs when a = 0.
struct FormRoots {
  std::optional<QuadraticIrrational> dominant;
  std::optional<QuadraticIrrational> conjugate;
};
/// Throws DomainError for D < 0 and for the zero form.
FormRoots roots(const QuadraticForm& q);

/// ab < 0, ac < 0 and a(2a + 2b - c) > 0 at the root vertex.
bool is_galois_form(const QuadraticForm& q);

/// A river edge traversed in a fixed direction: the faces on either side and
/// the third face at the vertex the edge is entered from.
struct RiverEdge {
  BigInt positive;
  BigInt negative;
  BigInt behind;

  /// The same edge traversed the other way.
  RiverEdge reversed() const { return {positive, negative, 2 * (positive + negative) - behind}; }
  friend bool operator==(const RiverEdge&, const RiverEdge&) = default;
};

struct RiverDescription {
  /// Path from the root vertex to the river. When `reflected` is set the
  /// path lives in the topograph of Q(x, -y), whose root vertex is the other
  /// end of Q's root edge.
  TurnWord entry_path;
  std::vector<BigInt> entry_digits;
  bool reflected = false;
  /// Root of the walked form followed by the path, and its expansion.
  QuadraticIrrational path_root;
  ContinuedFraction path_expansion;
  /// One period of turns along the river, starting where the period of the
  /// expansion starts.
  TurnWord river_period;
  std::vector<RiverEdge> period_states;
  SuperbaseTriple landing;  // vertex where the entry path meets the river
  QuadraticIrrational dominant_root;
  QuadraticIrrational conjugate_root;
};

/// Locates the river of an indefinite anisotropic form from the expansion of
/// its root and cross-checks it against trace_river_by_signs. Throws
/// DomainError for any other class.
RiverDescription find_river(const QuadraticForm& q);

/// Independent river search: Vieta-flip the largest entry while all three
/// values share a sign, then follow the edges separating signs until an edge
/// state repeats. Returns one cycle.
std::vector<RiverEdge> trace_river_by_signs(const QuadraticForm& q);

/// Equality of periodic edge sequences up to rotation, direction and
/// repetition of a shorter cycle.
bool same_river_cycle(const std::vector<RiverEdge>& x, const std::vector<RiverEdge>& y);

struct LakeDescription {
  /// Primitive zeros of Q, second coordinate positive (or (1, 0)).
  std::array<std::pair<BigInt, BigInt>, 2> zero_vectors;
  /// Q o reduction = y(m x - n y) with m > 0 and 0 <= n < m.
  BigInt m, n;
  Mat2 reduction;
  QuadraticForm reduced;
  /// Turns of the finite river between the two lakes, read from the finite
  /// expansion of n/m. Empty when the lakes are adjacent (n = 0).
  TurnWord river_word;
};

/// Throws DomainError unless Q is indefinite isotropic.
LakeDescription find_lakes(const QuadraticForm& q);

}  // namespace conway
