#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "modfun/arith/bignum.hpp"
#include "modfun/qexpansion/qexpansion.hpp"

namespace modfun {

/// Primitive positive definite form A X^2 + B X Y + C Y^2.
struct QuadraticForm {
  long A = 1, B = 0, C = 1;

  /// Throws ValidationError unless A > 0, D < 0 and gcd(A, B, C) = 1.
  static QuadraticForm make(long A, long B, long C);
  long discriminant() const { return B * B - 4 * A * C; }
  bool is_reduced() const;
  long value(long x, long y) const { return A * x * x + B * x * y + C * y * y; }
  /// Root (-B + sqrt(D)) / (2A) in the upper half plane.
  BigComplex root(mpfr_prec_t bits) const;
  std::string to_string() const;
  friend bool operator==(const QuadraticForm& a, const QuadraticForm& b) {
    return a.A == b.A && a.B == b.B && a.C == b.C;
  }
  friend bool operator<(const QuadraticForm& a, const QuadraticForm& b) {
    return std::tie(a.A, a.B, a.C) < std::tie(b.A, b.B, b.C);
  }
};

/// The reduced form SL2(Z)-equivalent to f.
QuadraticForm reduce(const QuadraticForm& f);
/// All reduced primitive forms of discriminant D, sorted by (A, B, C).
/// Throws ValidationError unless D < 0 and D = 0, 1 mod 4.
std::vector<QuadraticForm> reduced_forms(long D);
inline long class_number(long D) { return static_cast<long>(reduced_forms(D).size()); }

/// Squarefree kernel m of D < 0 (D = f^2 m or 4 f^2 m).
long squarefree_kernel(long D);

struct NSystem {
  long level = 0;
  long D = 0;
  /// Anchor with B0^2 = D mod 4N.
  long b0 = 0;
  std::vector<QuadraticForm> forms;

  /// Re-checks (A_i, N) = 1, N | C_i, B_i = B0 mod 2N and that the forms
  /// reduce to distinct classes covering all of reduced_forms(D). Throws
  /// ConsistencyError on failure.
  void validate() const;
  nlohmann::json to_json() const;
};

/// Smallest B0 >= 0 with B0^2 = D mod 4N; ValidationError when none exists.
long default_anchor(long D, long level);
/// The anchor actually used for a requested B0. When D = 0 mod 4 and only
/// (2 B0)^2 = D mod 4N holds, B0 is read in the sqrt(D/4) normalization
/// and doubled. ValidationError when neither holds.
long effective_anchor(long D, long level, long b0);

/// One form per ideal class with (A, N) = 1, N | C and B = B0 mod 2N, in the
/// order of reduced_forms(D). `b0` goes through effective_anchor.
NSystem build_nsystem(long D, long level, std::optional<long> b0 = std::nullopt);

/// (u + v sqrt(m)) / denom.
struct ImagQuadNum {
  BigInt u = 0, v = 0;
  long denom = 1;
  long m = -1;

  /// Throws ValidationError unless denom is 1 or 2, m < 0 squarefree, and
  /// for denom 2, m = 1 mod 4 and u = v mod 2. Halves out common factors.
  static ImagQuadNum make(BigInt u, BigInt v, long denom, long m);
  BigComplex value(mpfr_prec_t bits) const;
  bool is_zero() const { return u == 0 && v == 0; }
  /// "(3+3*sqrt(-3))/2", "779-157*sqrt(-21)", "5", "sqrt(-7)".
  std::string to_string() const;
  nlohmann::json to_json() const;
  friend bool operator==(const ImagQuadNum& a, const ImagQuadNum& b) {
    return a.u == b.u && a.v == b.v && a.denom == b.denom && a.m == b.m;
  }
};

/// Rounds z to (u + v sqrt(m)) / denom, m = squarefree_kernel(D). Throws
/// PrecisionError when |z - value| exceeds 10^-tol_digits.
ImagQuadNum recognize_OK(const BigComplex& z, long D, long tol_digits);

/// T_{A,F}(-1/alpha), evaluated as T o B(1,1,1,-1) at alpha.
BigComplex eval_T_at_minus_recip(const TupleA& tuple, const IntPoly& f, const BigComplex& alpha, long digits);
/// W_a(alpha).
BigComplex eval_W(const TripleA& triple, const BigComplex& alpha, long digits);
/// j(alpha), after moving alpha into the standard fundamental domain.
BigComplex eval_j(const BigComplex& alpha, long digits);

struct ClassPolynomial {
  NSystem system;
  /// Monic, ordered X^h ... X^0.
  std::vector<ImagQuadNum> coeffs;
  /// Working digits of the last (successful) rung of the precision ladder.
  long digits = 0;

  /// "X^3 + (15-7*sqrt(-59))/2*X^2 - ...".
  std::string to_string() const;
  nlohmann::json to_json() const;
};

struct ClassPolyOptions {
  /// Starting precision; 0 means max(100, 20 h(D)).
  long digits = 0;
  std::ostream* log = nullptr;
};

/// H(X) = prod (X - T(-1/alpha_i)) over an N-system, coefficients recognized
/// in O_K. Doubles the precision up to twice on recognition failure, then
/// throws PrecisionError.
ClassPolynomial class_polynomial(const TupleA& tuple, const IntPoly& f, const NSystem& system,
                                 const ClassPolyOptions& opts = {});
ClassPolynomial class_polynomial(const TupleA& tuple, const IntPoly& f, long D, std::optional<long> b0 = std::nullopt,
                                 const ClassPolyOptions& opts = {});

}  // namespace modfun
