#pragma once

#include <memory>
#include <string>
#include <vector>

#include "modfun/arith/bignum.hpp"

namespace modfun {

long gcd(long a, long b);
/// Non-negative residue of a mod m (m > 0).
long mod(long a, long m);
/// Inverse of a modulo m in [1, m); throws ValidationError when gcd(a, m) != 1.
long inverse_mod(long a, long m);
long euler_phi(long n);
/// Positive divisors of n in increasing order.
std::vector<long> divisors(long n);
/// Distinct prime divisors of n in increasing order.
std::vector<long> prime_divisors(long n);

/// Q(zeta_N) presented as Q[x]/(Phi_N). Instances are shared and immutable.
class CyclotomicField {
 public:
  /// Shared instance for level N >= 3 (throws ValidationError otherwise).
  static std::shared_ptr<const CyclotomicField> get(long level);

  long level() const { return level_; }
  /// phi(N), the dimension of the power basis.
  int degree() const { return degree_; }
  /// Phi_N, low to high, length degree() + 1, monic.
  const std::vector<long>& modulus() const { return modulus_; }
  /// x^k mod Phi_N for 0 <= k < N.
  const std::vector<long>& power_row(long k) const { return rows_[static_cast<std::size_t>(k)]; }
  /// Residues 1 <= l < N with gcd(l, N) = 1.
  const std::vector<long>& units() const { return units_; }

  /// Reduces an integer polynomial in x (any length) modulo x^N - 1 and then
  /// Phi_N; the result has exactly degree() entries.
  void reduce(std::vector<BigInt>& poly) const;

  explicit CyclotomicField(long level);

 private:
  long level_;
  int degree_;
  std::vector<long> modulus_;
  std::vector<std::vector<long>> rows_;
  std::vector<long> units_;
};

/// Exact element of Q(zeta_N) in the power basis 1, zeta, ..., zeta^(phi(N)-1).
/// Stored as an integer vector over one positive common denominator with
/// gcd(content, denominator) = 1, so equal numbers have identical storage.
class CyclotomicNumber {
 public:
  using FieldPtr = std::shared_ptr<const CyclotomicField>;

  /// Zero of Q(zeta_N).
  explicit CyclotomicNumber(long level);
  explicit CyclotomicNumber(FieldPtr field);
  CyclotomicNumber(FieldPtr field, std::vector<BigInt> numerators, BigInt denominator);

  static CyclotomicNumber from_rational(long level, const Rational& value);
  static CyclotomicNumber zeta_power(long level, long exponent);
  /// Coefficients of 1, zeta, zeta^2, ... of any length; reduced canonically.
  static CyclotomicNumber from_power_basis(long level, const std::vector<Rational>& coeffs);

  long level() const { return field_->level(); }
  const FieldPtr& field() const { return field_; }
  const std::vector<BigInt>& numerators() const { return num_; }
  const BigInt& denominator() const { return den_; }

  Rational coeff(int i) const;
  std::vector<Rational> coeffs() const;

  bool is_zero() const;
  bool is_one() const;
  /// True when the number lies in Q (all non-constant coordinates vanish).
  bool is_rational() const;
  /// Throws ConsistencyError when the number is not rational.
  Rational rational_value() const;
  /// True when all coordinates are integers (element of Z[zeta]).
  bool is_integral() const { return den_ == 1; }

  CyclotomicNumber& operator+=(const CyclotomicNumber& rhs);
  CyclotomicNumber& operator-=(const CyclotomicNumber& rhs);
  CyclotomicNumber& operator*=(const CyclotomicNumber& rhs);
  CyclotomicNumber& operator*=(const Rational& rhs);
  CyclotomicNumber operator-() const;

  friend CyclotomicNumber operator+(CyclotomicNumber a, const CyclotomicNumber& b) { return a += b; }
  friend CyclotomicNumber operator-(CyclotomicNumber a, const CyclotomicNumber& b) { return a -= b; }
  friend CyclotomicNumber operator*(CyclotomicNumber a, const CyclotomicNumber& b) { return a *= b; }
  friend CyclotomicNumber operator*(CyclotomicNumber a, const Rational& b) { return a *= b; }
  friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b);
  friend bool operator!=(const CyclotomicNumber& a, const CyclotomicNumber& b) { return !(a == b); }

  /// Multiplicative inverse; throws ValidationError on zero.
  CyclotomicNumber inverse() const;
  /// Product of all Galois conjugates, a rational number.
  Rational norm() const;

  /// Numeric value given zeta^0 .. zeta^(N-1) at some precision.
  BigComplex to_complex(const std::vector<BigComplex>& zeta_powers) const;
  BigComplex to_complex(mpfr_prec_t bits) const;

  /// Human-readable, e.g. "1/2 - 3*z^2" (z = zeta_N).
  std::string to_string() const;

 private:
  void canonicalize();
  void check_level(const CyclotomicNumber& other) const;

  FieldPtr field_;
  std::vector<BigInt> num_;
  BigInt den_;
};

/// Image of x under zeta -> zeta^l; throws ValidationError unless gcd(l, N) = 1.
CyclotomicNumber galois_sigma(const CyclotomicNumber& x, long l);

/// zeta^0 .. zeta^(N-1) at the given precision.
std::vector<BigComplex> zeta_powers(long level, mpfr_prec_t bits);

}  // namespace modfun
