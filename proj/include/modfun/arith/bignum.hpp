#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <string>

namespace modfun {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Canonical decimal text: "n" for integers, "n/d" otherwise.
std::string to_string(const Rational& r);
/// Parses "n" or "n/d"; throws ValidationError on malformed input.
Rational parse_rational(const std::string& text);

/// Bits of mantissa needed for `digits` significant decimal digits.
mpfr_prec_t bits_for_digits(long digits);

/// Minimum working precision any BigFloat is allowed to carry.
inline constexpr long kMinDigits = 30;

/// RAII handle over an MPFR float. Binary operations return a value at the
/// larger of the operand precisions.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t bits = bits_for_digits(kMinDigits));
  BigFloat(long value, mpfr_prec_t bits);
  BigFloat(double value, mpfr_prec_t bits);
  BigFloat(const BigInt& value, mpfr_prec_t bits);
  BigFloat(const Rational& value, mpfr_prec_t bits);
  /// Parses a decimal string ("1.25", "-3e-4").
  BigFloat(const std::string& text, mpfr_prec_t bits);

  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

  static BigFloat pi(mpfr_prec_t bits);
  /// Copy rounded to `bits` of precision.
  BigFloat with_precision(mpfr_prec_t bits) const;

  BigFloat& operator+=(const BigFloat& rhs);
  BigFloat& operator-=(const BigFloat& rhs);
  BigFloat& operator*=(const BigFloat& rhs);
  BigFloat& operator/=(const BigFloat& rhs);
  BigFloat operator-() const;

  friend BigFloat operator+(BigFloat lhs, const BigFloat& rhs) { return lhs += rhs; }
  friend BigFloat operator-(BigFloat lhs, const BigFloat& rhs) { return lhs -= rhs; }
  friend BigFloat operator*(BigFloat lhs, const BigFloat& rhs) { return lhs *= rhs; }
  friend BigFloat operator/(BigFloat lhs, const BigFloat& rhs) { return lhs /= rhs; }

  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.value_, b.value_); }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.value_, b.value_); }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.value_, b.value_); }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.value_, b.value_); }

  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }

  BigFloat abs() const;
  BigFloat sqrt() const;
  BigFloat exp() const;
  BigFloat log() const;
  BigFloat cos() const;
  BigFloat sin() const;
  /// Nearest integer, ties away from zero.
  BigInt round() const;
  BigInt floor() const;
  /// log10|x|; -inf for zero.
  double log10_abs() const;
  double to_double() const;
  /// Fixed-point rendering with `digits` digits after the point.
  std::string to_string(int digits) const;

 private:
  mpfr_t value_;
};

/// Complex number with BigFloat parts sharing one precision.
class BigComplex {
 public:
  explicit BigComplex(mpfr_prec_t bits = bits_for_digits(kMinDigits));
  BigComplex(BigFloat re, BigFloat im);
  BigComplex(const Rational& re, const Rational& im, mpfr_prec_t bits);

  static BigComplex from_digits(long digits);
  /// exp(2*pi*i*num/den)
  static BigComplex root_of_unity(long num, long den, mpfr_prec_t bits);

  BigComplex with_precision(mpfr_prec_t bits) const {
    return BigComplex(re_.with_precision(bits), im_.with_precision(bits));
  }

  const BigFloat& re() const { return re_; }
  const BigFloat& im() const { return im_; }
  mpfr_prec_t precision() const { return re_.precision(); }

  BigComplex& operator+=(const BigComplex& rhs);
  BigComplex& operator-=(const BigComplex& rhs);
  BigComplex& operator*=(const BigComplex& rhs);
  BigComplex& operator/=(const BigComplex& rhs);
  BigComplex& operator*=(const BigFloat& rhs);
  BigComplex operator-() const;

  friend BigComplex operator+(BigComplex lhs, const BigComplex& rhs) { return lhs += rhs; }
  friend BigComplex operator-(BigComplex lhs, const BigComplex& rhs) { return lhs -= rhs; }
  friend BigComplex operator*(BigComplex lhs, const BigComplex& rhs) { return lhs *= rhs; }
  friend BigComplex operator/(BigComplex lhs, const BigComplex& rhs) { return lhs /= rhs; }
  friend BigComplex operator*(BigComplex lhs, const BigFloat& rhs) { return lhs *= rhs; }

  BigComplex conj() const;
  BigFloat norm() const;  // |z|^2
  BigFloat abs() const;
  BigComplex exp() const;
  BigComplex pow(long e) const;
  BigComplex sqrt() const;
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

  std::string to_string(int digits) const;

 private:
  BigFloat re_;
  BigFloat im_;
};

}  // namespace modfun
