#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "modfun/arith/cyclotomic.hpp"

namespace modfun {

/// Truncated Laurent series in q = exp(2*pi*i*tau/N) with coefficients in
/// Q(zeta_N).
///
/// Coefficients are stored densely from the valuation up to the last nonzero
/// term; every exponent below trunc() that is not stored is zero. A series
/// without trunc() is exact (a Laurent polynomial). Arithmetic follows the
/// pessimistic rule: a result never claims exponents its operands do not
/// determine.
class QSeries {
 public:
  using Exponent = std::int64_t;

  /// Exact zero.
  explicit QSeries(long level);
  /// Zero up to (but excluding) q^trunc.
  static QSeries zero(long level, std::optional<Exponent> trunc);
  static QSeries constant(const CyclotomicNumber& c, std::optional<Exponent> trunc = std::nullopt);
  static QSeries monomial(const CyclotomicNumber& c, Exponent exponent, std::optional<Exponent> trunc = std::nullopt);
  /// coeffs[i] multiplies q^(first + i).
  static QSeries from_coefficients(long level, Exponent first, std::vector<CyclotomicNumber> coeffs,
                                   std::optional<Exponent> trunc);

  long level() const { return field_->level(); }
  const CyclotomicNumber::FieldPtr& field() const { return field_; }

  bool is_exact() const { return !trunc_.has_value(); }
  std::optional<Exponent> trunc() const { return trunc_; }
  /// Zero up to trunc (or identically, when exact).
  bool is_zero() const { return coeffs_.empty(); }
  /// Exponent of the lowest nonzero term; throws PrecisionError on zero.
  Exponent valuation() const;
  const CyclotomicNumber& leading() const;
  /// Coefficient of q^e; throws PrecisionError when e is not determined.
  CyclotomicNumber coefficient(Exponent e) const;
  /// Stored window: coefficients of q^first_exponent() ...
  const std::vector<CyclotomicNumber>& coefficients() const { return coeffs_; }
  Exponent first_exponent() const { return first_; }
  /// Exponent just past the last stored term.
  Exponent end_exponent() const { return first_ + static_cast<Exponent>(coeffs_.size()); }

  bool is_rational() const;
  bool is_integral() const;

  QSeries& operator+=(const QSeries& rhs);
  QSeries& operator-=(const QSeries& rhs);
  QSeries& operator*=(const CyclotomicNumber& c);
  QSeries& operator*=(const Rational& c);
  QSeries operator-() const;
  friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
  friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
  friend QSeries operator*(QSeries a, const CyclotomicNumber& c) { return a *= c; }
  friend QSeries operator*(QSeries a, const Rational& c) { return a *= c; }
  friend QSeries operator*(const QSeries& a, const QSeries& b) { return multiply(a, b); }
  /// Same truncation and identical coefficients.
  friend bool operator==(const QSeries& a, const QSeries& b);
  friend bool operator!=(const QSeries& a, const QSeries& b) { return !(a == b); }

  static QSeries multiply(const QSeries& a, const QSeries& b, std::optional<Exponent> cap = std::nullopt);

  /// 1/f. Exact non-monomial input needs `relative_terms`, the number of
  /// terms to keep counted from the valuation.
  QSeries inverse(std::optional<Exponent> relative_terms = std::nullopt) const;
  QSeries pow(long e) const;
  /// f(c*q): the coefficient of q^m is multiplied by c^m.
  QSeries scale_q(const CyclotomicNumber& c) const;
  /// f(zeta^k * q).
  QSeries scale_q_by_zeta(long k) const;
  /// Coefficientwise Galois action zeta -> zeta^l.
  QSeries sigma(long l) const;
  /// Drops all terms at exponents >= t (no-op if already coarser).
  QSeries truncated(Exponent t) const;

  /// Reads a series in q^step as a series in x = q^step. Throws
  /// ConsistencyError if a nonzero term sits off the multiples of step.
  QSeries decimate(long step) const;
  /// Inverse of decimate: substitutes q^step for q.
  QSeries inflate(long step) const;
  /// Largest divisor of `bound` dividing every exponent with a nonzero term.
  long exponent_step(long bound) const;

  /// Equal on every exponent both operands determine.
  bool agrees_with(const QSeries& other) const;

  std::string to_string(int max_terms = 8) const;

 private:
  QSeries(CyclotomicNumber::FieldPtr field, Exponent first, std::vector<CyclotomicNumber> coeffs,
          std::optional<Exponent> trunc);
  void normalize();
  void check_level(const QSeries& other) const;
  // Lower bound for the valuation: valuation(), trunc for a finite zero, nullopt for exact zero.
  std::optional<Exponent> valuation_bound() const;

  CyclotomicNumber::FieldPtr field_;
  Exponent first_ = 0;
  std::vector<CyclotomicNumber> coeffs_;
  std::optional<Exponent> trunc_;
};

/// series_arith entry points under their operation names.
inline QSeries series_add(const QSeries& a, const QSeries& b) { return a + b; }
inline QSeries series_mul(const QSeries& a, const QSeries& b) { return a * b; }
inline QSeries series_invert(const QSeries& a) { return a.inverse(); }
inline QSeries series_pow(const QSeries& a, long e) { return a.pow(e); }
inline QSeries series_sigma(const QSeries& f, long l) { return f.sigma(l); }

struct SeriesValue {
  BigComplex value;
  /// Set when |q|^trunc is within a factor 10 of the requested 10^-digits.
  bool tail_margin_small = false;
};

/// Default guard digits added to the working precision of evaluations.
inline constexpr long kGuardDigits = 15;

/// Evaluates f at tau (Im tau > 0) with q = exp(2*pi*i*tau/N). Throws
/// ValidationError for Im tau <= 0 and PrecisionError when |q|^trunc is not
/// below 10^-digits.
SeriesValue series_eval(const QSeries& f, const BigComplex& tau, long digits);

}  // namespace modfun
