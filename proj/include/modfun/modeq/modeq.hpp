#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "modfun/arith/qseries.hpp"
#include "modfun/qexpansion/qexpansion.hpp"

namespace modfun {

/// Polynomial in j with rational coefficients; coeffs()[k] multiplies j^k.
class JPoly {
 public:
  JPoly() = default;
  explicit JPoly(std::vector<Rational> coeffs);
  static JPoly constant(const Rational& c) { return JPoly({c}); }

  const std::vector<Rational>& coeffs() const { return coeffs_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_integral() const;
  Rational coeff(int k) const;

  Rational evaluate(const Rational& j) const;
  BigComplex evaluate(const BigComplex& j) const;

  /// "22*j - 24250028", descending powers.
  std::string to_string() const;
  friend bool operator==(const JPoly& a, const JPoly& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const JPoly& a, const JPoly& b) { return !(a == b); }

 private:
  std::vector<Rational> coeffs_;
};

/// Monic polynomial in X with JPoly coefficients; coeffs()[i] multiplies X^(d-i).
class BivarPoly {
 public:
  BivarPoly() = default;
  explicit BivarPoly(std::vector<JPoly> coeffs);

  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<JPoly>& coeffs() const { return coeffs_; }
  /// C_i, the coefficient of X^(d-i).
  const JPoly& c(long i) const { return coeffs_.at(static_cast<std::size_t>(i)); }
  bool is_integral() const;
  /// Highest power of j appearing.
  int j_degree() const;

  /// Univariate coefficients at j = j0, ordered X^d ... X^0.
  std::vector<Rational> specialize(const Rational& j0) const;
  std::vector<BigComplex> specialize(const BigComplex& j0) const;

  /// Human-readable form, "X^8 - 36*X^7 + ... - (j + 232500)*X + (8*j + 140625)".
  std::string to_string() const;
  /// {"degX": d, "coeffs": [[c_0, c_1, ...], ...]} with coefficient lists in
  /// ascending powers of j, one list per X^d ... X^0, numbers as strings.
  nlohmann::json to_json() const;
  static BivarPoly from_json(const nlohmann::json& doc);

  friend bool operator==(const BivarPoly& a, const BivarPoly& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::vector<JPoly> coeffs_;
};

/// j = q^-N + 744 + 196884 q^N + ... in q = exp(2 pi i tau / N), exact below `trunc`.
QSeries j_series(long level, QSeries::Exponent trunc);
/// j as a series in x = q^N (= exp(2 pi i tau)), exact below x^trunc_x.
QSeries j_series_x(long level, QSeries::Exponent trunc_x);

/// The JPoly P with P(j) = f below f's truncation, for f a series in q whose
/// terms sit at multiples of N. Throws ConsistencyError when f is not
/// rational or not a polynomial in j, PrecisionError when f carries no
/// non-negative exponent to check against.
JPoly reduce_to_jpoly(const QSeries& f, long level);
/// Same for a series already written in x = q^N.
JPoly reduce_to_jpoly_x(const QSeries& fx);

struct ModeqOptions {
  /// Number of x-exponents >= 0 that must cancel exactly after reduction.
  long guard = 16;
  /// Progress messages (truncation used, retries); nothing when null.
  std::ostream* log = nullptr;
};

/// Conjugates g(zeta^k q), 0 <= k < size, of one base expansion g.
struct ConjugateGroup {
  std::function<QSeries(QSeries::Exponent trunc)> base;
  /// Lower bound for the valuation of the base expansion.
  QSeries::Exponent valuation_bound = 0;
  long size = 1;
};

/// prod over all conjugates of (X - g), reduced coefficientwise to JPolys.
BivarPoly modular_equation(long level, const std::vector<ConjugateGroup>& groups, const ModeqOptions& opts = {});

/// Phi_{A,F}(X, j), degree psi0(N). Throws ConsistencyError when N is odd,
/// every triple lies in E2 and a coefficient is not integral.
BivarPoly modular_equation_T(const TupleA& tuple, const IntPoly& f, const ModeqOptions& opts = {});
/// Phi[W_a](X, j), degree psi1(N); needs a in E1.
BivarPoly modular_equation_W(const TripleA& triple, const ModeqOptions& opts = {});

}  // namespace modfun
