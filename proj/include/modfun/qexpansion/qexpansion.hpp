#pragma once

#include <string>
#include <utility>
#include <vector>

#include "modfun/arith/qseries.hpp"
#include "modfun/modgroup/modgroup.hpp"

namespace modfun {

/// Ordered tuple [a_1, ..., a_n] of triples at one level.
struct TupleA {
  std::vector<TripleA> triples;

  /// Throws ValidationError on an empty tuple or mixed levels.
  static TupleA make(std::vector<TripleA> triples);
  long level() const { return triples.front().level; }
  std::size_t size() const { return triples.size(); }
  std::string to_string() const;
};

/// Integer polynomial in X1..Xn as a sorted list of monomials.
class IntPoly {
 public:
  using Exponents = std::vector<int>;
  using Term = std::pair<Exponents, BigInt>;

  IntPoly() = default;
  /// Merges repeated exponent vectors and drops zero coefficients. All
  /// exponent vectors must have length `nvars` with non-negative entries.
  IntPoly(int nvars, std::vector<Term> terms);

  static IntPoly constant(int nvars, const BigInt& c);
  /// X1 * X2 * ... * Xn.
  static IntPoly product_of_variables(int nvars);

  int nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  /// Largest exponent of X_(i+1) over all monomials.
  int max_degree(int i) const;
  std::string to_string() const;
  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.nvars_ == b.nvars_ && a.terms_ == b.terms_; }

 private:
  int nvars_ = 0;
  std::vector<Term> terms_;
};

/// phi_s[B]_2 for a matrix with bottom row (c, d): the two-branch expansion
/// with s* = mu(sc) s d, every exponent below `trunc` exact. Throws
/// ValidationError when s = 0 mod N.
QSeries phi_series(long level, long s, long c, long d, QSeries::Exponent trunc);
inline QSeries phi_series(long level, long s, const CosetRep& rep, QSeries::Exponent trunc) {
  return phi_series(level, s, rep.t, rep.d(), trunc);
}

/// Order at the cusp 1/l: min({l a1},{l a3}) - min({l a2},{l a3}).
long order_at_cusp(const TripleA& triple, long ell);

/// W_a o B = (phi_a1 - phi_a3) / (phi_a2 - phi_a3) at bottom row (c, d),
/// exact below `trunc`. Throws PrecisionError when the denominator vanishes.
QSeries w_series(const TripleA& triple, long c, long d, QSeries::Exponent trunc);
inline QSeries w_series(const TripleA& triple, const CosetRep& rep, QSeries::Exponent trunc) {
  return w_series(triple, rep.t, rep.d(), trunc);
}

/// T_{A,F} o B as the sum over lambda in S_N of F(W_{lambda a_i} o B).
QSeries t_series(const TupleA& tuple, const IntPoly& f, long c, long d, QSeries::Exponent trunc);
inline QSeries t_series(const TupleA& tuple, const IntPoly& f, const CosetRep& rep, QSeries::Exponent trunc) {
  return t_series(tuple, f, rep.t, rep.d(), trunc);
}
/// Lower bound for the valuation of T_{A,F} o B for bottom-left entry c.
QSeries::Exponent t_valuation_bound(const TupleA& tuple, const IntPoly& f, long c);

/// sigma_l applied to phi_s[B]_2 (first) and the series the Galois shift
/// predicts (second): phi_{ls}[B]_2 when {st} = 0, else phi_s at
/// B(t, l* u, l v, l k).
std::pair<QSeries, QSeries> sigma_shift_check(long level, long s, const CosetRep& rep, long ell,
                                              QSeries::Exponent trunc);

/// Numeric phi_s[B]_2(tau) for bottom row (c, d) from the closed Lambert form
/// of the same expansion; accurate to `digits`.
BigComplex phi_value(long level, long s, long c, long d, const BigComplex& tau, long digits);
/// Numeric W_a(B tau) for bottom row (c, d) (weight factors cancel).
BigComplex w_value(const TripleA& triple, long c, long d, const BigComplex& tau, long digits);
/// Numeric T_{A,F}(B tau) for bottom row (c, d).
BigComplex t_value(const TupleA& tuple, const IntPoly& f, long c, long d, const BigComplex& tau, long digits);

}  // namespace modfun
