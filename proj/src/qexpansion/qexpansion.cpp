#include "modfun/qexpansion/qexpansion.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "modfun/errors.hpp"

namespace modfun {

using Exponent = QSeries::Exponent;

TupleA TupleA::make(std::vector<TripleA> triples) {
  if (triples.empty()) throw ValidationError("tuple needs at least one triple");
  for (const auto& t : triples) {
    if (t.level != triples.front().level) throw ValidationError("all triples of a tuple must share one level");
  }
  return TupleA{std::move(triples)};
}

std::string TupleA::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < triples.size(); ++i) s += (i ? "," : "") + triples[i].to_string();
  return s + "]";
}

IntPoly::IntPoly(int nvars, std::vector<Term> terms) : nvars_(nvars) {
  if (nvars < 1) throw ValidationError("polynomial needs at least one variable");
  std::map<Exponents, BigInt> merged;
  for (auto& [e, c] : terms) {
    if (static_cast<int>(e.size()) != nvars) throw ValidationError("monomial has the wrong number of variables");
    for (int x : e) {
      if (x < 0) throw ValidationError("negative exponent in polynomial");
    }
    merged[e] += c;
  }
  for (auto& [e, c] : merged) {
    if (c != 0) terms_.emplace_back(e, c);
  }
}

IntPoly IntPoly::constant(int nvars, const BigInt& c) { return IntPoly(nvars, {{Exponents(nvars, 0), c}}); }

IntPoly IntPoly::product_of_variables(int nvars) { return IntPoly(nvars, {{Exponents(nvars, 1), 1}}); }

int IntPoly::max_degree(int i) const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<std::size_t>(i)]);
  return d;
}

std::string IntPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mono;
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "X" + std::to_string(i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    BigInt a = abs(c);
    std::string term;
    if (mono.empty()) {
      term = a.get_str();
    } else {
      term = (a == 1) ? mono : a.get_str() + "*" + mono;
    }
    if (out.empty()) {
      out = (c < 0 ? "-" : "") + term;
    } else {
      out += (c < 0 ? " - " : " + ") + term;
    }
  }
  return out;
}

QSeries phi_series(long level, long s, long c, long d, Exponent trunc) {
  if (mod(s, level) == 0) throw ValidationError("phi_s needs s != 0 mod N");
  const auto field = CyclotomicField::get(level);
  const auto bm = brace_mu(s * c, level);
  const long e = bm.brace;
  const long sstar = mod(bm.mu * mod(s * d, level), level);
  if (trunc <= 0) return QSeries::zero(level, trunc);

  // rows[x][k]: integer coefficient of zeta^k q^x.
  const auto len = static_cast<std::size_t>(trunc);
  std::vector<std::vector<long long>> rows(len, std::vector<long long>(static_cast<std::size_t>(level), 0));
  auto add = [&](Exponent x, long k, long long val) {
    if (x >= 0 && x < trunc) rows[static_cast<std::size_t>(x)][static_cast<std::size_t>(mod(k, level))] += val;
  };

  if (e != 0) {
    for (long n = 1; e * n < trunc; ++n) add(e * n, sstar * n, n);
  }
  // Double sum over m, n >= 1: in both branches the exponent mnN - e n is the smallest.
  for (long n = 1; n * (level - e) < trunc; ++n) {
    const long k = mod(sstar * n, level);
    for (long m = 1; n * (m * level - e) < trunc; ++m) {
      if (e == 0) {
        add(m * n * level, 0, -2 * n);
        add(m * n * level, k, n);
        add(m * n * level, -k, n);
      } else {
        add(n * (m * level + e), k, n);
        add(n * (m * level - e), -k, n);
        add(m * n * level, 0, -2 * n);
      }
    }
  }

  std::vector<CyclotomicNumber> coeffs;
  coeffs.reserve(len);
  for (auto& row : rows) {
    std::vector<BigInt> num(row.size());
    for (std::size_t k = 0; k < row.size(); ++k) num[k] = static_cast<long>(row[k]);
    coeffs.emplace_back(field, std::move(num), 1);
  }
  if (e == 0) {
    const auto z = CyclotomicNumber::zeta_power(level, sstar);
    const auto one_minus = CyclotomicNumber::from_rational(level, 1) - z;
    coeffs[0] += z * (one_minus * one_minus).inverse();
  }
  return QSeries::from_coefficients(level, 0, std::move(coeffs), trunc);
}

long order_at_cusp(const TripleA& triple, long ell) {
  const long n = triple.level;
  const long b1 = brace(ell * triple.a[0], n), b2 = brace(ell * triple.a[1], n), b3 = brace(ell * triple.a[2], n);
  return std::min(b1, b3) - std::min(b2, b3);
}

QSeries w_series(const TripleA& triple, long c, long d, Exponent trunc) {
  const long n = triple.level;
  Exponent work = trunc + n;
  for (int attempt = 0; attempt < 4; ++attempt) {
    const QSeries p3 = phi_series(n, triple.a[2], c, d, work);
    const QSeries num = phi_series(n, triple.a[0], c, d, work) - p3;
    const QSeries den = phi_series(n, triple.a[1], c, d, work) - p3;
    if (den.is_zero() || num.is_zero()) {
      work *= 2;
      continue;
    }
    const Exponent vn = num.valuation(), vd = den.valuation();
    const Exponent need = trunc + std::max(vd, 2 * vd - vn);
    if (need > work) {
      work = need;
      continue;
    }
    return (num * den.inverse()).truncated(trunc);
  }
  throw PrecisionError("W" + triple.to_string() + " denominator vanishes to the working precision");
}

Exponent t_valuation_bound(const TupleA& tuple, const IntPoly& f, long c) {
  const long n = tuple.level();
  Exponent best = 0;
  bool any = false;
  for (long lambda : sn_representatives(n)) {
    std::vector<long> orders;
    for (const auto& t : tuple.triples) orders.push_back(order_at_cusp(act_on_triple(lambda, t), c));
    for (const auto& [e, coef] : f.terms()) {
      Exponent v = 0;
      for (std::size_t i = 0; i < orders.size(); ++i) v += e[i] * orders[i];
      best = any ? std::min(best, v) : v;
      any = true;
    }
  }
  return best;
}

QSeries t_series(const TupleA& tuple, const IntPoly& f, long c, long d, Exponent trunc) {
  const long n = tuple.level();
  if (f.nvars() != static_cast<int>(tuple.size())) {
    throw ValidationError("polynomial variable count does not match the tuple length");
  }
  const auto sn = sn_representatives(n);
  Exponent slack = 0;
  for (long lambda : sn) {
    Exponent s = 0;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
      const long w = order_at_cusp(act_on_triple(lambda, tuple.triples[i]), c);
      s += f.max_degree(static_cast<int>(i)) * std::max<Exponent>(0, -w);
    }
    slack = std::max(slack, s);
  }

  for (int attempt = 0; attempt < 4; ++attempt) {
    const Exponent work = trunc + slack;
    QSeries total = QSeries::zero(n, std::nullopt);
    for (long lambda : sn) {
      std::vector<std::vector<QSeries>> powers(tuple.size());
      for (std::size_t i = 0; i < tuple.size(); ++i) {
        const int deg = f.max_degree(static_cast<int>(i));
        if (deg == 0) continue;
        powers[i].push_back(w_series(act_on_triple(lambda, tuple.triples[i]), c, d, work));
        for (int k = 2; k <= deg; ++k) powers[i].push_back(powers[i].back() * powers[i].front());
      }
      for (const auto& [e, coef] : f.terms()) {
        QSeries mono = QSeries::constant(CyclotomicNumber::from_rational(n, Rational(coef)));
        for (std::size_t i = 0; i < e.size(); ++i) {
          if (e[i] > 0) mono = mono * powers[i][static_cast<std::size_t>(e[i] - 1)];
        }
        total += mono;
      }
    }
    if (total.trunc() && *total.trunc() < trunc) {
      slack = 2 * slack + n;
      continue;
    }
    return total.truncated(trunc);
  }
  throw PrecisionError("could not reach the requested truncation for T" + tuple.to_string());
}

std::pair<QSeries, QSeries> sigma_shift_check(long level, long s, const CosetRep& rep, long ell, Exponent trunc) {
  const QSeries left = phi_series(level, s, rep, trunc).sigma(ell);
  if (brace(s * rep.t, level) == 0) return {left, phi_series(level, ell * s, rep, trunc)};
  const long lstar = inverse_mod(mod(ell, level), level);
  const auto shifted = CosetRep::make(rep.t, lstar * rep.u, ell * rep.v, ell * rep.k);
  return {left, phi_series(level, s, shifted, trunc)};
}

BigComplex phi_value(long level, long s, long c, long d, const BigComplex& tau, long digits) {
  if (mod(s, level) == 0) throw ValidationError("phi_s needs s != 0 mod N");
  if (tau.im().sign() <= 0) throw ValidationError("tau must lie in the upper half plane");
  const mpfr_prec_t bits = bits_for_digits(digits + kGuardDigits);
  const BigComplex t = tau.with_precision(bits);
  const auto bm = brace_mu(s * c, level);
  const long sstar = mod(bm.mu * mod(s * d, level), level);

  const BigFloat two_pi = BigFloat::pi(bits) * BigFloat(2L, bits);
  const BigComplex i_two_pi(BigFloat(bits), two_pi);
  const BigComplex big_q = (i_two_pi * t).exp();
  BigComplex tn = t;
  tn *= BigFloat(Rational(bm.brace, level), bits);
  const BigComplex u = BigComplex::root_of_unity(sstar, level, bits) * (i_two_pi * tn).exp();
  const BigComplex u_inv = BigComplex(BigFloat(1L, bits), BigFloat(bits)) / u;
  const BigComplex one(BigFloat(1L, bits), BigFloat(bits));
  auto lambert = [&](const BigComplex& x) {
    const BigComplex y = one - x;
    return x / (y * y);
  };

  BigComplex sum = lambert(u);
  BigComplex qm = big_q;
  const double stop = -static_cast<double>(digits + kGuardDigits);
  for (long m = 1;; ++m) {
    const BigComplex b = qm * u_inv;
    sum += lambert(qm * u) + lambert(b) - lambert(qm) * BigFloat(2L, bits);
    if (b.abs().log10_abs() < stop) break;
    if (m > 1000000) throw PrecisionError("phi_s series does not converge at this tau");
    qm *= big_q;
  }
  return sum;
}

BigComplex w_value(const TripleA& triple, long c, long d, const BigComplex& tau, long digits) {
  const long n = triple.level;
  const BigComplex p3 = phi_value(n, triple.a[2], c, d, tau, digits);
  const BigComplex num = phi_value(n, triple.a[0], c, d, tau, digits) - p3;
  const BigComplex den = phi_value(n, triple.a[1], c, d, tau, digits) - p3;
  if (den.abs().log10_abs() < -static_cast<double>(digits)) {
    throw PrecisionError("W" + triple.to_string() + " denominator vanishes at this point");
  }
  return num / den;
}

BigComplex t_value(const TupleA& tuple, const IntPoly& f, long c, long d, const BigComplex& tau, long digits) {
  if (f.nvars() != static_cast<int>(tuple.size())) {
    throw ValidationError("polynomial variable count does not match the tuple length");
  }
  const mpfr_prec_t bits = bits_for_digits(digits + kGuardDigits);
  BigComplex total(bits);
  for (long lambda : sn_representatives(tuple.level())) {
    std::vector<BigComplex> w;
    for (const auto& t : tuple.triples) w.push_back(w_value(act_on_triple(lambda, t), c, d, tau, digits));
    for (const auto& [e, coef] : f.terms()) {
      BigComplex term(BigFloat(BigInt(coef), bits), BigFloat(bits));
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] > 0) term *= w[i].pow(e[i]);
      }
      total += term;
    }
  }
  return total;
}

}  // namespace modfun
