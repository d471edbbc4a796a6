#include <random>

#include "doctest.h"
#include "modfun/arith/cyclotomic.hpp"
#include "modfun/arith/qseries.hpp"
#include "modfun/errors.hpp"

using namespace modfun;

namespace {

CyclotomicNumber z(long n, long k) { return CyclotomicNumber::zeta_power(n, k); }
CyclotomicNumber rat(long n, long num, long den = 1) { return CyclotomicNumber::from_rational(n, Rational(num, den)); }

CyclotomicNumber random_cyclo(std::mt19937& rng, long n) {
  std::uniform_int_distribution<long> coef(-9, 9);
  std::uniform_int_distribution<long> den(1, 4);
  std::vector<Rational> c;
  for (long i = 0; i < n; ++i) {
    Rational r(coef(rng), den(rng));
    r.canonicalize();
    c.push_back(r);
  }
  return CyclotomicNumber::from_power_basis(n, c);
}

QSeries random_series(std::mt19937& rng, long n, QSeries::Exponent first, int len, QSeries::Exponent trunc) {
  std::vector<CyclotomicNumber> c;
  for (int i = 0; i < len; ++i) c.push_back(random_cyclo(rng, n));
  if (c[0].is_zero()) c[0] = rat(n, 1);
  return QSeries::from_coefficients(n, first, c, trunc);
}

QSeries poly(long n, std::vector<long> coeffs, std::optional<QSeries::Exponent> trunc = std::nullopt,
             QSeries::Exponent first = 0) {
  std::vector<CyclotomicNumber> c;
  for (long x : coeffs) c.push_back(rat(n, x));
  return QSeries::from_coefficients(n, first, c, trunc);
}

}  // namespace

TEST_CASE("cyclotomic polynomials and field data") {
  auto f7 = CyclotomicField::get(7);
  CHECK(f7->degree() == 6);
  CHECK(f7->modulus() == std::vector<long>{1, 1, 1, 1, 1, 1, 1});
  auto f12 = CyclotomicField::get(12);
  CHECK(f12->modulus() == std::vector<long>{1, 0, -1, 0, 1});
  auto f9 = CyclotomicField::get(9);
  CHECK(f9->modulus() == std::vector<long>{1, 0, 0, 1, 0, 0, 1});
  CHECK(CyclotomicField::get(11)->units().size() == 10);
  CHECK_THROWS_AS(CyclotomicField::get(2), ValidationError);
}

TEST_CASE("cyclo_make reduces canonically") {
  std::vector<Rational> zeta7(8, 0);
  zeta7[7] = 1;
  CHECK(CyclotomicNumber::from_power_basis(7, zeta7) == rat(7, 1));

  std::vector<Rational> all(7, 1);
  CHECK(CyclotomicNumber::from_power_basis(7, all).is_zero());

  std::vector<Rational> zeta6(7, 0);
  zeta6[6] = 1;
  const auto lhs = CyclotomicNumber::from_power_basis(7, zeta6);
  CHECK(lhs.coeffs() == std::vector<Rational>(6, -1));

  CHECK_THROWS_AS(CyclotomicNumber::from_power_basis(2, zeta6), ValidationError);
}

TEST_CASE("galois_sigma") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = random_cyclo(rng, 11);
    CHECK(galois_sigma(x, 1) == x);
    for (long l : {2L, 3L, 7L}) {
      for (long m : {5L, 6L}) {
        CHECK(galois_sigma(galois_sigma(x, m), l) == galois_sigma(x, (l * m) % 11));
      }
    }
  }
  CHECK(galois_sigma(z(7, 1), 6) == z(7, 6));
  CHECK(galois_sigma(z(7, 1), 6) == z(7, -1));
  CHECK_THROWS_AS(galois_sigma(z(12, 1), 2), ValidationError);
}

TEST_CASE("cyclotomic ring laws and canonical form") {
  std::mt19937 rng(5);
  for (long n : {7L, 9L, 12L, 13L}) {
    for (int trial = 0; trial < 8; ++trial) {
      const auto a = random_cyclo(rng, n);
      const auto b = random_cyclo(rng, n);
      // Multiply-then-reduce: build the unreduced product in Q[x] of length 2N.
      std::vector<Rational> ua(static_cast<std::size_t>(n)), ub(static_cast<std::size_t>(n));
      for (int i = 0; i < a.field()->degree(); ++i) {
        ua[static_cast<std::size_t>(i)] = a.coeff(i);
        ub[static_cast<std::size_t>(i)] = b.coeff(i);
      }
      std::vector<Rational> prod(2 * static_cast<std::size_t>(n), 0);
      for (std::size_t i = 0; i < ua.size(); ++i)
        for (std::size_t j = 0; j < ub.size(); ++j) prod[i + j] += ua[i] * ub[j];
      CHECK(a * b == CyclotomicNumber::from_power_basis(n, prod));
      CHECK(a * b == b * a);
      CHECK((a + b) - b == a);
      if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
      // The norm is the product of all conjugates and is multiplicative.
      CHECK(a.norm() * b.norm() == (a * b).norm());
    }
  }
  CHECK((rat(7, 1) - z(7, 1)).norm() == 7);
  CHECK(rat(7, 3, 6) == rat(7, 1, 2));
  CHECK(rat(7, 0).denominator() == 1);
}

TEST_CASE("series_arith examples") {
  const long n = 7;
  const auto one_plus_q = poly(n, {1, 1});
  const auto one_minus_q = poly(n, {1, -1});
  CHECK(one_plus_q * one_minus_q == poly(n, {1, 0, -1}));

  const auto geo = poly(n, {1, -1}, 20).inverse();
  CHECK(geo == poly(n, std::vector<long>(20, 1), 20));
  CHECK(poly(n, {1, -1}).inverse(12) == poly(n, std::vector<long>(12, 1), 12));

  const auto lau = poly(n, {1, 1}, 15, 1).inverse();
  CHECK(lau.valuation() == -1);
  CHECK(lau.trunc() == 13);
  for (long e = -1; e < 13; ++e) CHECK(lau.coefficient(e) == rat(n, (e + 1) % 2 == 0 ? 1 : -1));

  CHECK_THROWS_AS(QSeries::zero(n, 10).inverse(), PrecisionError);
  CHECK_THROWS_AS(poly(7, {1, 1}) + poly(11, {1}), ValidationError);
  CHECK_THROWS_AS(poly(7, {1, 1}, 5).coefficient(5), PrecisionError);
}

TEST_CASE("q-series ring laws") {
  std::mt19937 rng(99);
  const long n = 9;
  for (int trial = 0; trial < 6; ++trial) {
    const auto f = random_series(rng, n, -2, 12, 10);
    const auto g = random_series(rng, n, 1, 10, 11);
    const auto h = random_series(rng, n, 0, 12, 12);
    CHECK(((f * g) * h).agrees_with(f * (g * h)));
    CHECK((f * g).trunc() == std::min(*f.trunc() + g.valuation(), *g.trunc() + f.valuation()));
    const auto prod = f * f.inverse();
    CHECK(prod.trunc() >= *f.trunc() - 2 * std::abs(f.valuation()));
    CHECK(prod.agrees_with(poly(n, {1})));
    CHECK((f * g).sigma(4) == f.sigma(4) * g.sigma(4));
    CHECK((f + g).sigma(2) == f.sigma(2) + g.sigma(2));
    CHECK(f.pow(3).agrees_with(f * f * f));
    CHECK(f.pow(-2).agrees_with((f * f).inverse()));
  }
}

TEST_CASE("series_sigma examples") {
  std::mt19937 rng(3);
  const auto f = random_series(rng, 7, 0, 8, 8);
  CHECK(f.sigma(1) == f);
  CHECK(poly(7, {3, 0, -2}, 9).sigma(3) == poly(7, {3, 0, -2}, 9));
  CHECK(QSeries::monomial(z(7, 1), 1).sigma(3) == QSeries::monomial(z(7, 3), 1));
  CHECK_THROWS_AS(f.sigma(7), ValidationError);
}

TEST_CASE("scale_q matches zeta scaling and composition") {
  std::mt19937 rng(8);
  const auto f = random_series(rng, 11, -3, 14, 11);
  CHECK(f.scale_q(z(11, 4)) == f.scale_q_by_zeta(4));
  CHECK(f.scale_q_by_zeta(3).scale_q_by_zeta(8) == f);
}

TEST_CASE("series_eval") {
  const long digits = 40;
  const mpfr_prec_t bits = bits_for_digits(digits);
  const BigComplex tau(BigFloat(0.3, bits), BigFloat(1.7, bits));
  auto c = series_eval(poly(7, {1}), tau, digits);
  CHECK(c.value.re().to_double() == doctest::Approx(1.0));
  CHECK(c.value.im().to_double() == doctest::Approx(0.0));

  // q = 1/2 at tau = i N ln 2 / (2 pi).
  const long n = 7;
  BigFloat im = BigFloat(n, bits) * BigFloat(2L, bits).log() / (BigFloat::pi(bits) * BigFloat(2L, bits));
  const BigComplex tau_half(BigFloat(bits), im);
  auto v = series_eval(QSeries::monomial(rat(n, 1), 1), tau_half, digits);
  CHECK((v.value.re() - BigFloat(0.5, bits)).abs().log10_abs() < -digits);

  CHECK_THROWS_AS(series_eval(poly(7, {1}), BigComplex(BigFloat(0.1, bits), BigFloat(-1.0, bits)), 30),
                  ValidationError);
  CHECK_THROWS_AS(series_eval(poly(7, {1, 1}, 3), tau, digits), PrecisionError);

  // Evaluation is multiplicative on products, within the truncation error.
  std::mt19937 rng(21);
  const auto f = random_series(rng, 13, -1, 400, 400);
  const auto g = random_series(rng, 13, 2, 400, 402);
  const BigComplex tau2(BigFloat(0.2, bits), BigFloat(2.5, bits));
  const auto fg = series_eval(f * g, tau2, 60).value;
  const auto prod = series_eval(f, tau2, 60).value * series_eval(g, tau2, 60).value;
  CHECK((fg - prod).abs().log10_abs() < -55);
}
