#include "modfun/arith/bignum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <memory>

#include "modfun/errors.hpp"

namespace modfun {

std::string to_string(const Rational& r) { return r.get_str(10); }

Rational parse_rational(const std::string& text) {
  Rational r;
  if (text.empty() || r.set_str(text, 10) != 0 || r.get_den() == 0) {
    throw ValidationError("not a rational number: '" + text + "'");
  }
  r.canonicalize();
  return r;
}

mpfr_prec_t bits_for_digits(long digits) {
  digits = std::max(digits, kMinDigits);
  return static_cast<mpfr_prec_t>(std::ceil(static_cast<double>(digits) * 3.3219280948873623)) + 8;
}

BigFloat::BigFloat(mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(long value, mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_si(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(double value, mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_d(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(const BigInt& value, mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_z(value_, value.get_mpz_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const Rational& value, mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const std::string& text, mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  if (mpfr_set_str(value_, text.c_str(), 10, MPFR_RNDN) != 0) {
    mpfr_clear(value_);
    throw ValidationError("not a decimal number: '" + text + "'");
  }
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, other.precision());
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

BigFloat BigFloat::with_precision(mpfr_prec_t bits) const {
  BigFloat r(bits);
  mpfr_set(r.value_, value_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::pi(mpfr_prec_t bits) {
  BigFloat r(bits);
  mpfr_const_pi(r.value_, MPFR_RNDN);
  return r;
}

namespace {

// Raise the working precision of `target` (keeping its value) to cover `other`.
void widen(mpfr_ptr target, mpfr_srcptr other) {
  const mpfr_prec_t want = mpfr_get_prec(other);
  if (mpfr_get_prec(target) < want) mpfr_prec_round(target, want, MPFR_RNDN);
}

}  // namespace

BigFloat& BigFloat::operator+=(const BigFloat& rhs) {
  widen(value_, rhs.value_);
  mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator-=(const BigFloat& rhs) {
  widen(value_, rhs.value_);
  mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator*=(const BigFloat& rhs) {
  widen(value_, rhs.value_);
  mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator/=(const BigFloat& rhs) {
  widen(value_, rhs.value_);
  mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat BigFloat::operator-() const {
  BigFloat r(*this);
  mpfr_neg(r.value_, r.value_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::abs() const {
  BigFloat r(*this);
  mpfr_abs(r.value_, r.value_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::sqrt() const {
  BigFloat r(*this);
  mpfr_sqrt(r.value_, r.value_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::exp() const {
  BigFloat r(*this);
  mpfr_exp(r.value_, r.value_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::log() const {
  BigFloat r(*this);
  mpfr_log(r.value_, r.value_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::cos() const {
  BigFloat r(*this);
  mpfr_cos(r.value_, r.value_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::sin() const {
  BigFloat r(*this);
  mpfr_sin(r.value_, r.value_, MPFR_RNDN);
  return r;
}

BigInt BigFloat::round() const {
  BigFloat r(*this);
  mpfr_round(r.value_, r.value_);
  BigInt out;
  mpfr_get_z(out.get_mpz_t(), r.value_, MPFR_RNDN);
  return out;
}

BigInt BigFloat::floor() const {
  BigInt out;
  mpfr_get_z(out.get_mpz_t(), value_, MPFR_RNDD);
  return out;
}

double BigFloat::log10_abs() const {
  if (is_zero()) return -HUGE_VAL;
  long exp2 = 0;
  const double mant = mpfr_get_d_2exp(&exp2, value_, MPFR_RNDN);
  return std::log10(std::fabs(mant)) + static_cast<double>(exp2) * 0.30102999566398120;
}

double BigFloat::to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

std::string BigFloat::to_string(int digits) const {
  char* raw = nullptr;
  const std::string fmt = "%." + std::to_string(digits) + "Rf";
  if (mpfr_asprintf(&raw, fmt.c_str(), value_) < 0) return "nan";
  std::string out(raw);
  mpfr_free_str(raw);
  return out;
}

BigComplex::BigComplex(mpfr_prec_t bits) : re_(bits), im_(bits) {}

BigComplex::BigComplex(BigFloat re, BigFloat im) : re_(std::move(re)), im_(std::move(im)) {
  const mpfr_prec_t bits = std::max(re_.precision(), im_.precision());
  if (re_.precision() < bits) mpfr_prec_round(re_.get(), bits, MPFR_RNDN);
  if (im_.precision() < bits) mpfr_prec_round(im_.get(), bits, MPFR_RNDN);
}

BigComplex::BigComplex(const Rational& re, const Rational& im, mpfr_prec_t bits) : re_(re, bits), im_(im, bits) {}

BigComplex BigComplex::from_digits(long digits) { return BigComplex(bits_for_digits(digits)); }

BigComplex BigComplex::root_of_unity(long num, long den, mpfr_prec_t bits) {
  // Exact values at the quarter turns keep real inputs real.
  long r = ((num % den) + den) % den;
  if (r == 0) return BigComplex(BigFloat(1L, bits), BigFloat(bits));
  if (2 * r == den) return BigComplex(BigFloat(-1L, bits), BigFloat(bits));
  if (4 * r == den) return BigComplex(BigFloat(bits), BigFloat(1L, bits));
  if (4 * r == 3 * den) return BigComplex(BigFloat(bits), BigFloat(-1L, bits));
  BigFloat angle = BigFloat::pi(bits) * BigFloat(2 * r, bits) / BigFloat(den, bits);
  return BigComplex(angle.cos(), angle.sin());
}

BigComplex& BigComplex::operator+=(const BigComplex& rhs) {
  re_ += rhs.re_;
  im_ += rhs.im_;
  return *this;
}

BigComplex& BigComplex::operator-=(const BigComplex& rhs) {
  re_ -= rhs.re_;
  im_ -= rhs.im_;
  return *this;
}

BigComplex& BigComplex::operator*=(const BigComplex& rhs) {
  BigFloat re = re_ * rhs.re_ - im_ * rhs.im_;
  BigFloat im = re_ * rhs.im_ + im_ * rhs.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

BigComplex& BigComplex::operator*=(const BigFloat& rhs) {
  re_ *= rhs;
  im_ *= rhs;
  return *this;
}

BigComplex& BigComplex::operator/=(const BigComplex& rhs) {
  const BigFloat n = rhs.norm();
  BigFloat re = (re_ * rhs.re_ + im_ * rhs.im_) / n;
  BigFloat im = (im_ * rhs.re_ - re_ * rhs.im_) / n;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

BigComplex BigComplex::operator-() const { return BigComplex(-re_, -im_); }

BigComplex BigComplex::conj() const { return BigComplex(re_, -im_); }

BigFloat BigComplex::norm() const { return re_ * re_ + im_ * im_; }

BigFloat BigComplex::abs() const { return norm().sqrt(); }

BigComplex BigComplex::exp() const {
  const BigFloat mag = re_.exp();
  return BigComplex(mag * im_.cos(), mag * im_.sin());
}

BigComplex BigComplex::pow(long e) const {
  if (e < 0) {
    BigComplex one(BigFloat(1L, precision()), BigFloat(precision()));
    return one / pow(-e);
  }
  BigComplex result(BigFloat(1L, precision()), BigFloat(precision()));
  BigComplex base(*this);
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

BigComplex BigComplex::sqrt() const {
  // Principal branch.
  const BigFloat r = abs();
  const mpfr_prec_t bits = precision();
  const BigFloat half(0.5, bits);
  BigFloat a = ((r + re_) * half).sqrt();
  BigFloat b = ((r - re_) * half).sqrt();
  if (im_.sign() < 0) b = -b;
  return BigComplex(std::move(a), std::move(b));
}

std::string BigComplex::to_string(int digits) const {
  std::string im = im_.to_string(digits);
  if (im.empty() || im[0] != '-') im = "+" + im;
  return re_.to_string(digits) + im + "*I";
}

}  // namespace modfun
