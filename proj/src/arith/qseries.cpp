#include "modfun/arith/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "modfun/errors.hpp"

namespace modfun {

namespace {

using Exponent = QSeries::Exponent;

std::optional<Exponent> min_trunc(std::optional<Exponent> a, std::optional<Exponent> b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

// A run of coefficients brought to one common denominator, with the nonzero
// power-basis slots of each row listed for the convolution loop.
struct ScaledRun {
  std::vector<std::vector<BigInt>> rows;
  std::vector<std::vector<int>> support;
  BigInt den = 1;
};

ScaledRun scale_run(const std::vector<CyclotomicNumber>& coeffs, std::size_t count) {
  ScaledRun run;
  for (std::size_t i = 0; i < count; ++i) {
    const BigInt& d = coeffs[i].denominator();
    if (d != 1) mpz_lcm(run.den.get_mpz_t(), run.den.get_mpz_t(), d.get_mpz_t());
  }
  run.rows.resize(count);
  run.support.resize(count);
  BigInt factor;
  for (std::size_t i = 0; i < count; ++i) {
    const auto& num = coeffs[i].numerators();
    const BigInt& d = coeffs[i].denominator();
    auto& row = run.rows[i];
    row = num;
    if (d != run.den) {
      mpz_divexact(factor.get_mpz_t(), run.den.get_mpz_t(), d.get_mpz_t());
      for (auto& c : row) c *= factor;
    }
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] != 0) run.support[i].push_back(static_cast<int>(j));
    }
  }
  return run;
}

CyclotomicNumber cyclotomic_pow(const CyclotomicNumber& c, Exponent e) {
  if (e < 0) return cyclotomic_pow(c.inverse(), -e);
  CyclotomicNumber result = CyclotomicNumber::from_rational(c.level(), 1);
  CyclotomicNumber base = c;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

}  // namespace

QSeries::QSeries(long level) : field_(CyclotomicField::get(level)) {}

QSeries::QSeries(CyclotomicNumber::FieldPtr field, Exponent first, std::vector<CyclotomicNumber> coeffs,
                 std::optional<Exponent> trunc)
    : field_(std::move(field)), first_(first), coeffs_(std::move(coeffs)), trunc_(trunc) {
  normalize();
}

QSeries QSeries::zero(long level, std::optional<Exponent> trunc) {
  QSeries s(level);
  s.trunc_ = trunc;
  s.first_ = trunc.value_or(0);
  return s;
}

QSeries QSeries::constant(const CyclotomicNumber& c, std::optional<Exponent> trunc) {
  return monomial(c, 0, trunc);
}

QSeries QSeries::monomial(const CyclotomicNumber& c, Exponent exponent, std::optional<Exponent> trunc) {
  return QSeries(c.field(), exponent, {c}, trunc);
}

QSeries QSeries::from_coefficients(long level, Exponent first, std::vector<CyclotomicNumber> coeffs,
                                   std::optional<Exponent> trunc) {
  auto field = CyclotomicField::get(level);
  for (const auto& c : coeffs) {
    if (c.level() != level) throw ValidationError("coefficient level does not match series level");
  }
  return QSeries(field, first, std::move(coeffs), trunc);
}

void QSeries::normalize() {
  if (trunc_) {
    const Exponent keep = std::max<Exponent>(0, *trunc_ - first_);
    if (static_cast<Exponent>(coeffs_.size()) > keep) coeffs_.erase(coeffs_.begin() + keep, coeffs_.end());
  }
  std::size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
  if (lead == coeffs_.size()) {
    coeffs_.clear();
    first_ = trunc_.value_or(0);
    return;
  }
  if (lead > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
    first_ += static_cast<Exponent>(lead);
  }
  while (coeffs_.back().is_zero()) coeffs_.pop_back();
}

void QSeries::check_level(const QSeries& other) const {
  if (level() != other.level()) {
    throw ValidationError("q-series levels differ: " + std::to_string(level()) + " vs " +
                          std::to_string(other.level()));
  }
}

std::optional<Exponent> QSeries::valuation_bound() const {
  if (!coeffs_.empty()) return first_;
  return trunc_;
}

Exponent QSeries::valuation() const {
  if (coeffs_.empty()) throw PrecisionError("valuation of a series that vanishes to its truncation");
  return first_;
}

const CyclotomicNumber& QSeries::leading() const {
  if (coeffs_.empty()) throw PrecisionError("leading coefficient of a series that vanishes to its truncation");
  return coeffs_.front();
}

CyclotomicNumber QSeries::coefficient(Exponent e) const {
  if (trunc_ && e >= *trunc_) {
    throw PrecisionError("coefficient of q^" + std::to_string(e) + " is beyond the truncation O(q^" +
                         std::to_string(*trunc_) + ")");
  }
  if (e < first_ || e >= end_exponent()) return CyclotomicNumber(field_);
  return coeffs_[static_cast<std::size_t>(e - first_)];
}

bool QSeries::is_rational() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const CyclotomicNumber& c) { return c.is_rational(); });
}

bool QSeries::is_integral() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const CyclotomicNumber& c) { return c.is_integral(); });
}

QSeries& QSeries::operator+=(const QSeries& rhs) {
  check_level(rhs);
  const auto trunc = min_trunc(trunc_, rhs.trunc_);
  if (rhs.coeffs_.empty()) {
    trunc_ = trunc;
    normalize();
    return *this;
  }
  if (coeffs_.empty()) {
    coeffs_ = rhs.coeffs_;
    first_ = rhs.first_;
    trunc_ = trunc;
    normalize();
    return *this;
  }
  const Exponent lo = std::min(first_, rhs.first_);
  Exponent hi = std::max(end_exponent(), rhs.end_exponent());
  if (trunc) hi = std::min(hi, *trunc);
  if (hi <= lo) {
    coeffs_.clear();
    trunc_ = trunc;
    normalize();
    return *this;
  }
  std::vector<CyclotomicNumber> out(static_cast<std::size_t>(hi - lo), CyclotomicNumber(field_));
  for (Exponent e = first_; e < std::min(end_exponent(), hi); ++e) {
    out[static_cast<std::size_t>(e - lo)] = std::move(coeffs_[static_cast<std::size_t>(e - first_)]);
  }
  for (Exponent e = rhs.first_; e < std::min(rhs.end_exponent(), hi); ++e) {
    out[static_cast<std::size_t>(e - lo)] += rhs.coeffs_[static_cast<std::size_t>(e - rhs.first_)];
  }
  coeffs_ = std::move(out);
  first_ = lo;
  trunc_ = trunc;
  normalize();
  return *this;
}

QSeries& QSeries::operator-=(const QSeries& rhs) { return *this += -rhs; }

QSeries& QSeries::operator*=(const CyclotomicNumber& c) {
  if (c.level() != level()) throw ValidationError("scalar level does not match series level");
  for (auto& x : coeffs_) x *= c;
  normalize();
  return *this;
}

QSeries& QSeries::operator*=(const Rational& c) {
  for (auto& x : coeffs_) x *= c;
  normalize();
  return *this;
}

QSeries QSeries::operator-() const {
  QSeries r(*this);
  for (auto& x : r.coeffs_) x = -x;
  return r;
}

bool operator==(const QSeries& a, const QSeries& b) {
  return a.level() == b.level() && a.trunc_ == b.trunc_ && a.coeffs_ == b.coeffs_ &&
         (a.coeffs_.empty() || a.first_ == b.first_);
}

QSeries QSeries::multiply(const QSeries& a, const QSeries& b, std::optional<Exponent> cap) {
  a.check_level(b);
  if ((a.coeffs_.empty() && a.is_exact()) || (b.coeffs_.empty() && b.is_exact())) return QSeries(a.level());
  const Exponent va = *a.valuation_bound();
  const Exponent vb = *b.valuation_bound();
  std::optional<Exponent> trunc;
  if (a.trunc_) trunc = *a.trunc_ + vb;
  if (b.trunc_) trunc = min_trunc(trunc, *b.trunc_ + va);
  trunc = min_trunc(trunc, cap);
  if (a.coeffs_.empty() || b.coeffs_.empty()) return zero(a.level(), trunc);

  const Exponent first = va + vb;
  const std::size_t na_all = a.coeffs_.size(), nb_all = b.coeffs_.size();
  Exponent count = static_cast<Exponent>(na_all + nb_all - 1);
  if (trunc) count = std::min(count, *trunc - first);
  if (count <= 0) return zero(a.level(), trunc);

  const std::size_t n_out = static_cast<std::size_t>(count);
  const std::size_t na = std::min(na_all, n_out), nb = std::min(nb_all, n_out);
  const ScaledRun ra = scale_run(a.coeffs_, na);
  const ScaledRun rb = scale_run(b.coeffs_, nb);
  const BigInt den = ra.den * rb.den;
  const auto& field = a.field_;
  const std::size_t acc_len = 2 * static_cast<std::size_t>(field->degree()) - 1;

  std::vector<CyclotomicNumber> out;
  out.reserve(n_out);
  for (std::size_t n = 0; n < n_out; ++n) {
    std::vector<BigInt> acc(acc_len);
    const std::size_t i_lo = n + 1 > nb ? n + 1 - nb : 0;
    const std::size_t i_hi = std::min(n, na - 1);
    for (std::size_t i = i_lo; i <= i_hi && i_lo <= i_hi; ++i) {
      const auto& sa = ra.support[i];
      const auto& sb = rb.support[n - i];
      if (sa.empty() || sb.empty()) continue;
      const auto& xa = ra.rows[i];
      const auto& xb = rb.rows[n - i];
      for (int p : sa) {
        for (int r : sb) {
          mpz_addmul(acc[static_cast<std::size_t>(p + r)].get_mpz_t(), xa[static_cast<std::size_t>(p)].get_mpz_t(),
                     xb[static_cast<std::size_t>(r)].get_mpz_t());
        }
      }
    }
    out.emplace_back(field, std::move(acc), den);
  }
  return QSeries(field, first, std::move(out), trunc);
}

QSeries QSeries::inverse(std::optional<Exponent> relative_terms) const {
  if (coeffs_.empty()) throw PrecisionError("cannot invert a series that vanishes to its truncation");
  const Exponent v = first_;
  if (is_exact() && coeffs_.size() == 1) return monomial(coeffs_[0].inverse(), -v);
  Exponent r;
  if (trunc_) {
    r = *trunc_ - v;
    if (relative_terms) r = std::min(r, *relative_terms);
  } else {
    if (!relative_terms) throw ValidationError("inverting an exact polynomial needs an explicit term count");
    r = *relative_terms;
  }
  if (r <= 0) throw PrecisionError("no reliable terms left to invert");

  // Newton iteration g <- g + g(1 - F g) on the unit-valuation part F.
  std::vector<CyclotomicNumber> f_rel(coeffs_.begin(),
                                      coeffs_.begin() + static_cast<std::ptrdiff_t>(std::min<Exponent>(
                                                            r, static_cast<Exponent>(coeffs_.size()))));
  const QSeries f_full(field_, 0, std::move(f_rel), std::nullopt);
  const QSeries one = constant(CyclotomicNumber::from_rational(level(), 1));
  QSeries g = constant(coeffs_[0].inverse());
  Exponent p = 1;
  while (p < r) {
    const Exponent p2 = std::min(2 * p, r);
    const QSeries fp = f_full.truncated(p2);
    QSeries fp_exact(fp.field_, fp.first_, fp.coeffs_, std::nullopt);
    QSeries err = one - multiply(fp_exact, g, p2);
    err.trunc_.reset();
    QSeries next = g + multiply(g, err, p2);
    next.trunc_.reset();
    g = std::move(next);
    p = p2;
  }
  return QSeries(field_, g.first_ - v, std::move(g.coeffs_), r - v);
}

QSeries QSeries::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  QSeries result = constant(CyclotomicNumber::from_rational(level(), 1));
  if (e == 0) return result;
  QSeries base = *this;
  while (e > 0) {
    if (e & 1) result = multiply(result, base);
    e >>= 1;
    if (e > 0) base = multiply(base, base);
  }
  return result;
}

QSeries QSeries::scale_q(const CyclotomicNumber& c) const {
  if (c.level() != level()) throw ValidationError("scalar level does not match series level");
  QSeries r(*this);
  if (r.coeffs_.empty()) return r;
  CyclotomicNumber factor = cyclotomic_pow(c, first_);
  for (auto& x : r.coeffs_) {
    x *= factor;
    factor *= c;
  }
  r.normalize();
  return r;
}

QSeries QSeries::scale_q_by_zeta(long k) const {
  QSeries r(*this);
  const long n = level();
  for (std::size_t i = 0; i < r.coeffs_.size(); ++i) {
    const long e = mod(k * mod(first_ + static_cast<Exponent>(i), n), n);
    if (e != 0) r.coeffs_[i] *= CyclotomicNumber::zeta_power(n, e);
  }
  return r;
}

QSeries QSeries::sigma(long l) const {
  if (std::gcd(mod(l, level()), level()) != 1) {
    throw ValidationError("sigma_l requires gcd(l, N) = 1; got l=" + std::to_string(l));
  }
  QSeries r(*this);
  for (auto& x : r.coeffs_) x = galois_sigma(x, l);
  return r;
}

QSeries QSeries::truncated(Exponent t) const {
  QSeries r(*this);
  r.trunc_ = min_trunc(r.trunc_, t);
  r.normalize();
  return r;
}

QSeries QSeries::decimate(long step) const {
  if (step <= 0) throw ValidationError("decimation step must be positive");
  std::vector<CyclotomicNumber> out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Exponent e = first_ + static_cast<Exponent>(i);
    if (mod(e, step) != 0) {
      if (!coeffs_[i].is_zero()) {
        throw ConsistencyError("series has a nonzero term at q^" + std::to_string(e) + ", not a multiple of " +
                               std::to_string(step));
      }
      continue;
    }
    out.push_back(coeffs_[i]);
  }
  Exponent first = first_;
  while (mod(first, step) != 0) ++first;
  std::optional<Exponent> trunc;
  // The new truncation is the first multiple of step that is not determined.
  if (trunc_) trunc = (*trunc_ >= 0) ? (*trunc_ + step - 1) / step : -((-*trunc_) / step);
  return QSeries(field_, coeffs_.empty() ? trunc.value_or(0) : first / step, std::move(out), trunc);
}

QSeries QSeries::inflate(long step) const {
  if (step <= 0) throw ValidationError("inflation step must be positive");
  std::vector<CyclotomicNumber> out;
  const CyclotomicNumber zero(field_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i > 0) out.insert(out.end(), static_cast<std::size_t>(step - 1), zero);
    out.push_back(coeffs_[i]);
  }
  std::optional<Exponent> trunc;
  if (trunc_) trunc = *trunc_ * step;
  return QSeries(field_, first_ * step, std::move(out), trunc);
}

long QSeries::exponent_step(long bound) const {
  long g = bound;
  for (std::size_t i = 0; i < coeffs_.size() && g > 1; ++i) {
    if (!coeffs_[i].is_zero()) g = std::gcd(g, static_cast<long>(mod(first_ + static_cast<Exponent>(i), bound)));
  }
  return g;
}

bool QSeries::agrees_with(const QSeries& other) const {
  check_level(other);
  const auto trunc = min_trunc(trunc_, other.trunc_);
  Exponent lo = std::min(coeffs_.empty() ? other.first_ : first_, other.coeffs_.empty() ? first_ : other.first_);
  Exponent hi = std::max(end_exponent(), other.end_exponent());
  if (trunc) hi = std::min(hi, *trunc);
  for (Exponent e = lo; e < hi; ++e) {
    if (coefficient(e) != other.coefficient(e)) return false;
  }
  return true;
}

std::string QSeries::to_string(int max_terms) const {
  std::ostringstream os;
  int shown = 0;
  for (std::size_t i = 0; i < coeffs_.size() && shown < max_terms; ++i) {
    if (coeffs_[i].is_zero()) continue;
    if (shown > 0) os << " + ";
    os << "(" << coeffs_[i].to_string() << ")*q^" << (first_ + static_cast<Exponent>(i));
    ++shown;
  }
  if (shown == 0) os << "0";
  if (trunc_) os << " + O(q^" << *trunc_ << ")";
  return os.str();
}

SeriesValue series_eval(const QSeries& f, const BigComplex& tau, long digits) {
  if (tau.im().sign() <= 0) throw ValidationError("series_eval needs Im(tau) > 0");
  const mpfr_prec_t bits = std::max(bits_for_digits(digits + kGuardDigits), tau.precision());
  const long n = f.level();
  // log10|q| = -2*pi*Im(tau) / (N ln 10)
  const double log10_q = -2.0 * M_PI * tau.im().to_double() / (static_cast<double>(n) * std::log(10.0));
  SeriesValue out{BigComplex(bits), false};
  if (f.trunc()) {
    const double tail = static_cast<double>(*f.trunc()) * log10_q;
    if (!(tail < -static_cast<double>(digits))) {
      throw PrecisionError("series truncated at q^" + std::to_string(*f.trunc()) + " cannot give " +
                           std::to_string(digits) + " digits at this tau (|q|^trunc ~ 1e" +
                           std::to_string(static_cast<long>(tail)) + ")");
    }
    out.tail_margin_small = tail > -static_cast<double>(digits) - 1.0;
  }
  if (f.is_zero()) return out;

  BigComplex scaled_tau = tau;
  scaled_tau *= BigFloat(1L, bits) / BigFloat(n, bits);
  const BigComplex two_pi_i(BigFloat(bits), BigFloat::pi(bits) * BigFloat(2L, bits));
  const BigComplex q = (two_pi_i * scaled_tau).exp();
  const auto zp = zeta_powers(n, bits);
  const auto& coeffs = f.coefficients();
  BigComplex acc(bits);
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    acc *= q;
    if (!coeffs[i].is_zero()) acc += coeffs[i].to_complex(zp);
  }
  acc *= q.pow(f.first_exponent());
  out.value = std::move(acc);
  return out;
}

}  // namespace modfun
