#include "modfun/arith/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "modfun/errors.hpp"

namespace modfun {

long gcd(long a, long b) { return std::gcd(a, b); }

long mod(long a, long m) {
  const long r = a % m;
  return r < 0 ? r + m : r;
}

long inverse_mod(long a, long m) {
  if (m == 1) return 0;
  long old_r = mod(a, m), r = m, old_s = 1, s = 0;
  while (r != 0) {
    const long q = old_r / r;
    old_r -= q * r;
    std::swap(old_r, r);
    old_s -= q * s;
    std::swap(old_s, s);
  }
  if (old_r != 1) {
    throw ValidationError(std::to_string(a) + " is not invertible modulo " + std::to_string(m));
  }
  return mod(old_s, m);
}

long euler_phi(long n) {
  long result = n;
  for (long p : prime_divisors(n)) result = result / p * (p - 1);
  return result;
}

std::vector<long> divisors(long n) {
  std::vector<long> out;
  for (long d = 1; d <= n; ++d) {
    if (n % d == 0) out.push_back(d);
  }
  return out;
}

std::vector<long> prime_divisors(long n) {
  std::vector<long> out;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

namespace {

long moebius(long n) {
  long result = 1;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      result = -result;
    }
  }
  if (n > 1) result = -result;
  return result;
}

using IntPoly = std::vector<BigInt>;

IntPoly multiply(const IntPoly& a, const IntPoly& b) {
  IntPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// Exact division by a monic divisor.
IntPoly divide_exact(IntPoly a, const IntPoly& b) {
  const std::size_t db = b.size() - 1;
  IntPoly q(a.size() - db);
  for (std::size_t i = a.size(); i-- > db;) {
    const BigInt c = a[i];
    q[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  for (const auto& r : a) {
    if (r != 0) throw ConsistencyError("cyclotomic polynomial division left a remainder");
  }
  return q;
}

IntPoly x_power_minus_one(long d) {
  IntPoly p(static_cast<std::size_t>(d) + 1);
  p[0] = -1;
  p[static_cast<std::size_t>(d)] = 1;
  return p;
}

void addmul_si(BigInt& acc, const BigInt& x, long c) {
  if (c > 0) {
    mpz_addmul_ui(acc.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(c));
  } else if (c < 0) {
    mpz_submul_ui(acc.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(-c));
  }
}

}  // namespace

CyclotomicField::CyclotomicField(long level) : level_(level) {
  if (level < 3) throw ValidationError("cyclotomic level must be >= 3, got " + std::to_string(level));
  IntPoly num{1}, den{1};
  for (long d : divisors(level)) {
    const long mu = moebius(level / d);
    if (mu == 1) num = multiply(num, x_power_minus_one(d));
    if (mu == -1) den = multiply(den, x_power_minus_one(d));
  }
  // den is monic up to sign; normalize so exact division works on a monic divisor.
  if (den.back() < 0) {
    for (auto& c : den) c = -c;
    for (auto& c : num) c = -c;
  }
  const IntPoly phi = divide_exact(num, den);
  degree_ = static_cast<int>(phi.size()) - 1;
  if (degree_ != euler_phi(level)) throw ConsistencyError("cyclotomic polynomial has the wrong degree");
  for (const auto& c : phi) modulus_.push_back(c.get_si());

  rows_.assign(static_cast<std::size_t>(level), std::vector<long>(static_cast<std::size_t>(degree_), 0));
  rows_[0][0] = 1;
  for (long k = 1; k < level; ++k) {
    const auto& prev = rows_[static_cast<std::size_t>(k - 1)];
    auto& row = rows_[static_cast<std::size_t>(k)];
    const long top = prev[static_cast<std::size_t>(degree_ - 1)];
    for (int j = degree_ - 1; j >= 1; --j) row[static_cast<std::size_t>(j)] = prev[static_cast<std::size_t>(j - 1)];
    row[0] = 0;
    for (int j = 0; j < degree_; ++j) row[static_cast<std::size_t>(j)] -= top * modulus_[static_cast<std::size_t>(j)];
  }
  for (long l = 1; l < level; ++l) {
    if (std::gcd(l, level) == 1) units_.push_back(l);
  }
}

std::shared_ptr<const CyclotomicField> CyclotomicField::get(long level) {
  static std::mutex mu;
  static std::map<long, std::shared_ptr<const CyclotomicField>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(level);
  if (it != cache.end()) return it->second;
  auto field = std::make_shared<const CyclotomicField>(level);
  cache.emplace(level, field);
  return field;
}

void CyclotomicField::reduce(std::vector<BigInt>& poly) const {
  const auto n = static_cast<std::size_t>(level_);
  if (poly.size() > n) {
    for (std::size_t i = n; i < poly.size(); ++i) {
      if (poly[i] != 0) poly[i % n] += poly[i];
    }
    poly.resize(n);
  }
  const auto phi = static_cast<std::size_t>(degree_);
  if (poly.size() < phi) {
    poly.resize(phi);
    return;
  }
  for (std::size_t i = phi; i < poly.size(); ++i) {
    if (poly[i] == 0) continue;
    const auto& row = rows_[i];
    for (std::size_t j = 0; j < phi; ++j) addmul_si(poly[j], poly[i], row[j]);
  }
  poly.resize(phi);
}

CyclotomicNumber::CyclotomicNumber(long level) : CyclotomicNumber(CyclotomicField::get(level)) {}

CyclotomicNumber::CyclotomicNumber(FieldPtr field)
    : field_(std::move(field)), num_(static_cast<std::size_t>(field_->degree())), den_(1) {}

CyclotomicNumber::CyclotomicNumber(FieldPtr field, std::vector<BigInt> numerators, BigInt denominator)
    : field_(std::move(field)), num_(std::move(numerators)), den_(std::move(denominator)) {
  if (den_ == 0) throw ValidationError("zero denominator");
  field_->reduce(num_);
  canonicalize();
}

CyclotomicNumber CyclotomicNumber::from_rational(long level, const Rational& value) {
  CyclotomicNumber r(level);
  r.num_[0] = value.get_num();
  r.den_ = value.get_den();
  r.canonicalize();
  return r;
}

CyclotomicNumber CyclotomicNumber::zeta_power(long level, long exponent) {
  auto field = CyclotomicField::get(level);
  const auto& row = field->power_row(mod(exponent, level));
  std::vector<BigInt> num(row.begin(), row.end());
  return CyclotomicNumber(field, std::move(num), 1);
}

CyclotomicNumber CyclotomicNumber::from_power_basis(long level, const std::vector<Rational>& coeffs) {
  auto field = CyclotomicField::get(level);
  BigInt den = 1;
  for (const auto& c : coeffs) den = lcm(den, BigInt(c.get_den()));
  std::vector<BigInt> num;
  num.reserve(coeffs.size());
  for (const auto& c : coeffs) num.push_back(c.get_num() * (den / c.get_den()));
  return CyclotomicNumber(field, std::move(num), std::move(den));
}

void CyclotomicNumber::canonicalize() {
  if (den_ < 0) {
    den_ = -den_;
    for (auto& c : num_) c = -c;
  }
  if (den_ == 1) return;
  BigInt g = den_;
  for (const auto& c : num_) {
    if (c != 0) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
      if (g == 1) return;
    }
  }
  if (g == den_) {
    // Covers zero (g == den) as well as exact integers.
    bool all_zero = true;
    for (const auto& c : num_) all_zero = all_zero && c == 0;
    if (all_zero) {
      den_ = 1;
      return;
    }
  }
  for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
}

void CyclotomicNumber::check_level(const CyclotomicNumber& other) const {
  if (field_->level() != other.field_->level()) {
    throw ValidationError("cyclotomic levels differ: " + std::to_string(field_->level()) + " vs " +
                          std::to_string(other.field_->level()));
  }
}

Rational CyclotomicNumber::coeff(int i) const {
  Rational r(num_.at(static_cast<std::size_t>(i)), den_);
  r.canonicalize();
  return r;
}

std::vector<Rational> CyclotomicNumber::coeffs() const {
  std::vector<Rational> out;
  for (int i = 0; i < field_->degree(); ++i) out.push_back(coeff(i));
  return out;
}

bool CyclotomicNumber::is_zero() const {
  for (const auto& c : num_) {
    if (c != 0) return false;
  }
  return true;
}

bool CyclotomicNumber::is_one() const { return den_ == 1 && num_[0] == 1 && is_rational(); }

bool CyclotomicNumber::is_rational() const {
  for (std::size_t i = 1; i < num_.size(); ++i) {
    if (num_[i] != 0) return false;
  }
  return true;
}

Rational CyclotomicNumber::rational_value() const {
  if (!is_rational()) throw ConsistencyError("cyclotomic number " + to_string() + " is not rational");
  return coeff(0);
}

CyclotomicNumber& CyclotomicNumber::operator+=(const CyclotomicNumber& rhs) {
  check_level(rhs);
  if (den_ == rhs.den_) {
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] += rhs.num_[i];
  } else {
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] = num_[i] * rhs.den_ + rhs.num_[i] * den_;
    den_ *= rhs.den_;
  }
  canonicalize();
  return *this;
}

CyclotomicNumber& CyclotomicNumber::operator-=(const CyclotomicNumber& rhs) {
  check_level(rhs);
  if (den_ == rhs.den_) {
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] -= rhs.num_[i];
  } else {
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] = num_[i] * rhs.den_ - rhs.num_[i] * den_;
    den_ *= rhs.den_;
  }
  canonicalize();
  return *this;
}

CyclotomicNumber& CyclotomicNumber::operator*=(const CyclotomicNumber& rhs) {
  check_level(rhs);
  const std::size_t phi = num_.size();
  std::vector<BigInt> prod(2 * phi - 1);
  for (std::size_t i = 0; i < phi; ++i) {
    if (num_[i] == 0) continue;
    for (std::size_t j = 0; j < phi; ++j) {
      if (rhs.num_[j] != 0) mpz_addmul(prod[i + j].get_mpz_t(), num_[i].get_mpz_t(), rhs.num_[j].get_mpz_t());
    }
  }
  field_->reduce(prod);
  num_ = std::move(prod);
  den_ *= rhs.den_;
  canonicalize();
  return *this;
}

CyclotomicNumber& CyclotomicNumber::operator*=(const Rational& rhs) {
  for (auto& c : num_) c *= rhs.get_num();
  den_ *= rhs.get_den();
  canonicalize();
  return *this;
}

CyclotomicNumber CyclotomicNumber::operator-() const {
  CyclotomicNumber r(*this);
  for (auto& c : r.num_) c = -c;
  return r;
}

bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b) {
  return a.level() == b.level() && a.den_ == b.den_ && a.num_ == b.num_;
}

Rational CyclotomicNumber::norm() const {
  CyclotomicNumber prod = *this;
  for (long l : field_->units()) {
    if (l != 1) prod *= galois_sigma(*this, l);
  }
  return prod.rational_value();
}

CyclotomicNumber CyclotomicNumber::inverse() const {
  if (is_zero()) throw ValidationError("inverse of zero cyclotomic number");
  CyclotomicNumber cofactor = CyclotomicNumber::from_rational(level(), 1);
  for (long l : field_->units()) {
    if (l != 1) cofactor *= galois_sigma(*this, l);
  }
  const Rational n = (cofactor * *this).rational_value();
  cofactor *= Rational(1) / n;
  return cofactor;
}

BigComplex CyclotomicNumber::to_complex(const std::vector<BigComplex>& zeta_powers) const {
  const mpfr_prec_t bits = zeta_powers.front().precision();
  BigComplex acc(bits);
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (num_[i] == 0) continue;
    BigComplex term = zeta_powers[i];
    term *= BigFloat(num_[i], bits);
    acc += term;
  }
  acc *= BigFloat(1L, bits) / BigFloat(den_, bits);
  return acc;
}

BigComplex CyclotomicNumber::to_complex(mpfr_prec_t bits) const { return to_complex(zeta_powers(level(), bits)); }

std::string CyclotomicNumber::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < field_->degree(); ++i) {
    Rational c = coeff(i);
    if (c == 0) continue;
    if (!first) {
      os << (c < 0 ? " - " : " + ");
      c = abs(c);
    } else if (c < 0 && i > 0) {
      os << "-";
      c = abs(c);
    }
    first = false;
    if (i == 0) {
      os << modfun::to_string(c);
    } else {
      if (c != 1) os << modfun::to_string(c) << "*";
      os << "z";
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

CyclotomicNumber galois_sigma(const CyclotomicNumber& x, long l) {
  const long n = x.level();
  if (std::gcd(mod(l, n), n) != 1) {
    throw ValidationError("sigma_l requires gcd(l, N) = 1; got l=" + std::to_string(l) + ", N=" + std::to_string(n));
  }
  std::vector<BigInt> num(static_cast<std::size_t>(n));
  const auto& src = x.numerators();
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (src[i] != 0) num[static_cast<std::size_t>(mod(static_cast<long>(i) * l, n))] += src[i];
  }
  return CyclotomicNumber(x.field(), std::move(num), x.denominator());
}

std::vector<BigComplex> zeta_powers(long level, mpfr_prec_t bits) {
  std::vector<BigComplex> out;
  out.reserve(static_cast<std::size_t>(level));
  for (long k = 0; k < level; ++k) out.push_back(BigComplex::root_of_unity(k, level, bits));
  return out;
}

}  // namespace modfun
