#include "modfun/singular/singular.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <set>

#include "modfun/errors.hpp"
#include "modfun/modeq/modeq.hpp"

namespace modfun {

namespace {

void check_discriminant(long D) {
  if (D >= 0 || (mod(D, 4) != 0 && mod(D, 4) != 1)) {
    throw ValidationError("discriminant must be negative and 0 or 1 mod 4, got " + std::to_string(D));
  }
}

// Bezout: returns (r, s) with x s - r y = 1 for coprime x, y.
std::pair<long, long> complete_basis(long x, long y) {
  long old_r = x, r = y, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const long q = old_r / r;
    old_r -= q * r;
    std::swap(old_r, r);
    old_s -= q * s;
    std::swap(old_s, s);
    old_t -= q * t;
    std::swap(old_t, t);
  }
  // old_s x + old_t y = old_r = +-1
  if (old_r < 0) {
    old_s = -old_s;
    old_t = -old_t;
  }
  return {-old_t, old_s};
}

// Q o [[x, r], [y, s]].
QuadraticForm transform(const QuadraticForm& f, long x, long r, long y, long s) {
  QuadraticForm g;
  g.A = f.value(x, y);
  g.B = 2 * f.A * x * r + f.B * (x * s + r * y) + 2 * f.C * y * s;
  g.C = f.value(r, s);
  return g;
}

}  // namespace

QuadraticForm QuadraticForm::make(long A, long B, long C) {
  QuadraticForm f{A, B, C};
  if (A <= 0 || f.discriminant() >= 0) throw ValidationError("form " + f.to_string() + " is not positive definite");
  if (std::gcd(std::gcd(A, std::abs(B)), std::abs(C)) != 1) {
    throw ValidationError("form " + f.to_string() + " is not primitive");
  }
  return f;
}

bool QuadraticForm::is_reduced() const {
  if (std::abs(B) > A || A > C) return false;
  if ((std::abs(B) == A || A == C) && B < 0) return false;
  return true;
}

BigComplex QuadraticForm::root(mpfr_prec_t bits) const {
  const BigFloat two_a(2 * A, bits);
  return BigComplex(BigFloat(-B, bits) / two_a, BigFloat(-discriminant(), bits).sqrt() / two_a);
}

std::string QuadraticForm::to_string() const {
  return "(" + std::to_string(A) + "," + std::to_string(B) + "," + std::to_string(C) + ")";
}

QuadraticForm reduce(const QuadraticForm& f) {
  QuadraticForm g = f;
  for (;;) {
    // Normalize B into (-A, A].
    const long k = static_cast<long>(std::floor(static_cast<double>(g.A - g.B) / static_cast<double>(2 * g.A)));
    if (k != 0) {
      g.C = g.A * k * k + g.B * k + g.C;
      g.B = g.B + 2 * g.A * k;
    }
    if (g.A > g.C) {
      std::swap(g.A, g.C);
      g.B = -g.B;
      continue;
    }
    if (g.A == g.C && g.B < 0) g.B = -g.B;
    return g;
  }
}

std::vector<QuadraticForm> reduced_forms(long D) {
  check_discriminant(D);
  std::vector<QuadraticForm> out;
  for (long a = 1; 3 * a * a <= -D; ++a) {
    for (long b = -a + 1; b <= a; ++b) {
      if (mod(b * b - D, 4 * a) != 0) continue;
      const long c = (b * b - D) / (4 * a);
      if (c < a) continue;
      if (std::gcd(std::gcd(a, std::abs(b)), c) != 1) continue;
      const QuadraticForm f{a, b, c};
      if (f.is_reduced()) out.push_back(f);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

long squarefree_kernel(long D) {
  check_discriminant(D);
  long n = -D;
  long m = 1;
  for (long p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e % 2) m *= p;
  }
  return -(m * n);
}

void NSystem::validate() const {
  const auto classes = reduced_forms(D);
  std::set<QuadraticForm> seen;
  for (const auto& f : forms) {
    if (f.discriminant() != D) throw ConsistencyError("form " + f.to_string() + " has the wrong discriminant");
    if (std::gcd(f.A, level) != 1) throw ConsistencyError("form " + f.to_string() + " has (A, N) != 1");
    if (f.C % level != 0) throw ConsistencyError("form " + f.to_string() + " has N not dividing C");
    if (mod(f.B - b0, 2 * level) != 0) throw ConsistencyError("form " + f.to_string() + " has B != B0 mod 2N");
    if (!seen.insert(reduce(f)).second) throw ConsistencyError("two forms of the N-system share an ideal class");
  }
  if (seen.size() != classes.size() || !std::equal(seen.begin(), seen.end(), classes.begin())) {
    throw ConsistencyError("N-system does not cover every ideal class");
  }
}

nlohmann::json NSystem::to_json() const {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& f : forms) pts.push_back({{"A", f.A}, {"B", f.B}, {"C", f.C}});
  return {{"N", level}, {"D", D}, {"B0", b0}, {"forms", pts}};
}

long default_anchor(long D, long level) {
  check_discriminant(D);
  for (long b = 0; b < 2 * level; ++b) {
    if (mod(b * b - D, 4 * level) == 0) return b;
  }
  throw ValidationError("no B0 with B0^2 = " + std::to_string(D) + " mod " + std::to_string(4 * level));
}

long effective_anchor(long D, long level, long b0) {
  check_discriminant(D);
  if (mod(b0 * b0 - D, 4 * level) == 0) return b0;
  if (mod(D, 4) == 0 && mod(4 * b0 * b0 - D, 4 * level) == 0) return 2 * b0;
  throw ValidationError("B0 = " + std::to_string(b0) + " does not satisfy B0^2 = D mod 4N");
}

NSystem build_nsystem(long D, long level, std::optional<long> b0) {
  if (level < 2) throw ValidationError("N must be at least 2");
  NSystem sys;
  sys.level = level;
  sys.D = D;
  sys.b0 = b0 ? effective_anchor(D, level, *b0) : default_anchor(D, level);
  for (const auto& f : reduced_forms(D)) {
    std::optional<std::pair<long, long>> best;
    long best_value = 0;
    long bound = 50;
    for (int raise = 0; raise <= 3 && !best; ++raise, bound *= 4) {
      for (long x = -bound; x <= bound; ++x) {
        for (long y = 0; y <= bound; ++y) {
          if (y == 0 && x != 1) continue;
          if (std::gcd(std::abs(x), y) != 1) continue;
          const long a = f.value(x, y);
          if (std::gcd(a, level) != 1) continue;
          if (!best || a < best_value) {
            best = {x, y};
            best_value = a;
          }
        }
      }
    }
    if (!best) throw ValidationError("no representative prime to N found for class " + f.to_string());
    const auto [x, y] = *best;
    const auto [r, s] = complete_basis(x, y);
    const QuadraticForm g = transform(f, x, r, y, s);
    // B'' = B0 + 2N k with B'' = g.B mod 2A; unique for 0 <= k < A.
    long bb = 0;
    bool found = false;
    for (long k = 0; k < g.A; ++k) {
      bb = sys.b0 + 2 * level * k;
      if (mod(bb - g.B, 2 * g.A) == 0) {
        found = true;
        break;
      }
    }
    if (!found) throw ConsistencyError("no common B for form " + g.to_string());
    sys.forms.push_back(QuadraticForm{g.A, bb, (bb * bb - D) / (4 * g.A)});
  }
  sys.validate();
  return sys;
}

ImagQuadNum ImagQuadNum::make(BigInt u, BigInt v, long denom, long m) {
  if (m >= 0 || squarefree_kernel(4 * m) != m) throw ValidationError("m must be negative and squarefree");
  if (denom != 1 && denom != 2) throw ValidationError("denominator must be 1 or 2");
  if (denom == 2) {
    if (mod(m, 4) != 1) throw ValidationError("denominator 2 needs m = 1 mod 4");
    const BigInt du = u - v;
    if (mpz_even_p(du.get_mpz_t()) == 0) throw ValidationError("(u + v sqrt(m))/2 needs u = v mod 2");
    if (mpz_even_p(u.get_mpz_t()) != 0) {
      u /= 2;
      v /= 2;
      denom = 1;
    }
  }
  return ImagQuadNum{std::move(u), std::move(v), denom, m};
}

BigComplex ImagQuadNum::value(mpfr_prec_t bits) const {
  const BigFloat d(denom, bits);
  return BigComplex(BigFloat(u, bits) / d, BigFloat(v, bits) * BigFloat(-m, bits).sqrt() / d);
}

std::string ImagQuadNum::to_string() const {
  const std::string root = "sqrt(" + std::to_string(m) + ")";
  std::string body;
  if (v == 0) {
    body = u.get_str();
  } else {
    const BigInt av = abs(v);
    const std::string vpart = (av == 1 ? "" : av.get_str() + "*") + root;
    if (u == 0) {
      body = (v < 0 ? "-" : "") + vpart;
    } else {
      body = u.get_str() + (v < 0 ? "-" : "+") + vpart;
    }
  }
  if (denom == 1) return body;
  return "(" + body + ")/2";
}

nlohmann::json ImagQuadNum::to_json() const {
  return {{"u", u.get_str()}, {"v", v.get_str()}, {"denom", denom}, {"m", m}};
}

ImagQuadNum recognize_OK(const BigComplex& z, long D, long tol_digits) {
  const long m = squarefree_kernel(D);
  const mpfr_prec_t bits = z.precision();
  const BigFloat sqrt_m = BigFloat(-m, bits).sqrt();
  const long denom = mod(m, 4) == 1 ? 2 : 1;
  const BigFloat dd(denom, bits);
  BigInt u = (z.re() * dd).round();
  BigInt v = (z.im() * dd / sqrt_m).round();
  if (denom == 2 && mpz_even_p(BigInt(u - v).get_mpz_t()) == 0) {
    throw PrecisionError("recognized value (" + u.get_str() + "+" + v.get_str() + "*sqrt(" + std::to_string(m) +
                         "))/2 is not in O_K");
  }
  const ImagQuadNum out = ImagQuadNum::make(u, v, denom, m);
  const BigFloat residual = (z - out.value(bits)).abs();
  if (!residual.is_zero() && residual.log10_abs() > -static_cast<double>(tol_digits)) {
    throw PrecisionError("recognition residual 1e" + std::to_string(static_cast<long>(residual.log10_abs())) +
                         " exceeds 1e-" + std::to_string(tol_digits));
  }
  return out;
}

BigComplex eval_T_at_minus_recip(const TupleA& tuple, const IntPoly& f, const BigComplex& alpha, long digits) {
  if (alpha.im().sign() <= 0) throw ValidationError("alpha must lie in the upper half plane");
  // T o S = T o B(1,1,1,-1), whose bottom row is (1, 0).
  return t_value(tuple, f, 1, 0, alpha, digits);
}

BigComplex eval_W(const TripleA& triple, const BigComplex& alpha, long digits) {
  if (alpha.im().sign() <= 0) throw ValidationError("alpha must lie in the upper half plane");
  return w_value(triple, 0, 1, alpha, digits);
}

BigComplex eval_j(const BigComplex& alpha, long digits) {
  if (alpha.im().sign() <= 0) throw ValidationError("alpha must lie in the upper half plane");
  const mpfr_prec_t bits = std::max(bits_for_digits(digits + kGuardDigits), alpha.precision());
  BigComplex tau = alpha.with_precision(bits);
  const BigFloat one(1L, bits);
  for (int iter = 0; iter < 10000; ++iter) {
    const BigInt shift = tau.re().round();
    tau -= BigComplex(BigFloat(shift, bits), BigFloat(bits));
    if (tau.norm() >= one) break;
    tau = BigComplex(-one, BigFloat(bits)) / tau;
  }
  // j coefficients grow like exp(4 pi sqrt(n)); pick n with
  // 4 pi sqrt(n) - 2 pi Im(tau) n < -(digits + guard) ln 10.
  const double y = tau.im().to_double();
  const double target = static_cast<double>(digits + kGuardDigits + 5) * std::log(10.0);
  double n = 10;
  for (int i = 0; i < 100; ++i) n = (target + 4 * M_PI * std::sqrt(n)) / (2 * M_PI * y);
  const auto terms = static_cast<QSeries::Exponent>(std::ceil(n)) + 1;
  constexpr long kLevel = 3;
  const QSeries j = j_series_x(kLevel, terms).inflate(kLevel);
  return series_eval(j, tau, digits).value;
}

std::string ClassPolynomial::to_string() const {
  std::string out;
  const long h = static_cast<long>(coeffs.size()) - 1;
  for (long i = 0; i <= h; ++i) {
    const ImagQuadNum& c = coeffs[static_cast<std::size_t>(i)];
    const long e = h - i;
    if (c.is_zero()) continue;
    const std::string xpow = e == 0 ? "" : (e == 1 ? "X" : "X^" + std::to_string(e));
    const bool neg = c.u < 0 || (c.u == 0 && c.v < 0);
    const ImagQuadNum a = neg ? ImagQuadNum{-c.u, -c.v, c.denom, c.m} : c;
    std::string body;
    const bool one = a.u == 1 && a.v == 0 && a.denom == 1;
    if (one && !xpow.empty()) {
      body = xpow;
    } else {
      std::string cs = a.to_string();
      if (a.denom == 1 && a.v != 0 && a.u != 0) cs = "(" + cs + ")";
      body = xpow.empty() ? cs : cs + "*" + xpow;
    }
    if (out.empty()) {
      out = (neg ? "-" : "") + body;
    } else {
      out += (neg ? " - " : " + ") + body;
    }
  }
  return out.empty() ? "0" : out;
}

nlohmann::json ClassPolynomial::to_json() const {
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& c : coeffs) cs.push_back(c.to_json());
  return {{"D", system.D}, {"N", system.level}, {"B0", system.b0}, {"digits", digits},
          {"nsystem", system.to_json()["forms"]}, {"coeffs", cs}};
}

ClassPolynomial class_polynomial(const TupleA& tuple, const IntPoly& f, const NSystem& system,
                                 const ClassPolyOptions& opts) {
  if (system.level != tuple.level()) throw ValidationError("N-system level does not match the tuple level");
  system.validate();
  const long h = static_cast<long>(system.forms.size());
  long digits = opts.digits > 0 ? opts.digits : std::max(100L, 20 * h);
  for (int rung = 0; rung < 3; ++rung, digits *= 2) {
    if (opts.log) *opts.log << "class polynomial: h = " << h << ", working at " << digits << " digits\n";
    const mpfr_prec_t bits = bits_for_digits(digits + kGuardDigits);
    std::vector<BigComplex> poly{BigComplex(BigFloat(1L, bits), BigFloat(bits))};
    for (const auto& form : system.forms) {
      const BigComplex value = eval_T_at_minus_recip(tuple, f, form.root(bits), digits);
      std::vector<BigComplex> next(poly.size() + 1, BigComplex(bits));
      for (std::size_t i = 0; i < poly.size(); ++i) {
        next[i] += poly[i];
        next[i + 1] -= poly[i] * value;
      }
      poly = std::move(next);
    }
    try {
      ClassPolynomial out;
      out.system = system;
      out.digits = digits;
      for (const auto& c : poly) out.coeffs.push_back(recognize_OK(c, system.D, digits / 2));
      return out;
    } catch (const PrecisionError& e) {
      if (opts.log) *opts.log << "class polynomial: " << e.what() << "\n";
    }
  }
  throw PrecisionError("class polynomial coefficients were not recognized in O_K after two precision doublings");
}

ClassPolynomial class_polynomial(const TupleA& tuple, const IntPoly& f, long D, std::optional<long> b0,
                                 const ClassPolyOptions& opts) {
  return class_polynomial(tuple, f, build_nsystem(D, tuple.level(), b0), opts);
}

}  // namespace modfun
