#include "modfun/modeq/modeq.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>

#include "modfun/errors.hpp"

namespace modfun {

using Exponent = QSeries::Exponent;

namespace {

std::string signed_join(const std::vector<std::pair<bool, std::string>>& terms) {
  std::string out;
  for (const auto& [neg, body] : terms) {
    if (out.empty()) {
      out = (neg ? "-" : "") + body;
    } else {
      out += (neg ? " - " : " + ") + body;
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace

JPoly::JPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

bool JPoly::is_integral() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c.get_den() == 1; });
}

Rational JPoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0;
  return coeffs_[static_cast<std::size_t>(k)];
}

Rational JPoly::evaluate(const Rational& j) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * j + *it;
  return acc;
}

BigComplex JPoly::evaluate(const BigComplex& j) const {
  const mpfr_prec_t bits = j.precision();
  BigComplex acc(bits);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * j + BigComplex(BigFloat(*it, bits), BigFloat(bits));
  }
  return acc;
}

std::string JPoly::to_string() const {
  std::vector<std::pair<bool, std::string>> terms;
  for (int k = degree(); k >= 0; --k) {
    const Rational& c = coeffs_[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    const Rational a = abs(c);
    std::string power = k == 0 ? "" : (k == 1 ? "j" : "j^" + std::to_string(k));
    std::string body;
    if (power.empty()) {
      body = modfun::to_string(a);
    } else {
      body = (a == 1) ? power : modfun::to_string(a) + "*" + power;
    }
    terms.emplace_back(c < 0, body);
  }
  return signed_join(terms);
}

BivarPoly::BivarPoly(std::vector<JPoly> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty() || coeffs_.front() != JPoly::constant(1)) {
    throw ValidationError("modular equation must be monic in X");
  }
}

bool BivarPoly::is_integral() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const JPoly& p) { return p.is_integral(); });
}

int BivarPoly::j_degree() const {
  int d = 0;
  for (const auto& p : coeffs_) d = std::max(d, p.degree());
  return d;
}

std::vector<Rational> BivarPoly::specialize(const Rational& j0) const {
  std::vector<Rational> out;
  for (const auto& p : coeffs_) out.push_back(p.evaluate(j0));
  return out;
}

std::vector<BigComplex> BivarPoly::specialize(const BigComplex& j0) const {
  std::vector<BigComplex> out;
  for (const auto& p : coeffs_) out.push_back(p.evaluate(j0));
  return out;
}

std::string BivarPoly::to_string() const {
  std::vector<std::pair<bool, std::string>> terms;
  const long d = degree();
  for (long i = 0; i <= d; ++i) {
    const JPoly& p = coeffs_[static_cast<std::size_t>(i)];
    if (p.is_zero()) continue;
    const long e = d - i;
    const std::string xpow = e == 0 ? "" : (e == 1 ? "X" : "X^" + std::to_string(e));
    bool neg = false;
    std::string coef;
    if (p.degree() == 0) {
      neg = p.coeff(0) < 0;
      const Rational a = abs(p.coeff(0));
      coef = (a == 1 && !xpow.empty()) ? "" : modfun::to_string(a);
    } else {
      // Pull the sign of the leading j-term out front, as in -(22*j - 24250028)*X^6.
      neg = p.coeffs().back() < 0;
      std::vector<Rational> c = p.coeffs();
      if (neg) {
        for (auto& x : c) x = -x;
      }
      coef = "(" + JPoly(c).to_string() + ")";
    }
    std::string body = coef;
    if (!xpow.empty()) body = coef.empty() ? xpow : coef + "*" + xpow;
    terms.emplace_back(neg, body);
  }
  return signed_join(terms);
}

nlohmann::json BivarPoly::to_json() const {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& p : coeffs_) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& c : p.coeffs()) row.push_back(modfun::to_string(c));
    coeffs.push_back(row);
  }
  return {{"degX", degree()}, {"coeffs", coeffs}};
}

BivarPoly BivarPoly::from_json(const nlohmann::json& doc) {
  try {
    const long d = doc.at("degX").get<long>();
    const auto& rows = doc.at("coeffs");
    if (!rows.is_array() || static_cast<long>(rows.size()) != d + 1) {
      throw ValidationError("coefficient list length does not match degX");
    }
    std::vector<JPoly> coeffs;
    for (const auto& row : rows) {
      std::vector<Rational> c;
      for (const auto& x : row) c.push_back(parse_rational(x.is_string() ? x.get<std::string>() : x.dump()));
      coeffs.emplace_back(std::move(c));
    }
    return BivarPoly(std::move(coeffs));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed polynomial document: ") + e.what());
  }
}

QSeries j_series_x(long level, Exponent trunc_x) {
  const Exponent k = std::max<Exponent>(trunc_x + 2, 3);
  const auto n = static_cast<std::size_t>(k);
  std::vector<BigInt> e4(n), e6(n);
  e4[0] = 1;
  e6[0] = 1;
  for (std::size_t m = 1; m < n; ++m) {
    BigInt s3 = 0, s5 = 0;
    for (std::size_t d = 1; d <= m; ++d) {
      if (m % d != 0) continue;
      const BigInt dd = static_cast<unsigned long>(d);
      s3 += dd * dd * dd;
      s5 += dd * dd * dd * dd * dd;
    }
    e4[m] = 240 * s3;
    e6[m] = -504 * s5;
  }
  auto mul = [n](const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
    std::vector<BigInt> c(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; i + j < n; ++j) c[i + j] += a[i] * b[j];
    return c;
  };
  const auto e4sq = mul(e4, e4);
  const auto e4cube = mul(e4sq, e4);
  const auto e6sq = mul(e6, e6);
  // Delta / x, with constant term 1.
  std::vector<BigInt> dx(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    BigInt t = e4cube[i + 1] - e6sq[i + 1];
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), 1728);
    dx[i] = t;
  }
  std::vector<BigInt> h(n - 1);
  for (std::size_t m = 0; m + 1 < n; ++m) {
    BigInt acc = e4cube[m];
    for (std::size_t i = 1; i <= m; ++i) acc -= dx[i] * h[m - i];
    h[m] = acc;
  }
  std::vector<CyclotomicNumber> coeffs;
  for (const auto& c : h) coeffs.push_back(CyclotomicNumber::from_rational(level, Rational(c)));
  return QSeries::from_coefficients(level, -1, std::move(coeffs), std::nullopt).truncated(trunc_x);
}

QSeries j_series(long level, Exponent trunc) {
  const Exponent tx = trunc >= 0 ? (trunc + level - 1) / level : -((-trunc) / level);
  return j_series_x(level, tx + 1).inflate(level).truncated(trunc);
}

JPoly reduce_to_jpoly_x(const QSeries& fx) {
  if (!fx.is_rational()) throw ConsistencyError("series to reduce has non-rational coefficients");
  QSeries residual = fx;
  if (residual.is_exact()) residual = residual.truncated(std::max<Exponent>(residual.end_exponent(), 1));
  const Exponent trunc = *residual.trunc();
  if (trunc < 1) throw PrecisionError("series carries no exponent >= 0 to check a polynomial in j");
  const long level = fx.level();
  const Exponent kmax = residual.is_zero() ? 0 : std::max<Exponent>(0, -residual.valuation());
  std::vector<QSeries> jpow;
  if (kmax > 0) {
    jpow.push_back(j_series_x(level, trunc + kmax));
    for (Exponent k = 2; k <= kmax; ++k) jpow.push_back(jpow.back() * jpow.front());
  }
  std::vector<Rational> p(static_cast<std::size_t>(kmax + 1), 0);
  while (!residual.is_zero() && residual.valuation() < 0) {
    const Exponent k = -residual.valuation();
    const Rational c = residual.leading().rational_value();
    p[static_cast<std::size_t>(k)] = c;
    residual -= jpow[static_cast<std::size_t>(k - 1)] * c;
  }
  if (!residual.is_zero() && residual.valuation() == 0) {
    const Rational c = residual.leading().rational_value();
    p[0] = c;
    residual -= QSeries::constant(CyclotomicNumber::from_rational(level, c));
  }
  if (!residual.is_zero()) {
    throw ConsistencyError("series is not a polynomial in j: residual " + residual.to_string(3));
  }
  return JPoly(std::move(p));
}

JPoly reduce_to_jpoly(const QSeries& f, long level) {
  if (f.level() != level) throw ValidationError("series level does not match N");
  return reduce_to_jpoly_x(f.decimate(level));
}

namespace {

// sum over 0 <= k < size of f(zeta^k q).
QSeries shift_sum(const QSeries& f, long size) {
  const long n = f.level();
  if (size == 1) return f;
  std::vector<CyclotomicNumber> factor;
  for (long r = 0; r < n; ++r) {
    CyclotomicNumber s(n);
    for (long k = 0; k < size; ++k) s += CyclotomicNumber::zeta_power(n, k * r);
    factor.push_back(s);
  }
  std::vector<CyclotomicNumber> out;
  out.reserve(f.coefficients().size());
  for (std::size_t i = 0; i < f.coefficients().size(); ++i) {
    const auto& s = factor[static_cast<std::size_t>(mod(f.first_exponent() + static_cast<Exponent>(i), n))];
    out.push_back(s.is_zero() ? s : f.coefficients()[i] * s);
  }
  return QSeries::from_coefficients(n, f.first_exponent(), std::move(out), f.trunc());
}

// Coefficients (X^M ... X^0) of prod (X - g_k) over one group, written in q^step.
struct GroupPoly {
  std::vector<QSeries> coeffs;
  long step = 1;
};

GroupPoly group_polynomial(const ConjugateGroup& g, long level, Exponent trunc) {
  const QSeries base = g.base(trunc);
  const long m = g.size;
  std::vector<QSeries> sums;
  QSeries power = base;
  for (long r = 1; r <= m; ++r) {
    if (r > 1) power = power * base;
    sums.push_back(shift_sum(power, m));
  }
  long step = level;
  for (const auto& s : sums) step = std::gcd(step, s.exponent_step(level));
  for (auto& s : sums) s = s.decimate(step);

  // Newton: i e_i = sum_{r=1}^{i} (-1)^(r-1) e_{i-r} p_r.
  std::vector<QSeries> e{QSeries::constant(CyclotomicNumber::from_rational(level, 1))};
  for (long i = 1; i <= m; ++i) {
    QSeries acc = QSeries::zero(level, std::nullopt);
    for (long r = 1; r <= i; ++r) {
      QSeries term = e[static_cast<std::size_t>(i - r)] * sums[static_cast<std::size_t>(r - 1)];
      if (r % 2 == 0) {
        acc -= term;
      } else {
        acc += term;
      }
    }
    acc *= Rational(1, i);
    e.push_back(std::move(acc));
  }
  GroupPoly out;
  out.step = step;
  for (long i = 0; i <= m; ++i) out.coeffs.push_back(i % 2 ? -e[static_cast<std::size_t>(i)] : e[static_cast<std::size_t>(i)]);
  return out;
}

std::vector<QSeries> poly_mul(const std::vector<QSeries>& a, const std::vector<QSeries>& b, long level) {
  std::vector<QSeries> c(a.size() + b.size() - 1, QSeries::zero(level, std::nullopt));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

}  // namespace

BivarPoly modular_equation(long level, const std::vector<ConjugateGroup>& groups, const ModeqOptions& opts) {
  Exponent poles = 0;
  long degree = 0;
  for (const auto& g : groups) {
    poles += g.size * std::max<Exponent>(0, -g.valuation_bound);
    degree += g.size;
  }
  const Exponent target = level * opts.guard;
  Exponent slack = level;
  for (int attempt = 0; attempt < 2; ++attempt) {
    const Exponent trunc = target + poles + slack;
    if (opts.log) {
      *opts.log << "modular equation: degree " << degree << ", pole bound q^-" << poles << ", truncation q^" << trunc
                << "\n";
    }
    std::vector<GroupPoly> parts;
    long step = level;
    for (const auto& g : groups) {
      parts.push_back(group_polynomial(g, level, trunc));
      step = std::gcd(step, parts.back().step);
    }
    std::vector<QSeries> acc{QSeries::constant(CyclotomicNumber::from_rational(level, 1))};
    for (auto& part : parts) {
      if (part.step != step) {
        for (auto& c : part.coeffs) c = c.inflate(part.step / step);
      }
      acc = poly_mul(acc, part.coeffs, level);
    }
    bool short_trunc = false;
    std::vector<QSeries> xs;
    for (const auto& c : acc) {
      QSeries x = c.decimate(level / step);
      if (x.trunc() && *x.trunc() < opts.guard) short_trunc = true;
      xs.push_back(std::move(x));
    }
    if (short_trunc) {
      if (opts.log) *opts.log << "modular equation: truncation too short, retrying\n";
      slack = 2 * (slack + poles);
      continue;
    }
    std::vector<JPoly> coeffs;
    for (const auto& x : xs) coeffs.push_back(reduce_to_jpoly_x(x));
    return BivarPoly(std::move(coeffs));
  }
  throw PrecisionError("modular equation coefficients did not reach the required precision");
}

BivarPoly modular_equation_T(const TupleA& tuple, const IntPoly& f, const ModeqOptions& opts) {
  const long n = tuple.level();
  if (f.nvars() != static_cast<int>(tuple.size())) {
    throw ValidationError("polynomial variable count does not match the tuple length");
  }
  bool all_e2 = true;
  for (const auto& t : tuple.triples) {
    const auto cls = membership(t);
    if (cls == TripleClass::E) throw ValidationError("triple " + t.to_string() + " is not in E1");
    all_e2 = all_e2 && cls == TripleClass::E2;
  }
  std::vector<ConjugateGroup> groups;
  for (long t : divisors(n)) {
    for (auto [u, v] : theta_set(n, t)) {
      ConjugateGroup g;
      g.base = [&tuple, &f, t, v](Exponent trunc) { return t_series(tuple, f, t, v, trunc); };
      g.valuation_bound = t_valuation_bound(tuple, f, t);
      g.size = k_range(n, t);
      groups.push_back(std::move(g));
    }
  }
  BivarPoly phi = modular_equation(n, groups, opts);
  if (n % 2 == 1 && all_e2 && !phi.is_integral()) {
    throw ConsistencyError("non-integral coefficient in a modular equation that must lie in Z[j][X]");
  }
  return phi;
}

BivarPoly modular_equation_W(const TripleA& triple, const ModeqOptions& opts) {
  const long n = triple.level;
  const auto cls = membership(triple);
  if (cls == TripleClass::E) throw ValidationError("triple " + triple.to_string() + " is not in E1");
  std::vector<ConjugateGroup> groups;
  for (long lambda : sn_representatives(n)) {
    const TripleA b = act_on_triple(lambda, triple);
    for (long t : divisors(n)) {
      for (auto [u, v] : theta_set(n, t)) {
        ConjugateGroup g;
        g.base = [b, t, v](Exponent trunc) { return w_series(b, t, v, trunc); };
        g.valuation_bound = order_at_cusp(b, t);
        g.size = k_range(n, t);
        groups.push_back(std::move(g));
      }
    }
  }
  BivarPoly phi = modular_equation(n, groups, opts);
  if (n % 2 == 1 && cls == TripleClass::E2 && !phi.is_integral()) {
    throw ConsistencyError("non-integral coefficient in a modular equation that must lie in Z[j][X]");
  }
  return phi;
}

}  // namespace modfun
