#include "modfun/modgroup/modgroup.hpp"

#include <set>
#include <sstream>

#include "modfun/arith/cyclotomic.hpp"
#include "modfun/errors.hpp"

namespace modfun {

namespace {

void require_level(long level) {
  if (level < 3) throw ValidationError("level must be at least 3, got " + std::to_string(level));
}

}  // namespace

std::string MatrixSL2::to_string() const {
  std::ostringstream os;
  os << "[[" << a << ", " << b << "], [" << c << ", " << d << "]]";
  return os.str();
}

BraceMu brace_mu(long s, long level) {
  if (level < 1) throw ValidationError("level must be positive");
  const long r = mod(s, level);
  if (r == 0 || 2 * r == level) return {r, 1};
  if (2 * r < level) return {r, 1};
  return {level - r, -1};
}

std::vector<long> sn_representatives(long level) {
  require_level(level);
  std::vector<long> out;
  for (long l = 1; 2 * l <= level; ++l) {
    if (gcd(l, level) == 1) out.push_back(l);
  }
  return out;
}

long psi0(long level) {
  long r = level;
  for (long p : prime_divisors(level)) r = r / p * (p + 1);
  return r;
}

long psi1(long level) {
  if (level <= 2) return psi0(level);
  return euler_phi(level) * psi0(level) / 2;
}

std::string to_string(TripleClass c) {
  switch (c) {
    case TripleClass::E2:
      return "E2";
    case TripleClass::E1:
      return "E1";
    default:
      return "E";
  }
}

TripleA TripleA::make(long level, long a1, long a2, long a3) {
  require_level(level);
  TripleA t{level, {a1, a2, a3}};
  for (long x : t.a) {
    if (x <= 0 || 2 * x > level) {
      throw ValidationError("triple entry " + std::to_string(x) + " is outside (0, N/2] for N=" +
                            std::to_string(level));
    }
  }
  if (a1 == a2 || a1 == a3 || a2 == a3) throw ValidationError("triple entries must be distinct");
  return t;
}

std::string TripleA::to_string() const {
  return "[" + std::to_string(a[0]) + "," + std::to_string(a[1]) + "," + std::to_string(a[2]) + "]";
}

TripleClass membership(const TripleA& triple) {
  const long n = triple.level;
  const auto& a = triple.a;
  if (gcd(a[0] * a[1] * a[2], n) != 1) return TripleClass::E;
  for (int i = 0; i < 2; ++i) {
    if (gcd(a[i] + a[2], n) != 1 || gcd(a[i] - a[2], n) != 1) return TripleClass::E1;
  }
  return TripleClass::E2;
}

TripleA act_on_triple(long lambda, const TripleA& triple) {
  const long n = triple.level;
  if (gcd(lambda, n) != 1) throw ValidationError("lambda must be prime to N");
  TripleA out{n, {}};
  for (int i = 0; i < 3; ++i) out.a[i] = brace(lambda * triple.a[i], n);
  for (int i = 0; i < 3; ++i) {
    if (out.a[i] == 0) throw ValidationError("lambda action sends an entry of " + triple.to_string() + " to 0");
    for (int j = 0; j < i; ++j) {
      if (out.a[i] == out.a[j]) {
        throw ValidationError("lambda action collapses entries of " + triple.to_string());
      }
    }
  }
  return out;
}

MatrixSL2 m_lambda(long lambda, long level) {
  require_level(level);
  const long l = mod(lambda, level);
  const long lstar = inverse_mod(l, level);
  const long m = (lstar * l - 1) / level;
  return {lstar, m, level, l};
}

std::vector<std::pair<long, long>> theta_set(long level, long t) {
  if (t <= 0 || level % t != 0) throw ValidationError("t must divide N");
  const long g = gcd(t, level / t);
  std::vector<std::pair<long, long>> out;
  for (long r = 0; r < g; ++r) {
    if (gcd(r, g) != 1 && g != 1) continue;
    long u = (r == 0) ? g : r;
    while (gcd(u, t) != 1) u += g;
    const long v = (t == 1) ? 1 : inverse_mod(u, t);
    out.emplace_back(u, v);
  }
  return out;
}

std::vector<std::pair<long, long>> ell_theta(long level, long t, long ell) {
  if (gcd(ell, t) != 1) throw ValidationError("ell must be prime to t");
  const long lstar = (t == 1) ? 1 : inverse_mod(mod(ell, t), t);
  std::vector<std::pair<long, long>> out;
  for (auto [u, v] : theta_set(level, t)) {
    long nv = (t == 1) ? 1 : mod(ell * v, t);
    if (nv == 0) nv = t;
    out.emplace_back(lstar * u, nv);
  }
  return out;
}

CosetRep CosetRep::make(long t, long u, long v, long k) {
  if (t <= 0 || mod(u * v - 1, t) != 0) throw ValidationError("B(t,u,v,k) needs uv = 1 mod t");
  CosetRep r{t, u, v, k, {}};
  r.matrix = {u, (u * v - 1) / t + u * k, t, v + t * k};
  return r;
}

long k_range(long level, long t) { return level / gcd(t * t, level); }

std::vector<CosetRep> coset_transversal(long level) {
  require_level(level);
  std::vector<CosetRep> out;
  for (long t : divisors(level)) {
    for (auto [u, v] : theta_set(level, t)) {
      for (long k = 0; k < k_range(level, t); ++k) out.push_back(CosetRep::make(t, u, v, k));
    }
  }
  return out;
}

bool same_gamma0_coset(const MatrixSL2& x, const MatrixSL2& y, long level) {
  return mod((x * y.inverse()).c, level) == 0;
}

}  // namespace modfun
