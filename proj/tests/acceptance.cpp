// One line per acceptance criterion: "ACn PASS|FAIL <detail>".

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "modfun/errors.hpp"
#include "modfun/modeq/modeq.hpp"
#include "modfun/singular/singular.hpp"
#include "oracles.hpp"

using namespace modfun;
using namespace modfun::oracle;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [fail: " << what << "]";
    }
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

JPoly jp(std::initializer_list<const char*> ascending) {
  std::vector<Rational> c;
  for (const char* s : ascending) c.push_back(parse_rational(s));
  return JPoly(c);
}

std::vector<Rational> ints(std::initializer_list<long> v) {
  std::vector<Rational> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

std::vector<Rational> pmul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

// Remainder of a by monic b, both ordered from the leading coefficient down.
std::vector<Rational> prem(std::vector<Rational> a, const std::vector<Rational>& b) {
  while (a.size() >= b.size()) {
    const Rational lead = a.front();
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= lead * b[i];
    a.erase(a.begin());
  }
  return a;
}

TupleA tuple1(long n, long a1, long a2, long a3) { return TupleA::make({TripleA::make(n, a1, a2, a3)}); }

BigComplex quad(long u, long v, long denom, long m, mpfr_prec_t bits) {
  return ImagQuadNum::make(u, v, denom, m).value(bits);
}

ImagQuadNum iq(const char* u, const char* v, long denom, long m) {
  return ImagQuadNum::make(BigInt(u), BigInt(v), denom, m);
}

const IntPoly kX1 = IntPoly::product_of_variables(1);
const IntPoly kX1X2 = IntPoly::product_of_variables(2);

BivarPoly phi7() {
  static const BivarPoly p = modular_equation_T(tuple1(7, 2, 3, 1), kX1);
  return p;
}
BivarPoly phi11() {
  static const BivarPoly p = modular_equation_T(tuple1(11, 2, 5, 1), kX1);
  return p;
}

void ac1(Outcome& o) {
  const auto t0 = Clock::now();
  const BivarPoly phi = modular_equation_T(tuple1(7, 2, 3, 1), kX1);
  const double secs = seconds_since(t0);
  const BivarPoly expected({JPoly::constant(1), jp({"-36"}), jp({"546"}), jp({"-4592"}), jp({"23835"}),
                            jp({"-80304"}), jp({"176050"}), jp({"-232500", "-1"}), jp({"140625", "8"})});
  o.require(phi == expected, "Phi differs: " + phi.to_string());
  o.require(secs < 10.0, "runtime");
  o.detail << "N=7 [2,3,1] F=X1 degree " << phi.degree() << " exact, " << secs << " s (limit 10 s)";
}

void ac2(Outcome& o) {
  const auto t0 = Clock::now();
  const BivarPoly phi = modular_equation_T(tuple1(11, 2, 5, 1), kX1);
  const double secs = seconds_since(t0);
  const BivarPoly expected({JPoly::constant(1), jp({"-84"}), jp({"2970"}), jp({"-57772"}), jp({"680559"}),
                            jp({"-5062728"}), jp({"24250028", "-22"}), jp({"-75844824", "561"}),
                            jp({"157525071", "-2981"}), jp({"-217265444", "-1177"}), jp({"193124250", "26477"}),
                            jp({"-101227452", "-31316", "-1"}), jp({"24137569", "4261", "18"})});
  o.require(phi == expected, "Phi differs: " + phi.to_string());
  o.require(secs < 120.0, "runtime");
  o.detail << "N=11 [2,5,1] F=X1 degree " << phi.degree() << " exact incl. C11, C12, " << secs << " s (limit 120 s)";
}

void ac3(Outcome& o) {
  const auto t0 = Clock::now();
  const TupleA t = TupleA::make({TripleA::make(11, 2, 3, 1), TripleA::make(11, 2, 3, 5)});
  const BivarPoly phi = modular_equation_T(t, kX1X2);
  const double secs = seconds_since(t0);
  const std::vector<JPoly> c = {
      JPoly::constant(1),
      jp({"3660"}),
      jp({"4754178"}),
      jp({"2517699932", "21879"}),
      jp({"450023862255", "8917579"}),
      jp({"28522470464664", "-21727187108", "10912"}),
      jp({"155307879800348", "439266301210", "18536243"}),
      jp({"-22718073239498472", "-4268224633178", "6356028822", "1419"}),
      jp({"430444117263292143", "-129554423289764", "70427463557", "1663761"}),
      jp({"-4047340123195216100", "1322596244939332", "544875974962", "-100966360", "66"}),
      jp({"21981914597781276930", "-9777105305922130", "3765768493971", "-2985616392", "82687"}),
      jp({"-67067772106836815988", "21725643544520963", "49826805469384", "-26707875453", "1956838", "1"}),
      jp({"93554961663154376449", "68572479313531217", "-92728235099098", "-41072974661", "29053078", "1229"}),
  };
  o.require(phi.degree() == 12, "degree");
  int matched = 0;
  for (long i = 1; i <= 12 && phi.degree() == 12; ++i) {
    if (phi.c(i) == c[static_cast<std::size_t>(i)]) {
      ++matched;
    } else {
      o.require(false, "C_" + std::to_string(i) + " = " + phi.c(i).to_string());
    }
  }
  o.require(secs < 300.0, "runtime");
  o.detail << "N=11 [[2,3,1],[2,3,5]] F=X1X2: " << matched << "/12 C_i exact, " << secs << " s (limit 300 s)";
}

void ac4(Outcome& o) {
  const auto b = ints({1, -11, 25});
  const auto want7 = pmul(pmul(pmul(ints({1, -3, 9}), b), b), b);
  o.require(phi7().specialize(Rational(0)) == want7, "Phi_7(X,0)");
  const auto want11 =
      pmul(ints({1, -79, 2567, -44305, 438498, -2515798, 8237304, -16425295, 19561039, 15914486, 26848493}),
           ints({1, -5, 8}));
  o.require(phi11().specialize(Rational(-3375)) == want11, "Phi_11(X,-3375)");
  o.detail << "Phi_7(X,0) = (X^2-3X+9)(X^2-11X+25)^3 and Phi_11(X,-3375) = (deg 10)(X^2-5X+8), exact";
}

struct ClassCase {
  std::string name;
  TupleA tuple;
  IntPoly f;
  long D, b0;
  std::vector<ImagQuadNum> expected;
};

void ac5(Outcome& o) {
  std::vector<ClassCase> cases;
  cases.push_back({"N=7 D=-3", tuple1(7, 2, 3, 1), kX1, -3, 5, {iq("1", "0", 1, -3), iq("-3", "-3", 2, -3)}});
  cases.push_back({"N=7 D=-59",
                   tuple1(7, 2, 3, 1),
                   kX1,
                   -59,
                   5,
                   {iq("1", "0", 1, -59), iq("15", "-7", 2, -59), iq("-357", "45", 2, -59), iq("717", "1", 2, -59)}});
  const TupleA t11 = TupleA::make({TripleA::make(11, 2, 3, 1), TripleA::make(11, 2, 3, 5)});
  cases.push_back({"N=11 D=-83",
                   t11,
                   kX1X2,
                   -83,
                   7,
                   {iq("1", "0", 1, -83), iq("-361481", "-7136", 1, -83), iq("57020581", "25984608", 1, -83),
                    iq("1683573861", "-404390656", 1, -83)}});
  cases.push_back({"N=11 D=-39",
                   t11,
                   kX1X2,
                   -39,
                   7,
                   {iq("1", "0", 1, -39), iq("-4720", "231", 1, -39), iq("1491643", "-329343", 2, -39),
                    iq("-38934427", "9970611", 2, -39), iq("64994911", "-47480958", 1, -39)}});
  const TupleA t17 = TupleA::make({TripleA::make(17, 1, 2, 7), TripleA::make(17, 1, 2, 3)});
  cases.push_back({"N=17 D=-84",
                   t17,
                   kX1X2,
                   -84,
                   8,
                   {iq("1", "0", 1, -21), iq("779", "-157", 1, -21), iq("-41194", "-175", 1, -21),
                    iq("690208", "81256", 1, -21), iq("-3246464", "-566976", 1, -21)}});
  int good = 0;
  for (const auto& c : cases) {
    const auto t0 = Clock::now();
    const ClassPolynomial h = class_polynomial(c.tuple, c.f, c.D, c.b0);
    const double secs = seconds_since(t0);
    // Residual of the recognized coefficients against the numeric product.
    const mpfr_prec_t bits = bits_for_digits(h.digits + kGuardDigits);
    std::vector<BigComplex> poly{cplx(1, 0, bits)};
    for (const auto& form : h.system.forms) {
      const BigComplex v = eval_T_at_minus_recip(c.tuple, c.f, form.root(bits), h.digits);
      std::vector<BigComplex> next(poly.size() + 1, BigComplex(bits));
      for (std::size_t i = 0; i < poly.size(); ++i) {
        next[i] += poly[i];
        next[i + 1] -= poly[i] * v;
      }
      poly = std::move(next);
    }
    double worst = -1e9;
    for (std::size_t i = 0; i < poly.size() && i < h.coeffs.size(); ++i) {
      const BigFloat r = (poly[i] - h.coeffs[i].value(bits)).abs();
      if (!r.is_zero()) worst = std::max(worst, r.log10_abs());
    }
    const bool exact = h.coeffs == c.expected;
    const bool ok = exact && worst < -30 && h.digits >= 100 && secs < 120;
    if (ok) {
      ++good;
    } else {
      std::string why = c.name + ":";
      if (!exact) why += " got " + h.to_string();
      if (worst >= -30) why += " residual 1e" + std::to_string(static_cast<long>(worst));
      if (secs >= 120) why += " runtime";
      o.require(false, why);
    }
    o.detail << " " << c.name << (ok ? " ok" : " MISMATCH") << " (" << h.digits << " digits, residual 1e"
             << static_cast<long>(worst) << ", " << secs << " s);";
  }
  std::ostringstream head;
  head << good << "/" << cases.size() << " class polynomials exact:";
  const std::string rest = o.detail.str();
  o.detail.str("");
  o.detail << head.str() << rest;
}

void ac6(Outcome& o) {
  const long digits = 60;
  const mpfr_prec_t bits = bits_for_digits(digits + kGuardDigits);
  struct Case {
    std::string name;
    TupleA tuple;
    BigComplex alpha, expected;
  };
  const std::vector<Case> cases = {
      {"N=7 (3+3sqrt(-3))/2", tuple1(7, 2, 3, 1), quad(-5, 1, 2, -3, bits), quad(3, 3, 2, -3, bits)},
      {"N=13 (9+3sqrt(-3))/2", tuple1(13, 5, 3, 1), quad(-7, 1, 2, -3, bits), quad(9, 3, 2, -3, bits)},
      {"N=11 (5+sqrt(-7))/2", tuple1(11, 2, 5, 1), quad(-9, 1, 2, -7, bits), quad(5, 1, 2, -7, bits)},
  };
  for (const auto& c : cases) {
    const BigComplex v = eval_T_at_minus_recip(c.tuple, kX1, c.alpha, digits);
    const double err = (v - c.expected).abs().log10_abs();
    const bool ok = err < -40;
    o.detail << " " << c.name << (ok ? " ok" : " MISMATCH") << " (|diff| 1e" << static_cast<long>(err) << ");";
    if (!ok) {
      o.require(false, c.name + ": computed " + v.to_string(25));
      // Show what the defining lattice sums give at -1/alpha.
      const BigComplex tau = cplx(-1, 0, bits) / c.alpha;
      std::vector<std::array<long, 3>> tri;
      for (const auto& t : c.tuple.triples) tri.push_back(t.a);
      const mpfr_prec_t lb = bits_for_digits(40);
      o.detail << " lattice-sum oracle at -1/alpha: " << t_product_oracle(c.tuple.level(), tri, tau.with_precision(lb), lb).to_string(20)
               << ";";
    }
  }
}

void ac7(Outcome& o) {
  const BivarPoly phi = modular_equation_T(tuple1(13, 5, 3, 1), kX1);
  int sign_found = 0;
  for (int sign : {1, -1}) {
    const auto quartic = ints({1, -21, 167, sign * 604, 848});
    auto base = pmul(pmul(pmul(ints({1, -9, 27}), quartic), quartic), quartic);
    // - j (X - 7): X coefficient gets -j, constant gets +7j.
    std::vector<JPoly> coeffs;
    for (std::size_t i = 0; i < base.size(); ++i) {
      std::vector<Rational> c{base[i]};
      if (i == base.size() - 2) c.emplace_back(-1);
      if (i == base.size() - 1) c.emplace_back(7);
      coeffs.emplace_back(c);
    }
    if (BivarPoly(coeffs) == phi) sign_found = sign;
  }
  o.require(sign_found != 0, "Phi matches neither sign: " + phi.to_string());
  // (9+3 sqrt(-3))/2 has minimal polynomial X^2 - 9X + 27; it is an exact
  // root of Phi(X,0) iff that polynomial divides Phi(X,0).
  const auto rem = prem(phi.specialize(Rational(0)), ints({1, -9, 27}));
  const bool exact_root = std::all_of(rem.begin(), rem.end(), [](const Rational& r) { return r == 0; });
  o.require(exact_root, "(9+3sqrt(-3))/2 is not a root of Phi(X,0)");
  const long digits = 60;
  const mpfr_prec_t bits = bits_for_digits(digits + kGuardDigits);
  const BigComplex v = eval_T_at_minus_recip(tuple1(13, 5, 3, 1), kX1, quad(-7, 1, 2, -3, bits), digits);
  const double err = (v - quad(9, 3, 2, -3, bits)).abs().log10_abs();
  o.require(err < -40, "computed singular value differs from (9+3sqrt(-3))/2");
  o.detail << "N=13 [5,3,1]: Phi = (X^2-9X+27)(X^4-21X^3+167X^2" << (sign_found > 0 ? "+" : "-")
           << "604X+848)^3 - j(X-7); singular value (9+3sqrt(-3))/2 (|diff| 1e" << static_cast<long>(err)
           << ") is an exact root of Phi(X,0)";
}

void ac8(Outcome& o) {
  // (a) Galois action on phi_s.
  long checked = 0;
  bool a_ok = true;
  for (long n : {7L, 9L, 11L}) {
    for (const auto& rep : coset_transversal(n)) {
      for (long s = 1; s < n; ++s) {
        for (long l = 1; l < n; ++l) {
          if (std::gcd(l, n) != 1) continue;
          const auto [left, right] = sigma_shift_check(n, s, rep, l, 3 * n);
          a_ok = a_ok && left == right;
          ++checked;
        }
      }
    }
  }
  o.require(a_ok, "(a) sigma_l identity");
  o.detail << "(a) " << checked << " sigma_l identities;";

  // (b) transversal size against N prod (1 + 1/p).
  bool b_ok = true;
  for (long n = 3; n <= 60; ++n) {
    long m = n, idx = n;
    for (long p = 2; p <= m; ++p) {
      if (m % p != 0) continue;
      idx = idx / p * (p + 1);
      while (m % p == 0) m /= p;
    }
    b_ok = b_ok && static_cast<long>(coset_transversal(n).size()) == idx && psi0(n) == idx;
  }
  o.require(b_ok, "(b) transversal size");
  o.detail << " (b) |transversal| = Psi0(N) for 3 <= N <= 60;";

  // (c) valuations and the omega formula.
  bool c_ok = true;
  for (long n : {11L, 13L}) {
    const TripleA a1 = TripleA::make(n, 2, 3, 1), a2 = TripleA::make(n, 2, 5, 1);
    for (const auto& t : {a1, a2}) {
      for (const auto& rep : coset_transversal(n)) {
        c_ok = c_ok && w_series(t, rep, 2 * n).valuation() == order_at_cusp(t, rep.t);
      }
      for (long l = 1; 2 * l <= n; ++l) c_ok = c_ok && w_series(t, l, 1, 2 * n).valuation() == order_at_cusp(t, l);
    }
    for (long l = 1; 2 * l <= n; ++l) {
      if (5 * l <= 2 * n) continue;
      c_ok = c_ok && order_at_cusp(a1, l) == 2 * n - 5 * l;
      c_ok = c_ok && order_at_cusp(a2, l) == 3 * n - 7 * l;
    }
  }
  o.require(c_ok, "(c) valuations");
  o.detail << " (c) w_series valuations = cusp orders, omega_i(l) = (i+1)N-(2i+3)l for N=11,13;";

  // (d) integrality for E2 data.
  bool d_ok = true;
  std::ostringstream dd;
  const std::vector<std::pair<TupleA, IntPoly>> tcases = {
      {tuple1(7, 2, 3, 1), kX1},
      {tuple1(11, 2, 5, 1), kX1},
      {TupleA::make({TripleA::make(11, 2, 3, 1), TripleA::make(11, 2, 3, 5)}), kX1X2},
      {tuple1(13, 5, 3, 1), kX1},
  };
  for (const auto& [t, f] : tcases) {
    bool e2 = true;
    for (const auto& tr : t.triples) e2 = e2 && membership(tr) == TripleClass::E2;
    const BivarPoly phi = modular_equation_T(t, f);
    d_ok = d_ok && e2 && phi.is_integral();
  }
  for (long n : {7L, 11L, 13L}) {
    const TripleA a = TripleA::make(n, 2, 3, 1);
    const BivarPoly phi = modular_equation_W(a);
    d_ok = d_ok && membership(a) == TripleClass::E2 && phi.is_integral() && phi.degree() == psi1(n);
  }
  o.require(d_ok, "(d) integrality");
  o.detail << " (d) Phi_T (4 cases) and Phi[W_[2,3,1]] (N=7,11,13) integral;";

  // (e) phi series against the lattice sum.
  std::mt19937 rng(20240601);
  bool e_ok = true;
  double worst = -1e9;
  for (int trial = 0; trial < 10; ++trial) {
    const long n = std::uniform_int_distribution<long>(5, 13)(rng);
    const auto reps = coset_transversal(n);
    const auto& rep = reps[std::uniform_int_distribution<std::size_t>(0, reps.size() - 1)(rng)];
    const long s = std::uniform_int_distribution<long>(1, n - 1)(rng);
    const mpfr_prec_t bits = bits_for_digits(40);
    const BigComplex tau = cplx(std::uniform_real_distribution<double>(-0.5, 0.5)(rng),
                                std::uniform_real_distribution<double>(0.8, 1.5)(rng), bits);
    const QSeries f = phi_series(n, s, rep, 60 * n);
    const BigComplex sv = series_eval(f, tau, 20).value;
    const double diff = (sv - phi_oracle(n, s, rep.t, rep.d(), tau, bits)).abs().log10_abs();
    worst = std::max(worst, diff);
    e_ok = e_ok && diff < -12;
  }
  o.require(e_ok, "(e) lattice agreement");
  o.detail << " (e) phi series vs lattice sum, 10 configs, worst 1e" << static_cast<long>(worst) << ";";

  // (f) unit witness at N=11.
  bool f_ok = true;
  const long digits = 40;
  const mpfr_prec_t bits = bits_for_digits(digits + kGuardDigits);
  const TripleA a = TripleA::make(11, 2, 3, 1);
  const BivarPoly pw = modular_equation_W(a), pw_inv = modular_equation_W(a.swapped());
  double fworst = -1e9;
  struct Point {
    BigComplex alpha;
    long j;
  };
  const std::vector<Point> points = {
      {BigComplex(BigFloat(Rational(9, 44), bits), BigFloat(7L, bits).sqrt() / BigFloat(44L, bits)), -3375},
      {cplx(0, 1, bits), 1728},
      {quad(1, 1, 2, -3, bits), 0},
  };
  for (const auto& p : points) {
    const BigComplex w = eval_W(a, p.alpha, digits);
    const BigComplex winv = BigComplex(cplx(1, 0, bits)) / w;
    for (int side = 0; side < 2; ++side) {
      const BivarPoly& poly = side == 0 ? pw : pw_inv;
      const BigComplex& x = side == 0 ? w : winv;
      const auto c = poly.specialize(Rational(p.j));
      bool integral = true;
      BigComplex acc(bits);
      BigFloat scale(0L, bits);
      for (const auto& r : c) {
        integral = integral && r.get_den() == 1;
        acc = acc * x + BigComplex(BigFloat(r, bits), BigFloat(bits));
        scale = scale * x.abs() + BigFloat(abs(r), bits);
      }
      const double rel = (acc.abs() / scale).log10_abs();
      fworst = std::max(fworst, rel);
      f_ok = f_ok && integral && c.front() == 1 && rel < -20;
    }
  }
  o.require(f_ok, "(f) unit witness");
  o.detail << " (f) W and 1/W roots of monic integer Phi[W](X, j0) at 3 CM points, worst relative 1e"
           << static_cast<long>(fworst);
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4},
      {"AC5", ac5}, {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      fn(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    if (!o.pass) ++failed;
    std::cout << name << " " << (o.pass ? "PASS" : "FAIL") << " " << o.detail.str() << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
