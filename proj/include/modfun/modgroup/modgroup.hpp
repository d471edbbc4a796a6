#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace modfun {

struct MatrixSL2 {
  long a = 1, b = 0, c = 0, d = 1;

  long det() const { return a * d - b * c; }
  MatrixSL2 inverse() const { return {d, -b, -c, a}; }
  friend MatrixSL2 operator*(const MatrixSL2& x, const MatrixSL2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend bool operator==(const MatrixSL2& x, const MatrixSL2& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
  std::string to_string() const;
};

struct BraceMu {
  long brace;
  int mu;
};

/// {s} in [0, N/2] and mu(s) = +-1 with s = mu * {s} mod N (mu = 1 when
/// s = 0 or N/2 mod N).
BraceMu brace_mu(long s, long level);
inline long brace(long s, long level) { return brace_mu(s, level).brace; }

/// (Z/NZ)^x / {+-1} as the residues 1 <= l <= N/2 prime to N.
std::vector<long> sn_representatives(long level);

/// [N (1 + 1/p)], the index of Gamma0(N).
long psi0(long level);
/// phi(N) psi0(N) / 2, the index of +-Gamma1(N).
long psi1(long level);

enum class TripleClass { E, E1, E2 };
std::string to_string(TripleClass c);

/// [a1, a2, a3] with 0 < a_i <= N/2 pairwise distinct.
struct TripleA {
  long level = 0;
  std::array<long, 3> a{};

  /// Throws ValidationError unless the entries form an element of E.
  static TripleA make(long level, long a1, long a2, long a3);

  /// [a2, a1, a3]; W of the swap is 1/W.
  TripleA swapped() const { return {level, {a[1], a[0], a[2]}}; }
  friend bool operator==(const TripleA& x, const TripleA& y) { return x.level == y.level && x.a == y.a; }
  std::string to_string() const;
};

/// Finest of E, E1, E2 containing the triple.
TripleClass membership(const TripleA& triple);

/// lambda * triple = [{l a1}, {l a2}, {l a3}]. Throws ValidationError when an
/// entry becomes 0 or two entries collide.
TripleA act_on_triple(long lambda, const TripleA& triple);

/// The lift [[l*, m], [N, l]] of diag(l^-1, l) with l* l = 1 + m N.
MatrixSL2 m_lambda(long lambda, long level);

/// Theta_t: one (u, v) per class of u mod (t, N/t) prime to t, with the
/// smallest positive u and the smallest positive v = u^-1 mod t.
std::vector<std::pair<long, long>> theta_set(long level, long t);

/// l Theta_t = {(l* u, l v)} with v reduced to the smallest positive residue mod t.
std::vector<std::pair<long, long>> ell_theta(long level, long t, long ell);

struct CosetRep {
  long t = 1, u = 1, v = 1, k = 0;
  MatrixSL2 matrix;

  /// B(t,u,v,k) = [[u, (uv-1)/t + uk], [t, v + tk]]. Throws ValidationError
  /// unless uv = 1 mod t.
  static CosetRep make(long t, long u, long v, long k);
  /// Bottom-right entry v + t k.
  long d() const { return matrix.d; }
};

/// Number of k values for divisor t: N / (t^2, N).
long k_range(long level, long t);

/// Union over t | N of B(t,u,v,k), (u,v) in Theta_t, 0 <= k < N/(t^2,N),
/// ordered by t, then u, then k.
std::vector<CosetRep> coset_transversal(long level);

/// True when x y^-1 lies in Gamma0(N).
bool same_gamma0_coset(const MatrixSL2& x, const MatrixSL2& y, long level);

}  // namespace modfun
