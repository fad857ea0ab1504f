#pragma once

// The Fock space Q[p_1, p_2, ...] at a numeric parameter draw, graded by
// degree (deg p_k = k), with
//
//   <p_lam, p_mu> = delta_{lam,mu} prod_n n^{m_n} m_n! *
//                   prod_i (1 - t1^{-lam_i}) / (1 - t2^{lam_i}).
//
// Per grade we store the change of basis between the power-sum and monomial
// bases, the orthogonal basis built by Gram-Schmidt against dominance order
// (monic in the monomial basis), and the transformed basis
//
//   Hb_lam = t2^{|lam|} prod_box (t2^{-leg-1} - t1^{-arm}) P_lam,
//   H_lam  = Hb_lam[p_k -> p_k / (1 - t2^k)],
//
// whose column matrix ties the operator side to the fixed-point basis.
// Everything is exact over the rationals of the draw.

#include <qdelab/mat.hpp>
#include <qdelab/params.hpp>
#include <qdelab/partitions.hpp>
#include <qdelab/young.hpp>

#include <map>
#include <vector>

namespace qdelab {

namespace sfdetail {

// Dense-enough polynomial in N variables: exponent vector -> coefficient.
using XPoly = std::map<std::vector<int>, Rational>;

inline XPoly pk_poly(int k, int N) {
  XPoly p;
  for (int i = 0; i < N; ++i) {
    std::vector<int> e(static_cast<size_t>(N), 0);
    e[static_cast<size_t>(i)] = k;
    p[e] += 1;
  }
  return p;
}

inline XPoly xp_mul(const XPoly& a, const XPoly& b) {
  XPoly r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      std::vector<int> e = ea;
      for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      r[e] += ca * cb;
    }
  return r;
}

}  // namespace sfdetail

// z_lam = prod_n n^{m_n} m_n!
inline Rational z_factor(const Partition& lam) {
  Rational z(1);
  int run = 0;
  for (size_t i = 0; i < lam.size(); ++i) {
    ++run;
    z *= lam[i];
    if (i + 1 == lam.size() || lam[i + 1] != lam[i]) {
      for (int j = 2; j <= run; ++j) z *= j;
      run = 0;
    } else {
      continue;
    }
  }
  return z;
}

struct FockGrade {
  int g = 0;
  std::vector<Partition> parts;  // canonical order
  // p_lam = sum_mu p2m[mu][lam] m_mu ; m2p = p2m^{-1}
  Mat<Rational> p2m, m2p;
  std::vector<Rational> pnorm;  // <p_lam, p_lam>
  Mat<Rational> hmat, hmat_inv;  // columns H_lam in p-coordinates
};

inline Rational fock_pnorm(const Partition& lam, const EvalPlain& ev) {
  Rational w = z_factor(lam);
  for (int part : lam)
    w *= (1 - ev.mono(-2 * part, 0, 0)) / (1 - ev.mono(0, 2 * part, 0));
  return w;
}

inline FockGrade build_fock_grade(int g, const EvalPlain& ev) {
  FockGrade F;
  F.g = g;
  F.parts = partitions_of(g);
  const int p = static_cast<int>(F.parts.size());
  if (g == 0) {
    F.parts = {Partition{}};
    F.p2m = Mat<Rational>::identity(1);
    F.m2p = Mat<Rational>::identity(1);
    F.pnorm = {Rational(1)};
    F.hmat = Mat<Rational>::identity(1);
    F.hmat_inv = Mat<Rational>::identity(1);
    return F;
  }

  // Power sums in the monomial basis, via explicit polynomials in g variables.
  F.p2m = Mat<Rational>(p, p);
  for (int l = 0; l < p; ++l) {
    sfdetail::XPoly poly;
    poly[std::vector<int>(static_cast<size_t>(g), 0)] = 1;
    for (int part : F.parts[static_cast<size_t>(l)])
      poly = sfdetail::xp_mul(poly, sfdetail::pk_poly(part, g));
    for (int m = 0; m < p; ++m) {
      std::vector<int> rep(static_cast<size_t>(g), 0);
      const Partition& mu = F.parts[static_cast<size_t>(m)];
      for (size_t i = 0; i < mu.size(); ++i) rep[i] = mu[i];
      auto it = poly.find(rep);
      F.p2m.at(m, l) = it == poly.end() ? Rational(0) : it->second;
    }
  }
  F.m2p = mat_inverse(F.p2m);

  F.pnorm.resize(static_cast<size_t>(p));
  for (int l = 0; l < p; ++l)
    F.pnorm[static_cast<size_t>(l)] =
        fock_pnorm(F.parts[static_cast<size_t>(l)], ev);

  // Gram-Schmidt in a linear extension of dominance: canonical order is
  // lexicographically descending, so processing from the back puts every
  // dominated partition first.  Vectors are kept in p-coordinates, where the
  // inner product is diagonal.
  auto ip = [&](const std::vector<Rational>& x, const std::vector<Rational>& y) {
    Rational s(0);
    for (int i = 0; i < p; ++i)
      s += x[static_cast<size_t>(i)] * y[static_cast<size_t>(i)] *
           F.pnorm[static_cast<size_t>(i)];
    return s;
  };
  std::vector<std::vector<Rational>> P(static_cast<size_t>(p));
  std::vector<Rational> Pnorm2(static_cast<size_t>(p));
  for (int idx = p - 1; idx >= 0; --idx) {
    // m_idx in p-coordinates
    std::vector<Rational> v(static_cast<size_t>(p));
    for (int i = 0; i < p; ++i) v[static_cast<size_t>(i)] = F.m2p.at(i, idx);
    for (int j = p - 1; j > idx; --j) {
      Rational c = ip(v, P[static_cast<size_t>(j)]) / Pnorm2[static_cast<size_t>(j)];
      if (rat_is_zero(c)) continue;
      for (int i = 0; i < p; ++i)
        v[static_cast<size_t>(i)] -= c * P[static_cast<size_t>(j)][static_cast<size_t>(i)];
    }
    P[static_cast<size_t>(idx)] = v;
    Pnorm2[static_cast<size_t>(idx)] = ip(v, v);
    if (rat_is_zero(Pnorm2[static_cast<size_t>(idx)]))
      throw NonGenericParameters("fock grade: degenerate Gram-Schmidt");
  }

  // Hb and the plethysm p_k -> p_k / (1 - t2^k).
  F.hmat = Mat<Rational>(p, p);
  for (int l = 0; l < p; ++l) {
    const Partition& lam = F.parts[static_cast<size_t>(l)];
    Partition conj = conjugate(lam);
    Rational pre = ev.mono(0, 2 * g, 0);  // t2^{|lam|}
    for (const Box& b : boxes_of(lam)) {
      int arm = lam[static_cast<size_t>(b.row - 1)] - b.col;
      int leg = conj[static_cast<size_t>(b.col - 1)] - b.row;
      pre *= ev.mono(0, -2 * (leg + 1), 0) - ev.mono(-2 * arm, 0, 0);
    }
    for (int i = 0; i < p; ++i) {
      Rational c = pre * P[static_cast<size_t>(l)][static_cast<size_t>(i)];
      for (int part : F.parts[static_cast<size_t>(i)])
        c /= (1 - ev.mono(0, 2 * part, 0));
      F.hmat.at(i, l) = c;
    }
  }
  F.hmat_inv = mat_inverse(F.hmat);
  return F;
}

// Eigenvalue of the grade-preserving vertical operator indexed by m != 0 on
// H_lam (u = 1):
//   sign(m)/(1-t1^m) * [ sum_{i<=l} t1^{m lam_i} t2^{m(i-1)} + t2^{m l}/(1-t2^m) ]
inline Rational vertical_eigenvalue(int m, const Partition& lam,
                                    const EvalPlain& ev) {
  if (m == 0) throw std::invalid_argument("vertical_eigenvalue: m = 0");
  Rational s(0);
  int l = static_cast<int>(lam.size());
  for (int i = 1; i <= l; ++i)
    s += ev.mono(2 * m * lam[static_cast<size_t>(i - 1)], 2 * m * (i - 1), 0);
  Rational t2m = ev.mono(0, 2 * m, 0);
  if (t2m == 1 || ev.mono(2 * m, 0, 0) == 1)
    throw NonGenericParameters("vertical_eigenvalue: unit parameter power");
  s += rat_pow(t2m, l) / (1 - t2m);
  Rational r = s / (1 - ev.mono(2 * m, 0, 0));
  return m > 0 ? r : -r;
}

}  // namespace qdelab
