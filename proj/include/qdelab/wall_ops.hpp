#pragma once

// Wall-crossing operators B_w(z) restricted to a single Fock grade, and
// their ordered alcove products.
//
// For a wall w = m/d (reduced, d >= 1) the operator on F_n is the normal-
// ordered exponential
//
//   B_w(z) = prod_{k >= 1} sum_{j >= 0} c_k(z)^j / j! . alpha_{-k}^j alpha_k^j
//
// in the wall-direction Heisenberg generators alpha_{+-k} = e_{+-k(d,m)},
// with the scalar series
//
//   c_k(z) = n_k hbar^{dk/2} / (1 - z^{-dk} q^{mk} hbar^{dk/2})
//          = -n_k sum_{j >= 1} z^{dkj} q^{-mkj} hbar^{dk(1-j)/2}
//
// expanded in positive powers of z, so B_w = 1 + O(z^d).  Factors for
// different k commute (collinear generators with nonzero sum commute), and
// alpha_k^j annihilates F_n once k d j > n, which truncates the exponential.
// A wall with d > n acts as the identity.
//
// The alcove product multiplies the wall operators of the window [s-1, s)
// with wall values increasing left to right, so the largest wall acts first
// on a vector.

#include <qdelab/toroidal.hpp>
#include <qdelab/walls.hpp>
#include <qdelab/zseries.hpp>

#include <utility>
#include <vector>

namespace qdelab {

namespace wdetail {

// Matrix of alpha_{-k}^j alpha_k^j on F_n (Rational entries, q-free).
inline Mat<Rational> ladder_pair_power(Toroidal& T, int kd, int km, int j,
                                       int n) {
  const GradedOp& down_op = T.e(kd, km);
  const GradedOp& up_op = T.e(-kd, -km);
  const int delta = down_op.shift;  // = kd
  int g = n;
  int pn = static_cast<int>(T.fock.grade[static_cast<size_t>(n)].parts.size());
  Mat<Rational> down = Mat<Rational>::identity(pn);
  for (int s = 0; s < j; ++s) {
    down = down_op.blk.at(g) * down;
    g -= delta;
  }
  Mat<Rational> up = Mat<Rational>::identity(
      static_cast<int>(T.fock.grade[static_cast<size_t>(g)].parts.size()));
  for (int s = 0; s < j; ++s) {
    up = up_op.blk.at(g) * up;
    g += delta;
  }
  return up * down;
}

}  // namespace wdetail

// B_w(z) on F_n in the power-sum basis, as a z-series matrix of order D.
inline Mat<ZSer<KQ>> wall_operator(Toroidal& T, const Rational& w, int n,
                                   int D) {
  auto [d, m] = wall_frac(w);
  const long prec = D + 1;
  const int pn =
      static_cast<int>(T.fock.grade[static_cast<size_t>(n)].parts.size());
  Mat<ZSer<KQ>> B(pn, pn);
  for (int i = 0; i < pn; ++i)
    B.at(i, i) = ZSer<KQ>::monomial(KQ(1), 0, prec);
  if (d > n) return B;

  const Rational hb_half = T.fock.ev.mono(1, 1, 0);  // hbar^{1/2}
  for (long k = 1; k * d <= n; ++k) {
    // c_k(z) to order D.
    ZSer<KQ> ck = ZSer<KQ>(0).truncated(prec);
    for (long j = 1; d * k * j <= D; ++j) {
      KQ coef = kq_from(Rational(-T.nk(static_cast<int>(k))) *
                        rat_pow(hb_half, d * k * (1 - j))) *
                qpow(-2 * m * k * j);
      ck = ck + ZSer<KQ>::monomial(coef, d * k * j, prec);
    }
    // Normal-ordered exponential, truncated by the grading.
    Mat<ZSer<KQ>> factor(pn, pn);
    for (int i = 0; i < pn; ++i)
      factor.at(i, i) = ZSer<KQ>::monomial(KQ(1), 0, prec);
    ZSer<KQ> ckj = ZSer<KQ>::monomial(KQ(1), 0, prec);
    Rational fact(1);
    for (long j = 1; k * d * j <= n && d * k * j <= D; ++j) {
      ckj = ckj * ck;
      fact *= j;
      Mat<Rational> R = wdetail::ladder_pair_power(
          T, static_cast<int>(k * d), static_cast<int>(k * m),
          static_cast<int>(j), n);
      ZSer<KQ> s =
          ckj * ZSer<KQ>::monomial(kq_from(Rational(1) / fact), 0, prec);
      for (int r = 0; r < pn; ++r)
        for (int c = 0; c < pn; ++c) {
          if (rat_is_zero(R.at(r, c))) continue;
          factor.at(r, c) =
              factor.at(r, c) +
              s * ZSer<KQ>::monomial(kq_from(R.at(r, c)), 0, prec);
        }
    }
    B = B * factor;
  }
  return B;
}

// Ordered product of the wall operators for the alcove containing s, on F_n:
// walls of [s-1, s) ascending left to right (largest wall rightmost, so it
// acts first on a vector).
inline Mat<ZSer<KQ>> alcove_operator(Toroidal& T, int n, const Rational& s,
                                     int D) {
  std::vector<Rational> ws = walls_in_window(n, s);
  const int pn =
      static_cast<int>(T.fock.grade[static_cast<size_t>(n)].parts.size());
  Mat<ZSer<KQ>> B(pn, pn);
  for (int i = 0; i < pn; ++i)
    B.at(i, i) = ZSer<KQ>::monomial(KQ(1), 0, static_cast<long>(D) + 1);
  for (const Rational& w : ws) B = B * wall_operator(T, w, n, D);
  return B;
}

// After the substitution z -> z q^w, the z^k coefficient of each entry picks
// up q^{k m / d}; over the refined variable (Q -> Q^{1/d}, realized by
// stretching exponents d-fold) that is an integral power, and the result
// must be q-free.
inline bool wall_shift_q_independent(const Mat<ZSer<KQ>>& B,
                                     const Rational& w) {
  auto [d, m] = wall_frac(w);
  for (const auto& entry : B.a) {
    for (size_t i = 0; i < entry.c.size(); ++i) {
      long k = entry.lead + static_cast<long>(i);
      KQ framed = q_rescale(entry.c[i], d) * qpow(2 * k * m);
      if (framed.num.deg() > 0 || framed.den.deg() > 0) return false;
    }
  }
  return true;
}

}  // namespace qdelab
