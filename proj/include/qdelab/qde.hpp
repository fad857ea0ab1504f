#pragma once

// Difference-equation assembly and verification.
//
// The fundamental solution Psi(z) and the operator side are tied together by
//
//   Psi(qz) L = C(z) . L B(z) Psi(z)
//
// with L the diagonal matrix of inverse products of tautological weights and
// B(z) the ordered product of wall operators for the alcove.  qde_residual
// computes Psi(qz) L - L B Psi order by order and factors out the scalar
// series C(z) = 1 + sum_{k>=1} c_k z^k when the residual is a scalar multiple
// of the defect pattern; the equation holds exactly iff C == 1.

#include <qdelab/vertex.hpp>

#include <utility>
#include <vector>

namespace qdelab {

// Diagonal entries prod_i (phi^mu_i)^{-1} in the fixed-point basis.
inline Mat<KQ> l_matrix(const std::vector<Partition>& parts, const EvalQ& ev) {
  const int p = static_cast<int>(parts.size());
  Mat<KQ> L(p, p);
  for (int m = 0; m < p; ++m) {
    long a = 0, b = 0;
    for (const Box& bx : boxes_of(parts[static_cast<size_t>(m)])) {
      auto [ha, hb] = phi_halves(bx);
      a -= ha;
      b -= hb;
    }
    L.at(m, m) = ev.mono(a, b, 0);
  }
  return L;
}

// z -> q^m z on every entry: the z^k coefficient picks up Q^{2mk}.
inline ZSer<KQ> zshift(const ZSer<KQ>& s, long m) {
  ZSer<KQ> r = s;
  for (size_t i = 0; i < r.c.size(); ++i) {
    long k = r.lead + static_cast<long>(i);
    r.c[i] = r.c[i] * qpow(2 * m * k);
  }
  r.normalize();
  return r;
}

inline Mat<ZSer<KQ>> zshift(const Mat<ZSer<KQ>>& m, long sh) {
  Mat<ZSer<KQ>> r = m;
  for (auto& e : r.a) e = zshift(e, sh);
  return r;
}

inline Mat<ZSer<KQ>> lift_const(const Mat<KQ>& m, int order) {
  Mat<ZSer<KQ>> r(m.rows, m.cols);
  for (size_t i = 0; i < m.a.size(); ++i)
    r.a[i] = ZSer<KQ>::monomial(m.a[i], 0, order + 1);
  return r;
}

inline Mat<KQ> z_coeff(const Mat<ZSer<KQ>>& m, long k) {
  Mat<KQ> r(m.rows, m.cols);
  for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = m.a[i].coeff(k);
  return r;
}

struct QdeReport {
  bool residual_zero = false;  // Psi(qz) L == L B Psi to the series order
  bool scalar_defect = false;  // residual is C(z)-shaped (always reported)
  std::vector<KQ> cx;          // cx[k] is the z^k coefficient of C, k >= 1
};

// Verify Psi(qz) L = C(z) L B(z) Psi(z) and extract C.  B is the alcove
// operator in the fixed-point basis, as a z-series matrix to the same order.
inline QdeReport qde_residual(const PsiMatrix& psi, const Mat<KQ>& L,
                              const Mat<ZSer<KQ>>& B) {
  const int D = psi.order;
  Mat<ZSer<KQ>> Lz = lift_const(L, D);
  Mat<ZSer<KQ>> lhs = zshift(psi.m, 1) * Lz;
  Mat<ZSer<KQ>> lbp = Lz * B * psi.m;
  Mat<ZSer<KQ>> res(lhs.rows, lhs.cols);
  for (size_t i = 0; i < res.a.size(); ++i) res.a[i] = lhs.a[i] - lbp.a[i];

  QdeReport rep;
  rep.residual_zero = true;
  for (const auto& e : res.a) rep.residual_zero = rep.residual_zero && is_zero(e);

  // Extract C order by order: R_k - sum_{j<k} c_j (LBPsi)_{k-j} must equal
  // c_k L, using (LBPsi)_0 = L.
  rep.scalar_defect = true;
  rep.cx.assign(static_cast<size_t>(D) + 1, KQ(0));
  rep.cx[0] = KQ(1);
  for (long k = 1; k <= D; ++k) {
    Mat<KQ> M = z_coeff(res, k);
    for (long j = 1; j < k; ++j) {
      if (is_zero(rep.cx[static_cast<size_t>(j)])) continue;
      Mat<KQ> lb = z_coeff(lbp, k - j);
      for (size_t i = 0; i < M.a.size(); ++i)
        M.a[i] = M.a[i] - rep.cx[static_cast<size_t>(j)] * lb.a[i];
    }
    KQ ck = M.at(0, 0) / L.at(0, 0);
    for (int i = 0; i < M.rows && rep.scalar_defect; ++i)
      for (int j = 0; j < M.cols; ++j) {
        KQ want = i == j ? ck * L.at(i, i) : KQ(0);
        if (!(M.at(i, j) == want)) {
          rep.scalar_defect = false;
          break;
        }
      }
    rep.cx[static_cast<size_t>(k)] = ck;
    if (!rep.scalar_defect) break;
  }
  return rep;
}

// Adjacent-alcove relation across one wall: psi_neg is the solution for the
// alcove left of the wall, psi_pos right of it, and Bw the wall operator:
// Psi_neg(z) == Bw(z) Psi_pos(z).
inline bool adjacent_relation(const PsiMatrix& psi_neg,
                              const Mat<ZSer<KQ>>& Bw,
                              const PsiMatrix& psi_pos) {
  Mat<ZSer<KQ>> rhs = Bw * psi_pos.m;
  for (size_t i = 0; i < rhs.a.size(); ++i)
    if (!(psi_neg.m.a[i] == rhs.a[i])) return false;
  return true;
}

// Integer-shift covariance: Psi at slope s+1 equals L^{-1} Psi_s(z q^{-1}) L.
inline Mat<ZSer<KQ>> shift_conjugate(const PsiMatrix& psi, const Mat<KQ>& L) {
  Mat<KQ> Linv(L.rows, L.cols);
  for (int i = 0; i < L.rows; ++i) Linv.at(i, i) = KQ(1) / L.at(i, i);
  return lift_const(Linv, psi.order) * zshift(psi.m, -1) *
         lift_const(L, psi.order);
}

struct LimitReport {
  bool zero_exists = false;  // q -> 0 limit of the rescaled series exists
  bool inf_identity = false; // q -> infinity limit exists and equals 1
  std::vector<Mat<Rational>> at_zero;  // z^k coefficient limits when they exist
};

// Limits of the slope-framed solution.  The z^k coefficient is multiplied by
// q^{k w} with w = n/d the lower wall of the alcove; the fractional power is
// realized by refining Q -> Q^d and multiplying by Q^{2kn}.
inline LimitReport limit_report(const PsiMatrix& psi, const Rational& wall) {
  LimitReport rep;
  long d = wall.get_den().get_si();
  long nn = wall.get_num().get_si();
  rep.zero_exists = true;
  rep.inf_identity = true;
  for (long k = 0; k <= psi.order; ++k) {
    Mat<Rational> lim(psi.m.rows, psi.m.cols);
    for (int i = 0; i < psi.m.rows; ++i)
      for (int j = 0; j < psi.m.cols; ++j) {
        KQ c = psi.m.at(i, j).coeff(k);
        KQ framed = q_rescale(c, d) * qpow(2 * k * nn);
        LimitResult l0 = q_limit(framed, LimitDir::ToZero);
        if (!l0.exists) rep.zero_exists = false;
        else lim.at(i, j) = l0.value;
        LimitResult li = q_limit(framed, LimitDir::ToInfinity);
        Rational want = (k == 0 && i == j) ? Rational(1) : Rational(0);
        if (!li.exists || li.value != want) rep.inf_identity = false;
      }
    rep.at_zero.push_back(std::move(lim));
  }
  return rep;
}

}  // namespace qdelab
