#pragma once

// Fixed-point-basis form of the wall and alcove operators, and the diagonal
// calibration tying the power-sum grade to the fixed-point basis.
//
// Wall operators act on the degree-n Fock grade in power-sum coordinates.
// The orthogonal H-basis (columns of FockGrade::hmat) is indexed by the same
// partitions as the fixed points, but the identification leaves a diagonal
// normalization s_lambda free.  In the fixed-point basis an operator O reads
//
//   O_fp(z) = S^{-1} H^{-1} O_p(z) H S,    S = diag(s_lambda).
//
// calibrate_basis determines S from the z^1 coefficient of the difference
// equation on the alcove (-1/n, 0),
//
//   O_fp[l][m] at z^1  =  Psi_1[l][m] (q L_m - L_l) / L_l,
//
// propagating the ratios s_m/s_l along nonzero off-diagonal entries of the
// conjugated operator, with the diagonal (which has no s-freedom) checked
// first.  The candidate S is then verified against the full residual to
// order D and against a second alcove; any mismatch throws
// CalibrationInconsistent.  (At every draw tested the calibration comes out
// as s_lambda = 1: the H-columns already match the fixed points on the
// nose.  It is still computed, never assumed.)

#include <qdelab/macdonald.hpp>
#include <qdelab/qde.hpp>
#include <qdelab/wall_ops.hpp>

#include <string>
#include <vector>

namespace qdelab {

inline Mat<ZSer<KQ>> lift_plain(const Mat<Rational>& m, int order) {
  Mat<ZSer<KQ>> r(m.rows, m.cols);
  for (size_t i = 0; i < m.a.size(); ++i)
    r.a[i] = ZSer<KQ>::monomial(kq_from(m.a[i]), 0, order + 1);
  return r;
}

struct Calibration {
  int n = 0;
  std::vector<Partition> parts;
  std::vector<KQ> s;  // diagonal scalars, one per partition
  int verified_order = 0;
};

// S^{-1} H^{-1} op H S with S from the calibration (pass nullptr for S = 1).
inline Mat<ZSer<KQ>> fp_conjugate(const FockGrade& F, const Calibration* cal,
                                  const Mat<ZSer<KQ>>& op, int order) {
  Mat<ZSer<KQ>> r = lift_plain(F.hmat_inv, order) * op * lift_plain(F.hmat, order);
  if (cal != nullptr) {
    const int p = r.rows;
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) {
        KQ f = cal->s[static_cast<size_t>(j)] / cal->s[static_cast<size_t>(i)];
        r.at(i, j) = r.at(i, j) * ZSer<KQ>::monomial(f, 0, order + 1);
      }
  }
  return r;
}

inline Mat<ZSer<KQ>> fp_wall_operator(Toroidal& T, const Rational& w, int n,
                                      int order, const Calibration* cal) {
  return fp_conjugate(T.fock.grade[static_cast<size_t>(n)], cal,
                      wall_operator(T, w, n, order), order);
}

inline Mat<ZSer<KQ>> fp_alcove_operator(Toroidal& T, int n, const Rational& s,
                                        int order, const Calibration* cal) {
  return fp_conjugate(T.fock.grade[static_cast<size_t>(n)], cal,
                      alcove_operator(T, n, s, order), order);
}

// Multiplication by the diagonal eigenvalue line, written in power-sum
// coordinates: O = H diag(L_lambda) H^{-1}.  Conjugating a wall operator by
// it and shifting z -> z q^{-1} moves the wall up by one:
//
//   O . B_w(z q^{-1}) . O^{-1} = B_{w+1}(z).
inline Mat<KQ> det_line_matrix(const FockGrade& F, const ParamSpec& ps) {
  const int p = static_cast<int>(F.parts.size());
  Mat<KQ> L = l_matrix(F.parts, EvalQ(ps));
  Mat<KQ> Hk(p, p), Hik(p, p);
  for (size_t i = 0; i < F.hmat.a.size(); ++i) {
    Hk.a[i] = kq_from(F.hmat.a[i]);
    Hik.a[i] = kq_from(F.hmat_inv.a[i]);
  }
  return Hk * L * Hik;
}

inline bool wall_shift_conjugation(Toroidal& T, const Rational& w, int n,
                                   int order, const ParamSpec& ps) {
  const FockGrade& F = T.fock.grade[static_cast<size_t>(n)];
  Mat<KQ> O = det_line_matrix(F, ps);
  Mat<KQ> Oi = mat_inverse(O);
  Mat<ZSer<KQ>> lhs = lift_const(O, order) *
                      zshift(wall_operator(T, w, n, order), -1) *
                      lift_const(Oi, order);
  return lhs == wall_operator(T, w + 1, n, order);
}

namespace fpdetail {

inline void verify_alcove(Toroidal& T, int n, const Rational& s, int order,
                          const Calibration& cal, const ParamSpec& ps,
                          const char* what) {
  PsiMatrix psi = psi_matrix(n, s, order, ps);
  Mat<KQ> L = l_matrix(psi.parts, EvalQ(ps));
  Mat<ZSer<KQ>> B = fp_alcove_operator(T, n, s, order, &cal);
  QdeReport rep = qde_residual(psi, L, B);
  if (!rep.residual_zero)
    throw CalibrationInconsistent(std::string("calibrate_basis: ") + what);
}

}  // namespace fpdetail

// Solve for the diagonal scalars at grade n and verify them to order D on
// the alcove (-1/n, 0) and on the mirror alcove (0, 1/n).
inline Calibration calibrate_basis(Toroidal& T, int n, int D,
                                   const ParamSpec& ps) {
  const Rational s0(-1, 2 * n);
  PsiMatrix psi = psi_matrix(n, s0, D, ps);
  Mat<KQ> L = l_matrix(psi.parts, EvalQ(ps));
  const FockGrade& F = T.fock.grade[static_cast<size_t>(n)];
  if (F.parts != psi.parts)
    throw std::logic_error("calibrate_basis: basis orders disagree");
  const int p = static_cast<int>(psi.parts.size());

  Mat<ZSer<KQ>> Bt = fp_conjugate(F, nullptr, alcove_operator(T, n, s0, D), D);
  Mat<KQ> B1 = z_coeff(Bt, 1);
  Mat<KQ> psi1 = z_coeff(psi.m, 1);

  // Target z^1 block in the fixed-point basis.
  Mat<KQ> need(p, p);
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b)
      need.at(a, b) =
          psi1.at(a, b) * (qpow(2) * L.at(b, b) - L.at(a, a)) / L.at(a, a);

  for (int a = 0; a < p; ++a)
    if (!(B1.at(a, a) == need.at(a, a)))
      throw CalibrationInconsistent(
          "calibrate_basis: diagonal z^1 entry disagrees at " +
          part_str(psi.parts[static_cast<size_t>(a)]));

  // Propagate ratios s_b/s_a = need/B1 along nonzero entries.
  Calibration cal;
  cal.n = n;
  cal.parts = psi.parts;
  cal.s.assign(static_cast<size_t>(p), KQ(0));
  std::vector<int> stack;
  for (int root = 0; root < p; ++root) {
    if (!is_zero(cal.s[static_cast<size_t>(root)])) continue;
    cal.s[static_cast<size_t>(root)] = KQ(1);
    stack.push_back(root);
    while (!stack.empty()) {
      int a = stack.back();
      stack.pop_back();
      for (int b = 0; b < p; ++b) {
        if (a == b) continue;
        for (auto [u, v] : {std::pair{a, b}, std::pair{b, a}}) {
          if (is_zero(B1.at(u, v))) {
            if (!is_zero(need.at(u, v)))
              throw CalibrationInconsistent(
                  "calibrate_basis: entry vanishes only in one basis");
            continue;
          }
          KQ r = need.at(u, v) / B1.at(u, v);  // = s_v / s_u
          if (is_zero(r))
            throw CalibrationInconsistent(
                "calibrate_basis: zero ratio for a nonzero entry");
          KQ& su = cal.s[static_cast<size_t>(u)];
          KQ& sv = cal.s[static_cast<size_t>(v)];
          if (is_zero(su) && is_zero(sv)) continue;
          if (!is_zero(su) && !is_zero(sv)) {
            if (!(sv == su * r))
              throw CalibrationInconsistent(
                  "calibrate_basis: inconsistent ratio cycle");
          } else if (!is_zero(su)) {
            sv = su * r;
            stack.push_back(v);
          } else {
            su = sv / r;
            stack.push_back(u);
          }
        }
      }
    }
  }

  fpdetail::verify_alcove(T, n, s0, D, cal, ps, "residual nonzero at the defining alcove");
  fpdetail::verify_alcove(T, n, Rational(1, 2 * n), D, cal, ps,
                          "residual nonzero at the mirror alcove");
  cal.verified_order = D;
  return cal;
}

}  // namespace qdelab
