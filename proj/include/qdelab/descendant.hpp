#pragma once

// Descendant insertions attached to fixed points.
//
// For a rank-n envelope family the matrix A with A[nu][mu] =
// envelope_sum(mu) restricted at nu is invertible (it is triangular with
// nonzero diagonal by the support and diagonal properties).  The descendant
// g_lam is the linear combination sum_mu c[lam][mu] * envelope_sum(mu)
// normalized so that g_lam evaluated at the weight tuple of nu equals
// delta_{lam,nu}.  The coefficients are rational in t1^{1/2}, t2^{1/2} and
// carry no q, so they are computed once over plain rationals per draw and
// lifted into whatever field the evaluation runs in.

#include <qdelab/mat.hpp>
#include <qdelab/stab.hpp>

#include <utility>
#include <vector>

namespace qdelab {

struct DescendantBasis {
  int n = 0;
  Rational slope;
  Pol pol = Pol::Std;
  std::vector<Partition> parts;  // canonical order from partitions_of(n)
  std::vector<StabSum> sums;     // sums[mu-index]
  Mat<Rational> coeff;           // coeff.at(lam, mu)
};

// Build the delta-normalized descendant family for the given slope and
// polarization at the numeric draw of `ev`.
inline DescendantBasis build_descendant_basis(int n, const Rational& slope,
                                              Pol pol, const EvalPlain& ev) {
  DescendantBasis db;
  db.n = n;
  db.slope = slope;
  db.pol = pol;
  db.parts = partitions_of(n);
  const int m = static_cast<int>(db.parts.size());
  db.sums.reserve(db.parts.size());
  for (const Partition& mu : db.parts)
    db.sums.push_back(build_stab_sum(mu, slope, pol));
  Mat<Rational> A(m, m);
  for (int mu = 0; mu < m; ++mu)
    for (int nu = 0; nu < m; ++nu)
      A.at(nu, mu) = stab_restrict(db.sums[mu], db.parts[nu], ev);
  // Solve A * X = I; then c[lam][mu] = X[mu][lam] satisfies
  // sum_mu A[nu][mu] c[lam][mu] = delta_{lam,nu}.
  Mat<Rational> X = solve_linear(A, Mat<Rational>::identity(m));
  db.coeff = Mat<Rational>(m, m);
  for (int lam = 0; lam < m; ++lam)
    for (int mu = 0; mu < m; ++mu) db.coeff.at(lam, mu) = X.at(mu, lam);
  return db;
}

// Evaluate the whole descendant vector (g_lam)_lam at the point xv, whose
// entries live in the field of Eval2.  The coefficient lift is F(Rational).
template <typename Eval2>
std::vector<typename Eval2::Field> descendant_eval_all(
    const DescendantBasis& db, const std::vector<typename Eval2::Field>& xv,
    const Eval2& ev2) {
  using F = typename Eval2::Field;
  const int m = static_cast<int>(db.parts.size());
  std::vector<F> v;
  v.reserve(db.sums.size());
  for (const StabSum& s : db.sums) v.push_back(stab_sum_eval(s, xv, ev2));
  std::vector<F> g(static_cast<size_t>(m), F(0));
  for (int lam = 0; lam < m; ++lam)
    for (int mu = 0; mu < m; ++mu) {
      if (rat_is_zero(db.coeff.at(lam, mu))) continue;
      g[static_cast<size_t>(lam)] =
          g[static_cast<size_t>(lam)] + F(db.coeff.at(lam, mu)) * v[static_cast<size_t>(mu)];
    }
  return g;
}

}  // namespace qdelab
