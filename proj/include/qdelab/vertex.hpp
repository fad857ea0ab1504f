#pragma once

// Vertex counting series: the bare vertex of a fixed point and the matrix
// Psi of descendant vertices, order by order in z.
//
// Configurations attached to a partition are fillings d of its diagram by
// non-negative integers that weakly increase along rows and columns away
// from the corner box.  The z^k coefficient sums over fillings of size k:
//
//   bare vertex  V_lam(z)  = sum_d (z/hbar^{1/2})^{|d|} desc(x)|_{x_i = phi_i q^{d_i}}
//                            * prod_{i,j} [ (t1 phi_i/phi_j)_{d_i-d_j} / ((q/t2) phi_i/phi_j)_{d_i-d_j} ]
//                                        * [ (q phi_i/phi_j)_{d_i-d_j} / (hbar phi_i/phi_j)_{d_i-d_j} ]
//                            * prod_i (phi_i hbar)_{d_i} / (q phi_i)_{d_i}
//
//   Psi_{lam,mu}(z)        = sum_d (hbar^{1/2} z)^{|d|} g_lam(x)|_{x_i = phi^mu_i q^{-d_i}}
//                            * prod_{i,j} [ (phi_j/(phi_i t1))_{d_i-d_j} / (q t2 phi_j/phi_i)_{d_i-d_j} ]
//                                        * [ (q phi_j/phi_i)_{d_i-d_j} / ((phi_j/(phi_i hbar)))_{d_i-d_j} ]
//                            * prod_i (1/(phi_i hbar))_{d_i} / (q/phi_i)_{d_i}
//
// where g is the delta-normalized descendant family built with the opposite
// polarization at the reflected slope s - 1.  That pairing makes Psi(0) the
// identity matrix and is what couples Psi at slope s to the wall window
// [s-1, s) in the difference equation.

#include <qdelab/descendant.hpp>
#include <qdelab/qpoch.hpp>
#include <qdelab/zseries.hpp>

#include <functional>
#include <utility>
#include <vector>

namespace qdelab {

// All weakly-increasing fillings (row-major box order) with |d| <= budget.
inline std::vector<std::vector<long>> configurations(const Partition& lam,
                                                     long budget) {
  std::vector<Box> bs = boxes_of(lam);
  std::vector<std::vector<long>> out;
  std::vector<long> cur(bs.size(), 0);
  std::function<void(size_t, long)> rec = [&](size_t i, long sum) {
    if (i == bs.size()) {
      out.push_back(cur);
      return;
    }
    const Box& b = bs[i];
    long lo = 0;
    if (b.col > 1) lo = std::max(lo, cur[static_cast<size_t>(
                                      box_index(lam, b.row, b.col - 1))]);
    if (b.row > 1) lo = std::max(lo, cur[static_cast<size_t>(
                                      box_index(lam, b.row - 1, b.col))]);
    for (long v = lo; sum + v <= budget; ++v) {
      cur[i] = v;
      rec(i + 1, sum + v);
    }
    cur[i] = lo;  // restore a consistent prefix for siblings
  };
  rec(0, 0);
  return out;
}

// Counts of fillings per size 0..order, from the hook-product generating
// function prod_boxes 1/(1 - t^{hook}).  Used as an enumeration cross-check.
inline std::vector<long> configuration_counts(const Partition& lam,
                                              int order) {
  std::vector<long> g(static_cast<size_t>(order) + 1, 0);
  g[0] = 1;
  Partition conj = conjugate(lam);
  for (const Box& b : boxes_of(lam)) {
    int arm = lam[static_cast<size_t>(b.row - 1)] - b.col;
    int leg = conj[static_cast<size_t>(b.col - 1)] - b.row;
    int hook = arm + leg + 1;
    // multiply g by 1/(1 - t^hook)
    for (int k = hook; k <= order; ++k)
      g[static_cast<size_t>(k)] += g[static_cast<size_t>(k - hook)];
  }
  return g;
}

namespace vdetail {

// prod over ordered pairs i != j and the single product, for the bare vertex.
inline KQ vertex_weight(const std::vector<long>& d,
                        const std::vector<KQ>& phi, const EvalQ& ev) {
  const size_t n = d.size();
  const KQ q = qpow(2);
  const KQ t1 = ev.mono(2, 0, 0), t2 = ev.mono(0, 2, 0), hb = ev.mono(2, 2, 0);
  KQ w(1);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      long e = d[i] - d[j];
      if (e == 0) continue;
      KQ r = phi[i] / phi[j];
      w = w * qpoch(t1 * r, e, ev) / qpoch(q / t2 * r, e, ev);
      w = w * qpoch(q * r, e, ev) / qpoch(hb * r, e, ev);
    }
  for (size_t i = 0; i < n; ++i) {
    if (d[i] == 0) continue;
    w = w * qpoch(phi[i] * hb, d[i], ev) / qpoch(q * phi[i], d[i], ev);
  }
  return w;
}

// The same for the descendant-vertex matrix Psi.
inline KQ psi_weight(const std::vector<long>& d, const std::vector<KQ>& phi,
                     const EvalQ& ev) {
  const size_t n = d.size();
  const KQ q = qpow(2);
  const KQ t1 = ev.mono(2, 0, 0), t2 = ev.mono(0, 2, 0), hb = ev.mono(2, 2, 0);
  KQ w(1);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      long e = d[i] - d[j];
      if (e == 0) continue;
      KQ r = phi[j] / phi[i];
      w = w * qpoch(r / t1, e, ev) / qpoch(q * t2 * r, e, ev);
      w = w * qpoch(q * r, e, ev) / qpoch(r / hb, e, ev);
    }
  for (size_t i = 0; i < n; ++i) {
    if (d[i] == 0) continue;
    w = w * qpoch(KQ(1) / (phi[i] * hb), d[i], ev) /
        qpoch(q / phi[i], d[i], ev);
  }
  return w;
}

}  // namespace vdetail

// Bare vertex series of lam to order `order` (inclusive); desc maps the
// Chern-root values x_i = phi_i q^{d_i} to a scalar insertion (pass nullptr
// for the insertion 1).
inline ZSer<KQ> vertex_series(
    const Partition& lam, int order, const EvalQ& ev,
    const std::function<KQ(const std::vector<KQ>&)>& desc = nullptr) {
  ZSer<KQ> v = ZSer<KQ>(0).truncated(order + 1);
  std::vector<KQ> phi = phi_values(lam, ev);
  for (const auto& d : configurations(lam, order)) {
    long k = 0;
    for (long x : d) k += x;
    KQ w = vdetail::vertex_weight(d, phi, ev);
    w = w * ev.mono(-k, -k, 0);  // (1/sqrt(hbar))^{|d|}
    if (desc) {
      std::vector<KQ> xv(phi.size());
      for (size_t i = 0; i < phi.size(); ++i)
        xv[i] = phi[i] * qpow(2 * d[i]);
      w = w * desc(xv);
    }
    v = v + ZSer<KQ>::monomial(w, k, order + 1);
  }
  return v;
}

struct PsiMatrix {
  int n = 0;
  Rational slope;  // an interior point of the alcove
  int order = 0;
  std::vector<Partition> parts;
  Mat<ZSer<KQ>> m;
};

// The descendant-vertex matrix to order `order`, at the alcove containing
// `slope`.  Rows lam, columns mu in the canonical partition order.
inline PsiMatrix psi_matrix(int n, const Rational& slope, int order,
                            const ParamSpec& ps) {
  PsiMatrix P;
  P.n = n;
  P.slope = slope;
  P.order = order;
  P.parts = partitions_of(n);
  const int p = static_cast<int>(P.parts.size());
  EvalQ evq(ps);
  DescendantBasis db =
      build_descendant_basis(n, slope - 1, Pol::Opp, EvalPlain(ps));
  P.m = Mat<ZSer<KQ>>(p, p);
  for (auto& e : P.m.a) e = ZSer<KQ>(0).truncated(order + 1);
  for (int mu = 0; mu < p; ++mu) {
    std::vector<KQ> phi = phi_values(P.parts[static_cast<size_t>(mu)], evq);
    for (const auto& d :
         configurations(P.parts[static_cast<size_t>(mu)], order)) {
      long k = 0;
      for (long x : d) k += x;
      std::vector<KQ> xv(phi.size());
      for (size_t i = 0; i < phi.size(); ++i)
        xv[i] = phi[i] * qpow(-2 * d[i]);
      std::vector<KQ> g = descendant_eval_all(db, xv, evq);
      KQ w = vdetail::psi_weight(d, phi, evq);
      w = w * evq.mono(k, k, 0);  // hbar^{|d|/2}
      for (int lam = 0; lam < p; ++lam) {
        KQ e = w * g[static_cast<size_t>(lam)];
        if (is_zero(e)) continue;
        P.m.at(lam, mu) = P.m.at(lam, mu) + ZSer<KQ>::monomial(e, k, order + 1);
      }
    }
  }
  return P;
}

}  // namespace qdelab
