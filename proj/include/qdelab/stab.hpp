#pragma once
// The slope-s stable envelope of a fixed point, in factored form, and its
// exact evaluation at arbitrary Chern-root specializations.
//
// Stab_{C,T^{1/2},s}(lam) = (det T^{1/2})^{-1/2} Sym( S_lam sum_t W_t )
//
// with one admissible tree per W_t and Sym the plain sum over all bijections
// of Chern roots to boxes. Every half-power identity y^{m+1/2} / a(y) =
// y^{m+1} / (y - 1) is applied at build time, so a term is
//
//   sign * [aggregate monomial with integer x-exponents] * prod (y_f - 1)^{±1}
//
// where each y_f is an integer monomial in the Chern roots and t1, t2. The
// root factor (x_r - 1)^{-1} and each tree-edge factor cancel exactly against
// numerator factors of S_lam with the identical monomial; the cancellation is
// performed on the factor multiset, which is what makes restrictions to fixed
// points finite without polynomial division.
//
// Evaluation perturbs colliding specializations along x_a -> x_a delta^{e_a}
// with distinct positive e_a and takes the exact limit delta -> 1, using
// per-term limits when every term is finite and full univariate rational
// arithmetic in delta when individual terms have poles.

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qdelab/mat.hpp"
#include "qdelab/params.hpp"
#include "qdelab/partitions.hpp"
#include "qdelab/poly.hpp"
#include "qdelab/rational.hpp"
#include "qdelab/trees.hpp"
#include "qdelab/walls.hpp"
#include "qdelab/young.hpp"

namespace qdelab {

struct StabFactor {
  // y = prod_i x_i^{xe[i]} * t1^{ta} t2^{tb}; contributes (y - 1)^{eps}.
  std::vector<int> xe;
  long ta = 0, tb = 0;  // full t-exponents (arguments are integer monomials)
  int eps = 1;
};

struct StabTerm {
  Rational coeff;          // (-1)^kappa
  std::vector<long> xagg;  // integer x-exponents of the aggregate monomial
  long agg_a = 0, agg_b = 0;  // half-exponents of its t-part
  std::vector<StabFactor> fac;
};

struct StabSum {
  Partition lam;
  int n = 0;
  Rational slope;
  Pol pol = Pol::Std;
  std::vector<StabTerm> terms;  // one per admissible tree
};

namespace detail {

struct FactorKey {
  std::vector<int> xe;
  long ta, tb;
  bool operator<(const FactorKey& o) const {
    if (xe != o.xe) return xe < o.xe;
    if (ta != o.ta) return ta < o.ta;
    return tb < o.tb;
  }
};

}  // namespace detail

inline StabSum build_stab_sum(const Partition& lam, const Rational& slope,
                              Pol pol) {
  const auto bs = boxes_of(lam);
  const int n = static_cast<int>(bs.size());
  if (n == 0) throw std::invalid_argument("build_stab_sum: empty partition");
  if (!(bs[0].row == 1 && bs[0].col == 1))
    throw std::logic_error("build_stab_sum: box 0 is not the corner");
  require_off_wall(n, slope);

  std::vector<Rho> rho(bs.size());
  for (std::size_t i = 0; i < bs.size(); ++i) rho[i] = rho_of(bs[i]);
  const Rho rho_r = rho[0];

  const PolarizationData pd = polarization_data(lam, pol);

  // Shared part: aggregate half-exponents and the factor multiset of
  // (det T^{1/2})^{-1/2} S_lam.
  std::vector<long> xh(n, 0);  // x-exponents of the aggregate, in half-units
  long agg_a = 0, agg_b = 0;
  std::map<detail::FactorKey, int> shared;

  auto add_factor = [&](std::vector<int> xe, long ta, long tb, int eps) {
    shared[detail::FactorKey{std::move(xe), ta, tb}] += eps;
  };

  // (det T^{1/2})^{-1/2}
  for (int i = 0; i < n; ++i) xh[i] -= pd.det_x_exp;
  agg_a -= pd.det_t_a / 2;
  agg_b -= pd.det_t_b / 2;

  // S_lam numerator pairs (ordered, a = b included where the condition holds)
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (rho[a].plus_one() < rho[b]) {
        // a(x_a / (t1 x_b)): factor (y-1), aggregate y^{-1/2}
        std::vector<int> xe(n, 0);
        xe[a] += 1;
        xe[b] -= 1;
        add_factor(xe, -1, 0, +1);
        xh[a] -= 1;
        xh[b] += 1;
        agg_a += 1;
      }
      if (rho[b] < rho[a].plus_one()) {
        // a(x_b / (t2 x_a))
        std::vector<int> xe(n, 0);
        xe[b] += 1;
        xe[a] -= 1;
        add_factor(xe, 0, -1, +1);
        xh[b] -= 1;
        xh[a] += 1;
        agg_b += 1;
      }
    }
  // singles
  for (int a = 0; a < n; ++a) {
    if (rho[a] <= rho_r) {
      // a(x_a)
      std::vector<int> xe(n, 0);
      xe[a] += 1;
      add_factor(xe, 0, 0, +1);
      xh[a] -= 1;
    } else {
      // a(1 / (t1 t2 x_a))
      std::vector<int> xe(n, 0);
      xe[a] -= 1;
      add_factor(xe, -1, -1, +1);
      xh[a] += 1;
      agg_a += 1;
      agg_b += 1;
    }
  }
  // denominator pairs
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!(rho[a] < rho[b])) continue;
      {
        // 1 / a(x_a / x_b): factor (y-1)^{-1}, aggregate y^{+1/2}
        std::vector<int> xe(n, 0);
        xe[a] += 1;
        xe[b] -= 1;
        add_factor(xe, 0, 0, -1);
        xh[a] += 1;
        xh[b] -= 1;
      }
      {
        // 1 / a(x_a / (t1 t2 x_b))
        std::vector<int> xe(n, 0);
        xe[a] += 1;
        xe[b] -= 1;
        add_factor(xe, -1, -1, -1);
        xh[a] += 1;
        xh[b] -= 1;
        agg_a -= 1;
        agg_b -= 1;
      }
    }

  StabSum S;
  S.lam = lam;
  S.n = n;
  S.slope = slope;
  S.pol = pol;

  const long floor_ns = rat_floor_long(Rational(n) * slope);
  for (const OrientedTree& t : enumerate_trees(lam)) {
    std::vector<long> txh = xh;
    long ta2 = agg_a, tb2 = agg_b;
    std::map<detail::FactorKey, int> fs = shared;

    // Root: (x_r / phi_r)^{floor(|lam| s) + 1/2} / a(x_r / phi_r), phi_r = 1:
    // aggregate x_r^{floor+1}, factor (x_r - 1)^{-1}.
    txh[0] += 2 * (floor_ns + 1);
    {
      std::vector<int> xe(n, 0);
      xe[0] = 1;
      fs[detail::FactorKey{std::move(xe), 0, 0}] -= 1;
    }
    // Edges
    for (std::size_t ei = 0; ei < t.edges.size(); ++ei) {
      const auto [tail, head] = t.edges[ei];
      const long fl = rat_floor_long(Rational(t.l_e[ei]) * slope);
      // y_e = x_h phi_t / (x_t phi_h)
      std::vector<int> xe(n, 0);
      xe[head] += 1;
      xe[tail] -= 1;
      const long ya = bs[tail].col - bs[head].col;  // t1-exponent
      const long yb = bs[tail].row - bs[head].row;  // t2-exponent
      txh[head] += 2 * (fl + 1);
      txh[tail] -= 2 * (fl + 1);
      ta2 += 2 * (fl + 1) * ya / 1;
      tb2 += 2 * (fl + 1) * yb / 1;
      fs[detail::FactorKey{std::move(xe), ya, yb}] -= 1;
    }

    StabTerm term;
    term.coeff = (t.kappa % 2 == 0) ? Rational(1) : Rational(-1);
    term.xagg.resize(n);
    for (int i = 0; i < n; ++i) {
      if (txh[i] % 2 != 0)
        throw std::logic_error("build_stab_sum: odd aggregate x-exponent");
      term.xagg[i] = txh[i] / 2;
    }
    term.agg_a = ta2;
    term.agg_b = tb2;
    for (auto& [key, eps] : fs) {
      if (eps == 0) continue;  // canceled exactly
      StabFactor f;
      f.xe = key.xe;
      f.ta = key.ta;
      f.tb = key.tb;
      f.eps = eps > 0 ? 1 : -1;
      for (int rep = 0; rep < std::abs(eps); ++rep) term.fac.push_back(f);
    }
    S.terms.push_back(std::move(term));
  }
  return S;
}

// --- Evaluation ---------------------------------------------------------------

namespace detail {

// One evaluated factor: value of y at delta = 1 and the delta-exponent.
template <class F>
struct EvalFactor {
  F c;
  long k;
  int eps;
  bool at_one;
};

// Exact rational function in delta for one term with poles at delta = 1.
template <class F>
RatFunc<F> term_delta_rat(const F& agg, long kagg,
                          const std::vector<EvalFactor<F>>& fs) {
  Poly<F> num(agg), den(F(1));
  long offset = kagg;
  for (const auto& f : fs) {
    // (c delta^k - 1) = delta^{min(k,0)} (c delta^{max(k,0)} - delta^{max(-k,0)})
    Poly<F> p;
    long up = std::max(f.k, 0L), dn = std::max(-f.k, 0L);
    std::size_t degp = static_cast<std::size_t>(std::max(up, dn));
    p.c.assign(degp + 1, F(0));
    p.c[static_cast<std::size_t>(up)] = p.c[static_cast<std::size_t>(up)] + f.c;
    p.c[static_cast<std::size_t>(dn)] = p.c[static_cast<std::size_t>(dn)] - F(1);
    p.trim();
    if (f.eps > 0) {
      num = num * p;
      offset -= dn;
    } else {
      den = den * p;
      offset += dn;
    }
  }
  if (offset > 0)
    num = num * Poly<F>::monomial(F(1), static_cast<std::size_t>(offset));
  else if (offset < 0)
    den = den * Poly<F>::monomial(F(1), static_cast<std::size_t>(-offset));
  return RatFunc<F>(std::move(num), std::move(den));
}

}  // namespace detail

// Evaluate Sym(sum over trees) at the Chern-root values xv (one per box slot
// of the target). The delta-perturbation is applied automatically whenever a
// factor collides (y evaluates to exactly 1).
template <class Eval>
typename Eval::Field stab_sum_eval(const StabSum& S,
                                   const std::vector<typename Eval::Field>& xv,
                                   const Eval& ev) {
  using F = typename Eval::Field;
  const int n = S.n;
  if (static_cast<int>(xv.size()) != n)
    throw std::invalid_argument("stab_sum_eval: wrong number of Chern roots");

  // Pre-evaluate the t-part of every factor and aggregate once per term.
  struct PreFac {
    std::vector<std::pair<int, int>> boxes;  // (box, exponent)
    F tpart;
    int eps;
  };
  struct PreTerm {
    F aggt;
    std::vector<long> xagg;
    std::vector<PreFac> fac;
  };
  std::vector<PreTerm> pre;
  pre.reserve(S.terms.size());
  for (const StabTerm& t : S.terms) {
    PreTerm pt;
    pt.aggt = F(t.coeff) * ev.mono(t.agg_a, t.agg_b, 0);
    pt.xagg = t.xagg;
    for (const StabFactor& f : t.fac) {
      PreFac pf;
      for (int i = 0; i < n; ++i)
        if (f.xe[i] != 0) pf.boxes.push_back({i, f.xe[i]});
      pf.tpart = ev.mono(2 * f.ta, 2 * f.tb, 0);
      pf.eps = f.eps;
      pt.fac.push_back(std::move(pf));
    }
    pre.push_back(std::move(pt));
  }

  // delta-exponents per value slot (1..n); only used when collisions occur.
  std::vector<long> de(n);
  std::iota(de.begin(), de.end(), 1);

  struct TermEval {
    F agg;
    long kagg;
    std::vector<detail::EvalFactor<F>> fs;
    int n_zero_num = 0, n_zero_den = 0;
  };

  std::vector<TermEval> finite_pending;  // n1 >= n2, to be limit-summed
  std::vector<TermEval> singular;        // n2 > n1, need symbolic delta

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  const F one(1);
  F direct_sum(0);
  do {
    for (const PreTerm& pt : pre) {
      TermEval te;
      te.agg = pt.aggt;
      te.kagg = 0;
      for (int b = 0; b < n; ++b) {
        if (pt.xagg[b] != 0) {
          te.agg = te.agg * field_pow(xv[static_cast<std::size_t>(perm[b])],
                                      pt.xagg[b]);
          te.kagg += pt.xagg[b] * de[static_cast<std::size_t>(perm[b])];
        }
      }
      bool skip = false;
      for (const PreFac& pf : pt.fac) {
        detail::EvalFactor<F> ef;
        ef.c = pf.tpart;
        ef.k = 0;
        for (auto& [b, e] : pf.boxes) {
          ef.c = ef.c * field_pow(xv[static_cast<std::size_t>(perm[b])], e);
          ef.k += e * de[static_cast<std::size_t>(perm[b])];
        }
        ef.eps = pf.eps;
        ef.at_one = (ef.c == one);
        if (ef.at_one) {
          if (ef.eps > 0)
            te.n_zero_num++;
          else
            te.n_zero_den++;
          if (ef.k == 0)
            throw std::logic_error("stab_sum_eval: identically-one factor");
        }
        te.fs.push_back(std::move(ef));
      }
      if (te.n_zero_num == 0 && te.n_zero_den == 0) {
        // Fully generic term: evaluate directly.
        F v = te.agg;
        for (auto& ef : te.fs) {
          F f = ef.c - one;
          if (ef.eps > 0)
            v = v * f;
          else
            v = v / f;
        }
        direct_sum = direct_sum + v;
        skip = true;
      } else if (te.n_zero_num > te.n_zero_den) {
        skip = true;  // term vanishes in the limit
      }
      if (!skip) {
        if (te.n_zero_num == te.n_zero_den)
          finite_pending.push_back(std::move(te));
        else
          singular.push_back(std::move(te));
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  // Terms with matching zero counts: exact limit via (delta^k - 1) ~ k(delta-1).
  for (const TermEval& te : finite_pending) {
    F v = te.agg;
    Rational kratio(1);
    for (auto& ef : te.fs) {
      if (ef.at_one) {
        if (ef.eps > 0)
          kratio *= ef.k;
        else
          kratio /= ef.k;
      } else {
        F f = ef.c - one;
        if (ef.eps > 0)
          v = v * f;
        else
          v = v / f;
      }
    }
    direct_sum = direct_sum + F(kratio) * v;
  }

  // Terms with per-term poles at delta = 1: their poles must cancel within
  // the group; sum exactly as rational functions of delta.
  if (!singular.empty()) {
    RatFunc<F> acc;
    for (const TermEval& te : singular)
      acc = acc + detail::term_delta_rat<F>(te.agg, te.kagg, te.fs);
    F den1 = poly_eval(acc.den, one);
    if (is_zero(den1))
      throw NonGenericParameters("stab_sum_eval: pole at delta = 1");
    direct_sum = direct_sum + poly_eval(acc.num, one) / den1;
  }
  return direct_sum;
}

// Tautological weights of mu as field values: phi_i, optionally shifted by
// q^{qshift_i} (given in half-units of q, i.e. Q^{2*qshift_i} ... the caller
// passes the full Q-exponent).
template <class Eval>
std::vector<typename Eval::Field> phi_values(const Partition& mu,
                                             const Eval& ev) {
  std::vector<typename Eval::Field> xv;
  for (const Box& b : boxes_of(mu)) {
    auto [a2, b2] = phi_halves(b);
    xv.push_back(ev.mono(a2, b2, 0));
  }
  return xv;
}

// Restriction of Stab(lam) to the fixed point mu.
template <class Eval>
typename Eval::Field stab_restrict(const StabSum& S, const Partition& mu,
                                   const Eval& ev) {
  return stab_sum_eval(S, phi_values(mu, ev), ev);
}

// Matrix A_{nu,mu} = Stab(mu)|_nu over the partitions of n (rows nu, cols mu;
// ordering as given). build_stab_sum is invoked once per column.
template <class Eval>
Mat<typename Eval::Field> stab_matrix(const std::vector<Partition>& parts,
                                      const Rational& slope, Pol pol,
                                      const Eval& ev) {
  using F = typename Eval::Field;
  const int p = static_cast<int>(parts.size());
  Mat<F> A(p, p);
  for (int m = 0; m < p; ++m) {
    StabSum S = build_stab_sum(parts[m], slope, pol);
    for (int v = 0; v < p; ++v) A.at(v, m) = stab_restrict(S, parts[v], ev);
  }
  return A;
}

}  // namespace qdelab
