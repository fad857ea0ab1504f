#pragma once

// Power-series roots of the Bethe system and the q = 1 eigenvector
// certificate for the alcove operator.
//
// The system, one equation per Chern root, is
//
//   sqrt(h) z (1 - 1/(x_i h)) prod_{j!=i} w(x_i/x_j)
//       = (1 - 1/x_i) prod_{j!=i} w(x_j/x_i),
//   w(y) = (1-y)(h-y) / ((t2-y)(t1-y)),        h = t1 t2,
//
// solved as formal series in z with the fixed-point weights phi^mu as the
// z = 0 branch point.  The w-denominators (t1 - x_j/x_i), (t2 - x_j/x_i)
// vanish AT z = 0 whenever mu has boxes adjacent in a row or column, so the
// displayed form cannot be evaluated at the branch point itself; clearing
// the denominators gives the polynomial system
//
//   G_i = sqrt(h) z (1 - 1/(x_i h)) prod_{j!=i} N(x_i/x_j) D(x_j/x_i)
//       -          (1 - 1/x_i)     prod_{j!=i} N(x_j/x_i) D(x_i/x_j),
//   N(y) = (1-y)(h-y),   D(y) = (t2-y)(t1-y),
//
// which the solver uses throughout: G(phi^mu, 0) = 0 exactly, and the
// order-k correction solves the constant Jacobian dG/dx at that point.
// bethe_residual still reports the displayed (uncleared) form, evaluated by
// Laurent-series division, which is finite once the roots are genuine
// series rather than constants.

#include <qdelab/descendant.hpp>
#include <qdelab/qde_fock.hpp>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qdelab {

struct SingularJacobian : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CalibrationMissing : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BetheRoots {
  Partition mu;
  std::vector<ZSer<Rational>> x;  // constant terms are the weights of mu
  int order = 0;                  // residual verified zero through z^order
};

namespace bdetail {

// First-order dual number over the rationals: value + derivative slot.
struct Dual {
  Rational v, d;
  Dual() : v(0), d(0) {}
  Dual(int k) : v(k), d(0) {}  // NOLINT: implicit by design
  explicit Dual(Rational val, Rational der = Rational(0))
      : v(std::move(val)), d(std::move(der)) {}
};

inline Dual operator+(const Dual& a, const Dual& b) {
  return Dual(Rational(a.v + b.v), Rational(a.d + b.d));
}
inline Dual operator-(const Dual& a, const Dual& b) {
  return Dual(Rational(a.v - b.v), Rational(a.d - b.d));
}
inline Dual operator*(const Dual& a, const Dual& b) {
  return Dual(Rational(a.v * b.v), Rational(a.v * b.d + a.d * b.v));
}
inline Dual operator/(const Dual& a, const Dual& b) {
  Rational q = a.v / b.v;
  return Dual(q, Rational((a.d - q * b.d) / b.v));
}

// G_i of the cleared system; R is Rational, Dual, or ZSer<Rational>.
// `hh` is sqrt(h) = t1h * t2h; t1, t2, h are the full parameters.
template <class R>
R cleared_equation(int i, const std::vector<R>& x, const R& z,
                   const Rational& t1, const Rational& t2,
                   const Rational& hh) {
  const int n = static_cast<int>(x.size());
  const R one(1);
  const Rational h(t1 * t2);
  R lhs = R(hh) * z * (one - one / (x[static_cast<size_t>(i)] * R(h)));
  R rhs = one - one / x[static_cast<size_t>(i)];
  for (int j = 0; j < n; ++j) {
    if (j == i) continue;
    R yij = x[static_cast<size_t>(i)] / x[static_cast<size_t>(j)];
    R yji = x[static_cast<size_t>(j)] / x[static_cast<size_t>(i)];
    lhs = lhs * ((one - yij) * (R(h) - yij)) * ((R(t2) - yji) * (R(t1) - yji));
    rhs = rhs * ((one - yji) * (R(h) - yji)) * ((R(t2) - yij) * (R(t1) - yij));
  }
  return lhs - rhs;
}

}  // namespace bdetail

// Left minus right side of the displayed equations at the given roots,
// evaluated by Laurent division.  Identically-vanishing denominators (which
// a genuine series branch never produces) surface as NonGenericParameters.
inline std::vector<ZSer<Rational>> bethe_residual(const BetheRoots& r, int D,
                                                  const EvalPlain& ev) {
  using S = ZSer<Rational>;
  const int n = static_cast<int>(r.x.size());
  const Rational t1 = ev.mono(2, 0, 0), t2 = ev.mono(0, 2, 0);
  const Rational h(t1 * t2), hh(ev.mono(1, 1, 0));
  const S one(1);
  auto w = [&](const S& y) -> S {
    return ((one - y) * (S(h) - y)) / ((S(t2) - y) * (S(t1) - y));
  };
  std::vector<S> out;
  try {
    for (int i = 0; i < n; ++i) {
      S lhs = S(hh) * S::monomial(Rational(1), 1) *
              (one - one / (r.x[static_cast<size_t>(i)] * S(h)));
      S rhs = one - one / r.x[static_cast<size_t>(i)];
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        lhs = lhs * w(r.x[static_cast<size_t>(i)] / r.x[static_cast<size_t>(j)]);
        rhs = rhs * w(r.x[static_cast<size_t>(j)] / r.x[static_cast<size_t>(i)]);
      }
      out.push_back((lhs - rhs).truncated(D + 1));
    }
  } catch (const std::domain_error&) {
    throw NonGenericParameters(
        "bethe_residual: a factor vanishes identically at this draw");
  }
  return out;
}

// Same combination but in the cleared polynomial form; no Laurent division,
// so no precision loss.  Used as the solver's internal residual.
inline std::vector<ZSer<Rational>> bethe_residual_cleared(
    const BetheRoots& r, int D, const EvalPlain& ev) {
  using S = ZSer<Rational>;
  const Rational t1 = ev.mono(2, 0, 0), t2 = ev.mono(0, 2, 0);
  const Rational hh(ev.mono(1, 1, 0));
  const S z = S::monomial(Rational(1), 1, D + 1);
  std::vector<S> out;
  for (int i = 0; i < static_cast<int>(r.x.size()); ++i)
    out.push_back(bdetail::cleared_equation(i, r.x, z, t1, t2, hh));
  return out;
}

namespace bdetail {

// Valuation of the clearing multiplier prod_{j!=i} D(x_i/x_j) D(x_j/x_i)
// along the given roots.  Adjacent boxes make individual factors vanish at
// z = 0 (to branch-dependent order), which is exactly the amount by which
// the cleared system over-certifies less than the displayed one.
inline long clearing_valuation(const std::vector<ZSer<Rational>>& x, int i,
                               const Rational& t1, const Rational& t2) {
  using S = ZSer<Rational>;
  const int n = static_cast<int>(x.size());
  long v = 0;
  for (int j = 0; j < n; ++j) {
    if (j == i) continue;
    for (auto [a, b] : {std::pair{i, j}, std::pair{j, i}}) {
      S y = x[static_cast<size_t>(a)] / x[static_cast<size_t>(b)];
      v += (S(t2) - y).valuation() + (S(t1) - y).valuation();
    }
  }
  return v;
}

// Solve the cleared system to the requested order at fixed precision.
inline std::vector<ZSer<Rational>> solve_cleared(
    const Partition& mu, const std::vector<Rational>& phi,
    const Mat<Rational>& J, int order, long prec, const EvalPlain& ev) {
  using S = ZSer<Rational>;
  const Rational t1 = ev.mono(2, 0, 0), t2 = ev.mono(0, 2, 0);
  const Rational hh(ev.mono(1, 1, 0));
  const int n = static_cast<int>(phi.size());
  std::vector<S> x;
  for (int i = 0; i < n; ++i)
    x.push_back(S::monomial(phi[static_cast<size_t>(i)], 0, prec));
  const S z = S::monomial(Rational(1), 1, prec);
  for (int k = 1; k <= order; ++k) {
    Mat<Rational> rhs(n, 1);
    bool any = false;
    for (int i = 0; i < n; ++i) {
      rhs.at(i, 0) =
          Rational(-cleared_equation(i, x, z, t1, t2, hh).coeff(k));
      any = any || !rat_is_zero(rhs.at(i, 0));
    }
    if (!any) continue;
    Mat<Rational> delta(n, 1);
    try {
      delta = solve_linear(J, rhs);
    } catch (const std::domain_error&) {
      throw SingularJacobian("bethe_solve: singular Jacobian at " +
                             part_str(mu) + " for this draw");
    }
    for (int i = 0; i < n; ++i)
      x[static_cast<size_t>(i)] =
          x[static_cast<size_t>(i)] + S::monomial(delta.at(i, 0), k, prec);
  }
  return x;
}

}  // namespace bdetail

// Order-by-order solve with the constant Jacobian at (phi^mu, z = 0).  The
// returned roots satisfy the displayed equations through z^D; internally
// the cleared system is solved through z^(D + max_i v_i) where v_i is the
// clearing-multiplier valuation along the branch, since dividing the
// multiplier back out eats that many orders.
inline BetheRoots bethe_solve(const Partition& mu, int D, const EvalPlain& ev,
                              long prec_slack = 0) {
  using bdetail::Dual;
  const Rational t1 = ev.mono(2, 0, 0), t2 = ev.mono(0, 2, 0);
  const Rational hh(ev.mono(1, 1, 0));
  std::vector<Rational> phi = phi_values(mu, ev);
  const int n = static_cast<int>(phi.size());

  // Constant terms must solve the system exactly.
  {
    std::vector<Rational> x0 = phi;
    Rational z0(0);
    for (int i = 0; i < n; ++i)
      if (!rat_is_zero(bdetail::cleared_equation(i, x0, z0, t1, t2, hh)))
        throw std::logic_error("bethe_solve: weights of " + part_str(mu) +
                               " do not solve the z = 0 system");
  }

  // Jacobian dG_i/dx_k at the branch point, via dual numbers.
  Mat<Rational> J(n, n);
  for (int k = 0; k < n; ++k) {
    std::vector<Dual> xd;
    for (int i = 0; i < n; ++i)
      xd.push_back(Dual(phi[static_cast<size_t>(i)],
                        Rational(i == k ? 1 : 0)));
    Dual z0(Rational(0));
    for (int i = 0; i < n; ++i)
      J.at(i, k) = bdetail::cleared_equation(i, xd, z0, t1, t2, hh).d;
  }

  const long vcap = 4L * n + 8;
  long target = D;
  BetheRoots r;
  r.mu = mu;
  for (;;) {
    long prec = target + 1 + prec_slack + 2 * (target - D) + 2;
    r.x = bdetail::solve_cleared(mu, phi, J, static_cast<int>(target), prec, ev);
    long vmax = 0;
    for (int i = 0; i < n; ++i)
      vmax = std::max(vmax, bdetail::clearing_valuation(r.x, i, t1, t2));
    if (vmax > vcap)
      throw NonGenericParameters(
          "bethe_solve: clearing multiplier degenerates at " + part_str(mu));
    if (D + vmax <= target) break;
    target = D + vmax;
  }

  r.order = D;
  for (const ZSer<Rational>& g : bethe_residual(r, D, ev)) {
    if (g.prec <= D)
      throw std::logic_error("bethe_solve: verification ran out of precision");
    for (long k = std::min<long>(g.valuation(), 0); k <= D; ++k)
      if (!rat_is_zero(g.coeff(k)))
        throw std::logic_error("bethe_solve: residual not cleared at " +
                               part_str(mu));
  }
  return r;
}

// Evaluation policy for series-valued Chern roots: the q-free monomials are
// lifted to exact constant series.
struct EvalZR {
  using Field = ZSer<Rational>;
  EvalPlain base;
  explicit EvalZR(const ParamSpec& ps) : base(ps) {}
  Field mono(long a, long b, long g) const {
    return Field::monomial(base.mono(a, b, g), 0);
  }
};

struct EigenReport {
  Partition mu;
  Rational slope;
  std::vector<ZSer<Rational>> residual;   // M g - eigenvalue * g
  ZSer<Rational> eigenvalue;              // (x_1 ... x_n)^{-1}
  std::vector<ZSer<Rational>> g;          // eigenvector components
  bool residual_zero = false;             // through z^order
  bool unit_at_zero = false;              // g(0) = e_mu
  int order = 0;
};

// Apply (L B(z)) at Q = 1 to the descendant vector evaluated along the
// Bethe roots of mu, and compare with (x_1...x_n)^{-1} times the vector.
inline EigenReport eigencheck(Toroidal& T, int n, const Rational& slope,
                              const Partition& mu, int D, const ParamSpec& ps,
                              const Calibration* cal) {
  using S = ZSer<Rational>;
  if (cal == nullptr)
    throw CalibrationMissing("eigencheck: calibrate_basis result required");
  if (cal->n != n)
    throw CalibrationMissing("eigencheck: calibration is for a different grade");

  EvalPlain evp(ps);
  std::vector<Partition> parts = partitions_of(n);
  const int p = static_cast<int>(parts.size());
  int mu_idx = -1;
  for (int i = 0; i < p; ++i)
    if (parts[static_cast<size_t>(i)] == mu) mu_idx = i;
  if (mu_idx < 0) throw std::invalid_argument("eigencheck: |mu| != n");

  // Operator side: (L B)(z) with every coefficient evaluated at Q = 1.
  Mat<KQ> L = l_matrix(parts, EvalQ(ps));
  Mat<ZSer<KQ>> M = lift_const(L, D) * fp_alcove_operator(T, n, slope, D, cal);
  Mat<S> Mq(p, p);
  for (size_t i = 0; i < M.a.size(); ++i) {
    const ZSer<KQ>& e = M.a[i];
    S s;
    s.lead = e.lead;
    s.prec = e.prec;
    s.c.reserve(e.c.size());
    try {
      for (const KQ& ck : e.c) s.c.push_back(q_eval(ck, Rational(1)));
    } catch (const std::domain_error&) {
      throw PoleAtQOne("eigencheck: operator coefficient has a pole at q = 1");
    }
    s.normalize();
    Mq.a[i] = s;
  }

  // Vector side: descendants along the Bethe roots.  Collisions inside the
  // evaluation divide by positive-valuation series, so solve the roots with
  // spare precision and retry if an intermediate runs out.
  DescendantBasis db = build_descendant_basis(n, slope - 1, Pol::Opp, evp);
  EvalZR evz(ps);
  std::vector<S> g;
  BetheRoots roots;
  for (long slack = 2 * n + 2;; slack *= 2) {
    roots = bethe_solve(mu, D, evp, slack);
    g = descendant_eval_all(db, roots.x, evz);
    long worst = kZPrecExact;
    for (const S& gi : g) worst = std::min(worst, gi.prec);
    if (worst > D) break;
    if (slack > 64L * (n + 1))
      throw std::logic_error("eigencheck: precision exhausted");
  }

  EigenReport rep;
  rep.mu = mu;
  rep.slope = slope;
  rep.order = D;
  rep.g = g;
  S xprod(1);
  for (const S& xi : roots.x) xprod = xprod * xi;
  rep.eigenvalue = S(1) / xprod;

  rep.unit_at_zero = true;
  for (int i = 0; i < p; ++i) {
    Rational want(i == mu_idx ? 1 : 0);
    if (!(g[static_cast<size_t>(i)].coeff(0) == want)) rep.unit_at_zero = false;
  }

  rep.residual_zero = true;
  for (int i = 0; i < p; ++i) {
    S acc(0);
    for (int j = 0; j < p; ++j)
      acc = acc + Mq.at(i, j) * g[static_cast<size_t>(j)];
    acc = acc - rep.eigenvalue * g[static_cast<size_t>(i)];
    rep.residual.push_back(acc);
    for (long k = 0; k <= D; ++k)
      if (!rat_is_zero(acc.coeff(k))) rep.residual_zero = false;
  }
  return rep;
}

}  // namespace qdelab
