#pragma once
// Parameter draws and evaluation policies.
//
// Every formula in the library is written in half-exponents of (t1, t2, q):
// a monomial is t1^{a/2} t2^{b/2} q^{g/2} with integers a, b, g. An Eval
// policy maps such a monomial into its scalar field:
//
//   EvalQ     - exact numeric t1^{1/2}, t2^{1/2}; field = Q(Q), Q = q^{1/2}.
//   EvalPlain - same draw, but q-free contexts only; field = Q (rationals).
//   EvalA     - symbolic a with t1 = a*hbar^{1/2}, t2 = hbar^{1/2}/a and
//               hbar numeric; field = Q(A) with A = a^{1/2}. q-free only.
//
// Draws are deterministic in (seed, index) and screened for genericity:
// no monomial t1^i t2^j with (i,j) != (0,0), |i|,|j| <= 8 evaluates to 1.

#include <cstdint>
#include <stdexcept>
#include <string>

#include "qdelab/poly.hpp"
#include "qdelab/rational.hpp"

namespace qdelab {

// A factor that must be invertible at the drawn parameters vanished; callers
// redraw (seed, index+1) and retry.
struct NonGenericParameters : std::domain_error {
  explicit NonGenericParameters(const std::string& what)
      : std::domain_error(what) {}
};

// A coefficient that had to be specialized at q = 1 has a pole there.
struct PoleAtQOne : std::domain_error {
  explicit PoleAtQOne(const std::string& what) : std::domain_error(what) {}
};

// Cross-checks of a calibration (central scalars, basis ratios) failed.
struct CalibrationInconsistent : std::domain_error {
  explicit CalibrationInconsistent(const std::string& what)
      : std::domain_error(what) {}
};

struct ParamSpec {
  Rational t1h, t2h;  // values of t1^{1/2}, t2^{1/2}
  std::uint64_t seed = 0;
  int index = 0;  // draw index under this seed
};

inline bool params_generic(const Rational& t1h, const Rational& t2h) {
  if (sgn(t1h) <= 0 || sgn(t2h) <= 0) return false;
  if (t1h == t2h) return false;
  for (int i = -8; i <= 8; ++i)
    for (int j = -8; j <= 8; ++j) {
      if (i == 0 && j == 0) continue;
      if (rat_pow(t1h, 2 * i) * rat_pow(t2h, 2 * j) == 1) return false;
    }
  return true;
}

inline ParamSpec draw_params(std::uint64_t seed, int index) {
  Rng rng(seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(index + 1));
  ParamSpec p;
  p.seed = seed;
  p.index = index;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    p.t1h = Rational(rng.range(2, 19), rng.range(2, 19));
    p.t2h = Rational(rng.range(2, 19), rng.range(2, 19));
    p.t1h.canonicalize();
    p.t2h.canonicalize();
    if (params_generic(p.t1h, p.t2h)) return p;
  }
  throw std::runtime_error("draw_params: could not find generic parameters");
}

struct EvalQ {
  using Field = KQ;
  Rational t1h, t2h;

  explicit EvalQ(const ParamSpec& p) : t1h(p.t1h), t2h(p.t2h) {}
  EvalQ(Rational t1, Rational t2) : t1h(std::move(t1)), t2h(std::move(t2)) {}

  // t1^{a/2} t2^{b/2} q^{g/2}
  Field mono(long a, long b, long g) const {
    return KQ(rat_pow(t1h, a) * rat_pow(t2h, b)) * KQ::var_pow(g);
  }
  static Rational to_rational(const Field& f) {
    if (f.den.deg() != 0 || f.num.deg() > 0)
      throw std::domain_error("EvalQ::to_rational: value depends on q");
    if (f.num.zero()) return Rational(0);
    return f.num.c[0] / f.den.c[0];
  }
};

struct EvalPlain {
  using Field = Rational;
  Rational t1h, t2h;

  explicit EvalPlain(const ParamSpec& p) : t1h(p.t1h), t2h(p.t2h) {}
  EvalPlain(Rational t1, Rational t2) : t1h(std::move(t1)), t2h(std::move(t2)) {}

  Field mono(long a, long b, long g) const {
    if (g != 0)
      throw std::domain_error("EvalPlain: q-power in a q-free context");
    return rat_pow(t1h, a) * rat_pow(t2h, b);
  }
  static Rational to_rational(const Field& f) { return f; }
};

struct EvalA {
  using Field = KA;
  Rational hq;  // numeric value of hbar^{1/4}

  explicit EvalA(Rational hbar_quarter) : hq(std::move(hbar_quarter)) {
    if (sgn(hq) <= 0 || hq == 1)
      throw std::invalid_argument("EvalA: hbar^{1/4} must be positive, != 1");
  }

  // t1^{a/2} t2^{b/2} = A^{a-b} * (hbar^{1/4})^{a+b},  A = a^{1/2}
  Field mono(long a, long b, long g) const {
    if (g != 0)
      throw std::domain_error("EvalA: q-power in the symbolic-a context");
    return KA::var_pow(a - b) * KA(rat_pow(hq, a + b));
  }
};

// Degree interval [lo, hi] of a Laurent element of Q(A): requires the
// canonical denominator to be a monomial A^k (true for restriction values,
// which are Laurent polynomials in the weights).
inline std::pair<long, long> a_degree_interval(const KA& f) {
  if (f.zero()) throw std::domain_error("a_degree_interval: zero element");
  if (f.den.val() != f.den.deg())
    throw std::domain_error("a_degree_interval: non-monomial denominator");
  long k = f.den.deg();
  return {f.num.val() - k, f.num.deg() - k};
}

}  // namespace qdelab
