#pragma once
// Dense univariate polynomials over an exact field K, and the fraction field
// RatFunc<K> built on them. RatFunc is kept in a canonical form (gcd-reduced,
// denominator with leading coefficient 1) so operator== is structural.
//
// K must provide: default ctor (zero), ctor from long, +, -, *, /, unary -,
// ==, and an is_zero overload found by ADL. Rational and RatFunc<K> both
// qualify, so RatFunc can be nested (used for the delta-perturbation field).

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qdelab/rational.hpp"

namespace qdelab {

inline bool is_zero(const Rational& r) { return rat_is_zero(r); }

template <class K>
struct Poly {
  // c[i] is the coefficient of X^i; invariant: no trailing zero coefficients.
  std::vector<K> c;

  Poly() = default;
  explicit Poly(K k) {
    if (!is_zero(k)) c.push_back(std::move(k));
  }
  static Poly monomial(K k, std::size_t deg) {
    Poly p;
    if (is_zero(k)) return p;
    p.c.assign(deg + 1, K(0));
    p.c[deg] = std::move(k);
    return p;
  }

  bool zero() const { return c.empty(); }
  // Degree of the zero polynomial is -1 by convention.
  long deg() const { return static_cast<long>(c.size()) - 1; }
  // Valuation: lowest nonzero power (zero polynomial: -1).
  long val() const {
    for (std::size_t i = 0; i < c.size(); ++i)
      if (!is_zero(c[i])) return static_cast<long>(i);
    return -1;
  }
  void trim() {
    while (!c.empty() && is_zero(c.back())) c.pop_back();
  }
  const K& leading() const {
    if (c.empty()) throw std::domain_error("Poly::leading of zero");
    return c.back();
  }

  bool operator==(const Poly& o) const { return c == o.c; }
};

template <class K>
Poly<K> operator+(const Poly<K>& a, const Poly<K>& b) {
  Poly<K> r;
  r.c.resize(std::max(a.c.size(), b.c.size()), K(0));
  for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] = r.c[i] + b.c[i];
  r.trim();
  return r;
}

template <class K>
Poly<K> operator-(const Poly<K>& a) {
  Poly<K> r = a;
  for (auto& x : r.c) x = -x;
  return r;
}

template <class K>
Poly<K> operator-(const Poly<K>& a, const Poly<K>& b) {
  return a + (-b);
}

template <class K>
Poly<K> operator*(const Poly<K>& a, const Poly<K>& b) {
  Poly<K> r;
  if (a.zero() || b.zero()) return r;
  r.c.assign(a.c.size() + b.c.size() - 1, K(0));
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (is_zero(a.c[i])) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
  }
  r.trim();
  return r;
}

template <class K>
Poly<K> operator*(const K& k, const Poly<K>& p) {
  Poly<K> r;
  if (is_zero(k)) return r;
  r.c = p.c;
  for (auto& x : r.c) x = k * x;
  r.trim();
  return r;
}

// Polynomial division: a = q*b + r with deg r < deg b.
template <class K>
std::pair<Poly<K>, Poly<K>> divmod(Poly<K> a, const Poly<K>& b) {
  if (b.zero()) throw std::domain_error("Poly divmod by zero");
  Poly<K> q;
  if (a.deg() >= b.deg()) q.c.assign(a.c.size() - b.c.size() + 1, K(0));
  while (!a.zero() && a.deg() >= b.deg()) {
    K f = a.leading() / b.leading();
    std::size_t shift = a.c.size() - b.c.size();
    q.c[shift] = f;
    for (std::size_t i = 0; i < b.c.size(); ++i)
      a.c[shift + i] = a.c[shift + i] - f * b.c[i];
    a.trim();
  }
  q.trim();
  return {std::move(q), std::move(a)};
}

template <class K>
Poly<K> poly_monic(Poly<K> p) {
  if (p.zero()) return p;
  K inv = K(1) / p.leading();
  for (auto& x : p.c) x = inv * x;
  return p;
}

template <class K>
Poly<K> poly_gcd(Poly<K> a, Poly<K> b) {
  while (!b.zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = poly_monic(std::move(r));  // monicize to tame coefficient growth
  }
  return poly_monic(std::move(a));
}

template <class K>
K poly_eval(const Poly<K>& p, const K& x) {
  K acc(0);
  for (std::size_t i = p.c.size(); i-- > 0;) acc = acc * x + p.c[i];
  return acc;
}

// ---------------------------------------------------------------------------

template <class K>
struct RatFunc {
  Poly<K> num, den;  // canonical: gcd-reduced, den.leading() == 1, den != 0

  RatFunc() : den(Poly<K>(K(1))) {}
  RatFunc(long v) : num(Poly<K>(K(v))), den(Poly<K>(K(1))) {}  // NOLINT
  explicit RatFunc(K k) : num(Poly<K>(std::move(k))), den(Poly<K>(K(1))) {}
  RatFunc(Poly<K> n, Poly<K> d) : num(std::move(n)), den(std::move(d)) {
    canonicalize();
  }

  // X^e for any integer e.
  static RatFunc var_pow(long e) {
    RatFunc r;
    if (e >= 0)
      r.num = Poly<K>::monomial(K(1), static_cast<std::size_t>(e));
    else {
      r.num = Poly<K>(K(1));
      r.den = Poly<K>::monomial(K(1), static_cast<std::size_t>(-e));
    }
    return r;  // already canonical
  }

  void canonicalize() {
    if (den.zero()) throw std::domain_error("RatFunc: zero denominator");
    if (num.zero()) {
      den = Poly<K>(K(1));
      return;
    }
    Poly<K> g = poly_gcd(num, den);
    if (g.deg() > 0) {
      num = divmod(num, g).first;
      den = divmod(den, g).first;
    }
    K inv = K(1) / den.leading();
    for (auto& x : den.c) x = inv * x;
    for (auto& x : num.c) x = inv * x;
  }

  bool zero() const { return num.zero(); }
  bool operator==(const RatFunc& o) const { return num == o.num && den == o.den; }
};

template <class K>
bool is_zero(const RatFunc<K>& f) {
  return f.num.zero();
}

template <class K>
RatFunc<K> operator+(const RatFunc<K>& a, const RatFunc<K>& b) {
  return RatFunc<K>(a.num * b.den + b.num * a.den, a.den * b.den);
}

template <class K>
RatFunc<K> operator-(const RatFunc<K>& a) {
  RatFunc<K> r = a;
  r.num = -r.num;
  return r;
}

template <class K>
RatFunc<K> operator-(const RatFunc<K>& a, const RatFunc<K>& b) {
  return a + (-b);
}

template <class K>
RatFunc<K> operator*(const RatFunc<K>& a, const RatFunc<K>& b) {
  return RatFunc<K>(a.num * b.num, a.den * b.den);
}

template <class K>
RatFunc<K> operator/(const RatFunc<K>& a, const RatFunc<K>& b) {
  if (b.zero()) throw std::domain_error("RatFunc: division by zero");
  return RatFunc<K>(a.num * b.den, a.den * b.num);
}

template <class K>
RatFunc<K> rf_pow(const RatFunc<K>& a, long e) {
  if (e == 0) return RatFunc<K>(1);
  RatFunc<K> base = a;
  if (e < 0) base = RatFunc<K>(1) / a;
  unsigned long k = static_cast<unsigned long>(e > 0 ? e : -e);
  RatFunc<K> acc(1);
  while (k) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

inline Rational field_pow(const Rational& r, long e) { return rat_pow(r, e); }

template <class K>
RatFunc<K> field_pow(const RatFunc<K>& f, long e) {
  return rf_pow(f, e);
}

// The two scalar fields of the library, distinguished only by the meaning of
// the variable: KQ is Q(Q) with Q = q^{1/2}; KA is Q(a) for the symbolic-a
// slope checks. The representation is identical.
using KQ = RatFunc<Rational>;
using KA = RatFunc<Rational>;

inline KQ kq_from(const Rational& r) { return KQ(r); }

// Multiply by Q^e (exact monomial scaling).
inline KQ qpow(long e) { return KQ::var_pow(e); }

enum class LimitDir { ToZero, ToInfinity };

struct LimitResult {
  bool exists = false;
  Rational value;  // meaningful only when exists
};

// Limit of f(Q) as Q -> 0 or Q -> infinity. The canonical (reduced) form
// guarantees num and den never vanish at the same place, so the answer is
// decided by valuation/degree comparison alone.
inline LimitResult q_limit(const KQ& f, LimitDir dir) {
  LimitResult res;
  if (f.zero()) {
    res.exists = true;
    res.value = 0;
    return res;
  }
  if (dir == LimitDir::ToZero) {
    long vn = f.num.val(), vd = f.den.val();
    if (vn < vd) return res;  // pole at 0
    res.exists = true;
    res.value = vn > vd ? Rational(0)
                        : f.num.c[static_cast<std::size_t>(vn)] /
                              f.den.c[static_cast<std::size_t>(vd)];
    return res;
  }
  long dn = f.num.deg(), dd = f.den.deg();
  if (dn > dd) return res;  // pole at infinity
  res.exists = true;
  res.value = dn < dd ? Rational(0) : f.num.leading() / f.den.leading();
  return res;
}

// Substitute Q -> Q'^k (k >= 1): exponent rescaling, used when a q-shift by a
// fractional power w = n/d is realized over the refined variable Q' = q^{1/(2d)}.
inline KQ q_rescale(const KQ& f, long k) {
  if (k < 1) throw std::invalid_argument("q_rescale: k must be >= 1");
  auto stretch = [k](const Poly<Rational>& p) {
    Poly<Rational> r;
    if (p.zero()) return r;
    r.c.assign(static_cast<std::size_t>(p.deg() * k) + 1, Rational(0));
    for (std::size_t i = 0; i < p.c.size(); ++i) r.c[i * k] = p.c[i];
    return r;
  };
  KQ r;
  r.num = stretch(f.num);
  r.den = stretch(f.den);
  return r;  // stretching preserves canonicity (gcd-free, monic den)
}

// Evaluate f at Q = q0. Canonical form: a reduced fraction cannot be 0/0,
// so a vanishing denominator is a genuine pole.
inline Rational q_eval(const KQ& f, const Rational& q0) {
  Rational d = poly_eval(f.den, q0);
  if (rat_is_zero(d)) throw std::domain_error("q_eval: pole at requested point");
  return poly_eval(f.num, q0) / d;
}

}  // namespace qdelab
