#pragma once

// Truncated Laurent series in z over a coefficient field K.
//
// A series stores its leading exponent, a dense coefficient block, and an
// absolute precision bound `prec`: coefficients at exponents >= prec are
// unknown (truncated away); coefficients below `lead` and between stored
// entries are exactly zero.  Exact polynomials carry the sentinel precision.
//
// K must provide: construction from long, field arithmetic (+, -, *, /),
// equality, and is_zero(K).

#include <qdelab/poly.hpp>

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

namespace qdelab {

inline constexpr long kZPrecExact = std::numeric_limits<long>::max() / 4;

template <typename K>
struct ZSer {
  long lead = 0;
  std::vector<K> c;  // c[i] is the coefficient of z^(lead+i); c.front() != 0
  long prec = kZPrecExact;

  ZSer() = default;
  ZSer(long v) : lead(0) {  // NOLINT: implicit by design
    if (v != 0) c.push_back(K(v));
  }
  ZSer(int v) : ZSer(static_cast<long>(v)) {}  // NOLINT
  explicit ZSer(const K& k0) {
    if (!is_zero(k0)) c.push_back(k0);
  }

  static ZSer monomial(const K& k0, long e, long p = kZPrecExact) {
    ZSer r;
    r.lead = e;
    r.prec = p;
    if (!is_zero(k0) && e < p) r.c.push_back(k0);
    return r;
  }

  bool known_zero() const { return c.empty(); }
  long valuation() const { return c.empty() ? prec : lead; }

  // Coefficient of z^e; exponents at or beyond prec are unavailable.
  const K& coeff(long e) const {
    static const K kzero(0);
    if (e >= prec)
      throw std::out_of_range("ZSer::coeff: exponent beyond precision");
    if (e < lead || e >= lead + static_cast<long>(c.size())) return kzero;
    return c[static_cast<size_t>(e - lead)];
  }

  void normalize() {
    size_t b = 0;
    while (b < c.size() && is_zero(c[b])) ++b;
    if (b > 0) {
      c.erase(c.begin(), c.begin() + static_cast<long>(b));
      lead += static_cast<long>(b);
    }
    if (lead + static_cast<long>(c.size()) > prec)
      c.resize(static_cast<size_t>(std::max<long>(0, prec - lead)));
    while (!c.empty() && is_zero(c.back())) c.pop_back();
    if (c.empty()) lead = 0;
  }

  ZSer truncated(long p) const {
    ZSer r = *this;
    r.prec = std::min(prec, p);
    r.normalize();
    return r;
  }
};

namespace zdetail {
inline long clamp_prec(long p) { return std::min(p, kZPrecExact); }
}  // namespace zdetail

template <typename K>
bool is_zero(const ZSer<K>& a) {
  return a.c.empty();
}

template <typename K>
ZSer<K> operator+(const ZSer<K>& a, const ZSer<K>& b) {
  ZSer<K> r;
  r.prec = std::min(a.prec, b.prec);
  if (a.c.empty() && b.c.empty()) return r;
  long lo = std::min(a.c.empty() ? b.lead : a.lead,
                     b.c.empty() ? a.lead : b.lead);
  long hi = std::min(
      r.prec, std::max(a.lead + static_cast<long>(a.c.size()),
                       b.lead + static_cast<long>(b.c.size())));
  if (hi <= lo) return r;
  r.lead = lo;
  r.c.assign(static_cast<size_t>(hi - lo), K(0));
  for (size_t i = 0; i < a.c.size(); ++i) {
    long e = a.lead + static_cast<long>(i);
    if (e >= lo && e < hi) r.c[static_cast<size_t>(e - lo)] = a.c[i];
  }
  for (size_t i = 0; i < b.c.size(); ++i) {
    long e = b.lead + static_cast<long>(i);
    if (e >= lo && e < hi)
      r.c[static_cast<size_t>(e - lo)] =
          r.c[static_cast<size_t>(e - lo)] + b.c[i];
  }
  r.normalize();
  return r;
}

template <typename K>
ZSer<K> operator-(const ZSer<K>& a) {
  ZSer<K> r = a;
  for (auto& k : r.c) k = K(0) - k;
  return r;
}

template <typename K>
ZSer<K> operator-(const ZSer<K>& a, const ZSer<K>& b) {
  return a + (-b);
}

template <typename K>
ZSer<K> operator*(const ZSer<K>& a, const ZSer<K>& b) {
  ZSer<K> r;
  long va = a.valuation(), vb = b.valuation();
  long pa = a.prec >= kZPrecExact ? kZPrecExact : a.prec + vb;
  long pb = b.prec >= kZPrecExact ? kZPrecExact : b.prec + va;
  r.prec = zdetail::clamp_prec(std::min(pa, pb));
  if (a.c.empty() || b.c.empty()) return r;
  r.lead = a.lead + b.lead;
  long len = std::min(static_cast<long>(a.c.size() + b.c.size()) - 1,
                      r.prec - r.lead);
  if (len <= 0) {
    r.c.clear();
    r.lead = 0;
    return r;
  }
  r.c.assign(static_cast<size_t>(len), K(0));
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (is_zero(a.c[i])) continue;
    for (size_t j = 0; j < b.c.size(); ++j) {
      if (static_cast<long>(i + j) >= len) break;
      r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
    }
  }
  r.normalize();
  return r;
}

template <typename K>
ZSer<K> z_inverse(const ZSer<K>& a) {
  if (a.c.empty()) throw std::domain_error("z_inverse: zero series");
  long m = a.prec - a.lead;  // count of known relative coefficients
  if (m <= 0 && a.prec < kZPrecExact)
    throw std::domain_error("z_inverse: no known coefficients");
  long len = (a.prec >= kZPrecExact)
                 ? static_cast<long>(a.c.size())
                 : std::min<long>(m, std::max<long>(
                                         static_cast<long>(a.c.size()), m));
  // Relative coefficient array u with u[0] invertible.
  std::vector<K> u(static_cast<size_t>(std::max<long>(
                       len, static_cast<long>(a.c.size()))),
                   K(0));
  for (size_t i = 0; i < a.c.size(); ++i) u[i] = a.c[i];
  // For an exact series the inverse is generally infinite; cap at the
  // stored length (callers combine with finite-precision data anyway);
  // mark the result precision accordingly.
  long out_len = (a.prec >= kZPrecExact) ? static_cast<long>(u.size()) : m;
  std::vector<K> w(static_cast<size_t>(out_len), K(0));
  w[0] = K(1) / u[0];
  for (long j = 1; j < out_len; ++j) {
    K s(0);
    for (long i = 1; i <= j; ++i) {
      if (i < static_cast<long>(u.size()))
        s = s + u[static_cast<size_t>(i)] * w[static_cast<size_t>(j - i)];
    }
    w[static_cast<size_t>(j)] = (K(0) - s) / u[0];
  }
  ZSer<K> r;
  r.lead = -a.lead;
  r.c = std::move(w);
  if (a.prec >= kZPrecExact && a.c.size() == 1)
    r.prec = kZPrecExact;  // exact monomial: exact inverse
  else
    r.prec = zdetail::clamp_prec(
        (a.prec >= kZPrecExact ? a.lead + out_len : a.prec) - 2 * a.lead);
  r.normalize();
  return r;
}

template <typename K>
ZSer<K> operator/(const ZSer<K>& a, const ZSer<K>& b) {
  return a * z_inverse(b);
}

template <typename K>
bool operator==(const ZSer<K>& a, const ZSer<K>& b) {
  ZSer<K> d = a - b;
  return d.c.empty();
}
template <typename K>
bool operator!=(const ZSer<K>& a, const ZSer<K>& b) {
  return !(a == b);
}

template <typename K>
ZSer<K> field_pow(const ZSer<K>& a, long e) {
  if (e == 0) return ZSer<K>(1);
  ZSer<K> base = e > 0 ? a : z_inverse(a);
  long n = e > 0 ? e : -e;
  ZSer<K> acc(1);
  while (n > 0) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

// Map the coefficients through fn (K -> K2), preserving shape.
template <typename K2, typename K, typename Fn>
ZSer<K2> z_map(const ZSer<K>& a, Fn&& fn) {
  ZSer<K2> r;
  r.lead = a.lead;
  r.prec = a.prec;
  r.c.reserve(a.c.size());
  for (const K& k : a.c) r.c.push_back(fn(k));
  r.normalize();
  return r;
}

}  // namespace qdelab
