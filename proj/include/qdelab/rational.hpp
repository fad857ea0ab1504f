#pragma once
// Exact rational arithmetic built on GMP, plus the few helpers the rest of
// the library needs: "p/q" parsing/printing, integer powers, exact floor,
// and a reproducible RNG that does not depend on std distribution internals.

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace qdelab {

using Rational = mpq_class;

inline Rational rat_parse(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("rat_parse: empty string");
  Rational r;
  if (r.set_str(s, 10) != 0)
    throw std::invalid_argument("rat_parse: bad rational '" + s + "'");
  r.canonicalize();
  return r;
}

inline std::string rat_str(const Rational& r) { return r.get_str(); }

inline bool rat_is_zero(const Rational& r) { return sgn(r) == 0; }

// r^e for any integer e (e < 0 requires r != 0).
inline Rational rat_pow(const Rational& r, long e) {
  if (e == 0) return Rational(1);
  if (rat_is_zero(r)) {
    if (e < 0) throw std::domain_error("rat_pow: 0 to negative power");
    return Rational(0);
  }
  Rational base = e > 0 ? r : Rational(1) / r;
  unsigned long k = static_cast<unsigned long>(e > 0 ? e : -e);
  Rational acc(1);
  while (k) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return acc;
}

// Exact floor of a rational.
inline Rational rat_floor(const Rational& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return Rational(q);
}

inline long rat_floor_long(const Rational& r) {
  Rational f = rat_floor(r);
  if (!f.get_num().fits_slong_p())
    throw std::overflow_error("rat_floor_long: out of range");
  return f.get_num().get_si();
}

// Denominator of the canonical form (always positive).
inline mpz_class rat_den(const Rational& r) { return r.get_den(); }

// Deterministic RNG: mt19937_64 with explicit rejection sampling so the
// stream of values is identical across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform in [0, bound).
  std::uint64_t next(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::next: bound 0");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
      v = gen_();
    } while (v >= limit);
    return v % bound;
  }

  // Uniform in [lo, hi] inclusive.
  long range(long lo, long hi) {
    if (hi < lo) throw std::invalid_argument("Rng::range: empty range");
    return lo + static_cast<long>(next(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace qdelab
