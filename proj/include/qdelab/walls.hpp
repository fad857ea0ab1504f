#pragma once
// Walls and alcoves for the slope parameter. Walls at level n are the
// rationals with denominator at most n; an alcove is a connected component
// of the complement.

#include <set>
#include <stdexcept>
#include <vector>

#include "qdelab/rational.hpp"

namespace qdelab {

struct SlopeOnWall : std::domain_error {
  explicit SlopeOnWall(const std::string& what) : std::domain_error(what) {}
};

inline bool on_wall(int n, const Rational& s) {
  return rat_den(s) <= n;
}

inline void require_off_wall(int n, const Rational& s) {
  if (on_wall(n, s))
    throw SlopeOnWall("slope " + rat_str(s) + " lies on a wall for n=" +
                      std::to_string(n));
}

// Walls in the window [s-1, s), ascending.
inline std::vector<Rational> walls_in_window(int n, const Rational& s) {
  require_off_wall(n, s);
  std::set<Rational> acc;
  Rational lo = s - 1;
  for (int q = 1; q <= n; ++q) {
    // p/q in [lo, s): p from ceil(lo*q) to ceil(s*q)-1
    Rational loq = lo * q, hiq = s * q;
    long pmin = -rat_floor_long(-loq);  // ceil
    long pmax = rat_floor_long(hiq);
    for (long p = pmin; p <= pmax; ++p) {
      Rational w(p, q);
      w.canonicalize();
      if (w >= lo && w < s) acc.insert(w);
    }
  }
  return std::vector<Rational>(acc.begin(), acc.end());
}

// The wall w written as (d, m) with w = m/d, d >= 1, gcd(d, m) = 1.
inline std::pair<long, long> wall_frac(const Rational& w) {
  if (!w.get_den().fits_slong_p() || !w.get_num().fits_slong_p())
    throw std::overflow_error("wall_frac: wall out of range");
  return {w.get_den().get_si(), w.get_num().get_si()};
}

}  // namespace qdelab
