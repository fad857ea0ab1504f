#pragma once

// Finite q-Pochhammer symbols over the q-carrying scalar field.
//
//   poch(x, d) = prod_{i=0}^{d-1} (1 - x q^i)          for d >= 0,
//   poch(x, d) = prod_{i=d}^{-1} (1 - x q^i)^{-1}      for d < 0,
//
// with q = Q^2.  A vanishing factor in the d < 0 case (or a vanishing
// numerator factor, which cannot occur at generic parameters) raises
// NonGenericParameters so callers can redraw.

#include <qdelab/params.hpp>

namespace qdelab {

inline KQ qpoch(const KQ& x, long d, const EvalQ& ev) {
  KQ r(1);
  if (d >= 0) {
    for (long i = 0; i < d; ++i) {
      KQ f = KQ(1) - x * ev.mono(0, 0, 2 * i);
      if (is_zero(f)) throw NonGenericParameters("qpoch: vanishing factor");
      r = r * f;
    }
  } else {
    for (long i = d; i < 0; ++i) {
      KQ f = KQ(1) - x * ev.mono(0, 0, 2 * i);
      if (is_zero(f))
        throw NonGenericParameters("qpoch: vanishing inverse factor");
      r = r / f;
    }
  }
  return r;
}

}  // namespace qdelab
