#pragma once
// Young-diagram data for Hilb^n fixed points: boxes, tautological weights,
// the exact attracting order rho, torus weight classes (tangent space,
// half-tangent polarizations), and the diagonal-restriction oracle.
//
// Conventions (fixed once, used everywhere):
//   box = (row, col), 1-based; the corner is (1,1); boxes listed row-major.
//   tautological weight of a box: phi = t1^{col-1} t2^{row-1}.
//   content c = row - col; hook coordinate h = row + col - 2.
//   chamber: attracting <=> negative power of a, where t1 = a hbar^{1/2},
//   t2 = hbar^{1/2}/a; the a-exponent of t1^i t2^j is i - j.
//   rho of a box is the pair (c, -h/2), ordered lexicographically; we store
//   it as integers (c, -h) with the second entry in half-units.

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qdelab/params.hpp"
#include "qdelab/partitions.hpp"
#include "qdelab/rational.hpp"

namespace qdelab {

struct Box {
  int row, col;  // 1-based
  bool operator==(const Box& o) const { return row == o.row && col == o.col; }
};

inline std::vector<Box> boxes_of(const Partition& lam) {
  std::vector<Box> bs;
  for (int r = 0; r < static_cast<int>(lam.size()); ++r)
    for (int c = 0; c < lam[r]; ++c) bs.push_back({r + 1, c + 1});
  return bs;
}

inline int box_index(const Partition& lam, int row, int col) {
  int idx = 0;
  for (int r = 1; r < row; ++r) idx += lam[r - 1];
  return idx + (col - 1);
}

inline bool in_diagram(const Partition& lam, int row, int col) {
  return row >= 1 && col >= 1 && row <= static_cast<int>(lam.size()) &&
         col <= lam[row - 1];
}

inline int content_of(const Box& b) { return b.row - b.col; }
inline int hookcoord_of(const Box& b) { return b.row + b.col - 2; }

// Half-exponents (a, b) meaning t1^{a/2} t2^{b/2} of the tautological weight.
inline std::pair<long, long> phi_halves(const Box& b) {
  return {2L * (b.col - 1), 2L * (b.row - 1)};
}

// Exact attracting-order key: (content, -hook/2), lexicographic.
struct Rho {
  long main;  // content
  long eps;   // -hook, in half-units
  bool operator<(const Rho& o) const {
    return main != o.main ? main < o.main : eps < o.eps;
  }
  bool operator==(const Rho& o) const { return main == o.main && eps == o.eps; }
  bool operator<=(const Rho& o) const { return *this < o || *this == o; }
  Rho plus_one() const { return {main + 1, eps}; }
};

inline Rho rho_of(const Box& b) { return {content_of(b), -hookcoord_of(b)}; }

// --- Torus weight classes ---------------------------------------------------
// A virtual T-weight multiset: map from half-exponents (a, b) of t1^{a/2}
// t2^{b/2} to an integer multiplicity. Entries with multiplicity 0 are erased.

struct WeightClass {
  std::map<std::pair<long, long>, long> m;

  void add(long a, long b, long mult) {
    if (mult == 0) return;
    auto key = std::make_pair(a, b);
    auto it = m.find(key);
    if (it == m.end())
      m.emplace(key, mult);
    else {
      it->second += mult;
      if (it->second == 0) m.erase(it);
    }
  }
  void add_class(const WeightClass& o, long scale = 1) {
    for (auto& [k, v] : o.m) add(k.first, k.second, v * scale);
  }
  // Dual: invert every weight.
  WeightClass dual() const {
    WeightClass d;
    for (auto& [k, v] : m) d.add(-k.first, -k.second, v);
    return d;
  }
  // Multiply every weight by t1^{da/2} t2^{db/2}.
  WeightClass shifted(long da, long db) const {
    WeightClass s;
    for (auto& [k, v] : m) s.add(k.first + da, k.second + db, v);
    return s;
  }
  // Determinant: sum of half-exponents weighted by multiplicity.
  std::pair<long, long> det_halves() const {
    long a = 0, b = 0;
    for (auto& [k, v] : m) {
      a += k.first * v;
      b += k.second * v;
    }
    return {a, b};
  }
  // Drop the zero weight (trivial T-character).
  WeightClass nonzero_part() const {
    WeightClass s = *this;
    s.m.erase({0, 0});
    return s;
  }
  long rank() const {
    long r = 0;
    for (auto& [k, v] : m) r += v;
    return r;
  }
};

// a-exponent sign of a weight in half-units: sign of (a - b).
inline int a_sign(const std::pair<long, long>& halves) {
  long d = halves.first - halves.second;
  return d > 0 ? 1 : d < 0 ? -1 : 0;
}

enum class Pol { Std, Opp };

// Restriction of the standard half-tangent polarization at lambda:
// T^{1/2} = t2^{-1} V^* V + V - V^* V,   V = sum of tautological weights.
inline WeightClass t12_std_at(const Partition& lam) {
  auto bs = boxes_of(lam);
  WeightClass w;
  for (const Box& p : bs)
    for (const Box& q : bs) {
      auto [pa, pb] = phi_halves(p);
      auto [qa, qb] = phi_halves(q);
      // phi_q / phi_p * t2^{-1}
      w.add(qa - pa, qb - pb - 2, 1);
      // - phi_q / phi_p
      w.add(qa - pa, qb - pb, -1);
    }
  for (const Box& p : bs) {
    auto [pa, pb] = phi_halves(p);
    w.add(pa, pb, 1);
  }
  return w;
}

// T^{1/2}_opp = hbar^{-1} (T^{1/2})^*.
inline WeightClass t12_at(const Partition& lam, Pol pol) {
  WeightClass std_part = t12_std_at(lam);
  if (pol == Pol::Std) return std_part;
  return std_part.dual().shifted(-2, -2);
}

// Full tangent space: TX = T^{1/2} + hbar^{-1} (T^{1/2})^*  (pol-independent).
inline WeightClass tangent_at(const Partition& lam) {
  WeightClass t = t12_std_at(lam);
  t.add_class(t.dual().shifted(-2, -2));
  return t;
}

// Repelling part (positive a-exponent) of the tangent space.
inline WeightClass repelling_part(const Partition& lam) {
  WeightClass tx = tangent_at(lam);
  WeightClass rep;
  for (auto& [k, v] : tx.m) {
    int s = a_sign(k);
    if (s == 0)
      throw std::logic_error("tangent space has an a-fixed weight");
    if (s > 0) rep.add(k.first, k.second, v);
  }
  return rep;
}

// Diagonal axiom oracle, independent of the tree formula:
//   (det N^- / det T^{1/2}_{!=0})^{1/2} * prod_{w in N^-} (1 - w^{-1}).
template <class Eval>
typename Eval::Field diagonal_oracle(const Partition& lam, Pol pol,
                                     const Eval& ev) {
  using F = typename Eval::Field;
  WeightClass nrep = repelling_part(lam);
  WeightClass t12nz = t12_at(lam, pol).nonzero_part();
  auto [na, nb] = nrep.det_halves();
  auto [ta, tb] = t12nz.det_halves();
  F pref = ev.mono((na - ta) / 2 * 1, (nb - tb) / 2 * 1, 0);
  if ((na - ta) % 2 != 0 || (nb - tb) % 2 != 0) {
    // Half-integer half-exponents cannot occur: weights of TX and T^{1/2}
    // are integer monomials in t1, t2, so the parity above is even.
    throw std::logic_error("diagonal_oracle: odd det parity");
  }
  F val = pref;
  for (auto& [k, v] : nrep.m) {
    if (v <= 0) throw std::logic_error("diagonal_oracle: virtual N^-");
    F factor = F(1) - ev.mono(-k.first, -k.second, 0);
    for (long i = 0; i < v; ++i) val = val * factor;
  }
  return val;
}

// Lambda^bullet of a weight class: prod (1 - w)^{mult}; negative analytic
// multiplicities divide. Throws if a negative-part factor vanishes.
template <class Eval>
typename Eval::Field lambda_bullet(const WeightClass& wc, const Eval& ev) {
  using F = typename Eval::Field;
  F num(1), den(1);
  for (auto& [k, v] : wc.m) {
    F factor = F(1) - ev.mono(k.first, k.second, 0);
    if (v > 0)
      for (long i = 0; i < v; ++i) num = num * factor;
    else {
      if (is_zero(factor))
        throw std::domain_error("lambda_bullet: vanishing negative factor");
      for (long i = 0; i < -v; ++i) den = den * factor;
    }
  }
  return num / den;
}

// Lambda^bullet of the dual class (all weights inverted).
template <class Eval>
typename Eval::Field lambda_bullet_dual(const WeightClass& wc, const Eval& ev) {
  return lambda_bullet(wc.dual(), ev);
}

// --- Polarization bookkeeping ------------------------------------------------

struct PolarizationData {
  Pol pol;
  // x-exponents d^lam_a of det of the rho>0 part of T^{1/2} (per box).
  std::vector<long> d;
  // det T^{1/2} of the unrestricted polarization, as x-exponents (same for
  // every box) plus a t-monomial in half-exponents.
  long det_x_exp;           // +1 (Std) or -1 (Opp) on every Chern root
  long det_t_a, det_t_b;    // half-exponents of the t-part
};

// rho > 0 on a restricted weight: attracting (a-exp < 0), or a-fixed with a
// negative power of hbar.
inline bool rho_positive(long fa, long fb) {
  // full exponents (i, j) of t1^i t2^j
  long d = fa - fb;
  if (d != 0) return d < 0;
  return fa + fb < 0;
}

inline PolarizationData polarization_data(const Partition& lam, Pol pol) {
  auto bs = boxes_of(lam);
  int n = static_cast<int>(bs.size());
  PolarizationData pd;
  pd.pol = pol;
  pd.d.assign(n, 0);
  // Walk the terms of the polarization written in the tautological bundle;
  // each term carries x-monomial data (which Chern roots appear) plus a
  // t-weight after restriction.
  auto full = [](const Box& b) {
    return std::make_pair(static_cast<long>(b.col - 1),
                          static_cast<long>(b.row - 1));
  };
  if (pol == Pol::Std) {
    // t2^{-1} V^* V: weight t2^{-1} phi_b / phi_a, x-monomial x_b / x_a
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        auto [ia, ja] = full(bs[a]);
        auto [ib, jb] = full(bs[b]);
        if (rho_positive(ib - ia, jb - ja - 1)) {
          pd.d[b] += 1;
          pd.d[a] -= 1;
        }
        // - V^* V: weight phi_b / phi_a
        if (rho_positive(ib - ia, jb - ja)) {
          pd.d[b] -= 1;
          pd.d[a] += 1;
        }
      }
    // V: weight phi_a, x-monomial x_a
    for (int a = 0; a < n; ++a) {
      auto [ia, ja] = full(bs[a]);
      if (rho_positive(ia, ja)) pd.d[a] += 1;
    }
    pd.det_x_exp = 1;
    pd.det_t_a = 0;
    pd.det_t_b = -2L * n * n;
  } else {
    // t1^{-1} V V^*: weight t1^{-1} phi_a / phi_b, x-monomial x_a / x_b
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        auto [ia, ja] = full(bs[a]);
        auto [ib, jb] = full(bs[b]);
        if (rho_positive(ia - ib - 1, ja - jb)) {
          pd.d[a] += 1;
          pd.d[b] -= 1;
        }
        // - hbar^{-1} V V^*: weight hbar^{-1} phi_a / phi_b
        if (rho_positive(ia - ib - 1, ja - jb - 1)) {
          pd.d[a] -= 1;
          pd.d[b] += 1;
        }
      }
    // hbar^{-1} V^*: weight hbar^{-1} phi_a^{-1}, x-monomial x_a^{-1}
    for (int a = 0; a < n; ++a) {
      auto [ia, ja] = full(bs[a]);
      if (rho_positive(-ia - 1, -ja - 1)) pd.d[a] -= 1;
    }
    pd.det_x_exp = -1;
    pd.det_t_a = -2L * n;
    pd.det_t_b = 2L * n * (n - 1);
  }
  return pd;
}

}  // namespace qdelab
