// Throwaway smoke test used during bring-up; superseded by the Catch2 suite.
#include <qdelab/stab.hpp>
#include <qdelab/walls.hpp>

#include <cassert>
#include <iostream>

using namespace qdelab;

int main() {
  // --- scalar layer ---
  {
    KQ a = qpow(1) + KQ(1);
    KQ b = qpow(1) - KQ(1);
    KQ prod = a * b;
    assert(prod == qpow(2) - KQ(1));
    Rational half(1, 2);
    assert(rat_floor_long(half) == 0);
    assert(rat_floor_long(Rational(-1, 2)) == -1);
  }

  // --- params ---
  ParamSpec ps = draw_params(42, 0);
  std::cerr << "draw: t1h=" << rat_str(ps.t1h) << " t2h=" << rat_str(ps.t2h)
            << "\n";
  EvalPlain ev(ps);

  // --- walls ---
  {
    auto w = walls_in_window(3, Rational(-1, 6));
    assert(w.size() == 4);
    assert(w[0] == Rational(-1) && w[1] == Rational(-2, 3) &&
           w[2] == Rational(-1, 2) && w[3] == Rational(-1, 3));
  }

  // --- trees on (4,3,1) ---
  {
    Partition lam{4, 3, 1};
    auto trees = enumerate_trees(lam);
    assert(trees.size() == 4);
    int kap[5] = {0, 0, 0, 0, 0};
    for (auto& t : trees) kap[t.kappa]++;
    assert(kap[0] == 1 && kap[1] == 2 && kap[2] == 1);
  }

  // --- stable envelope: n=1 diagonal ---
  {
    Partition lam{1};
    StabSum s = build_stab_sum(lam, Rational(-1, 6), Pol::Std);
    auto phis = phi_values(lam, ev);
    Rational d = stab_restrict(s, lam, ev);
    Rational t2 = ev.to_rational(ev.mono(0, 2, 0));
    Rational oracle = Rational(1) - t2;
    std::cerr << "n=1 diag = " << rat_str(d) << " oracle " << rat_str(oracle)
              << "\n";
    assert(d == oracle);
    Rational d2 = diagonal_oracle(lam, Pol::Std, ev);
    assert(d == d2);
  }

  // --- n=2, lambda=(2) diagonal vs oracle ---
  {
    Partition lam{2};
    StabSum s = build_stab_sum(lam, Rational(-1, 6), Pol::Std);
    Rational d = stab_restrict(s, lam, ev);
    Rational t1 = ev.to_rational(ev.mono(2, 0, 0));
    Rational t2 = ev.to_rational(ev.mono(0, 2, 0));
    Rational oracle = t2 * (Rational(1) - t2) * (Rational(1) - t2 / t1);
    std::cerr << "n=2 (2) diag = " << rat_str(d) << " oracle "
              << rat_str(oracle) << "\n";
    assert(d == oracle);
    assert(d == diagonal_oracle(lam, Pol::Std, ev));
  }

  // --- n=2 both partitions, both polarizations, diagonal ---
  for (auto& lam : partitions_of(2)) {
    for (Pol pol : {Pol::Std, Pol::Opp}) {
      StabSum s = build_stab_sum(lam, Rational(-1, 6), pol);
      Rational d = stab_restrict(s, lam, ev);
      Rational o = diagonal_oracle(lam, pol, ev);
      if (d != o) {
        std::cerr << "MISMATCH " << part_str(lam) << " pol "
                  << (pol == Pol::Std ? "std" : "opp") << ": " << rat_str(d)
                  << " vs " << rat_str(o) << "\n";
        return 1;
      }
    }
  }

  // --- n=3: all partitions, diagonal + triangularity ---
  for (auto& lam : partitions_of(3)) {
    StabSum s = build_stab_sum(lam, Rational(-1, 6), Pol::Std);
    for (auto& mu : partitions_of(3)) {
      Rational r = stab_restrict(s, mu, ev);
      if (lam == mu) {
        Rational o = diagonal_oracle(lam, Pol::Std, ev);
        if (r != o) {
          std::cerr << "diag MISMATCH at " << part_str(lam) << "\n";
          return 1;
        }
      }
      if (!dominates(mu, lam) && !rat_is_zero(r)) {
        std::cerr << "support violation: stab(" << part_str(lam) << ")|_"
                  << part_str(mu) << " != 0\n";
        return 1;
      }
    }
  }

  std::cerr << "smoke OK\n";
  return 0;
}
