"""Combinatorial types: involutions, domain labelings, boundary words.

Enumerates the interior types for small p, runs the worked 2p = 16 labeling
example both ways, and prints the boundary words m_theta, m^(0), m^(pi)
with their first-repeat positions for every boundary type with k = 4.
"""

from nodalkit.comb_type import (InteriorType, boundary_words, catalan,
                                enumerate_boundary, enumerate_interior,
                                first_repeat, labeling_from_type,
                                rotating_limit_check, shift_invariant_types,
                                type_from_labeling)

print("interior type counts (Catalan):",
      [len(enumerate_interior(p)) for p in range(1, 9)])
print("shift-invariant types: p=1 ->", len(shift_invariant_types(1)),
      "; p=2..8 ->", [len(shift_invariant_types(p)) for p in range(2, 9)])

tau = (3, 2, 1, 0, 9, 8, 7, 6, 5, 4, 15, 12, 11, 14, 13, 10)
t = InteriorType(8, tau)
lab = labeling_from_type(t)
print("\np=8 worked example")
print("  tau  =", " ".join(map(str, tau)))
print("  delta =", " ".join(map(str, lab.delta)))
print("  inverse recovers tau:", type_from_labeling(lab).tau == tau)

print("\nboundary types, k=4 (%d of them):" % len(enumerate_boundary(4)))
for bt in enumerate_boundary(4):
    m_theta, m_zero, m_pi = boundary_words(bt)
    rep = rotating_limit_check(bt)
    print("  a=%d  m_theta=%s  m0=%s  mpi=%s  repeats (%d, %d)  %s"
          % (bt.a,
             "".join(map(str, m_theta.letters)),
             "".join(map(str, m_zero.letters)),
             "".join(map(str, m_pi.letters)),
             rep.scan_zero, rep.scan_pi,
             "distinct" if rep.passed else "NOT distinct"))
print("\nthe two-position shift between the limit words is what rules out a")
print("rotating family with constant combinatorial type at the boundary.")
