"""
Stability over Q and explicit factorizations
============================================

An iterate can split over Q only on a thin set of shifts. For each one we
build the factor h and multiply it back.
"""

from pcfquad import (
    Family,
    PCFForm,
    base_reducibility_check,
    exceptional_shifts,
    factor_witness,
    iterate,
    stability_verdict,
)

for fam in Family:
    shifts = exceptional_shifts(fam, 10**4)
    print(fam.value, [a for a, _ in shifts])

# The third iterate of G_a splits at a = -5, -325, -777925 (Pell pairs (1,0), (3,4)).
for a in (-5, -325, -777925):
    w = factor_witness(PCFForm(Family.G, a))
    print(a, "h =", w.h, "| reproduces g^3:", w.expand() == iterate(PCFForm(Family.G, a).polynomial(), 3))

for fam, a in [(Family.F, -4), (Family.H, -34), (Family.G, -81), (Family.H, 5), (Family.G, 0)]:
    v = stability_verdict(PCFForm(fam, a))
    print(f"{fam.value}_{a}:", v.status.value, "at", v.reducible_at)

# A rational test that decides whether f^2 splits.
for a in (-49, -48, -5):
    c = base_reducibility_check(PCFForm(Family.G, a), 1)
    print("G", a, "f^2 reducible" if c.passes else "f^2 irreducible", c)
