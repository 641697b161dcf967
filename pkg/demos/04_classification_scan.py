"""
Stable, yet reducible mod every prime
=====================================

Scan shifts in each family and list the polynomials whose iterates stay
irreducible over Q but eventually split modulo every prime.
"""

from pcfquad import Family, PCFForm, classify_theorem_1_1, empirical_modp_check, scan, verdicts_to_csv

for fam in Family:
    hits = [v for v in scan(fam, -60, 60) if v.qualifies]
    print(fam.value, [(v.form.shift, v.special.form_index, v.special.b, v.N) for v in hits])

print(verdicts_to_csv(scan(Family.F, -10, 0)))

# Evidence mod p: every iterate from N on splits at every prime up to 200.
v = classify_theorem_1_1(PCFForm(Family.G, 4))
rep = empirical_modp_check(v.f, 200, v.N, v.N + 1)
print(v.f, "N =", v.N, "reducible everywhere:", rep.reducible_everywhere)

# The three shifts that hinge on a conjecture.
for m in (9, 9801, 332929):
    v = classify_theorem_1_1(PCFForm(Family.G, -m * m))
    print(m, v.reason.value, "conjecture-dependent:", v.conjecture_dependent)
