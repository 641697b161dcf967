"""
Squares along an orbit mod p
============================

Over F_p, whether f^n stays irreducible is read off from which orbit values
are squares. A type string records that as a word in s/n.
"""

from pcfquad import MonicQuadratic, factor, ff_stability_data, iterate_mod, type_string

f = MonicQuadratic(0, -2)          # x^2 - 2
g = MonicQuadratic(2, -1)          # (x + 1)^2 - 2
ts = type_string(g, f, 5)
print("type of g w.r.t. f at p=5:", ts, "values", ts.values)

# A polynomial whose own type is all n stays irreducible under iteration.
h = MonicQuadratic(6, 6)           # (x + 3)^2 - 3
for p in (5, 7, 11, 13):
    t = type_string(h, h, p)
    print(p, t, "irreducible mod p" if t.g_irreducible else "splits mod p")

# Compare the squareness prediction with an actual factorization.
p = 5
d = ff_stability_data(h, p)
print("stable mod 5:", d.stable, "required iterate", d.required_iterate)
for n in range(1, d.required_iterate + 2):
    print(f"  f^{n} mod 5 factor degrees", factor(iterate_mod(h, n, p)).degrees)

# A special polynomial: (x - 1)^2 + 1 has f^2 = (x-1)^4 + 1, reducible mod every prime.
s = MonicQuadratic(-2, 2)
print([(p, factor(iterate_mod(s, 2, p)).degrees) for p in (3, 5, 7, 11, 13, 17)])
