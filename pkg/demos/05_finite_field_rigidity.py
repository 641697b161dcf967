"""
Rigidity over finite fields
===========================

Over F_p a single iterate decides stability. We check that across every
monic quadratic for small primes, comparing the orbit criterion with a
factorization oracle.
"""

from collections import Counter

from pcfquad import MonicQuadratic, ff_stability_data, rigidity_sweep

rep = rigidity_sweep(41)
print(rep.checked, "quadratics,", len(rep.counterexamples), "counterexamples,", rep.undecided, "beyond oracle reach")

# How often is a quadratic stable mod p, and which iterate decides it?
for p in (7, 11, 13):
    data = [ff_stability_data(MonicQuadratic(b, c), p) for b in range(p) for c in range(p)]
    stable = sum(d.stable for d in data)
    print(p, f"stable {stable}/{p * p}", "required iterates", dict(sorted(Counter(d.required_iterate for d in data).items())))
