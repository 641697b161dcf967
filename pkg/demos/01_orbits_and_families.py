"""
Critical orbits of monic integer quadratics
===========================================

Every monic quadratic with a finite critical orbit is one of three shapes,
F_a, G_a or H_a. Here we find them by brute force and check the shapes.
"""

from pcfquad import Family, MonicQuadratic, NotPCF, PCFForm, critical_orbit, detect_pcf_form, iterate

# x^2 - 2: critical point 0 lands on -2, then sits on the fixed point 2.
f = MonicQuadratic(0, -2)
o = critical_orbit(f)
print(f, "orbit", o.orbit, "o_f", o.o_f, "t_f", o.t_f)

# Search a grid of coefficients and collect the finite orbits.
finite = []
for lin in range(-12, 13):
    for con in range(-40, 41):
        g = MonicQuadratic(lin, con)
        if not isinstance(critical_orbit(g), NotPCF):
            finite.append(g)
print(len(finite), "PCF quadratics on the grid")

# Each one should land in a family, with the family's orbit shape.
shapes = {Family.F: (1, 0), Family.G: (2, 0), Family.H: (2, 1)}
for g in finite:
    form = detect_pcf_form(g)
    orb = critical_orbit(g)
    assert (orb.o_f, orb.t_f) == shapes[form.family]
print("all match their family's (o_f, t_f)")

# Escapes come with a certificate.
print(critical_orbit(MonicQuadratic(0, 1)))

# Iterates are exact; degrees double each time.
g = PCFForm(Family.G, 1).polynomial()
for n in range(1, 4):
    print(n, iterate(g, n))
