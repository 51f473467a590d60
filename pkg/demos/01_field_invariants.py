"""Field invariants of a Minkowski 2-form.

Build F from electric and magnetic 3-vectors, then read off the two Lorentz
invariants X = *(F ^ *F) and Y = *(F ^ F).  A boost mixes e and b but leaves
both invariants alone, which this script checks numerically.
"""
import numpy as np

from nledlab import forms

e = np.array([0.3, -1.2, 0.5])
b = np.array([0.8, 0.1, -0.4])
F = forms.two_form_from_eb(e, b)

print("components (tx, ty, tz, xy, xz, yz):", F.comps)
print(f"X = {forms.invariant_X(F):+.6f}   |e|^2 - |b|^2 = {e @ e - b @ b:+.6f}")
print(f"Y = {forms.invariant_Y(F):+.6f}   2 e.b         = {2 * e @ b:+.6f}")

# Boost along z with rapidity 0.7: transform the antisymmetric tensor F_ab.
phi = 0.7
Lam = np.eye(4)
Lam[0, 0] = Lam[3, 3] = np.cosh(phi)
Lam[0, 3] = Lam[3, 0] = -np.sinh(phi)
pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
T = np.zeros((4, 4))
for c, (i, j) in zip(F.comps, pairs):
    T[i, j], T[j, i] = c, -c
Tb = Lam.T @ T @ Lam
Fb = forms.KForm(2, np.array([Tb[i, j] for i, j in pairs]))
e2, b2 = forms.eb_from_two_form(Fb)
print("\nboosted e:", np.round(e2, 6), " boosted b:", np.round(b2, 6))
print(f"X after boost = {forms.invariant_X(Fb):+.6f}")
print(f"Y after boost = {forms.invariant_Y(Fb):+.6f}")
