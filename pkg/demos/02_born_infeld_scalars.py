"""Born-Infeld constitutive scalars and the field bound.

For a static electric field the Born-Infeld excitation D saturates: E can
never exceed 1/kappa however large D becomes.  The Maxwell model is linear.
"""
import numpy as np

from nledlab import forms
from nledlab.nled import LagrangianModel, eval_scalars, constitutive, stress_energy

kappa = 1.0
bi = LagrangianModel.born_infeld(kappa)
mx = LagrangianModel.maxwell()

E = np.array([0.0, 0.25, 0.5, 0.9, 0.99, 0.999])
F = forms.two_form_from_eb(np.stack([E, 0 * E, 0 * E], -1), np.zeros((E.size, 3)))
X, Y = forms.invariant_X(F), forms.invariant_Y(F)
for name, model in (("maxwell", mx), ("born-infeld", bi)):
    sc = eval_scalars(model, X, Y)
    G = constitutive(model, F)
    d, _ = forms.eb_from_two_form(G)
    print(f"{name:12s} N = {np.round(sc.N, 4)}")
    print(f"{'':12s} |D| = {np.round(np.abs(d[:, 0]), 4)}")

print("\nBorn-Infeld D grows without bound as E -> 1/kappa; Maxwell has D = E.")

T = stress_energy(bi, forms.two_form_from_eb([0.5, 0, 0], [0, 0.3, 0]))
print("\nstress-energy T^{ab} for e = (0.5,0,0), b = (0,0.3,0):")
print(np.round(T, 5))
print("energy density T^{tt} =", round(float(T[0, 0]), 6))
