"""Forces on a relativistic fluid element.

A charged particle at rest in a uniform electric field accelerates along E,
a moving charge feels q v x B, and a neutral element in a uniform field
feels nothing even though the medium is nonlinear.
"""
import numpy as np

from nledlab import forms
from nledlab.fluid import FluidState, acceleration, force_terms
from nledlab.nled import LagrangianModel

bi = LagrangianModel.born_infeld(0.8)
zero_grad = forms.KForm(2, np.zeros((4, 6)))

F = forms.two_form_from_eb([0.2, 0.0, 0.0], [0.0, 0.0, 0.0])
charged = FluidState(rho_m=1.0, rho_e=1.0)
print("charge at rest, E along x: a^mu =", np.round(acceleration(bi, F, zero_grad, charged), 6))

F = forms.two_form_from_eb([0.0, 0.0, 0.0], [0.0, 0.5, 0.0])
moving = FluidState(rho_m=1.0, rho_e=1.0, u=0.3)
P = force_terms(bi, F, zero_grad, moving).P_total.comps
print("charge moving along z, B along y: force 1-form =", np.round(P, 6),
      " expected gamma q (v x B)_x =",
      round(float(np.cross([0, 0, 0.3], [0, 0.5, 0])[0] / np.sqrt(1 - 0.09)), 6))

F = forms.two_form_from_eb([0.3, 0.1, 0.0], [0.0, 0.6, 0.2])
neutral = FluidState(rho_m=1.0, u=0.4)
print("neutral fluid in uniform fields: force =", force_terms(bi, F, zero_grad, neutral).P_total.comps)
