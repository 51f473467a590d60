"""Relativistic perfect fluid coupled to a non-linear vacuum field.

The field pushes on the fluid with minus the divergence of the field
stress-energy.  In terms of the scalars M, N and L = 2 L_Y that divergence is

    div T_field = xi + i_Jhat F

    xi    = dM + *tau^(LED)_{dN~}
    eta~  = *(dN ^ *F) + *(dL ^ F)
    Jhat  = rho_e V - eta

so the total pressure 1-form is P = -i_Jhat F - xi - dp and the fluid obeys
(rho + p) a~ = Pi_V P with Pi_V = 1 + V~ i_V.  Contracting with V gives
(rho + p) div V = -V(rho) + i_V (i_Jhat F + xi).

The sign in front of i_Jhat F is fixed by the orientation dt^dx^dy^dz and the
Hodge map of :mod:`nledlab.forms`; the tests check the identity against a
finite-difference divergence of :func:`nledlab.nled.stress_energy`.  Note that
xi = i_eta F holds pointwise for every field and gradient, so the pure
electrodynamic pressure i_eta F - xi on a neutral fluid is identically zero and
only rho_e i_V F survives.

All gradients of M, N, L are taken by the chain rule through (X, Y) using the
analytic second derivatives of the Lagrangian.  The fluid velocity is
restricted to the z axis, V = gamma (1, 0, 0, u).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import forms
from .errors import (ContractViolation, DegenerateInertia, InvalidState)
from .forms import KForm
from .nled import eval_scalars, tau_led_q

COLD_DUST = "dust"
IDEAL_GAMMA = "ideal_gamma"


@dataclass(frozen=True)
class EquationOfState:
    kind: str = COLD_DUST
    gamma: float | None = None

    def __post_init__(self):
        if self.kind not in (COLD_DUST, IDEAL_GAMMA):
            raise ContractViolation(f"unknown equation of state {self.kind!r}")
        if self.kind == IDEAL_GAMMA and not (self.gamma is not None and self.gamma > 1):
            raise ContractViolation("IdealGamma needs an adiabatic index gamma > 1")

    @classmethod
    def dust(cls):
        return cls(COLD_DUST)

    @classmethod
    def ideal(cls, gamma):
        return cls(IDEAL_GAMMA, gamma)


@dataclass(frozen=True)
class FluidState:
    rho_m: np.ndarray | float
    p: np.ndarray | float = 0.0
    rho_e: np.ndarray | float = 0.0
    u: np.ndarray | float = 0.0

    def __post_init__(self):
        rho_m = np.asarray(self.rho_m, dtype=float)
        p = np.asarray(self.p, dtype=float)
        u = np.asarray(self.u, dtype=float)
        if np.any(rho_m < 0):
            raise InvalidState("negative proper mass density")
        if np.any(p < 0):
            raise InvalidState("negative pressure")
        if np.any(np.abs(u) >= 1):
            raise InvalidState("fluid speed must be below light speed")

    @property
    def lorentz_factor(self):
        u = np.asarray(self.u, dtype=float)
        return 1.0 / np.sqrt(1.0 - u * u)

    def four_velocity(self):
        g = self.lorentz_factor
        u = np.asarray(self.u, dtype=float)
        zero = np.zeros_like(g)
        return np.stack([g, zero, zero, g * u], axis=-1)


def specific_internal_energy(eos: EquationOfState, rho_m, p):
    rho_m = np.asarray(rho_m, dtype=float)
    p = np.asarray(p, dtype=float)
    if eos.kind == COLD_DUST:
        if np.any(p != 0):
            raise InvalidState("cold dust carries no pressure")
        return np.zeros(np.broadcast(rho_m, p).shape)
    if np.any((rho_m == 0) & (p > 0)):
        raise InvalidState("pressure without matter (rho_m = 0, p > 0)")
    with np.errstate(divide="ignore", invalid="ignore"):
        e = np.where(p == 0, 0.0, p / ((eos.gamma - 1.0) * rho_m))
    return e


def energy_density(eos: EquationOfState, rho_m, p=0.0):
    """Proper mass-energy density rho = rho_m (1 + E(rho_m, p))."""
    return np.asarray(rho_m, dtype=float) * (1.0 + specific_internal_energy(eos, rho_m, p))


def tds_increment(eos: EquationOfState, a: FluidState, b: FluidState):
    """Discrete T dS = dE + p d(1/rho_m) between two nearby states (midpoint p)."""
    if eos.kind == COLD_DUST:
        raise InvalidState("cold dust has no thermodynamics")
    de = specific_internal_energy(eos, b.rho_m, b.p) - specific_internal_energy(eos, a.rho_m, a.p)
    p_mid = 0.5 * (np.asarray(a.p) + np.asarray(b.p))
    return de + p_mid * (1.0 / np.asarray(b.rho_m) - 1.0 / np.asarray(a.rho_m))


def _check_normalized(V, tol=1e-9):
    n = forms.inner(V, V)
    if np.any(np.abs(n + 1.0) > tol):
        raise ContractViolation("4-velocity is not unit timelike")


def project(V, alpha: KForm) -> KForm:
    """Pi_V alpha = alpha + V~ (i_V alpha)."""
    V = np.asarray(V, dtype=float)
    _check_normalized(V)
    return alpha + forms.lower(V) * forms.interior(V, alpha).comps[..., 0]


def u1_current(state: FluidState) -> KForm:
    """Convective current 3-form rho_e *V~."""
    V = state.four_velocity()
    return forms.hodge(forms.lower(V)) * np.asarray(state.rho_e, dtype=float)


def vector_of_three_form(omega: KForm):
    """The vector W with *W~ = omega."""
    if omega.degree != 3:
        raise ContractViolation("expected a 3-form")
    return forms.raise_index(forms.hodge(omega))


def _one_form(values):
    """A gradient argument: a KForm(1) is used as is, numbers mean d/dz only."""
    if isinstance(values, KForm):
        if values.degree != 1:
            raise ContractViolation("gradients must be 1-forms")
        return values
    values = np.asarray(values, dtype=float)
    comps = np.zeros(values.shape + (4,))
    comps[..., 3] = values
    return KForm(1, comps)


def gradient_from_tz(dF_dt: KForm, dF_dz: KForm) -> KForm:
    """Stack time and z derivatives of F into the (..., 4, 6) gradient layout."""
    zero = np.zeros_like(dF_dt.comps)
    return KForm(2, np.stack([dF_dt.comps, zero, zero, dF_dz.comps], axis=-2))


def invariant_gradients(F: KForm, gradF: KForm):
    """Partial derivatives of X and Y along each coordinate, shape (..., 4)."""
    Fb = KForm(2, F.comps[..., None, :])
    dX = 2.0 * forms.hodge(forms.wedge(gradF, forms.hodge(Fb))).comps[..., 0]
    dY = 2.0 * forms.hodge(forms.wedge(gradF, Fb)).comps[..., 0]
    return dX, dY


@dataclass(frozen=True)
class ForceTerms:
    xi: KForm
    eta: np.ndarray
    Jhat: np.ndarray
    P_total: KForm
    dM: KForm
    dN: KForm
    dL: KForm


def force_terms(model, F: KForm, gradF: KForm, state: FluidState, grad_p=0.0) -> ForceTerms:
    if F.degree != 2 or gradF.degree != 2:
        raise ContractViolation("F and its gradient must be 2-forms")
    X = forms.invariant_X(F)
    Y = forms.invariant_Y(F)
    sc = eval_scalars(model, X, Y)
    dX, dY = invariant_gradients(F, gradF)

    mx, my = sc.dM(X, Y)
    nx, ny = sc.dN()
    lx, ly = sc.dLsc()
    dM = KForm(1, mx[..., None] * dX + my[..., None] * dY)
    dN = KForm(1, nx[..., None] * dX + ny[..., None] * dY)
    dL = KForm(1, lx[..., None] * dX + ly[..., None] * dY)

    xi = dM + forms.hodge(tau_led_q(F, forms.raise_index(dN)))
    eta_form = (forms.hodge(forms.wedge(dN, forms.hodge(F)))
                + forms.hodge(forms.wedge(dL, F)))
    eta = forms.raise_index(eta_form)
    Jhat = vector_of_three_form(u1_current(state)) - eta
    P_total = -forms.interior(Jhat, F) - xi - _one_form(grad_p)
    return ForceTerms(xi=xi, eta=eta, Jhat=Jhat, P_total=P_total, dM=dM, dN=dN, dL=dL)


def _inertia(eos, state):
    w = energy_density(eos, state.rho_m, state.p) + np.asarray(state.p, dtype=float)
    if np.any(w <= 0):
        raise DegenerateInertia("rho + p = 0: no inertia to accelerate")
    return w


def eom_rhs(model, F, gradF, state: FluidState, grad_p=0.0, eos=EquationOfState()) -> KForm:
    """(rho + p) times the 4-acceleration 1-form, Pi_V P."""
    _inertia(eos, state)
    ft = force_terms(model, F, gradF, state, grad_p)
    return project(state.four_velocity(), ft.P_total)


def acceleration(model, F, gradF, state, grad_p=0.0, eos=EquationOfState()):
    """Contravariant 4-acceleration a^mu."""
    w = _inertia(eos, state)
    f = eom_rhs(model, F, gradF, state, grad_p, eos)
    return forms.raise_index(f) / w[..., None]


def continuity_rhs(model, F, gradF, state: FluidState, grad_rho=0.0,
                   eos=EquationOfState()):
    """(rho + p) div V = -V(rho) + i_V (i_Jhat F + xi).

    ``grad_rho`` is a 1-form of partial derivatives of rho; a plain number is
    read as d rho/dz.
    """
    _inertia(eos, state)
    V = state.four_velocity()
    ft = force_terms(model, F, gradF, state)
    div_t = forms.interior(ft.Jhat, F) + ft.xi
    v_rho = forms.interior(V, _one_form(grad_rho)).comps[..., 0]
    return -v_rho + forms.interior(V, div_t).comps[..., 0]
