"""Lagrangian models L(X, Y), the constitutive map F -> G and the stress-energy tensor.

Two models ship: Maxwell, with L = (eps0/2) X so that G = eps0 F, and
Born-Infeld,

    L = (eps0/kappa^2) (1 - sqrt(Delta)),   Delta = 1 - kappa^2 X - kappa^4 Y^2 / 4

whose derivatives are taken analytically from that expression.  Everything is
vectorized over arrays of X, Y (and batches of 2-forms).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import forms
from .errors import ContractViolation, FieldBoundExceeded
from .forms import KForm

MAXWELL = "maxwell"
BORN_INFELD = "born_infeld"

DELTA_FLOOR = 1e-12


@dataclass(frozen=True)
class LagrangianModel:
    kind: str = BORN_INFELD
    kappa: float = 0.0
    eps0: float = 1.0
    delta_floor: float = DELTA_FLOOR

    def __post_init__(self):
        kind = self.kind.lower().replace("-", "_")
        if kind in ("bi", "borninfeld"):
            kind = BORN_INFELD
        if kind not in (MAXWELL, BORN_INFELD):
            raise ContractViolation(f"unknown Lagrangian kind {self.kind!r}")
        object.__setattr__(self, "kind", kind)
        if self.kappa < 0 or not np.isfinite(self.kappa):
            raise ContractViolation("kappa must be finite and >= 0")
        if kind == MAXWELL and self.kappa != 0:
            raise ContractViolation("the Maxwell model has no coupling kappa")
        if self.eps0 <= 0:
            raise ContractViolation("eps0 must be positive")

    @classmethod
    def maxwell(cls, eps0=1.0):
        return cls(MAXWELL, 0.0, eps0)

    @classmethod
    def born_infeld(cls, kappa, eps0=1.0):
        return cls(BORN_INFELD, kappa, eps0)

    def delta(self, X, Y):
        X = np.asarray(X, dtype=float)
        Y = np.asarray(Y, dtype=float)
        if self.kind == MAXWELL:
            return np.ones(np.broadcast(X, Y).shape)
        k2 = self.kappa ** 2
        return 1.0 - k2 * X - 0.25 * k2 * k2 * Y * Y


@dataclass(frozen=True)
class ScalarBundle:
    """Lagrangian value, derivatives and the derived scalars M, N, L = 2 L_Y."""

    L: np.ndarray
    LX: np.ndarray
    LY: np.ndarray
    LXX: np.ndarray
    LXY: np.ndarray
    LYY: np.ndarray
    M: np.ndarray
    N: np.ndarray
    Lsc: np.ndarray
    Delta: np.ndarray

    # gradients of M, N, Lsc with respect to (X, Y)
    def dM(self, X, Y):
        return (-X * self.LXX - Y * self.LXY, -X * self.LXY - Y * self.LYY)

    def dN(self):
        return (2.0 * self.LXX, 2.0 * self.LXY)

    def dLsc(self):
        return (2.0 * self.LXY, 2.0 * self.LYY)


def check_delta(delta, floor=DELTA_FLOOR):
    """Raise FieldBoundExceeded at the first entry with Delta <= floor."""
    delta = np.asarray(delta)
    bad = ~(delta > floor)
    if np.any(bad):
        first = np.unravel_index(np.argmax(bad), bad.shape) if bad.ndim else None
        cell = None
        if first is not None:
            cell = int(first[0]) if len(first) == 1 else tuple(int(i) for i in first)
        raise FieldBoundExceeded(
            f"Born-Infeld bound exceeded: Delta = {float(delta[first] if first else delta):.6g}",
            cell=cell)


def eval_scalars(model: LagrangianModel, X, Y) -> ScalarBundle:
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    X, Y = np.broadcast_arrays(X, Y)
    eps = model.eps0
    zero = np.zeros(X.shape)
    if model.kind == MAXWELL:
        L = 0.5 * eps * X
        LX = np.full(X.shape, 0.5 * eps)
        return ScalarBundle(L=L, LX=LX, LY=zero, LXX=zero, LXY=zero, LYY=zero,
                            M=L - X * LX, N=2.0 * LX, Lsc=zero, Delta=zero + 1.0)

    k2 = model.kappa ** 2
    delta = model.delta(X, Y)
    check_delta(delta, model.delta_floor)
    s = np.sqrt(delta)
    s3 = s * delta
    # (1 - s)/k2 rewritten without cancellation; finite at kappa = 0
    L = eps * (X + 0.25 * k2 * Y * Y) / (1.0 + s)
    LX = 0.5 * eps / s
    LY = 0.25 * eps * k2 * Y / s
    LXX = 0.25 * eps * k2 / s3
    LXY = 0.125 * eps * k2 * k2 * Y / s3
    LYY = 0.25 * eps * k2 / s + 0.0625 * eps * k2 ** 3 * Y * Y / s3
    M = L - X * LX - Y * LY
    return ScalarBundle(L=L, LX=LX, LY=LY, LXX=LXX, LXY=LXY, LYY=LYY,
                        M=M, N=2.0 * LX, Lsc=2.0 * LY, Delta=delta)


def field_scalars(model, F: KForm):
    X = forms.invariant_X(F)
    Y = forms.invariant_Y(F)
    return X, Y, eval_scalars(model, X, Y)


def constitutive(model: LagrangianModel, F: KForm) -> KForm:
    """Excitation 2-form G with *G = N *F + Lsc F, i.e. G = N F - Lsc *F."""
    _, _, sc = field_scalars(model, F)
    return F * sc.N - forms.hodge(F) * sc.Lsc


def tau_led(F: KForm, a: int) -> KForm:
    """Maxwell stress 3-form 1/2 (i_a F ^ *F - i_a *F ^ F)."""
    Xa = forms.frame_vector(a)
    sF = forms.hodge(F)
    return 0.5 * (forms.wedge(forms.interior(Xa, F), sF)
                  - forms.wedge(forms.interior(Xa, sF), F))


def tau_led_q(F: KForm, Q) -> KForm:
    """sum_a Q^a tau_a^(LED) for a vector Q (batched like F)."""
    Q = np.asarray(Q, dtype=float)
    sF = forms.hodge(F)
    # i_Q is linear in Q, so contract Q directly instead of summing over a
    return 0.5 * (forms.wedge(forms.interior(Q, F), sF)
                  - forms.wedge(forms.interior(Q, sF), F))


def _tensor_from_three_forms(taus):
    """T_ab = (*tau_b)(X_a) from the four stress 3-forms."""
    cols = [forms.hodge(tau).comps for tau in taus]
    return np.stack(cols, axis=-1)


def led_stress_energy(F: KForm) -> np.ndarray:
    """Maxwell stress-energy T_ab with lowered indices (eps0 = 1)."""
    return _tensor_from_three_forms([tau_led(F, a) for a in range(forms.DIM)])


def stress_energy(model: LagrangianModel, F: KForm, raised=True) -> np.ndarray:
    """Stress-energy tensor T = M g + N T^(LED).

    Returns T^{ab} (contravariant) by default; pass ``raised=False`` for T_ab.
    T^{tt} is the energy density.
    """
    _, _, sc = field_scalars(model, F)
    g = np.diag(forms.METRIC)
    T = sc.M[..., None, None] * g + sc.N[..., None, None] * led_stress_energy(F)
    if raised:
        T = T * forms.METRIC[:, None] * forms.METRIC[None, :]
    return T
