"""Plane wave on a transverse static magnetic field, and the delay experiment.

In natural units (c = eps0 = 1) the field

    F = E(z - v t) d(z - v t) ^ dx - B dy ^ dz,     v = 1 / sqrt(1 + kappa^2 B^2)

solves the Born-Infeld equations for any smooth profile E.  In the
e/b language of :func:`nledlab.forms.two_form_from_eb` this is
e = (v E, 0, 0), b = (-B, E, 0).  Along the wave Delta = 1 + kappa^2 B^2 for
every amplitude, which is why the propagation is dispersion free.

The SI half of the module turns the slowdown into a transit-time delay through
a magnet of length L0 and inverts it into a bound on kappa.  Two readings of
the field value are supported:

``TESLA``
    the number given is a field in tesla and the 2-form component is
    B_F = c * B (the magnetic part of F carries a 1/c in the SI frame split);
``F_COMPONENT``
    the number given already is the 2-form component.

The delay is ``(L0/c) (sqrt(1 + x) - 1)`` with ``x = c^2 kappa^2 B_F^2``.
The linear formula ``L0 kappa |B| / 2`` is kept for side-by-side reporting; it
is not the small-x limit of the delay, which is quadratic in kappa.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.interpolate import CubicSpline

from . import forms
from .errors import ContractViolation, NumericalFailure

# CODATA 2018
C_LIGHT = 299792458.0  # m/s, exact
EPS0 = 8.8541878128e-12  # F/m
R_ELECTRON = 2.8179403262e-15  # m
E_CHARGE = 1.602176634e-19  # C, exact

TESLA = "tesla"
F_COMPONENT = "f_component"
INTERPRETATIONS = (TESLA, F_COMPONENT)


# -- profiles ---------------------------------------------------------------

class Profile:
    """A longitudinal wave profile with its first derivative."""

    def __call__(self, s):
        raise NotImplementedError

    def derivative(self, s):
        raise NotImplementedError


@dataclass(frozen=True)
class Gaussian(Profile):
    amplitude: float = 1.0
    width: float = 1.0
    center: float = 0.0

    def __call__(self, s):
        r = (np.asarray(s, dtype=float) - self.center) / self.width
        return self.amplitude * np.exp(-0.5 * r * r)

    def derivative(self, s):
        r = (np.asarray(s, dtype=float) - self.center) / self.width
        return -self.amplitude * r / self.width * np.exp(-0.5 * r * r)


@dataclass(frozen=True)
class RaisedCosine(Profile):
    """A (1 + cos(pi r / w)) / 2 on |r| < w, zero outside.  Only C^1."""

    amplitude: float = 1.0
    width: float = 1.0
    center: float = 0.0

    def __call__(self, s):
        r = np.asarray(s, dtype=float) - self.center
        inside = np.abs(r) < self.width
        return np.where(inside, 0.5 * self.amplitude * (1 + np.cos(np.pi * r / self.width)), 0.0)

    def derivative(self, s):
        r = np.asarray(s, dtype=float) - self.center
        inside = np.abs(r) < self.width
        k = np.pi / self.width
        return np.where(inside, -0.5 * self.amplitude * k * np.sin(k * r), 0.0)


class Tabulated(Profile):
    """Cubic-spline interpolation of sampled values; zero outside the table."""

    def __init__(self, s, values, amplitude=1.0):
        s = np.asarray(s, dtype=float)
        values = amplitude * np.asarray(values, dtype=float)
        if s.ndim != 1 or s.shape != values.shape or s.size < 4:
            raise ContractViolation("tabulated profile needs >= 4 matching samples")
        self._spline = CubicSpline(s, values)
        self._dspline = self._spline.derivative()
        self._lo, self._hi = s[0], s[-1]

    def _mask(self, s):
        return (s >= self._lo) & (s <= self._hi)

    def __call__(self, s):
        s = np.asarray(s, dtype=float)
        return np.where(self._mask(s), self._spline(s), 0.0)

    def derivative(self, s):
        s = np.asarray(s, dtype=float)
        return np.where(self._mask(s), self._dspline(s), 0.0)


@dataclass(frozen=True)
class Periodic(Profile):
    """Wrap a profile onto [origin, origin + period)."""

    base: Profile
    period: float
    origin: float = 0.0

    def _wrap(self, s):
        return np.mod(np.asarray(s, dtype=float) - self.origin, self.period) + self.origin

    def __call__(self, s):
        return self.base(self._wrap(s))

    def derivative(self, s):
        return self.base.derivative(self._wrap(s))


PROFILES = {"gaussian": Gaussian, "raised_cosine": RaisedCosine}


def make_profile(name, amplitude=1.0, width=1.0, center=0.0):
    try:
        cls = PROFILES[name]
    except KeyError:
        raise ContractViolation(
            f"unknown profile {name!r}; choose from {sorted(PROFILES)}") from None
    return cls(amplitude=amplitude, width=width, center=center)


# -- natural-unit solution ---------------------------------------------------

def phase_speed(kappa, B):
    """v = 1 / sqrt(1 + kappa^2 B^2) in units of c."""
    return 1.0 / np.hypot(1.0, np.asarray(kappa, dtype=float) * np.asarray(B, dtype=float))


@dataclass(frozen=True)
class ExactSolutionSpec:
    profile: Callable
    B: float
    kappa: float

    def __post_init__(self):
        if self.kappa < 0:
            raise ContractViolation("kappa must be >= 0")

    @property
    def v(self):
        return float(phase_speed(self.kappa, self.B))


def _wave_two_forms(spec):
    # d(z - vt) ^ dx = dz^dx - v dt^dx, and the static part -B dy^dz
    v = spec.v
    wave = forms.basis_form(3, 1) - forms.basis_form(0, 1) * v
    static = forms.basis_form(2, 3) * (-spec.B)
    return wave, static


def sample_fields(spec: ExactSolutionSpec, z, t) -> forms.KForm:
    """F(z, t) of the travelling wave, batched over broadcast z and t."""
    z, t = np.broadcast_arrays(np.asarray(z, dtype=float), np.asarray(t, dtype=float))
    amp = spec.profile(z - spec.v * t)
    wave, static = _wave_two_forms(spec)
    return forms.KForm(2, amp[..., None] * wave.comps + static.comps)


def sample_time_derivative(spec: ExactSolutionSpec, z, t) -> forms.KForm:
    """dF/dt of the travelling wave (needs ``profile.derivative``)."""
    z, t = np.broadcast_arrays(np.asarray(z, dtype=float), np.asarray(t, dtype=float))
    damp = -spec.v * spec.profile.derivative(z - spec.v * t)
    wave, _ = _wave_two_forms(spec)
    return forms.KForm(2, damp[..., None] * wave.comps)


# -- SI experiment -----------------------------------------------------------

@dataclass(frozen=True)
class ExperimentDesign:
    L0: float
    B_tesla: float
    kappa_si: float
    timing_resolution: float = 1e-12

    def __post_init__(self):
        for name in ("L0", "B_tesla", "kappa_si", "timing_resolution"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ContractViolation(f"{name} must be finite")
        if self.L0 <= 0:
            raise ContractViolation("magnet length L0 must be positive")
        if self.B_tesla < 0 or self.kappa_si < 0:
            raise ContractViolation("B and kappa must be >= 0")
        if self.timing_resolution <= 0:
            raise ContractViolation("timing resolution must be positive")


def sqrt1pm1(x):
    """sqrt(1 + x) - 1 without cancellation for tiny x."""
    x = np.asarray(x, dtype=float)
    return x / (np.sqrt(1.0 + x) + 1.0)


def _field_component(B_tesla, interpretation):
    if interpretation == TESLA:
        return C_LIGHT * B_tesla
    if interpretation == F_COMPONENT:
        return B_tesla
    raise ContractViolation(f"interpretation must be one of {INTERPRETATIONS}")


def slowdown_parameter(kappa_si, B_tesla, interpretation=TESLA):
    """x = c^2 kappa^2 B_F^2."""
    cb = C_LIGHT * kappa_si * _field_component(B_tesla, interpretation)
    return cb * cb


def transit_delay_exact(design: ExperimentDesign, interpretation=TESLA):
    x = slowdown_parameter(design.kappa_si, design.B_tesla, interpretation)
    return float(design.L0 / C_LIGHT * sqrt1pm1(x))


def transit_delay_linear(design: ExperimentDesign):
    return design.L0 / 2.0 * design.kappa_si * abs(design.B_tesla)


def kappa_from_electron_radius(r0=R_ELECTRON, eps0=EPS0, e=E_CHARGE):
    """Born-Infeld coupling estimate eps0 r0^2 / e (SI)."""
    return eps0 * r0 * r0 / e


def kappa_bound_from_timing(design: ExperimentDesign, interpretation=TESLA,
                            rtol=1e-10, max_steps=200):
    """Largest kappa whose delay stays within ``design.timing_resolution``.

    Solved by bisection on the monotone map kappa -> delay.
    """
    if design.B_tesla <= 0:
        raise ContractViolation("a kappa bound needs a non-zero field")
    target = design.timing_resolution

    def delay(kappa):
        x = slowdown_parameter(kappa, design.B_tesla, interpretation)
        return design.L0 / C_LIGHT * float(sqrt1pm1(x))

    # bracket [hi/10, hi] by decades from the kappa where x = 1
    hi = 1.0 / (C_LIGHT * _field_component(design.B_tesla, interpretation))
    for _ in range(max_steps):
        if delay(hi) < target:
            hi *= 10.0
        elif delay(hi / 10.0) >= target:
            hi /= 10.0
        else:
            break
    else:
        raise NumericalFailure("could not bracket the kappa bound")
    lo = hi / 10.0

    for _ in range(max_steps):
        mid = 0.5 * (lo + hi)
        if delay(mid) < target:
            lo = mid
        else:
            hi = mid
        if hi - lo <= rtol * hi:
            return 0.5 * (lo + hi)
    raise NumericalFailure(f"kappa bisection did not converge in {max_steps} steps")


def experiment_report(design: ExperimentDesign):
    """Everything the ``exact`` subcommand prints, as a plain dict."""
    out = {
        "inputs": {"L0_m": design.L0, "B_tesla": design.B_tesla,
                   "kappa_si": design.kappa_si,
                   "timing_resolution_s": design.timing_resolution},
        "kappa_electron_radius": kappa_from_electron_radius(),
        "tau_linear_s": transit_delay_linear(design),
    }
    for interp in INTERPRETATIONS:
        x = slowdown_parameter(design.kappa_si, design.B_tesla, interp)
        bound = None
        if design.B_tesla > 0:
            bound = kappa_bound_from_timing(design, interp)
        out[interp] = {
            "v_over_c": float(1.0 / math.sqrt(1.0 + x)) if x < 1e300 else 0.0,
            "slowdown_parameter": float(x),
            "tau_exact_s": transit_delay_exact(design, interp),
            "kappa_bound": bound,
        }
    lin = out["tau_linear_s"]
    disagreements = {}
    for interp in INTERPRETATIONS:
        ex = out[interp]["tau_exact_s"]
        if lin == 0 and ex == 0:
            disagreements[interp] = 1.0
        else:
            disagreements[interp] = ex / lin if lin else math.inf
    out["exact_over_linear"] = disagreements
    out["formulas_disagree"] = any(abs(r - 1.0) > 1e-6 for r in disagreements.values())
    return out
