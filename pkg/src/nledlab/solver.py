"""1+1D method-of-lines evolution of the vacuum field equations, with optional dust.

Geometry: everything depends on (t, z); the wave carries e = (E_x, 0, 0) and
b = (B0, B_y, 0) with a static transverse background B0 along x.  The evolved
(conserved) variables are the excitation component D_x and B_y:

    dB_y/dt = -d(E_x)/dz        (dF = 0)
    dD_x/dt = -d(H_y)/dz        (d*G = 0)

where G = two_form_from_eb(d, h) is the excitation, so D_x = d_x, H_y = h_y.
E_x is recovered from D_x cell by cell with a safeguarded Newton iteration.
Spatial derivatives are centred second-order differences on a periodic grid;
time stepping is classical RK4.

Cold dust moving along z can ride along.  It carries conserved mass
density rho_m gamma and momentum density rho_m gamma^2 u, and is pushed by the
z component of :func:`nledlab.fluid.eom_rhs`.  Only neutral dust is accepted:
a current along z would source d_z, which this reduction does not evolve.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import exact, forms, fluid
from .errors import ConfigError, ContractViolation, FieldBoundExceeded, NledError, NumericalFailure
from .nled import BORN_INFELD, MAXWELL, LagrangianModel, eval_scalars, stress_energy

log = logging.getLogger(__name__)

NEWTON_TOL = 1e-12
NEWTON_MAX_ITER = 50


@dataclass(frozen=True)
class Grid1D:
    n: int
    z0: float = 0.0
    z1: float = 1.0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 8:
            raise ContractViolation("grid needs an integer n >= 8")
        if not self.z1 > self.z0:
            raise ContractViolation("grid needs z1 > z0")

    @property
    def length(self):
        return self.z1 - self.z0

    @property
    def dz(self):
        return self.length / self.n

    @property
    def z(self):
        return self.z0 + self.dz * np.arange(self.n)

    def ddz(self, f):
        """Centred periodic first derivative."""
        return (np.roll(f, -1) - np.roll(f, 1)) / (2.0 * self.dz)

    def fourth_difference(self, f):
        # grouped so that constants give exactly zero
        return ((np.roll(f, -2) + np.roll(f, 2)) - 4 * (np.roll(f, -1) + np.roll(f, 1))) + 6 * f


# -- reduced constitutive relation ---------------------------------------------

def reduced_two_form(E_x, B_y, B0):
    E_x = np.asarray(E_x, dtype=float)
    B_y = np.asarray(B_y, dtype=float)
    zero = np.zeros(np.broadcast(E_x, B_y).shape)
    e = np.stack([E_x + zero, zero, zero], axis=-1)
    b = np.stack([zero + B0, B_y + zero, zero], axis=-1)
    return forms.two_form_from_eb(e, b)


@dataclass(frozen=True)
class Excitation:
    D_x: np.ndarray
    H_y: np.ndarray
    dD_dE: np.ndarray
    dD_dB: np.ndarray
    X: np.ndarray
    Y: np.ndarray
    Delta: np.ndarray


def excitation(model, E_x, B_y, B0) -> Excitation:
    """D_x, H_y and their partials with respect to (E_x, B_y).

    Uses d = N e + Lsc b and h = N b - Lsc e (from G = N F - Lsc *F) with
    X = E^2 - B0^2 - B_y^2 and Y = 2 E B0.
    """
    E = np.asarray(E_x, dtype=float)
    By = np.asarray(B_y, dtype=float)
    X = E * E - B0 * B0 - By * By
    Y = 2.0 * E * B0
    sc = eval_scalars(model, X, Y)
    nx, ny = sc.dN()
    lx, ly = sc.dLsc()
    dN_dE = 2.0 * E * nx + 2.0 * B0 * ny
    dL_dE = 2.0 * E * lx + 2.0 * B0 * ly
    D = sc.N * E + sc.Lsc * B0
    H = sc.N * By
    return Excitation(
        D_x=D, H_y=H,
        dD_dE=sc.N + E * dN_dE + B0 * dL_dE,
        dD_dB=-2.0 * By * (E * nx + B0 * lx),
        X=X, Y=Y, Delta=sc.Delta)


def _electric_bound(model, B_y, B0):
    """|E_x| at which Delta reaches zero for the given magnetic data."""
    if model.kind == MAXWELL or model.kappa == 0:
        return np.full(np.shape(B_y), np.inf)
    k2 = model.kappa ** 2
    a = 1.0 + k2 * B0 * B0
    c = 1.0 + k2 * (B0 * B0 + np.asarray(B_y) ** 2)
    return np.sqrt(c / (k2 * a))


def invert_constitutive(D_x, B_y, B0, model, guess=None,
                        tol=NEWTON_TOL, max_iter=NEWTON_MAX_ITER):
    """E_x with excitation(E_x, B_y, B0).D_x == D_x.

    Newton's method, falling back to bisection whenever a step leaves the
    current bracket.  The bracket starts at the Born-Infeld field bound.
    A cell counts as converged when its residual is within
    ``tol * max(1, |D_x|)`` or, close to the bound where D_x is too steep
    for that, when the Newton step has shrunk to a few ulps of E_x.
    """
    D = np.asarray(D_x, dtype=float)
    By = np.broadcast_to(np.asarray(B_y, dtype=float), D.shape)
    if not np.all(np.isfinite(D)):
        bad = int(np.argmax(~np.isfinite(D))) if D.ndim else None
        raise FieldBoundExceeded("non-finite excitation D_x", cell=bad)
    emax = _electric_bound(model, By, B0)
    if not np.any(np.isfinite(emax)):
        # linear constitutive law
        return D / model.eps0

    lo, hi = -emax, emax.copy()
    E = np.asarray(guess, dtype=float) if guess is not None else D / model.eps0
    E = np.clip(np.broadcast_to(E, D.shape), -0.5 * emax, 0.5 * emax) \
        if guess is None else np.clip(E, -(1 - 1e-9) * emax, (1 - 1e-9) * emax)
    scale = tol * np.maximum(1.0, np.abs(D))

    def polish(E):
        # one extra Newton step: a residual of tol in D can still be a larger
        # error in E where dD/dE < 1
        ex = excitation(model, E, By, B0)
        with np.errstate(divide="ignore", invalid="ignore"):
            En = E - (ex.D_x - D) / ex.dD_dE
        ok = np.isfinite(En) & (np.abs(En) < emax)
        return np.where(ok, En, E)

    for _ in range(max_iter):
        ex = excitation(model, E, By, B0)
        f = ex.D_x - D
        done = np.abs(f) <= scale
        if np.all(done):
            return polish(E)
        hi = np.where(f > 0, np.minimum(hi, E), hi)
        lo = np.where(f < 0, np.maximum(lo, E), lo)
        with np.errstate(divide="ignore", invalid="ignore"):
            En = E - f / ex.dD_dE
        stalled = np.abs(En - E) <= 4 * np.spacing(np.abs(E))
        outside = ~((En > lo) & (En < hi))
        En = np.where(outside, 0.5 * (lo + hi), En)
        E = np.where(done | stalled, E, En)
        converged = done | stalled
        if np.all(converged):
            return polish(E)
    left = ~converged
    cell = int(np.argmax(left)) if np.ndim(left) else None
    raise NumericalFailure(f"constitutive inversion did not converge in {max_iter} iterations",
                           cell=cell)


# -- grid states ---------------------------------------------------------------

@dataclass(frozen=True)
class FieldGrid1D:
    grid: Grid1D
    B0: float
    D_x: np.ndarray
    B_y: np.ndarray
    E_x: np.ndarray
    H_y: np.ndarray
    X: np.ndarray
    Y: np.ndarray
    Delta: np.ndarray
    dD_dE: np.ndarray
    dD_dB: np.ndarray

    @classmethod
    def _build(cls, grid, model, B0, D_x, B_y, E_x):
        ex = excitation(model, E_x, B_y, B0)
        return cls(grid=grid, B0=float(B0), D_x=np.asarray(D_x, dtype=float),
                   B_y=np.asarray(B_y, dtype=float), E_x=np.asarray(E_x, dtype=float),
                   H_y=ex.H_y, X=ex.X, Y=ex.Y, Delta=ex.Delta,
                   dD_dE=ex.dD_dE, dD_dB=ex.dD_dB)

    @classmethod
    def from_primitive(cls, grid, model, E_x, B_y, B0):
        E_x = np.broadcast_to(np.asarray(E_x, dtype=float), (grid.n,)).copy()
        B_y = np.broadcast_to(np.asarray(B_y, dtype=float), (grid.n,)).copy()
        D = excitation(model, E_x, B_y, B0).D_x
        return cls._build(grid, model, B0, D, B_y, E_x)

    @classmethod
    def from_conserved(cls, grid, model, D_x, B_y, B0, guess=None):
        E = invert_constitutive(D_x, B_y, B0, model, guess=guess)
        return cls._build(grid, model, B0, D_x, B_y, E)

    def two_form(self):
        return reduced_two_form(self.E_x, self.B_y, self.B0)


@dataclass(frozen=True)
class DustGrid1D:
    """Cold neutral dust: conserved mass and momentum densities per cell."""

    mass: np.ndarray  # rho_m gamma
    momentum: np.ndarray  # rho_m gamma^2 u

    @classmethod
    def from_primitive(cls, rho_m, u):
        rho_m = np.asarray(rho_m, dtype=float)
        u = np.asarray(u, dtype=float)
        gamma = 1.0 / np.sqrt(1.0 - u * u)
        mass = rho_m * gamma
        return cls(mass=mass, momentum=mass * gamma * u)

    @property
    def gamma_u(self):
        return self.momentum / self.mass

    @property
    def lorentz_factor(self):
        w = self.gamma_u
        return np.sqrt(1.0 + w * w)

    @property
    def u(self):
        return self.gamma_u / self.lorentz_factor

    @property
    def rho_m(self):
        return self.mass / self.lorentz_factor

    def fluid_state(self):
        return fluid.FluidState(rho_m=self.rho_m, u=self.u)


# -- right-hand sides ----------------------------------------------------------

def rhs_fields(state: FieldGrid1D, model=None, dissipation=0.0):
    """Time derivatives (dD_x/dt, dB_y/dt) of the conserved field variables."""
    g = state.grid
    dD = -g.ddz(state.H_y)
    dB = -g.ddz(state.E_x)
    if dissipation:
        k = dissipation / (16.0 * g.dz)
        dD = dD - k * g.fourth_difference(state.D_x)
        dB = dB - k * g.fourth_difference(state.B_y)
    return dD, dB


def field_time_derivative(state: FieldGrid1D, dD, dB):
    """(dE_x/dt, dB_y/dt) from the conserved-variable rates (chain rule)."""
    dE = (dD - state.dD_dB * dB) / state.dD_dE
    return dE, dB


def field_gradient(state: FieldGrid1D, dD, dB) -> forms.KForm:
    """Coordinate gradient of F per cell, layout (n, 4, 6)."""
    g = state.grid
    dE_dt, dB_dt = field_time_derivative(state, dD, dB)
    dF_dt = reduced_two_form(dE_dt, dB_dt, 0.0)
    dF_dz = reduced_two_form(g.ddz(state.E_x), g.ddz(state.B_y), 0.0)
    return fluid.gradient_from_tz(dF_dt, dF_dz)


def dust_force(state: FieldGrid1D, dust: DustGrid1D, model, dD, dB):
    """Force density 1-form (rho a~) on the dust, from :func:`fluid.eom_rhs`."""
    return fluid.eom_rhs(model, state.two_form(), field_gradient(state, dD, dB),
                         dust.fluid_state())


def rhs_dust(state: FieldGrid1D, dust: DustGrid1D, model, dD, dB, dissipation=0.0):
    g = state.grid
    u = dust.u
    f = dust_force(state, dust, model, dD, dB)
    dm = -g.ddz(dust.mass * u)
    dp = -g.ddz(dust.momentum * u) + f.comps[:, 3]
    if dissipation:
        k = dissipation / (16.0 * g.dz)
        dm = dm - k * g.fourth_difference(dust.mass)
        dp = dp - k * g.fourth_difference(dust.momentum)
    return dm, dp


# -- time stepping ---------------------------------------------------------------

def _stage(state, dust, model, y, guess):
    D, B = y[0], y[1]
    st = FieldGrid1D.from_conserved(state.grid, model, D, B, state.B0, guess=guess)
    ds = None
    if dust is not None:
        ds = DustGrid1D(mass=y[2], momentum=y[3])
    return st, ds


def _rates(st, ds, model, dissipation):
    dD, dB = rhs_fields(st, model, dissipation)
    out = [dD, dB]
    if ds is not None:
        out.extend(rhs_dust(st, ds, model, dD, dB, dissipation))
    return out


def step(state: FieldGrid1D, dust, model, dt, dissipation=0.0, step_number=None):
    """One classical RK4 step; returns the new (field, dust) pair."""
    y0 = [state.D_x, state.B_y]
    if dust is not None:
        y0 += [dust.mass, dust.momentum]
    stage = 0
    try:
        stage = 1
        k1 = _rates(state, dust, model, dissipation)
        ks = [k1]
        for stage, c in ((2, 0.5), (3, 0.5), (4, 1.0)):
            y = [a + c * dt * k for a, k in zip(y0, ks[-1])]
            st, ds = _stage(state, dust, model, y, state.E_x)
            ks.append(_rates(st, ds, model, dissipation))
        stage = None
        k1, k2, k3, k4 = ks
        y = [a + dt / 6.0 * (b1 + 2 * b2 + 2 * b3 + b4)
             for a, b1, b2, b3, b4 in zip(y0, k1, k2, k3, k4)]
        new_state, new_dust = _stage(state, dust, model, y, state.E_x)
    except NledError as exc:
        raise exc.annotate(step=step_number, stage=stage) from exc
    return new_state, new_dust


# -- diagnostics ------------------------------------------------------------------

def _field_T(model, E_x, B_y, B0):
    return stress_energy(model, reduced_two_form(E_x, B_y, B0))


def _dust_T(mass, momentum):
    w = momentum / mass
    gamma = np.sqrt(1.0 + w * w)
    u = w / gamma
    T = np.zeros(mass.shape + (4, 4))
    T[:, 0, 0] = mass * gamma
    T[:, 0, 3] = T[:, 3, 0] = momentum
    T[:, 3, 3] = momentum * u
    return T


def periodic_centroid(z, weight, z0, length):
    """Weighted centroid on a periodic interval (circular mean)."""
    total = np.sum(weight)
    if not total > 0:
        return math.nan
    theta = 2.0 * np.pi * (z - z0) / length
    ang = math.atan2(np.sum(weight * np.sin(theta)), np.sum(weight * np.cos(theta)))
    return z0 + length * ((ang / (2.0 * np.pi)) % 1.0)


def divergence_residual(state, dust, model, dissipation=0.0, h=1e-6):
    """Per-cell d_a T_total^{ab} with the semi-discrete time derivative."""
    g = state.grid
    rates = _rates(state, dust, model, dissipation)
    dE, dB = field_time_derivative(state, rates[0], rates[1])
    scale = max(1.0, float(np.max(np.abs(dE))), float(np.max(np.abs(dB))))
    eps = h / scale
    Tp = _field_T(model, state.E_x + eps * dE, state.B_y + eps * dB, state.B0)
    Tm = _field_T(model, state.E_x - eps * dE, state.B_y - eps * dB, state.B0)
    dT_dt = (Tp - Tm) / (2.0 * eps)
    T = _field_T(model, state.E_x, state.B_y, state.B0)
    if dust is not None:
        dm, dp = rates[2], rates[3]
        dscale = max(1.0, float(np.max(np.abs(dm))), float(np.max(np.abs(dp))))
        de = h / dscale
        dT_dt = dT_dt + (_dust_T(dust.mass + de * dm, dust.momentum + de * dp)
                         - _dust_T(dust.mass - de * dm, dust.momentum - de * dp)) / (2.0 * de)
        T = T + _dust_T(dust.mass, dust.momentum)
    dT_dz = _ddz_rows(g, T[:, 3, :])
    return dT_dt[:, 0, :] + dT_dz


def _ddz_rows(g, a):
    return (np.roll(a, -1, axis=0) - np.roll(a, 1, axis=0)) / (2.0 * g.dz)


def diagnostics(state: FieldGrid1D, dust, model, t=0.0, dissipation=0.0,
                e_background=0.0):
    g = state.grid
    T = _field_T(model, state.E_x, state.B_y, state.B0)
    energy = float(np.sum(T[:, 0, 0]) * g.dz)
    mass = float(np.sum(dust.mass) * g.dz) if dust is not None else 0.0
    w = (state.E_x - e_background) ** 2
    r = divergence_residual(state, dust, model, dissipation)
    return {
        "t": float(t),
        "em_energy": energy,
        "fluid_mass": mass,
        "centroid": periodic_centroid(g.z, w, g.z0, g.length),
        "max_delta_excursion": float(np.max(np.abs(state.Delta - 1.0))),
        "divT_residual": float(np.sqrt(np.sum(r * r) * g.dz)),
    }


DIAGNOSTIC_FIELDS = ("t", "em_energy", "fluid_mass", "centroid",
                     "max_delta_excursion", "divT_residual")


# -- configuration and runs --------------------------------------------------------

@dataclass(frozen=True)
class DustConfig:
    rho_m0: float = 1.0
    u0: float = 0.0
    rho_e0: float = 0.0
    eos: str = fluid.COLD_DUST
    gamma: float | None = None

    def __post_init__(self):
        if self.eos != fluid.COLD_DUST:
            raise ConfigError("the solver couples cold dust only (eos = 'dust')")
        if self.rho_e0 != 0:
            raise ConfigError("charged dust is not supported in the 1+1D reduction "
                              "(its z current sources the unevolved d_z)")
        if not self.rho_m0 > 0:
            raise ConfigError("rho_m0 must be positive")
        if not abs(self.u0) < 1:
            raise ConfigError("|u0| must be below 1")


@dataclass(frozen=True)
class RunConfig:
    kind: str = BORN_INFELD
    kappa: float = 0.0
    n: int = 256
    z0: float = 0.0
    z1: float = 1.0
    profile: str = "gaussian"
    amplitude: float = 1.0
    width: float = 1.0
    center: float = 0.0
    B0: float = 0.0
    cfl: float = 0.5
    t_end: float = 0.0
    output_every: int = 0
    dissipation: float = 0.0
    fluid: DustConfig | None = None

    def __post_init__(self):
        if not 0 < self.cfl <= 1:
            raise ConfigError("cfl must lie in (0, 1]")
        if self.t_end < 0 or not math.isfinite(self.t_end):
            raise ConfigError("t_end must be finite and >= 0")
        if self.dissipation < 0:
            raise ConfigError("dissipation must be >= 0")
        if self.output_every < 0:
            raise ConfigError("output_every must be >= 0")
        if self.width <= 0:
            raise ConfigError("profile width must be positive")
        try:
            self.model
            self.grid
            exact.make_profile(self.profile)
        except ContractViolation as exc:
            raise ConfigError(exc.message) from None

    @property
    def model(self):
        return LagrangianModel(self.kind, self.kappa)

    @property
    def grid(self):
        return Grid1D(self.n, self.z0, self.z1)

    def exact_spec(self):
        """Travelling-wave solution matching the initial data (B = -B0)."""
        g = self.grid
        base = exact.make_profile(self.profile, self.amplitude, self.width, self.center)
        kappa = self.model.kappa
        # wrap around the pulse centre so the pulse is never cut in two
        wrapped = exact.Periodic(base, g.length, self.center - 0.5 * g.length)
        return exact.ExactSolutionSpec(wrapped, -self.B0, kappa)

    def with_(self, **changes):
        return replace(self, **changes)


def exact_state(config: RunConfig, t=0.0) -> FieldGrid1D:
    g = config.grid
    F = exact.sample_fields(config.exact_spec(), g.z, t)
    e, b = forms.eb_from_two_form(F)
    return FieldGrid1D.from_primitive(g, config.model, e[:, 0], b[:, 1], config.B0)


def initial_dust(config: RunConfig):
    if config.fluid is None:
        return None
    n = config.n
    return DustGrid1D.from_primitive(np.full(n, config.fluid.rho_m0),
                                     np.full(n, config.fluid.u0))


@dataclass
class RunResult:
    config: RunConfig
    dt: float
    nsteps: int
    records: list = field(default_factory=list)
    snapshots: dict = field(default_factory=dict)
    state: FieldGrid1D | None = None
    dust: DustGrid1D | None = None
    completed: bool = False

    @property
    def times(self):
        return np.array([r["t"] for r in self.records])

    @property
    def centroids(self):
        return np.array([r["centroid"] for r in self.records])

    def energy_drift(self):
        e = np.array([r["em_energy"] for r in self.records])
        if e.size == 0 or e[0] == 0:
            return 0.0
        return float(np.max(np.abs(e - e[0])) / abs(e[0]))


def snapshot(state: FieldGrid1D, dust):
    out = {"z": state.grid.z, "E_x": state.E_x, "B_y": state.B_y, "D_x": state.D_x,
           "X": state.X, "Y": state.Y, "Delta": state.Delta}
    if dust is not None:
        out.update(rho_m=dust.rho_m, p=np.zeros_like(dust.mass), u=dust.u)
    return out


def time_step(config: RunConfig):
    """(dt, nsteps) landing exactly on t_end with dt <= cfl dz."""
    dt_max = config.cfl * config.grid.dz
    if config.t_end == 0:
        return dt_max, 0
    nsteps = int(math.ceil(config.t_end / dt_max - 1e-12))
    return config.t_end / nsteps, nsteps


def run(config: RunConfig, callback=None, keep_snapshots=True) -> RunResult:
    """Evolve to t_end, recording diagnostics every ``output_every`` steps.

    ``callback(step, record, snapshot)`` is called at every output; on failure
    the exception carries the partial :class:`RunResult` as ``exc.partial``.
    """
    model = config.model
    dt, nsteps = time_step(config)
    result = RunResult(config=config, dt=dt, nsteps=nsteps)
    every = config.output_every or max(nsteps, 1)

    def emit(k, st, ds):
        rec = diagnostics(st, ds, model, t=k * dt, dissipation=config.dissipation)
        snap = snapshot(st, ds)
        result.records.append(rec)
        if keep_snapshots:
            result.snapshots[k] = snap
        if callback is not None:
            callback(k, rec, snap)

    state = dust = None
    try:
        state = exact_state(config, 0.0)
        dust = initial_dust(config)
        result.state, result.dust = state, dust
        emit(0, state, dust)
        for k in range(1, nsteps + 1):
            state, dust = step(state, dust, model, dt, config.dissipation, step_number=k)
            result.state, result.dust = state, dust
            if k % every == 0 or k == nsteps:
                emit(k, state, dust)
    except NledError as exc:
        exc.partial = result
        raise
    result.completed = True
    log.debug("run finished: %d steps, dt=%g", nsteps, dt)
    return result


def measure_phase_speed(result: RunResult):
    """Least-squares slope of the (unwrapped) pulse centroid against time."""
    t = result.times
    c = result.centroids
    if t.size < 2 or not np.all(np.isfinite(c)) or np.ptp(t) == 0:
        raise NumericalFailure("phase speed undefined: need >= 2 finite centroid samples")
    L = result.config.grid.length
    c = np.unwrap(c, period=L)
    slope = np.polyfit(t, c, 1)[0]
    return float(slope)


# -- verification helpers ------------------------------------------------------------

def fitted_order(dz, err):
    """Slope of log(err) against log(dz)."""
    return float(np.polyfit(np.log(dz), np.log(err), 1)[0])


def exact_residual(config: RunConfig, t=0.0):
    """Max-norm mismatch between the discrete RHS and the exact time derivative."""
    spec = config.exact_spec()
    state = exact_state(config, t)
    dD, dB = rhs_fields(state, config.model)
    dF = exact.sample_time_derivative(spec, state.grid.z, t)
    e, b = forms.eb_from_two_form(dF)
    dE_ex, dB_ex = e[:, 0], b[:, 1]
    dD_ex = state.dD_dE * dE_ex + state.dD_dB * dB_ex
    return max(float(np.max(np.abs(dD - dD_ex))), float(np.max(np.abs(dB - dB_ex))))


def solution_error(config: RunConfig, result: RunResult):
    """L2 error of (E_x, B_y) at t_end against the travelling wave."""
    ref = exact_state(config, config.t_end)
    st = result.state
    g = config.grid
    diff = (st.E_x - ref.E_x) ** 2 + (st.B_y - ref.B_y) ** 2
    return float(np.sqrt(np.sum(diff) * g.dz))


def convergence_study(config: RunConfig, levels):
    """Run ``config`` at each grid size; return errors and the fitted order."""
    levels = [int(n) for n in levels]
    if len(levels) < 3:
        raise ConfigError("a convergence study needs at least 3 levels")
    rows = []
    for n in levels:
        cfg = config.with_(n=n, output_every=0)
        res = run(cfg, keep_snapshots=False)
        rows.append({"n": n, "dz": cfg.grid.dz, "l2_error": solution_error(cfg, res)})
    order = fitted_order([r["dz"] for r in rows], [r["l2_error"] for r in rows])
    return {"levels": rows, "order": order}
