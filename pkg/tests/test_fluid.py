import numpy as np
import pytest
from hypothesis import given, strategies as st

from nledlab import forms, fluid
from nledlab.errors import ContractViolation, DegenerateInertia, InvalidState
from nledlab.fluid import EquationOfState, FluidState
from nledlab.forms import KForm
from nledlab.nled import LagrangianModel, constitutive, eval_scalars, stress_energy, tau_led_q

BI = LagrangianModel.born_infeld(0.8)
MAXWELL = LagrangianModel.maxwell()
DUST = EquationOfState.dust()
GAS = EquationOfState.ideal(2.0)


# -- a smooth field from a potential, so dF = 0 holds exactly ---------------------

class PotentialField:
    def __init__(self, rng, scale=0.3):
        self.W = rng.normal(size=(4, 4)) * scale
        self.K = rng.normal(size=(4, 4)) * 0.4

    def dA(self, x):
        # dA[a, m] = d_a A_m for A_m = 0.5 sin(K_m.x) + 0.2 W_m.x
        return (0.5 * np.cos(self.K @ x)[None, :] * self.K.T + 0.2 * self.W.T)

    def F(self, x):
        J = self.dA(x)
        return KForm(2, np.array([J[a, b] - J[b, a] for a, b in forms.BASIS[2]]))


def fd_grad(f, x, h=1e-4):
    """Fourth-order central differences along each coordinate."""
    out = []
    for a in range(4):
        e = np.zeros(4)
        e[a] = h
        out.append((-f(x + 2 * e) + 8 * f(x + e) - 8 * f(x - e) + f(x - 2 * e)) / (12 * h))
    return np.array(out)


def exterior_derivative_of_two_form(dS):
    """(dw)_{abc} from d_a w_{bc} given as dS[a, comp]."""
    I2 = forms.INDEX[2]
    return KForm(3, np.array([dS[a, I2[(b, c)]] - dS[b, I2[(a, c)]] + dS[c, I2[(a, b)]]
                              for a, b, c in forms.BASIS[3]]))


# -- equation of state and thermodynamics ---------------------------------------

def test_eos_validation():
    with pytest.raises(ContractViolation):
        EquationOfState("polytrope")
    with pytest.raises(ContractViolation):
        EquationOfState.ideal(1.0)


@given(st.floats(0, 1e3))
def test_dust_energy_density(rho):
    assert fluid.energy_density(DUST, rho) == rho


def test_ideal_gas_energy_density():
    assert fluid.energy_density(GAS, 1.0, 1.0) == 2.0
    assert fluid.energy_density(GAS, 3.0, 0.0) == 3.0


@given(st.floats(1e-3, 1e3), st.floats(0, 1e3))
def test_energy_density_at_least_rest_mass(rho_m, p):
    assert fluid.energy_density(GAS, rho_m, p) >= rho_m


def test_pressure_without_matter_rejected():
    with pytest.raises(InvalidState):
        fluid.energy_density(GAS, 0.0, 1.0)
    with pytest.raises(InvalidState):
        fluid.energy_density(DUST, 1.0, 0.5)


def test_state_validation():
    with pytest.raises(InvalidState):
        FluidState(rho_m=-1.0)
    with pytest.raises(InvalidState):
        FluidState(rho_m=1.0, p=-1.0)
    with pytest.raises(InvalidState):
        FluidState(rho_m=1.0, u=1.0)


@given(st.floats(-0.999, 0.999))
def test_four_velocity_normalized(u):
    V = FluidState(rho_m=1.0, u=u).four_velocity()
    assert forms.inner(V, V) == pytest.approx(-1.0, abs=1e-12 / (1 - u * u))


def test_tds_examples():
    a = FluidState(rho_m=1.0, p=1.0)
    assert fluid.tds_increment(GAS, a, a) == 0.0
    b = FluidState(rho_m=1.0, p=1.5)
    assert fluid.tds_increment(GAS, a, b) == pytest.approx(0.5)  # d(1/rho_m) = 0
    with pytest.raises(InvalidState):
        fluid.tds_increment(DUST, FluidState(rho_m=1.0), FluidState(rho_m=1.1))


@pytest.mark.parametrize("gamma", [4 / 3, 5 / 3, 2.0])
@pytest.mark.parametrize("rho", [0.5, 1.0, 3.0])
def test_tds_vanishes_on_isentropes(gamma, rho):
    eos = EquationOfState.ideal(gamma)
    a = FluidState(rho_m=rho, p=rho ** gamma)
    r2 = rho + 1e-4
    b = FluidState(rho_m=r2, p=r2 ** gamma)
    assert abs(fluid.tds_increment(eos, a, b)) <= 1e-10


# -- projection and current -------------------------------------------------------

def test_project_examples(rng):
    V = FluidState(rho_m=1.0, u=0.4).four_velocity()
    assert np.allclose(fluid.project(V, forms.lower(V)).comps, 0.0)
    alpha = KForm(1, rng.standard_normal(4))
    once = fluid.project(V, alpha)
    assert forms.interior(V, once).comps[0] == pytest.approx(0.0, abs=1e-14)
    assert fluid.project(V, once).allclose(once)
    ortho = KForm(1, [0.0, 1.0, -2.0, 0.0])
    assert fluid.project(V, ortho).allclose(ortho)


def test_project_requires_unit_velocity():
    with pytest.raises(ContractViolation):
        fluid.project([1.0, 0, 0, 0.5], KForm(1, np.ones(4)))


def test_current_examples():
    assert np.all(fluid.u1_current(FluidState(rho_m=1.0, rho_e=0.0)).comps == 0)
    # rest frame: rho_e *(-dt); index oracle (*a)_{bcd} = a^m eps_{mbcd} gives q dx^dy^dz
    J = fluid.u1_current(FluidState(rho_m=1.0, rho_e=2.5))
    assert J.allclose(forms.basis_form(1, 2, 3) * 2.5)


@given(st.floats(-0.95, 0.95), st.floats(-3, 3))
def test_current_transforms_as_four_vector(u, q):
    g = 1 / np.sqrt(1 - u * u)
    boost = np.array([[g, 0, 0, g * u], [0, 1, 0, 0], [0, 0, 1, 0], [g * u, 0, 0, g]])
    J = fluid.vector_of_three_form(fluid.u1_current(FluidState(rho_m=1.0, rho_e=q, u=u)))
    assert np.allclose(J, boost @ np.array([q, 0, 0, 0]), atol=1e-12)


# -- force terms --------------------------------------------------------------------

def test_maxwell_force_terms_vanish(rng):
    F = KForm(2, rng.standard_normal(6))
    gradF = KForm(2, rng.standard_normal((4, 6)))
    ft = fluid.force_terms(MAXWELL, F, gradF, FluidState(rho_m=1.0))
    assert np.all(ft.xi.comps == 0) and np.all(ft.eta == 0)


def test_uniform_field_force_terms_vanish(rng):
    F = KForm(2, 0.4 * rng.standard_normal(6))
    ft = fluid.force_terms(BI, F, KForm(2, np.zeros((4, 6))), FluidState(rho_m=1.0, u=0.3))
    assert np.all(ft.xi.comps == 0) and np.all(ft.eta == 0)
    assert np.all(ft.P_total.comps == 0)


def test_chain_rule_gradients_match_finite_differences(rng):
    F0 = KForm(2, 0.3 * rng.standard_normal(6))
    G = KForm(2, 0.3 * rng.standard_normal(6))
    grad = KForm(2, np.stack([G.comps, np.zeros(6), np.zeros(6), np.zeros(6)]))
    ft = fluid.force_terms(BI, F0, grad, FluidState(rho_m=1.0))

    def scalars(s):
        F = F0 + G * s
        X, Y = forms.invariant_X(F), forms.invariant_Y(F)
        sc = eval_scalars(BI, X, Y)
        return np.array([sc.M, sc.N, sc.Lsc])

    h = 1e-5
    fd = (scalars(h) - scalars(-h)) / (2 * h)
    got = np.array([ft.dM.comps[0], ft.dN.comps[0], ft.dL.comps[0]])
    assert np.allclose(got, fd, rtol=1e-6, atol=1e-10)


def test_xi_equals_interior_of_eta(rng):
    F = KForm(2, 0.3 * rng.standard_normal((50, 6)))
    gradF = KForm(2, rng.standard_normal((50, 4, 6)))
    ft = fluid.force_terms(BI, F, gradF, FluidState(rho_m=1.0))
    assert np.allclose(ft.xi.comps, forms.interior(ft.eta, F).comps, atol=1e-12)


def test_force_terms_match_finite_difference_of_definitions(rng):
    """xi = dM + *tau_{dN~} and eta~ = *(dN ^ *F) + *(dL ^ F) by direct differencing."""
    field = PotentialField(rng)
    x0 = rng.normal(size=4) * 0.3
    F = field.F(x0)
    gradF = KForm(2, fd_grad(lambda x: field.F(x).comps, x0))
    ft = fluid.force_terms(BI, F, gradF, FluidState(rho_m=1.0))

    def MNL(x):
        Fx = field.F(x)
        sc = eval_scalars(BI, forms.invariant_X(Fx), forms.invariant_Y(Fx))
        return np.array([sc.M, sc.N, sc.Lsc])

    g = fd_grad(MNL, x0)  # g[a, k]
    dM, dN, dL = (KForm(1, g[:, k]) for k in range(3))
    xi = dM + forms.hodge(tau_led_q(F, forms.raise_index(dN)))
    eta = forms.raise_index(forms.hodge(forms.wedge(dN, forms.hodge(F)))
                            + forms.hodge(forms.wedge(dL, F)))
    assert np.allclose(ft.xi.comps, xi.comps, atol=1e-8)
    assert np.allclose(ft.eta, eta, atol=1e-8)


@pytest.mark.parametrize("model", [MAXWELL, BI, LagrangianModel.born_infeld(1.5)],
                         ids=["maxwell", "bi0.8", "bi1.5"])
def test_field_stress_divergence_identity(model, rng):
    """div T_field = i_{J} F with J the vector of d*G, and xi + i_Jhat F with Jhat = J - eta."""
    field = PotentialField(rng)
    for _ in range(3):
        x0 = rng.normal(size=4) * 0.4
        F = field.F(x0)
        gradF = KForm(2, fd_grad(lambda x: field.F(x).comps, x0))
        dT = fd_grad(lambda x: stress_energy(model, field.F(x), raised=False), x0)
        divT = np.einsum("a,aab->b", forms.METRIC, dT)
        dS = fd_grad(lambda x: forms.hodge(constitutive(model, field.F(x))).comps, x0)
        J = fluid.vector_of_three_form(exterior_derivative_of_two_form(dS))
        ft = fluid.force_terms(model, F, gradF, FluidState(rho_m=1.0))
        assert np.allclose(divT, forms.interior(J, F).comps, atol=1e-7)
        rhs = ft.xi + forms.interior(J - ft.eta, F)
        assert np.allclose(divT, rhs.comps, atol=1e-7)


# -- equations of motion --------------------------------------------------------------

def test_eom_orthogonal_to_velocity(rng):
    for _ in range(20):
        F = KForm(2, 0.3 * rng.standard_normal(6))
        gradF = KForm(2, rng.standard_normal((4, 6)))
        state = FluidState(rho_m=1.3, p=0.0, rho_e=rng.normal(), u=rng.uniform(-0.9, 0.9))
        f = fluid.eom_rhs(BI, F, gradF, state, grad_p=0.0)
        V = state.four_velocity()
        assert abs(forms.interior(V, f).comps[0]) <= 1e-12 * max(1, np.abs(f.comps).max())


def test_neutral_dust_in_uniform_field_feels_nothing(rng):
    F = KForm(2, 0.4 * rng.standard_normal(6))
    f = fluid.eom_rhs(BI, F, KForm(2, np.zeros((4, 6))), FluidState(rho_m=1.0, u=0.5))
    assert np.all(f.comps == 0)


def test_neutral_dust_feels_nothing_even_in_gradients(rng):
    F = KForm(2, 0.3 * rng.standard_normal((30, 6)))
    gradF = KForm(2, rng.standard_normal((30, 4, 6)))
    f = fluid.eom_rhs(BI, F, gradF, FluidState(rho_m=np.ones(30), u=np.full(30, 0.2)))
    assert np.max(np.abs(f.comps)) <= 1e-12


def test_pressure_gradient_on_static_fluid():
    state = FluidState(rho_m=1.0, p=0.5)
    F = KForm(2, np.zeros(6))
    f = fluid.eom_rhs(MAXWELL, F, KForm(2, np.zeros((4, 6))), state, grad_p=0.3, eos=GAS)
    assert np.allclose(f.comps, [0, 0, 0, -0.3])


def test_lorentz_force_on_charge_at_rest():
    # e along z pushes a positive charge along +z with a^z = rho_e E / rho_m
    F = forms.two_form_from_eb([0, 0, 2.0], [0, 0, 0])
    a = fluid.acceleration(MAXWELL, F, KForm(2, np.zeros((4, 6))),
                           FluidState(rho_m=1.0, rho_e=0.5))
    assert np.allclose(a, [0, 0, 0, 1.0])


def test_magnetic_force_on_moving_charge():
    # v along z, b along x: force q v x b = q u (z x x) B = q u B y-hat (times gamma)
    u, B, q = 0.6, 1.5, 2.0
    F = forms.two_form_from_eb([0, 0, 0], [B, 0, 0])
    state = FluidState(rho_m=1.0, rho_e=q, u=u)
    f = fluid.eom_rhs(MAXWELL, F, KForm(2, np.zeros((4, 6))), state)
    gamma = state.lorentz_factor
    assert np.allclose(f.comps, [0, 0, q * gamma * u * B, 0])


def test_degenerate_inertia():
    F = KForm(2, np.zeros(6))
    with pytest.raises(DegenerateInertia):
        fluid.eom_rhs(MAXWELL, F, KForm(2, np.zeros((4, 6))), FluidState(rho_m=0.0))


def test_continuity_examples(rng):
    zero = KForm(2, np.zeros((4, 6)))
    F = KForm(2, 0.3 * rng.standard_normal(6))
    assert fluid.continuity_rhs(BI, F, zero, FluidState(rho_m=1.0)) == 0.0
    state = FluidState(rho_m=1.0, u=0.5)
    gradF = KForm(2, rng.standard_normal((4, 6)))
    # Maxwell neutral: -V(rho) with rho depending on z only
    got = fluid.continuity_rhs(MAXWELL, F, gradF, state, grad_rho=0.7)
    assert got == pytest.approx(-state.lorentz_factor * 0.5 * 0.7)


def test_continuity_term_by_term_on_exact_wave():
    from nledlab import exact
    spec = exact.ExactSolutionSpec(exact.Gaussian(0.6, 1.0), B=-0.75, kappa=0.8)
    z = np.linspace(-2, 2, 9)
    F = exact.sample_fields(spec, z, 0.0)
    h = 1e-6
    dFdz = KForm(2, (exact.sample_fields(spec, z + h, 0).comps
                     - exact.sample_fields(spec, z - h, 0).comps) / (2 * h))
    gradF = fluid.gradient_from_tz(exact.sample_time_derivative(spec, z, 0.0), dFdz)
    state = FluidState(rho_m=np.full(9, 1.2), u=np.full(9, 0.3), rho_e=np.full(9, 0.4))
    grad_rho = 0.1 * z
    got = fluid.continuity_rhs(BI, F, gradF, state, grad_rho=grad_rho)

    ft = fluid.force_terms(BI, F, gradF, state)
    V = state.four_velocity()
    iV = lambda a: forms.interior(V, a).comps[..., 0]
    dN_vec = forms.raise_index(ft.dN)
    expect = (iV(ft.dM) + iV(forms.hodge(tau_led_q(F, dN_vec)))
              - state.lorentz_factor * 0.3 * grad_rho
              + iV(forms.interior(ft.Jhat, F)))
    assert np.allclose(got, expect, atol=1e-10)
    # neutral part cancels: only the convective current is left
    neutral = fluid.continuity_rhs(BI, F, gradF, FluidState(rho_m=np.full(9, 1.2), u=np.full(9, 0.3)),
                                   grad_rho=grad_rho)
    assert np.allclose(neutral, -state.lorentz_factor * 0.3 * grad_rho, atol=1e-12)
