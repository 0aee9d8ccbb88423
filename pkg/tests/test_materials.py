import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import boundary_value_stack

from emfluct.exceptions import GrazingModeError, ModelDomainError, TableParseError, TableRangeError
from emfluct.kinematics import make_mode
from emfluct.materials import (
    Constant,
    ConstantReflection,
    Drude,
    DrudeBornChiral,
    FedorovChiral,
    FresnelHalfSpace,
    Layer,
    Mirror,
    Multilayer,
    TabulatedDispersion,
    Vacuum,
    fresnel_halfspace,
)

passive_eps = st.builds(complex, st.floats(-20, 20), st.floats(1e-3, 10))
fractions = st.floats(0.0, 4.0).filter(lambda f: abs(f - 1) > 1e-6)


def at(provider, frac, omega=1.0, phi=0.0):
    k = frac * omega
    return provider.matrix(omega, k * np.cos(phi), k * np.sin(phi))


# --- closed-form values -----------------------------------------------------


def test_normal_incidence_eps4():
    R = at(FresnelHalfSpace(4.0), 0.0)
    np.testing.assert_allclose(R, [[-1 / 3, 0], [0, 1 / 3]], atol=1e-15)
    rs, rp = boundary_value_stack(1.0, 0.0, [], (4.0, 1.0))
    assert R[0, 0] == pytest.approx(rs, abs=1e-15)
    assert R[1, 1] == pytest.approx(rp, abs=1e-15)


def test_brewster_zero():
    eps = 2.25
    R = at(FresnelHalfSpace(eps), np.sqrt(eps / (eps + 1)))
    assert abs(R[1, 1]) < 1e-15
    assert abs(R[0, 0]) > 0.1


def test_quarter_wave_antireflection():
    n_sub = 2.0
    n1 = np.sqrt(n_sub)
    omega = 1.3
    stack = Multilayer((Layer(n1**2, np.pi / (2 * n1 * omega)),), n_sub**2)
    R = at(stack, 0.0, omega)
    assert np.abs(R).max() < 1e-15


def test_zero_thickness_layer_is_invisible():
    sub = FresnelHalfSpace(Drude(3.0, 0.1))
    stack = Multilayer((Layer(7.0 + 2j, 0.0, 1.5), Layer(-4 + 0.1j, 0.0)), sub)
    for frac in (0.0, 0.4, 0.95, 1.2, 5.0):
        np.testing.assert_allclose(at(stack, frac), at(sub, frac), atol=1e-15)


def test_layer_of_substrate_material_is_invisible():
    sub = FresnelHalfSpace(3.0 + 0.2j)
    stack = Multilayer((Layer(3.0 + 0.2j, 0.7),), sub)
    for frac in (0.2, 1.5, 3.0):
        np.testing.assert_allclose(at(stack, frac), at(sub, frac), atol=1e-15)


def test_mirror_limit():
    R = at(FresnelHalfSpace(1e8), 0.5)
    np.testing.assert_allclose(R, Mirror().matrix(1.0, 0.5, 0.0), atol=1e-3)


def test_trivial_providers():
    np.testing.assert_array_equal(Vacuum().matrix(1.0, 0.3, 0.1), np.zeros((2, 2)))
    np.testing.assert_array_equal(Mirror().matrix(1.0, 0.3, 0.1), np.diag([-1.0, 1.0]))
    r = [[0.1, 0.2j], [0.3, -0.4]]
    np.testing.assert_array_equal(ConstantReflection(r).matrix(2.0, [0.1, 5.0], 0.0), [r, r])
    with pytest.raises(ValueError):
        ConstantReflection(np.eye(3))


def test_reflect_rejects_grazing_modes():
    with pytest.raises(GrazingModeError):
        FresnelHalfSpace(2.0).reflect(make_mode(1.0, (1.0, 0.0)))


def test_wrapper_function():
    mode = make_mode(1.0, (0.0, 0.3))
    np.testing.assert_array_equal(fresnel_halfspace(4.0, 1.0, mode), FresnelHalfSpace(4.0).reflect(mode))


# --- independent boundary-value oracle ----------------------------------------


layer_st = st.tuples(passive_eps, st.floats(0.5, 3.0), st.floats(0.0, 1.5))


@given(st.lists(layer_st, max_size=3), passive_eps, fractions)
def test_multilayer_matches_boundary_value_solve(layers, sub, frac):
    stack = Multilayer(tuple(Layer(e, d, m) for e, m, d in layers), sub)
    R = at(stack, frac)
    rs, rp = boundary_value_stack(1.0, frac, [(e, m, d) for e, m, d in layers], (sub, 1.0))
    assert R[0, 0] == pytest.approx(rs, abs=1e-9)
    assert R[1, 1] == pytest.approx(rp, abs=1e-9)
    assert R[0, 1] == 0 and R[1, 0] == 0


@given(passive_eps, st.floats(0.5, 3.0), fractions)
def test_fresnel_with_magnetic_response(eps, mu, frac):
    R = at(FresnelHalfSpace(eps, mu), frac)
    rs, rp = boundary_value_stack(1.0, frac, [], (eps, mu))
    assert R[0, 0] == pytest.approx(rs, abs=1e-12)
    assert R[1, 1] == pytest.approx(rp, abs=1e-12)


# --- properties ------------------------------------------------------------------


@given(passive_eps, st.floats(0.0, 0.999), st.floats(0, 2 * np.pi))
def test_passive_fresnel_does_not_amplify(eps, frac, phi):
    R = at(FresnelHalfSpace(eps), frac, phi=phi)
    assert np.linalg.norm(R, 2) <= 1 + 1e-12


@given(passive_eps, fractions, st.floats(0, 2 * np.pi))
def test_fresnel_is_rotation_invariant(eps, frac, phi):
    np.testing.assert_allclose(at(FresnelHalfSpace(eps), frac, phi=phi), at(FresnelHalfSpace(eps), frac), atol=1e-13)


@given(st.floats(0.05, 0.99), st.floats(1.001, 6.0))
def test_transparent_below_unity_is_hermitean_on_ew(eps, frac):
    R = at(FresnelHalfSpace(eps), frac)
    np.testing.assert_allclose(R, R.conj().T, atol=1e-14)


def test_transparent_above_unity_is_hermitean_only_beyond_n():
    # between k0 and n k0 the EW side couples to propagating waves in the medium
    n = 1.5
    R_in = at(FresnelHalfSpace(n**2), 1.2)
    R_out = at(FresnelHalfSpace(n**2), 1.8)
    assert np.abs(R_in - R_in.conj().T).max() > 0.1
    np.testing.assert_allclose(R_out, R_out.conj().T, atol=1e-14)


def test_thick_evanescent_layer_does_not_overflow():
    stack = Multilayer((Layer(2.0 + 0.01j, 1e4),), 9.0)
    R = at(stack, 30.0)
    np.testing.assert_allclose(R, at(FresnelHalfSpace(2.0 + 0.01j), 30.0), atol=1e-14)


def test_multilayer_accepts_plain_substrate():
    assert isinstance(Multilayer((), 4.0).substrate, FresnelHalfSpace)
    np.testing.assert_allclose(at(Multilayer((), 4.0), 0.0), at(FresnelHalfSpace(4.0), 0.0))


def test_negative_thickness_rejected():
    with pytest.raises(ValueError):
        Layer(2.0, -0.1)


# --- chiral media --------------------------------------------------------------


@given(passive_eps, fractions, st.floats(0, 2 * np.pi))
def test_chiral_models_reduce_to_fresnel(eps, frac, phi):
    ref = at(FresnelHalfSpace(eps), frac, phi=phi)
    np.testing.assert_allclose(at(FedorovChiral(eps, 1.0, 0.0), frac, phi=phi), ref, atol=1e-10)
    np.testing.assert_allclose(at(DrudeBornChiral(eps, 0.0), frac, phi=phi), ref, atol=1e-10)


@given(st.floats(1.2, 6.0), st.floats(0.0, 3.0), st.floats(-0.15, 0.15), fractions, st.floats(0, 2 * np.pi))
def test_fedorov_is_reciprocal(eps_r, eps_i, beta, frac, phi):
    p = FedorovChiral(complex(eps_r, eps_i), 1.0, beta)
    R, Rm = at(p, frac, phi=phi), at(p, frac, phi=phi + np.pi)
    assert abs(R[0, 0] - Rm[0, 0]) < 1e-12
    assert abs(R[1, 1] - Rm[1, 1]) < 1e-12
    assert abs(R[0, 1] + Rm[1, 0]) < 1e-12


def test_fedorov_mixes_polarizations():
    R = at(FedorovChiral(2.25 + 0.1j, 1.0, 0.1), 0.5)
    assert abs(R[0, 1]) > 1e-3


@given(st.floats(0.0, 0.999), st.floats(0, 2 * np.pi))
def test_lossless_fedorov_conserves_energy_bound(frac, phi):
    R = at(FedorovChiral(2.25, 1.0, 0.1), frac, phi=phi)
    assert np.linalg.norm(R, 2) <= 1 + 1e-12


def test_lossless_fedorov_is_hermitean_beyond_both_helicities():
    p = FedorovChiral(2.25, 1.0, 0.1)
    k_max = 1.5 / (1 - 0.15)
    R = at(p, 1.05 * k_max)
    np.testing.assert_allclose(R, R.conj().T, atol=1e-13)


def test_fedorov_domain():
    with pytest.raises(ModelDomainError):
        FedorovChiral(4.0, 1.0, 0.6).matrix(1.0, 0.1, 0.0)


def test_drude_born_violates_reciprocity():
    p = DrudeBornChiral(2.25 + 0.1j, 0.2)
    R, Rm = at(p, 0.5), at(p, 0.5, phi=np.pi)
    assert abs(R[0, 1] + Rm[1, 0]) > 1e-3


# --- dispersion ------------------------------------------------------------------


@given(st.floats(0.1, 10), st.floats(0.01, 5), st.floats(1e-3, 20))
def test_drude_formula_and_passivity(wp, gamma, omega):
    eps = Drude(wp, gamma)(omega)
    assert eps == pytest.approx(1 - wp**2 / (omega * (omega + 1j * gamma)), rel=1e-14)
    assert eps.imag >= 0


def test_constant_dispersion_broadcasts():
    assert Constant(2 + 1j)(np.ones(3)).shape == (3,)
    assert Constant(2 + 1j)(1.0) == 2 + 1j


def test_tabulated_dispersion(tmp_path):
    path = tmp_path / "eps.csv"
    path.write_text("# measured\nomega,re,im\n1.0,2.0,0.5\n2.0,4.0,1.5\n")
    eps = TabulatedDispersion.from_csv(path)
    assert eps(1.5) == pytest.approx(3.0 + 1.0j)
    with pytest.raises(TableRangeError):
        eps(2.5)


@pytest.mark.parametrize(
    "text, row",
    [
        ("omega,re\n1,2\n", 1),
        ("omega,re,im\n1,2,3\n2,4\n", 3),
        ("# c\nomega,re,im\n1,2,3\n2,x,1\n", 4),
        ("omega,re,im\n2,2,3\n1,4,1\n", None),
    ],
)
def test_tabulated_dispersion_errors(tmp_path, text, row):
    path = tmp_path / "eps.csv"
    path.write_text(text)
    with pytest.raises(TableParseError) as info:
        TabulatedDispersion.from_csv(path)
    assert info.value.row == row
