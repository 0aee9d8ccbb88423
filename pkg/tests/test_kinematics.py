from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from emfluct.exceptions import GrazingModeError
from emfluct.kinematics import (
    ModeKind,
    in_plane_basis,
    local_to_cartesian,
    longitudinal_wavenumber,
    make_mode,
    polarization_basis,
    sqrt_upper,
    transverse_map,
)

omegas = st.floats(0.05, 20.0)
fractions = st.floats(0.0, 4.0).filter(lambda f: abs(f - 1) > 1e-6)
angles = st.floats(0.0, 2 * np.pi)


def mode_from(omega, frac, phi):
    k = frac * omega
    return make_mode(omega, (k * np.cos(phi), k * np.sin(phi)))


def test_kz_branches():
    assert longitudinal_wavenumber(1.0, 0.6) == pytest.approx(0.8)
    assert longitudinal_wavenumber(1.0, 1.25) == pytest.approx(0.75j)
    assert longitudinal_wavenumber(2.0, 2.0) == 0


def test_kz_is_accurate_next_to_the_light_cone():
    k = 1 - 1e-12
    exact = float(1 - Fraction(k) ** 2) ** 0.5
    assert longitudinal_wavenumber(1.0, k).real == pytest.approx(exact, rel=1e-12)


def test_kz_vectorized_matches_scalar():
    k = np.linspace(0, 3, 31)
    vec = longitudinal_wavenumber(1.5, k)
    assert vec.shape == k.shape
    for ki, v in zip(k, vec):
        assert longitudinal_wavenumber(1.5, ki) == v


def test_sqrt_upper_on_negative_axis():
    assert sqrt_upper(-4.0) == 2j
    assert sqrt_upper(complex(-4.0, -0.0)) == 2j
    assert sqrt_upper(-1 - 1e-300j).imag > 0


@given(omegas, fractions, angles)
def test_branch_signs(omega, frac, phi):
    mode = mode_from(omega, frac, phi)
    assert mode.kz.real >= 0 and mode.kz.imag >= 0
    assert mode.kind is (ModeKind.PW if frac < 1 else ModeKind.EW)
    assert mode.kz**2 + mode.kperp_mag**2 == pytest.approx(omega**2, rel=1e-10, abs=1e-12)


def test_grazing_mode_is_flagged():
    mode = make_mode(1.0, (0.6, 0.8))
    assert mode.kind is ModeKind.GRAZING
    with pytest.raises(GrazingModeError):
        mode.require_off_cone()


def test_nonpositive_frequency_rejected():
    with pytest.raises(ValueError):
        make_mode(0.0, (0.1, 0.0))


def test_normal_incidence_direction_convention():
    e_perp, khat = in_plane_basis(0.0, 0.0)
    np.testing.assert_array_equal(khat, [1.0, 0.0])
    np.testing.assert_array_equal(e_perp, [0.0, 1.0])



def test_subnormal_kperp_gives_unit_basis():
    e_perp, khat = in_plane_basis(5e-324, 5e-324)
    assert khat @ khat == pytest.approx(1.0, abs=1e-15)
    np.testing.assert_allclose(khat, [np.sqrt(0.5)] * 2, rtol=1e-15)
    np.testing.assert_allclose(e_perp, [-np.sqrt(0.5), np.sqrt(0.5)], rtol=1e-15)

@given(omegas, fractions, angles)
def test_polarization_vectors_are_transverse_and_normalized(omega, frac, phi):
    mode = mode_from(omega, frac, phi)
    b = polarization_basis(mode)
    p_in, p_out = b.p_in(omega), b.p_out(omega)
    for k, p in ((b.k_in, p_in), (b.k_out, p_out)):
        assert abs(k @ b.e_perp) < 1e-12 * omega
        assert abs(k @ p) < 1e-12 * omega * max(1, abs(mode.kz))
        # bilinear (not hermitean) norm: (c/omega)^2 k.k = 1 on both bands
        assert p @ p == pytest.approx(1.0, abs=1e-10 * max(1, frac**2))
    np.testing.assert_allclose(np.cross([0, 0, 1.0], b.khat_perp), b.e_perp, atol=1e-14)


@given(omegas, fractions, angles, st.floats(-3.0, 0.0))
def test_transverse_map_projects_the_polarization_vectors(omega, frac, phi, w):
    mode = mode_from(omega, frac, phi)
    b = polarization_basis(mode)
    tm = transverse_map(mode, w)
    proj = np.stack([b.e_perp, b.khat_perp])
    ph_in, ph_out = np.exp(1j * mode.kz * w), np.exp(-1j * mode.kz * w)
    cols_in = np.stack([b.e_perp, b.p_in(omega)], axis=1)
    cols_out = np.stack([b.e_perp, b.p_out(omega)], axis=1)
    np.testing.assert_allclose(tm.w_in, proj @ cols_in * ph_in, atol=1e-10 * max(1, abs(ph_in) * frac))
    np.testing.assert_allclose(tm.w_out, proj @ cols_out * ph_out, atol=1e-10 * max(1, abs(ph_out) * frac))


def test_transverse_map_domain():
    mode = make_mode(1.0, (0.3, 0.0))
    transverse_map(mode, 0.0)
    with pytest.raises(ValueError):
        transverse_map(mode, 0.1)


def test_local_to_cartesian_is_orthogonal():
    U = local_to_cartesian(np.array([0.3, -1.0, 0.0]), np.array([0.4, 2.0, 0.0]))
    np.testing.assert_allclose(U @ np.swapaxes(U, -1, -2), np.broadcast_to(np.eye(2), U.shape), atol=1e-15)
    np.testing.assert_allclose(np.linalg.det(U), -1.0)
