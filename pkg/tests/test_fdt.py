import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from emfluct.correlators import ThermalState
from emfluct.exceptions import GrazingModeError
from emfluct.fdt import (
    fdt_residual_modewise,
    fdt_residual_realspace,
    kernel_integrand,
    kernel_local,
    realspace_sides,
    retarded_kernel,
    vacuum_kernel,
)
from emfluct.kinematics import make_mode
from emfluct.materials import (
    Drude,
    DrudeBornChiral,
    FedorovChiral,
    FresnelHalfSpace,
    Layer,
    Mirror,
    Multilayer,
    Vacuum,
)

PROVIDERS = {
    "vacuum": Vacuum(),
    "mirror": Mirror(),
    "drude": FresnelHalfSpace(Drude(3.0, 0.1)),
    "multilayer": Multilayer((Layer(2.0 + 0.05j, 0.4),), FresnelHalfSpace(Drude(2.0, 0.3))),
    "fedorov": FedorovChiral(2.25 + 0.1j, 1.0, 0.1),
    "fedorov_transparent": FedorovChiral(0.64, 1.0, 0.625),
    "drude_born": DrudeBornChiral(2.25 + 0.1j, 0.2),
}
fractions = st.floats(0.0, 4.0).filter(lambda f: abs(f - 1) > 1e-6)


def G3(k, r):
    """Free-space dipole field tensor (Gaussian units)."""
    R = np.linalg.norm(r)
    n = r / R
    nn = np.outer(n, n)
    eye = np.eye(3)
    return np.exp(1j * k * R) * (k**2 * (eye - nn) / R + (3 * nn - eye) * (1 / R**3 - 1j * k / R**2))


@pytest.mark.parametrize("name", sorted(PROVIDERS))
@given(
    omega=st.floats(0.2, 1.5),
    frac=fractions,
    phi=st.floats(0, 2 * np.pi),
    w=st.floats(-3.0, -0.01),
    temp=st.sampled_from([0.0, 0.5, 3.0]),
)
def test_modewise_identity(name, omega, frac, phi, w, temp):
    k = frac * omega
    mode = make_mode(omega, (k * np.cos(phi), k * np.sin(phi)))
    assert fdt_residual_modewise(PROVIDERS[name], mode, ThermalState(temp), w) < 1e-10


def test_corrupted_correlator_is_caught():
    mode = make_mode(1.0, (1.6, 0.2))
    assert fdt_residual_modewise(PROVIDERS["drude"], mode, ThermalState(1.0), -0.3, corrupt=True) > 0.1


def test_modewise_domain_errors():
    with pytest.raises(ValueError):
        fdt_residual_modewise(Vacuum(), make_mode(1.0, (0.2, 0.0)), ThermalState(1.0), 0.0)
    with pytest.raises(GrazingModeError):
        fdt_residual_modewise(Vacuum(), make_mode(1.0, (1.0, 0.0)), ThermalState(1.0), -1.0)


def test_kernel_parts_add_up():
    R = np.array([[0.2 + 0.1j, 0.05], [-0.05, 0.3j]])
    kz = 0.4 + 0j
    full = kernel_local(R, kz, 1.0, 1.0, -0.7)
    parts = kernel_local(R, kz, 1.0, 1.0, -0.7, "vacuum") + kernel_local(R, kz, 1.0, 1.0, -0.7, "reflected")
    np.testing.assert_allclose(full, parts, atol=1e-15)
    with pytest.raises(ValueError):
        kernel_local(R, kz, 1.0, 1.0, -0.7, "bogus")


def test_kernel_integrand_is_reciprocal_for_reciprocal_providers():
    p = PROVIDERS["fedorov"]
    a = kernel_integrand(p, make_mode(1.0, (0.3, 1.1)), -0.5)
    b = kernel_integrand(p, make_mode(1.0, (-0.3, -1.1)), -0.5)
    np.testing.assert_allclose(a, b.T, atol=1e-13)


def test_vacuum_kernel_closed_form():
    dx = np.array([0.7, -0.2])
    K = vacuum_kernel(1.3, dx)
    np.testing.assert_allclose(K, K.T)
    np.testing.assert_allclose(K, (1j / 1.3) * G3(1.3, np.append(dx, 0.0))[:2, :2])
    with pytest.raises(ValueError):
        vacuum_kernel(1.0, (0.0, 0.0))


@pytest.mark.parametrize("dx", [(0.4, 0.0), (1.1, -0.8), (0.0, 2.5)])
def test_propagating_vacuum_kernel_is_the_dissipative_part(dx):
    res = retarded_kernel(Vacuum(), 1.3, dx, -0.5, include_reactive_vacuum=False)
    np.testing.assert_allclose(res.pw, vacuum_kernel(1.3, dx).real, atol=1e-11)
    np.testing.assert_array_equal(res.ew_reflected, 0)
    full = retarded_kernel(Vacuum(), 1.3, dx, -0.5)
    np.testing.assert_allclose(full.t, vacuum_kernel(1.3, dx), atol=1e-11)


def test_radiation_reaction_at_the_source():
    omega = 1.3
    res = retarded_kernel(Vacuum(), omega, (0.0, 0.0), -0.4)
    assert res.vacuum_reactive is None
    np.testing.assert_allclose(res.t, -(2 / 3) * omega**2 * np.eye(2), atol=1e-12)


@pytest.mark.parametrize("dx, w", [((0.0, 0.0), -0.4), ((0.5, -0.3), -0.4), ((1.2, 0.9), -0.15)])
def test_mirror_reflects_like_an_image_dipole(dx, w):
    omega = 1.3
    mirror = retarded_kernel(Mirror(), omega, dx, w, include_reactive_vacuum=False)
    vac = retarded_kernel(Vacuum(), omega, dx, w, include_reactive_vacuum=False)
    image = -(1j / omega) * G3(omega, np.array([dx[0], dx[1], 2 * w]))[:2, :2]
    np.testing.assert_allclose(mirror.t - vac.t, image, atol=1e-9 * np.abs(image).max())


@pytest.mark.parametrize("name", ["vacuum", "mirror", "drude", "fedorov"])
def test_kernel_reciprocity(name):
    p = PROVIDERS[name]
    a = retarded_kernel(p, 1.0, (0.6, -0.4), -0.5)
    b = retarded_kernel(p, 1.0, (-0.6, 0.4), -0.5)
    assert np.abs(a.t - b.t.T).max() <= max(10 * (a.error + b.error), 1e-13)


def test_drude_born_kernel_is_not_reciprocal():
    p = PROVIDERS["drude_born"]
    a = retarded_kernel(p, 1.0, (0.6, -0.4), -0.5)
    b = retarded_kernel(p, 1.0, (-0.6, 0.4), -0.5)
    assert np.abs(a.t - b.t.T).max() > 1e-3


def test_kernel_requires_vacuum_side():
    with pytest.raises(ValueError):
        retarded_kernel(Vacuum(), 1.0, (0.1, 0.0), 0.2)


@pytest.mark.parametrize(
    "name, dx, w",
    [("mirror", (0.0, 0.0), -0.3), ("drude", (0.4, -0.2), -0.5), ("fedorov", (1.0, 0.5), -0.8)],
)
def test_realspace_identity(name, dx, w):
    assert fdt_residual_realspace(PROVIDERS[name], 1.0, dx, w, ThermalState(0.5)) < 1e-8


def test_realspace_sides_are_hermitean_at_zero_separation():
    lhs, rhs, err = realspace_sides(PROVIDERS["drude"], 1.0, (0.0, 0.0), -0.3, ThermalState(0.0))
    np.testing.assert_allclose(lhs, lhs.conj().T, atol=1e-12 * np.abs(lhs).max())
    assert err < 1e-8 * np.abs(lhs).max()
