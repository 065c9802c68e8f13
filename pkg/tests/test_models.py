import numpy as np
import pytest

import hylos as hy
from hylos.models import FAMILIES, EQUATIONS


def test_registry():
    assert set(FAMILIES) == {"power_focusing", "double_power", "saturating_intro"}
    assert set(EQUATIONS) == {"ns", "nkg"}


def test_factory_validation():
    with pytest.raises(ValueError):
        hy.power_focusing(a=2, p=2, c=1)  # p must exceed 2
    with pytest.raises(ValueError):
        hy.power_focusing(a=2, p=4, c=0)
    with pytest.raises(ValueError):
        hy.power_focusing(a=-1, p=4, c=1)
    with pytest.raises(ValueError):
        hy.double_power(a=2, p=4, q=4, c_p=1, c_q=1)  # q must exceed p
    with pytest.raises(ValueError):
        hy.power_focusing(a=2, p=4, c=1, equation="heat")


def test_rest_energy(quartic_ns, dp_nkg, sat_nkg):
    assert hy.rest_energy(quartic_ns) == pytest.approx(1.0)
    assert hy.rest_energy(dp_nkg) == pytest.approx(np.sqrt(2.0))
    assert hy.rest_energy(sat_nkg) == pytest.approx(1.0)


def test_eval_W_closed_values(quartic_ns, dp_nkg, sat_nkg):
    # quartic: W(s) = s^2 - s^4/4 vanishes at s = 2
    assert hy.eval_W(quartic_ns, 2.0) == pytest.approx(0.0, abs=1e-14)
    assert hy.eval_W(quartic_ns, 1.0) == pytest.approx(0.75)
    # double power at s = 1: 1 - 1/4 + 0.1/6
    assert hy.eval_W(dp_nkg, 1.0) == pytest.approx(0.75 + 0.1 / 6)
    assert hy.eval_N(dp_nkg, 1.0) == pytest.approx(-0.25 + 0.1 / 6)
    # saturating: W(2) = 2 - ln 3 by quadrature of s/(1+s)
    assert hy.eval_W(sat_nkg, 2.0) == pytest.approx(0.9013877113318902, abs=1e-14)
    assert hy.nprime_over_s(sat_nkg, 2.0) == pytest.approx(-2.0 / 3.0, abs=1e-14)


def test_nprime_over_s_regular_at_zero(quartic_ns, dp_nkg, sat_nkg):
    for model in (quartic_ns, dp_nkg, sat_nkg):
        assert hy.nprime_over_s(model, 0.0) == pytest.approx(0.0, abs=1e-14)
        arr = hy.nprime_over_s(model, np.array([0.0, 0.5, 1.0]))
        assert arr.shape == (3,)
        assert np.all(np.isfinite(arr))


def test_Wprime_is_W_derivative(quartic_ns, dp_nkg, sat_nkg):
    rng = np.random.default_rng(11)
    eps = 1e-6
    for model in (quartic_ns, dp_nkg, sat_nkg):
        for s in rng.uniform(0.05, 3.0, size=25):
            fd = (hy.eval_W(model, s + eps) - hy.eval_W(model, s - eps)) / (2 * eps)
            assert hy.eval_Wprime_real(model, s) == pytest.approx(fd, abs=5e-8)


def test_Wprime_complex_gauge_equivariant(quartic_ns, sat_nkg):
    # W'(e^{i t} z) = e^{i t} W'(z): the interaction sees only |z|
    rng = np.random.default_rng(21)
    for model in (quartic_ns, sat_nkg):
        for _ in range(100):
            z = rng.standard_normal() + 1j * rng.standard_normal()
            t = rng.uniform(0, 2 * np.pi)
            lhs = hy.eval_Wprime_complex(model, np.exp(1j * t) * z)
            rhs = np.exp(1j * t) * hy.eval_Wprime_complex(model, z)
            assert abs(lhs - rhs) < 1e-12 * max(1.0, abs(rhs))


def test_Wprime_complex_matches_real_on_axis(dp_nkg):
    s = np.linspace(0.1, 2.5, 7)
    assert np.allclose(hy.eval_Wprime_complex(dp_nkg, s + 0j).real,
                       hy.eval_Wprime_real(dp_nkg, s), atol=1e-13)


def test_hylomorphy_report(quartic_ns, dp_nkg, sat_nkg):
    rep = hy.hylomorphy_report(quartic_ns)
    assert rep["hylomorphic"]
    assert rep["open_at_smax"]  # pure focusing keeps falling
    rep = hy.hylomorphy_report(dp_nkg)
    assert rep["hylomorphic"]
    assert not rep["open_at_smax"]
    # interior minimum of 2W/s^2 at s^2 = 7.5 with value 1/8
    assert rep["margin_argmin"] == pytest.approx(np.sqrt(7.5), abs=1e-3)
    assert rep["margin_min"] == pytest.approx(0.125, abs=1e-6)
    assert hy.hylomorphy_report(sat_nkg)["hylomorphic"]


def test_potentials(line_grid):
    zero = hy.zero_potential()
    assert np.all(zero.on_grid(line_grid) == 0.0)
    harm = hy.harmonic_potential(2.0)
    x = line_grid.axis(0)
    assert np.allclose(harm.on_grid(line_grid), x**2)
    assert np.allclose(harm.gradient_on_grid(line_grid)[0], 2.0 * x)
    with pytest.raises(ValueError):
        hy.harmonic_potential(-1.0)
    with pytest.raises(ValueError):
        hy.ExternalPotential("magnetic")


def test_sampled_potential_gradient():
    g = hy.make_grid(1, 2 * np.pi, 256)
    x = g.axis(0)
    pot = hy.sampled_potential(np.sin(x))
    grad = pot.gradient_on_grid(g)[0]
    # centered differences on a periodic sample: O(dx^2)
    assert np.max(np.abs(grad - np.cos(x))) < 1e-3
    with pytest.raises(ValueError):
        hy.sampled_potential(np.zeros(10)).on_grid(g)


def test_harmonic_potential_2d():
    g = hy.make_grid(2, 8.0, 32)
    X, Y = g.coords()
    assert np.allclose(hy.harmonic_potential(1.0).on_grid(g), 0.5 * (X**2 + Y**2))
