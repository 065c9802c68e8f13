import numpy as np
import pytest

import hylos as hy


def test_effective_G_kappa(quartic_ns, dp_nkg, sat_nkg):
    assert hy.effective_G(quartic_ns, 0.5).kappa == pytest.approx(1.0)
    assert hy.effective_G(dp_nkg, 1.0).kappa == pytest.approx(1.0)
    assert hy.effective_G(sat_nkg, 0.8).kappa == pytest.approx(0.6)
    with pytest.raises(ValueError):
        hy.effective_G(quartic_ns, 1.0)  # omega at the rest energy: no decay


def test_effective_G_values(quartic_ns):
    geff = hy.effective_G(quartic_ns, 0.5)
    # G(s) = s^2/2 - s^4/4 after the omega shift
    assert geff.sfun(np.sqrt(2.0)) == pytest.approx(0.0, abs=1e-14)
    assert geff.sderiv(1.0) == pytest.approx(0.0, abs=1e-14)  # G' = s - s^3
    s = np.linspace(0.0, 2.0, 9)
    assert np.allclose(geff.fun(s), 0.5 * s**2 - 0.25 * s**4, atol=1e-14)


def test_admissible_frequencies(quartic_ns, dp_nkg, sat_nkg):
    lo, hi, open_below = hy.admissible_frequencies(quartic_ns)
    assert lo is None and open_below
    assert hi == pytest.approx(1.0)
    lo, hi, open_below = hy.admissible_frequencies(dp_nkg)
    assert lo == pytest.approx(0.3535533905932738, abs=1e-6)
    assert hi == pytest.approx(np.sqrt(2.0))
    assert not open_below
    lo, hi, _ = hy.admissible_frequencies(sat_nkg)
    assert lo == pytest.approx(0.3899257551688944, abs=1e-6)
    assert hi == pytest.approx(1.0)


def test_inadmissible_omega_raises(quartic_ns, dp_nkg):
    with pytest.raises(ValueError):
        hy.find_ground_state(quartic_ns, omega=1.5, dim=1)
    with pytest.raises(ValueError):
        hy.find_ground_state(dp_nkg, omega=0.2, dim=1)  # below the lower edge


def test_shoot_classification(quartic_ns):
    geff = hy.effective_G(quartic_ns, 0.5)
    # below the zero of G: friction can only undershoot
    kind, r, u, w = hy.shoot(geff, 0.05, dim=1)
    assert kind == "undershoot"
    # far beyond the outer crest: escapes to overshoot
    kind, r, u, w = hy.shoot(geff, 10.0, dim=1)
    assert kind == "overshoot"


def test_ground_state_quartic_1d(quartic_profile):
    p = quartic_profile
    assert p.u0 == pytest.approx(np.sqrt(2.0), abs=1e-9)
    assert p.kappa == pytest.approx(1.0)
    exact = np.sqrt(2.0) / np.cosh(p.r)
    assert np.max(np.abs(p.u - exact)) < 1e-5
    assert p.sigma == pytest.approx(4.0, abs=1e-7)
    assert p.u[0] == p.u0
    assert np.all(np.diff(p.u) <= 0)  # ground state has no nodes


def test_ground_state_nkg_1d(dp_profile):
    # zero of G: 30 - 15 s^2 + s^4 = 0, lower root
    assert dp_profile.u0 == pytest.approx(1.5415980724625342, abs=1e-9)
    assert dp_profile.equation == "nkg"
    assert dp_profile.sigma > 0


def test_ground_state_3d_peaks(quartic_ns):
    # step-converged shooting values (stable under h_r refinement)
    p = hy.find_ground_state(quartic_ns, omega=0.5, dim=3)
    assert p.u0 == pytest.approx(4.337387679979437, abs=1e-6)
    p3 = hy.find_ground_state(
        hy.power_focusing(a=2, p=3, c=1, equation="ns"), omega=0.5, dim=3)
    assert p3.u0 == pytest.approx(4.191682954442565, abs=1e-6)


def test_dilation_identity(quartic_ns, dp_nkg, quartic_profile, dp_profile):
    assert abs(hy.derrick_pohozaev_residual(quartic_profile, quartic_ns)) < 1e-8
    assert abs(hy.derrick_pohozaev_residual(dp_profile, dp_nkg)) < 1e-8
    p = hy.find_ground_state(dp_nkg, omega=1.0, dim=3)
    assert abs(hy.derrick_pohozaev_residual(p, dp_nkg)) < 1e-8


def test_profile_charge_matches_grid(quartic_profile, line_grid):
    state = hy.standing_wave(quartic_profile, line_grid)
    assert hy.hylenic_charge(state) == pytest.approx(quartic_profile.sigma, rel=1e-8)


def test_profile_to_field(quartic_profile, line_grid):
    fld = hy.profile_to_field(quartic_profile, line_grid)
    x = line_grid.axis(0)
    assert np.max(np.abs(fld.values.real - np.sqrt(2.0) / np.cosh(x))) < 1e-5
    # stretch contracts the argument axis by axis
    half = hy.profile_to_field(quartic_profile, line_grid, stretch=[2.0])
    inner = np.abs(x) < 8
    assert np.max(np.abs(half.values.real[inner]
                         - np.sqrt(2.0) / np.cosh(2.0 * x[inner]))) < 1e-5
    off = hy.profile_to_field(quartic_profile, line_grid, center=[5.0])
    j = int(np.argmax(np.abs(off.values)))
    assert abs(x[j] - 5.0) < line_grid.spacing[0]


def test_profile_tail_is_clean(quartic_profile, dp_profile):
    for p in (quartic_profile, dp_profile):
        assert p.u[-1] >= 0.0
        assert p.u[-1] < 1e-6 * p.u0
        assert p.r_tail > 5.0


def test_profile_roundtrip(tmp_path, dp_profile):
    path = tmp_path / "profile.csv"
    hy.save_profile(path, dp_profile)
    back = hy.load_profile(path)
    assert back.dim == dp_profile.dim
    assert back.omega == dp_profile.omega
    assert back.equation == "nkg"
    assert np.array_equal(back.r, dp_profile.r)
    assert np.array_equal(back.u, dp_profile.u)
    assert back.u0 == pytest.approx(dp_profile.u0, rel=1e-15)
    assert back.sigma == pytest.approx(dp_profile.sigma, rel=1e-15)


def test_spline_boundary(quartic_profile):
    spl = quartic_profile.spline()
    assert spl(0.0) == pytest.approx(quartic_profile.u0, rel=1e-12)
    assert spl(0.0, 1) == pytest.approx(0.0, abs=1e-12)  # even extension
