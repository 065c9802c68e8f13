import numpy as np
import pytest

import hylos as hy
from hylos.grid import ComplexField


def _band_limited(grid, seed, kmax=6):
    # random smooth periodic field from a handful of Fourier modes
    rng = np.random.default_rng(seed)
    vals = np.zeros(grid.counts, dtype=complex)
    for _ in range(8):
        phase = np.zeros(grid.counts)
        for ax in range(grid.dim):
            n = rng.integers(-kmax, kmax + 1)
            k1 = 2 * np.pi * n / grid.lengths[ax]
            phase = phase + k1 * grid.coords()[ax]
        amp = rng.standard_normal() + 1j * rng.standard_normal()
        vals = vals + amp * np.exp(1j * phase)
    return ComplexField(grid, vals)


def test_axis_layout():
    g = hy.make_grid(1, 10.0, 5)
    assert np.allclose(g.axis(0), [-5.0, -3.0, -1.0, 1.0, 3.0])
    assert g.spacing[0] == pytest.approx(2.0)
    assert g.volume_element == pytest.approx(2.0)


def test_make_grid_broadcast_and_validation():
    g = hy.make_grid(3, 12.0, 32)
    assert tuple(g.lengths) == (12.0, 12.0, 12.0)
    assert tuple(g.counts) == (32, 32, 32)
    g = hy.make_grid(2, (8.0, 4.0), (16, 8))
    assert g.volume_element == pytest.approx(0.25)
    with pytest.raises(ValueError):
        hy.make_grid(4, 1.0, 8)
    with pytest.raises(ValueError):
        hy.make_grid(1, 1.0, 2)
    with pytest.raises(ValueError):
        hy.make_grid(1, -1.0, 16)


def test_field_validation(line_grid):
    with pytest.raises(ValueError):
        ComplexField(line_grid, np.zeros(7, dtype=complex))
    f = hy.field_from_function(line_grid, lambda x: np.exp(-x**2))
    assert f.values.dtype == np.complex128


def test_integrate_plane_wave_modulus():
    g = hy.make_grid(1, 2 * np.pi, 64)
    psi = hy.field_from_function(g, lambda x: np.exp(1j * x))
    assert hy.integrate(np.abs(psi.values) ** 2, g) == pytest.approx(2 * np.pi, abs=1e-13)


def test_integrate_gaussian_2d():
    g = hy.make_grid(2, 30.0, 128)
    X, Y = g.coords()
    val = hy.integrate(np.exp(-(X**2 + Y**2)), g)
    assert val == pytest.approx(np.pi, abs=1e-12)


def test_integrate_rejects_nonfinite(line_grid):
    bad = np.zeros(1024)
    bad[5] = np.inf
    with pytest.raises(ValueError):
        hy.integrate(bad, line_grid)


def test_gradient_laplacian_plane_wave():
    g = hy.make_grid(1, 2 * np.pi, 64)
    k = 3.0
    psi = hy.field_from_function(g, lambda x: np.exp(1j * k * x))
    gx = hy.gradient(psi)[0]
    assert np.max(np.abs(gx.values - 1j * k * psi.values)) < 1e-12
    lap = hy.laplacian(psi)
    assert np.max(np.abs(lap.values + k * k * psi.values)) < 1e-11


def test_laplacian_equals_div_grad():
    g = hy.make_grid(2, 16.0, 64)
    f = _band_limited(g, seed=4)
    lap = hy.laplacian(f)
    grads = hy.gradient(f)
    div = hy.divergence([gr.values for gr in grads], g)
    assert np.max(np.abs(lap.values - div)) < 1e-10


def test_divergence_theorem_periodic():
    # net flux out of a periodic box vanishes
    for seed in range(5):
        g = hy.make_grid(2, 12.0, 48)
        vec = [_band_limited(g, seed=10 * seed + ax).values for ax in range(2)]
        total = hy.integrate(np.real(hy.divergence(vec, g)), g)
        assert abs(total) < 1e-10


def test_polar_decompose_recompose(line_grid):
    x = line_grid.axis(0)
    vals = (1.0 / np.cosh(x)) * np.exp(1j * (0.4 * x + 0.2))
    f = ComplexField(line_grid, vals.astype(complex))
    pol = hy.polar_decompose(f)
    assert np.all(pol.u >= 0)
    core = pol.u > 1e-8
    recomposed = pol.u * np.exp(1j * pol.S)
    assert np.max(np.abs(recomposed[core] - vals[core])) < 1e-10


def test_polar_decompose_borrows_phase(line_grid):
    vals = (1.0 / np.cosh(line_grid.axis(0))) * np.exp(1j * 0.7)
    vals[:100] = 0.0
    pol = hy.polar_decompose(ComplexField(line_grid, vals.astype(complex)))
    assert np.all(np.isfinite(pol.S))
    # the dead zone inherits the nearest live phase
    assert pol.S[0] == pytest.approx(0.7, abs=1e-9)
    with pytest.raises(ValueError):
        hy.polar_decompose(ComplexField(line_grid, np.zeros(1024, complex)))


def test_boundary_leakage(line_grid):
    x = line_grid.axis(0)
    centered = ComplexField(line_grid, np.exp(-x**2).astype(complex))
    shifted = ComplexField(line_grid, np.exp(-((x + 18.0) ** 2)).astype(complex))
    assert hy.boundary_leakage(centered) < 1e-15
    assert hy.boundary_leakage(shifted) > hy.boundary_leakage(centered)
    # leakage is the seam amplitude over the peak
    expected = np.abs(shifted.values[0]) / np.abs(shifted.values).max()
    assert hy.boundary_leakage(shifted) == pytest.approx(expected, rel=1e-12)


def test_field_roundtrip_1d(tmp_path, line_grid):
    rng = np.random.default_rng(3)
    vals = rng.standard_normal(1024) + 1j * rng.standard_normal(1024)
    f = ComplexField(line_grid, vals)
    path = tmp_path / "field.csv"
    hy.save_field(path, f)
    f2 = hy.load_field(path)
    assert f2.grid.dim == 1
    assert np.array_equal(f2.grid.counts, line_grid.counts)
    assert np.allclose(f2.grid.lengths, line_grid.lengths)
    assert np.array_equal(f2.values, vals)  # bit exact through %.17g


def test_field_roundtrip_2d(tmp_path):
    g = hy.make_grid(2, (8.0, 6.0), (16, 12))
    rng = np.random.default_rng(9)
    vals = rng.standard_normal((16, 12)) + 1j * rng.standard_normal((16, 12))
    path = tmp_path / "field2.csv"
    hy.save_field(path, ComplexField(g, vals))
    f2 = hy.load_field(path)
    assert np.array_equal(f2.values, vals)
    assert np.allclose(f2.grid.lengths, (8.0, 6.0))
