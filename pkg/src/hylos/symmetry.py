"""Symmetry transforms: standing waves, Galilean and Lorentz boosts.

The NS equation is Galilei covariant: a profile translated and dressed
with the plane phase exp(i v.x) travels at velocity v, gaining momentum
H v and kinetic energy |v|^2 H / 2 on top of a real profile.

The NKG equation is Lorentz covariant: a standing wave u(x) e^{-i w0 t}
boosted along axis 1 with speed |v| < 1 contracts by gamma in that
direction and carries the de Broglie phase with

    omega = gamma * w0,    k = (gamma * w0 * v, 0, 0),

so the comoving clock runs at w0/gamma.  Only the initial data (psi,
psi_t) at t = 0 are constructed here; the evolution module takes over
from there.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import ComplexField
from .groundstate import profile_to_field
from .models import rest_energy
from .observables import KGState, NSState


@dataclass(frozen=True)
class BoostSpec:
    """Boost request: velocity vector (NS) or axis-1 speed (NKG),
    center shift and global phase."""

    v: object
    center: object = None
    theta: float = 0.0


def gamma(v):
    """Lorentz factor 1/sqrt(1 - v^2) for |v| < 1."""
    v = float(v)
    if abs(v) >= 1.0:
        raise ValueError("boost speed must satisfy |v| < 1")
    return 1.0 / np.sqrt(1.0 - v * v)


def _translate(field, shift):
    """Periodic translation psi(x) -> psi(x - shift), spectral (exact
    for band-limited data), so off-grid shifts are allowed."""
    shift = np.atleast_1d(np.asarray(shift, dtype=float))
    fhat = np.fft.fftn(field.values)
    for k, s in zip(field.grid.wavenumbers(), shift):
        if s != 0.0:
            fhat = fhat * np.exp(-1j * k * s)
    return ComplexField(field.grid, np.fft.ifftn(fhat))


def standing_wave(profile, grid, center=None, theta=0.0):
    """Embed a ground state as a standing wave at t = 0.

    NS profiles give psi = u e^{i theta}; NKG profiles also carry
    psi_t = -i omega u e^{i theta}, the phase rotation at rest.
    """
    base = profile_to_field(profile, grid, center=center)
    phase = np.exp(1j * theta)
    psi = ComplexField(grid, base.values * phase)
    if profile.equation == "ns":
        return NSState(t=0.0, psi=psi)
    psi_t = ComplexField(grid, -1j * profile.omega * base.values * phase)
    return KGState(t=0.0, psi=psi, psi_t=psi_t)


def galilean_boost(state, v, x0=None):
    """NS boost at t = 0: psi(x) -> psi(x - x0) exp(i v.x).

    On a real profile this adds momentum H v and energy |v|^2 H / 2.
    """
    if not isinstance(state, NSState):
        raise ValueError("the Galilean boost acts on NS states")
    grid = state.grid
    v = np.broadcast_to(np.asarray(v, dtype=float), (grid.dim,))
    psi = state.psi
    if x0 is not None:
        psi = _translate(psi, x0)
    phase = np.zeros(grid.counts)
    for vi, c in zip(v, grid.coords()):
        phase = phase + vi * c
    return NSState(t=state.t, psi=ComplexField(grid, psi.values * np.exp(1j * phase)))


def galilean_boost_at_time(state, v):
    """Full Galilei transform of a snapshot at its own time t:
    psi(t, x) -> psi(t, x - v t) exp(i (v.x - |v|^2 t / 2)).

    Used to state covariance of the evolution; at t = 0 it reduces to
    galilean_boost with x0 = 0.
    """
    if not isinstance(state, NSState):
        raise ValueError("the Galilean boost acts on NS states")
    grid = state.grid
    v = np.broadcast_to(np.asarray(v, dtype=float), (grid.dim,))
    psi = _translate(state.psi, v * state.t)
    phase = np.zeros(grid.counts)
    for vi, c in zip(v, grid.coords()):
        phase = phase + vi * c
    phase = phase - 0.5 * float(v @ v) * state.t
    return NSState(t=state.t, psi=ComplexField(grid, psi.values * np.exp(1j * phase)))


def lorentz_boost_initialdata(profile, grid, v, center=None, theta=0.0):
    """NKG solitary wave moving along axis 1 at speed v, data at t = 0.

        psi(0, x)   = u(gA(x1 - c1), x2 - c2, ...) e^{i (k.x + theta)}
        psi_t(0, x) = [-gA v d1u - i omega u] e^{i (k.x + theta)}

    with gA = gamma(v), omega = gA w0, k1 = gA w0 v.  The derivative
    d1u is taken on the contracted argument by the chain rule from the
    radial table.
    """
    if profile.equation != "nkg":
        raise ValueError("the Lorentz boost acts on NKG profiles")
    g = gamma(v)
    if center is None:
        center = np.zeros(grid.dim)
    center = np.asarray(center, dtype=float)
    omega0 = profile.omega
    omega = g * omega0
    kvec = np.zeros(grid.dim)
    kvec[0] = g * omega0 * v

    stretch = np.ones(grid.dim)
    stretch[0] = g
    coords = grid.coords()
    rsq = np.zeros(grid.counts)
    for i, c in enumerate(coords):
        rsq += (stretch[i] * (c - center[i])) ** 2
    rr = np.sqrt(rsq)
    spline = profile.spline()
    inside = rr <= profile.r[-1]
    rcl = np.minimum(rr, profile.r[-1])
    uvals = np.where(inside, spline(rcl), 0.0)
    duvals = np.where(inside, spline(rcl, 1), 0.0)

    # d/dt of u(g(x1 - v t - c1), ...) at t = 0: -g v * u'(r) * g dx1 / r
    y1 = g * (coords[0] - center[0])
    with np.errstate(invalid="ignore", divide="ignore"):
        slope = np.where(rr > 0.0, duvals * y1 / rr, 0.0)
    travel = -g * v * slope

    phase = np.full(grid.counts, theta)
    for ki, c in zip(kvec, coords):
        if ki != 0.0:
            phase = phase + ki * c
    carrier = np.exp(1j * phase)
    psi = ComplexField(grid, uvals * carrier)
    psi_t = ComplexField(grid, (travel - 1j * omega * uvals) * carrier)
    return KGState(t=0.0, psi=psi, psi_t=psi_t), {"omega": float(omega), "k": kvec}


def gauge_shift_frequency(state, model, t):
    """Remove the rest-energy phase: psi -> psi exp(-i E0 t).

    Evolving with the quadratic part of W switched off and then applying
    this shift reproduces the full evolution (NS), since the a/2 term
    only spins a global phase.
    """
    E0 = rest_energy(model)
    factor = np.exp(-1j * E0 * t)
    if isinstance(state, NSState):
        return NSState(t=state.t, psi=ComplexField(state.grid, state.psi.values * factor))
    return KGState(
        t=state.t,
        psi=ComplexField(state.grid, state.psi.values * factor),
        psi_t=ComplexField(state.grid, state.psi_t.values * factor),
    )
