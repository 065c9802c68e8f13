"""First integrals and hylomorphy diagnostics.

Conventions (checked against plane waves and standing waves in the
tests):

  NS state  psi:
      E = int [ |grad psi|^2 / 2 + W(|psi|) + V |psi|^2 ]
      H = int |psi|^2
      P = Im int grad(psi) conj(psi)
      M = Im int (x cross grad psi) conj(psi)
      barycenter q = int x |psi|^2 / H,  dq/dt = P/H

  NKG state (psi, psi_t):
      E = int [ |psi_t|^2 / 2 + |grad psi|^2 / 2 + W(|psi|) ]
      H = Im int psi_t conj(psi)          (signed: u e^{-i w t} carries -w sigma)
      P = -Re int psi_t conj(grad psi)
      M = Re int (x cross grad psi) conj(psi_t)
      ergocenter Q = int x rho_E / E,  dQ/dt = P/E

The hylomorphy ratio is Lambda = E/|H|; matter with Lambda below the
rest energy cannot fully disperse, and the binding energy density
beta = [E0 |rho_H| - rho_E]^+ marks where it is bound.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import ComplexField, gradient, integrate, boundary_leakage
from .models import eval_W, rest_energy


@dataclass
class NSState:
    """Schrodinger matter field at one instant."""

    t: float
    psi: ComplexField

    @property
    def grid(self):
        return self.psi.grid


@dataclass
class KGState:
    """Klein-Gordon field and its time derivative at one instant."""

    t: float
    psi: ComplexField
    psi_t: ComplexField

    def __post_init__(self):
        if self.psi.grid != self.psi_t.grid:
            raise ValueError("psi and psi_t live on different grids")

    @property
    def grid(self):
        return self.psi.grid


def _grad_sq(field):
    out = np.zeros(field.grid.counts)
    for g in gradient(field):
        out += np.abs(g.values) ** 2
    return out


def energy_density_ns(state, model, potential=None):
    psi = state.psi
    dens = 0.5 * _grad_sq(psi) + eval_W(model, np.abs(psi.values))
    if potential is not None and potential.kind != "zero":
        dens = dens + potential.on_grid(psi.grid) * np.abs(psi.values) ** 2
    return dens


def energy_density_nkg(state, model):
    dens = 0.5 * np.abs(state.psi_t.values) ** 2 + 0.5 * _grad_sq(state.psi)
    return dens + eval_W(model, np.abs(state.psi.values))


def charge_density(state):
    """Hylenic charge density: |psi|^2 (NS) or Im(psi_t conj psi) (NKG, signed)."""
    if isinstance(state, NSState):
        return np.abs(state.psi.values) ** 2
    return np.imag(state.psi_t.values * np.conj(state.psi.values))


def energy(state, model, potential=None):
    if isinstance(state, NSState):
        return integrate(energy_density_ns(state, model, potential), state.grid)
    if potential is not None and potential.kind != "zero":
        raise ValueError("external potentials are wired to the NS equation only")
    return integrate(energy_density_nkg(state, model), state.grid)


def hylenic_charge(state):
    return integrate(charge_density(state), state.grid)


def momentum(state):
    """Linear momentum vector (length == dim)."""
    grid = state.grid
    if isinstance(state, NSState):
        conj = np.conj(state.psi.values)
        comps = [integrate(np.imag(g.values * conj), grid) for g in gradient(state.psi)]
    else:
        # -Re int psi_t conj(grad psi)
        psi_t = state.psi_t.values
        comps = [
            -integrate(np.real(psi_t * np.conj(g.values)), grid)
            for g in gradient(state.psi)
        ]
    return np.array([float(c) for c in comps])


def angular_momentum(state):
    """Angular momentum: z component in 2d, full vector in 3d."""
    grid = state.grid
    if grid.dim == 1:
        raise ValueError("angular momentum needs dim >= 2")
    coords = grid.coords()
    grads = gradient(state.psi)
    if isinstance(state, NSState):
        weight = np.conj(state.psi.values)
        take = lambda arr: np.imag(arr)
    else:
        weight = np.conj(state.psi_t.values)
        take = lambda arr: np.real(arr)
    if grid.dim == 2:
        mz = integrate(
            take((coords[0] * grads[1].values - coords[1] * grads[0].values) * weight),
            grid,
        )
        return np.array([mz])
    cross = [
        coords[1] * grads[2].values - coords[2] * grads[1].values,
        coords[2] * grads[0].values - coords[0] * grads[2].values,
        coords[0] * grads[1].values - coords[1] * grads[0].values,
    ]
    return np.array([integrate(take(c * weight), grid) for c in cross])


def barycenter(state):
    """Charge-weighted center int x rho_H / int rho_H (NS states)."""
    if not isinstance(state, NSState):
        raise ValueError("barycenter is the NS center; use ergocenter for NKG")
    rho = charge_density(state)
    total = integrate(rho, state.grid)
    if total <= 0:
        raise ValueError("zero hylenic charge")
    return np.array([integrate(c * rho, state.grid) / total for c in state.grid.coords()])


def ergocenter(state, model):
    """Energy-weighted center int x rho_E / E (NKG states)."""
    if not isinstance(state, KGState):
        raise ValueError("ergocenter is the NKG center; use barycenter for NS")
    rho = energy_density_nkg(state, model)
    total = integrate(rho, state.grid)
    if total <= 0:
        raise ValueError("nonpositive field energy")
    return np.array([integrate(c * rho, state.grid) / total for c in state.grid.coords()])


def center_velocity(times, centers):
    """Least-squares drift velocity of a center history.

    times: (n,) array; centers: (n, dim) array.  Fits one line per axis
    and returns the slopes.
    """
    times = np.asarray(times, dtype=float)
    centers = np.atleast_2d(np.asarray(centers, dtype=float))
    if centers.shape[0] != times.size:
        centers = centers.T
    if times.size < 2:
        raise ValueError("need at least two samples to fit a velocity")
    return np.array(
        [np.polyfit(times, centers[:, i], 1)[0] for i in range(centers.shape[1])]
    )


def hylomorphy_ratio(state, model, potential=None):
    """Lambda = E / |H|; the state binds when Lambda < rest energy."""
    H = hylenic_charge(state)
    if H == 0.0:
        raise ValueError("hylomorphy ratio undefined at zero charge")
    return energy(state, model, potential) / abs(H)


def binding_energy_density(state, model, potential=None):
    """beta = [E0 |rho_H| - rho_E]^+, positive exactly on bound matter."""
    E0 = rest_energy(model)
    if isinstance(state, NSState):
        rho_E = energy_density_ns(state, model, potential)
    else:
        rho_E = energy_density_nkg(state, model)
    beta = E0 * np.abs(charge_density(state)) - rho_E
    return np.where(beta > 0.0, beta, 0.0)


def bound_matter(state, model, potential=None):
    """Integral of beta and the node fraction where beta > 0."""
    beta = binding_energy_density(state, model, potential)
    mass = integrate(beta, state.grid)
    return float(mass), float(np.count_nonzero(beta > 0.0) / beta.size)


def liapunov_value(state, model, c_sigma, sigma, potential=None):
    """(E - c_sigma)^2 + (H - sigma)^2 around a ground state (c_sigma, sigma)."""
    dE = energy(state, model, potential) - c_sigma
    dH = hylenic_charge(state) - sigma
    return float(dE * dE + dH * dH)


def local_frequency_wavenumber(prev_state, next_state, floor=1e-8):
    """Pointwise de Broglie frequency and wavenumber from two snapshots.

    omega = -dS/dt via the centered phase increment arg(psi+ conj(psi-)),
    k_i = dS/dx_i via the identity u^2 dS/dx = Im(conj(psi) grad psi),
    evaluated at the midpoint field.  Nodes with modulus below floor
    (relative to the peak) are masked with NaN.
    """
    psi0, psi1 = prev_state.psi, next_state.psi
    dt = next_state.t - prev_state.t
    if dt <= 0:
        raise ValueError("snapshots must be time ordered")
    dphase = np.angle(psi1.values * np.conj(psi0.values))
    omega = -dphase / dt
    mid = 0.5 * (psi0.values + psi1.values)
    u2 = np.abs(mid) ** 2
    mask = np.abs(mid) < floor * max(np.abs(mid).max(), 1e-300)
    ks = []
    midf = ComplexField(psi0.grid, mid)
    for g in gradient(midf):
        with np.errstate(invalid="ignore", divide="ignore"):
            k = np.imag(np.conj(mid) * g.values) / u2
        k[mask] = np.nan
        ks.append(k)
    omega = np.where(mask, np.nan, omega)
    return omega, ks


@dataclass
class DiagnosticsRow:
    """One sampling instant of the standard run diagnostics."""

    t: float
    E: float
    H: float
    P: np.ndarray
    M: np.ndarray
    Lambda: float
    center: np.ndarray
    bound_mass: float
    leakage: float

    COLUMNS = (
        "t,E,H,Px,Py,Pz,Mx,My,Mz,Lambda,qx,qy,qz,bound_mass,leakage"
    )

    def as_row(self):
        def pad3(vec):
            out = [0.0, 0.0, 0.0]
            for i, v in enumerate(np.atleast_1d(vec)):
                out[i] = float(v)
            return out

        M = np.atleast_1d(self.M)
        if M.size == 1:
            # 2d angular momentum is the z component
            M = np.array([0.0, 0.0, float(M[0])])
        return (
            [self.t, self.E, self.H]
            + pad3(self.P)
            + pad3(M)
            + [self.Lambda]
            + pad3(self.center)
            + [self.bound_mass, self.leakage]
        )


def diagnostics_row(state, model, potential=None):
    """Sample every standard observable of a state into one row."""
    E = energy(state, model, potential)
    H = hylenic_charge(state)
    P = momentum(state)
    if state.grid.dim >= 2:
        M = angular_momentum(state)
    else:
        M = np.zeros(1)
    if isinstance(state, NSState):
        center = barycenter(state)
    else:
        center = ergocenter(state, model)
    mass, _ = bound_matter(state, model, potential)
    return DiagnosticsRow(
        t=float(state.t),
        E=float(E),
        H=float(H),
        P=P,
        M=M,
        Lambda=float(E / abs(H)) if H != 0.0 else float("nan"),
        center=center,
        bound_mass=mass,
        leakage=boundary_leakage(state.psi),
    )


def write_diagnostics(path, rows):
    """Delimited diagnostics series with a fixed 15-column layout."""
    with open(path, "w") as fh:
        fh.write(DiagnosticsRow.COLUMNS + "\n")
        for row in rows:
            fh.write(",".join(f"{v:.17g}" for v in row.as_row()) + "\n")


def read_diagnostics(path):
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    if data.shape[1] != 15:
        raise ValueError("diagnostics table must have 15 columns")
    return data
