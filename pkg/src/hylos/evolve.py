"""Conservative time evolution of both equations.

NS uses Strang splitting: a half step of the pointwise phase rotation
(the nonlinearity plus external potential leave |psi| invariant, so
that subflow is exact), a full linear step with the exact dispersion
factor in transform space, and another half rotation.  Both substeps
are unitary, so the hylenic charge is conserved to roundoff and the
energy shows only the bounded second-order splitting wobble.

NKG uses the velocity form of leapfrog on psi_tt = lap(psi) - W'(psi).
The discrete force is exactly gauge and translation equivariant, so
charge and momentum are conserved to roundoff and the energy wobbles
at second order without drift.

A semiclassical frame (h, alpha, gamma_exp) generalizes the NS step to

    i h psi_t = -(h^2/2) lap psi + W'(h^gamma psi)/(2 h^alpha) + V psi,

which at (1, 0, 0) is the plain equation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .grid import ComplexField
from .models import nprime_over_s
from .observables import KGState, NSState, diagnostics_row


@dataclass
class EvolveConfig:
    """Run parameters.

    dt, t_end : step and final time (t_end/dt rounded to whole steps).
    snapshot_every, diagnostic_every : sampling cadence in steps.
    blowup_factor : abort when max|psi| exceeds this times its start value.
    h, alpha, gamma_exp : semiclassical frame; (1, 0, 0) is the plain NS
        equation and requires alpha > gamma_exp otherwise.
    """

    dt: float
    t_end: float
    snapshot_every: int = 0
    diagnostic_every: int = 10
    blowup_factor: float = 1e6
    h: float = 1.0
    alpha: float = 0.0
    gamma_exp: float = 0.0

    def __post_init__(self):
        if self.dt <= 0 or self.t_end <= 0:
            raise ValueError("dt and t_end must be positive")
        if self.snapshot_every < 0 or self.diagnostic_every < 0:
            raise ValueError("sampling cadences must be nonnegative")
        if self.h <= 0:
            raise ValueError("h must be positive")
        if (self.h, self.alpha, self.gamma_exp) != (1.0, 0.0, 0.0):
            if self.alpha <= self.gamma_exp:
                raise ValueError("semiclassical frame needs alpha > gamma_exp")

    @property
    def n_steps(self):
        return max(1, int(round(self.t_end / self.dt)))


@dataclass
class Trajectory:
    """Everything a run hands back: sampled diagnostics, snapshots of
    the state, and the blow-up flag when the guard tripped."""

    rows: list = field(default_factory=list)
    snapshot_times: list = field(default_factory=list)
    snapshots: list = field(default_factory=list)
    blown_up: bool = False
    n_steps: int = 0
    dt: float = 0.0


class _NSStepper:
    """Strang splitting with precomputed factors."""

    def __init__(self, grid, model, dt, potential=None, h=1.0, alpha=0.0, gamma_exp=0.0):
        self.grid = grid
        self.model = model
        self.dt = float(dt)
        self.h = float(h)
        self.hg = self.h**gamma_exp
        # i psi_t = -(h/2) lap psi + (a + N'(s)/s)|_{s=h^g u} psi / (2 h^{1+a-g}) + V psi / h
        self.rot_scale = 1.0 / (2.0 * self.h ** (1.0 + alpha - gamma_exp))
        self.linear_factor = np.exp(-1j * self.dt * (self.h / 2.0) * grid.k_squared())
        if potential is not None and potential.kind != "zero":
            self.V_over_h = potential.on_grid(grid) / self.h
        else:
            self.V_over_h = None

    def _rotation_rate(self, absvals):
        rate = self.rot_scale * (
            self.model.a + nprime_over_s(self.model, self.hg * absvals)
        )
        if self.V_over_h is not None:
            rate = rate + self.V_over_h
        return rate

    def step(self, values):
        half = np.exp(-0.5j * self.dt * self._rotation_rate(np.abs(values)))
        values = values * half
        values = np.fft.ifftn(self.linear_factor * np.fft.fftn(values))
        half = np.exp(-0.5j * self.dt * self._rotation_rate(np.abs(values)))
        return values * half


class _KGStepper:
    """Velocity leapfrog with the spectral Laplacian; the force at the
    new node is reused as the cached force of the next step."""

    def __init__(self, grid, model, dt):
        if dt >= min(grid.spacing):
            raise ValueError(
                f"dt = {dt} violates the unit-speed limit dt < {min(grid.spacing):g}"
            )
        self.grid = grid
        self.model = model
        self.dt = float(dt)
        self.ksq = grid.k_squared()

    def force(self, values):
        lap = np.fft.ifftn(-self.ksq * np.fft.fftn(values))
        return lap - (self.model.a + nprime_over_s(self.model, np.abs(values))) * values

    def step(self, values, vel, acc):
        dt = self.dt
        values = values + dt * vel + 0.5 * dt * dt * acc
        acc_new = self.force(values)
        vel = vel + 0.5 * dt * (acc + acc_new)
        return values, vel, acc_new


def step_ns(state, model, dt, potential=None, h=1.0, alpha=0.0, gamma_exp=0.0):
    """One Strang split step of the NS equation."""
    if not isinstance(state, NSState):
        raise ValueError("step_ns advances NS states")
    stepper = _NSStepper(state.grid, model, dt, potential, h, alpha, gamma_exp)
    vals = stepper.step(state.psi.values)
    return NSState(t=state.t + dt, psi=ComplexField(state.grid, vals))


def step_nkg(state, model, dt):
    """One leapfrog step of the NKG equation."""
    if not isinstance(state, KGState):
        raise ValueError("step_nkg advances NKG states")
    stepper = _KGStepper(state.grid, model, dt)
    acc = stepper.force(state.psi.values)
    vals, vel, _ = stepper.step(state.psi.values, state.psi_t.values, acc)
    return KGState(
        t=state.t + dt,
        psi=ComplexField(state.grid, vals),
        psi_t=ComplexField(state.grid, vel),
    )


def run(state, model, config, potential=None, on_diagnostics=None, on_snapshot=None):
    """March a state to t_end, sampling diagnostics and snapshots.

    Returns a Trajectory.  The guard aborts (flagging the trajectory,
    keeping the partial output) once max|psi| exceeds blowup_factor
    times its initial value.  Sampling always includes the first and
    last step.  Identical inputs produce bit-identical output: the loop
    is single-threaded and order-fixed.
    """
    is_ns = isinstance(state, NSState)
    if not is_ns and potential is not None and potential.kind != "zero":
        raise ValueError("external potentials are wired to the NS equation only")
    if not is_ns and (config.h, config.alpha, config.gamma_exp) != (1.0, 0.0, 0.0):
        raise ValueError("the semiclassical frame applies to the NS equation only")

    grid = state.grid
    dt = config.dt
    n_steps = config.n_steps
    traj = Trajectory(n_steps=n_steps, dt=dt)
    peak0 = float(np.abs(state.psi.values).max())
    if peak0 == 0.0:
        raise ValueError("cannot evolve the zero field")

    if is_ns:
        stepper = _NSStepper(grid, model, dt, potential,
                             config.h, config.alpha, config.gamma_exp)
        vals = state.psi.values.copy()
        vel = None
        acc = None
    else:
        stepper = _KGStepper(grid, model, dt)
        vals = state.psi.values.copy()
        vel = state.psi_t.values.copy()
        acc = stepper.force(vals)

    t0 = state.t

    def current(j):
        psi = ComplexField(grid, vals.copy())
        if is_ns:
            return NSState(t=t0 + j * dt, psi=psi)
        return KGState(t=t0 + j * dt, psi=psi, psi_t=ComplexField(grid, vel.copy()))

    def sample(j, final=False):
        due_diag = config.diagnostic_every and (
            j % config.diagnostic_every == 0 or final
        )
        due_snap = config.snapshot_every and (j % config.snapshot_every == 0 or final)
        if not (due_diag or due_snap):
            return
        snap = current(j)
        if due_diag:
            row = diagnostics_row(snap, model, potential)
            traj.rows.append(row)
            if on_diagnostics is not None:
                on_diagnostics(row)
        if due_snap:
            traj.snapshot_times.append(snap.t)
            traj.snapshots.append(snap)
            if on_snapshot is not None:
                on_snapshot(snap)

    sample(0)
    for j in range(1, n_steps + 1):
        if is_ns:
            vals = stepper.step(vals)
        else:
            vals, vel, acc = stepper.step(vals, vel, acc)
        if float(np.abs(vals).max()) > config.blowup_factor * peak0:
            traj.blown_up = True
            sample(j, final=True)
            return traj
        sample(j, final=(j == n_steps))
    return traj
