"""Point-particle references the field experiments compare against.

Both oracles are deliberately independent of the field solvers: a plain
RK4 loop for Newtonian motion in an external potential, and closed-form
uniform motion for a free relativistic particle.  Agreement between a
wave packet's center and these tracks is the whole point of the
comparison, so nothing here imports from the evolution code.
"""

import numpy as np
from dataclasses import dataclass


@dataclass
class ParticleTrack:
    """Sampled trajectory of a point particle.

    times: (n,) sample instants.
    positions, velocities: (n, dim) arrays.
    energy: conserved mechanical energy when the oracle knows it.
    """

    times: np.ndarray
    positions: np.ndarray
    velocities: np.ndarray
    energy: float = float("nan")

    def position_at(self, t):
        """Linear interpolation of the track, one axis at a time."""
        t = np.asarray(t, dtype=float)
        dim = self.positions.shape[1]
        out = np.empty(t.shape + (dim,))
        for i in range(dim):
            out[..., i] = np.interp(t, self.times, self.positions[:, i])
        return out


def newton_oracle(q0, v0, grad_potential, t_end, dt=1e-3):
    """Integrate unit-mass Newtonian motion q'' = -grad V(q).

    grad_potential maps a position array to the gradient array.  Classic
    fixed-step RK4 on the first order system; accurate to O(dt^4), which
    at the default step is far below anything a field run can resolve.
    """
    q = np.atleast_1d(np.asarray(q0, dtype=float)).copy()
    v = np.atleast_1d(np.asarray(v0, dtype=float)).copy()
    if q.shape != v.shape:
        raise ValueError("q0 and v0 must have the same shape")
    if dt <= 0 or t_end <= 0:
        raise ValueError("dt and t_end must be positive")

    def acc(pos):
        return -np.asarray(grad_potential(pos), dtype=float)

    n = max(1, int(round(t_end / dt)))
    times = np.empty(n + 1)
    qs = np.empty((n + 1, q.size))
    vs = np.empty((n + 1, q.size))
    times[0], qs[0], vs[0] = 0.0, q, v
    for j in range(n):
        k1q, k1v = v, acc(q)
        k2q, k2v = v + 0.5 * dt * k1v, acc(q + 0.5 * dt * k1q)
        k3q, k3v = v + 0.5 * dt * k2v, acc(q + 0.5 * dt * k2q)
        k4q, k4v = v + dt * k3v, acc(q + dt * k3q)
        q = q + (dt / 6.0) * (k1q + 2.0 * k2q + 2.0 * k3q + k4q)
        v = v + (dt / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        times[j + 1], qs[j + 1], vs[j + 1] = (j + 1) * dt, q, v
    return ParticleTrack(times, qs, vs)


def relativistic_oracle(q0, p, m0, times):
    """Free relativistic particle with rest mass m0 and momentum p.

    E = sqrt(m0^2 + |p|^2) and the velocity is p/E, so the track is a
    straight line.  Returns a ParticleTrack sampled at the given times
    with the conserved energy attached.
    """
    q = np.atleast_1d(np.asarray(q0, dtype=float))
    p = np.atleast_1d(np.asarray(p, dtype=float))
    if q.shape != p.shape:
        raise ValueError("q0 and p must have the same shape")
    if m0 <= 0:
        raise ValueError("rest mass must be positive")
    times = np.asarray(times, dtype=float)
    energy = float(np.sqrt(m0**2 + np.dot(p, p)))
    vel = p / energy
    positions = q[None, :] + times[:, None] * vel[None, :]
    velocities = np.broadcast_to(vel, positions.shape).copy()
    return ParticleTrack(times, positions, velocities, energy=energy)
