"""Nonlinear potentials W and external potentials V.

W acts on the field modulus and splits as

    W(s) = (a/2) s^2 + N(s),        N(0) = N'(0) = 0,

so `a` = W''(0) fixes the rest energy of the matter: a/2 for the
Schrodinger equation, sqrt(a) for the Klein-Gordon one.  On complex
arguments W'(z) = F'(|z|) z / |z| with F(s) = W(s), which keeps the
nonlinearity gauge equivariant.  The nonlinear part enters everywhere
through the bounded combination N'(s)/s, so there is no removable
singularity to special-case at s = 0.

Families
--------
power_focusing : N(s) = -(c/p) s^p, the textbook focusing power term.
double_power   : N(s) = -(c_p/p) s^p + (c_q/q) s^q with q > p, focusing
                 at moderate amplitude, defocusing at large amplitude.
saturating_intro : W'(s) = s/(1+s), i.e. W(s) = s - log(1+s); the
                 nonlinearity saturates instead of growing.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

FAMILIES = ("power_focusing", "double_power", "saturating_intro")
EQUATIONS = ("ns", "nkg")


@dataclass(frozen=True)
class NonlinearModel:
    """Potential family plus the equation it drives ("ns" or "nkg")."""

    family: str
    equation: str
    a: float
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.equation not in EQUATIONS:
            raise ValueError(f"equation must be 'ns' or 'nkg', got {self.equation!r}")
        if self.a <= 0:
            raise ValueError("quadratic coefficient a must be positive")
        if self.family == "power_focusing":
            p, c = self.params["p"], self.params["c"]
            if p <= 2 or c <= 0:
                raise ValueError("power_focusing needs p > 2, c > 0")
        elif self.family == "double_power":
            p, q = self.params["p"], self.params["q"]
            cp, cq = self.params["c_p"], self.params["c_q"]
            if not (q > p > 2) or cp <= 0 or cq <= 0:
                raise ValueError("double_power needs q > p > 2 and positive weights")
        elif self.family == "saturating_intro":
            if not np.isclose(self.a, 1.0):
                raise ValueError("saturating_intro has W''(0) = 1 built in")


def power_focusing(a, p, c, equation="ns"):
    return NonlinearModel("power_focusing", equation, float(a), {"p": float(p), "c": float(c)})


def double_power(a, p, q, c_p, c_q, equation="nkg"):
    return NonlinearModel(
        "double_power", equation, float(a),
        {"p": float(p), "q": float(q), "c_p": float(c_p), "c_q": float(c_q)},
    )


def saturating_intro(equation="nkg"):
    return NonlinearModel("saturating_intro", equation, 1.0, {})


def eval_N(model, s):
    """Nonlinear remainder N(s) = W(s) - (a/2) s^2 for s >= 0."""
    s = np.asarray(s, dtype=float)
    if np.any(s < 0):
        raise ValueError("modulus argument must be nonnegative")
    if model.family == "power_focusing":
        p, c = model.params["p"], model.params["c"]
        return -(c / p) * s**p
    if model.family == "double_power":
        p, q = model.params["p"], model.params["q"]
        cp, cq = model.params["c_p"], model.params["c_q"]
        return -(cp / p) * s**p + (cq / q) * s**q
    # saturating: W(s) = s - log1p(s)
    return s - np.log1p(s) - 0.5 * s**2


def nprime_over_s(model, s):
    """N'(s)/s, the bounded shape factor of the nonlinearity.

    W'(z) = (a + N'(|z|)/|z|) z, so this single function feeds both the
    complex nonlinear force and the phase-rotation rate of the splitting
    integrator; its s -> 0 limit is 0 by construction.
    """
    s = np.asarray(s, dtype=float)
    if model.family == "power_focusing":
        p, c = model.params["p"], model.params["c"]
        return -c * s ** (p - 2.0)
    if model.family == "double_power":
        p, q = model.params["p"], model.params["q"]
        cp, cq = model.params["c_p"], model.params["c_q"]
        return -cp * s ** (p - 2.0) + cq * s ** (q - 2.0)
    # saturating: N'(s) = s/(1+s) - s = -s^2/(1+s)
    return -s / (1.0 + s)


def eval_W(model, s):
    """W(s) = (a/2) s^2 + N(s) on the nonnegative reals."""
    s = np.asarray(s, dtype=float)
    return 0.5 * model.a * s**2 + eval_N(model, s)


def eval_Wprime_real(model, s):
    """F'(s) = a s + N'(s) for s >= 0."""
    s = np.asarray(s, dtype=float)
    return (model.a + nprime_over_s(model, s)) * s


def eval_Wprime_complex(model, z):
    """Gauge-equivariant W'(z) = F'(|z|) z/|z|, with W'(0) = 0."""
    z = np.asarray(z, dtype=np.complex128)
    return (model.a + nprime_over_s(model, np.abs(z))) * z


def rest_energy(model):
    """Energy per unit hylenic charge of small matter lumps.

    a/2 for the Schrodinger equation, sqrt(a) (the mass m) for the
    Klein-Gordon one.
    """
    return 0.5 * model.a if model.equation == "ns" else float(np.sqrt(model.a))


def hylomorphy_report(model, s_max=10.0, ds=1e-3):
    """Scan (0, s_max] for the hylomorphy signature N(s) < 0.

    Returns a dict with the flag, the minimizing amplitude, and the
    scanned margin min N(s)/s^2 (NS) or min 2 W(s)/s^2 (NKG).
    """
    s = np.arange(ds, s_max + 0.5 * ds, ds)
    N = eval_N(model, s)
    j = int(np.argmin(N / s**2))
    if model.equation == "ns":
        margin = N / s**2
    else:
        margin = 2.0 * eval_W(model, s) / s**2
    jm = int(np.argmin(margin))
    return {
        "hylomorphic": bool(N[j] < 0.0),
        "s_star": float(s[j]),
        "margin_min": float(margin[jm]),
        "margin_argmin": float(s[jm]),
        "open_at_smax": bool(jm == len(s) - 1),
    }


@dataclass(frozen=True)
class ExternalPotential:
    """External potential V(x): "zero", "harmonic" (V = kappa |x|^2 / 2)
    or "sampled" (node values supplied on a grid)."""

    kind: str
    kappa: float = 0.0
    samples: object = None

    def __post_init__(self):
        if self.kind not in ("zero", "harmonic", "sampled"):
            raise ValueError(f"unknown potential kind {self.kind!r}")
        if self.kind == "sampled" and self.samples is None:
            raise ValueError("sampled potential needs node values")

    def on_grid(self, grid):
        """Node values of V on the given grid."""
        if self.kind == "zero":
            return np.zeros(grid.counts)
        if self.kind == "harmonic":
            out = np.zeros(grid.counts)
            for c in grid.coords():
                out += c**2
            return 0.5 * self.kappa * out
        vals = np.asarray(self.samples, dtype=float)
        if vals.shape != tuple(grid.counts):
            raise ValueError("sampled potential shape does not match grid")
        return vals

    def gradient_on_grid(self, grid):
        """Per-axis dV/dx_i node values.

        Analytic for the closed-form kinds; centered finite differences
        with step = grid spacing for sampled data (periodic wrap).
        """
        if self.kind == "zero":
            return [np.zeros(grid.counts) for _ in range(grid.dim)]
        if self.kind == "harmonic":
            return [self.kappa * c for c in grid.coords()]
        vals = self.on_grid(grid)
        out = []
        for ax in range(grid.dim):
            dx = grid.spacing[ax]
            out.append((np.roll(vals, -1, axis=ax) - np.roll(vals, 1, axis=ax)) / (2 * dx))
        return out


def zero_potential():
    return ExternalPotential("zero")


def harmonic_potential(kappa):
    if kappa < 0:
        raise ValueError("harmonic stiffness must be nonnegative")
    return ExternalPotential("harmonic", kappa=float(kappa))


def sampled_potential(values):
    return ExternalPotential("sampled", samples=np.asarray(values, dtype=float))
