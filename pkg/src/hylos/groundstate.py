"""Radial ground-state profiles by shooting.

A standing wave u(|x|) e^{-i omega t} of either equation reduces to the
radial boundary value problem

    u'' + (N-1)/r u' = G'(u),    u'(0) = 0,  u(r) -> 0,

where G folds the frequency into the potential:

    NS:   G(s) = W(s) - omega s^2          (phase rotation omega)
    NKG:  G(s) = W(s) - omega^2 s^2 / 2.

In the mechanical reading (position u, time r, potential -G, friction
(N-1)/r) the wanted profile is the trajectory that leaves u0 at rest and
creeps exactly onto the hilltop at u = 0.  Too small a start turns
around early (undershoot), too large a start crosses zero (overshoot),
so the threshold is found by bisection.  Double precision cannot hold
the separatrix forever: the accepted trajectory is truncated where it
stops decreasing and is exactly zero beyond that node.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson
from scipy.interpolate import CubicSpline

from .grid import ComplexField
from .models import eval_W, nprime_over_s, rest_energy

# surface measure of the unit sphere: {-1,1}, circle, sphere
_SURFACE = {1: 2.0, 2: 2.0 * np.pi, 3: 4.0 * np.pi}


@dataclass(frozen=True)
class EffectiveG:
    """Frequency-reduced potential G: array-valued fun/deriv for
    quadrature, scalar sfun/sderiv for the shooting inner loop."""

    fun: object
    deriv: object
    sfun: object
    sderiv: object
    kappa: float


def effective_G(model, omega):
    """Fold the frequency into the potential.

    kappa^2 = G''(0) must be positive for a decaying tail, which is the
    upper end of the admissible frequency window.
    """
    shift = 2.0 * omega if model.equation == "ns" else omega**2
    half = omega if model.equation == "ns" else 0.5 * omega**2

    def G(s):
        return eval_W(model, s) - half * np.asarray(s, dtype=float) ** 2

    def Gprime(s):
        s = np.asarray(s, dtype=float)
        return (model.a - shift + nprime_over_s(model, s)) * s

    # plain-float twins: the RK4 loop calls these millions of times
    a = model.a
    quad = 0.5 * a - half
    lin = a - shift
    if model.family == "power_focusing":
        p, c = model.params["p"], model.params["c"]
        sfun = lambda u: quad * u * u - (c / p) * u**p
        sderiv = lambda u: lin * u - c * u ** (p - 1.0)
    elif model.family == "double_power":
        p, q = model.params["p"], model.params["q"]
        cp, cq = model.params["c_p"], model.params["c_q"]
        sfun = lambda u: quad * u * u - (cp / p) * u**p + (cq / q) * u**q
        sderiv = lambda u: lin * u - cp * u ** (p - 1.0) + cq * u ** (q - 1.0)
    else:
        sfun = lambda u: u - math.log1p(u) - half * u * u
        sderiv = lambda u: lin * u - u * u / (1.0 + u)

    kappa_sq = model.a - shift
    if kappa_sq <= 0.0:
        raise ValueError(
            f"omega = {omega} gives nondecaying tails (G''(0) = {kappa_sq:g} <= 0)"
        )
    return EffectiveG(fun=G, deriv=Gprime, sfun=sfun, sderiv=sderiv,
                      kappa=float(np.sqrt(kappa_sq)))


def admissible_frequencies(model, s_max=10.0, ds=1e-3):
    """Frequency window that admits localized standing waves.

    Scans s in (0, s_max] for the variational bound.  Returns
    (lower, upper, open_below): NS gives (E1, E0) where E1 may be None
    when the infimum keeps falling at s_max (pure focusing powers);
    NKG gives (m0, m).
    """
    s = np.arange(ds, s_max + 0.5 * ds, ds)
    E0 = rest_energy(model)
    if model.equation == "ns":
        ratio = (eval_W(model, s) - 0.5 * model.a * s**2) / s**2  # N(s)/s^2
        j = int(np.argmin(ratio))
        lower = E0 + float(ratio[j])
        open_below = j == len(s) - 1
        return (None if open_below else lower, E0, open_below)
    ratio = 2.0 * eval_W(model, s) / s**2
    j = int(np.argmin(ratio))
    m0 = float(np.sqrt(max(ratio[j], 0.0)))
    return (m0, E0, False)


def shoot(geff, u0, dim, h_r=1e-3, r_max=30.0, keep=True):
    """Integrate the radial equation from u(0) = u0, u'(0) = 0.

    Classic fourth-order one-step method with fixed step h_r.  The r = 0
    singularity uses the regularized start u''(0) = G'(u0)/dim.  Returns
    (classification, r, u, du) with classification one of "overshoot"
    (u crossed zero or escapes outward), "undershoot" (cannot reach
    zero), "converged" (still positive and decreasing at r_max).

    Two starts are decided without integrating: G(u0) > 0 has mechanical
    energy below the u = 0 hilltop and friction only drains it, so it is
    an undershoot; G(u0) <= 0 with G'(u0) > 0 sits beyond the outer
    crest and rolls to infinity, an overshoot.  This keeps the
    classification free of roundoff on the separatrix, where the energy
    balance 0.5 u'^2 = G(u) holds to machine precision.
    """
    if u0 <= 0:
        raise ValueError("shooting start must be positive")
    Gfun, Gprime = geff.sfun, geff.sderiv
    if float(Gfun(u0)) > 0.0:
        tag = "undershoot"
        if keep:
            return tag, np.array([0.0]), np.array([u0]), np.array([0.0])
        return tag, None, None, None
    if float(Gprime(u0)) > 0.0:
        tag = "overshoot"
        if keep:
            return tag, np.array([0.0]), np.array([u0]), np.array([0.0])
        return tag, None, None, None

    nu = float(dim - 1)
    n_steps = int(round(r_max / h_r))
    guard = 1e6 * u0

    if keep:
        rs = np.empty(n_steps + 1)
        us = np.empty(n_steps + 1)
        ws = np.empty(n_steps + 1)
        rs[0], us[0], ws[0] = 0.0, u0, 0.0

    def rhs(r, u, w):
        if r == 0.0:
            return w, Gprime(u) / dim
        return w, Gprime(u) - nu * w / r

    u, w = float(u0), 0.0
    tag = "converged"
    last = n_steps
    for j in range(n_steps):
        r = j * h_r
        k1u, k1w = rhs(r, u, w)
        k2u, k2w = rhs(r + 0.5 * h_r, u + 0.5 * h_r * k1u, w + 0.5 * h_r * k1w)
        k3u, k3w = rhs(r + 0.5 * h_r, u + 0.5 * h_r * k2u, w + 0.5 * h_r * k2w)
        k4u, k4w = rhs(r + h_r, u + h_r * k3u, w + h_r * k3w)
        u = u + (h_r / 6.0) * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
        w = w + (h_r / 6.0) * (k1w + 2.0 * k2w + 2.0 * k3w + k4w)
        if keep:
            rs[j + 1], us[j + 1], ws[j + 1] = (j + 1) * h_r, u, w
        if not (np.isfinite(u) and np.isfinite(w)):
            raise RuntimeError(
                "radial integration diverged; step h_r too large for this potential"
            )
        if u <= 0.0 or u > guard:
            tag, last = "overshoot", j + 1
            break
        if w >= 0.0 and j > 0:
            tag, last = "undershoot", j + 1
            break
    if not keep:
        return tag, None, None, None
    return tag, rs[: last + 1], us[: last + 1], ws[: last + 1]


@dataclass
class RadialProfile:
    """Ground-state table u(r) on a uniform radial mesh."""

    dim: int
    omega: float
    equation: str
    r: np.ndarray
    u: np.ndarray
    du: np.ndarray
    u0: float
    sigma: float
    kappa: float
    r_tail: float

    def spline(self):
        """Cubic interpolant of the table, zero beyond the mesh."""
        return CubicSpline(self.r, self.u, bc_type=((1, 0.0), (1, 0.0)))

    def charge(self):
        """Radial quadrature of the hylenic charge int u^2 dx."""
        return _SURFACE[self.dim] * simpson(
            self.u**2 * self.r ** (self.dim - 1), x=self.r
        )


def find_ground_state(model, omega, dim, h_r=1e-3, r_max=30.0,
                      u0_max=50.0, bracket_tol=1e-12, max_iter=200):
    """Bisect the shooting threshold and return the accepted profile.

    The bracket is first located by a geometric sweep of u0, then
    narrowed until its width falls below bracket_tol * u0 (or max_iter
    splits).  The mid-bracket trajectory is truncated at its last
    strictly decreasing node and zero past it.
    """
    check_admissible(model, omega)
    geff = effective_G(model, omega)

    # geometric sweep for a sign change of the classification
    u0 = 1e-2
    lo = None
    hi = None
    while u0 <= u0_max:
        tag, *_ = shoot(geff, u0, dim, h_r, r_max, keep=False)
        if tag == "undershoot":
            lo = u0
        elif tag == "overshoot":
            if lo is None:
                # jumped straight into overshoot: back off to find the floor
                down = u0 / 1.5
                while down > 1e-8:
                    t2, *_ = shoot(geff, down, dim, h_r, r_max, keep=False)
                    if t2 == "undershoot":
                        lo = down
                        break
                    down /= 1.5
                if lo is None:
                    raise RuntimeError("no undershoot found below the overshoot zone")
            hi = u0
            break
        u0 *= 1.5
    if hi is None:
        raise RuntimeError(
            f"no overshoot up to u0 = {u0_max}; omega = {omega} may admit no profile"
        )

    for _ in range(max_iter):
        if hi - lo < bracket_tol * hi:
            break
        mid = 0.5 * (lo + hi)
        tag, *_ = shoot(geff, mid, dim, h_r, r_max, keep=False)
        if tag == "overshoot":
            hi = mid
        else:
            lo = mid

    # the hi endpoint always integrates a full decaying head (a lo probe
    # can be the instant G(u0) > 0 tag with no trajectory at all)
    u0 = hi
    _, rs, us, ws = shoot(geff, u0, dim, h_r, r_max, keep=True)

    # keep the strictly decreasing positive head, zero the tail
    diffs = np.diff(us)
    bad = np.nonzero((diffs >= 0.0) | (us[1:] <= 0.0))[0]
    cut = int(bad[0]) if bad.size else len(us) - 1

    n = int(round(r_max / h_r)) + 1
    r = np.arange(n) * h_r
    u = np.zeros(n)
    du = np.zeros(n)
    u[: cut + 1] = us[: cut + 1]
    du[: cut + 1] = ws[: cut + 1]

    profile = RadialProfile(
        dim=dim, omega=float(omega), equation=model.equation,
        r=r, u=u, du=du, u0=float(u0), sigma=0.0, kappa=geff.kappa,
        r_tail=float(r[cut]),
    )
    profile.sigma = float(profile.charge())
    return profile


def check_admissible(model, omega):
    """Raise unless omega sits in the admissible window; return it."""
    low, high, open_below = admissible_frequencies(model)
    bad = omega >= high or (low is not None and omega <= low)
    if bad:
        lo_txt = "-inf" if low is None else f"{low:g}"
        raise ValueError(
            f"omega = {omega} outside the admissible interval ({lo_txt}, {high:g})"
        )
    return low, high


def derrick_pohozaev_residual(profile, model):
    """Scale-balance residual of the profile, normalized by int |grad u|^2.

    A true localized solution satisfies
        (1/2 - 1/N) int |grad u|^2 + int G(u) = 0.
    Radial quadrature on the stored table; the 1d identity pins the sign
    of the gradient coefficient (int u'^2 = 4/3 and int G = 2/3 for the
    sech profile balance only this way).
    """
    geff = effective_G(model, profile.omega)
    surf = _SURFACE[profile.dim]
    rpow = profile.r ** (profile.dim - 1)
    K = surf * simpson(profile.du**2 * rpow, x=profile.r)
    GG = surf * simpson(geff.fun(profile.u) * rpow, x=profile.r)
    if K == 0.0:
        raise ValueError("profile has no gradient content")
    return float(((0.5 - 1.0 / profile.dim) * K + GG) / K)


def profile_to_field(profile, grid, center=None, stretch=None):
    """Embed the radial table onto a grid as a real ComplexField.

    center defaults to the origin; stretch scales (x - center) per axis
    before the radius is taken (used for contracted moving profiles).
    Cubic interpolation of the table, exactly zero beyond its mesh.
    """
    if center is None:
        center = np.zeros(grid.dim)
    center = np.asarray(center, dtype=float)
    if stretch is None:
        stretch = np.ones(grid.dim)
    stretch = np.asarray(stretch, dtype=float)
    rsq = np.zeros(grid.counts)
    for i, c in enumerate(grid.coords()):
        rsq += (stretch[i] * (c - center[i])) ** 2
    rr = np.sqrt(rsq)
    spline = profile.spline()
    vals = np.where(rr <= profile.r[-1], spline(np.minimum(rr, profile.r[-1])), 0.0)
    return ComplexField(grid, vals.astype(np.complex128))


def save_profile(path, profile):
    """Profile table as delimited text: header then r,u rows."""
    with open(path, "w") as fh:
        fh.write(
            f"# {profile.dim},{profile.omega!r},{profile.equation},"
            f"{profile.u0!r},{profile.sigma!r}\n"
        )
        for r, u in zip(profile.r, profile.u):
            fh.write(f"{r:.17g},{u:.17g}\n")


def load_profile(path):
    """Read a profile written by save_profile; du is rebuilt by differences."""
    with open(path) as fh:
        header = fh.readline().strip()
        if not header.startswith("#"):
            raise ValueError("missing profile header")
        tokens = header[1:].strip().split(",")
        dim = int(tokens[0])
        omega = float(tokens[1])
        equation = tokens[2]
        u0 = float(tokens[3])
        sigma = float(tokens[4])
        data = np.loadtxt(fh, delimiter=",", ndmin=2)
    r, u = data[:, 0], data[:, 1]
    du = np.gradient(u, r)
    return RadialProfile(
        dim=dim, omega=omega, equation=equation, r=r, u=u, du=du,
        u0=u0, sigma=sigma, kappa=float("nan"), r_tail=float("nan"),
    )
