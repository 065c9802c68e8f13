"""Periodic grids and pseudospectral calculus on them.

The computational domain is a centered periodic box in 1, 2 or 3
dimensions.  Coordinates along axis i span [-L_i/2, L_i/2) with n_i
uniformly spaced nodes; the node at +L_i/2 is identified with the one
at -L_i/2.  Derivatives are spectral (FFT with the exact symbol of the
operator), integrals are the periodic trapezoid rule, i.e. a plain node
sum times the volume element, which is spectrally accurate for smooth
periodic data.

A periodic box is only a surrogate for the whole space: every consumer
that cares should watch the boundary leakage diagnostic
(``boundary_leakage``) and keep localized states away from the seam.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Grid:
    """Uniform periodic grid on a centered box.

    Attributes
    ----------
    dim : int
        Number of space dimensions, 1, 2 or 3.
    lengths : tuple of float
        Box edge lengths per axis.
    counts : tuple of int
        Node counts per axis.
    """

    dim: int
    lengths: tuple
    counts: tuple

    @property
    def spacing(self):
        """Node spacing per axis."""
        return tuple(L / n for L, n in zip(self.lengths, self.counts))

    @property
    def volume_element(self):
        """Volume carried by one node (product of spacings)."""
        return float(np.prod(self.spacing))

    def axis(self, i):
        """Coordinate array along axis i, spanning [-L/2, L/2)."""
        L, n = self.lengths[i], self.counts[i]
        return -L / 2.0 + (L / n) * np.arange(n)

    def coords(self):
        """Full coordinate arrays, shape == counts, axis i varies along index i."""
        axes = [self.axis(i) for i in range(self.dim)]
        return np.meshgrid(*axes, indexing="ij")

    def wavenumbers(self):
        """Angular wavenumber arrays per axis, broadcastable to counts."""
        ks = []
        for i in range(self.dim):
            k = 2.0 * np.pi * np.fft.fftfreq(self.counts[i], d=self.spacing[i])
            shape = [1] * self.dim
            shape[i] = self.counts[i]
            ks.append(k.reshape(shape))
        return ks

    def k_squared(self):
        """|k|^2 array, broadcast to the full grid shape."""
        ks = self.wavenumbers()
        out = np.zeros(self.counts)
        for k in ks:
            out = out + k**2
        return out


def make_grid(dim, lengths, counts):
    """Build a Grid, accepting scalars as shorthand for isotropic boxes."""
    if dim not in (1, 2, 3):
        raise ValueError(f"dim must be 1, 2 or 3, got {dim}")
    if np.isscalar(lengths):
        lengths = (float(lengths),) * dim
    else:
        lengths = tuple(float(L) for L in lengths)
    if np.isscalar(counts):
        counts = (int(counts),) * dim
    else:
        counts = tuple(int(n) for n in counts)
    if len(lengths) != dim or len(counts) != dim:
        raise ValueError("lengths and counts must match dim")
    if any(L <= 0 for L in lengths):
        raise ValueError("box lengths must be positive")
    if any(n < 4 for n in counts):
        raise ValueError("need at least 4 nodes per axis")
    return Grid(dim=dim, lengths=lengths, counts=counts)


@dataclass
class ComplexField:
    """Complex scalar field sampled on a Grid.

    values has shape == grid.counts and dtype complex128.
    """

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.complex128)
        if self.values.shape != tuple(self.grid.counts):
            raise ValueError(
                f"field shape {self.values.shape} != grid counts {self.grid.counts}"
            )

    def copy(self):
        return ComplexField(self.grid, self.values.copy())


@dataclass
class PolarFields:
    """Polar decomposition psi = u * exp(i S): modulus u >= 0 and phase S."""

    grid: Grid
    u: np.ndarray
    S: np.ndarray


def field_from_function(grid, fn):
    """Sample fn(*coords) on the grid as a ComplexField."""
    return ComplexField(grid, np.asarray(fn(*grid.coords()), dtype=np.complex128))


def integrate(density, grid):
    """Periodic trapezoid quadrature: node sum times volume element."""
    density = np.asarray(density)
    if density.shape != tuple(grid.counts):
        raise ValueError("density shape does not match grid")
    total = np.sum(density) * grid.volume_element
    if not np.all(np.isfinite(density)):
        raise ValueError("non-finite values in integrand")
    return total if np.iscomplexobj(density) else float(total)


def gradient(field):
    """Spectral gradient, one ComplexField per axis (symbol i*k)."""
    fhat = np.fft.fftn(field.values)
    out = []
    for k in field.grid.wavenumbers():
        out.append(ComplexField(field.grid, np.fft.ifftn(1j * k * fhat)))
    return out


def laplacian(field):
    """Spectral Laplacian (symbol -|k|^2)."""
    fhat = np.fft.fftn(field.values)
    return ComplexField(field.grid, np.fft.ifftn(-field.grid.k_squared() * fhat))


def divergence(vec_values, grid):
    """Spectral divergence of a list of per-axis value arrays."""
    if len(vec_values) != grid.dim:
        raise ValueError("need one component per axis")
    out = np.zeros(grid.counts, dtype=np.complex128)
    for k, comp in zip(grid.wavenumbers(), vec_values):
        out += np.fft.ifftn(1j * k * np.fft.fftn(comp))
    return out


def polar_decompose(field, phase_floor=1e-12):
    """Split psi into modulus and phase.

    Below the floor the phase is ill-conditioned, so those nodes borrow
    the phase of the nearest node with modulus above the floor.  A field
    that is everywhere below the floor has no usable phase at all.
    """
    u = np.abs(field.values)
    S = np.angle(field.values)
    mask = u < phase_floor
    if mask.all():
        raise ValueError("field modulus below phase floor everywhere")
    if mask.any():
        from scipy.ndimage import distance_transform_edt

        idx = distance_transform_edt(mask, return_distances=False, return_indices=True)
        S = S[tuple(idx)]
    return PolarFields(field.grid, u, S)


def boundary_leakage(field):
    """max |psi| over the box seam divided by the global max |psi|.

    The seam is the set of nodes with index 0 along any axis (the
    identified faces of the periodic box).  Localized states should keep
    this ratio tiny; values near 1 mean the box is too small.
    """
    absval = np.abs(field.values)
    peak = absval.max()
    if peak == 0.0:
        return 0.0
    edge = 0.0
    for ax in range(field.grid.dim):
        edge = max(edge, np.take(absval, 0, axis=ax).max())
    return float(edge / peak)


def save_field(path, field):
    """Write a field snapshot as delimited text.

    One header line ``# dim,counts,lengths`` then one row per node,
    ``x1[,x2[,x3]],re,im``, axis 1 fastest.  Floats use 17 significant
    digits so a round trip is bit exact.
    """
    grid = field.grid
    counts = ",".join(str(n) for n in grid.counts)
    lengths = ",".join(repr(float(L)) for L in grid.lengths)
    coords = [c.flatten(order="F") for c in grid.coords()]
    vals = field.values.flatten(order="F")
    with open(path, "w") as fh:
        fh.write(f"# {grid.dim},{counts},{lengths}\n")
        for j in range(vals.size):
            parts = [f"{c[j]:.17g}" for c in coords]
            parts.append(f"{vals[j].real:.17g}")
            parts.append(f"{vals[j].imag:.17g}")
            fh.write(",".join(parts) + "\n")


def load_field(path):
    """Read a field snapshot written by save_field."""
    with open(path) as fh:
        header = fh.readline().strip()
        if not header.startswith("#"):
            raise ValueError("missing snapshot header")
        tokens = header[1:].strip().split(",")
        dim = int(tokens[0])
        counts = tuple(int(t) for t in tokens[1 : 1 + dim])
        lengths = tuple(float(t) for t in tokens[1 + dim : 1 + 2 * dim])
        data = np.loadtxt(fh, delimiter=",", ndmin=2)
    grid = make_grid(dim, lengths, counts)
    expected = int(np.prod(counts))
    if data.shape[0] != expected or data.shape[1] != dim + 2:
        raise ValueError("snapshot node table has wrong shape")
    vals = (data[:, dim] + 1j * data[:, dim + 1]).reshape(counts, order="F")
    return ComplexField(grid, vals)
