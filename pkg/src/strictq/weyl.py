"""The Weyl-Moyal quantization map, its kernel calculus, and the star product.

A phase-space function f with Schwartz-type decay is mapped, for every
``hbar > 0``, to the integral operator on the position grid with kernel::

    K(q, q') = 1/(2 pi hbar) \\int dp  e^{i p (q - q')/hbar}  f((q + q')/2, p)

The integral is evaluated by midpoint quadrature over the p-axis of f's
own grid, with the midpoint argument supplied by f's retained symbol
oracle (never by interpolation).  Because the kernel depends on (q, q')
only through the midpoint ``m = (q + q')/2`` and the separation
``d = q - q'``, and a midpoint grid has just ``2n - 1`` distinct values
of each, the build fills a (2n-1) x (2n-1) table with one matrix product
and gathers the n x n kernel from its anti-diagonals.

Sampling limits.  The quadrature resolves the oscillation ``e^{ipd/hbar}``
only while the phase advances by at most pi per p-sample, i.e. for
separations ``|d| <= pi hbar / dp``.  Entries beyond that band alias, so
they are set to zero instead; for admissible symbols (fiber transform
band-limited within the p-grid's Nyquist range) the true kernel is below
tolerance there, and the build verifies this by inspecting the band
edge.  A second, hbar-dependent limit is fatal: once ``pi hbar / dp``
drops below the position spacing the aliased copies of the kernel
collide with the true diagonal and no usable operator remains, which
raises :class:`AliasingError` naming the smallest usable hbar.

Dequantization inverts the kernel map,

    f(q, p) = hbar \\int dv e^{-i p v} K(q + hbar v/2, q - hbar v/2),

reading the kernel along anti-diagonals; the midpoints that fall between
grid anti-diagonals are recovered by trigonometric interpolation (one
half-cell FFT shift of the whole matrix).  The momentum band resolved by
the inverse transform is ``|p| <= pi hbar / dq``; values beyond it are
zeroed with the same band-edge check.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from numpy.linalg import eigvalsh
from scipy.linalg import svdvals

from .core import (
    DECAY_TOL,
    Grid1D,
    Grid2D,
    GridError,
    SampledFunction,
    boundary_decay,
    trig_shift,
)

__all__ = [
    "OperatorKernel",
    "WaveFunction",
    "AliasingError",
    "ContractError",
    "AccuracyError",
    "weyl_kernel",
    "apply",
    "hs_norm",
    "op_norm",
    "compose",
    "adjoint",
    "dequantize",
    "star_product",
    "hbar_floor",
]

#: Largest matrix size accepted by the dense singular-value/eigen solvers.
MAX_DENSE_N = 2048

#: Relative band-edge content above which kernels/symbols are flagged.
BAND_EDGE_TOL = 1e-8


class AliasingError(ValueError):
    """Raised when hbar is too small for the grids to resolve the kernel."""

    def __init__(self, message, hbar_min):
        super().__init__(message)
        self.hbar_min = hbar_min


class ContractError(ValueError):
    """Raised when a required ingredient (e.g. the symbol oracle) is missing."""


class AccuracyError(ValueError):
    """Raised when an interpolation/truncation residual exceeds tolerance."""


@dataclass(frozen=True)
class OperatorKernel:
    """Dense kernel matrix K(q_i, q_j) over a position grid, at fixed hbar."""

    grid: Grid1D
    matrix: np.ndarray
    hbar: float
    warnings: tuple = ()

    def __post_init__(self):
        n = self.grid.n
        if np.shape(self.matrix) != (n, n):
            raise GridError(
                f"kernel matrix shape {np.shape(self.matrix)} does not match grid n={n}"
            )
        if not self.hbar > 0:
            raise ValueError(f"need hbar > 0, got {self.hbar}")


@dataclass(frozen=True)
class WaveFunction:
    """Complex samples of a state on a position grid."""

    grid: Grid1D
    values: np.ndarray

    def __post_init__(self):
        if np.shape(self.values) != (self.grid.n,):
            raise GridError("wave function length does not match grid")

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.values) ** 2) * self.grid.delta))


def hbar_floor(qgrid: Grid1D, paxis: Grid1D) -> float:
    """Smallest hbar for which the grids can still separate the kernel diagonal."""
    return qgrid.delta * paxis.delta / np.pi


def _midpoints(qgrid: Grid1D) -> np.ndarray:
    # the 2n-1 distinct values of (q_i + q_j)/2, spacing delta/2
    return qgrid.lo + (np.arange(2 * qgrid.n - 1) + 1.0) * (qgrid.delta / 2.0)


def _gather_table(table: np.ndarray, n: int) -> np.ndarray:
    i = np.arange(n)
    return table[i[:, None] + i[None, :], i[:, None] - i[None, :] + n - 1]


def weyl_kernel(f: SampledFunction, hbar: float, qgrid: Grid1D) -> OperatorKernel:
    """Quantize ``f`` into an integral kernel on ``qgrid`` at the given hbar."""
    if not isinstance(f.grid, Grid2D):
        raise GridError("weyl_kernel needs f on a 2-D (q, p) grid")
    if f.symbol is None:
        raise ContractError(
            "weyl_kernel needs the symbol oracle to evaluate at midpoints"
        )
    if not hbar > 0:
        raise ValueError(f"need hbar > 0, got {hbar}")
    paxis = f.grid.paxis
    n = qgrid.n
    dq, dp = qgrid.delta, paxis.delta

    floor = hbar_floor(qgrid, paxis)
    if hbar < floor:
        raise AliasingError(
            f"hbar={hbar:g} unresolved: the phase advances by more than pi per "
            f"p-sample already at one grid spacing; minimal usable hbar on these "
            f"grids is {floor:g}",
            hbar_min=floor,
        )

    warnings = []
    decay = boundary_decay(f.values, axis=1)
    if decay > DECAY_TOL:
        warnings.append(f"p-boundary decay {decay:.2e} above tolerance")

    mids = _midpoints(qgrid)
    p = paxis.points
    fmid = np.asarray(f.symbol(mids[:, None], p[None, :]), dtype=complex)

    seps = (np.arange(2 * n - 1) - (n - 1)) * dq
    band = np.pi * hbar / dp
    inside = np.abs(seps) <= band
    phases = np.zeros((2 * n - 1, paxis.n), dtype=complex)
    phases[inside] = np.exp(1j * np.outer(seps[inside], p) / hbar)
    table = fmid @ phases.T * (dp / (2.0 * np.pi * hbar))

    if not inside.all():
        # the band was clipped: the true kernel must be negligible at the edge
        edge_cols = _band_edge_columns(inside)
        scale = np.max(np.abs(table))
        edge = np.max(np.abs(table[:, edge_cols])) if scale > 0 else 0.0
        if scale > 0 and edge > BAND_EDGE_TOL * scale:
            warnings.append(
                f"kernel content {edge / scale:.2e} at the resolved-band edge "
                f"|q - q'| = {band:g}; refine the p-grid or use larger hbar"
            )

    return OperatorKernel(
        grid=qgrid, matrix=_gather_table(table, n), hbar=hbar, warnings=tuple(warnings)
    )


def _band_edge_columns(inside: np.ndarray) -> np.ndarray:
    idx = np.flatnonzero(inside)
    return np.unique(idx[[0, -1]])


def apply(kernel: OperatorKernel, psi: WaveFunction) -> WaveFunction:
    """Act on a state: ``(K psi)(q_i) = sum_j K[i, j] psi(q_j) dq``."""
    if kernel.grid != psi.grid:
        raise GridError("kernel and wave function live on different grids")
    return WaveFunction(grid=psi.grid, values=kernel.matrix @ psi.values * kernel.grid.delta)


def hs_norm(kernel: OperatorKernel) -> float:
    """Hilbert-Schmidt norm ``sqrt(sum |K_ij|^2 dq^2)``."""
    return float(np.sqrt(np.sum(np.abs(kernel.matrix) ** 2)) * kernel.grid.delta)


def op_norm(kernel: OperatorKernel) -> float:
    """Operator norm: largest singular value of ``matrix * dq``."""
    n = kernel.grid.n
    if n > MAX_DENSE_N:
        raise ValueError(f"dense norm limited to n <= {MAX_DENSE_N}, got {n}")
    m = kernel.matrix
    scale = np.max(np.abs(m))
    if scale == 0.0:
        return 0.0
    if np.max(np.abs(m - m.conj().T)) <= 1e-13 * scale:
        top = np.max(np.abs(eigvalsh(m)))
    else:
        top = svdvals(m)[0]
    return float(top * kernel.grid.delta)


def compose(a: OperatorKernel, b: OperatorKernel) -> OperatorKernel:
    """Operator product as discretized kernel convolution ``A @ B * dq``."""
    if a.grid != b.grid:
        raise GridError("compose needs kernels on the same grid")
    if a.hbar != b.hbar:
        raise ValueError(f"compose needs equal hbar, got {a.hbar} and {b.hbar}")
    return OperatorKernel(
        grid=a.grid,
        matrix=a.matrix @ b.matrix * a.grid.delta,
        hbar=a.hbar,
        warnings=tuple(set(a.warnings) | set(b.warnings)),
    )


def adjoint(kernel: OperatorKernel) -> OperatorKernel:
    """Conjugate transpose of the kernel matrix."""
    return replace(kernel, matrix=kernel.matrix.conj().T)


def _antidiagonal_table(kernel: OperatorKernel) -> np.ndarray:
    """Kernel in midpoint/separation coordinates, A[i, u] = K(q_i + u dq/4, q_i - u dq/4).

    Row i is the anti-diagonal through the grid point q_i, sampled at
    separations ``u dq/2`` for u = -2(n-1)..2(n-1).  The kernel's
    interpolant has separation bandwidth up to pi/dq (the sum of two
    position bandwidths over two), so the separation grid is refined to
    dq/2: off-lattice values come from quarter-cell FFT shifts of the
    whole matrix.  Without the refinement, multiplying by the transform
    phase would alias for kernels with band-edge content (e.g. the
    discrete identity).  Entries whose anti-diagonal leaves the matrix
    are zero.
    """
    n = kernel.grid.n
    dq = kernel.grid.delta
    shifted = {0: kernel.matrix}
    for c in (1, 2, 3):
        s = c * dq / 4.0
        shifted[c] = trig_shift(trig_shift(kernel.matrix, 0, +s, dq), 1, -s, dq)
    m = 2 * (n - 1)
    a = np.zeros((n, 2 * m + 1), dtype=complex)
    i = np.arange(n)
    for u in range(-m, m + 1):
        c = u % 4
        w = (u - c) // 4
        rows, cols = i + w, i - w
        ok = (rows >= 0) & (rows < n) & (cols >= 0) & (cols < n)
        a[i[ok], u + m] = shifted[c][rows[ok], cols[ok]]
    return a


def dequantize(kernel: OperatorKernel, pgrid: Grid2D | None = None) -> SampledFunction:
    """Recover the phase-space symbol of a kernel on a (q, p) grid.

    When no grid is given the symbol is sampled on the kernel's own
    position axis times a momentum axis covering the resolved band.  The
    momentum band resolved by the separation sampling is
    ``|p| <= pi hbar / dq``; beyond it the symbol is zeroed (admissible
    symbols have decayed there, which is verified at the band edge).
    """
    if pgrid is None:
        band = np.pi * kernel.hbar / kernel.grid.delta
        pgrid = Grid2D(kernel.grid, Grid1D(-band, band, kernel.grid.n))
    if pgrid.qaxis != kernel.grid:
        raise GridError("dequantize needs the kernel's own position axis")
    n = kernel.grid.n
    dq = kernel.grid.delta
    hbar = kernel.hbar
    a = _antidiagonal_table(kernel)
    m = 2 * (n - 1)

    # truncation residual: interior anti-diagonals must decay in separation
    # before leaving the matrix (rows near the box edge truncate early by
    # construction and carry no weight for decaying symbols)
    # the probe uses raw matrix samples (u = +-4 mu, no interpolation), so a
    # band-edge kernel like the discrete identity does not false-trigger
    scale = np.max(np.abs(a))
    if scale > 0.0:
        rows = np.arange(n)
        mu = np.minimum(rows, n - 1 - rows)
        interior = mu >= n // 4
        ridx = rows[interior]
        edge = max(
            np.abs(a[ridx, m - 4 * mu[interior]]).max(),
            np.abs(a[ridx, m + 4 * mu[interior]]).max(),
        )
        if edge > 1e-5 * scale:
            raise AccuracyError(
                f"kernel anti-diagonals truncated at relative magnitude {edge / scale:.2e}; "
                "enlarge the position box"
            )

    seps = (np.arange(2 * m + 1) - m) * (dq / 2.0)
    p = pgrid.paxis.points
    band = np.pi * hbar / dq
    inside = np.abs(p) <= band
    phases = np.zeros((2 * m + 1, pgrid.paxis.n), dtype=complex)
    phases[:, inside] = np.exp(-1j * np.outer(seps, p[inside]) / hbar)
    values = a @ phases * (dq / 2.0)

    warnings = list(kernel.warnings)
    if not inside.all():
        vmax = np.max(np.abs(values))
        edge_cols = _band_edge_columns(inside)
        if vmax > 0 and np.max(np.abs(values[:, edge_cols])) > BAND_EDGE_TOL * vmax:
            warnings.append(
                f"symbol content at the resolved momentum band edge |p| = {band:g}"
            )
    return SampledFunction(grid=pgrid, values=values, symbol=None, warnings=tuple(warnings))


def star_product(f: SampledFunction, g: SampledFunction, hbar: float) -> SampledFunction:
    """Deformed product: quantize both factors, compose, dequantize.

    Both functions must live on the same (q, p) grid and carry symbol
    oracles; the result is sampled on that grid.
    """
    if f.grid != g.grid:
        raise GridError("star_product needs both factors on the same grid")
    qgrid = f.grid.qaxis
    ka = weyl_kernel(f, hbar, qgrid)
    kb = weyl_kernel(g, hbar, qgrid)
    return dequantize(compose(ka, kb), f.grid)
