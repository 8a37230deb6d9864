"""The universal rotation algebra, its representations, and torus quantization.

Elements of the algebra are finite linear combinations of basis symbols
``F[m, k]`` (m, k integers) over a fixed deformation parameter theta,
multiplying by

    F[m, k] * F[m', k'] = e^{2 pi i m' k theta} F[m + m', k + k']

with involution ``F[m, k]^* = e^{2 pi i m k theta} F[-m, -k]`` and unit
``F[0, 0]``.  The generators ``u = F[1, 0]`` and ``v = F[0, 1]`` satisfy
``v u = e^{2 pi i theta} u v``.

For rational ``theta = K/N`` (reduced) the algebra has an N-dimensional
irreducible representation by the clock matrix ``U`` (diagonal phases
``e^{2 pi i k / N}``) and the step-K shift matrix ``V``; ``represent``
sends ``F[m, k]`` to ``U^m V^k`` in that order.  The torus quantization
map adds the symmetrizing phase,

    Q(e^{2 pi i (m x + k y)}) = e^{i pi m k K/N} U^m V^k,

which makes real observables go to Hermitian matrices.

Units on the area-N torus are fixed as h = 1, hbar = 1/(2 pi), with
Poisson bracket ``{f, g} = (1/N)(d_x f d_y g - d_y f d_x g)``; under this
convention the exact commutator defect of two exponentials is the scalar
``2 i (m n pi / N - sin(m n pi / N))`` times the quantized product
exponential, which :func:`dirac_defect` verifies by direct matrix
computation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

__all__ = [
    "RotAlgElement",
    "TorusRep",
    "TorusObservable",
    "TORUS_HBAR",
    "rot_element",
    "convolve",
    "involution",
    "rep_matrices",
    "represent",
    "torus_observable",
    "quantize_torus",
    "poisson_exponentials",
    "dirac_defect",
    "multiplication_action",
    "translation_action",
    "center_check",
]

#: Planck constant h = 1 on the torus; hbar = h / (2 pi).
TORUS_HBAR = 1.0 / (2.0 * np.pi)


def _clean(terms: dict, tol: float = 0.0) -> dict:
    return {mk: c for mk, c in terms.items() if abs(c) > tol}


@dataclass(frozen=True)
class RotAlgElement:
    """Finite combination of basis symbols F[m, k] at deformation theta."""

    theta: float
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        if not 0.0 <= self.theta < 1.0:
            raise ValueError(f"need theta in [0, 1), got {self.theta}")
        for (m, k), c in self.terms.items():
            if not (isinstance(m, (int, np.integer)) and isinstance(k, (int, np.integer))):
                raise TypeError(f"term index ({m!r}, {k!r}) is not an integer pair")
            if not np.isfinite(c):
                raise ValueError(f"non-finite coefficient at ({m}, {k})")

    def coeff(self, m: int, k: int) -> complex:
        return self.terms.get((m, k), 0.0 + 0.0j)

    def __add__(self, other: "RotAlgElement") -> "RotAlgElement":
        if self.theta != other.theta:
            raise ValueError("cannot add elements with different theta")
        out = dict(self.terms)
        for mk, c in other.terms.items():
            out[mk] = out.get(mk, 0.0) + c
        return RotAlgElement(self.theta, _clean(out))

    def __sub__(self, other: "RotAlgElement") -> "RotAlgElement":
        return self + (-1.0) * other

    def __rmul__(self, scalar) -> "RotAlgElement":
        return RotAlgElement(self.theta, _clean({mk: scalar * c for mk, c in self.terms.items()}))

    def sup_coeff(self) -> float:
        return max((abs(c) for c in self.terms.values()), default=0.0)


def rot_element(theta: float, terms: dict) -> RotAlgElement:
    """Convenience constructor: {(m, k): coefficient} at the given theta."""
    return RotAlgElement(theta, {(int(m), int(k)): complex(c) for (m, k), c in terms.items()})


def convolve(a: RotAlgElement, b: RotAlgElement) -> RotAlgElement:
    """Bilinear extension of F[m,k] * F[m',k'] = e^{2 pi i m' k theta} F[m+m', k+k']."""
    if a.theta != b.theta:
        raise ValueError(f"theta mismatch: {a.theta} vs {b.theta}")
    out: dict = {}
    th = a.theta
    for (m, k), c in a.terms.items():
        for (mp, kp), cp in b.terms.items():
            phase = np.exp(2j * np.pi * mp * k * th)
            key = (m + mp, k + kp)
            out[key] = out.get(key, 0.0) + c * cp * phase
    return RotAlgElement(th, _clean(out))


def involution(a: RotAlgElement) -> RotAlgElement:
    """Conjugate-linear extension of F[m,k]^* = e^{2 pi i m k theta} F[-m,-k]."""
    out: dict = {}
    for (m, k), c in a.terms.items():
        out[(-m, -k)] = np.conj(c) * np.exp(2j * np.pi * m * k * a.theta)
    return RotAlgElement(a.theta, _clean(out))


@dataclass(frozen=True)
class TorusRep:
    """The N-dimensional irreducible representation data for theta = K/N."""

    N: int
    K: int
    U: np.ndarray
    V: np.ndarray

    @property
    def theta(self) -> float:
        return (self.K % self.N) / self.N


def rep_matrices(N: int, K: int = 1) -> TorusRep:
    """Clock matrix U (phases e^{2 pi i k/N}) and step-K shift matrix V.

    Requires gcd(K, N) = 1 so that the representation is irreducible.
    """
    if N < 1 or K < 1:
        raise ValueError(f"need N >= 1 and K >= 1, got N={N}, K={K}")
    if gcd(K, N) != 1:
        raise ValueError(f"need gcd(K, N) = 1, got K={K}, N={N}")
    roots = np.exp(2j * np.pi * np.arange(N) / N)
    U = np.diag(roots)
    V = np.zeros((N, N), dtype=complex)
    V[(np.arange(N) - K) % N, np.arange(N)] = 1.0
    return TorusRep(N=N, K=K, U=U, V=V)


def _u_pow_v_pow(rep: TorusRep, m: int, k: int) -> np.ndarray:
    """U^m V^k assembled from integer phase indices (table-exact roots of unity)."""
    N = rep.N
    rows = np.arange(N)
    cols = (rows + k * rep.K) % N
    phases = np.exp(2j * np.pi * ((m * rows) % N) / N)
    out = np.zeros((N, N), dtype=complex)
    out[rows, cols] = phases
    return out


def represent(a: RotAlgElement, rep: TorusRep) -> np.ndarray:
    """Sum of terms(m, k) * U^m V^k; requires a.theta = K/N reduced."""
    if abs(a.theta - rep.theta) > 1e-15:
        raise ValueError(f"element theta {a.theta} does not match rep K/N = {rep.theta}")
    out = np.zeros((rep.N, rep.N), dtype=complex)
    for (m, k), c in a.terms.items():
        out += c * _u_pow_v_pow(rep, m, k)
    return out


@dataclass(frozen=True)
class TorusObservable:
    """Finite Fourier sum f(x, y) = sum c[m, k] e^{2 pi i (m x + k y)}."""

    terms: dict = field(default_factory=dict)

    def __call__(self, x, y):
        out = 0.0 + 0.0j
        for (m, k), c in self.terms.items():
            out = out + c * np.exp(2j * np.pi * (m * np.asarray(x) + k * np.asarray(y)))
        return out

    def is_real(self, tol: float = 0.0) -> bool:
        for (m, k), c in self.terms.items():
            if abs(np.conj(self.terms.get((-m, -k), 0.0)) - c) > tol:
                return False
        return True


def torus_observable(terms: dict) -> TorusObservable:
    return TorusObservable({(int(m), int(k)): complex(c) for (m, k), c in terms.items()})


def quantize_torus(f: TorusObservable, N: int, K: int = 1) -> np.ndarray:
    """Q(f) = sum c[m, k] e^{i pi m k K/N} U^m V^k on the N-dimensional space."""
    rep = rep_matrices(N, K)
    out = np.zeros((N, N), dtype=complex)
    for (m, k), c in f.terms.items():
        out += c * np.exp(1j * np.pi * m * k * K / N) * _u_pow_v_pow(rep, m, k)
    return out


def poisson_exponentials(m1: int, k1: int, m2: int, k2: int, N: int) -> TorusObservable:
    """Bracket of two exponentials on the area-N torus (h = 1 units).

    {e1, e2} = (1/N)(d_x e1 d_y e2 - d_y e1 d_x e2)
             = -(4 pi^2 / N)(m1 k2 - k1 m2) e^{2 pi i ((m1+m2) x + (k1+k2) y)}.
    """
    coeff = -(4.0 * np.pi**2 / N) * (m1 * k2 - k1 * m2)
    return torus_observable({(m1 + m2, k1 + k2): coeff})


def dirac_defect(m: int, n: int, N: int) -> dict:
    """Exact commutator defect of Q(e^{2 pi i m x}) and Q(e^{2 pi i n y}).

    Returns the closed-form scalar ``2i(m n pi/N - sin(m n pi/N))``, the
    matrix ``scalar * Q(e^{2 pi i (m x + n y)})``, and the same quantity
    computed directly as ``[Q(f), Q(g)] - i hbar Q({f, g})`` from the
    representation matrices, for comparison.
    """
    if N < 1:
        raise ValueError(f"need N >= 1, got N={N}")
    scalar = 2j * (m * n * np.pi / N - np.sin(m * n * np.pi / N))
    qmn = quantize_torus(torus_observable({(m, n): 1.0}), N, 1)
    qf = quantize_torus(torus_observable({(m, 0): 1.0}), N, 1)
    qg = quantize_torus(torus_observable({(0, n): 1.0}), N, 1)
    qbr = quantize_torus(poisson_exponentials(m, 0, 0, n, N), N, 1)
    direct = (qf @ qg - qg @ qf) - 1j * TORUS_HBAR * qbr
    return {"scalar": scalar, "matrix": scalar * qmn, "direct": direct}


def multiplication_action(f, N: int) -> np.ndarray:
    """Quantization of an x-only observable: diagonal matrix of f(k/N).

    Fourier-sum observables are evaluated through the same integer-mod
    root-of-unity table as the representation matrices, so the diagonal
    agrees with ``quantize_torus`` bit for bit.
    """
    k = np.arange(N)
    if isinstance(f, TorusObservable):
        if any(kk != 0 for (_, kk) in f.terms):
            raise ValueError("multiplication_action needs an observable depending on x only")
        roots = np.exp(2j * np.pi * np.arange(N) / N)
        values = np.zeros(N, dtype=complex)
        for (m, _), c in f.terms.items():
            values += c * roots[(m * k) % N]
    else:
        values = f(k / N)
    return np.diag(np.asarray(values, dtype=complex))


def translation_action(n: int, N: int) -> np.ndarray:
    """Unitary translation operator: basis vector k goes to k - n mod N."""
    rep = rep_matrices(N, 1)
    return _u_pow_v_pow(rep, 0, n)


def center_check(m: int, k: int, N: int, K: int = 1) -> dict:
    """Test whether F[m, k] represents as a scalar commuting with U and V.

    Elements with both indices multiples of N are central and represent
    as unimodular scalars; anything else fails the commutation test for
    N >= 2.
    """
    rep = rep_matrices(N, K)
    mat = represent(rot_element(rep.theta, {(m, k): 1.0}), rep)
    scalar = complex(mat[0, 0])
    comm_u = np.max(np.abs(mat @ rep.U - rep.U @ mat))
    comm_v = np.max(np.abs(mat @ rep.V - rep.V @ mat))
    off = np.max(np.abs(mat - scalar * np.eye(N)))
    is_central = bool(max(comm_u, comm_v, off) <= 1e-13 * max(abs(scalar), 1.0))
    return {"is_central": is_central, "scalar": scalar}
