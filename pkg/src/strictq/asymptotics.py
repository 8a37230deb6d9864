"""Executable checks of the strict-quantization axioms over hbar schedules.

Each check quantizes its inputs along a decreasing hbar schedule and
reports the defect of one axiom per scheduled value:

* ``dirac``: operator norm of Q({f, g}) minus the quantum bracket
  [Q(f), Q(g)] / (i hbar);
* ``vonneumann``: operator norm of Q(fg) minus the Jordan product
  (Q(f)Q(g) + Q(g)Q(f)) / 2;
* ``norm_limit``: |  ||Q(f)|| - sup|f|  |;
* ``norm_continuity``: gaps between operator norms at successive
  scheduled hbar values;
* ``star_limit``: sup norms of (f * g - fg) and of the rescaled star
  commutator minus the Poisson bracket.

Limits are reported as sampled sequences together with a pass predicate
(final defect at or below 5% of the classical scale); no rates are
fitted.  The family cannot be evaluated at hbar = 0, so every report
carries a note that only the limiting behaviour along the schedule is
checked.  Schedules are clipped, with an explicit note, when the
aliasing guard of the kernel builder rejects their smallest entries.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import Grid2D, HbarSchedule, SampledFunction, sample
from .symbols import SymbolField, poisson_field
from .weyl import (
    OperatorKernel,
    compose,
    hbar_floor,
    op_norm,
    star_product,
    weyl_kernel,
)

__all__ = [
    "AxiomReport",
    "jordan",
    "quantum_bracket",
    "check_dirac",
    "check_vonneumann",
    "check_norm_limit",
    "check_norm_continuity",
    "check_star_limits",
    "PASS_FRACTION",
]

#: A limit claim passes when the last defect is at most this fraction of scale.
PASS_FRACTION = 0.05

_LIMIT_NOTE = "hbar=0 not evaluable; limiting behaviour sampled along the schedule"


@dataclass(frozen=True)
class AxiomReport:
    """Defect sequence of one axiom along a decreasing hbar schedule."""

    axiom: str
    hbars: np.ndarray
    defects: np.ndarray
    classical_ref: float
    detail: str = ""
    notes: tuple = field(default_factory=lambda: (_LIMIT_NOTE,))

    def __post_init__(self):
        if len(self.hbars) != len(self.defects):
            raise ValueError("hbars and defects must have equal length")
        if np.any(np.diff(self.hbars) >= 0):
            raise ValueError("hbars must be strictly decreasing")
        if np.any(np.asarray(self.defects) < 0):
            raise ValueError("defects must be nonnegative")

    def passes(self, fraction: float = PASS_FRACTION) -> bool:
        scale = self.classical_ref if self.classical_ref > 0 else 1.0
        return bool(self.defects[-1] <= fraction * scale)


def jordan(a: OperatorKernel, b: OperatorKernel) -> OperatorKernel:
    """Symmetrized product (AB + BA)/2."""
    ab = compose(a, b)
    ba = compose(b, a)
    return OperatorKernel(
        grid=ab.grid, matrix=0.5 * (ab.matrix + ba.matrix), hbar=ab.hbar,
        warnings=ab.warnings,
    )


def quantum_bracket(a: OperatorKernel, b: OperatorKernel, hbar: float) -> OperatorKernel:
    """Quantum Lie bracket (AB - BA)/(i hbar)."""
    ab = compose(a, b)
    ba = compose(b, a)
    return OperatorKernel(
        grid=ab.grid, matrix=(ab.matrix - ba.matrix) / (1j * hbar), hbar=ab.hbar,
        warnings=ab.warnings,
    )


def _clip_schedule(f: SampledFunction, schedule: HbarSchedule):
    qgrid = f.grid.qaxis
    floor = hbar_floor(qgrid, f.grid.paxis)
    clipped = schedule.clipped(floor)
    notes = [_LIMIT_NOTE]
    if clipped.count < schedule.count:
        notes.append(
            f"schedule clipped from {schedule.count} to {clipped.count} entries "
            f"by the aliasing guard (hbar_min = {floor:g})"
        )
    return qgrid, clipped, notes


def _require_fields(*fs: SampledFunction):
    for f in fs:
        if not isinstance(f.symbol, SymbolField):
            raise TypeError(
                "axiom checks need SymbolField oracles (products and brackets "
                "must be evaluable at kernel midpoints)"
            )


def check_dirac(f: SampledFunction, g: SampledFunction, schedule: HbarSchedule) -> AxiomReport:
    """Defect of Dirac's condition, Q({f,g}) vs [Q(f), Q(g)]_hbar."""
    _require_fields(f, g)
    qgrid, clipped, notes = _clip_schedule(f, schedule)
    bracket = sample(poisson_field(f.symbol, g.symbol), f.grid)
    defects = []
    for hbar in clipped.values:
        ka = weyl_kernel(f, hbar, qgrid)
        kb = weyl_kernel(g, hbar, qgrid)
        kbr = weyl_kernel(bracket, hbar, qgrid)
        qb = quantum_bracket(ka, kb, hbar)
        diff = OperatorKernel(grid=qgrid, matrix=kbr.matrix - qb.matrix, hbar=hbar)
        defects.append(op_norm(diff))
    return AxiomReport(
        axiom="dirac",
        hbars=clipped.values,
        defects=np.array(defects),
        classical_ref=bracket.sup_norm(),
        notes=tuple(notes),
    )


def check_vonneumann(f: SampledFunction, g: SampledFunction, schedule: HbarSchedule) -> AxiomReport:
    """Defect of the von Neumann condition, Q(fg) vs the Jordan product."""
    _require_fields(f, g)
    qgrid, clipped, notes = _clip_schedule(f, schedule)
    product = sample(f.symbol * g.symbol, f.grid)
    defects = []
    for hbar in clipped.values:
        ka = weyl_kernel(f, hbar, qgrid)
        kb = weyl_kernel(g, hbar, qgrid)
        kpr = weyl_kernel(product, hbar, qgrid)
        jd = jordan(ka, kb)
        diff = OperatorKernel(grid=qgrid, matrix=kpr.matrix - jd.matrix, hbar=hbar)
        defects.append(op_norm(diff))
    return AxiomReport(
        axiom="vonneumann",
        hbars=clipped.values,
        defects=np.array(defects),
        classical_ref=product.sup_norm(),
        notes=tuple(notes),
    )


def check_norm_limit(f: SampledFunction, schedule: HbarSchedule) -> AxiomReport:
    """Defect of the norm limit ||Q(f)|| -> sup|f|."""
    qgrid, clipped, notes = _clip_schedule(f, schedule)
    ref = f.sup_norm()
    defects = [abs(op_norm(weyl_kernel(f, hbar, qgrid)) - ref) for hbar in clipped.values]
    return AxiomReport(
        axiom="norm_limit",
        hbars=clipped.values,
        defects=np.array(defects),
        classical_ref=ref,
        notes=tuple(notes),
    )


def check_norm_continuity(f: SampledFunction, schedule: HbarSchedule) -> AxiomReport:
    """Gaps of ||Q(f)|| between successive scheduled hbar values."""
    qgrid, clipped, notes = _clip_schedule(f, schedule)
    if clipped.count < 2:
        raise ValueError("norm continuity needs at least two scheduled values")
    norms = [op_norm(weyl_kernel(f, hbar, qgrid)) for hbar in clipped.values]
    gaps = np.abs(np.diff(norms))
    return AxiomReport(
        axiom="norm_continuity",
        hbars=clipped.values[:-1],
        defects=gaps,
        classical_ref=f.sup_norm(),
        notes=tuple(notes),
    )


def check_star_limits(f: SampledFunction, g: SampledFunction, schedule: HbarSchedule):
    """Star-product limits: returns (product report, bracket report).

    The product report tracks sup|f * g - fg|; the bracket report tracks
    sup|(f * g - g * f)/(i hbar) - {f, g}|.
    """
    _require_fields(f, g)
    _, clipped, notes = _clip_schedule(f, schedule)
    product = sample(f.symbol * g.symbol, f.grid)
    bracket = sample(poisson_field(f.symbol, g.symbol), f.grid)
    prod_defects, br_defects = [], []
    for hbar in clipped.values:
        fg = star_product(f, g, hbar)
        gf = star_product(g, f, hbar)
        prod_defects.append(float(np.max(np.abs(fg.values - product.values))))
        comm = (fg.values - gf.values) / (1j * hbar)
        br_defects.append(float(np.max(np.abs(comm - bracket.values))))
    common = dict(axiom="star_limit", hbars=clipped.values, notes=tuple(notes))
    return (
        AxiomReport(defects=np.array(prod_defects), classical_ref=product.sup_norm(),
                    detail="product", **common),
        AxiomReport(defects=np.array(br_defects), classical_ref=bracket.sup_norm(),
                    detail="bracket", **common),
    )
