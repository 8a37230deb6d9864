import numpy as np
import pytest
from numpy.testing import assert_allclose

from strictq.core import Grid1D, Grid2D, fourier_fiber as flat_fiber, sample
from strictq.gaussian import GaussianObservable
from strictq.landsman import (
    AdmissibilityError,
    DomainError,
    FiberSymbol,
    Metric1D,
    exp_map,
    fiber_fourier,
    gaussian_fiber_symbol,
    hbar_admissible,
    landsman_apply,
    landsman_kernel,
    metric_circle,
    metric_exp2q,
    metric_flat,
    phi_hbar,
    phi_hbar_inverse,
    weighted_compose,
    weighted_op_norm,
)
from strictq.symbols import gaussian_field, poisson_field
from strictq.weyl import OperatorKernel, WaveFunction, apply as weyl_apply, weyl_kernel

from conftest import sampled_gaussian

FLAT = metric_flat()
EXP2Q = metric_exp2q()


# ------------------------------------------------------------ fiber symbols

def test_fiber_fourier_flat_reduces_to_core():
    axis = Grid1D(-12.0, 12.0, 256)
    grid = Grid2D(axis, axis)
    f = sampled_gaussian(GaussianObservable(0.2, -0.3, 1.0, 0.8), grid)
    fs = fiber_fourier(f, FLAT)
    assert np.max(np.abs(fs.values - flat_fiber(f).values)) == 0.0


def test_fiber_fourier_gaussian_analytic():
    axis = Grid1D(-12.0, 12.0, 256)
    grid = Grid2D(axis, axis)
    g = GaussianObservable(0.2, -0.3, 1.0, 0.8)
    f = sampled_gaussian(g, grid)
    fs = fiber_fourier(f, FLAT)
    oracle = gaussian_fiber_symbol(g, FLAT, fs.base, fs.fiber)
    assert np.max(np.abs(fs.values - oracle.values)) < 1e-6


def test_fiber_fourier_metric_scaling():
    axis = Grid1D(-12.0, 12.0, 256)
    grid = Grid2D(axis, axis)
    f = sampled_gaussian(GaussianObservable(), grid)
    four_g = Metric1D(g=lambda q: 4.0 * np.ones_like(np.asarray(q, dtype=float)),
                      domain="line", s=lambda q: 2.0 * np.asarray(q),
                      s_inv=lambda s: np.asarray(s) / 2.0)
    a = fiber_fourier(f, FLAT)
    b = fiber_fourier(f, four_g)
    assert np.max(np.abs(b.values - a.values / 2.0)) < 1e-14


# ----------------------------------------------------------- geodesic charts

def test_exp_map_flat_and_zero():
    assert exp_map(1.2, 0.7, FLAT) == pytest.approx(1.9, abs=1e-14)
    for metric in (FLAT, EXP2Q):
        assert exp_map(0.37, 0.0, metric) == pytest.approx(0.37, abs=1e-14)


def test_exp_map_exp2q_closed_form():
    # s(q) = e^q gives exp_q(X) = q + log(1 + X), valid for X > -1
    for q, X in ((0.5, 0.3), (-1.0, 2.0), (0.0, -0.5)):
        assert exp_map(q, X, EXP2Q) == pytest.approx(q + np.log1p(X), abs=1e-12)
    with pytest.raises(DomainError):
        exp_map(0.0, -1.5, EXP2Q)


def test_phi_hbar_flat_matches_affine_chart():
    q, X, hbar = 0.4, 1.7, 0.25
    x, xp = phi_hbar(q, X, hbar, FLAT)
    assert x == pytest.approx(q + hbar * X / 2)
    assert xp == pytest.approx(q - hbar * X / 2)
    qq, XX = phi_hbar_inverse(x, xp, hbar, FLAT)
    assert qq == pytest.approx((x + xp) / 2)
    assert XX == pytest.approx((x - xp) / hbar)


def test_phi_hbar_round_trips():
    for metric, tol in ((FLAT, 1e-10), (EXP2Q, 1e-8)):
        q, X = phi_hbar_inverse(*phi_hbar(0.4, 1.7, 0.25, metric), 0.25, metric)
        assert abs(q - 0.4) < tol
        assert abs(X - 1.7) < tol


def test_numeric_arclength_agrees_with_closed_form():
    num = Metric1D(g=lambda q: np.exp(2.0 * np.asarray(q, dtype=float)), lo=-4, hi=4)
    qs = np.linspace(-3, 3, 11)
    want = np.exp(qs) - np.exp(-4.0)
    assert np.max(np.abs(num.arclength(qs) - want)) < 1e-12
    assert np.max(np.abs(num.arclength_inverse(num.arclength(qs)) - qs)) < 1e-12


# --------------------------------------------------------------- quantization

@pytest.fixture(scope="module")
def flat_setup():
    axis = Grid1D(-12.0, 12.0, 384)
    grid = Grid2D(axis, axis)
    g = GaussianObservable(0.2, -0.3, 1.0, 0.8)
    f = sampled_gaussian(g, grid)
    fiber = fiber_fourier(f, FLAT).fiber
    fsym = gaussian_fiber_symbol(g, FLAT, axis, fiber)
    return axis, grid, f, fsym


@pytest.mark.parametrize("hbar", [1.0, 0.5, 0.25])
def test_flat_equivalence(flat_setup, hbar):
    axis, grid, f, fsym = flat_setup
    kl = landsman_kernel(fsym, hbar, FLAT)
    kw = weyl_kernel(f, hbar, axis)
    assert np.max(np.abs(kl.matrix - kw.matrix)) < 1e-5 * np.max(np.abs(kw.matrix))


def test_flat_apply_reduces_to_weyl(flat_setup):
    axis, grid, f, fsym = flat_setup
    k = landsman_kernel(fsym, 0.5, FLAT)
    psi = WaveFunction(grid=axis, values=np.exp(-axis.points**2).astype(complex))
    a = landsman_apply(k, psi, FLAT)
    b = weyl_apply(k, psi)
    assert np.max(np.abs(a.values - b.values)) == 0.0


def test_circle_kernel_hermitian():
    circ = metric_circle(1.0)
    axis = Grid1D(0.0, 1.0, 128)
    vax = Grid1D(-8.0, 8.0, 128)

    def ft(q, v):
        return (1.0 + 0.3 * np.cos(2 * np.pi * np.asarray(q))) * np.exp(-np.asarray(v) ** 2)

    values = ft(axis.points[:, None], vax.points[None, :]).astype(complex)
    fsym = FiberSymbol(base=axis, fiber=vax, values=values, support_radius=6.0,
                       symbol=ft)
    hbar = 0.9 * hbar_admissible(fsym, circ)
    k = landsman_kernel(fsym, hbar, circ)
    assert np.max(np.abs(k.matrix - k.matrix.conj().T)) < 1e-12


def exp2q_setup(n=384):
    base = Grid1D(-2.0, 2.0, n)
    pax = Grid1D(-12.0, 12.0, n)
    grid = Grid2D(base, pax)
    gA = GaussianObservable(0.0, -0.2, 0.05, 1.0)
    gB = GaussianObservable(0.1, 0.3, 0.06, 0.9)
    fA = sampled_gaussian(gA, grid)
    fB = sampled_gaussian(gB, grid)
    fiber = fiber_fourier(fA, EXP2Q).fiber
    sA = gaussian_fiber_symbol(gA, EXP2Q, base, fiber)
    sB = gaussian_fiber_symbol(gB, EXP2Q, base, fiber)
    return base, grid, fA, fB, sA, sB


def test_exp2q_kernel_hermitian_for_real_symbol():
    base, grid, fA, fB, sA, sB = exp2q_setup(256)
    hbar = 0.9 * hbar_admissible(sA, EXP2Q)
    k = landsman_kernel(sA, hbar, EXP2Q)
    assert np.max(np.abs(k.matrix - k.matrix.conj().T)) < 1e-10


def test_admissibility_guard():
    base, grid, fA, fB, sA, sB = exp2q_setup(128)
    limit = hbar_admissible(sA, EXP2Q)
    with pytest.raises(AdmissibilityError, match="hbar"):
        landsman_kernel(sA, 2.0 * limit, EXP2Q)


def test_zero_symbol_quantizes_to_zero():
    axis = Grid1D(-4.0, 4.0, 64)
    vax = Grid1D(-6.0, 6.0, 64)
    fsym = FiberSymbol(base=axis, fiber=vax,
                       values=np.zeros((64, 64), dtype=complex),
                       support_radius=3.0, symbol=lambda q, v: np.zeros_like(q + v))
    k = landsman_kernel(fsym, 0.25, FLAT)
    assert np.all(k.matrix == 0.0)


def test_weighted_norm_limit_exp2q():
    base, grid, fA, fB, sA, sB = exp2q_setup()
    adm = hbar_admissible(sA, EXP2Q)
    norms = []
    for hbar in min(0.9 * adm, 0.16) * 0.5 ** np.arange(4):
        norms.append(weighted_op_norm(landsman_kernel(sA, hbar, EXP2Q), EXP2Q))
    gaps = np.abs(np.array(norms) - fA.sup_norm())
    assert np.all(np.diff(gaps) < 0)
    assert gaps[-1] < 0.1 * fA.sup_norm()


def test_exp2q_axiom_transfer_dirac_vonneumann():
    base, grid, fA, fB, sA, sB = exp2q_setup()
    bracket = sample(poisson_field(fA.symbol, fB.symbol), grid)
    product = sample(fA.symbol * fB.symbol, grid)
    sBr = fiber_fourier(bracket, EXP2Q)
    sPr = fiber_fourier(product, EXP2Q)
    adm = min(hbar_admissible(s, EXP2Q) for s in (sA, sB, sBr, sPr))
    dirac, vonn = [], []
    for hbar in min(0.9 * adm, 0.16) * 0.5 ** np.arange(4):
        ka = landsman_kernel(sA, hbar, EXP2Q)
        kb = landsman_kernel(sB, hbar, EXP2Q)
        ab = weighted_compose(ka, kb, EXP2Q)
        ba = weighted_compose(kb, ka, EXP2Q)
        kbr = landsman_kernel(sBr, hbar, EXP2Q)
        kpr = landsman_kernel(sPr, hbar, EXP2Q)
        d = OperatorKernel(grid=base,
                           matrix=kbr.matrix - (ab.matrix - ba.matrix) / (1j * hbar),
                           hbar=hbar)
        v = OperatorKernel(grid=base,
                           matrix=kpr.matrix - 0.5 * (ab.matrix + ba.matrix),
                           hbar=hbar)
        dirac.append(weighted_op_norm(d, EXP2Q))
        vonn.append(weighted_op_norm(v, EXP2Q))
    assert np.all(np.diff(dirac) < 0)
    assert np.all(np.diff(vonn) < 0)
