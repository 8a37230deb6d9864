"""Validate the landsman module."""
import numpy as np
from strictq.core import Grid1D, Grid2D, sample, conjugate_grid
from strictq.symbols import gaussian_field, poisson_field
from strictq.gaussian import GaussianObservable
from strictq import landsman as lm
from strictq import weyl

flat = lm.metric_flat()
exp2q = lm.metric_exp2q()

# exp_map closed forms
print("flat exp_map:", lm.exp_map(1.2, 0.7, flat) - 1.9)
print("exp2q exp_map:", lm.exp_map(0.5, 0.3, exp2q) - (0.5 + np.log(1.3)))
q, X = lm.phi_hbar_inverse(*lm.phi_hbar(0.4, 1.7, 0.25, exp2q), 0.25, exp2q)
print("exp2q round trip:", abs(q - 0.4), abs(X - 1.7))

# numeric arclength path vs closed form for e^{2q}
num = lm.Metric1D(g=lambda qq: np.exp(2.0 * np.asarray(qq, dtype=float)), lo=-4, hi=4)
qs = np.linspace(-3, 3, 11)
print("numeric arclength err:", np.max(np.abs(num.arclength(qs) - (np.exp(qs) - np.exp(-4.0)))))
print("numeric inverse err:", np.max(np.abs(num.arclength_inverse(num.arclength(qs)) - qs)))

# flat equivalence: landsman kernel vs weyl kernel
B, N = 12.0, 384
ax = Grid1D(-B, B, N)
grid = Grid2D(ax, ax)
g0 = GaussianObservable(0.2, -0.3, 1.0, 0.8)
f = sample(gaussian_field(g0), grid)
fsym = lm.fiber_fourier(f, flat)
print("support radius:", fsym.support_radius, "admissible:", lm.hbar_admissible(fsym, flat))
for hb in (1.0, 0.5, 0.25):
    kl = lm.landsman_kernel(fsym, hb, flat)
    kw = weyl.weyl_kernel(f, hb, ax)
    print(f"flat equivalence hbar={hb}: sup={np.max(np.abs(kl.matrix - kw.matrix)):.2e} "
          f"opdiff={weyl.op_norm(weyl.OperatorKernel(grid=ax, matrix=kl.matrix - kw.matrix, hbar=hb)):.2e} "
          f"opnorm={weyl.op_norm(kw):.3f}")

# oracle-free spline path
fsym2 = lm.FiberSymbol(base=fsym.base, fiber=fsym.fiber, values=fsym.values,
                       support_radius=fsym.support_radius)
kl2 = lm.landsman_kernel(fsym2, 0.5, flat)
kw2 = weyl.weyl_kernel(f, 0.5, ax)
print("flat equivalence (spline path):", np.max(np.abs(kl2.matrix - kw2.matrix)))

# circle: flat metric on circumference 1
circ = lm.metric_circle(1.0)
axc = Grid1D(0.0, 1.0, 128)
vax = Grid1D(-8, 8, 128)
# real ft, even in v -> hermitian kernel
ftc = lambda q, v: (1.0 + 0.3 * np.cos(2 * np.pi * np.asarray(q))) * np.exp(-np.asarray(v) ** 2)
vals = ftc(axc.points[:, None], vax.points[None, :]).astype(complex)
fsc = lm.FiberSymbol(base=axc, fiber=vax, values=vals, support_radius=6.0, symbol=ftc)
print("circle admissible:", lm.hbar_admissible(fsc, circ))
kc = lm.landsman_kernel(fsc, 0.05, circ)
print("circle hermiticity:", np.max(np.abs(kc.matrix - kc.matrix.conj().T)))

# exp2q: hermiticity for real f
base = Grid1D(-2.0, 2.0, 256)
pax = Grid1D(-10, 10, 256)
g2 = Grid2D(base, pax)
fe = sample(gaussian_field(GaussianObservable(0.0, 0.0, 0.15, 1.0)), g2)
fse = lm.fiber_fourier(fe, exp2q)
adm = lm.hbar_admissible(fse, exp2q)
print("exp2q admissible:", adm, "support R:", fse.support_radius)
hb = min(0.5, 0.9 * adm)
ke = lm.landsman_kernel(fse, hb, exp2q)
print(f"exp2q hermiticity at hbar={hb:.3f}:", np.max(np.abs(ke.matrix - ke.matrix.conj().T)))

# axiom transfer on exp2q: dirac defect decreasing
g_obs = GaussianObservable(0.1, 0.3, 0.12, 0.8)
fA = sample(gaussian_field(GaussianObservable(0.0, -0.2, 0.15, 1.0)), g2)
fB = sample(gaussian_field(g_obs), g2)
br = sample(poisson_field(fA.symbol, fB.symbol), g2)
sA, sB, sBr = (lm.fiber_fourier(x, exp2q) for x in (fA, fB, br))
adm = min(lm.hbar_admissible(s, exp2q) for s in (sA, sB, sBr))
print("axiom-transfer admissible:", adm)
hbars = adm * 0.9 * 0.5 ** np.arange(4)
defects = []
norms = []
for hb in hbars:
    ka = lm.landsman_kernel(sA, hb, exp2q)
    kb = lm.landsman_kernel(sB, hb, exp2q)
    kbr = lm.landsman_kernel(sBr, hb, exp2q)
    ab = lm.weighted_compose(ka, kb, exp2q)
    ba = lm.weighted_compose(kb, ka, exp2q)
    qb = (ab.matrix - ba.matrix) / (1j * hb)
    d = weyl.OperatorKernel(grid=base, matrix=kbr.matrix - qb, hbar=hb)
    defects.append(lm.weighted_op_norm(d, exp2q))
    norms.append(lm.weighted_op_norm(ka, exp2q))
print("exp2q dirac defects:", np.array(defects))
print("exp2q norms vs sup|f|:", np.array(norms), fA.sup_norm())
