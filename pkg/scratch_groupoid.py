"""Validate groupoid module numerics."""
import numpy as np
from strictq.core import Grid1D, Grid2D, sample, fourier_fiber
from strictq.symbols import gaussian_field
from strictq.gaussian import GaussianObservable
from strictq import groupoid as gp
from strictq import weyl

# --- deformed convolution ---
xax = Grid1D(-8, 8, 192)
yax = Grid1D(-8, 8, 192)
grid = Grid2D(xax, yax)


def gg(x0, y0, a=1.0, b=1.0, amp=1.0):
    return lambda x, y: amp * np.exp(-(x - x0) ** 2 / (2 * a)) * np.exp(-(y - y0) ** 2 / (2 * b))


def gfun(sym, eps):
    s = sample(sym, grid)
    return gp.GroupoidFunction(grid=grid, values=s.values, epsilon=eps)


# eps=0: per-x Fourier multiplication oracle
f0 = gfun(gg(0.3, -0.2), 0.0)
g0 = gfun(gg(-0.4, 0.5, 0.7, 1.2), 0.0)
conv = gp.deformed_convolve(f0, g0)
# oracle: convolution theorem per slice with plain dz integral
F = np.fft.fft(f0.values, axis=1)
G = np.fft.fft(g0.values, axis=1)
# direct quadrature oracle on a few x slices
idx = [50, 96, 140]
worst = 0.0
z = yax.points
for i in idx:
    for j in range(0, 192, 13):
        direct = np.sum(f0.values[i, :] * np.interp((yax.points[j] - z), z, g0.values[i, :].real)) * yax.delta
        worst = max(worst, abs(conv.values[i, j].real - direct))
print("eps=0 vs direct-interp oracle (loose):", worst)

# eps=0 Fourier diagonalization: transform-then-multiply == convolve-then-transform
ftrans = np.fft.fft(f0.values, axis=1)
gtrans = np.fft.fft(g0.values, axis=1)
ctrans = np.fft.fft(conv.values, axis=1)
# with midpoint grids, fft-based circular convolution picks up a phase; compare via roll-free circular conv oracle
circ = np.fft.ifft(ftrans * gtrans, axis=1) * yax.delta
# circular conv of sampled arrays corresponds to sum_k f[k] g[j-k] with wrap; our conv used interpolated shifts
print("eps=0 vs circular-conv oracle:", np.max(np.abs(conv.values - np.roll(circ, 0, axis=1))))

# associativity at eps=0.3
eps = 0.3
f1 = gfun(gg(0.3, -0.2), eps)
g1 = gfun(gg(-0.4, 0.5, 0.7, 1.2), eps)
h1 = gfun(gg(0.1, 0.2, 1.1, 0.9), eps)
lhs = gp.deformed_convolve(gp.deformed_convolve(f1, g1), h1)
rhs = gp.deformed_convolve(f1, gp.deformed_convolve(g1, h1))
print("associativity eps=0.3:", np.max(np.abs(lhs.values - rhs.values)),
      "scale", np.max(np.abs(lhs.values)))

# noncommutativity for eps>0
fg = gp.deformed_convolve(f1, g1)
gf = gp.deformed_convolve(g1, f1)
print("noncommutativity:", np.max(np.abs(fg.values - gf.values)))

# representation property pi(f*g) = pi(f) pi(g), eps=0.5
eps = 0.5
f2 = gfun(gg(0.3, -0.2), eps)
g2 = gfun(gg(-0.4, 0.5, 0.7, 1.2), eps)
pf = gp.semidirect_rep(f2)
pg = gp.semidirect_rep(g2)
pfg = gp.semidirect_rep(gp.deformed_convolve(f2, g2))
prod = weyl.compose(pf, pg)
dif = weyl.OperatorKernel(grid=pf.grid, matrix=pfg.matrix - prod.matrix, hbar=eps)
print("rep property op-norm:", weyl.op_norm(dif), "scale", weyl.op_norm(pfg))

# involution: pi(f*) = pi(f)^dagger
fst = gp.groupoid_involution(f2)
pfst = gp.semidirect_rep(fst)
print("involution vs adjoint:", np.max(np.abs(pfst.matrix - pf.matrix.conj().T)))

# --- Weyl correspondence ---
B, N = 12.0, 384
ax2 = Grid1D(-B, B, N)
ph = Grid2D(ax2, ax2)
fw = sample(gaussian_field(GaussianObservable(0.2, -0.3, 1.0, 0.8)), ph)
for hb in (1.0, 0.5):
    res = gp.wm_correspondence(fw, hb)
    print(f"wm_correspondence hbar={hb}: defect={res['defect']:.3e} weyl_norm={res['weyl_norm']:.3f}")

# --- tangent boundary ---
fam = gp.canonical_family(fw, [1.0, 0.5, 0.25, 0.125])
rep = gp.tangent_boundary_check(fam)
print("canonical boundary defects:", rep.defects)
print("canonical raw:", rep.raw)
print("notes:", rep.notes)

# violating family from a different symbol
gw = sample(gaussian_field(GaussianObservable(-0.5, 0.4, 0.6, 1.1)), ph)
fam_bad = gp.KernelFamily(hbars=fam.hbars, kernels=tuple(weyl.weyl_kernel(gw, h, ax2) for h in fam.hbars),
                          boundary_symbol=fam.boundary_symbol)
rep_bad = gp.tangent_boundary_check(fam_bad)
ftil = fourier_fiber(fw).values
gtil = fourier_fiber(gw).values
gapref = np.max(np.abs(ftil - gtil))
print("violating defects:", rep_bad.defects, "ref sup|ft-gt|:", gapref)

# perturbed family: K + hbar*noise
rng = np.random.default_rng(0)
noise = rng.normal(size=(N, N)) * 0.01
fam_pert = gp.KernelFamily(
    hbars=fam.hbars,
    kernels=tuple(weyl.OperatorKernel(grid=ax2, matrix=k.matrix + h * noise, hbar=h)
                  for k, h in zip(fam.kernels, fam.hbars)),
    boundary_symbol=fam.boundary_symbol)
rep_p = gp.tangent_boundary_check(fam_pert)
print("perturbed defects:", rep_p.defects, "vs hbar:", fam.hbars)
