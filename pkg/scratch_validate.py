"""Scratch validation of core + weyl before freezing oracle values."""
import numpy as np
from strictq.core import (Grid1D, Grid2D, sample, quadrature, fourier_fiber,
                          inverse_fourier_fiber, poisson_bracket, conjugate_grid)
from strictq import weyl

B, N = 16.0, 512
ax = Grid1D(-B, B, N)
g2 = Grid2D(ax, ax)

# 1. quadrature of exp(-q^2/2) on [-12,12], n=1024 -> sqrt(2pi)
g1 = Grid1D(-12, 12, 1024)
f1 = sample(lambda q: np.exp(-q**2 / 2), g1)
val = quadrature(f1).real
print("quad gauss rel err:", abs(val - np.sqrt(2*np.pi)) / np.sqrt(2*np.pi))

# 2. |f^0_{1,1}|^2 over [-16,16]^2 -> 4pi
gb = Grid2D(Grid1D(-16, 16, 512), Grid1D(-16, 16, 512))
fsq = sample(lambda q, p: (2*np.exp(-q**2/2)*np.exp(-p**2/2))**2, gb)
print("quad |f|^2 rel err:", abs(quadrature(fsq).real - 4*np.pi) / (4*np.pi))

# 3. fourier_fiber of Gaussian: f = 2 e^{-q^2/2} e^{-p^2/2}
f = sample(lambda q, p: 2*np.exp(-q**2/2)*np.exp(-p**2/2), g2)
ft = fourier_fiber(f)
vax = ft.grid.paxis
qq, vv = ft.grid.meshes()
exact = 2*np.exp(-qq**2/2) * np.exp(-vv**2/2) / np.sqrt(2*np.pi)
print("fiber FT sup err:", np.max(np.abs(ft.values - exact)))

# 4. round trip
back = inverse_fourier_fiber(ft, ax)
print("fiber round trip sup err:", np.max(np.abs(back.values - f.values)))

# 5. poisson bracket of displaced gaussians vs finite differences
def gauss(q0, p0, a, b):
    return lambda q, p: 2*np.exp(-(q-q0)**2/(2*a))*np.exp(-(p-p0)**2/(2*b))
fA = sample(gauss(0.5, 0.0, 1.0, 0.8), g2)
fB = sample(gauss(-0.3, 0.4, 0.7, 1.2), g2)
pb = poisson_bracket(fA, fB)
# 4th order FD oracle
def fd4(vals, axis, d):
    return (-np.roll(vals, -2, axis) + 8*np.roll(vals, -1, axis)
            - 8*np.roll(vals, 1, axis) + np.roll(vals, 2, axis)) / (12*d)
fd = (fd4(fA.values, 0, ax.delta)*fd4(fB.values, 1, ax.delta)
      - fd4(fA.values, 1, ax.delta)*fd4(fB.values, 0, ax.delta))
print("poisson vs fd4 sup err:", np.max(np.abs(pb.values - fd)[2:-2, 2:-2]))

# 6. weyl kernel vs closed form (Eq 1.2.16 shape), hbar=1, alpha*beta=(hbar/2)^2
hbar = 1.0
a_, b_ = 0.7, (hbar/2)**2/0.7
q0, p0 = 0.4, -0.3
fg = sample(gauss(q0, p0, a_, b_), g2)
K = weyl.weyl_kernel(fg, hbar, ax)
q = ax.points
chi = (2*b_/(np.pi*hbar**2))**0.25 * np.exp(-(q-q0)**2/(4*a_)) * np.exp(-1j*p0*(q-q0)/hbar)
Kexact = np.conj(chi)[:, None]*chi[None, :]
print("weyl kernel vs rank-one closed form:", np.max(np.abs(K.matrix - Kexact)))
print("kernel warnings:", K.warnings)

# 7. general alpha,beta closed form with exponent factor
a2, b2 = 1.3, 0.9
fg2 = sample(gauss(q0, p0, a2, b2), g2)
K2 = weyl.weyl_kernel(fg2, hbar, ax)
chi2 = (2*b2/(np.pi*hbar**2))**0.25 * np.exp(-(q-q0)**2/(4*a2)) * np.exp(-1j*p0*(q-q0)/hbar)
expo = np.exp(-(1/(8*a2))*(4*a2*b2/hbar**2 - 1)*(q[:, None]-q[None, :])**2)
K2exact = np.conj(chi2)[:, None]*chi2[None, :]*expo
print("weyl kernel vs general closed form:", np.max(np.abs(K2.matrix - K2exact)))

# 8. HS identity: hs^2 vs (1/2pi hbar) int |f|^2
hs2 = weyl.hs_norm(K2)**2
intf2 = quadrature(sample(lambda q, p: np.abs(gauss(q0, p0, a2, b2)(q, p))**2, g2)).real
print("HS identity rel err:", abs(hs2 - intf2/(2*np.pi*hbar)) / (intf2/(2*np.pi*hbar)))

# 9. dequantize round trip
back2 = weyl.dequantize(K2, g2)
print("dequantize round trip sup err:", np.max(np.abs(back2.values - fg2.values)))
print("dequantize warnings:", back2.warnings)

# 10. op_norm of rank-one projector with ||chi||^2 = 2 sqrt(ab)/hbar = 1
# alpha*beta=(hbar/2)^2 makes projector; ||chi||^2 = 2*sqrt(a_*b_)/hbar = 1
print("||chi||^2:", 2*np.sqrt(a_*b_)/hbar, " op_norm:", weyl.op_norm(K))

# 11. star product sanity: f*g -> fg as hbar -> 0 (coarse check at hbar=0.25)
sp = weyl.star_product(fA, fB, 0.25)
prod = fA.values * fB.values
print("star vs pointwise at hbar=.25 (sup):", np.max(np.abs(sp.values - prod)),
      "scale:", np.max(np.abs(prod)))

# 12. expectation closed-form candidates vs quadrature (THE resolution)
def expectation_quad(q0, p0, al, be, sig, hbar, grid):
    qv = grid.points
    chi_ = (2*be/(np.pi*hbar**2))**0.25 * np.exp(-(qv-q0)**2/(4*al)) * np.exp(-1j*p0*(qv-q0)/hbar)
    theta = (1/(4*al))*(4*al*be/hbar**2 - 1)
    Km = np.conj(chi_)[:, None]*chi_[None, :]*np.exp(-0.5*theta*(qv[:, None]-qv[None, :])**2)
    psi = (qv-q0)*np.exp(-(qv-q0)**2/(2*sig))*np.exp(1j*p0*qv/hbar)
    return (np.conj(psi) @ Km @ psi).real * grid.delta**2

gq = Grid1D(-20, 20, 2048)
for (al, be, sig) in [(1.0, 0.3, 1.0), (0.5, 0.2, 2.0), (2.0, 1.5, 0.7), (0.8, 0.05, 1.3)]:
    hb = 1.0
    th = (1/(4*al))*(4*al*be/hb**2 - 1)
    D = (1/sig + 1/(2*al))*(1/sig + 1/(2*al) + 2*th)
    quad_val = expectation_quad(0.3, 0.9, al, be, sig, hb, gq)
    cand_a = (2*be/(np.pi*hb**2))**0.5 * 2*np.pi*th/D**1.5
    cand_b = (2*be/(np.pi*hb**2))**0.25 * 2*np.pi*th/D**2
    print(f"a={al} b={be} s={sig}: quad={quad_val:.8g} half={cand_a:.8g} "
          f"paper={cand_b:.8g} relerr_half={abs(cand_a-quad_val)/abs(quad_val):.2e}")
