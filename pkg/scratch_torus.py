"""Validate rotation + prequant conventions before freezing tests."""
import numpy as np
from strictq import rotation as rot
from strictq import prequant as pq

# distoro13 exact match, m,n <= 4, N <= 16
worst = 0.0
for N in range(1, 17):
    for m in range(1, 5):
        for n in range(1, 5):
            d = rot.dirac_defect(m, n, N)
            worst = max(worst, np.max(np.abs(d["direct"] - d["matrix"])))
print("dirac_defect direct vs closed form, worst:", worst)

# scaling |scalar| N^3 -> pi^3/3
for N in (16, 64, 256):
    s = abs(rot.dirac_defect(1, 1, N)["scalar"]) * N**3
    print(f"N={N}: |scalar| N^3 = {s:.6f} vs pi^3/3 = {np.pi**3/3:.6f} rel "
          f"{abs(s - np.pi**3/3)/(np.pi**3/3):.2e}")

# homomorphism / star / commutation exactness sweep
rng = np.random.default_rng(7)
worst_h = worst_s = worst_c = worst_u = 0.0
from math import gcd
for N in range(1, 17):
    for K in range(1, N + 1):
        if gcd(K, N) != 1 or (K > N // 2 and not (K == N == 1)):
            continue
        rep = rot.rep_matrices(N, K)
        worst_c = max(worst_c, np.max(np.abs(rep.V @ rep.U - np.exp(2j*np.pi*K/N) * rep.U @ rep.V)))
        th = rep.theta
        for _ in range(3):
            a = rot.rot_element(th, {(int(rng.integers(-4, 5)), int(rng.integers(-4, 5))):
                                     complex(*rng.normal(size=2)) for _ in range(4)})
            b = rot.rot_element(th, {(int(rng.integers(-4, 5)), int(rng.integers(-4, 5))):
                                     complex(*rng.normal(size=2)) for _ in range(4)})
            ra, rb = rot.represent(a, rep), rot.represent(b, rep)
            worst_h = max(worst_h, np.max(np.abs(rot.represent(rot.convolve(a, b), rep) - ra @ rb)))
            worst_s = max(worst_s, np.max(np.abs(rot.represent(rot.involution(a), rep) - ra.conj().T)))
        u = rot.represent(rot.rot_element(th, {(1, 0): 1.0}), rep)
        worst_u = max(worst_u, np.max(np.abs(u @ u.conj().T - np.eye(N))))
print("homomorphism worst:", worst_h, " star worst:", worst_s,
      " commutation worst:", worst_c, " unitary worst:", worst_u)

# center
print("center F_{N,0}:", rot.center_check(8, 0, 8))
print("center F_{1,0} N=8:", rot.center_check(1, 0, 8)["is_central"])

# quantize_torus K=1 vs distoro12 path: e^{pi i mn/N} Q(e^{2pi i m x}) V^n
N = 8
for m in range(-3, 4):
    for n in range(-3, 4):
        lhs = rot.quantize_torus(rot.torus_observable({(m, n): 1.0}), N, 1)
        qm = rot.multiplication_action(rot.torus_observable({(m, 0): 1.0}), N)
        rhs = np.exp(1j*np.pi*m*n/N) * qm @ rot.translation_action(n, N)
        assert np.max(np.abs(lhs - rhs)) < 1e-14, (m, n)
print("distoro12 coincidence: exact")

# hermiticity of real observables
f = rot.torus_observable({(2, 1): 1+2j, (-2, -1): 1-2j, (0, 0): 0.5})
Q = rot.quantize_torus(f, 12, 5)
print("hermiticity of real f:", np.max(np.abs(Q - Q.conj().T)))

# prequant: Dirac identity across random pairs + degrees
rng = np.random.default_rng(3)
secs = [pq.trig_section({(a, b, d): 1.0}) for a in (-1, 0, 2) for b in (-2, 1) for d in (0, 1, 2)]
worst_r = 0.0
for N in range(1, 5):
    for trial in range(20):
        f = rot.torus_observable({(int(rng.integers(-2, 3)), int(rng.integers(-2, 3))):
                                  complex(*rng.normal(size=2)) for _ in range(3)})
        g = rot.torus_observable({(int(rng.integers(-2, 3)), int(rng.integers(-2, 3))):
                                  complex(*rng.normal(size=2)) for _ in range(3)})
        r = pq.dirac_identity_check(f, g, N, secs)["max_residual"]
        worst_r = max(worst_r, r)
print("prequant dirac residual worst:", worst_r)

# Q_N(1) = identity
phi = pq.trig_section({(1, 2, 2): 1+1j, (0, 0, 0): 2.0})
one = rot.torus_observable({(0, 0): 1.0})
print("Q(1) phi == phi:", (pq.prequant_apply(one, phi, 3) - phi).sup_coeff())

# anomaly growth
print("anomaly x-pair N=1:", pq.sin_cos_anomaly(1, 8, "x")["growth"])
print("anomaly y-pair N=1:", pq.sin_cos_anomaly(1, 8, "y")["growth"])
print("anomaly x-pair on constants:",
      (pq.prequant_apply(pq.sin_x(), pq.prequant_apply(pq.sin_x(), pq.trig_section({(0,0,0): 1.0}), 1), 1)
       + pq.prequant_apply(pq.cos_x(), pq.prequant_apply(pq.cos_x(), pq.trig_section({(0,0,0): 1.0}), 1), 1)
       - pq.trig_section({(0,0,0): 1.0})).sup_coeff())

# adjoint pairing <Q(f)phi, psi> = <phi, Q(conj f) psi>
worst_a = 0.0
for trial in range(20):
    f = rot.torus_observable({(int(rng.integers(-2, 3)), int(rng.integers(-2, 3))):
                              complex(*rng.normal(size=2)) for _ in range(3)})
    fbar = rot.torus_observable({(-m, -k): np.conj(c) for (m, k), c in f.terms.items()})
    phi = pq.trig_section({(int(rng.integers(-2, 3)), int(rng.integers(-2, 3)), int(rng.integers(0, 3))):
                           complex(*rng.normal(size=2)) for _ in range(3)})
    psi = pq.trig_section({(int(rng.integers(-2, 3)), int(rng.integers(-2, 3)), int(rng.integers(0, 3))):
                           complex(*rng.normal(size=2)) for _ in range(3)})
    lhs = np.conj(pq.inner_product(pq.prequant_apply(f, phi, 2), psi))
    rhs = np.conj(pq.inner_product(phi, pq.prequant_apply(fbar, psi, 2)))
    worst_a = max(worst_a, abs(lhs - rhs))
print("adjoint pairing worst:", worst_a)
