"""Tune the acceptance-grade axiom run: resolution vs runtime vs tolerances."""
import time
import numpy as np
from strictq.core import Grid1D, Grid2D, HbarSchedule, sample
from strictq.symbols import gaussian_field
from strictq.gaussian import GaussianObservable
from strictq import asymptotics as ax

B, N = 6.0, 1024
axq = Grid1D(-B, B, N)
grid = Grid2D(axq, axq)

fA = sample(gaussian_field(GaussianObservable(q0=0.4, p0=-0.2, alpha=0.7, beta=0.5)), grid)
fB = sample(gaussian_field(GaussianObservable(q0=-0.3, p0=0.3, alpha=0.6, beta=0.55)), grid)

sched = HbarSchedule(start=1.0, ratio=0.5, count=7)

t0 = time.time()
rd = ax.check_dirac(fA, fB, sched)
t1 = time.time()
print(f"dirac   [{t1-t0:6.1f}s] ref={rd.classical_ref:.4f}")
print("  defects:", np.array2string(rd.defects, precision=3))
print("  rel:    ", np.array2string(rd.defects / rd.classical_ref, precision=4))

t0 = time.time()
rv = ax.check_vonneumann(fA, fB, sched)
t1 = time.time()
print(f"vonneum [{t1-t0:6.1f}s] ref={rv.classical_ref:.4f}")
print("  rel:    ", np.array2string(rv.defects / rv.classical_ref, precision=4))

t0 = time.time()
rn = ax.check_norm_limit(fA, sched)
t1 = time.time()
print(f"normlim [{t1-t0:6.1f}s] ref={rn.classical_ref:.4f}")
print("  rel:    ", np.array2string(rn.defects / rn.classical_ref, precision=4))

t0 = time.time()
rc = ax.check_norm_continuity(fA, sched)
t1 = time.time()
print(f"normcont[{t1-t0:6.1f}s]")
print("  gaps:   ", np.array2string(rc.defects, precision=4))

t0 = time.time()
rp, rb = ax.check_star_limits(fA, fB, sched)
t1 = time.time()
print(f"star    [{t1-t0:6.1f}s] prod ref={rp.classical_ref:.4f} br ref={rb.classical_ref:.4f}")
print("  prod rel:", np.array2string(rp.defects / rp.classical_ref, precision=4))
print("  br rel:  ", np.array2string(rb.defects / rb.classical_ref, precision=4))
