"""The per-mode Weyl function Gamma and its tail-corrected series.

For each angular mode k the boundary map of the disc problem reduces to
a scalar function z -> [Gamma_z]_{kk}, a sum over radial eigenvalues and
boundary fluxes plus a modelled remainder for the truncated part.  For
the Laplacian there is a closed form through modified Bessel functions,
which makes the truncation honest to audit.

Run:  python3 demos/02_weyl_function.py
"""

import csv
import os

import numpy as np

from discext import (bessel_j_zero, bessel_mode_spectrum, gamma_diag,
                     gamma_laplacian_closed)

OUT = os.path.join(os.path.dirname(__file__), "out")
os.makedirs(OUT, exist_ok=True)

# --- 1. Series + tail vs the closed form ---------------------------------
# 200 oracle modes plus the fitted tail reproduce the Bessel quotient to
# a few parts in 1e7; the reported tail_estimate tracks the error scale
# (it is an empirical estimate, good to a modest constant factor).

print("Gamma for the Laplacian: truncated series (M = 200) vs closed form")
print(f"{'k':>2} {'z':>7} {'series+tail':>16} {'closed form':>16} {'rel err':>9} {'tail est':>9}")
for k in (0, 1, 4):
    ms = bessel_mode_spectrum(k, 200, 400)
    for z in (0.5, 2.0, 10.0, 50.0):
        ev = gamma_diag(ms, k, z, rel_tol=1e-5)
        closed = gamma_laplacian_closed(k, z)
        rel = abs(ev.value - closed) / abs(closed)
        print(f"{k:>2} {z:>7.1f} {ev.value.real:16.10f} {closed:16.10f} "
              f"{rel:9.1e} {ev.tail_estimate:9.1e}")

# --- 2. Gamma increases between consecutive poles ------------------------
# On the real axis Gamma_z has simple poles exactly at the Dirichlet
# points z = -j_km^2 and is strictly increasing on every gap, running
# from -inf to +inf.  That is what makes theta + Gamma = 0 solvable on
# each gap and is the backbone of the spectral-engineering routine.

k = 0
ms = bessel_mode_spectrum(k, 200, 400)
p1, p2 = -bessel_j_zero(k, 1) ** 2, -bessel_j_zero(k, 2) ** 2
print(f"\nmode {k}: first two poles at z = {p1:.6f} and {p2:.6f}")

zs = np.linspace(p2 + 0.4, p1 - 0.4, 60)
vals = np.array([gamma_diag(ms, k, z, rel_tol=1e-4).value.real for z in zs])
print(f"on the gap ({p2:.2f}, {p1:.2f}): "
      f"min increment {np.diff(vals).min():.3e} (> 0 means monotone)")
print(f"range covered: {vals[0]:.3f} .. {vals[-1]:.3f}")

path = os.path.join(OUT, "weyl_gap_curve.csv")
with open(path, "w", newline="") as fh:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["z", "gamma"])
    w.writerows(zip(zs, vals))
print(f"wrote {path}")

# --- 3. Behaviour near z = 0 ---------------------------------------------
# Gamma vanishes at z = 0 (the boundary pairing of the z = 0 solution is
# zero) and grows like a square root for large positive z, mirroring the
# I_{k+1}/I_k asymptotics of the closed form.

print("\nGamma near 0 and its large-z growth (k = 0):")
for z in (1e-4, 1e-2, 1.0, 1e2, 1e4):
    ev = gamma_diag(ms, k, z, rel_tol=1e-4)
    print(f"  z = {z:8.0e}: Gamma = {ev.value.real:12.6f}   Gamma/sqrt(z) = "
          f"{ev.value.real / np.sqrt(z):8.5f}")
