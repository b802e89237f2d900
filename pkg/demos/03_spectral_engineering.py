"""Placing an eigenvalue exactly where you want it.

A self-adjoint extension that acts on finitely many angular modes is
described by one real boundary parameter theta_k per mode.  Solving
theta_k = -[Gamma_lambda]_{kk} picks the extension whose spectrum gains
an eigenvalue at a prescribed lambda; the corresponding eigenfunction is
an explicit series over the Dirichlet modes.  This script engineers a
few eigenvalues, confirms them by root finding, and checks the
synthesized eigenfunction against the radial ODE.

Run:  python3 demos/03_spectral_engineering.py
"""

import csv
import os

import numpy as np

from discext import (ExtensionParameter, RadialCoefficients,
                     bessel_mode_spectrum, engineer_theta,
                     find_extension_eigenvalues, ode_residual,
                     resolvent_block, resolvent_identity_defect, solve_mode,
                     synthesize_eigenfunction)

OUT = os.path.join(os.path.dirname(__file__), "out")
os.makedirs(OUT, exist_ok=True)

LAP = RadialCoefficients.from_polynomials((1.0,), (0.0,))

# --- 1. Engineer, then recover -------------------------------------------
# For each target lambda* we compute theta = -Gamma(lambda*), build the
# one-mode extension with that theta, and ask the root finder for all
# extension eigenvalues near the target.  The loop closes to ~1e-9.

spectra = {k: bessel_mode_spectrum(k, 200, 400) for k in (0, 1, 3)}

print("engineer theta so that lambda* joins the spectrum, then recover it")
print(f"{'k':>2} {'lambda*':>8} {'theta':>14} {'recovered':>16} {'err':>9}")
for k in (0, 1, 3):
    for target in (0.0, 1.0, 7.5, -10.0):
        theta = engineer_theta(spectra[k], target)
        params = ExtensionParameter(theta={k: theta})
        roots = find_extension_eigenvalues(params, spectra,
                                           (target - 0.75, target + 0.75))
        rec = min((lam for kk, lam in roots if kk == k),
                  key=lambda lam: abs(lam - target))
        print(f"{k:>2} {target:>8.2f} {theta:>14.8f} {rec:>16.10f} "
              f"{abs(rec - target):9.1e}")

# --- 2. The synthesized eigenfunction solves the ODE ---------------------
# The series sum_m nu_m/(lambda_m^2 + lambda*) u_m, evaluated with a
# smooth spectral cutoff, satisfies the mode-k radial equation at
# lambda* away from the endpoints.  theta = 0 with lambda* = 0 is the
# classical example: the new eigenfunction of mode 0 is constant.

ms0 = bessel_mode_spectrum(0, 400, 1200)
for target in (0.0, 1.0):
    sf = synthesize_eigenfunction(ms0, target)
    res = ode_residual(sf.radial_samples, target, 0, LAP)
    mid = sf.radial_samples[len(sf.grid) // 2]
    print(f"\nlambda* = {target}: ode residual {res:.2e}, "
          f"value at r = 0.5 is {mid:.6f}")
    if target == 0.0:
        inner = sf.radial_samples[(sf.grid > 0.1) & (sf.grid < 0.9)]
        print(f"  constancy of the lambda* = 0 profile: "
              f"max deviation {np.ptp(inner) / abs(inner.mean()):.2e}")

sf = synthesize_eigenfunction(ms0, 1.0)
path = os.path.join(OUT, "engineered_eigenfunction.csv")
with open(path, "w", newline="") as fh:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["r", "value"])
    w.writerows(zip(sf.grid[::10], sf.radial_samples[::10]))
print(f"wrote {path}")

# --- 3. The same pipeline on a finite-difference operator ----------------
# Nothing here depends on the Bessel oracle: with a = 1 + r^2/2, c = r
# the spectra come from the FD solver and the loop still closes, at the
# tolerance the coarser data supports.

var = RadialCoefficients.from_polynomials((1.0, 0.0, 0.5), (0.0, 1.0))
vc = {1: solve_mode(var, 1, 200, 6000)}
theta = engineer_theta(vc[1], 2.5, rel_tol=1e-3)
params = ExtensionParameter(theta={1: theta})
roots = find_extension_eigenvalues(params, vc, (1.5, 3.5), rel_tol=1e-3)
rec = roots[0][1]
print(f"\nvariable coefficients, k = 1: theta = {theta:.8f}, "
      f"recovered lambda = {rec:.10f} (err {abs(rec - 2.5):.1e})")

# --- 4. The resolvent of the engineered extension ------------------------
# The extension resolvent is the Dirichlet one plus a rank-one boundary
# correction per mode in the index set; it stays symmetric and satisfies
# the first resolvent identity on every truncated block.

params = ExtensionParameter(theta={0: engineer_theta(spectra[0], 1.0)})
blk = resolvent_block(params, spectra, 0, z=3.0, size=12)
defect = resolvent_identity_defect(params, spectra, 0, z=3.0, w=7.0, size=12)
print(f"\nresolvent block at z = 3: symmetry defect "
      f"{np.abs(blk - blk.T).max():.1e}, identity defect {defect:.1e}")
