"""Built-in validation suites.

Each suite runs a battery of structural checks — the same identities the
test suite exercises, at a scale suitable for an interactive run — and
returns a list of CheckResult records plus a machine-readable defect
report.  Suites: "sl" (radial eigensolver vs the closed-form disc
spectrum), "gamma" (series vs closed-form Weyl function), "krein"
(resolvent structure, engineering round-trip, synthesis), "abstract"
(randomized finite-dimensional framework oracle).
"""

from dataclasses import dataclass

import numpy as np

from . import finite, krein
from .bessel import zero_table
from .errors import PoleError
from .radial import RadialCoefficients, bessel_mode_spectrum, ode_residual, solve_mode

_MODULE = "discext.validate"

SUITES = ("sl", "gamma", "krein", "abstract")


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    defect: float
    threshold: float
    detail: str = ""

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        text = f"[{status}] {self.name}: defect {self.defect:.3e} (threshold {self.threshold:.1e})"
        if self.detail:
            text += f" — {self.detail}"
        return text


def _check(name, defect, threshold, detail=""):
    defect = float(defect)
    return CheckResult(name=name, passed=bool(defect <= threshold), defect=defect,
                       threshold=float(threshold), detail=detail)


def _richardson(coarse, fine):
    return (4.0 * fine - coarse) / 3.0


def suite_sl(grid=1000):
    """Radial engine vs Bessel ground truth (Laplacian case)."""
    results = []
    lap = RadialCoefficients.laplacian()
    eig_err = flux_err = 0.0
    for n in range(4):
        mu = zero_table(n, 6).zeros
        coarse = solve_mode(lap, n, 6, grid)
        fine = solve_mode(lap, n, 6, 2 * grid)
        lam2 = _richardson(coarse.eigenvalues, fine.eigenvalues)
        nu = _richardson(coarse.fluxes, fine.fluxes)
        eig_err = max(eig_err, np.abs(lam2 / mu ** 2 - 1.0).max())
        flux_err = max(flux_err, np.abs(nu / (-np.sqrt(2.0) * mu) - 1.0).max())
    results.append(_check("sl: eigenvalues vs Bessel zeros (Richardson)", eig_err, 1e-5))
    results.append(_check("sl: fluxes vs -sqrt(2) mu (Richardson)", flux_err, 1e-4))

    ms0 = solve_mode(lap, 0, 30, 1500)
    results.append(_check("sl: discrete orthonormality", ms0.orthonormality_defect(), 1e-8))

    count_ok = 0.0
    for n in range(4):
        mu = zero_table(n, 30).zeros
        cut = 0.5 * (mu[24] ** 2 + mu[25] ** 2)
        ms = solve_mode(lap, n, 28, 1500)
        got = int((ms.eigenvalues <= cut).sum())
        count_ok = max(count_ok, abs(got - 25))
    results.append(_check("sl: eigenvalue count below threshold", count_ok, 0.0,
                          "no missed or spurious modes"))

    mu1 = zero_table(0, 1).zeros[0]
    errs = []
    for g in (grid // 2, grid):
        lam2 = solve_mode(lap, 0, 1, g).eigenvalues[0]
        errs.append(abs(lam2 - mu1 ** 2))
    order = np.log2(errs[0] / errs[1])
    results.append(_check("sl: grid convergence order (target 2)", abs(order - 2.0), 0.3,
                          f"measured order {order:.3f}"))

    ms = solve_mode(lap, 0, 5, 1500)
    resid = ode_residual(ms.eigenfunctions[2], -ms.eigenvalues[2], 0, lap)
    results.append(_check("sl: eigenfunction satisfies its own ODE", resid, 1e-8))
    resid_const = ode_residual(np.ones(1500), 0.0, 0, lap)
    results.append(_check("sl: constants are harmonic (n=0)", resid_const, 1e-12))
    return results


def suite_gamma(M=200):
    """Weyl-function series against the closed-form Laplacian oracle."""
    results = []
    zs = (0.5, 1.0, 10.0, 50.0)

    raw_err = 0.0
    big = 20000
    for k in (0, 2):
        mu2 = zero_table(k, big).zeros ** 2
        for z in (1.0, 10.0):
            # nu^2 = 2 mu^2 exactly, so each term collapses to 2/(mu^2 + z).
            raw = krein.lambda_weight(k) * z * (2.0 / (mu2 + z)).sum()
            closed = krein.gamma_laplacian_closed(k, z)
            raw_err = max(raw_err, abs(raw / closed - 1.0))
    results.append(_check("gamma: closed form vs raw partial sums (M=2e4)", raw_err, 1e-3,
                          "nu^2 = 2 lambda^2 exactly in the Laplacian case"))

    tail_err = 0.0
    for k in range(5):
        ms = bessel_mode_spectrum(k, M, 200)
        for z in zs:
            val = krein.gamma_diag(ms, k, z, rel_tol=1e-5).value.real
            closed = krein.gamma_laplacian_closed(k, z)
            tail_err = max(tail_err, abs(val / closed - 1.0))
    results.append(_check("gamma: series+tail vs closed form (oracle spectra)",
                          tail_err, 1e-5))

    ms = bessel_mode_spectrum(1, M, 200)
    zero_val = abs(krein.gamma_diag(ms, 1, 0.0).value)
    results.append(_check("gamma: value at z = 0 exactly zero", zero_val, 0.0))

    ev = krein.gamma_diag(ms, 1, 2.0 + 1.5j, rel_tol=1e-4)
    ev_bar = krein.gamma_diag(ms, 1, 2.0 - 1.5j, rel_tol=1e-4)
    results.append(_check("gamma: conjugation symmetry",
                          abs(ev_bar.value - np.conj(ev.value)), 1e-13))

    sd = krein._FluxSeries(ms)
    samples = np.linspace(-ms.eigenvalues[0] + 0.5, 40.0, 25)
    vals = np.array([sd.gamma(1, float(s)) for s in samples])
    mono = float(np.diff(vals).min())
    results.append(_check("gamma: strictly increasing between poles", max(0.0, -mono), 0.0,
                          "monotone on the principal gap"))

    # Discretization error of the top modes dominates this comparison
    # (second-order grid): N = 4000 keeps it well under the bar.
    fd_err = 0.0
    lap = RadialCoefficients.laplacian()
    for k in (0, 2):
        ms_fd = solve_mode(lap, k, M, 4000)
        for z in (1.0, 10.0):
            val = krein.gamma_diag(ms_fd, k, z, rel_tol=1e-2).value.real
            closed = krein.gamma_laplacian_closed(k, z)
            fd_err = max(fd_err, abs(val / closed - 1.0))
    results.append(_check("gamma: series+tail on finite-difference spectra",
                          fd_err, 2e-3))
    return results


def suite_krein(M=200):
    """Resolvent structure, spectral engineering, eigenfunction synthesis."""
    results = []
    spectra = {k: bessel_mode_spectrum(k, M, 400) for k in (0, 1)}

    rt_err = 0.0
    for k in (0, 1):
        for target in (1.0, 7.5):
            theta = krein.engineer_theta(spectra[k], target)
            params = krein.ExtensionParameter({k: theta})
            found = krein.find_extension_eigenvalues(params, spectra,
                                                    (target - 2.0, target + 2.0))
            best = min((abs(lam - target) for kk, lam in found if kk == k),
                       default=np.inf)
            rt_err = max(rt_err, best)
    results.append(_check("krein: engineering round-trip", rt_err, 1e-6))

    params = krein.ExtensionParameter({0: 0.37})
    ident = krein.resolvent_identity_defect(params, spectra, 0, 1.3, -2.7, size=30)
    results.append(_check("krein: first resolvent identity on a mode block",
                          ident, 1e-8))

    z = 1.1 + 0.8j
    r1 = krein.resolvent_block(params, spectra, 0, z, 12)
    r2 = krein.resolvent_block(params, spectra, 0, np.conj(z), 12)
    results.append(_check("krein: adjoint symmetry R(zbar) = R(z)*",
                          np.abs(r2 - r1.conj().T).max(), 1e-12))

    cross = abs(krein.resolvent_element(params, spectra, 1.0, (1, 0), (1, 1)))
    results.append(_check("krein: cross-mode elements vanish", cross, 0.0))

    fried = krein.resolvent_element(params, spectra, 1.0, (2, 1), (2, 1))
    exact = 1.0 / (spectra[1].eigenvalues[1] + 1.0)
    results.append(_check("krein: Dirichlet diagonal outside the index set",
                          abs(fried - exact), 1e-15))

    theta1 = krein.engineer_theta(spectra[0], 1.0)
    params1 = krein.ExtensionParameter({0: theta1})
    try:
        krein.resolvent_element(params1, spectra, 1.0, (1, 0), (1, 0))
        pole_flagged = 1.0
    except PoleError:
        pole_flagged = 0.0
    results.append(_check("krein: engineered eigenvalue reported as pole",
                          pole_flagged, 0.0))

    # The filtered series needs a few hundred modes of room before the
    # taper bites; M = 400 on a 1600-point grid is the cheap sweet spot.
    lap = RadialCoefficients.laplacian()
    ms_fd = solve_mode(lap, 0, 400, 1600)
    synth0 = krein.synthesize_eigenfunction(ms_fd, 0.0)
    window = (ms_fd.grid >= 0.05) & (ms_fd.grid <= 0.95)
    prof = synth0.radial_samples[window]
    const_var = (prof.max() - prof.min()) / abs(np.mean(prof))
    results.append(_check("krein: lambda = 0 profile constant in r", const_var, 1e-3))

    synth1 = krein.synthesize_eigenfunction(ms_fd, 1.0)
    resid = ode_residual(synth1.radial_samples, 1.0, 0, lap)
    resid /= np.sqrt(np.sum(synth1.radial_samples[window] ** 2
                            * ms_fd.grid[window] / ms_fd.grid.size))
    results.append(_check("krein: synthesized eigenfunction ODE residual (relative)",
                          resid, 1e-3))
    return results


def suite_abstract(seed=20250823, trials=40, n_max=10, d_max=4):
    """Randomized brute-force checks of the finite-dimensional framework."""
    rng = np.random.default_rng(seed)
    agg = {"hermiticity": 0.0, "cross_sample": 0.0, "resolvent_identity": 0.0,
           "adjoint": 0.0, "gamma_forms": 0.0, "first_green_relation": 0.0,
           "green": 0.0, "boundary_condition": 0.0, "decomposition": 0.0,
           "action": 0.0, "regularized_trace": 0.0, "criterion_forward": 0.0,
           "criterion_reverse": 0.0, "eigenvector_map": 0.0}
    z1, z2, z3 = 0.37 + 1.1j, -2.2 + 0.7j, 1.9 - 1.6j
    for _ in range(int(trials)):
        n = int(rng.integers(4, n_max + 1))
        d = int(rng.integers(1, min(d_max, n - 1) + 1))
        model = finite.random_model(rng, n, d)

        ahat, rep = finite.recover_extension(model, [z1, z2, z3])
        agg["hermiticity"] = max(agg["hermiticity"], rep["hermiticity_defect"])
        agg["cross_sample"] = max(agg["cross_sample"], rep["cross_sample_defect"])

        rz = finite.krein_resolvent(model, z1)
        rw = finite.krein_resolvent(model, z2)
        agg["resolvent_identity"] = max(
            agg["resolvent_identity"],
            float(np.abs(rz - rw - (z2 - z1) * rz @ rw).max()))
        rzbar = finite.krein_resolvent(model, np.conj(z1))
        agg["adjoint"] = max(agg["adjoint"], float(np.abs(rz.conj().T - rzbar).max()))

        gz = finite.gz_matrix(model, z1)
        gw = finite.gz_matrix(model, z2)
        gam1 = model.tau @ (finite.gz_matrix(model, 0.0) - gz)
        gam2 = -z1 * (model.tau @ np.linalg.solve(model.a0, gz))
        agg["gamma_forms"] = max(agg["gamma_forms"], float(np.abs(gam1 - gam2).max()))
        lhs = (z1 - z2) * (finite._resolvent0(model, z2) @ gz)
        agg["first_green_relation"] = max(
            agg["first_green_relation"], float(np.abs(lhs - (gw - gz)).max()))

        dom = finite.check_domain_condition(model, ahat)
        agg["green"] = max(agg["green"], dom["green_defect"])
        agg["boundary_condition"] = max(agg["boundary_condition"],
                                        dom["boundary_condition_defect"])
        agg["decomposition"] = max(agg["decomposition"], dom["decomposition_residual"])
        agg["action"] = max(agg["action"], dom["action_defect"])
        agg["regularized_trace"] = max(agg["regularized_trace"],
                                       dom["regularized_trace_defect"])

        # Eigenvalue criterion, both directions.
        spec_a0 = model.a0_eigenvalues()
        spec_ext = np.linalg.eigvalsh((ahat + ahat.conj().T) / 2)
        lo = float(min(spec_a0.min(), spec_ext.min()) - 2.0)
        hi = float(max(spec_a0.max(), spec_ext.max()) + 2.0)
        new_eigs = [lam for lam in spec_ext
                    if np.abs(spec_a0 - lam).min() > 1e-6]
        for lam in new_eigs:
            sing = finite.gap_min_singular(model, lam)
            if np.isfinite(sing):
                agg["criterion_reverse"] = max(agg["criterion_reverse"], sing)
        roots = finite.criterion_roots(model, (lo, hi), samples_per_gap=120)
        for root in roots:
            gap = float(np.abs(spec_ext - root).min())
            agg["criterion_forward"] = max(agg["criterion_forward"], gap)
            basis, reduced = finite._reduced_gap(model, complex(root))
            _, svals, vh = np.linalg.svd(reduced)
            zeta = basis @ vh.conj().T[:, -1]
            u = finite.gz_matrix(model, complex(root)) @ zeta
            norm = np.linalg.norm(u)
            if norm > 1e-8:
                agg["eigenvector_map"] = max(
                    agg["eigenvector_map"],
                    float(np.linalg.norm(ahat @ u - root * u) / norm))

    # Edges: no projection -> pure Dirichlet; huge Theta -> Dirichlet limit.
    model = finite.random_model(np.random.default_rng(seed + 1), 8, 3,
                                projection_rank=0)
    ahat0, _ = finite.recover_extension(model, [z1])
    pi0_defect = float(np.abs(ahat0 - model.a0).max())
    modelb = finite.random_model(np.random.default_rng(seed + 2), 8, 3,
                                 projection_rank=2)
    big = finite.FiniteModel(a0=modelb.a0, tau=modelb.tau, pi=modelb.pi,
                             theta=1e9 * modelb.pi)
    r_big = finite.krein_resolvent(big, z1)
    r_z = finite._resolvent0(big, z1)
    theta_limit = float(np.abs(r_big - r_z).max())

    results = [
        _check("abstract: recovered extension Hermitian", agg["hermiticity"], 1e-9),
        _check("abstract: recovered extension z-independent", agg["cross_sample"], 1e-9),
        _check("abstract: first resolvent identity", agg["resolvent_identity"], 1e-10),
        _check("abstract: adjoint symmetry R(z)* = R(zbar)", agg["adjoint"], 1e-10),
        _check("abstract: two Gamma expressions agree", agg["gamma_forms"], 1e-12),
        _check("abstract: (z-w) R_w G_z = G_w - G_z", agg["first_green_relation"], 1e-12),
        _check("abstract: boundary condition Pi tau phi0 = Theta zeta",
               agg["boundary_condition"], 1e-9),
        _check("abstract: decomposition phi = phi0 + G_0 zeta",
               agg["decomposition"], 1e-9),
        _check("abstract: Green identity", agg["green"], 1e-9),
        _check("abstract: adjoint action A0 phi0 = Ahat phi", agg["action"], 1e-8),
        _check("abstract: regularized trace identity", agg["regularized_trace"], 1e-8),
        _check("abstract: criterion roots are extension eigenvalues",
               agg["criterion_forward"], 1e-8),
        _check("abstract: new eigenvalues make Theta+Pi Gamma Pi singular",
               agg["criterion_reverse"], 1e-8),
        _check("abstract: G_lambda maps criterion kernel to eigenvectors",
               agg["eigenvector_map"], 1e-8),
        _check("abstract: Pi = 0 recovers A0 exactly", pi0_defect, 1e-9),
        _check("abstract: huge Theta approaches the Dirichlet resolvent",
               theta_limit, 1e-6),
    ]
    return results


def run_suite(name, seed=20250823, trials=40):
    """Run one suite (or 'all'); returns (results, report dict)."""
    name = str(name)
    runners = {"sl": suite_sl, "gamma": suite_gamma, "krein": suite_krein,
               "abstract": lambda: suite_abstract(seed=seed, trials=trials)}
    if name == "all":
        ordered = [r for key in SUITES for r in runners[key]()]
    elif name in runners:
        ordered = runners[name]()
    else:
        raise ValueError(f"unknown suite {name!r} (choose from {SUITES + ('all',)})")
    report = {
        "suite": name,
        "checks": [
            {"name": r.name, "passed": r.passed, "defect": r.defect,
             "threshold": r.threshold, "detail": r.detail}
            for r in ordered
        ],
        "failures": int(sum(not r.passed for r in ordered)),
    }
    return ordered, report
