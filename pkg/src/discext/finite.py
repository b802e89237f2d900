"""Finite-dimensional matrix realization of the extension framework.

Everything the disc modules implement per Fourier mode — the boundary
maps G_z, the Weyl-type function Gamma_z, the corrected resolvent, the
eigenvalue criterion — is a set of algebraic identities among (A0, tau,
Pi, Theta).  This module realizes those identities with dense matrices
so they can be verified by brute force: a random quadruple is drawn,
the corrected resolvent is assembled, the extension operator itself is
recovered by inverting the resolvent, and each claimed property
(Hermiticity, z-independence, domain condition, Green identity,
eigenvalue criterion) becomes a computable defect.

Conventions match the disc modules: resolvents are (-A + z)^(-1), so
poles sit at the eigenvalues of A; G_z := (tau R_zbar)^* =
(-A0 + z)^(-1) tau^*; Gamma_z := tau (G_0 - G_z) = -z tau A0^(-1) G_z.

Caveat (finite dimension): tau surjective with d >= 1 forces ker(tau) to
be non-dense, so no densely defined symmetric operator S is being
instantiated; the checks here exercise the resolvent-level algebra only.
The adjoint action is realized on decompositions phi = phi0 + G_0 zeta
as S* phi := A0 phi0.

All functions are pure matrix computations, safe to run concurrently
across trials.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import PoleError, ValidationError

_MODULE = "discext.finite"

_POLE_RTOL = 1e-10


@dataclass(frozen=True)
class FiniteModel:
    """Quadruple (A0, tau, Pi, Theta) with the standing assumptions.

    A0: N x N Hermitian with 0 away from its spectrum; tau: d x N of
    full rank d < N; Pi: d x d orthogonal projection; Theta: Hermitian
    and supported on range(Pi).
    """

    a0: np.ndarray = field(repr=False)
    tau: np.ndarray = field(repr=False)
    pi: np.ndarray = field(repr=False)
    theta: np.ndarray = field(repr=False)

    def __post_init__(self):
        a0 = np.asarray(self.a0, dtype=complex)
        tau = np.asarray(self.tau, dtype=complex)
        pi = np.asarray(self.pi, dtype=complex)
        theta = np.asarray(self.theta, dtype=complex)
        object.__setattr__(self, "a0", a0)
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "pi", pi)
        object.__setattr__(self, "theta", theta)
        n = a0.shape[0]
        if a0.shape != (n, n):
            raise ValidationError("A0 must be square", module=_MODULE)
        scale = max(1.0, np.abs(a0).max())
        if np.abs(a0 - a0.conj().T).max() > 1e-12 * scale:
            raise ValidationError("A0 must be Hermitian", module=_MODULE)
        if tau.ndim != 2 or tau.shape[1] != n:
            raise ValidationError("tau must be d x N", module=_MODULE)
        d = tau.shape[0]
        if not d < n:
            raise ValidationError("need d < N", module=_MODULE)
        if np.linalg.matrix_rank(tau, tol=1e-10 * max(1.0, np.abs(tau).max())) != d:
            raise ValidationError("tau must have full rank d", module=_MODULE)
        eigs = np.linalg.eigvalsh(a0)
        if np.abs(eigs).min() < 1e-8 * max(1.0, np.abs(eigs).max()):
            raise ValidationError("0 must lie away from the spectrum of A0",
                                  module=_MODULE)
        pscale = max(1.0, np.abs(pi).max())
        if pi.shape != (d, d) or np.abs(pi - pi.conj().T).max() > 1e-12 * pscale \
                or np.abs(pi @ pi - pi).max() > 1e-10 * pscale:
            raise ValidationError("Pi must be an orthogonal projection on C^d",
                                  module=_MODULE)
        tscale = max(1.0, np.abs(theta).max())
        if theta.shape != (d, d) or np.abs(theta - theta.conj().T).max() > 1e-12 * tscale:
            raise ValidationError("Theta must be Hermitian on C^d", module=_MODULE)
        if np.abs(theta - pi @ theta @ pi).max() > 1e-10 * tscale:
            raise ValidationError("Theta must be supported on range(Pi)", module=_MODULE)

    @property
    def dim(self):
        return self.a0.shape[0]

    @property
    def boundary_dim(self):
        return self.tau.shape[0]

    def a0_eigenvalues(self):
        return np.linalg.eigvalsh(self.a0)

    def projection_basis(self):
        """Orthonormal basis of range(Pi) as columns (possibly empty)."""
        vals, vecs = np.linalg.eigh(self.pi)
        return vecs[:, vals > 0.5]


def random_model(rng, n=8, d=3, projection_rank=None):
    """Random well-conditioned model for brute-force property checks.

    A0 gets Hermitian structure with eigenvalues pushed away from 0
    (|eig| in [0.5, 3], random signs); tau has singular values clipped
    into [0.5, 2]; Pi projects onto a random subspace of dimension
    `projection_rank` (random in 1..d when omitted); Theta is a random
    Hermitian matrix compressed onto range(Pi).
    """
    n, d = int(n), int(d)
    if not 1 <= d < n:
        raise ValidationError("need 1 <= d < N", module=_MODULE)

    def haar(m):
        q, r = np.linalg.qr(rng.standard_normal((m, m))
                            + 1j * rng.standard_normal((m, m)))
        return q * (np.diag(r) / np.abs(np.diag(r)))

    q = haar(n)
    eigs = rng.uniform(0.5, 3.0, size=n) * rng.choice([-1.0, 1.0], size=n)
    a0 = (q * eigs) @ q.conj().T
    a0 = (a0 + a0.conj().T) / 2

    raw = rng.standard_normal((d, n)) + 1j * rng.standard_normal((d, n))
    u, s, vh = np.linalg.svd(raw, full_matrices=False)
    tau = (u * np.clip(s, 0.5, 2.0)) @ vh

    rank = int(rng.integers(1, d + 1)) if projection_rank is None else int(projection_rank)
    if rank == 0:
        pi = np.zeros((d, d), dtype=complex)
        theta = np.zeros((d, d), dtype=complex)
    else:
        qb = np.linalg.qr(rng.standard_normal((d, rank))
                          + 1j * rng.standard_normal((d, rank)))[0]
        pi = qb @ qb.conj().T
        h = rng.standard_normal((rank, rank)) + 1j * rng.standard_normal((rank, rank))
        h = (h + h.conj().T) / 2
        theta = qb @ h @ qb.conj().T
    pi = (pi + pi.conj().T) / 2
    theta = (theta + theta.conj().T) / 2
    return FiniteModel(a0=a0, tau=tau, pi=pi, theta=theta)


def _resolvent0(model, z):
    """(-A0 + z)^(-1) with the pole gate."""
    eigs = model.a0_eigenvalues()
    gaps = np.abs(z - eigs)
    if (gaps / np.maximum(1.0, np.abs(eigs))).min() < _POLE_RTOL:
        raise PoleError(f"z={z} in the spectrum of A0", module=_MODULE)
    n = model.dim
    return np.linalg.solve(-model.a0 + z * np.eye(n), np.eye(n, dtype=complex))


def gz_matrix(model, z):
    """G_z = (tau R_zbar)^* = (-A0 + z)^(-1) tau^*  (N x d)."""
    return _resolvent0(model, complex(z)) @ model.tau.conj().T


def gamma_matrix(model, z):
    """Gamma_z = tau (G_0 - G_z); checked against -z tau A0^(-1) G_z."""
    z = complex(z)
    gz = gz_matrix(model, z)
    g0 = gz_matrix(model, 0.0)
    diff_form = model.tau @ (g0 - gz)
    reg_form = -z * (model.tau @ np.linalg.solve(model.a0, gz))
    scale = max(1.0, np.abs(diff_form).max())
    if np.abs(diff_form - reg_form).max() > 1e-9 * scale:
        raise ValidationError("the two Gamma_z expressions disagree "
                              "(ill-conditioned model?)", module=_MODULE)
    return diff_form


def _reduced_gap(model, z):
    """B^*(Theta + Pi Gamma_z Pi)B on the projection basis B."""
    basis = model.projection_basis()
    if basis.shape[1] == 0:
        return basis, np.zeros((0, 0), dtype=complex)
    gam = gamma_matrix(model, z)
    full = model.theta + model.pi @ gam @ model.pi
    return basis, basis.conj().T @ full @ basis


def gap_min_singular(model, lam):
    """Smallest singular value of Theta + Pi Gamma_lambda Pi on range(Pi).

    Vanishes exactly at points of spec(A_{Pi,Theta}) away from spec(A0)
    (the eigenvalue criterion).  Returns +inf for Pi = 0.
    """
    basis, reduced = _reduced_gap(model, complex(lam))
    if reduced.shape[0] == 0:
        return np.inf
    return float(np.linalg.svd(reduced, compute_uv=False)[-1])


def krein_resolvent(model, z):
    """R_z + G_z Pi (Theta + Pi Gamma_z Pi)^(-1) Pi G_zbar^*  (N x N).

    The middle inverse is taken on range(Pi); a singular middle term
    means z is a spectral point of the extension and raises PoleError.
    Non-real z is always accepted.
    """
    z = complex(z)
    rz = _resolvent0(model, z)
    basis, reduced = _reduced_gap(model, z)
    if reduced.shape[0] == 0:
        return rz
    sing = np.linalg.svd(reduced, compute_uv=False)
    scale = max(1.0, np.abs(model.theta).max(), np.abs(reduced).max())
    if sing[-1] < _POLE_RTOL * scale:
        raise PoleError(f"Theta + Pi Gamma_z Pi singular at z={z} "
                        "(spectral point of the extension)", module=_MODULE)
    middle = basis @ np.linalg.inv(reduced) @ basis.conj().T
    gz = gz_matrix(model, z)
    return rz + gz @ middle @ (model.tau @ rz)


def recover_extension(model, z_samples):
    """Invert corrected resolvents to exhibit the extension itself.

    Returns (Ahat, report): Ahat := z I - R(z)^(-1) from the first
    sample; the report carries the maximal Hermiticity defect and the
    maximal pairwise difference across samples (both should vanish for
    a genuine self-adjoint operator independent of z).
    """
    samples = [complex(z) for z in z_samples]
    if not samples:
        raise ValidationError("need at least one z sample", module=_MODULE)
    n = model.dim
    hats = []
    for z in samples:
        r = krein_resolvent(model, z)
        hats.append(z * np.eye(n) - np.linalg.solve(r, np.eye(n, dtype=complex)))
    herm = max(np.abs(a - a.conj().T).max() for a in hats)
    cross = 0.0
    for i in range(len(hats)):
        for j in range(i + 1, len(hats)):
            cross = max(cross, float(np.abs(hats[i] - hats[j]).max()))
    report = {"hermiticity_defect": float(herm), "cross_sample_defect": float(cross),
              "samples": len(hats)}
    return hats[0], report


def check_domain_condition(model, ahat):
    """Decompose eigenvectors of Ahat and test the boundary condition.

    For each eigenvector phi, solve the least-squares system

        phi0 + G_0 zeta = phi,   (I - Pi) zeta = 0,   Pi tau phi0 = Theta zeta

    (in finite dimension the decomposition need not be unique, so the
    check is existential).  Reported defects, all maxima over the
    eigenbasis: decomposition residual, boundary-condition rows,
    adjoint-action consistency |Ahat phi - A0 phi0|, regularized-trace
    identity |tau A0^(-1) Ahat phi - tau phi0|, and the Green identity

        <S* phi, psi> - <phi, S* psi> = (zeta_phi, tau psi0) - (tau phi0, zeta_psi)

    over all eigenvector pairs, with S* phi := A0 phi0.
    """
    n, d = model.dim, model.boundary_dim
    sym = (ahat + ahat.conj().T) / 2
    _, vecs = np.linalg.eigh(sym)
    g0 = gz_matrix(model, 0.0)
    system = np.zeros((n + 2 * d, n + d), dtype=complex)
    system[:n, :n] = np.eye(n)
    system[:n, n:] = g0
    system[n:n + d, n:] = np.eye(d) - model.pi
    system[n + d:, :n] = model.pi @ model.tau
    system[n + d:, n:] = -model.theta

    parts = []
    decomp = bc = action = trace = 0.0
    a0_inv_ahat = np.linalg.solve(model.a0, ahat)
    for idx in range(vecs.shape[1]):
        phi = vecs[:, idx]
        rhs = np.concatenate([phi, np.zeros(2 * d, dtype=complex)])
        sol, *_ = np.linalg.lstsq(system, rhs, rcond=None)
        phi0, zeta = sol[:n], sol[n:]
        parts.append((phi, phi0, zeta))
        decomp = max(decomp, float(np.abs(phi0 + g0 @ zeta - phi).max()))
        bc = max(bc, float(np.abs(model.pi @ model.tau @ phi0
                                  - model.theta @ zeta).max()))
        action = max(action, float(np.abs(ahat @ phi - model.a0 @ phi0).max()))
        trace = max(trace, float(np.abs(model.tau @ (a0_inv_ahat @ phi)
                                        - model.tau @ phi0).max()))
    green = 0.0
    for phi, phi0, zeta_phi in parts:
        s_phi = model.a0 @ phi0
        for psi, psi0, zeta_psi in parts:
            s_psi = model.a0 @ psi0
            lhs = np.vdot(s_phi, psi) - np.vdot(phi, s_psi)
            rhs = np.vdot(zeta_phi, model.tau @ psi0) - np.vdot(model.tau @ phi0,
                                                               zeta_psi)
            green = max(green, abs(lhs - rhs))
    return {"decomposition_residual": decomp, "boundary_condition_defect": bc,
            "action_defect": action, "regularized_trace_defect": trace,
            "green_defect": float(green), "eigenvectors": vecs.shape[1]}


def criterion_roots(model, interval, samples_per_gap=400):
    """Real roots of det(Theta + Pi Gamma_lambda Pi) on range(Pi) in an interval.

    The interval is split at the eigenvalues of A0 (poles of Gamma);
    within each gap the determinant is real (Hermitian reduced matrix)
    and its sign changes are bracketed on a sample grid and refined by
    bisection.  Even-multiplicity touchpoint roots carry no sign change
    and are not returned; the companion check (singularity at every
    eigenvalue of the recovered extension) covers them.
    """
    from scipy.optimize import brentq

    lo, hi = float(interval[0]), float(interval[1])
    basis = model.projection_basis()
    if basis.shape[1] == 0:
        return []
    g0 = gz_matrix(model, 0.0)

    def det_gap(lam):
        gz = gz_matrix(model, complex(lam))
        full = model.theta + model.pi @ (model.tau @ (g0 - gz)) @ model.pi
        return float(np.linalg.det(basis.conj().T @ full @ basis).real)

    eigs = model.a0_eigenvalues()
    cuts = [lo] + [float(e) for e in np.sort(eigs) if lo < e < hi] + [hi]
    roots = []
    for a, b in zip(cuts[:-1], cuts[1:]):
        eps = 1e-7 * max(1.0, abs(a), abs(b))
        aa, bb = a + eps, b - eps
        if aa >= bb:
            continue
        grid = np.linspace(aa, bb, samples_per_gap)
        vals = np.array([det_gap(x) for x in grid])
        for i in range(len(grid) - 1):
            if vals[i] == 0.0:
                roots.append(float(grid[i]))
            elif vals[i] * vals[i + 1] < 0.0:
                roots.append(float(brentq(det_gap, grid[i], grid[i + 1],
                                          xtol=1e-12)))
    return sorted(roots)
