"""Radial Sturm-Liouville engine.

Separating variables on the unit disc turns a rotation-invariant operator
into the family of radial operators

    L_n f(r) = -(1/r) (r a(r) f'(r))' + (c(r) + n^2/r^2) f(r),   0 < r < 1,

with boundary conditions f(1-) = 0 and, at the coordinate singularity
r = 0, lim r f'(r) = 0 for n = 0 (f(0+) = 0 for n >= 1).  This module
computes the first M eigenvalues lambda^2_{mn} > 0, the eigenfunctions
u_{mn} normalized in L^2((0,1); r dr), and the boundary fluxes

    nu_{mn} = lim_{r->1} a(r) u'_{mn}(r),

which are the coupling coefficients of the whole boundary-space
machinery downstream.

Discretization: finite-volume second-order scheme on a uniform grid,
assembled as a symmetric generalized tridiagonal eigenproblem (stiffness
vs diagonal mass), so the discrete problem is self-adjoint by
construction and discrete eigenfunctions are exactly orthonormal in the
discrete r dr inner product.  The n = 0 axis condition is enforced by a
flux-form closure on the half-cell [0, h/2]; for n >= 1 the first node
carries a Dirichlet condition.  Eigenfunction sign is fixed by making
the boundary flux negative (deterministic, and matching the closed-form
Laplacian normalization, whose fluxes are -sqrt(2) mu_{mn}).

All entry points are pure functions of immutable inputs; distinct modes
may be solved concurrently.
"""

import json
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy.linalg import eigh_tridiagonal

from .bessel import zero_table
from .errors import ConvergenceError, ValidationError

_MODULE = "discext.radial"

_SCHEME_ORDER = 2


@dataclass(frozen=True)
class RadialCoefficients:
    """Coefficient profiles a(r), c(r) plus admissibility metadata.

    a_profile/c_profile are vectorized callables on [0, 1].  The declared
    `ellipticity_floor` (inf a > 0) and `lipschitz_bound` (Lipschitz
    constant of a) are checked against sampled values by `validate`.
    `shift` is a constant added to c so that the Dirichlet operator is
    strictly positive; pass "auto" to have it chosen at solve time as
    max(0, 1 - smallest computed eigenvalue).

    Only pointwise-evaluable profiles are representable (named presets or
    polynomials in the config format); genuinely rough potentials that
    are merely r dr-integrable are out of scope.
    """

    a_profile: object
    c_profile: object
    lipschitz_bound: float
    ellipticity_floor: float
    shift: object = 0.0
    a_poly: tuple = None
    c_poly: tuple = None

    def a(self, r):
        return np.asarray(self.a_profile(np.asarray(r, dtype=float)), dtype=float)

    def c(self, r):
        return np.asarray(self.c_profile(np.asarray(r, dtype=float)), dtype=float)

    @classmethod
    def laplacian(cls):
        """The preset a = 1, c = 0 (Dirichlet Laplacian up to sign)."""
        return cls(a_profile=lambda r: np.ones_like(r),
                   c_profile=lambda r: np.zeros_like(r),
                   lipschitz_bound=0.0, ellipticity_floor=1.0, shift=0.0,
                   a_poly=(1.0,), c_poly=(0.0,))

    @classmethod
    def from_polynomials(cls, a_coeffs, c_coeffs, shift=0.0, samples=4097):
        """Build from ascending polynomial coefficients for a and c.

        The ellipticity floor and Lipschitz bound are measured from the
        polynomials on a fine sample grid.
        """
        a_coeffs = tuple(float(v) for v in a_coeffs)
        c_coeffs = tuple(float(v) for v in c_coeffs) if c_coeffs else (0.0,)
        if not a_coeffs:
            raise ValidationError("a polynomial needs at least one coefficient",
                                  module=_MODULE)
        rr = np.linspace(0.0, 1.0, samples)
        a_vals = npoly.polyval(rr, a_coeffs)
        floor = float(a_vals.min())
        if floor <= 0.0:
            raise ValidationError(
                f"a(r) must be uniformly positive; sampled minimum {floor:g}",
                module=_MODULE)
        lip = float(np.abs(npoly.polyval(rr, npoly.polyder(a_coeffs))).max()) if len(a_coeffs) > 1 else 0.0
        return cls(a_profile=lambda r: npoly.polyval(r, a_coeffs),
                   c_profile=lambda r: npoly.polyval(r, c_coeffs),
                   lipschitz_bound=lip, ellipticity_floor=floor, shift=shift,
                   a_poly=a_coeffs, c_poly=c_coeffs)

    def validate(self, samples=2001):
        """Check the declared bounds against sampled profile values."""
        if not (np.isfinite(self.ellipticity_floor) and self.ellipticity_floor > 0.0):
            raise ValidationError("ellipticity_floor must be a positive real",
                                  module=_MODULE)
        if not (np.isfinite(self.lipschitz_bound) and self.lipschitz_bound >= 0.0):
            raise ValidationError("lipschitz_bound must be a non-negative real",
                                  module=_MODULE)
        if self.shift != "auto" and not np.isfinite(float(self.shift)):
            raise ValidationError("shift must be a finite real or 'auto'", module=_MODULE)
        rr = np.linspace(0.0, 1.0, samples)
        a_vals = self.a(rr)
        c_vals = self.c(rr)
        if not np.all(np.isfinite(a_vals)) or not np.all(np.isfinite(c_vals)):
            raise ValidationError("coefficient profiles produced non-finite values",
                                  module=_MODULE)
        tol = 1e-9 * max(1.0, np.abs(a_vals).max())
        if a_vals.min() < self.ellipticity_floor - tol:
            raise ValidationError(
                f"sampled a(r) minimum {a_vals.min():g} below declared "
                f"ellipticity floor {self.ellipticity_floor:g}", module=_MODULE)
        quotients = np.abs(np.diff(a_vals)) / (rr[1] - rr[0])
        if quotients.max() > self.lipschitz_bound + tol:
            raise ValidationError(
                f"sampled difference quotient {quotients.max():g} exceeds declared "
                f"Lipschitz bound {self.lipschitz_bound:g}", module=_MODULE)
        return True


@dataclass(frozen=True)
class ModeSpectrum:
    """First M eigenpairs and fluxes of one radial operator L_n.

    grid: the uniform radial points r_i = i/N, i = 1..N (interval (0,1],
    r = 1 included with u(1) = 0).  eigenfunctions has shape (M, N) with
    row m-1 holding u_{mn} sampled on grid.  eigenvalues are the
    lambda^2_{mn}, strictly increasing and positive; fluxes are the
    nu_{mn}, all nonzero with negative sign by convention.
    """

    n: int
    grid: np.ndarray = field(repr=False)
    eigenvalues: np.ndarray = field(repr=False)
    fluxes: np.ndarray = field(repr=False)
    eigenfunctions: np.ndarray = field(repr=False)
    truncation: int
    discretization_meta: dict = field(default_factory=dict)
    # u(0) samples for n = 0, where the axis closure carries its own mass
    # h^2/8 in the discrete inner product; None when u(0) = 0 (n >= 1) or
    # for oracle spectra defined by continuum normalization.
    axis_samples: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "grid", np.asarray(self.grid, dtype=float))
        object.__setattr__(self, "eigenvalues", np.asarray(self.eigenvalues, dtype=float))
        object.__setattr__(self, "fluxes", np.asarray(self.fluxes, dtype=float))
        object.__setattr__(self, "eigenfunctions", np.asarray(self.eigenfunctions, dtype=float))
        lam2 = self.eigenvalues
        if lam2.size != self.truncation or self.fluxes.size != self.truncation:
            raise ValidationError("eigenvalue/flux count disagrees with truncation",
                                  module=_MODULE)
        if lam2.size and not (lam2[0] > 0.0 and np.all(np.diff(lam2) > 0.0)):
            raise ValidationError("eigenvalues must be strictly increasing and positive "
                                  "(is the shift large enough?)", module=_MODULE)
        if np.any(self.fluxes == 0.0):
            raise ValidationError("boundary fluxes must be nonzero", module=_MODULE)
        if self.eigenfunctions.shape != (self.truncation, self.grid.size):
            raise ValidationError("eigenfunction array shape mismatch", module=_MODULE)
        scale = np.abs(self.eigenfunctions).max() if self.eigenfunctions.size else 1.0
        if self.eigenfunctions.size and np.abs(self.eigenfunctions[:, -1]).max() > 1e-8 * scale:
            raise ValidationError("eigenfunctions must vanish at r = 1", module=_MODULE)

    def orthonormality_defect(self, max_m=None):
        """max |<u_i, u_j>_{r dr} - delta_ij| in the discrete inner product.

        Uses the grid weights r_i h plus, when present, the axis
        half-cell mass carried by the n = 0 closure, so finite-volume
        spectra score at the rounding level.
        """
        m = self.truncation if max_m is None else min(max_m, self.truncation)
        u = self.eigenfunctions[:m]
        h = self.grid[1] - self.grid[0] if self.grid.size > 1 else self.grid[0]
        gram = (u * (self.grid * h)) @ u.T
        if self.axis_samples is not None:
            ax = np.asarray(self.axis_samples[:m], dtype=float)
            gram = gram + (h * h / 8.0) * np.outer(ax, ax)
        return float(np.abs(gram - np.eye(m)).max())

    def to_json(self, include_eigenfunctions=False):
        doc = {
            "schema": "discext.mode-spectrum.v1",
            "n": int(self.n),
            "grid": self.grid.tolist(),
            "eigenvalues": self.eigenvalues.tolist(),
            "fluxes": self.fluxes.tolist(),
            "truncation": int(self.truncation),
            "meta": dict(self.discretization_meta),
        }
        if include_eigenfunctions:
            doc["eigenfunctions"] = self.eigenfunctions.tolist()
            if self.axis_samples is not None:
                doc["axis_samples"] = self.axis_samples.tolist()
        return doc

    @classmethod
    def from_json(cls, doc):
        if doc.get("schema") != "discext.mode-spectrum.v1":
            raise ValidationError(f"unrecognized spectrum schema {doc.get('schema')!r}",
                                  module=_MODULE)
        grid = np.asarray(doc["grid"], dtype=float)
        m = int(doc["truncation"])
        eig = doc.get("eigenfunctions")
        if eig is None:
            eig = np.zeros((m, grid.size))
            eig_missing = True
        else:
            eig = np.asarray(eig, dtype=float)
            eig_missing = False
        ax = doc.get("axis_samples")
        spec = cls(n=int(doc["n"]), grid=grid,
                   eigenvalues=np.asarray(doc["eigenvalues"], dtype=float),
                   fluxes=np.asarray(doc["fluxes"], dtype=float),
                   eigenfunctions=eig, truncation=m,
                   discretization_meta=dict(doc.get("meta", {})),
                   axis_samples=None if ax is None else np.asarray(ax, dtype=float))
        if eig_missing:
            spec.discretization_meta["eigenfunctions_omitted"] = True
        return spec


def _assemble(coeffs, c_shifted, n, grid_size):
    """Finite-volume stiffness/mass diagonals for mode n on N cells."""
    N = grid_size
    h = 1.0 / N
    nodes = np.linspace(0.0, 1.0, N + 1)
    half = 0.5 * (nodes[:-1] + nodes[1:])
    p = half * coeffs.a(half)                      # r a(r) at half-points
    if n == 0:
        # Unknowns at nodes 0..N-1; half-cell closure at the axis enforces
        # the lim r f' = 0 condition in flux form.
        m_diag = np.empty(N)
        m_diag[0] = h * h / 8.0
        m_diag[1:] = nodes[1:N] * h
        k_diag = np.empty(N)
        k_diag[0] = p[0] / h + c_shifted(np.array([0.0]))[0] * h * h / 8.0
        k_diag[1:] = (p[:N - 1] + p[1:N]) / h + c_shifted(nodes[1:N]) * nodes[1:N] * h
        k_off = -p[:N - 1] / h
        interior = np.arange(0, N)
    else:
        # Dirichlet at both the first node and r = 1.
        rr = nodes[1:N]
        m_diag = rr * h
        k_diag = (p[:N - 1] + p[1:N]) / h + (c_shifted(rr) + n * n / rr ** 2) * rr * h
        k_off = -p[1:N - 1] / h
        interior = np.arange(1, N)
    return nodes, m_diag, k_diag, k_off, interior


def _solve_assembled(coeffs, c_shifted, n, M, grid_size):
    nodes, m_diag, k_diag, k_off, interior = _assemble(coeffs, c_shifted, n, grid_size)
    size = m_diag.size
    if M > size - 1:
        raise ConvergenceError(
            f"grid with {grid_size} cells cannot resolve {M} modes for n={n}",
            module=_MODULE)
    # Symmetrize the generalized problem K v = lambda^2 M v with the
    # diagonal mass: eigenvectors of D^{-1/2} K D^{-1/2} scaled back by
    # D^{-1/2} are exactly M-orthonormal.
    sqrt_m = np.sqrt(m_diag)
    d = k_diag / m_diag
    e = k_off / (sqrt_m[:-1] * sqrt_m[1:])
    lam2, vecs = eigh_tridiagonal(d, e, select="i", select_range=(0, M - 1))
    profiles = np.zeros((grid_size + 1, M))
    profiles[interior, :] = vecs / sqrt_m[:, None]
    return nodes, lam2, profiles


def _flux(coeffs, nodes, profiles):
    """One-sided second-order flux a(1) u'(1) using u(1) = 0."""
    h = nodes[1] - nodes[0]
    a1 = float(coeffs.a(np.array([1.0]))[0])
    return a1 * (profiles[-3, :] - 4.0 * profiles[-2, :]) / (2.0 * h)


def resolve_shift(coeffs, grid_size=512):
    """Numeric value of the shift ("auto" -> max(0, 1 - min eigenvalue))."""
    if coeffs.shift != "auto":
        return float(coeffs.shift)
    lows = []
    for n in (0, 1):
        _, lam2, _ = _solve_assembled(coeffs, coeffs.c, n, 1, grid_size)
        lows.append(lam2[0])
    return max(0.0, 1.0 - min(lows))


def solve_mode(coeffs, n, M, grid_size=2000):
    """First M eigenpairs of L_n (with the shift applied to c).

    Returns a ModeSpectrum on the uniform (0,1] grid with `grid_size`
    points.  Raises ConvergenceError when the grid cannot resolve M
    modes and ValidationError when the coefficients are inadmissible or
    the shifted operator fails to be positive.
    """
    if not float(n).is_integer() or n < 0:
        raise ValidationError(f"mode n must be a non-negative integer, got {n!r}",
                              module=_MODULE)
    if not float(M).is_integer() or M < 1:
        raise ValidationError(f"truncation M must be a positive integer, got {M!r}",
                              module=_MODULE)
    if not float(grid_size).is_integer() or grid_size < 16:
        raise ConvergenceError(f"degenerate grid (size {grid_size!r})", module=_MODULE)
    n, M, grid_size = int(n), int(M), int(grid_size)
    coeffs.validate()
    shift = resolve_shift(coeffs, min(grid_size, 512))
    c_shifted = (coeffs.c if shift == 0.0
                 else (lambda r, _s=shift: coeffs.c(r) + _s))
    nodes, lam2, profiles = _solve_assembled(coeffs, c_shifted, n, M, grid_size)
    if lam2[0] <= 0.0:
        raise ValidationError(
            f"smallest eigenvalue {lam2[0]:g} not positive for n={n}; "
            "increase the shift (or pass shift='auto')", module=_MODULE)
    nu = _flux(coeffs, nodes, profiles)
    if np.any(nu == 0.0):
        raise ConvergenceError("vanishing boundary flux: eigenfunction not resolved",
                               module=_MODULE)
    # Sign convention: boundary flux negative.
    sign = -np.sign(nu)
    profiles = profiles * sign
    nu = nu * sign
    meta = {"grid_size": grid_size, "scheme_order": _SCHEME_ORDER,
            "shift_applied": shift, "source": "finite-volume"}
    return ModeSpectrum(n=n, grid=nodes[1:], eigenvalues=lam2, fluxes=nu,
                        eigenfunctions=profiles[1:, :].T, truncation=M,
                        discretization_meta=meta,
                        axis_samples=profiles[0, :].copy() if n == 0 else None)


def bessel_mode_spectrum(n, M, grid_size=2000):
    """Exact Laplacian mode spectrum from Bessel data (oracle constructor).

    For a = 1, c = 0 the radial eigenfunctions are
    sqrt(2) J_n(mu_m r)/J_{n+1}(mu_m) with eigenvalue mu_m^2 and flux
    -sqrt(2) mu_m, mu_m the m-th positive zero of J_n.  Used as ground
    truth for the finite-volume engine and as high-accuracy input to the
    series machinery.
    """
    from scipy.special import jv
    n, M, grid_size = int(n), int(M), int(grid_size)
    mu = zero_table(n, M).zeros
    grid = np.linspace(0.0, 1.0, grid_size + 1)[1:]
    norm = np.sqrt(2.0) / jv(n + 1, mu)
    profiles = norm[:, None] * jv(n, mu[:, None] * grid[None, :])
    profiles[:, -1] = 0.0
    meta = {"grid_size": grid_size, "scheme_order": np.inf,
            "shift_applied": 0.0, "source": "bessel-oracle"}
    return ModeSpectrum(n=n, grid=grid, eigenvalues=mu ** 2,
                        fluxes=-np.sqrt(2.0) * mu, eigenfunctions=profiles,
                        truncation=M, discretization_meta=meta)


def ode_residual(profile, lam, n, coeffs, window=(0.05, 0.95)):
    """Discrete L^2(r dr) norm of (1/r)(r a f')' - (c + n^2/r^2) f - lam f.

    `profile` must be sampled on the module's uniform (0,1] grid (length
    N, spacing 1/N); the residual is accumulated over grid points inside
    the interior window only, away from both the axis and the boundary
    (a synthesized extension eigenfunction has non-Dirichlet behavior at
    r = 1 by design).
    """
    profile = np.asarray(profile, dtype=float)
    if profile.ndim != 1 or profile.size < 16:
        raise ValidationError("profile must be a 1-d sample array on the radial grid "
                              "(grid mismatch)", module=_MODULE)
    lo, hi = float(window[0]), float(window[1])
    if not 0.0 < lo < hi < 1.0:
        raise ValidationError(f"window must satisfy 0 < lo < hi < 1, got {window!r}",
                              module=_MODULE)
    N = profile.size
    h = 1.0 / N
    nodes = np.linspace(0.0, 1.0, N + 1)
    shift = resolve_shift(coeffs, min(N, 512))
    full = np.concatenate([[0.0], profile])      # node 0 only used for i >= 2 stencils
    idx = np.arange(2, N)                        # nodes with both neighbors on the grid
    rr = nodes[idx]
    half = 0.5 * (nodes[:-1] + nodes[1:])
    p = half * coeffs.a(half)
    div = (p[idx - 1] * (full[idx - 1] - full[idx])
           + p[idx] * (full[idx + 1] - full[idx])) / (rr * h * h)
    resid = div - (coeffs.c(rr) + shift + n * n / rr ** 2) * full[idx] - lam * full[idx]
    mask = (rr >= lo) & (rr <= hi)
    return float(np.sqrt(np.sum(resid[mask] ** 2 * rr[mask] * h)))
