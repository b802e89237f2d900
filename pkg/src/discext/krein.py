"""Per-mode boundary-space resolvent machinery on the unit disc.

Convention: all resolvents are (-A + z)^(-1), so the spectrum of an
operator A shows up as poles in z at its eigenvalues; the Dirichlet
(Friedrichs) reference operator A0 has spectrum {-lambda^2_{mn}} and its
resolvent poles sit at z = -lambda^2_{mn}.  This is the reverse of the
common (A - z)^(-1) convention.

In the Fourier basis e_k of the boundary circle, weighted so that the
H^{1/2} pairing is diagonal with weight w_k = (k^2+1)^(1/2), everything
decouples mode by mode.  With nu_{mn} the boundary fluxes of the radial
eigenfunctions, the relevant matrix elements are

    [G_z]_{m n k} = (n^2+1)^(1/4) nu_{m|n|} / (lambda^2_{m|n|} + z) delta_{nk}
    [Gamma_z]_{kk} = z (k^2+1)^(1/2) sum_m nu^2_{m|k|}
                        / (lambda^2_{m|k|} (lambda^2_{m|k|} + z))

and the resolvent of the extension selected by a diagonal pair (Pi,
Theta) — index set I with couplings theta_k — is the Friedrichs term
plus a rank-one-per-mode correction with denominator theta_k +
[Gamma_z]_{kk}.  On each real interval between consecutive poles
-lambda^2, [Gamma_z]_{kk} is strictly increasing from -inf to +inf, so
theta_k + Gamma has exactly one root per gap; prescribing an eigenvalue
lambda* is achieved by theta_k := -[Gamma_{lambda*}]_{kk} (spectral
engineering), and the eigenfunction is an explicit series in the radial
eigenfunctions.

Series tails: the Gamma series converges like sum 1/m^2, so raw
truncation would waste the accuracy of everything downstream.  Terms up
to the spectrum's truncation M are summed directly and the remainder is
modelled with the Weyl law lambda_m ~ alpha m + beta and the flux law
nu^2_m ~ C lambda^2_m + D (both fitted to the last computed modes); the
model tails have closed forms in the digamma function.  Each Gamma
value carries a tail-error estimate validated against larger
truncations.

Normalization notes: the (k^2+1)^(1/4) weights are those of the fixed
H^{1/2}-style basis above.  Choosing a different boundary weight w'_k
rescales the boundary basis by (w'_k/w_k)^(1/2) per mode and therefore
rescales each Gamma element — and with it any prescribed theta_k — by
w'_k/w_k; no alternative normalization is offered.  Translating theta_k
into classical per-mode Robin coefficients (which involves the
regularized boundary trace of the regular part rather than the full
trace) is documented future work and not implemented.

All operations are pure functions of immutable inputs and are safe to
evaluate concurrently (per mode, per z).
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq
from scipy.special import betainc, digamma, ive, polygamma

from .errors import PoleError, TruncationError, ValidationError

_MODULE = "discext.krein"

_POLE_RTOL = 1e-10          # |lambda^2 + z| / max(1, lambda^2) below this is a pole
_TAYLOR_FRAC = 0.01         # |z| below this fraction of the first tail
                            # eigenvalue uses the series branch of the
                            # tail sums instead of the digamma form
_MIN_FIT_MODES = 8


def lambda_weight(k):
    """Diagonal boundary weight (k^2+1)^(1/2) of the Fourier mode k."""
    kk = int(k)
    return math.sqrt(kk * kk + 1.0)


@dataclass(frozen=True)
class LambdaWeight:
    """The mode index together with its boundary weight."""

    k: int

    @property
    def weight(self):
        return lambda_weight(self.k)


@dataclass(frozen=True)
class ExtensionParameter:
    """Diagonal boundary pair: finite index set I and theta: I -> R.

    Modes outside I follow the Dirichlet (Friedrichs) rule; an infinite
    index set is represented by the finite window actually queried.
    """

    theta: dict

    def __post_init__(self):
        clean = {}
        for k, v in dict(self.theta).items():
            if not float(k).is_integer():
                raise ValidationError(f"index {k!r} is not an integer", module=_MODULE)
            v = float(v)
            if not np.isfinite(v):
                raise ValidationError(f"theta[{k}] = {v!r} is not finite", module=_MODULE)
            clean[int(k)] = v
        object.__setattr__(self, "theta", clean)

    @property
    def index_set(self):
        return frozenset(self.theta)

    @classmethod
    def from_pairs(cls, pairs):
        return cls(theta={int(k): float(v) for k, v in pairs})


@dataclass(frozen=True)
class GammaEvaluation:
    """One value of [Gamma_z]_{kk} with its truncation metadata.

    tail_estimate bounds the modulus of the error committed by the
    modelled series remainder (empirically validated against larger
    truncations); the value at z = 0 is exactly 0.
    """

    k: int
    z: complex
    value: complex
    truncation_M: int
    tail_estimate: float


@dataclass(frozen=True)
class SyntheticEigenfunction:
    """Truncated eigenfunction series for one mode.

    `eigenvalue` is the prescribed spectral point (named so because
    "lambda" is reserved in Python).  `coefficients` are the raw series
    coefficients nu_m / (lambda^2_m + eigenvalue); `radial_samples`
    holds the series evaluated on `grid` with a smooth spectral cutoff
    (the raw partial sums do not converge in C^2 up to the boundary, and
    an unfiltered sum fails pointwise second-derivative checks; the
    filter is recorded in `meta`).
    """

    n: int
    eigenvalue: float
    coefficients: np.ndarray = field(repr=False)
    radial_samples: np.ndarray = field(repr=False)
    grid: np.ndarray = field(repr=False)
    meta: dict = field(default_factory=dict)


def _near_pole(lam2, z):
    """Distance check of -z against the eigenvalue list."""
    gaps = np.abs(lam2 + z)
    scales = np.maximum(1.0, lam2)
    j = int(np.argmin(gaps / scales))
    return gaps[j] < _POLE_RTOL * scales[j], lam2[j]


class _FluxSeries:
    """Fitted tail model over one mode's (lambda^2, nu) data.

    Weyl fit lambda_m ~ alpha m + beta and flux fit nu^2 ~ C lambda^2 + D
    over the last min(40, M/3) modes; closed-form model tails via the
    digamma function.  Pure and cheap to construct; built per call.
    """

    def __init__(self, ms):
        self.lam2 = ms.eigenvalues
        self.nu2 = ms.fluxes ** 2
        self.M = ms.truncation
        if self.M >= _MIN_FIT_MODES:
            lam = np.sqrt(self.lam2)
            w = min(40, max(_MIN_FIT_MODES // 2, self.M // 3))
            ms_idx = np.arange(self.M - w + 1, self.M + 1, dtype=float)
            self.alpha, self.beta = np.polyfit(ms_idx, lam[-w:], 1)
            basis = np.vstack([self.lam2[-w:], np.ones(w)]).T
            (self.C, self.D), *_ = np.linalg.lstsq(basis, self.nu2[-w:], rcond=None)
            # Fit residuals feed the tail-error estimate.
            self.eps_flux = float(np.abs(self.nu2[-w:] - (self.C * self.lam2[-w:] + self.D))
                                  .max() / self.lam2[-1])
            self.eps_lam = float(np.abs(lam[-w:] - (self.alpha * ms_idx + self.beta)).max())
            self.x0 = self.M + 1 + self.beta / self.alpha
            # inv_pow[j] = sum_{m>M} (alpha m + beta)^(-2j-2); these are
            # the Taylor coefficients of the tail sums around z = 0.
            self.inv_pow = tuple(
                float(polygamma(2 * j - 1, self.x0))
                / (math.factorial(2 * j - 1) * self.alpha ** (2 * j))
                for j in range(1, 6))
            self.lam2_next = (self.alpha * (self.M + 1) + self.beta) ** 2
            self.has_tail = True
        else:
            self.has_tail = False

    def model_sum(self, z):
        """sum_{m>M} 1/((alpha m + beta)^2 + z), closed form."""
        if abs(z) < _TAYLOR_FRAC * self.lam2_next:
            p = self.inv_pow
            val = p[0] - z * (p[1] - z * (p[2] - z * p[3]))
        else:
            sq = np.sqrt(complex(z))
            x1 = self.M + 1 + (self.beta + 1j * sq) / self.alpha
            x2 = self.M + 1 + (self.beta - 1j * sq) / self.alpha
            val = (digamma(x1) - digamma(x2)) / (2j * sq * self.alpha)
        val = complex(val)
        return val.real if abs(complex(z).imag) == 0.0 else val

    def model_ratio_sum(self, z):
        """sum_{m>M} 1/((alpha m + beta)^2 ((alpha m + beta)^2 + z)).

        Equals (model_sum(0) - model_sum(z)) / z, but that subtraction
        loses everything to rounding once |z| is far below the first
        tail eigenvalue; the Taylor branch stays cancellation-free.
        """
        if abs(z) < _TAYLOR_FRAC * self.lam2_next:
            p = self.inv_pow
            val = p[1] - z * (p[2] - z * (p[3] - z * p[4]))
        else:
            val = (self.inv_pow[0] - self.model_sum(z)) / z
        val = complex(val)
        return val.real if abs(complex(z).imag) == 0.0 else val

    def _tail_gamma(self, z):
        """Model remainder of sum nu^2/(lambda^2 (lambda^2+z)) past M."""
        return self.C * self.model_sum(z) + self.D * self.model_ratio_sum(z)

    def _tail_estimate(self, z, weight):
        if not self.has_tail:
            return math.inf
        s_abs = abs(self.model_sum(abs(z)))
        lam_top2 = self.lam2[-1]
        drift = 2.0 * self.eps_lam / (self.alpha * (lam_top2 + abs(z)))
        return 3.0 * abs(weight * z) * (self.eps_flux * s_abs + abs(self.C) * drift)

    def gamma(self, k, z):
        """[Gamma_z]_{kk} including the model tail (no tolerance gate)."""
        if z == 0:
            return 0.0
        core = (self.nu2 / (self.lam2 * (self.lam2 + z))).sum()
        tail = self._tail_gamma(z) if self.has_tail else 0.0
        val = lambda_weight(k) * z * (core + tail)
        if isinstance(z, complex) and z.imag != 0.0:
            return complex(val)
        return float(np.real(val))

    def majorant(self, k, z):
        """Cancellation-free magnitude scale of the Gamma series at z."""
        core = (self.nu2 / (self.lam2 * np.abs(self.lam2 + z))).sum()
        tail = abs(self._tail_gamma(abs(z))) if self.has_tail else 0.0
        return abs(lambda_weight(k) * z) * (core + tail)

    def cross_sum(self, z, w):
        """Full sum nu^2/((lambda^2+z)(lambda^2+w)), model tail included.

        Needed whenever a product of two resolvents is contracted over
        the complete set of radial modes (first-resolvent-identity
        checks); requires z != w.
        """
        if z == w:
            raise ValidationError("cross_sum requires two distinct spectral points",
                                  module=_MODULE)
        core = (self.nu2 / ((self.lam2 + z) * (self.lam2 + w))).sum()
        tail = 0.0
        if self.has_tail:
            sz, sw = self.model_sum(z), self.model_sum(w)
            tail = (self.C * (z * sz - w * sw) / (z - w)
                    + self.D * (sz - sw) / (w - z))
        return core + tail


def _check_mode_match(ms, k):
    if ms.n != abs(int(k)):
        raise ValidationError(
            f"spectrum is for mode n={ms.n}, cannot serve boundary index k={k}",
            module=_MODULE)


def _check_m_range(ms, m):
    if not 1 <= int(m) <= ms.truncation:
        raise ValidationError(
            f"radial index m={m} outside computed range 1..{ms.truncation}",
            module=_MODULE)
    return int(m) - 1


def g0_element(ms, m, k):
    """[G_0] element: (k^2+1)^(1/4) nu_{m|k|} / lambda^2_{m|k|}.

    The spectrum must belong to mode |k|; the Kronecker selection across
    modes is the caller's bookkeeping (cross-mode elements vanish).
    """
    _check_mode_match(ms, k)
    i = _check_m_range(ms, m)
    return float(lambda_weight(k) ** 0.5 * ms.fluxes[i] / ms.eigenvalues[i])


def gz_element(ms, m, k, z):
    """[G_z] element: (k^2+1)^(1/4) nu_{m|k|} / (lambda^2_{m|k|} + z)."""
    _check_mode_match(ms, k)
    i = _check_m_range(ms, m)
    z = complex(z)
    lam2 = ms.eigenvalues[i]
    if abs(lam2 + z) < _POLE_RTOL * max(1.0, lam2):
        raise PoleError(f"z={z} hits the resolvent pole at -lambda^2 = {-lam2:.12g}",
                        module=_MODULE)
    return complex(lambda_weight(k) ** 0.5 * ms.fluxes[i] / (lam2 + z))


def gamma_diag(ms, k, z, rel_tol=1e-6):
    """Diagonal Weyl-function element [Gamma_z]_{kk} with tail control.

    Sums the series over the spectrum's M computed modes and adds the
    fitted model tail; raises TruncationError when the tail-error
    estimate exceeds rel_tol relative to max(|value|, cancellation-free
    majorant) — the majorant keeps evaluations near the zeros of Gamma
    (where |value| dips through 0) from failing spuriously.
    """
    _check_mode_match(ms, k)
    z = complex(z)
    if z == 0:
        return GammaEvaluation(k=int(k), z=0j, value=0j, truncation_M=ms.truncation,
                               tail_estimate=0.0)
    hit, lam2_near = _near_pole(ms.eigenvalues, z)
    if hit:
        raise PoleError(f"z={z} at the series pole -lambda^2 = {-lam2_near:.12g}",
                        module=_MODULE)
    if z.imag == 0.0 and z.real < -ms.eigenvalues[-1]:
        raise TruncationError(
            f"real z={z.real:g} below the computed spectral window "
            f"(-lambda^2_M = {-ms.eigenvalues[-1]:g}); increase M", module=_MODULE)
    sd = _FluxSeries(ms)
    if not sd.has_tail:
        raise TruncationError(
            f"truncation M={ms.truncation} too small for tail modelling "
            f"(need >= {_MIN_FIT_MODES})", module=_MODULE)
    zz = z.real if z.imag == 0.0 else z
    value = sd.gamma(k, zz)
    est = sd._tail_estimate(zz, lambda_weight(k))
    scale = max(abs(value), sd.majorant(k, zz))
    if est > rel_tol * scale:
        raise TruncationError(
            f"tail estimate {est:.3e} exceeds rel_tol {rel_tol:g} x scale {scale:.3e} "
            f"at M={ms.truncation}; increase M", module=_MODULE)
    return GammaEvaluation(k=int(k), z=z, value=complex(value),
                           truncation_M=ms.truncation, tail_estimate=float(est))


def gamma_laplacian_closed(k, z):
    """Closed-form Laplacian oracle: (k^2+1)^(1/2) sqrt(z) I_{|k|+1}(sqrt z)/I_{|k|}(sqrt z).

    Real z > 0 only (the oracle domain).  Validated against raw partial
    sums of the series with Bessel-zero data before use as ground truth;
    evaluated with exponentially scaled I to avoid overflow.
    """
    z = float(z)
    if not np.isfinite(z) or z <= 0.0:
        raise ValidationError(f"closed form defined for real z > 0, got {z!r}",
                              module=_MODULE)
    n = abs(int(k))
    x = math.sqrt(z)
    return float(lambda_weight(k) * x * ive(n + 1, x) / ive(n, x))


def _denominator(params, sd, k, z):
    """theta_k + Gamma with the pole gate applied."""
    zz = z.real if isinstance(z, complex) and z.imag == 0.0 else z
    gam = sd.gamma(k, zz)
    den = params.theta[k] + gam
    scale = max(1.0, abs(params.theta[k]), abs(gam))
    if abs(den) < _POLE_RTOL * scale:
        raise PoleError(
            f"z={z} is an eigenvalue of the extension for mode k={k} "
            f"(theta + Gamma vanishes)", module=_MODULE)
    return den


def resolvent_element(params, spectra, z, row, col, rel_tol=1e-6):
    """Matrix element of the extension resolvent (-A_{Pi,Theta} + z)^(-1).

    row = (m, n), col = (mt, nt) index the product basis of radial modes
    and Fourier modes.  Cross-mode elements are exactly zero; for modes
    outside the index set the Dirichlet diagonal 1/(lambda^2 + z) is
    returned; inside the index set the rank-one boundary correction with
    denominator theta_n + [Gamma_z]_{nn} is added.  Poles of either term
    raise PoleError.
    """
    m, n = int(row[0]), int(row[1])
    mt, nt = int(col[0]), int(col[1])
    z = complex(z)
    if n != nt:
        return 0j
    try:
        ms = spectra[abs(n)]
    except (KeyError, IndexError):
        raise ValidationError(f"no spectrum provided for mode |n|={abs(n)}",
                              module=_MODULE) from None
    i = _check_m_range(ms, m)
    j = _check_m_range(ms, mt)
    for idx in (i, j):
        lam2 = ms.eigenvalues[idx]
        if abs(lam2 + z) < _POLE_RTOL * max(1.0, lam2):
            raise PoleError(f"z={z} at the Dirichlet pole -lambda^2 = {-lam2:.12g}",
                            module=_MODULE)
    base = (1.0 / (ms.eigenvalues[i] + z)) if i == j else 0j
    if n not in params.index_set:
        return complex(base)
    # Validate the Gamma tolerance for this query, then reuse the series.
    gamma_diag(ms, n, z, rel_tol)
    sd = _FluxSeries(ms)
    den = _denominator(params, sd, n, z)
    corr = (lambda_weight(n) / den
            * ms.fluxes[i] / (ms.eigenvalues[i] + z)
            * ms.fluxes[j] / (ms.eigenvalues[j] + z))
    return complex(base + corr)


def resolvent_block(params, spectra, n, z, size=None, rel_tol=1e-6):
    """Dense (size x size) block of the resolvent for one Fourier mode n."""
    try:
        ms = spectra[abs(n)]
    except (KeyError, IndexError):
        raise ValidationError(f"no spectrum provided for mode |n|={abs(n)}",
                              module=_MODULE) from None
    size = ms.truncation if size is None else int(size)
    if not 1 <= size <= ms.truncation:
        raise ValidationError(f"block size {size} outside 1..{ms.truncation}",
                              module=_MODULE)
    z = complex(z)
    hit, lam2_near = _near_pole(ms.eigenvalues[:size], z)
    if hit:
        raise PoleError(f"z={z} at the Dirichlet pole -lambda^2 = {-lam2_near:.12g}",
                        module=_MODULE)
    diag = 1.0 / (ms.eigenvalues[:size] + z)
    block = np.diag(diag)
    if n in params.index_set:
        gamma_diag(ms, n, z, rel_tol)
        sd = _FluxSeries(ms)
        den = _denominator(params, sd, n, z)
        v = ms.fluxes[:size] / (ms.eigenvalues[:size] + z)
        block = block + (lambda_weight(n) / den) * np.outer(v, v)
    return block


def resolvent_identity_defect(params, spectra, n, z, w, size=None, rel_tol=1e-6):
    """Max-norm defect of R(z) - R(w) = (w - z) R(z) R(w) on a mode block.

    The product contracts over the *complete* radial index, not just the
    displayed block: the diagonal part telescopes exactly and the
    correction cross-terms need the full flux sum, supplied by the
    fitted-tail cross_sum engine.  Truncating that inner sum instead
    would leave an O(1e-3) false defect.
    """
    z, w = complex(z), complex(w)
    if z == w:
        raise ValidationError("identity check needs two distinct points", module=_MODULE)
    ms = spectra[abs(n)]
    size = min(ms.truncation, 40) if size is None else int(size)
    lam2 = ms.eigenvalues[:size]
    dz = 1.0 / (lam2 + z)
    dw = 1.0 / (lam2 + w)
    r_z = resolvent_block(params, spectra, n, z, size, rel_tol)
    r_w = resolvent_block(params, spectra, n, w, size, rel_tol)
    prod = np.diag(dz * dw).astype(complex)
    if n in params.index_set:
        sd = _FluxSeries(ms)
        cz = lambda_weight(n) / _denominator(params, sd, n, z)
        cw = lambda_weight(n) / _denominator(params, sd, n, w)
        vz = ms.fluxes[:size] * dz
        vw = ms.fluxes[:size] * dw
        prod = (prod
                + cw * np.outer(dz * vw, vw)
                + cz * np.outer(vz, vz * dw)
                + cz * cw * sd.cross_sum(z if z.imag else z.real,
                                         w if w.imag else w.real) * np.outer(vz, vw))
    return float(np.abs(r_z - r_w - (w - z) * prod).max())


def engineer_theta(ms, lambda_target, rel_tol=1e-6):
    """Coupling theta = -[Gamma_{lambda*}]_{kk} placing lambda* in the spectrum.

    The prescribed point must avoid the Dirichlet eigenvalues
    -lambda^2_m (where Gamma has its poles); lambda* = 0 gives theta = 0
    exactly.
    """
    lam = float(lambda_target)
    if not np.isfinite(lam):
        raise ValidationError(f"lambda_target must be finite, got {lambda_target!r}",
                              module=_MODULE)
    ev = gamma_diag(ms, ms.n, lam, rel_tol)
    return -float(ev.value.real)


def find_extension_eigenvalues(params, spectra, interval, rel_tol=1e-6):
    """All roots of theta_k + [Gamma_lambda]_{kk} in a real interval.

    For each k in the index set, the interval is split at the poles
    -lambda^2_{m|k|}; on each gap Gamma increases monotonically from
    -inf to +inf, so a sign change brackets exactly one root, refined by
    Brent's method.  Returns a sorted list of (k, lambda) pairs.
    """
    lo, hi = float(interval[0]), float(interval[1])
    if not lo < hi:
        raise ValidationError(f"empty interval {interval!r}", module=_MODULE)
    found = []
    for k in sorted(params.index_set):
        try:
            ms = spectra[abs(k)]
        except (KeyError, IndexError):
            raise ValidationError(f"no spectrum provided for mode |k|={abs(k)}",
                                  module=_MODULE) from None
        if lo < -ms.eigenvalues[-1]:
            raise TruncationError(
                f"interval reaches below the computed spectral window of mode {k} "
                f"(-lambda^2_M = {-ms.eigenvalues[-1]:g})", module=_MODULE)
        sd = _FluxSeries(ms)
        if not sd.has_tail:
            raise TruncationError(
                f"truncation M={ms.truncation} too small for tail modelling",
                module=_MODULE)
        theta = params.theta[k]

        def f(x, _sd=sd, _k=k, _theta=theta):
            return _theta + _sd.gamma(_k, x)

        poles = np.sort(-ms.eigenvalues)
        cuts = [lo] + [p for p in poles if lo < p < hi] + [hi]
        for a, b in zip(cuts[:-1], cuts[1:]):
            eps_a = _POLE_RTOL * 10 * max(1.0, abs(a))
            eps_b = _POLE_RTOL * 10 * max(1.0, abs(b))
            aa, bb = a + eps_a, b - eps_b
            if aa >= bb:
                continue
            fa, fb = f(aa), f(bb)
            if fa == 0.0:
                root = aa
            elif fb == 0.0:
                root = bb
            elif fa * fb < 0.0:
                root = brentq(f, aa, bb, xtol=1e-12)
            else:
                continue
            # The root is only as good as the Gamma tolerance there.
            if root != 0.0:
                ev_est = sd._tail_estimate(root, lambda_weight(k))
                scale = max(abs(sd.gamma(k, root) - 0.0) + abs(theta),
                            sd.majorant(k, root))
                if ev_est > rel_tol * max(scale, 1e-300):
                    raise TruncationError(
                        f"bracket at lambda={root:.6g} (k={k}) cannot reach rel_tol "
                        f"{rel_tol:g} at truncation M={ms.truncation}", module=_MODULE)
            found.append((k, float(root)))
    return sorted(found)


def synthesize_eigenfunction(ms, lam, M=None, filter_order=12):
    """Eigenfunction series sum_m nu_m/(lambda^2_m + lambda) u_m on the grid.

    Coefficients are stored raw; the radial samples are evaluated with a
    smooth spectral cutoff (Vandeven-type filter of order `filter_order`)
    because the raw partial sums carry a boundary singularity and fail to
    converge in C^2 — the filtered sum converges superalgebraically on
    interior windows and reproduces the closed-form profiles of the
    Laplacian case to ~1e-8.
    """
    lam = float(lam)
    if not np.isfinite(lam):
        raise ValidationError(f"lambda must be finite, got {lam!r}", module=_MODULE)
    if M is None:
        M = ms.truncation
    if not 1 <= int(M) <= ms.truncation:
        raise TruncationError(
            f"requested M={M} exceeds the spectrum truncation {ms.truncation}",
            module=_MODULE)
    M = int(M)
    if ms.discretization_meta.get("eigenfunctions_omitted"):
        raise ValidationError("spectrum was serialized without eigenfunction samples",
                              module=_MODULE)
    hit, lam2_near = _near_pole(ms.eigenvalues[:M], lam)
    if hit:
        raise PoleError(f"lambda={lam:g} at the Dirichlet eigenvalue "
                        f"{-lam2_near:.12g}", module=_MODULE)
    coeff = ms.fluxes[:M] / (ms.eigenvalues[:M] + lam)
    x = (np.arange(1, M + 1) - 0.5) / M
    sigma = 1.0 - betainc(filter_order, filter_order, x)
    samples = (sigma * coeff) @ ms.eigenfunctions[:M]
    return SyntheticEigenfunction(
        n=ms.n, eigenvalue=lam, coefficients=coeff, radial_samples=samples,
        grid=ms.grid,
        meta={"truncation": M, "filter": "vandeven", "filter_order": int(filter_order)})
