"""Unitary-matrix-model core: the disk conformal map, model resolvents,
contour extraction of the defining coefficients, eigenvalue density and
potential profiles, the phase-space density, and the renormalized
coefficients on the critical line.

Contour Taylor coefficients are extracted by the trapezoid rule on circles
|z| = r (spectrally accurate for analytic integrands); reductions run in
extended precision with pairwise summation so results are bit-stable and
the r^-n amplification of rounding stays harmless.

The momentum-space marginal of the local phase-space density is constant
(equally spaced Vladimirov levels); its contour form hides an essential
singularity at z = 1, so no operation computes it numerically here --
only the phase-space density itself and its trace check are evaluated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

import numpy as np
from scipy.integrate import quad

from . import zeta as zt
from .padics import padic_norm
from .zeta import NumericConsistencyError

TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# Conformal map between the s-plane and the unit disk
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConformalPoint:
    """A matched triple under z = (s-1)/(s+1); theta only lives on |z| = 1."""

    s: Optional[complex]
    z: complex
    theta: Optional[float] = None
    at_infinity: bool = False


def conformal_map(
    s: Optional[complex] = None,
    z: Optional[complex] = None,
    theta: Optional[float] = None,
) -> ConformalPoint:
    """Complete a ConformalPoint from any one of s, z, or theta.

    z = 1 corresponds to the point at infinity of the s-plane and returns
    an explicit marker; theta in (0, 2pi) parametrises |z| = 1 where
    s = i cot(theta/2).
    """
    given = [v is not None for v in (s, z, theta)]
    if sum(given) != 1:
        raise ValueError("provide exactly one of s, z, theta")
    if theta is not None:
        if not 0.0 < theta < TWO_PI:
            raise ValueError("theta must lie in (0, 2pi)")
        zc = complex(math.cos(theta), math.sin(theta))
        sc = 1j * _cot_half(theta)
        return ConformalPoint(sc, zc, theta)
    if s is not None:
        sc = complex(s)
        zc = (sc - 1.0) / (sc + 1.0)
        th = _theta_of(zc)
        return ConformalPoint(sc, zc, th)
    zc = complex(z)
    if zc == 1.0:
        return ConformalPoint(None, zc, None, at_infinity=True)
    sc = (1.0 + zc) / (1.0 - zc)
    return ConformalPoint(sc, zc, _theta_of(zc))


def _theta_of(zc: complex) -> Optional[float]:
    if abs(abs(zc) - 1.0) > 1e-12 or zc == 1.0:
        return None
    th = math.atan2(zc.imag, zc.real)
    return th if th > 0 else th + TWO_PI


def _cot_half(theta: float) -> float:
    return math.cos(0.5 * theta) / math.sin(0.5 * theta)


# ---------------------------------------------------------------------------
# Resolvent models
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ResolventModel:
    """Tagged analytic family on the unit disk.

    kind: 'local' (Euler factor at prime p), 'gamma' (archimedean factor),
    'shifted' (zeta log-derivative recentred at Re s = s0), 'xi'
    (completed-zeta log series).  branch selects between the |z| < 1 and
    |z| > 1 closed forms; where only the inside form is primitive, the
    outside branch is defined through the reflection property.
    """

    kind: str
    p: Optional[int] = None
    s0: Optional[float] = None
    branch: str = "inside"

    def __post_init__(self):
        if self.kind not in ("local", "gamma", "shifted", "xi"):
            raise ValueError(f"unknown resolvent kind {self.kind!r}")
        if self.kind == "local" and (self.p is None or self.p < 2):
            raise ValueError("local model needs a prime p")
        if self.kind == "shifted" and self.s0 is None:
            raise ValueError("shifted model needs the recentring abscissa s0")
        if self.branch not in ("inside", "outside"):
            raise ValueError("branch must be 'inside' or 'outside'")

    @property
    def label(self) -> str:
        if self.kind == "local":
            return f"LocalZeta({self.p})"
        if self.kind == "gamma":
            return "GammaPlace"
        if self.kind == "shifted":
            return f"ShiftedZeta({self.s0})"
        return "SymmetricXi"


def local_zeta_model(p: int, branch: str = "inside") -> ResolventModel:
    return ResolventModel("local", p=p, branch=branch)


def gamma_place_model(branch: str = "inside") -> ResolventModel:
    return ResolventModel("gamma", branch=branch)


def shifted_zeta_model(s0: float, branch: str = "inside") -> ResolventModel:
    return ResolventModel("shifted", s0=s0, branch=branch)


def symmetric_xi_model(branch: str = "inside") -> ResolventModel:
    return ResolventModel("xi", branch=branch)


def _fluctuation_inside(model: ResolventModel, z: complex) -> complex:
    """R_<(z) - 1 on |z| < 1, in closed form (no numeric differencing)."""
    if model.kind == "local":
        s = (1.0 + z) / (1.0 - z)
        w = np.exp(-s * math.log(model.p))
        return z / (1.0 - z) ** 2 * w / (1.0 - w)
    if model.kind == "gamma":
        s = (1.0 + z) / (1.0 - z)
        return 0.5 * z / (1.0 - z) ** 2 * (zt.digamma(0.5 * s) - zt.LN_PI)
    if model.kind == "shifted":
        s = model.s0 + (1.0 + z) / (2.0 * (1.0 - z))
        val, dval = zt.zeta_and_derivative(s)
        return z / (1.0 - z) ** 2 * (dval / val)
    # xi: generating function of the symmetric-model series; the constant
    # term plays no role in coefficient extraction
    s = 1.0 / (1.0 - z)
    return -zt.log_xi(s) / (2.0 * math.log(2.0))


def resolvent(model: ResolventModel, z: complex) -> complex:
    """Evaluate the model resolvent on its branch.

    |z| = 1 is rejected here: boundary densities are handled by
    density_profile / trace_fluctuation, not by this closed form.
    """
    zc = complex(z)
    az = abs(zc)
    if abs(az - 1.0) < 1e-12:
        raise ValueError("resolvent is not evaluated on the unit circle")
    if model.branch == "inside":
        if az > 1.0:
            raise ValueError("inside branch asked for |z| > 1")
        return 1.0 + _fluctuation_inside(model, zc)
    if az < 1.0:
        raise ValueError("outside branch asked for |z| < 1")
    if model.kind == "local":
        s = (1.0 + zc) / (1.0 - zc)
        w_out = np.exp(s * math.log(model.p))
        return complex(-zc / (1.0 - zc) ** 2 * w_out / (1.0 - w_out))
    if model.kind == "gamma":
        s = (1.0 + zc) / (1.0 - zc)
        return complex(-0.5 * zc / (1.0 - zc) ** 2 * (zt.digamma(-0.5 * s) - zt.LN_PI))
    # shifted/xi: the outside branch is defined by the reflection property
    inside = ResolventModel(model.kind, model.p, model.s0, "inside")
    return 1.0 - resolvent(inside, 1.0 / zc)


# ---------------------------------------------------------------------------
# Contour extraction of Taylor coefficients
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BetaSeries:
    """Model coefficients beta_1..beta_M with quadrature provenance."""

    model: str
    coefficients: np.ndarray  # complex, index 0 holds beta_1
    radius: float
    nodes: int
    radius_error: float
    doubling_error: float
    error_estimates: Optional[np.ndarray] = None
    radius_deltas: Optional[np.ndarray] = None  # per-coefficient |Δbeta_n|

    def __len__(self) -> int:
        return int(self.coefficients.size)

    def beta(self, n: int) -> complex:
        return complex(self.coefficients[n - 1])

    @property
    def real_coefficients(self) -> np.ndarray:
        imag = np.abs(self.coefficients.imag).max() if len(self) else 0.0
        if imag > 1e-9:
            raise NumericConsistencyError(
                f"coefficients of {self.model} carry imaginary parts up to {imag:.3e}"
            )
        return self.coefficients.real.copy()


def _check_nodes(Q: int) -> None:
    if Q < 64 or Q & (Q - 1):
        raise ValueError("node count must be a power of two >= 64")


def _taylor_from_samples(samples: np.ndarray, r: float, M: int) -> np.ndarray:
    """[z^m] for m = 1..M from uniform contour samples, reduced in extended
    precision with pairwise summation (bit-stable, worker-count free)."""
    Q = samples.size
    q = np.arange(Q)
    g = samples.astype(np.clongdouble)
    out = np.empty(M, dtype=complex)
    angles = np.longdouble(TWO_PI) * q / np.longdouble(Q)
    for m in range(1, M + 1):
        phase = np.exp(np.clongdouble(-1j) * np.clongdouble(m) * angles)
        acc = np.sum(g * phase) / Q
        out[m - 1] = complex(acc / np.longdouble(r) ** m)
    return out


def _sample_disk_function(f: Callable[[complex], complex], r: float, Q: int) -> np.ndarray:
    phi = TWO_PI * np.arange(Q) / Q
    return np.array([f(r * np.exp(1j * p)) for p in phi])


def _second_radius(r: float) -> float:
    return r * 1.4 if r <= 0.6 else r * 0.7


def beta_contour(
    model: ResolventModel,
    M: int,
    r: float = 0.5,
    Q: int = 512,
    consistency_tol: Optional[float] = None,
) -> BetaSeries:
    """beta_n = (1/2 pi i) oint dz z^-(n+1) (R_<(z) - 1) by the trapezoid
    rule on |z| = r, with node-doubling and second-radius diagnostics.

    A radius-consistency failure beyond `consistency_tol` raises instead of
    returning a value (analyticity says the coefficients cannot depend on
    r).  The default tolerance sits above the r^-M rounding floor of the
    coefficient extraction, so the guard trips on genuine singularities
    inside the contour, not on binary64 noise.
    """
    if not 0.0 < r < 1.0:
        raise ValueError("radius must lie in (0, 1)")
    _check_nodes(Q)
    if model.kind == "xi":
        # the xi series is a log series; route through the branch-safe
        # unwinding extractor instead of principal logs on the contour
        return beta_symmetric(M, r, Q)
    r2 = _second_radius(r)
    if consistency_tol is None:
        eps = 2.220446049250313e-16
        floor = 3000.0 * eps * max(r**-M, r2**-M) / math.sqrt(Q)
        consistency_tol = max(1e-6, floor)
    f = lambda z: _fluctuation_inside(model, z)
    base = _taylor_from_samples(_sample_disk_function(f, r, Q), r, M)
    dbl = _taylor_from_samples(_sample_disk_function(f, r, 2 * Q), r, M)
    alt = _taylor_from_samples(_sample_disk_function(f, r2, Q), r2, M)
    doubling = float(np.abs(dbl - base).max())
    deltas = np.abs(dbl - alt)
    radius_err = float(deltas.max())
    if radius_err > consistency_tol:
        raise NumericConsistencyError(
            f"{model.label}: beta series moved by {radius_err:.3e} between "
            f"radii {r} and {r2}; not returning a value"
        )
    return BetaSeries(model.label, dbl, r, 2 * Q, radius_err, doubling, radius_deltas=deltas)


# ---------------------------------------------------------------------------
# Local-model closed forms on and off the circle
# ---------------------------------------------------------------------------


def potential_sum_local(p: int, z: complex) -> complex:
    """sum_n beta_n^(p) z^n / n in closed form,
    (1/2 ln p) ln[(1 - p^-s)/(1 - p^-1)] with s = (1+z)/(1-z)."""
    zc = complex(z)
    if abs(zc) >= 1.0:
        raise ValueError("potential sum converges on the open disk only")
    if zc == 0.0:
        return 0.0 + 0.0j
    s = (1.0 + zc) / (1.0 - zc)
    num = 1.0 - np.exp(-s * math.log(p))
    return complex(np.log(num / (1.0 - 1.0 / p)) / (2.0 * math.log(p)))


@dataclass(frozen=True)
class DensityProfile:
    """Spike data and smooth potential derivative of the local model.

    Spikes sit where the conformal image of the local-factor poles meets
    the circle; each carries weight pi/ln p in the cot(theta/2) coordinate.
    """

    p: int
    spike_angles: np.ndarray
    spike_indices: np.ndarray
    spike_weight: float
    theta_grid: np.ndarray
    vprime: np.ndarray


def local_spike_angles(p: int, n_spikes: int) -> tuple[np.ndarray, np.ndarray]:
    """Angles with cot(theta/2) = 2 pi n/ln p for n = -n_spikes..n_spikes.

    n = 0 (theta = pi) is a genuine pole of the local factor at s = 0 and
    is included; positive n land in (0, pi), mirrors in (pi, 2 pi).
    """
    ns = np.arange(-n_spikes, n_spikes + 1)
    angles = 2.0 * np.arctan2(math.log(p), TWO_PI * ns)
    # arctan2 keeps theta in (0, 2pi) going through pi at n = 0
    return angles, ns


def local_potential_derivative(p: int, theta: np.ndarray) -> np.ndarray:
    """V'(theta) = (1/(4 sin^2(theta/2))) cot((ln p/2) cot(theta/2)),
    the symmetric-pair resummation of the conditionally convergent pole sum."""
    th = np.asarray(theta, dtype=float)
    x = 1.0 / np.tan(0.5 * th)
    return 1.0 / (4.0 * np.sin(0.5 * th) ** 2 * np.tan(0.5 * math.log(p) * x))


def local_potential_derivative_partial(p: int, theta: float, n_terms: int) -> float:
    """Symmetric partial sum of the pole expansion (test oracle for the
    closed form): (1/(2 ln p sin^2)) [1/x + sum_n 2x/(x^2 - a^2 n^2)]."""
    x = _cot_half(theta)
    a = TWO_PI / math.log(p)
    n = np.arange(1, n_terms + 1)
    core = 1.0 / x + (2.0 * x / (x * x - (a * n) ** 2)).sum()
    return core / (2.0 * math.log(p) * math.sin(0.5 * theta) ** 2)


def density_profile(p: int, theta_grid: Sequence[float], n_spikes: int) -> DensityProfile:
    """Spike list plus V' samples; grid points within 1e-9 of a spike angle
    or of theta = 0 (the conformal accumulation point) are rejected."""
    grid = np.asarray(theta_grid, dtype=float)
    if grid.size and (grid.min() <= 0.0 or grid.max() >= TWO_PI):
        raise ValueError("theta grid must lie strictly inside (0, 2pi)")
    for th in grid:
        if min(abs(th), abs(TWO_PI - th)) < 1e-9:
            raise ValueError(f"grid point {th} too close to the theta = 0 artefact")
        # nearest spike without enumerating the accumulation near 0/2pi
        n_near = round(_cot_half(th) * math.log(p) / TWO_PI)
        th_near = 2.0 * math.atan2(math.log(p), TWO_PI * n_near)
        if abs(th - th_near) < 1e-9:
            raise ValueError(f"grid point {th} sits on a density spike")
    sel_angles, sel_ns = local_spike_angles(p, n_spikes)
    return DensityProfile(
        p=p,
        spike_angles=sel_angles,
        spike_indices=sel_ns,
        spike_weight=math.pi / math.log(p),
        theta_grid=grid,
        vprime=local_potential_derivative(p, grid),
    )


def ungapped_density(theta: np.ndarray, betas: Sequence[float]) -> np.ndarray:
    """No-gap eigenvalue density (1/2pi)(1 + 2 sum beta_n cos n theta),
    normalised to unit mass on (-pi, pi]."""
    th = np.asarray(theta, dtype=float)
    out = np.ones_like(th)
    for n, b in enumerate(betas, start=1):
        out += 2.0 * float(np.real(b)) * np.cos(n * th)
    return out / TWO_PI


# ---------------------------------------------------------------------------
# Phase-space density and the operator-trace check
# ---------------------------------------------------------------------------


def phase_space_density(p: int, theta: float, h: Union[int, Fraction]) -> complex:
    """Omega^(p)(theta, h) = p [1 - csc^2(theta/2)/(2(p-1)) |h|_p^(i cot(theta/2) - 1)]."""
    if min(abs(theta), abs(TWO_PI - theta)) < 1e-12:
        raise ValueError("theta = 0 and 2pi are singular endpoints")
    hn = padic_norm(h, p)
    if hn == 0:
        raise ValueError("h must be nonzero")
    w = complex(0.0, _cot_half(theta)) - 1.0
    power = np.exp(w * math.log(float(hn)))
    csc2 = 1.0 / math.sin(0.5 * theta) ** 2
    return complex(p * (1.0 - csc2 / (2.0 * (p - 1.0)) * power))


@dataclass(frozen=True)
class TraceFluctuation:
    partial: complex
    closed_form: complex
    tail_bound: float
    terms: int
    pole_proximity: bool


def trace_fluctuation(p: int, theta: float, eps: float, N: int) -> TraceFluctuation:
    """Abel-regularised trace of D^(-i cot(theta/2)) over the restricted
    basis: partial sum and geometric closed form p^-w/(1 - p^-w) with
    w = eps + i cot(theta/2), plus the exact geometric tail bound.

    pole_proximity flags w approaching a local-factor pole (closed form
    denominator nearly vanishing as eps -> 0 on a spike angle).
    """
    if eps <= 0:
        raise ValueError("Abel parameter eps must be positive")
    w = complex(eps, _cot_half(theta))
    lnp = math.log(p)
    n = np.arange(1, N + 1)
    partial = complex(np.exp(-w * lnp * n).sum())
    q = np.exp(-w * lnp)
    den = 1.0 - q
    closed = complex(q / den)
    tail = float(p ** (-(N + 1) * eps) / (1.0 - p ** (-eps)))
    # the geometric bound is exactly tight on spike angles; cover the
    # rounding of an N-term partial sum so the reported bound stays honest
    tail += 8.0 * 2.220446049250313e-16 * N * max(1.0, abs(partial))
    # on a spike angle the denominator is pinned at the Abel regulator
    # 1 - p^-eps and blows up as eps -> 0: flag that regime explicitly
    near_pole = abs(den) <= 2.0 * (1.0 - p ** (-eps)) + 1e-14
    return TraceFluctuation(partial, closed, tail, N, bool(near_pole))


# ---------------------------------------------------------------------------
# Renormalized coefficients (critical-line data)
# ---------------------------------------------------------------------------


def _unwound_log_samples(values: np.ndarray) -> np.ndarray:
    """log f along a closed contour with continuous argument; a nonzero
    total winding means zeros/poles inside and is surfaced as an error."""
    mag = np.log(np.abs(values))
    ang = np.unwrap(np.angle(values))
    closing = np.angle(values[0] / values[-1])
    total = ang[-1] + closing - ang[0]
    if abs(total) > math.pi:
        raise NumericConsistencyError(
            f"contour log winds by {total / TWO_PI:.2f} turns: "
            "the function has zeros or poles inside the contour"
        )
    return mag + 1j * ang


def _log_coefficients(
    f: Callable[[complex], complex], M: int, r: float, Q: int
) -> np.ndarray:
    """[z^m] log f(z) for m = 1..M with branch-safe unwinding."""
    samples = _sample_disk_function(f, r, Q)
    return _taylor_from_samples(_unwound_log_samples(samples), r, M)


def xi_log_coefficients(M: int, r: float = 0.5, Q: int = 1024) -> np.ndarray:
    """Xi_m = [z^m] ln xi(1/(1-z))."""
    _check_nodes(Q)
    return _log_coefficients(lambda z: zt.xi(1.0 / (1.0 - z)), M, r, Q)


def gamma_log_coefficients(M: int, r: float = 0.5, Q: int = 1024) -> np.ndarray:
    """R_m = [z^m] ln zeta_R(1/(1-z)) (archimedean log series)."""
    _check_nodes(Q)
    phi = TWO_PI * np.arange(Q) / Q
    zs = r * np.exp(1j * phi)
    vals = np.array([zt.log_zeta_real_place(1.0 / (1.0 - z)) for z in zs])
    # loggamma is already branch-continuous on the right half-plane image
    return _taylor_from_samples(vals, r, M)


def zeta_log_coefficients(M: int, r: float = 0.5, Q: int = 1024) -> np.ndarray:
    """G_m = [z^m] ln[z zeta(1/(1-z))]: the pole of zeta at s = 1 makes the
    literal ln zeta multivalued on the contour, but z*zeta(1/(1-z)) is
    analytic and 1 at z = 0, so its log series is the regularised object."""
    _check_nodes(Q)

    def f(z: complex) -> complex:
        s = 1.0 / (1.0 - z)
        return z * zt.zeta(s) if abs(s - 1.0) > 1e-12 else 1.0

    return _log_coefficients(f, M, r, Q)


def beta_symmetric(M: int, r: float = 0.5, Q: int = 1024) -> BetaSeries:
    """beta_m^sym = -(1/(2 ln 2)) [z^m] ln xi(1/(1-z))."""
    if not 0.0 < r <= 0.9:
        raise ValueError("radius must lie in (0, 0.9]")
    base = -xi_log_coefficients(M, r, Q) / (2.0 * math.log(2.0))
    r2 = _second_radius(r)
    alt = -xi_log_coefficients(M, r2, Q) / (2.0 * math.log(2.0))
    deltas = np.abs(base - alt)
    return BetaSeries("SymmetricXi", base, r, Q, float(deltas.max()), 0.0, radius_deltas=deltas)


def beta_gamma(M: int, r: float = 0.5, Q: int = 512) -> BetaSeries:
    """Coefficients of the archimedean (gamma-place) model by contour
    quadrature with the analytic digamma derivative."""
    return beta_contour(gamma_place_model(), M, r, Q)


def beta_renormalized_shifted(M: int, mu: float, r: float = 0.5, Q: int = 1024) -> BetaSeries:
    """beta_m^ren = oint dz/(2 pi i z^m (1-z)^2) [d ln zeta/ds] at
    s = mu + (1+z)/(2(1-z)); requires mu > 1 so the disk image stays in
    the zero-free right half-plane."""
    if mu <= 1.0:
        raise ValueError("shifted contour needs mu > 1")
    return beta_contour(shifted_zeta_model(mu), M, r, Q)


def _laguerre_alpha1_table(M: int, x: np.ndarray) -> np.ndarray:
    """L^(1)_m(x) for m = 0..M-1, stacked; three-term recurrence."""
    out = np.empty((M, x.size))
    out[0] = 1.0
    if M > 1:
        out[1] = 2.0 - x
    for m in range(2, M):
        out[m] = ((2.0 * m - x) * out[m - 1] - m * out[m - 2]) / m
    return out


def beta_renormalized_prime_sum(
    M: int,
    mu: float,
    P_max: int = 10**6,
    N_max: int = 60,
    primes: Optional[zt.PrimeTable] = None,
    tail_correction: bool = True,
) -> BetaSeries:
    """Renormalized coefficients from explicit prime-power data.

    The line integral (1/4pi) int dx ((ix+1)/(ix-1))^m p^(-n(mu+ix/2)) is
    carried out in closed form per prime power (residue at x = -i):

        beta_m = - sum_p ln p sum_n p^(-n(mu+1/2)) L^(1)_(m-1)(n ln p),

    then the prime tail beyond P_max is completed by the smooth
    prime-density integral (terms fall off too slowly for raw truncation
    to reach 1e-6 at feasible sieve sizes).
    """
    if mu <= 1.0:
        raise ValueError(
            "prime_sum needs mu > 1: the double sum over primes and powers "
            "converges absolutely only for sigma <= mu with sigma = 1"
        )
    if M < 1:
        raise ValueError("M must be >= 1")
    if primes is None:
        primes = zt.PrimeTable.build(P_max)
    p_arr = primes.primes[primes.primes <= P_max].astype(float)
    logp_all = np.log(p_arr)
    coeffs = np.zeros(M)
    sigma = mu + 0.5
    for n in range(1, N_max + 1):
        # powers of large primes are invisible at working precision
        cut = math.exp(min(48.0 / (n * sigma), math.log(P_max) + 1.0))
        logp = logp_all[p_arr <= cut]
        if logp.size == 0:
            break
        damp = np.exp(-n * sigma * logp)
        lag = _laguerre_alpha1_table(M, n * logp)
        term = (logp * damp * lag).sum(axis=1)
        coeffs -= term
        if np.abs(logp * damp).max() * np.abs(lag).max() < 1e-18:
            break
    tails = np.zeros(M)
    if tail_correction:
        for m in range(1, M + 1):
            tails[m - 1] = _prime_tail_integral(m, mu, float(P_max))
        coeffs += tails
    err = np.abs(tails) * 0.02 + 1e-12
    return BetaSeries(
        f"Renormalized(mu={mu}, prime_sum)",
        coeffs.astype(complex),
        float("nan"),
        0,
        0.0,
        0.0,
        error_estimates=err,
    )


def _prime_tail_integral(m: int, mu: float, P: float) -> float:
    """- int_P^inf t^-(mu+1/2) L^(1)_(m-1)(ln t) dt via u = ln t."""
    a = mu - 0.5

    def integrand(u: float) -> float:
        return -math.exp(-a * u) * _laguerre_alpha1_scalar(m - 1, u)

    u0 = math.log(P)
    u_mid = max(u0 + 1.0, 4.0 * m + 10.0)
    val1, _ = quad(integrand, u0, u_mid, limit=400)
    val2, _ = quad(integrand, u_mid, u_mid + 120.0, limit=400)
    return val1 + val2


def _laguerre_alpha1_scalar(n: int, x: float) -> float:
    if n == 0:
        return 1.0
    prev, cur = 1.0, 2.0 - x
    for k in range(2, n + 1):
        prev, cur = cur, ((2.0 * k - x) * cur - k * prev) / k
    return cur


def beta_renormalized_xi_decomposition(M: int, r: float = 0.5, Q: int = 1024) -> BetaSeries:
    """The mu = 1/2 coefficients G_m = [z^m] ln[z zeta(1/(1-z))], the unique
    regularisation making the symmetric-model comparison an identity:
    Xi_m = 2/m + R_m + G_m."""
    base = zeta_log_coefficients(M, r, Q)
    r2 = _second_radius(r)
    alt = zeta_log_coefficients(M, r2, Q)
    deltas = np.abs(base - alt)
    return BetaSeries(
        "Renormalized(mu=0.5, xi_decomposition)",
        base, r, Q, float(deltas.max()), 0.0, radius_deltas=deltas,
    )


def beta_renormalized(
    M: int,
    mu: float,
    method: str,
    *,
    P_max: int = 10**6,
    N_max: int = 60,
    r: float = 0.5,
    Q: int = 1024,
    primes: Optional[zt.PrimeTable] = None,
) -> BetaSeries:
    """Dispatch over the three renormalization routes."""
    if method == "prime_sum":
        return beta_renormalized_prime_sum(M, mu, P_max, N_max, primes)
    if method == "shifted_contour":
        return beta_renormalized_shifted(M, mu, r, Q)
    if method == "xi_decomposition":
        if abs(mu - 0.5) > 1e-12:
            raise ValueError("xi_decomposition is the mu = 1/2 route")
        return beta_renormalized_xi_decomposition(M, r, Q)
    raise ValueError(f"unknown method {method!r}")


def cross_validate_renormalized(
    M: int,
    mu: float,
    tolerance: float = 1e-6,
    *,
    P_max: int = 10**6,
    N_max: int = 60,
    r: float = 0.5,
    Q: int = 1024,
    primes: Optional[zt.PrimeTable] = None,
) -> BetaSeries:
    """Run the prime-data and contour routes and surface (never average
    away) any disagreement beyond their combined tolerance."""
    ps = beta_renormalized_prime_sum(M, mu, P_max, N_max, primes)
    sh = beta_renormalized_shifted(M, mu, r, Q)
    gap = np.abs(ps.coefficients - sh.coefficients)
    combined = tolerance + sh.radius_error
    if ps.error_estimates is not None:
        combined = combined + ps.error_estimates
    bad = np.nonzero(gap > combined)[0]
    if bad.size:
        m = int(bad[0]) + 1
        raise NumericConsistencyError(
            f"beta_{m}^ren: prime_sum {ps.coefficients[m-1].real:.9g} vs "
            f"shifted_contour {sh.coefficients[m-1].real:.9g} differ by "
            f"{gap[m-1]:.3g}"
        )
    return sh


# ---------------------------------------------------------------------------
# Boundary relation
# ---------------------------------------------------------------------------


def boundary_h(
    theta: float,
    betas: Union[BetaSeries, Sequence[float]],
    f_even: Optional[Callable[[float], float]] = None,
) -> float:
    """h(theta) = 1/2 + sum_n beta_n cos(n theta) + f_even(theta); the even
    term is the phase-boundary redundancy and defaults to zero."""
    coeffs = betas.coefficients if isinstance(betas, BetaSeries) else np.asarray(betas)
    acc = 0.5
    for n, b in enumerate(coeffs, start=1):
        acc += float(np.real(b)) * math.cos(n * theta)
    if f_even is not None:
        acc += f_even(theta)
    return acc
