"""Complex zeta machinery: zeta/xi evaluation, local Euler factors, prime
counting functions and their zero expansions, Li coefficients, prime sieve,
and zero-table ingestion.

zeta is evaluated by Euler-Maclaurin with N = max(20, ceil|Im s|+20) direct
terms and 12 Bernoulli corrections; the reflection identity covers
Re(s) < 0.  Gamma, loggamma and digamma come from scipy.special.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
from scipy.integrate import quad
from scipy.special import digamma as _digamma
from scipy.special import exp1 as _exp1
from scipy.special import expi as _expi
from scipy.special import loggamma as _loggamma

LN_PI = math.log(math.pi)
LN_2PI = math.log(2.0 * math.pi)


class ZetaPole(ArithmeticError):
    """Evaluation exactly at the simple pole s = 1."""


class LocalZetaPole(ArithmeticError):
    """Evaluation at (or within 1e-12 of) a pole of 1/(1 - p^-s)."""

    def __init__(self, p: int, index: int, distance: float):
        self.p = p
        self.index = index
        self.distance = distance
        super().__init__(
            f"zeta_{p} pole #{index} at s = 2*pi*i*{index}/ln({p}) "
            f"(|1 - p^-s| = {distance:.3e})"
        )


class NumericConsistencyError(ArithmeticError):
    """Two independent evaluation routes disagree beyond combined tolerance."""


def loggamma(z) -> complex:
    return complex(_loggamma(complex(z)))


def digamma(z) -> complex:
    return complex(_digamma(complex(z)))


# ---------------------------------------------------------------------------
# Bernoulli numbers (exact, computed once)
# ---------------------------------------------------------------------------


def _bernoulli_upto(m: int) -> list[Fraction]:
    """B_0..B_m by the defining recurrence, exact."""
    out = [Fraction(1)]
    for n in range(1, m + 1):
        acc = Fraction(0)
        for k in range(n):
            acc += Fraction(math.comb(n + 1, k)) * out[k]
        out.append(-acc / (n + 1))
    return out


_BERNOULLI = _bernoulli_upto(30)
# B_{2k} / (2k)! as binary64, k = 1..15
_B2K_OVER_FACT = [float(_BERNOULLI[2 * k] / math.factorial(2 * k)) for k in range(16)]


# ---------------------------------------------------------------------------
# Euler-Maclaurin zeta
# ---------------------------------------------------------------------------


def _em_terms(s: complex, n_terms: Optional[int], order: int):
    if n_terms is None:
        n_terms = max(20, int(math.ceil(abs(s.imag))) + 20)
    if order is None:
        order = 12
    if not 1 <= order <= 15:
        raise ValueError("bernoulli_order must be in 1..15")
    if n_terms < 2:
        raise ValueError("need at least 2 direct terms")
    return n_terms, order


def _em_core(s: complex, N: int, M: int) -> tuple[complex, complex, float]:
    """Euler-Maclaurin pieces: returns (zeta(s) - N^(1-s)/(s-1), N^(1-s),
    error_estimate).  Splitting out the pole term lets (s-1)*zeta(s) be
    assembled without cancellation at s = 1.  The error estimate is the
    first omitted Bernoulli term plus the rounding floor of the direct sum."""
    n = np.arange(1, N)
    terms = np.exp(-s * np.log(n))
    direct = terms.sum()
    n_pow = N ** (-s)
    value = direct + 0.5 * n_pow
    # sum_k B_2k/(2k)! * (s)(s+1)...(s+2k-2) * N^(-s-2k+1)
    rising = s  # (s)(s+1)...(s+2k-2), starts at k=1 with just s
    scale = n_pow * N
    for k in range(1, M + 1):
        scale = scale / (N * N)
        value += _B2K_OVER_FACT[k] * rising * scale
        rising = rising * (s + 2 * k - 1) * (s + 2 * k)
    err = abs(_B2K_OVER_FACT[M + 1] * rising * scale / (N * N))
    err += 4.0 * 2.220446049250313e-16 * float(np.abs(terms).sum())
    return value, N ** (1.0 - s), err


@dataclass(frozen=True)
class EulerMaclaurinValue:
    value: complex
    error_estimate: float


def zeta_em(s: complex, terms: Optional[int] = None, bernoulli_order: int = 12) -> EulerMaclaurinValue:
    """Euler-Maclaurin zeta with its first-omitted-term error estimate.

    Valid for Re(s) >= 0 away from s = 1 (the public `zeta` adds the
    reflection branch for Re(s) < 0).
    """
    s = complex(s)
    if abs(s - 1.0) < 1e-12:
        raise ZetaPole("zeta has a simple pole at s = 1")
    N, M = _em_terms(s, terms, bernoulli_order)
    core, pole_term, err = _em_core(s, N, M)
    return EulerMaclaurinValue(core + pole_term / (s - 1.0), err)


def zeta(s: complex, terms: Optional[int] = None, bernoulli_order: int = 12) -> complex:
    """Riemann zeta on C \\ {1}.  Re(s) >= 0 by Euler-Maclaurin, Re(s) < 0
    through the reflection identity
    zeta(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s) zeta(1-s)."""
    s = complex(s)
    if abs(s - 1.0) < 1e-12:
        raise ZetaPole("zeta has a simple pole at s = 1")
    if s.real >= 0.0:
        return zeta_em(s, terms, bernoulli_order).value
    w = 1.0 - s  # Re(w) > 1
    pref = (2.0**s) * math.pi ** (s - 1.0) * np.sin(0.5 * math.pi * s)
    pref *= np.exp(_loggamma(w))
    return complex(pref * zeta_em(w, terms, bernoulli_order).value)


def zeta_unit(s: complex, terms: Optional[int] = None, bernoulli_order: int = 12) -> complex:
    """(s-1) * zeta(s) evaluated as a single analytic unit (value 1 at s=1)."""
    s = complex(s)
    if s.real >= 0.0:
        N, M = _em_terms(s, terms, bernoulli_order)
        core, pole_term, _ = _em_core(s, N, M)
        return (s - 1.0) * core + pole_term
    w = 1.0 - s
    # (s-1) zeta(s) = (s-1) * pref(s) * zeta(w); zeta(w) regular, no care needed
    pref = (2.0**s) * math.pi ** (s - 1.0) * np.sin(0.5 * math.pi * s)
    pref *= np.exp(_loggamma(w))
    return complex((s - 1.0) * pref * zeta_em(w, terms, bernoulli_order).value)


def zeta_and_derivative(
    s: complex, terms: Optional[int] = None, bernoulli_order: int = 12
) -> tuple[complex, complex]:
    """(zeta(s), zeta'(s)) by term-wise differentiated Euler-Maclaurin.

    Re(s) > 0 only (that is the regime the contour extractions use).
    """
    s = complex(s)
    if s.real <= 0.0:
        raise ValueError("zeta_and_derivative implemented for Re(s) > 0 only")
    if abs(s - 1.0) < 1e-12:
        raise ZetaPole("zeta has a simple pole at s = 1")
    N, M = _em_terms(s, terms, bernoulli_order)
    n = np.arange(1, N)
    ln_n = np.log(n)
    pw = np.exp(-s * ln_n)
    val = pw.sum()
    dval = -(ln_n * pw).sum()
    lnN = math.log(N)
    n_pow = N ** (-s)  # e^{-s ln N}
    val += 0.5 * n_pow
    dval += -0.5 * lnN * n_pow
    pole = N * n_pow / (s - 1.0)
    val += pole
    dval += -lnN * pole - N * n_pow / (s - 1.0) ** 2
    rising = s
    d_rising = 1.0 + 0.0j
    scale = n_pow * N
    for k in range(1, M + 1):
        scale = scale / (N * N)
        c = _B2K_OVER_FACT[k]
        val += c * rising * scale
        dval += c * (d_rising - rising * lnN) * scale
        # d/ds of the rising product via the product rule
        d_rising = (
            d_rising * (s + 2 * k - 1) * (s + 2 * k)
            + rising * (s + 2 * k)
            + rising * (s + 2 * k - 1)
        )
        rising = rising * (s + 2 * k - 1) * (s + 2 * k)
    return complex(val), complex(dval)


# ---------------------------------------------------------------------------
# Completed zeta and Euler factors
# ---------------------------------------------------------------------------


def zeta_real_place(s: complex) -> complex:
    """Archimedean factor pi^(-s/2) Gamma(s/2), i.e. the Mellin transform of
    the Gaussian; poles at s = 0, -2, -4, ..."""
    s = complex(s)
    half = 0.5 * s
    if abs(half - round(half.real)) < 1e-12 and round(half.real) <= 0 and abs(half.imag) < 1e-12:
        raise ZetaPole(f"Gamma(s/2) pole at s = {s}")
    return complex(np.exp(_loggamma(half) - half * LN_PI))


def log_zeta_real_place(s: complex) -> complex:
    """log of the archimedean factor, analytic for Re(s) > 0."""
    half = 0.5 * complex(s)
    return complex(_loggamma(half) - half * LN_PI)


def zeta_local(p: int, s: complex) -> complex:
    """Local Euler factor 1/(1 - p^-s); simple poles at s = 2 pi i n / ln p."""
    if p < 2:
        raise ValueError("p must be a prime >= 2")
    s = complex(s)
    den = 1.0 - np.exp(-s * math.log(p))
    if abs(den) < 1e-12:
        index = int(round(s.imag * math.log(p) / (2.0 * math.pi)))
        raise LocalZetaPole(p, index, abs(den))
    return complex(1.0 / den)


def zeta_place(kind, s: complex) -> complex:
    """Dispatch: kind is a prime p (local factor) or the string 'real'."""
    if kind == "real":
        return zeta_real_place(s)
    return zeta_local(int(kind), s)


def local_pole_spacing(p: int) -> float:
    """Vertical spacing 2 pi / ln p of the local-factor poles."""
    return 2.0 * math.pi / math.log(p)


def xi(s: complex) -> complex:
    """Completed zeta xi(s) = (1/2) s (s-1) pi^(-s/2) Gamma(s/2) zeta(s),
    entire and symmetric under s -> 1-s.

    Written as pi^(-s/2) Gamma(s/2+1) * [(s-1) zeta(s)] so the zeta pole is
    cancelled analytically rather than numerically.
    """
    s = complex(s)
    pref = np.exp(_loggamma(0.5 * s + 1.0) - 0.5 * s * LN_PI)
    return complex(pref * zeta_unit(s))


def log_xi(s: complex) -> complex:
    """Principal-log decomposition ln(1/2) + ln s + ln((s-1)zeta(s))
    + ln(pi^(-s/2)Gamma(s/2)); every factor is nonvanishing on the domains
    the contour extractions use, so no branch tracking is required."""
    s = complex(s)
    return complex(
        math.log(0.5)
        + np.log(s)
        + np.log(zeta_unit(s))
        + (_loggamma(0.5 * s) - 0.5 * s * LN_PI)
    )


# ---------------------------------------------------------------------------
# Primes
# ---------------------------------------------------------------------------


def sieve_primes(limit: int) -> np.ndarray:
    """Primes <= limit by Eratosthenes on a numpy byte mask."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, int(math.isqrt(limit)) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.nonzero(mask)[0].astype(np.int64)


@dataclass(frozen=True)
class PrimeTable:
    """Primes and prime powers up to `limit`, with von Mangoldt weights."""

    limit: int
    primes: np.ndarray
    # parallel arrays over prime powers p^k <= limit, ascending by value
    power_values: np.ndarray
    power_primes: np.ndarray
    power_exponents: np.ndarray
    power_weights: np.ndarray  # ln p for each power

    @classmethod
    def build(cls, limit: int) -> "PrimeTable":
        primes = sieve_primes(limit)
        vals, prs, exps, wts = [], [], [], []
        for p in primes.tolist():
            pk, k = p, 1
            while pk <= limit:
                vals.append(pk)
                prs.append(p)
                exps.append(k)
                wts.append(math.log(p))
                pk *= p
                k += 1
        order = np.argsort(np.asarray(vals))
        return cls(
            limit=limit,
            primes=primes,
            power_values=np.asarray(vals, dtype=np.int64)[order],
            power_primes=np.asarray(prs, dtype=np.int64)[order],
            power_exponents=np.asarray(exps, dtype=np.int64)[order],
            power_weights=np.asarray(wts, dtype=float)[order],
        )


# ---------------------------------------------------------------------------
# Counting functions
# ---------------------------------------------------------------------------


def _is_exact_prime_power(x: float) -> Optional[tuple[int, int]]:
    n = round(x)
    if abs(x - n) > 1e-9 or n < 2:
        return None
    for k in range(1, n.bit_length() + 1):
        p = round(n ** (1.0 / k))
        for cand in (p - 1, p, p + 1):
            if cand >= 2 and cand**k == n:
                from .padics import is_prime

                if is_prime(cand):
                    return cand, k
    return None


def chebyshev_psi_direct(x: float, primes: Optional[PrimeTable] = None) -> float:
    """psi(x) = sum of ln p over prime powers p^n <= x, midpoint at jumps."""
    if x <= 1.0:
        return 0.0
    if primes is None or primes.limit < x:
        primes = PrimeTable.build(int(x) + 1)
    sel = primes.power_values <= x + 1e-9
    total = primes.power_weights[sel].sum()
    hit = _is_exact_prime_power(x)
    if hit is not None:
        total -= 0.5 * math.log(hit[0])
    return float(total)


def prime_count_j_direct(x: float, primes: Optional[PrimeTable] = None) -> float:
    """J(x) = sum over prime powers p^n <= x of 1/n, midpoint at jumps."""
    if x <= 1.0:
        return 0.0
    if primes is None or primes.limit < x:
        primes = PrimeTable.build(int(x) + 1)
    sel = primes.power_values <= x + 1e-9
    total = (1.0 / primes.power_exponents[sel]).sum()
    hit = _is_exact_prime_power(x)
    if hit is not None:
        total -= 0.5 / hit[1]
    return float(total)


def local_count_direct(p: int, x: float) -> float:
    """j_p(x) = #{n >= 1 : p^n <= x}, midpoint at jumps."""
    if x <= 1.0:
        return 0.0
    count, pk = 0, p
    while pk <= x + 1e-9:
        count += 1
        pk *= p
    hit = _is_exact_prime_power(x)
    if hit is not None and hit[0] == p:
        return count - 0.5
    return float(count)


def chebyshev_psi_explicit(x: float, zeros: Sequence[float], n_zeros: int) -> float:
    """Explicit formula psi0(x) = x - sum_rho x^rho/rho - ln 2pi
    - (1/2) ln(1 - x^-2), zeros conjugate-paired for a real result."""
    if n_zeros < 1:
        raise ValueError("explicit mode needs at least one zero")
    if x <= 1.0:
        raise ValueError("explicit formula requires x > 1")
    t = np.asarray(zeros, dtype=float)[:n_zeros]
    rho = 0.5 + 1j * t
    lnx = math.log(x)
    osc = 2.0 * (np.exp(rho * lnx) / rho).real.sum()
    return float(x - osc - LN_2PI - 0.5 * math.log1p(-(x**-2.0)))


def explicit_tail_estimate(x: float, last_t: float) -> float:
    """Crude magnitude scale 2 sqrt(x)/|rho| of the first omitted zero term."""
    return 2.0 * math.sqrt(x) / abs(0.5 + 1j * last_t)


def _expi_complex(w: complex) -> complex:
    """Exponential integral Ei continued off the real axis,
    Ei(w) = -E1(-w) -/+ i pi for Im(w) >< 0."""
    if w.imag == 0.0:
        return complex(_expi(w.real))
    corr = 1j * math.pi if w.imag > 0 else -1j * math.pi
    return complex(-_exp1(-w) + corr)


def logarithmic_integral(x: float) -> float:
    """Li(x) = PV int_0^x dt/ln t = Ei(ln x)."""
    if x <= 0 or x == 1.0:
        raise ValueError("Li defined for x > 0, x != 1")
    return float(_expi(math.log(x)))


def prime_count_j_explicit(x: float, zeros: Sequence[float], n_zeros: int) -> float:
    """J(x) = Li(x) - sum_rho Li(x^rho) - ln 2 + int_x^inf dt/(t(t^2-1)),
    zeros conjugate-paired; the last integral is (1/2) ln(x^2/(x^2-1))."""
    if n_zeros < 1:
        raise ValueError("explicit mode needs at least one zero")
    if x <= 1.0:
        raise ValueError("explicit formula requires x > 1")
    lnx = math.log(x)
    t = np.asarray(zeros, dtype=float)[:n_zeros]
    osc = 0.0
    for tm in t:
        osc += 2.0 * _expi_complex((0.5 + 1j * tm) * lnx).real
    tail_int = 0.5 * math.log(x * x / (x * x - 1.0))
    return float(logarithmic_integral(x) - osc - math.log(2.0) + tail_int)


def local_count_explicit(p: int, x: float, n_terms: int) -> float:
    """Pole expansion of j_p: ln x/ln p - 1/2 + (1/pi) sum_k sin(2 pi k
    log_p x)/k, the Fourier form of the sawtooth over the local-factor poles
    (midpoint values at jumps by construction)."""
    if n_terms < 1:
        raise ValueError("explicit mode needs at least one oscillating term")
    if x <= 1.0:
        raise ValueError("explicit formula requires x > 1")
    u = math.log(x) / math.log(p)
    k = np.arange(1, n_terms + 1)
    return float(u - 0.5 + (np.sin(2.0 * math.pi * k * u) / k).sum() / math.pi)


def counting(
    kind: str,
    x: float,
    mode: str = "direct",
    *,
    p: Optional[int] = None,
    zeros: Optional[Sequence[float]] = None,
    n_zeros: Optional[int] = None,
    primes: Optional[PrimeTable] = None,
    n_terms: int = 1000,
) -> float:
    """Dispatcher over the counting-function family.

    kind in {'J', 'psi', 'j_local'}; mode in {'direct', 'explicit'}.
    """
    if x <= 1.0:
        raise ValueError("counting functions are evaluated for x > 1")
    if kind == "psi":
        if mode == "direct":
            return chebyshev_psi_direct(x, primes)
        if zeros is None or n_zeros is None or n_zeros == 0:
            raise ValueError("explicit mode requires zeros and n_zeros > 0")
        return chebyshev_psi_explicit(x, zeros, n_zeros)
    if kind == "J":
        if mode == "direct":
            return prime_count_j_direct(x, primes)
        if zeros is None or n_zeros is None or n_zeros == 0:
            raise ValueError("explicit mode requires zeros and n_zeros > 0")
        return prime_count_j_explicit(x, zeros, n_zeros)
    if kind == "j_local":
        if p is None:
            raise ValueError("j_local requires the prime p")
        if mode == "direct":
            return local_count_direct(p, x)
        return local_count_explicit(p, x, n_terms)
    raise ValueError(f"unknown counting kind {kind!r}")


# ---------------------------------------------------------------------------
# Li (Keiper-Li) coefficients
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LiCoefficients:
    values: np.ndarray  # lambda_1..lambda_n
    method: str
    error_estimate: np.ndarray


def li_coefficients_cauchy(n_max: int, radius: float = 0.25, nodes: int = 512) -> LiCoefficients:
    """lambda_n = n [w^n] { (1+w)^(n-1) ln xi(1+w) } by trapezoid quadrature
    on |w| = radius about s = 1 (spectrally accurate; ln xi analytic there).

    radius must stay below 1/2 so the circle avoids s = 0 and the zeros.
    """
    if not 0.0 < radius < 0.5:
        raise ValueError("radius must lie in (0, 1/2)")
    if nodes < 4 * n_max:
        raise ValueError("nodes must comfortably oversample n_max")
    lam = _li_cauchy_values(n_max, radius, nodes)
    lam2 = _li_cauchy_values(n_max, radius, 2 * nodes)
    err = np.abs(lam2 - lam)
    return LiCoefficients(lam2, "cauchy_derivative", err)


def _li_cauchy_values(n_max: int, radius: float, nodes: int) -> np.ndarray:
    phi = 2.0 * math.pi * np.arange(nodes) / nodes
    w = radius * np.exp(1j * phi)
    lnxi = np.array([log_xi(1.0 + wq) for wq in w])
    lam = np.empty(n_max)
    for n in range(1, n_max + 1):
        g = (1.0 + w) ** (n - 1) * lnxi
        cn = (g * np.exp(-1j * n * phi)).mean() / radius**n
        lam[n - 1] = n * cn.real
    return lam


def li_coefficients_zero_sum(
    n_max: int,
    zeros: Sequence[float],
    n_zeros: Optional[int] = None,
    tail_correction: bool = True,
) -> LiCoefficients:
    """lambda_n = sum_m [1 - (1 - 1/rho_m)^n] with rho_m = 1/2 + i t_m,
    conjugate-paired: each pair contributes 2(1 - cos(n phi(t))) with
    phi(t) = pi - 2 arctan(2t).

    The truncated sum is completed by the smooth-density tail integral
    int_T^inf 2(1-cos(n phi(t))) dN(t), dN = ln(t/2pi)/2pi dt; without it
    the truncation error ~ n^2 ln T/(2 pi T) swamps small-n values.
    """
    t = np.asarray(zeros, dtype=float)
    if n_zeros is not None:
        t = t[:n_zeros]
    if t.size == 0:
        raise ValueError("zero_sum needs a nonempty zero table")
    phi = math.pi - 2.0 * np.arctan(2.0 * t)
    lam = np.empty(n_max)
    err = np.empty(n_max)
    T = float(t[-1])
    for n in range(1, n_max + 1):
        lam[n - 1] = (2.0 * (1.0 - np.cos(n * phi))).sum()
        tail = _li_tail_integral(n, T)
        if tail_correction:
            lam[n - 1] += tail
            # residual after smoothing is zero-fluctuation noise, well under
            # the smoothed tail itself; report a 5% slice of it as the scale
            err[n - 1] = 0.05 * tail + 1e-12
        else:
            err[n - 1] = tail
    return LiCoefficients(lam, "zero_sum", err)


def _li_tail_integral(n: int, T: float, U: float = 1e9) -> float:
    def integrand(u):  # u = ln t substitution keeps quad comfortable
        t = math.exp(u)
        ph = math.pi - 2.0 * math.atan(2.0 * t)
        return 2.0 * (1.0 - math.cos(n * ph)) * (u - LN_2PI) / (2.0 * math.pi) * t

    val, _ = quad(integrand, math.log(T), math.log(U), limit=200)
    # beyond U the integrand is ~ n^2/t^2 * ln(t/2pi)/2pi
    remainder = n * n * (math.log(U / (2 * math.pi)) + 1.0) / (2.0 * math.pi * U)
    return val + remainder


def li_coefficients(
    n_max: int,
    method: str = "cauchy_derivative",
    *,
    radius: float = 0.25,
    nodes: int = 512,
    zeros: Optional[Sequence[float]] = None,
    n_zeros: Optional[int] = None,
) -> LiCoefficients:
    if method == "cauchy_derivative":
        return li_coefficients_cauchy(n_max, radius, max(nodes, 4 * n_max))
    if method == "zero_sum":
        if zeros is None:
            raise ValueError("zero_sum requires an ingested zero table")
        return li_coefficients_zero_sum(n_max, zeros, n_zeros)
    raise ValueError(f"unknown method {method!r}")


def cross_validate_li(
    n_max: int,
    zeros: Sequence[float],
    n_zeros: Optional[int] = None,
    tolerance: float = 1e-3,
) -> LiCoefficients:
    """Run both routes; surface (never average away) any disagreement."""
    a = li_coefficients_cauchy(n_max)
    b = li_coefficients_zero_sum(n_max, zeros, n_zeros)
    gap = np.abs(a.values - b.values)
    combined = a.error_estimate + b.error_estimate + tolerance
    bad = np.nonzero(gap > combined)[0]
    if bad.size:
        n = int(bad[0]) + 1
        raise NumericConsistencyError(
            f"lambda_{n}: cauchy {a.values[n-1]:.9g} vs zero_sum "
            f"{b.values[n-1]:.9g} differ by {gap[n-1]:.3g} "
            f"(> combined tolerance {combined[n-1]:.3g})"
        )
    return a


# ---------------------------------------------------------------------------
# Zero-table ingestion
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ZeroTable:
    """Validated ordinates of nontrivial zeros, ascending."""

    ts: np.ndarray
    residuals: np.ndarray
    source: str
    validation_tol: float
    excluded: tuple[tuple[float, float], ...] = ()

    def __len__(self) -> int:
        return int(self.ts.size)

    def __getitem__(self, idx):
        return self.ts[idx]


def ingest_zeros(path: str, validation_tol: float = 1e-6, max_zeros: Optional[int] = None) -> ZeroTable:
    """Load a zero table (one ascending positive decimal per line, '#'
    comments) and validate each ordinate with this package's own xi.

    Zeros whose |xi(1/2 + i t)| exceed validation_tol are excluded and
    reported; parse errors and ordering violations carry line numbers.
    """
    ts: list[float] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                t = float(line)
            except ValueError:
                raise ValueError(f"{path}:{lineno}: unparsable ordinate {line!r}") from None
            if t <= 0.0:
                raise ValueError(f"{path}:{lineno}: ordinates must be positive")
            if ts and t <= ts[-1]:
                kind = "duplicate" if t == ts[-1] else "descending"
                raise ValueError(f"{path}:{lineno}: {kind} ordinate {t!r}")
            ts.append(t)
            if max_zeros is not None and len(ts) >= max_zeros:
                break
    if not ts:
        raise ValueError(f"{path}: no ordinates found")
    arr = np.asarray(ts)
    residuals = np.array([abs(xi(0.5 + 1j * t)) for t in arr])
    ok = residuals < validation_tol
    excluded = tuple((float(t), float(r)) for t, r in zip(arr[~ok], residuals[~ok]))
    return ZeroTable(
        ts=arr[ok],
        residuals=residuals[ok],
        source=path,
        validation_tol=validation_tol,
        excluded=excluded,
    )


def bundled_zeros_path() -> str:
    """Path of the zero table shipped with the package."""
    import importlib.resources as res

    return str(res.files("zetaumm").joinpath("data/zeros10k.txt"))
