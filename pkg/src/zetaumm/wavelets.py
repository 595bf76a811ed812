"""Kozyrev wavelets on Q_p, the Vladimirov derivative in spectral and
kernel form, and the raising/lowering action on the restricted basis.

The restricted basis H_-^(p) consists of psi_{-n+1, 0, 1} for n = 1, 2, ...
(contractions only, translation 0, j = 1); these span the mean-zero
square-integrable functions supported on Z_p that the phase-space trace
runs over.  The grading eigenvalues n of log_p D on this basis are the
documented (discrete) momentum spectrum n ln p of the coordinate-momentum
product Hamiltonian; no dynamics is computed here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .padics import (
    PAdicNumber,
    PrecisionError,
    additive_character,
    ball_coset_representatives,
    padic_norm,
    require_prime,
    valuation,
)

Point = Union[Fraction, int, PAdicNumber]


@dataclass(frozen=True)
class WaveletIndex:
    """Kozyrev label (scale n, translation m, character index j).

    m is the canonical coset representative in [0,1) with denominator a
    power of p; j runs over 1..p-1.
    """

    prime: int
    scale: int
    translation: Fraction = Fraction(0)
    j: int = 1

    def __post_init__(self):
        require_prime(self.prime)
        if not 1 <= self.j <= self.prime - 1:
            raise ValueError(f"j must be in 1..{self.prime - 1}")
        m = Fraction(self.translation)
        if not 0 <= m < 1:
            raise ValueError("translation must be the canonical rep in [0,1)")
        if m != 0:
            den = m.denominator
            while den % self.prime == 0:
                den //= self.prime
            if den != 1:
                raise ValueError("translation denominator must be a power of p")

    @property
    def support_center(self) -> Fraction:
        return Fraction(self.translation) * Fraction(self.prime) ** (-self.scale)

    @property
    def support_level(self) -> int:
        """Support is the ball |xi - center|_p <= p^(-support_level).

        |p^n xi - m| <= 1 unwinds to |xi - p^(-n) m| <= p^n, so the level
        is -n: contractions (n <= 0) live inside Z_p.
        """
        return -self.scale

    @property
    def resolution_level(self) -> int:
        """The wavelet is locally constant on cosets of p^resolution Z_p."""
        return 1 - self.scale

    @property
    def norm_factor(self) -> float:
        return float(self.prime) ** (-0.5 * self.scale)


def restricted_index(p: int, n: int) -> WaveletIndex:
    """Basis label n >= 1 of H_-^(p): the wavelet psi_{-n+1, 0, 1}."""
    if n < 1:
        raise ValueError("restricted-basis labels are n = 1, 2, ...")
    return WaveletIndex(p, 1 - n, Fraction(0), 1)


def _as_fraction(xi: Point, idx: WaveletIndex) -> Fraction:
    if isinstance(xi, PAdicNumber):
        if xi.prime != idx.prime:
            raise ValueError(
                f"prime mismatch: point over p={xi.prime}, wavelet over p={idx.prime}"
            )
        # resolving the character/indicator at scale n needs digits through
        # position -n; refuse to extend a window that was declared shorter
        if not xi.is_zero and xi.valuation + xi.precision <= -idx.scale:
            raise PrecisionError(
                f"digit window [{xi.valuation}, {xi.valuation + xi.precision}) "
                f"cannot resolve scale {idx.scale}"
            )
        return xi.value
    return Fraction(xi)


def kozyrev_eval(idx: WaveletIndex, xi: Point) -> complex:
    """psi_{n,m,j}(xi) = p^(-n/2) chi(j p^(n-1) xi) 1[|p^n xi - m|_p <= 1].

    Modulus is exact (a power of p or zero); the phase is binary64.
    """
    v = _as_fraction(xi, idx)
    p, n = idx.prime, idx.scale
    arg = Fraction(p) ** n * v - Fraction(idx.translation)
    if padic_norm(arg, p) > 1:
        return 0.0 + 0.0j
    chi = additive_character(p, idx.j * Fraction(p) ** (n - 1) * v)
    return idx.norm_factor * chi


def _support_ball(idx: WaveletIndex) -> tuple[Fraction, int]:
    return idx.support_center, idx.support_level


def inner_product(a: WaveletIndex, b: WaveletIndex, K: Optional[int] = None) -> complex:
    """<psi_a, psi_b> by exact coset-sum quadrature at level K.

    Both wavelets are locally constant at their resolution levels, so the
    level-K sum restricted to the (ultrametric) intersection of supports is
    exact once K resolves both; the stated precondition is K at least one
    past the finer resolution.
    """
    if a.prime != b.prime:
        raise ValueError("inner products need a common prime")
    p = a.prime
    finer = max(a.resolution_level, b.resolution_level)
    if K is None:
        K = finer + 1
    if K < finer + 1:
        raise ValueError(f"K = {K} too small to resolve both wavelets (need >= {finer + 1})")
    ca, la = _support_ball(a)
    cb, lb = _support_ball(b)
    # ultrametric balls are nested or disjoint
    if la <= lb:
        c_out, l_out, c_in, l_in = ca, la, cb, lb
    else:
        c_out, l_out, c_in, l_in = cb, lb, ca, la
    if padic_norm(c_in - c_out, p) > Fraction(p) ** (-l_out):
        return 0.0 + 0.0j
    acc = 0.0 + 0.0j
    for r in ball_coset_representatives(p, c_in, l_in, K):
        acc += kozyrev_eval(a, r) * kozyrev_eval(b, r).conjugate()
    return acc * float(p) ** (-K)


def wavelet_integral(idx: WaveletIndex, K: Optional[int] = None) -> complex:
    """int psi dxi over Q_p (mean-zero for every Kozyrev wavelet)."""
    if K is None:
        K = idx.resolution_level + 1
    if K < idx.resolution_level:
        raise ValueError("K too small to resolve the wavelet")
    c, l = _support_ball(idx)
    acc = 0.0 + 0.0j
    for r in ball_coset_representatives(idx.prime, c, l, K):
        acc += kozyrev_eval(idx, r)
    return acc * float(idx.prime) ** (-K)


def gram_matrix(p: int, n_max: int, K: Optional[int] = None):
    """Gram matrix of the restricted basis labels 1..n_max."""
    import numpy as np

    idxs = [restricted_index(p, n) for n in range(1, n_max + 1)]
    G = np.empty((n_max, n_max), dtype=complex)
    for i, a in enumerate(idxs):
        for k, b in enumerate(idxs):
            if k < i:
                G[i, k] = G[k, i].conjugate()
                continue
            G[i, k] = inner_product(a, b, K)
    return G


# ---------------------------------------------------------------------------
# Vladimirov derivative
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VladimirovSpec:
    """Exponent and evaluation mode for D^alpha.

    kernel mode carries the coset level K and the domain cutoff p^B; the
    geometric tail beyond p^B is summed in closed form and its pre-summation
    size is reported, never silently assumed away.
    """

    alpha: complex
    mode: str = "spectral"
    K: int = 12
    B: int = 12

    def __post_init__(self):
        if self.mode not in ("spectral", "kernel"):
            raise ValueError("mode must be 'spectral' or 'kernel'")


@dataclass(frozen=True)
class VladimirovResult:
    eigenvalue: complex
    residual: float
    tail_bound: float = 0.0


def vladimirov_eigenvalue(p: int, alpha: complex, scale: int) -> complex:
    """Spectral action: D^alpha psi_{n,m,j} = p^(alpha(1-n)) psi_{n,m,j}."""
    return complex(p) ** (complex(alpha) * (1 - scale))


def _kernel_prefactor(p: int, alpha: complex) -> complex:
    num = 1.0 - complex(p) ** complex(alpha)
    den = 1.0 - complex(p) ** (-complex(alpha) - 1.0)
    return num / den


def _ball_integral(idx: WaveletIndex, center: Fraction, level: int) -> complex:
    """int_{|xi'-center| <= p^-level} psi dxi', exact via resolution cosets."""
    p = idx.prime
    r0 = idx.resolution_level
    c_f, l_f = _support_ball(idx)
    if level <= l_f:
        # the ball swallows the support (they intersect since callers pass
        # centers inside the support): mean-zero makes this exactly 0
        return 0.0 + 0.0j
    if padic_norm(center - c_f, p) > Fraction(p) ** (-l_f):
        return 0.0 + 0.0j
    K = max(r0, level)
    acc = 0.0 + 0.0j
    for r in ball_coset_representatives(p, center, level, K):
        acc += kozyrev_eval(idx, r)
    return acc * float(p) ** (-K)


def vladimirov_kernel_apply(
    spec: VladimirovSpec, idx: WaveletIndex, xi: Fraction
) -> tuple[complex, float]:
    """Evaluate (D^alpha psi)(xi) through the integral kernel

        C(alpha) int (psi(xi') - psi(xi)) / |xi'-xi|^(alpha+1) dxi'

    by exact distance-shell summation over |xi'| <= p^B (the subtraction
    kills the shells finer than the resolution level exactly) plus the
    closed-form geometric tail.  Returns (value, pre-summation tail size).
    """
    p, alpha = idx.prime, complex(spec.alpha)
    if alpha.real <= 0:
        raise ValueError(
            "kernel mode needs Re(alpha) > 0: the tail of the kernel integral "
            "diverges otherwise (and the normalisation has a pole at alpha = -1)"
        )
    r0 = idx.resolution_level
    if spec.K < r0:
        raise ValueError(f"coset level K = {spec.K} below the resolution level {r0}")
    c_f, l_f = _support_ball(idx)
    support_norm = max(padic_norm(c_f, p), Fraction(p) ** (-l_f)) if c_f else Fraction(p) ** (-l_f)
    if Fraction(p) ** spec.B < support_norm:
        raise ValueError(f"domain cutoff p^{spec.B} does not cover the support")
    f_xi = kozyrev_eval(idx, xi)
    pf = float(p)

    total = 0.0 + 0.0j
    # distance shells |xi'-xi| = p^(-j); f-dependent part vanishes once the
    # ball drops inside the support-free region or below the resolution
    for j in range(-spec.B, r0):
        ball_j = _ball_integral(idx, xi, j)
        ball_j1 = _ball_integral(idx, xi, j + 1)
        shell_measure = pf ** (-j) - pf ** (-j - 1)
        shell_int = ball_j - ball_j1 - f_xi * shell_measure
        total += pf ** ((alpha + 1.0) * j) * shell_int
    # tail |xi'| > p^B: psi vanishes there and |xi'-xi| = |xi'|
    q = pf ** (-alpha)
    tail = -f_xi * (1.0 - 1.0 / pf) * q ** (spec.B + 1) / (1.0 - q)
    total += tail
    return _kernel_prefactor(p, alpha) * total, abs(tail)


def _kernel_sample_points(idx: WaveletIndex, count: int = 6) -> list[Fraction]:
    p = idx.prime
    c_f, l_f = _support_ball(idx)
    pts = list(ball_coset_representatives(p, c_f, l_f, idx.resolution_level + 1))
    return pts[:count]


def vladimirov_apply(spec: VladimirovSpec, idx: WaveletIndex) -> VladimirovResult:
    """Apply D^alpha to a basis wavelet.

    spectral mode returns the exact eigenvalue p^(alpha(1-n)); kernel mode
    additionally evaluates the integral kernel at sample points in the
    support and reports the maximum pointwise deviation from
    eigenvalue * psi.
    """
    lam = vladimirov_eigenvalue(idx.prime, spec.alpha, idx.scale)
    if spec.mode == "spectral":
        return VladimirovResult(lam, 0.0)
    residual = 0.0
    tail_bound = 0.0
    for xi in _kernel_sample_points(idx):
        val, tb = vladimirov_kernel_apply(spec, idx, xi)
        residual = max(residual, abs(val - lam * kozyrev_eval(idx, xi)))
        tail_bound = max(tail_bound, tb)
    return VladimirovResult(lam, residual, tail_bound)


# ---------------------------------------------------------------------------
# Ladder (raising/lowering) action on the restricted basis
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LadderAction:
    """Result of a ladder operator on a basis state: coefficient * |n_out>.

    in_subspace is False when the image lies outside H_-^(p) (the n = 0
    boundary); callers get an explicit marker instead of a silent zero.
    """

    coefficient: int
    n_out: int
    in_subspace: bool


def _ladder_formal(op: str, n: int) -> LadderAction:
    if op == "J_plus":
        return LadderAction(n, n + 1, n + 1 >= 1)
    if op == "J_minus":
        return LadderAction(-n, n - 1, n - 1 >= 1)
    if op == "log_D":
        return LadderAction(n, n, n >= 1)
    raise ValueError(f"unknown ladder operator {op!r}")


def ladder_apply(op: str, n: int) -> LadderAction:
    """J_+- |n> = +-n |n +- 1>, log_p D |n> = n |n> on basis labels n >= 1."""
    if n < 1:
        raise ValueError("restricted-basis labels start at n = 1")
    return _ladder_formal(op, n)


def ladder_word(ops: Sequence[str], n: int) -> LadderAction:
    """Compose ladder operators right-to-left, tracking the integer
    coefficient; intermediate n = 0 states carry coefficient 0 formally."""
    coeff = 1
    cur = n
    ok = n >= 1
    for op in reversed(ops):
        act = _ladder_formal(op, cur)
        coeff *= act.coefficient
        cur = act.n_out
        if coeff == 0:
            return LadderAction(0, cur, True)
        ok = ok and act.in_subspace
    return LadderAction(coeff, cur, ok)
