"""Exact arithmetic on Q_p at finite precision.

Rationals are the ground truth: every p-adic value carries its source
rational, so norms, digit expansions, characters and ball memberships are
computed exactly (arbitrary-precision integers) and only complex outputs
are rounded to binary64.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

Rational = Union[int, Fraction]


class PrecisionError(ValueError):
    """A stored digit window is too short to resolve the requested scale."""


def is_prime(n: int) -> bool:
    """Trial-division primality test (the primes used here are small)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def require_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"p = {p!r} is not a prime")


def valuation(x: Rational, p: int) -> int:
    """ord_p(x): the exponent of p in x.  Undefined (raises) for x = 0."""
    require_prime(p)
    x = Fraction(x)
    if x == 0:
        raise ValueError("ord_p(0) is not finite")
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def padic_norm(x: Rational, p: int) -> Fraction:
    """|x|_p = p^(ord_p(den) - ord_p(num)); |0|_p = 0 by convention."""
    require_prime(p)
    x = Fraction(x)
    if x == 0:
        return Fraction(0)
    v = valuation(x, p)
    return Fraction(1, p**v) if v >= 0 else Fraction(p ** (-v))


def fractional_part(x: Rational, p: int) -> Fraction:
    """The p-adic fractional part {x}_p: the negative-power tail of the
    expansion, as a rational in [0, 1) with denominator a power of p."""
    require_prime(p)
    x = Fraction(x)
    if x == 0:
        return Fraction(0)
    den = x.denominator
    k = 0
    while den % p == 0:
        den //= p
        k += 1
    if k == 0:
        return Fraction(0)
    pk = p**k
    # x = a / (den * p^k) with p coprime to den; invert den mod p^k.
    a = x.numerator * pow(den, -1, pk)
    return Fraction(a % pk, pk)


def additive_character(p: int, x: Rational) -> complex:
    """chi(x) = exp(2 pi i {x}_p), the rank-one additive character of Q_p."""
    frac = fractional_part(x, p)
    if frac == 0:
        return 1.0 + 0.0j
    return cmath.exp(2j * cmath.pi * float(frac))


@dataclass(frozen=True)
class PAdicNumber:
    """Truncated p-adic expansion x = p^valuation * sum digits[k] p^k.

    digits are little-endian from the leading term with digits[0] != 0;
    the canonical zero has an empty digit tuple.  `value` is the exact
    source rational, kept so that norms and memberships never depend on
    the truncation.
    """

    prime: int
    valuation: int
    digits: tuple[int, ...]
    precision: int
    value: Fraction

    @classmethod
    def from_rational(cls, x: Rational, p: int, precision: int) -> "PAdicNumber":
        require_prime(p)
        if precision < 1:
            raise ValueError("precision must be a positive integer")
        x = Fraction(x)
        if x == 0:
            return cls(p, 0, (), precision, Fraction(0))
        v = valuation(x, p)
        u = x / Fraction(p) ** v  # unit part, |u|_p = 1
        digits = []
        for _ in range(precision):
            num, den = u.numerator, u.denominator
            d = (num * pow(den, -1, p)) % p
            digits.append(d)
            u = (u - d) / p
        return cls(p, v, tuple(digits), precision, x)

    @property
    def is_zero(self) -> bool:
        return self.value == 0

    @property
    def norm(self) -> Fraction:
        return padic_norm(self.value, self.prime)

    def truncated_value(self) -> Fraction:
        """The rational represented by the stored digit window alone."""
        acc = Fraction(0)
        for k, d in enumerate(self.digits):
            acc += d * Fraction(self.prime) ** (self.valuation + k)
        return acc

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        if self.is_zero:
            return f"PAdicNumber(0; p={self.prime})"
        ds = ",".join(str(d) for d in self.digits)
        return f"PAdicNumber(p={self.prime}, p^{self.valuation}*[{ds}...])"


@dataclass(frozen=True)
class PAdicBall:
    """The ball {xi : |xi - center|_p <= p^(-level)}; Haar measure p^(-level)."""

    prime: int
    center: PAdicNumber
    level: int

    def __post_init__(self):
        require_prime(self.prime)
        if self.center.prime != self.prime:
            raise ValueError("ball center must live over the same prime")

    @property
    def measure(self) -> Fraction:
        p, k = self.prime, self.level
        return Fraction(1, p**k) if k >= 0 else Fraction(p ** (-k))


def indicator_ball(ball: PAdicBall, xi: PAdicNumber) -> int:
    """1 iff |xi - center|_p <= p^(-level), else 0."""
    if xi.prime != ball.prime:
        raise ValueError(
            f"prime mismatch: point over p={xi.prime}, ball over p={ball.prime}"
        )
    diff = xi.value - ball.center.value
    return int(padic_norm(diff, ball.prime) <= ball.measure)


@dataclass(frozen=True)
class ShellSum:
    """Truncated Haar integral of |xi|_p^(s-1) over {|xi|_p < 1} plus bounds.

    `value` is the K-shell partial sum, `tail_bound` a geometric bound on
    the omitted shells, `closed_form` the limit (p-1)/p * p^-s/(1-p^-s).
    All three are exact Fractions for exact real s and binary64 complex
    otherwise.
    """

    value: Union[Fraction, complex]
    tail_bound: Union[Fraction, float]
    closed_form: Union[Fraction, complex]
    shells: int


def haar_integrate_norm_power(p: int, s: Union[Rational, complex], K: int) -> ShellSum:
    """Integrate |xi|_p^(s-1) over the region {|xi|_p < 1} shell by shell.

    Shell |xi|_p = p^-k has measure (1-1/p) p^-k, so the integral is
    sum_{k>=1} (1-1/p) p^(-ks); requires Re(s) > 0 for convergence.
    """
    require_prime(p)
    if K < 1:
        raise ValueError("K must be >= 1")
    sigma = s.real if isinstance(s, complex) else float(s)
    if sigma <= 0:
        raise ValueError(f"Re(s) = {sigma} <= 0: shell sum diverges")

    if isinstance(s, (int, Fraction)):
        s_frac = Fraction(s)
        if s_frac.denominator == 1:
            # integer exponent: every shell term is an exact rational
            w = Fraction(p - 1, p)
            q = Fraction(1, p**s_frac.numerator) if s_frac >= 0 else Fraction(p ** (-s_frac.numerator))
            value = w * sum(q**k for k in range(1, K + 1))
            tail = w * q ** (K + 1) / (1 - q)
            closed = w * q / (1 - q)
            return ShellSum(value, tail, closed, K)
        # non-integer rational exponent: fall through to float arithmetic
        s = float(s)

    sc = complex(s)
    w = (p - 1) / p
    q = p ** (-sc)
    value = w * sum(q**k for k in range(1, K + 1))
    qa = abs(q)
    tail = w * qa ** (K + 1) / (1 - qa)
    # binary64 path: pad the geometric bound with a rounding allowance so
    # the reported bound stays honest once the tail drops below 1 ulp
    tail += 16 * 2.220446049250313e-16 * (K + 2) * max(abs(value), 1.0)
    closed = w * q / (1 - q)
    return ShellSum(value, tail, closed, K)


def region_measure(p: int, region: str) -> Fraction:
    """Haar measures of the named multiplicative regions.

    'unit_ball_interior' is {|xi|_p < 1} (the region the shell integral
    runs over, written Z_p^x in some sources); 'unit_group' is the
    conventional unit group {|xi|_p = 1}; 'integers' is Z_p itself.  The
    two readings of the Z_p^x notation differ, so both are exposed.
    """
    require_prime(p)
    if region == "unit_ball_interior":
        return Fraction(1, p)
    if region == "unit_group":
        return Fraction(p - 1, p)
    if region == "integers":
        return Fraction(1)
    raise ValueError(f"unknown region {region!r}")


def coset_representatives(p: int, K: int, B: int = 0) -> Iterator[Fraction]:
    """Representatives of the p^K Z_p cosets tiling {|xi|_p <= p^B}.

    There are p^(K+B) of them, n / p^B for n = 0 .. p^(K+B)-1, each owning
    Haar measure p^-K.  Integration of functions locally constant at level
    K against this tiling is exact.
    """
    require_prime(p)
    if K + B < 0:
        raise ValueError("coset level K must be >= -B")
    pb = Fraction(1, p**B) if B >= 0 else Fraction(p ** (-B))
    for n in range(p ** (K + B)):
        yield n * pb


def ball_coset_representatives(
    p: int, center: Fraction, level: int, K: int
) -> Iterator[Fraction]:
    """Representatives of level-K cosets inside the ball of radius p^(-level)
    around `center`; requires K >= level."""
    if K < level:
        raise ValueError("K must refine the ball: K >= level")
    # the ball is center + p^level Z_p, so reps step by p^level
    step = Fraction(p**level) if level >= 0 else Fraction(1, p ** (-level))
    for j in range(p ** (K - level)):
        yield center + j * step
