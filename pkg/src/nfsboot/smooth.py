"""Smoothness testing and the booting-step complexity calculus.

Factorization with a bound (trial division plus Brent-cycle rho),
probable-prime testing, L-notation evaluation, norm-exponent tables for
the three polynomial selection methods, and Dickman-rho smoothness
probabilities.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

TRIAL_LIMIT = 10**6
DEFAULT_EFFORT = 1 << 26  # rho iterations per candidate

JLSV1 = "jlsv1"
GJL = "gjl"
CONJ = "conj"
PLAIN = "plain"
SUBFIELD = "subfield"


# ---------------------------------------------------------------------------
# Primality.

_SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]


def _miller_rabin(n: int, base: int) -> bool:
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    x = pow(base % n, d, n)
    if x in (1, n - 1):
        return True
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _lucas_strong(n: int) -> bool:
    """Strong Lucas test with Selfridge's parameter choice."""
    if n % 2 == 0:
        return n == 2
    d = 5
    while True:
        j = _jacobi(d, n)
        if j == 0:
            return abs(d) == n
        if j == -1:
            break
        d = -(d + 2) if d > 0 else -(d - 2)
    p, q = 1, (1 - d) // 4
    # strong form: n+1 = s * 2^r
    s, r = n + 1, 0
    while s % 2 == 0:
        s //= 2
        r += 1
    u, v, qk = _lucas_uv(p, q, s, n)
    if u == 0 or v == 0:
        return True
    for _ in range(r - 1):
        v = (v * v - 2 * qk) % n
        qk = qk * qk % n
        if v == 0:
            return True
    return False


def _jacobi(a: int, n: int) -> int:
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _lucas_uv(p: int, q: int, k: int, n: int) -> tuple[int, int, int]:
    u, v, qk = 1, p, q % n
    bits = bin(k)[3:]
    for bit in bits:
        u = u * v % n
        v = (v * v - 2 * qk) % n
        qk = qk * qk % n
        if bit == "1":
            u, v = (p * u + v) % n, ((p * p - 4 * q) * u + p * v) % n
            inv2 = (n + 1) // 2
            u = u * inv2 % n
            v = v * inv2 % n
            qk = qk * (q % n) % n
    return u, v, qk


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin (deterministic below 2^64, 64 fixed rounds above) + Lucas."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < 1 << 64:
        return all(_miller_rabin(n, b) for b in _SMALL_PRIMES)
    rng = random.Random(n & 0xFFFFFFFF)
    if not all(_miller_rabin(n, rng.randrange(2, n - 1)) for _ in range(64)):
        return False
    return _lucas_strong(n)


def next_prime(n: int) -> int:
    n += 1
    while not is_probable_prime(n):
        n += 1
    return n


@lru_cache(maxsize=1)
def _trial_primes() -> list[int]:
    limit = TRIAL_LIMIT
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i, v in enumerate(sieve) if v]


# ---------------------------------------------------------------------------
# Factorization with a bound.


class Smoothness(enum.Enum):
    SMOOTH = "smooth"
    NOT_SMOOTH = "not_smooth"
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class Factorization:
    """value = cofactor * prod(prime^exponent); primes sorted ascending."""

    value: int
    factors: tuple[tuple[int, int], ...]
    cofactor: int = 1

    def __post_init__(self):
        prod = self.cofactor
        for p, e in self.factors:
            prod *= p**e
        if prod != abs(self.value):
            raise ValueError("factorization does not multiply back")

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    @property
    def largest_prime(self) -> int:
        return self.factors[-1][0] if self.factors else 1


@dataclass(frozen=True)
class SmoothnessResult:
    factorization: Factorization
    verdict: Smoothness
    bound: int


def _pollard_brent(n: int, seed: int, max_iters: int) -> Optional[int]:
    """Brent-cycle rho; returns a nontrivial factor or None on budget exhaustion."""
    if n % 2 == 0:
        return 2
    rng = random.Random(seed)
    iters = 0
    while iters < max_iters:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1 and iters < max_iters:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                iters += min(m, r - k)
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    return None


def factor_with_bound(N: int, B: int, effort: int = DEFAULT_EFFORT) -> SmoothnessResult:
    """Decide B-smoothness of N, factoring as far as the effort budget allows.

    Trial division up to min(B, 10^6), then Brent rho with restarts on the
    remaining cofactor.  NOT_SMOOTH as soon as a probable-prime factor above
    B is isolated; UNDECIDED when the budget runs out on a composite
    cofactor.
    """
    if N == 0:
        raise ValueError("cannot test smoothness of zero")
    if B < 2:
        raise ValueError("smoothness bound must be at least 2")
    n = abs(N)
    found: dict[int, int] = {}
    limit = min(B, TRIAL_LIMIT)
    for p in _trial_primes():
        if p > limit or p * p > n:
            break
        while n % p == 0:
            found[p] = found.get(p, 0) + 1
            n //= p
    if n > 1 and n <= limit:
        # remaining cofactor is prime (no divisor up to its square root)
        found[n] = found.get(n, 0) + 1
        n = 1

    pending = [n] if n > 1 else []
    budget = effort  # shared across all rho calls for this candidate
    while pending:
        c = pending.pop()
        if c == 1:
            continue
        if is_probable_prime(c):
            if c > B:
                return _finish_not_smooth(N, found, c, pending, B)
            found[c] = found.get(c, 0) + 1
            continue
        if B <= TRIAL_LIMIT:
            # every prime factor of c exceeds the full trial range, hence B
            return _finish_not_smooth(N, found, c, pending, B)
        f = _pollard_brent(c, seed=c & 0xFFFFFFFF, max_iters=budget)
        if f is None:
            return _finish_undecided(N, found, c, pending, B)
        pending.extend([f, c // f])
    fac = Factorization(value=N, factors=tuple(sorted(found.items())), cofactor=1)
    verdict = Smoothness.SMOOTH if fac.largest_prime <= B else Smoothness.NOT_SMOOTH
    return SmoothnessResult(fac, verdict, B)


def _finish_not_smooth(N, found, c, pending, B) -> SmoothnessResult:
    cof = c * math.prod(pending) if pending else c
    fac = Factorization(value=N, factors=tuple(sorted(found.items())), cofactor=cof)
    return SmoothnessResult(fac, Smoothness.NOT_SMOOTH, B)


def _finish_undecided(N, found, c, pending, B) -> SmoothnessResult:
    cof = c * math.prod(pending) if pending else c
    fac = Factorization(value=N, factors=tuple(sorted(found.items())), cofactor=cof)
    return SmoothnessResult(fac, Smoothness.UNDECIDED, B)


def factor_best_effort(n: int, effort: int = DEFAULT_EFFORT) -> Factorization:
    """Full factorization attempt (bound = the number itself)."""
    return factor_with_bound(n, max(abs(n), 2), effort).factorization


# ---------------------------------------------------------------------------
# L-notation and booting constants.

LOG2_10 = math.log2(10)


def l_eval(logQ_bits: float, alpha: float, c: float) -> float:
    """log2 of L_Q[alpha, c] with the o(1) term set to zero."""
    if not 0 <= alpha <= 1:
        raise ValueError("alpha must lie in [0, 1]")
    if c <= 0:
        raise ValueError("c must be positive")
    ln_q = logQ_bits * math.log(2)
    return c * ln_q**alpha * math.log(ln_q) ** (1 - alpha) / math.log(2)


def _exact_cbrt(q: Fraction) -> Optional[Fraction]:
    def icbrt(x: int) -> int:
        r = round(x ** (1 / 3))
        while r**3 > x:
            r -= 1
        while (r + 1) ** 3 <= x:
            r += 1
        return r

    a, b = icbrt(q.numerator), icbrt(q.denominator)
    if a**3 == q.numerator and b**3 == q.denominator:
        return Fraction(a, b)
    return None


@dataclass(frozen=True)
class ComplexityProfile:
    """Booting-step cost profile for a norm bound of Q^e.

    c is the running-time constant in L_Q[1/3, c]; gamma the smoothness
    bound constant in B = L_Q[2/3, gamma].  Exact rational values are
    carried alongside when (3e) and (e^2/3) are rational cubes.
    """

    e: Fraction
    c: float
    gamma: float
    alpha_B: Fraction = Fraction(2, 3)
    method: Optional[str] = None
    n: Optional[int] = None
    variant: Optional[str] = None
    Q_bits: Optional[float] = None
    c_exact: Optional[Fraction] = None
    gamma_exact: Optional[Fraction] = None

    @property
    def runtime_bits(self) -> Optional[float]:
        """log2 of the expected booting-step running time at the concrete Q."""
        if self.Q_bits is None:
            return None
        return l_eval(self.Q_bits, Fraction(1, 3), self.c)

    @property
    def special_q_bits(self) -> Optional[float]:
        """log2 of the recommended special-q / smoothness bound B."""
        if self.Q_bits is None:
            return None
        return l_eval(self.Q_bits, Fraction(2, 3), self.gamma)


def booting_constants(
    e: Fraction | float,
    method: Optional[str] = None,
    n: Optional[int] = None,
    variant: Optional[str] = None,
    Q_bits: Optional[float] = None,
) -> ComplexityProfile:
    """c = (3e)^(1/3), gamma = (e^2/3)^(1/3) for a norm bound of Q^e."""
    e = Fraction(e).limit_denominator(10**9) if not isinstance(e, Fraction) else e
    if e <= 0:
        raise ValueError("norm exponent must be positive")
    c3 = 3 * e
    g3 = e * e / 3
    return ComplexityProfile(
        e=e,
        c=float(c3) ** (1 / 3),
        gamma=float(g3) ** (1 / 3),
        method=method,
        n=n,
        variant=variant,
        Q_bits=Q_bits,
        c_exact=_exact_cbrt(c3),
        gamma_exact=_exact_cbrt(g3),
    )


def norm_exponent(method: str, n: int, variant: str = PLAIN) -> Fraction:
    """Preimage norm exponent e (norm bounded by Q^e) after lattice reduction."""
    if n < 2:
        raise ValueError("extension degree must be at least 2")
    if variant == SUBFIELD:
        if n % 2 or n < 4:
            raise ValueError("subfield variant needs even n >= 4")
        if method in (GJL, CONJ):
            return 1 - Fraction(2, n)
        if method == JLSV1:
            return Fraction(3, 2) - Fraction(5, 2 * n)
    elif variant == PLAIN:
        if method in (GJL, CONJ):
            return 1 - Fraction(1, n)
        if method == JLSV1:
            return Fraction(3, 2) - Fraction(3, 2 * n)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    raise ValueError(f"unknown method {method!r}")


def baseline_exponents(method: str, n: int) -> dict[str, Fraction]:
    """Comparison exponents: naive lift and the numerator/denominator split."""
    if method == GJL:
        nothing = 1 + Fraction(1, n)
    elif method == CONJ:
        nothing = Fraction(2)
    elif method == JLSV1:
        nothing = Fraction(3, 2) - Fraction(1, 2 * n)
    else:
        raise ValueError(f"unknown method {method!r}")
    fraction = Fraction(2) if method == JLSV1 else Fraction(1)
    return {"nothing": nothing, "fraction": fraction}


# ---------------------------------------------------------------------------
# Dickman rho.

_RHO_STEP = 1024  # grid points per unit interval


@lru_cache(maxsize=8)
def _rho_grid(u_max_units: int) -> list[float]:
    """Dickman rho on a uniform grid via RK4 on rho'(t) = -rho(t-1)/t."""
    h = 1.0 / _RHO_STEP
    grid = [1.0] * (_RHO_STEP + 1)  # rho = 1 on [0, 1]
    for unit in range(1, u_max_units):

        def past(idx_float: float) -> float:
            # t - 1 always lands on or between existing grid points; cubic
            # interpolation keeps the stepper's fourth-order accuracy at the
            # half-step nodes
            i = int(idx_float)
            if i >= len(grid) - 1:
                return grid[-1]
            frac = idx_float - i
            if frac == 0.0:
                return grid[i]
            # rho has derivative kinks at integer t: keep the stencil inside
            # one smooth piece [m, m+1]
            piece = (i // _RHO_STEP) * _RHO_STEP
            lo = min(max(i - 1, piece), piece + _RHO_STEP - 3, len(grid) - 4)
            x = idx_float - lo
            y0, y1, y2, y3 = grid[lo : lo + 4]
            return (
                -y0 * (x - 1) * (x - 2) * (x - 3) / 6
                + y1 * x * (x - 2) * (x - 3) / 2
                - y2 * x * (x - 1) * (x - 3) / 2
                + y3 * x * (x - 1) * (x - 2) / 6
            )

        for k in range(_RHO_STEP):
            t = unit + k * h
            y = grid[-1]
            # Simpson weights; the derivative -rho(t-1)/t depends on t alone,
            # so the midpoint stages coincide and RK4 reduces to this rule.
            k1 = -past((t - 1.0) * _RHO_STEP) / t
            k2 = -past((t + h / 2 - 1.0) * _RHO_STEP) / (t + h / 2)
            k4 = -past((t + h - 1.0) * _RHO_STEP) / (t + h)
            grid.append(y + h * (k1 + 4 * k2 + k4) / 6)
    return grid


def dickman_rho(u: float) -> float:
    """Dickman's rho(u), by stepping the delay differential equation."""
    if u < 0:
        raise ValueError("u must be non-negative")
    if u <= 1:
        return 1.0
    grid = _rho_grid(max(int(math.ceil(u)) + 1, 2))
    idx = u * _RHO_STEP
    i = int(idx)
    if i >= len(grid) - 1:
        return grid[-1]
    frac = idx - i
    return grid[i] * (1 - frac) + grid[i + 1] * frac


@dataclass(frozen=True)
class SmoothProbability:
    u: float
    rho: float
    cep_log2: float  # log2 of the u^-u estimate (CEP with o(1) = 0)


def smooth_probability(S_bits: float, B_bits: float) -> SmoothProbability:
    """Probability that a random S-bit integer is 2^B_bits-smooth."""
    if not 0 < B_bits < S_bits:
        raise ValueError("need 0 < B_bits < S_bits")
    u = S_bits / B_bits
    return SmoothProbability(u=u, rho=dickman_rho(u), cep_log2=-u * math.log2(u))
