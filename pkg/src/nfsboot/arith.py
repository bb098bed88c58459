"""Exact integer and modular polynomial arithmetic.

Dense little-endian polynomials over Z and over F_p, the subresultant
resultant, Kalkbrener's coefficient bound on resultants, and rational
reconstruction.  Degrees in this toolkit never exceed a few dozen, while
coefficients run to hundreds of digits, so everything here is exact and
fraction-free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class ReconstructionError(ValueError):
    """No convergent of the right size exists for this residue."""


class NotInvertibleError(ValueError):
    """Inversion failed; `gcd` carries the nontrivial common factor."""

    def __init__(self, message: str, gcd: "ModPoly"):
        super().__init__(message)
        self.gcd = gcd


def _trim(coeffs: Sequence[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True, init=False)
class IntPoly:
    """Dense polynomial over Z, coeffs[i] is the coefficient of x^i."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", _trim([int(c) for c in coeffs]))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def inf_norm(self) -> int:
        return max((abs(c) for c in self.coeffs), default=0)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __add__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly([self[i] + other[i] for i in range(n)])

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly([self[i] - other[i] for i in range(n)])

    def __neg__(self) -> "IntPoly":
        return IntPoly([-c for c in self.coeffs])

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly([c * other for c in self.coeffs])
        out = [0] * (len(self.coeffs) + len(other.coeffs))
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "IntPoly":
        """Multiply by x^k."""
        if self.is_zero:
            return self
        return IntPoly((0,) * k + self.coeffs)

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def content(self) -> int:
        return math.gcd(*self.coeffs) if self.coeffs else 0

    def rem_monic(self, m: "IntPoly") -> "IntPoly":
        """Remainder of self modulo a monic m, exact over Z."""
        if m.is_zero or m.leading != 1:
            raise ValueError("modulus must be monic")
        r = list(self.coeffs)
        dm = m.degree
        for i in range(len(r) - 1, dm - 1, -1):
            c = r[i]
            if c:
                r[i] = 0
                for j, mc in enumerate(m.coeffs[:-1]):
                    r[i - dm + j] -= c * mc
        return IntPoly(r[:dm])

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self[i]
            if c:
                t = f"{c}" if i == 0 else (f"{c}*x^{i}" if i > 1 else f"{c}*x")
                terms.append(t)
        return " + ".join(terms).replace("+ -", "- ")


X = IntPoly([0, 1])
ONE = IntPoly([1])


@dataclass(frozen=True, init=False)
class ModPoly:
    """Dense polynomial over F_p, coefficients reduced into [0, p)."""

    coeffs: tuple[int, ...]
    p: int

    def __init__(self, coeffs: Iterable[int], p: int):
        p = int(p)
        if p <= 1:
            raise ValueError("modulus must exceed 1")
        object.__setattr__(self, "coeffs", _trim([int(c) % p for c in coeffs]))
        object.__setattr__(self, "p", p)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_monic(self) -> bool:
        return not self.is_zero and self.leading == 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def lift(self) -> IntPoly:
        """Coefficient-wise lift into [0, p) over Z."""
        return IntPoly(self.coeffs)

    def lift_centered(self) -> IntPoly:
        """Lift with coefficients in (-p/2, p/2]."""
        h = self.p // 2
        return IntPoly([c - self.p if c > h else c for c in self.coeffs])

    def _same(self, other: "ModPoly") -> None:
        if self.p != other.p:
            raise ValueError("mixed moduli")

    def __add__(self, other: "ModPoly") -> "ModPoly":
        self._same(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return ModPoly([self[i] + other[i] for i in range(n)], self.p)

    def __sub__(self, other: "ModPoly") -> "ModPoly":
        self._same(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return ModPoly([self[i] - other[i] for i in range(n)], self.p)

    def __mul__(self, other) -> "ModPoly":
        if isinstance(other, int):
            return ModPoly([c * other for c in self.coeffs], self.p)
        self._same(other)
        out = [0] * (len(self.coeffs) + len(other.coeffs))
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return ModPoly(out, self.p)

    __rmul__ = __mul__

    def monic(self) -> "ModPoly":
        if self.is_zero:
            return self
        inv = pow(self.leading, -1, self.p)
        return self * inv

    def divmod(self, other: "ModPoly") -> tuple["ModPoly", "ModPoly"]:
        self._same(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        inv = pow(other.leading, -1, p)
        r = list(self.coeffs)
        q = [0] * max(len(r) - other.degree, 0)
        do = other.degree
        for i in range(len(r) - 1, do - 1, -1):
            c = r[i] * inv % p
            if c:
                q[i - do] = c
                for j, oc in enumerate(other.coeffs):
                    r[i - do + j] = (r[i - do + j] - c * oc) % p
            r[i] = 0
        return ModPoly(q, p), ModPoly(r[:do], p)

    def __mod__(self, other: "ModPoly") -> "ModPoly":
        return self.divmod(other)[1]


# ---------------------------------------------------------------------------
# Resultants and coefficient bounds.


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b, over Z."""
    da, db = len(a) - 1, len(b) - 1
    lb = b[-1]
    r = list(a)
    for _ in range(da - db + 1):
        dr = len(r) - 1
        if dr < db:
            r = [c * lb for c in r]
            continue
        lead = r[-1]
        r = [c * lb for c in r[:-1]]
        for j in range(db):
            r[dr - db + j] -= lead * b[j]
        while r and r[-1] == 0:
            r.pop()
    return r


def _exact_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        raise ArithmeticError("inexact division in subresultant sequence")
    return q


def resultant(f: IntPoly, s: IntPoly) -> int:
    """Signed resultant Res(f, s) by the subresultant PRS.

    The subresultant scaling keeps remainders fraction-free; the exact
    relation between Res(A, B) and Res(B, prem(A, B)) is tracked in a
    running rational factor.  For monic f, |Res(f, s)| is the field norm
    of s in Q[x]/(f).
    """
    if f.is_zero or s.is_zero:
        raise ValueError("undefined resultant")
    A, B = list(f.coeffs), list(s.coeffs)
    da, db = len(A) - 1, len(B) - 1
    if da == 0 and db == 0:
        return 1
    if da == 0:
        return A[0] ** db
    if db == 0:
        return B[0] ** da
    acc = Fraction(1)
    if da < db:
        A, B = B, A
        if da & 1 and db & 1:
            acc = -acc
    ca = math.gcd(*A)
    cb = math.gcd(*B)
    A = [c // ca for c in A]
    B = [c // cb for c in B]
    acc *= ca ** (len(B) - 1) * cb ** (len(A) - 1)
    g = h = 1
    while len(B) - 1 > 0:
        da, db = len(A) - 1, len(B) - 1
        delta = da - db
        c = B[-1]
        R = _prem(A, B)  # = c^(delta+1) * A  mod B, as a polynomial identity
        if not R:
            return 0
        dr = len(R) - 1
        # Res(A, B) = (-1)^(da*db) * c^(da-dr) / c^((delta+1)*db) * Res(B, R)
        if da & 1 and db & 1:
            acc = -acc
        acc *= Fraction(c ** (da - dr), c ** ((delta + 1) * db))
        divisor = g * h**delta
        A = B
        B = [_exact_div(r, divisor) for r in R]
        acc *= divisor**db  # Res(A, R) = divisor^deg(A) * Res(A, R/divisor)
        g = A[-1]
        if delta == 1:
            h = g
        elif delta > 1:
            h = _exact_div(g**delta, h ** (delta - 1))
    acc *= B[0] ** (len(A) - 1)  # Res(A, const) = const^deg(A)
    if acc.denominator != 1:
        raise ArithmeticError("non-integral resultant accumulator")
    return int(acc)


def binomial(n: int, k: int) -> int:
    return math.comb(n, k)


def kalkbrener_kappa(n: int, m: int) -> int:
    """C(n+m, n) * C(n+m-1, n)."""
    return math.comb(n + m, n) * math.comb(n + m - 1, n)


def kalkbrener_bound(f: IntPoly, s: IntPoly) -> int:
    """Upper bound kappa(deg f, deg s) * ||f||^deg s * ||s||^deg f >= |Res(f, s)|."""
    if f.is_zero or s.is_zero:
        raise ValueError("undefined resultant bound for zero polynomial")
    n, m = f.degree, s.degree
    return kalkbrener_kappa(n, m) * f.inf_norm**m * s.inf_norm**n


# ---------------------------------------------------------------------------
# Rational reconstruction.


def rational_reconstruction(y: int, p: int) -> tuple[int, int]:
    """Write y = u/v mod p with |u|, |v| <= ceil(sqrt(p)).

    Half extended Euclid on (p, y), stopping at the first remainder below
    sqrt(p).  Raises ReconstructionError when no convergent of that size
    exists (degenerate y); callers retry with a fresh y.
    """
    if not 0 < y < p:
        raise ValueError("need 0 < y < p")
    limit = math.isqrt(p)
    bound = limit + 1  # ceil(sqrt(p)) for non-square p
    r0, r1 = p, y
    t0, t1 = 0, 1
    while r1 > limit:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    u, v = r1, t1
    if u == 0 or abs(u) > bound or abs(v) > bound or v % p == 0:
        raise ReconstructionError(f"reconstruction failed for y={y}")
    assert (v * y - u) % p == 0
    return u, v


# ---------------------------------------------------------------------------
# Modular polynomial arithmetic.


def poly_mod(a: IntPoly, m: ModPoly) -> ModPoly:
    """Reduce an integer polynomial modulo (p, m)."""
    if not m.is_monic:
        raise ValueError("modulus polynomial must be monic")
    return ModPoly(a.coeffs, m.p) % m


def poly_mulmod(a: ModPoly, b: ModPoly, m: ModPoly) -> ModPoly:
    if not m.is_monic:
        raise ValueError("modulus polynomial must be monic")
    return (a * b) % m


def poly_powmod(a: ModPoly, e: int, m: ModPoly) -> ModPoly:
    if not m.is_monic:
        raise ValueError("modulus polynomial must be monic")
    if e < 0:
        return poly_powmod(poly_invmod(a, m), -e, m)
    result = ModPoly([1], m.p)
    base = a % m
    while e:
        if e & 1:
            result = (result * base) % m
        base = (base * base) % m
        e >>= 1
    return result


def poly_gcd_mod_p(a: ModPoly, b: ModPoly) -> ModPoly:
    """Monic gcd over F_p."""
    a._same(b)
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def poly_invmod(a: ModPoly, m: ModPoly) -> ModPoly:
    """Inverse of a modulo m over F_p; raises NotInvertibleError on failure."""
    if not m.is_monic:
        raise ValueError("modulus polynomial must be monic")
    p = m.p
    r0, r1 = m, a % m
    t0, t1 = ModPoly([], p), ModPoly([1], p)
    while not r1.is_zero:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        t0, t1 = t1, t0 - q * t1
    if r0.degree != 0:
        raise NotInvertibleError("element not invertible", r0.monic())
    return t0 * pow(r0.leading, -1, p)


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible_mod_p(a: ModPoly) -> bool:
    """Irreducibility over F_p via the Frobenius fixed-point criterion.

    a is irreducible of degree d iff x^(p^d) = x mod a and, for every prime
    q dividing d, gcd(x^(p^(d/q)) - x, a) = 1.
    """
    if a.is_zero:
        raise ValueError("zero polynomial")
    d = a.degree
    if d == 0:
        return False
    if d == 1:
        return True
    m = a.monic()
    p = a.p
    x = ModPoly([0, 1], p)
    # frob[k] = x^(p^k) mod m, built by iterated Frobenius
    fr = x
    powers = {0: x}
    for k in range(1, d + 1):
        fr = poly_powmod(fr, p, m)
        powers[k] = fr
    if powers[d] != x:
        return False
    for q in _prime_factors(d):
        if poly_gcd_mod_p(powers[d // q] - x, m).degree != 0:
            return False
    return True


def sqrt_mod(a: int, p: int) -> int:
    """A square root of a modulo an odd prime p (Tonelli-Shanks).

    Raises ValueError when a is a quadratic non-residue.  Returns the
    smaller of the two roots.
    """
    a %= p
    if a == 0:
        return 0
    if p == 2:
        return a
    if pow(a, (p - 1) // 2, p) != 1:
        raise ValueError("not a quadratic residue")
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
        return min(r, p - r)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        t2, i = t, 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return min(r, p - r)


def distinct_degree_factor(a: ModPoly, n: int) -> ModPoly | None:
    """The unique irreducible degree-n factor of a squarefree a mod p, if any.

    Strips factors whose degree properly divides n from the degree-n
    Frobenius part; returns None when no factor of degree exactly n exists
    or when several do (the product would have degree 2n or more).
    """
    m = a.monic()
    p = a.p
    x = ModPoly([0, 1], p)
    powers = {}
    fr = x
    for k in range(1, n + 1):
        fr = poly_powmod(fr, p, m)
        powers[k] = fr
    part = poly_gcd_mod_p(powers[n] - x, m)  # factors of degree dividing n
    for d in range(1, n):
        if n % d == 0:
            low = poly_gcd_mod_p(powers[d] - x, part)
            while low.degree > 0:
                part, _ = part.divmod(low)
                low = poly_gcd_mod_p(low, part)
    if part.degree != n:
        return None
    return part.monic()
