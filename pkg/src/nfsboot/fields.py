"""Tower arithmetic in F_{p^n} and quadratic-subfield structure detection.

An extension field is modelled as F_p[x]/(psi) for a monic irreducible psi.
Beyond plain arithmetic this module recognises when psi carries a
quadratic-tower structure -- psi splitting over F_{p^2} into two conjugate
degree-n/2 factors -- and exploits it to multiply a target by a subfield
unit so that its representative drops to degree n-2 (subfield units have
discrete log 0 modulo any ell dividing the n-th cyclotomic value).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Optional, Sequence

from .arith import (
    IntPoly,
    ModPoly,
    NotInvertibleError,
    is_irreducible_mod_p,
    poly_invmod,
    poly_mulmod,
    poly_powmod,
)
from .smooth import factor_best_effort, is_probable_prime

ADDITIVE = "additive"
TWISTED = "twisted"


class TowerError(ValueError):
    """psi does not carry the requested tower structure."""


class DegenerateTargetError(ValueError):
    """The target hits a measure-zero case; re-randomize and retry."""


@dataclass(frozen=True)
class FieldCtx:
    """F_{p^n} presented as F_p[x]/(psi); psi monic irreducible of degree n."""

    p: int
    n: int
    psi: ModPoly
    ell: Optional[int] = None

    def __post_init__(self):
        if self.psi.p != self.p:
            raise ValueError("psi defined modulo a different prime")
        if self.psi.degree != self.n or self.n < 2:
            raise ValueError("psi must have degree n >= 2")
        if not self.psi.is_monic:
            raise ValueError("psi must be monic")
        if not is_irreducible_mod_p(self.psi):
            raise ValueError("psi is reducible mod p")

    def element(self, coeffs: Sequence[int] | ModPoly | int) -> "FqElement":
        if isinstance(coeffs, int):
            coeffs = [coeffs]
        if isinstance(coeffs, ModPoly):
            rep = coeffs % self.psi
        else:
            rep = ModPoly(coeffs, self.p) % self.psi
        return FqElement(self, rep)

    @property
    def zero(self) -> "FqElement":
        return self.element(0)

    @property
    def one(self) -> "FqElement":
        return self.element(1)

    @property
    def gen(self) -> "FqElement":
        return self.element([0, 1])

    @cached_property
    def _frob_images(self) -> dict[int, ModPoly]:
        return {}

    def frob_image(self, k: int) -> ModPoly:
        """x^(p^k) mod psi, cached."""
        k %= self.n
        cache = self._frob_images
        if k not in cache:
            if k == 0:
                cache[k] = ModPoly([0, 1], self.p)
            else:
                prev = self.frob_image(k - 1)
                cache[k] = poly_powmod(prev, self.p, self.psi)
        return cache[k]


@dataclass(frozen=True)
class FqElement:
    ctx: FieldCtx
    rep: ModPoly

    def _same(self, other: "FqElement") -> None:
        if self.ctx is not other.ctx and self.ctx != other.ctx:
            raise ValueError("elements from different fields")

    @property
    def is_zero(self) -> bool:
        return self.rep.is_zero

    def __add__(self, other: "FqElement") -> "FqElement":
        self._same(other)
        return FqElement(self.ctx, self.rep + other.rep)

    def __sub__(self, other: "FqElement") -> "FqElement":
        self._same(other)
        return FqElement(self.ctx, self.rep - other.rep)

    def __neg__(self) -> "FqElement":
        return FqElement(self.ctx, self.rep * (-1))

    def __mul__(self, other) -> "FqElement":
        if isinstance(other, int):
            return FqElement(self.ctx, self.rep * other)
        self._same(other)
        return FqElement(self.ctx, poly_mulmod(self.rep, other.rep, self.ctx.psi))

    __rmul__ = __mul__

    def inverse(self) -> "FqElement":
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero")
        return FqElement(self.ctx, poly_invmod(self.rep, self.ctx.psi))

    def __truediv__(self, other: "FqElement") -> "FqElement":
        return self * other.inverse()

    def __pow__(self, e: int) -> "FqElement":
        if e < 0:
            return self.inverse() ** (-e)
        return FqElement(self.ctx, poly_powmod(self.rep, e, self.ctx.psi))

    def frobenius(self, k: int = 1) -> "FqElement":
        """Image under the k-th power of the p-Frobenius."""
        img = self.ctx.frob_image(k)
        # evaluate rep at x^(p^k) by Horner over the quotient ring
        acc = ModPoly([0], self.ctx.p)
        for c in reversed(self.rep.coeffs):
            acc = poly_mulmod(acc, img, self.ctx.psi) + ModPoly([c], self.ctx.p)
        return FqElement(self.ctx, acc)

    @property
    def in_prime_field(self) -> bool:
        return self.rep.degree <= 0

    def constant(self) -> int:
        if not self.in_prime_field:
            raise ValueError("element not in the prime field")
        return self.rep[0]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FqElement)
            and self.ctx.p == other.ctx.p
            and self.ctx.psi.coeffs == other.ctx.psi.coeffs
            and self.rep.coeffs == other.rep.coeffs
        )

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.psi.coeffs, self.rep.coeffs))

    def __str__(self) -> str:
        return str(self.rep.lift())


def is_in_proper_subfield(a: FqElement, d: int) -> bool:
    """True iff a is fixed by the degree-d Frobenius power (a in F_{p^d})."""
    n = a.ctx.n
    if n % d or d >= n:
        raise ValueError("d must be a proper divisor of n")
    return a.frobenius(d) == a


def proper_subfield_degree(a: FqElement) -> Optional[int]:
    """Degree of the smallest proper subfield containing a, or None."""
    n = a.ctx.n
    for d in sorted(_divisors(n)):
        if d == n:
            break
        if a.frobenius(d) == a:
            return d
    return None


def make_monic(s: FqElement) -> tuple[FqElement, FqElement]:
    """(s / lead, lead): the cofactor is in F_p, so logs agree mod ell."""
    if s.is_zero:
        raise ValueError("cannot normalize zero")
    lead = s.ctx.element(s.rep.leading)
    return s * lead.inverse(), lead


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def _mobius(n: int) -> int:
    if n == 1:
        return 1
    result, m = 1, n
    d = 2
    while d * d <= m:
        if m % d == 0:
            m //= d
            if m % d == 0:
                return 0
            result = -result
        d += 1
    if m > 1:
        result = -result
    return result


def cyclotomic_value(n: int, p: int) -> int:
    """Phi_n(p) by the Mobius product over divisors of n."""
    num, den = 1, 1
    for d in _divisors(n):
        mu = _mobius(d)
        if mu == 1:
            num *= p ** (n // d) - 1
        elif mu == -1:
            den *= p ** (n // d) - 1
    assert num % den == 0
    return num // den


def find_ell(p: int, n: int, min_bits: int = 0, effort: int = 1 << 22) -> int:
    """Largest prime factor of Phi_n(p); the subgroup where logs live.

    Raises if the factorization stays incomplete within the effort budget
    and the unfactored part could hide a larger prime -- pass ell explicitly
    in that case.
    """
    phi = cyclotomic_value(n, p)
    if is_probable_prime(phi):
        return phi
    fac = factor_best_effort(phi, effort)
    best = fac.largest_prime
    if not fac.complete and fac.cofactor > best:
        raise ValueError(
            "cyclotomic value not fully factored; supply ell explicitly"
        )
    if best.bit_length() < min_bits:
        raise ValueError(f"largest prime factor has only {best.bit_length()} bits")
    return best


# ---------------------------------------------------------------------------
# Quadratic towers.


@dataclass(frozen=True)
class Tower:
    """Quadratic-subfield structure of psi (degree n = 2m).

    Over F_{p^2} = F_p(Y), psi factors as the two Frobenius conjugates of
    the minimal polynomial of x.  kind records where Y sits in that factor:

      additive: min-poly = P_z(T) - Y        (psi = P_z^2 + c1 P_z + c0)
      twisted:  min-poly = P_z(T) - Y T      (psi = P_z^2 + c1 X P_z + c0 X^2)

    with P_z in F_p[T] monic of degree m and P_y = Y^2 + y1 Y + y0 the
    minimal polynomial of Y over F_p.
    """

    kind: str
    p_z: ModPoly
    y0: int
    y1: int
    Y: FqElement

    @property
    def variant(self) -> str:
        return self.kind

    @property
    def p_y(self) -> ModPoly:
        return ModPoly([self.y0, self.y1, 1], self.Y.ctx.p)


def detect_tower(ctx: FieldCtx) -> Optional[Tower]:
    """Recognise a quadratic-tower presentation of psi, if one exists.

    Computes the minimal polynomial F of x over the F_{p^2}-subfield as the
    product of Frobenius-squared conjugates, then reads off the additive or
    twisted shape from which single coefficient of F escapes F_p.  Returns
    None when psi has neither shape.
    """
    n = ctx.n
    if n % 2 or n < 4:
        raise ValueError("tower detection needs even n >= 4")
    m = n // 2
    # orbit of x under Frobenius^2
    orbit = [ctx.gen]
    for _ in range(m - 1):
        orbit.append(orbit[-1].frobenius(2))
    # F(T) = prod (T - o_i), coefficients in the F_{p^2}-subfield
    coeffs = [ctx.one]  # poly in T, little-endian, FqElement coefficients
    for o in orbit:
        nxt = [ctx.zero] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] = nxt[i + 1] + c
            nxt[i] = nxt[i] - c * o
        coeffs = nxt
    assert len(coeffs) == m + 1
    outside = [i for i in range(m) if not coeffs[i].in_prime_field]
    if outside == [0]:
        kind, Y = ADDITIVE, -coeffs[0]
    elif outside == [1]:
        kind, Y = TWISTED, -coeffs[1]
    else:
        return None
    if Y.frobenius(2) != Y:
        return None
    # P_z: F with the escaping coefficient dropped
    pz = [c.constant() if c.in_prime_field else 0 for c in coeffs]
    p_z = ModPoly(pz, ctx.p)
    yp = Y.frobenius(1)
    y1 = (-(Y + yp)).constant()
    y0 = (Y * yp).constant()
    return Tower(kind=kind, p_z=p_z, y0=y0, y1=y1, Y=Y)


def subfield_reduce(s: FqElement, tower: Tower) -> tuple[FqElement, FqElement]:
    """Multiply s by a quadratic-subfield unit killing its top coefficient.

    Returns (r, u) with r = u * s monic of degree exactly n-2 and u in
    F_{p^2}^*.  Since log u = 0 mod ell, r is an equivalent, smaller boot
    target.  r is unique: the unit space is 2-dimensional over F_p and one
    homogeneous condition plus monic scaling pins it down.
    """
    ctx = s.ctx
    if s.is_zero:
        raise ValueError("cannot reduce zero")
    top = ctx.n - 1
    a = s.rep[top]
    b = (tower.Y * s).rep[top]
    if a == 0:
        u = ctx.one
    elif b == 0:
        u = tower.Y
    else:
        # c*a + d*b = 0 with (c, d) = (-b, a)
        u = ctx.element(-b) + a * tower.Y
    r = u * s
    assert r.rep[top] == 0
    if r.rep.degree != ctx.n - 2:
        raise DegenerateTargetError("degenerate target, re-randomize")
    u = pow(r.rep.leading, -1, ctx.p) * u
    return u * s, u


def subfield_basis(ctx: FieldCtx, d: int) -> list[FqElement]:
    """F_p-basis of the F_{p^d}-subfield: kernel of Frobenius^d - id."""
    n = ctx.n
    if n % d:
        raise ValueError("d must divide n")
    p = ctx.p
    # columns: (Frob^d - id)(x^j) in the power basis
    img = ctx.frob_image(d)
    col = ModPoly([1], p)
    cols = []
    for j in range(n):
        delta = list(col.coeffs) + [0] * (n - len(col.coeffs))
        delta[j] = (delta[j] - 1) % p
        cols.append(delta)
        col = poly_mulmod(col, img, ctx.psi)
    rows = [[cols[j][i] for j in range(n)] for i in range(n)]
    kernel = _kernel_mod_p(rows, p)
    assert len(kernel) == d
    return [ctx.element(v) for v in kernel]


def subfield_reduce_general(
    s: FqElement, d: int
) -> tuple[FqElement, FqElement]:
    """Kill the top d-1 coefficients of s with a unit from F_{p^d}.

    Generalisation of subfield_reduce to any proper subfield degree d | n:
    returns (r, u) with r = u * s monic of degree <= n - d.
    """
    ctx = s.ctx
    n = ctx.n
    if d >= n or n % d:
        raise ValueError("d must be a proper divisor of n")
    if s.is_zero:
        raise ValueError("cannot reduce zero")
    basis = subfield_basis(ctx, d)
    prods = [b * s for b in basis]
    # d-1 homogeneous conditions on d unknowns
    rows = [
        [prods[j].rep[n - 1 - i] for j in range(d)] for i in range(d - 1)
    ]
    for v in _kernel_mod_p(rows, ctx.p) or [[1] + [0] * (d - 1)]:
        u = ctx.zero
        for lam, b in zip(v, basis):
            u = u + lam * b
        if not u.is_zero:
            break
    else:
        raise ValueError("no nonzero unit in the solution space")
    r0 = u * s
    u = pow(r0.rep.leading, -1, ctx.p) * u
    return u * s, u


def _kernel_mod_p(rows: list[list[int]], p: int) -> list[list[int]]:
    """Basis of the right kernel of a matrix over F_p (row-reduced)."""
    if not rows:
        return []
    ncols = len(rows[0])
    m = [[x % p for x in row] for row in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-m[i][fc]) % p
        basis.append(v)
    return basis
