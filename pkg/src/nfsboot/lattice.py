"""Exact integer LLL reduction with certified first-vector bounds.

Matrices here are tiny (dimension at most a few dozen) with huge entries,
so Gram-Schmidt runs over exact rationals: no floating-point error model
is needed, and the Lovasz and size-reduction conditions can be checked
exactly after the fact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True, init=False)
class IntMatrix:
    """Row-major integer matrix."""

    nrows: int
    ncols: int
    entries: tuple[tuple[int, ...], ...]

    def __init__(self, rows: Sequence[Sequence[int]]):
        entries = tuple(tuple(int(x) for x in row) for row in rows)
        if not entries or not entries[0]:
            raise ValueError("empty matrix")
        if len({len(r) for r in entries}) != 1:
            raise ValueError("ragged rows")
        object.__setattr__(self, "nrows", len(entries))
        object.__setattr__(self, "ncols", len(entries[0]))
        object.__setattr__(self, "entries", entries)

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def determinant(self) -> int:
        """Exact determinant by fraction-free Bareiss elimination."""
        if not self.is_square:
            raise ValueError("determinant of non-square matrix")
        n = self.nrows
        m = [list(r) for r in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for r in range(k + 1, n):
                    if m[r][k]:
                        m[k], m[r] = m[r], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        ot = list(zip(*other.entries))
        return IntMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in ot] for row in self.entries]
        )


@dataclass(frozen=True)
class LLLParams:
    """Reduction quality parameters, kept rational for exact certification."""

    delta: Fraction = Fraction(999, 1000)
    eta: Fraction = Fraction(501, 1000)

    def __post_init__(self):
        d, e = Fraction(self.delta), Fraction(self.eta)
        object.__setattr__(self, "delta", d)
        object.__setattr__(self, "eta", e)
        if not Fraction(1, 4) < d < 1:
            raise ValueError("delta must lie in (1/4, 1)")
        if not (Fraction(1, 2) < e and e * e < d):
            raise ValueError("eta must lie in (1/2, sqrt(delta))")


DEFAULT_PARAMS = LLLParams()


class SingularLatticeError(ValueError):
    pass


def _norm2(v: Sequence[int]) -> int:
    return sum(x * x for x in v)


def _sorted_rows(rows: list[list[int]]) -> list[list[int]]:
    return sorted(rows, key=lambda r: (_norm2(r), [abs(c) for c in r]))


@dataclass(frozen=True)
class ReducedBasis:
    basis: IntMatrix
    transform: IntMatrix  # transform * input = basis, det = +-1
    params: LLLParams


def lll_reduce(L: IntMatrix, params: LLLParams = DEFAULT_PARAMS) -> ReducedBasis:
    """(eta, delta)-reduce a full-rank square integer basis.

    Returns all reduced rows sorted by Euclidean length together with the
    unimodular transform.  Raises SingularLatticeError on rank-deficient
    input.
    """
    if not L.is_square:
        raise ValueError("lattice basis must be square")
    if L.determinant() == 0:
        raise SingularLatticeError("singular lattice basis")
    n = L.nrows
    b = [list(r) for r in L.entries]
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    delta, eta = params.delta, params.eta

    def core() -> None:
        _, mu, B = gram_schmidt(b)
        k = 1
        while k < n:
            for j in range(k - 1, -1, -1):
                if abs(mu[k][j]) > eta:
                    q = _nearest_int(mu[k][j])
                    if q:
                        b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                        u[k] = [x - q * y for x, y in zip(u[k], u[j])]
                        for t in range(j):
                            mu[k][t] -= q * mu[j][t]
                        mu[k][j] -= q
            if B[k] >= (delta - mu[k][k - 1] ** 2) * B[k - 1]:
                k += 1
            else:
                b[k], b[k - 1] = b[k - 1], b[k]
                u[k], u[k - 1] = u[k - 1], u[k]
                _, mu, B = gram_schmidt(b)
                k = max(k - 1, 1)

    # Re-running after a sort converges immediately in practice; the cap
    # guards pathological ties (ordering is then best-effort, but the
    # trailing core() keeps the reduction conditions true regardless).
    for _ in range(4):
        core()
        order = sorted(range(n), key=lambda i: (_norm2(b[i]), [abs(c) for c in b[i]]))
        if order == list(range(n)):
            break
        b = [b[i] for i in order]
        u = [u[i] for i in order]
    else:
        core()

    basis = IntMatrix(b)
    transform = IntMatrix(u)
    return ReducedBasis(basis=basis, transform=transform, params=params)


def _nearest_int(x: Fraction) -> int:
    return (2 * x.numerator + x.denominator) // (2 * x.denominator)


def gram_schmidt(rows: Sequence[Sequence[int]]):
    """Exact Gram-Schmidt: returns (star vectors, mu, squared norms)."""
    n = len(rows)
    gs: list[list[Fraction]] = []
    mu = [[Fraction(0)] * n for _ in range(n)]
    B: list[Fraction] = []
    for i in range(n):
        star = [Fraction(x) for x in rows[i]]
        for j in range(i):
            num = sum(Fraction(a) * g for a, g in zip(rows[i], gs[j]))
            mu[i][j] = num / B[j]
            star = [s - mu[i][j] * g for s, g in zip(star, gs[j])]
        gs.append(star)
        B.append(sum(s * s for s in star))
    return gs, mu, B


def is_reduced(basis: IntMatrix, params: LLLParams = DEFAULT_PARAMS) -> bool:
    """Exact check of the size-reduction and Lovasz conditions."""
    _, mu, B = gram_schmidt(basis.entries)
    n = basis.nrows
    for i in range(n):
        for j in range(i):
            if abs(mu[i][j]) > params.eta:
                return False
    for k in range(1, n):
        if B[k] < (params.delta - mu[k][k - 1] ** 2) * B[k - 1]:
            return False
    return True


def _iroot(x: int, k: int) -> int:
    """Floor of the k-th root of a nonnegative integer."""
    if x < 0:
        raise ValueError("negative radicand")
    if x in (0, 1) or k == 1:
        return x
    r = 1 << ((x.bit_length() + k - 1) // k)
    while True:
        nr = ((k - 1) * r + x // r ** (k - 1)) // k
        if nr >= r:
            break
        r = nr
    while r**k > x:
        r -= 1
    return r


def first_vector_bound(L: IntMatrix, params: LLLParams = DEFAULT_PARAMS) -> int:
    """Ceiling of C * |det L|^(1/d) with C = (delta - eta^2)^(-(d-1)/4).

    This is the proven bound on the first reduced vector; the sign of the
    exponent follows the worst-case constant 1.075^(d-1) it must reproduce
    at (eta, delta) = (0.5, 0.999).  Computed exactly: the returned k is
    the least integer with k^(4d) * den >= num.
    """
    if not L.is_square:
        raise ValueError("square matrix required")
    d = L.nrows
    det = abs(L.determinant())
    c = params.delta - params.eta**2  # in (0, 1)
    # bound^(4d) = (1/c)^(d(d-1)) * det^4
    num = c.denominator ** (d * (d - 1)) * det**4
    den = c.numerator ** (d * (d - 1))
    k = _iroot(num // den, 4 * d)
    while k ** (4 * d) * den < num:
        k += 1
    return k


def heuristic_constant(d: int) -> float:
    """Average-case LLL length constant observed on random lattices."""
    return 1.021**d


def worst_case_constant(d: int) -> float:
    """Worst-case LLL length constant at (eta, delta) near (0.5, 0.999)."""
    return 1.075 ** (d - 1)
