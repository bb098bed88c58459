"""Polynomial selection for NFS over F_{p^n}: JLSV1, gJL and Conjugation.

Each method outputs a pair (f, g) of integer polynomials sharing an
irreducible degree-n factor psi modulo p, trading degree against
coefficient size.  Built-in candidate families draw coefficients from
{-1, 0, 1} in deterministic seed order, so selections are reproducible.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Any, Optional

from .arith import (
    IntPoly,
    ModPoly,
    ReconstructionError,
    distinct_degree_factor,
    is_irreducible_mod_p,
    poly_gcd_mod_p,
    poly_mod,
    rational_reconstruction,
    resultant,
    sqrt_mod,
)
from .fields import FieldCtx, Tower, detect_tower
from .lattice import IntMatrix, lll_reduce
from .smooth import CONJ, GJL, JLSV1, is_probable_prime

DEFAULT_TRIALS = 10**4

_WITNESS_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]


class SelectionError(RuntimeError):
    """Trial budget exhausted without an admissible (f, g, psi)."""


@dataclass(frozen=True)
class Selection:
    """One polynomial-selection outcome for F_{p^n}."""

    p: int
    n: int
    method: str
    f: IntPoly
    g: IntPoly
    psi: ModPoly
    seed: int = 0
    aux: dict[str, Any] = field(default_factory=dict)

    def field_ctx(self, ell: Optional[int] = None) -> FieldCtx:
        return FieldCtx(p=self.p, n=self.n, psi=self.psi, ell=ell)

    @property
    def log2_q(self) -> float:
        return self.n * math.log2(self.p)


def probably_irreducible_over_q(f: IntPoly) -> bool:
    """Probabilistic witness: irreducible modulo some small prime.

    Sufficient but not necessary; adequate for the sparse candidate
    families used here, and reported as probabilistic by verify_selection.
    """
    if f.degree <= 0:
        return False
    if f.degree == 1:
        return True
    for q in _WITNESS_PRIMES:
        if f.leading % q == 0:
            continue
        if is_irreducible_mod_p(ModPoly(f.coeffs, q)):
            return True
    return False


def _draw_poly(rng: random.Random, degree: int, monic: bool) -> IntPoly:
    """Random {-1,0,1}-coefficient polynomial of exact degree."""
    coeffs = [rng.choice((-1, 0, 1)) for _ in range(degree)]
    if monic:
        coeffs.append(1)
    else:
        coeffs.append(rng.choice((-1, 1)))
    return IntPoly(coeffs)


def _ceil_sqrt(p: int) -> int:
    r = math.isqrt(p)
    return r if r * r == p else r + 1


def select_jlsv1(
    p: int,
    n: int,
    seed: int = 0,
    f0: Optional[IntPoly] = None,
    f1: Optional[IntPoly] = None,
    trials: int = DEFAULT_TRIALS,
) -> Selection:
    """JLSV1: f = f0 + y*f1 with y near ceil(sqrt p); g = v*f0 + u*f1.

    Both f and g have degree n and coefficients of size O(sqrt p); psi is
    f mod p itself.  (u, v) is the rational reconstruction of y mod p, so
    g = v*f mod p and the shared factor is automatic.
    """
    if n < 2:
        raise ValueError("extension degree must be at least 2")
    rng = random.Random(seed)
    fixed = f0 is not None or f1 is not None
    if fixed and (f0 is None or f1 is None or f1.degree >= f0.degree or f0.degree != n):
        raise ValueError("need deg f1 < deg f0 = n when supplying the pair")
    y_start = _ceil_sqrt(p)
    budget = trials
    while budget > 0:
        if not fixed:
            f0 = _draw_poly(rng, n, monic=True)
            f1 = _draw_poly(rng, rng.randrange(n), monic=False)
        for dy in range(min(budget, 64)):
            budget -= 1
            y = y_start + dy
            f = f0 + IntPoly([y]) * f1
            fp = ModPoly(f.coeffs, p)
            if not is_irreducible_mod_p(fp):
                continue
            try:
                u, v = rational_reconstruction(y % p, p)
            except ReconstructionError:
                continue
            g = IntPoly([v]) * f0 + IntPoly([u]) * f1
            if g.degree != n or resultant(f, g) == 0:
                continue
            return Selection(
                p=p, n=n, method=JLSV1, f=f, g=g, psi=fp.monic(), seed=seed,
                aux={"y": y, "u": u, "v": v,
                     "f0": list(f0.coeffs), "f1": list(f1.coeffs)},
            )
        if fixed:
            y_start += 64
    raise SelectionError("jlsv1 trial budget exhausted")


def _gjl_lattice(psi: ModPoly, d: int) -> IntMatrix:
    """(d+1) x (d+1) basis of {g : deg g <= d, psi | g mod p}, det p^n."""
    p, n = psi.p, psi.degree
    rows = []
    for i in range(n):
        rows.append([p if j == i else 0 for j in range(d + 1)])
    for j in range(d + 1 - n):
        shifted = [0] * j + [c for c in psi.coeffs]
        rows.append(shifted + [0] * (d + 1 - len(shifted)))
    return IntMatrix(rows)


def select_gjl(
    p: int,
    n: int,
    d: Optional[int] = None,
    seed: int = 0,
    trials: int = DEFAULT_TRIALS,
) -> Selection:
    """gJL: tiny f of degree d+1 with a degree-n factor psi mod p; g by LLL.

    g spans the same psi modulo p but has degree d and coefficients near
    p^{n/(d+1)}, the first row of the reduced p-row/psi-shift lattice.
    """
    if n < 2:
        raise ValueError("extension degree must be at least 2")
    d = n if d is None else d
    if d < n:
        raise ValueError("gJL needs d >= n")
    rng = random.Random(seed)
    for _ in range(trials):
        f = _draw_poly(rng, d + 1, monic=True)
        if not probably_irreducible_over_q(f):
            continue
        fp = ModPoly(f.coeffs, p)
        psi = distinct_degree_factor(fp, n)
        if psi is None:
            continue
        basis = lll_reduce(_gjl_lattice(psi, d)).basis
        g = IntPoly(basis.row(0))
        if g.degree != d or resultant(f, g) == 0:
            continue
        if poly_gcd_mod_p(fp, ModPoly(g.coeffs, p)) != psi:
            continue
        return Selection(
            p=p, n=n, method=GJL, f=f, g=g, psi=psi, seed=seed, aux={"d": d}
        )
    raise SelectionError("gJL trial budget exhausted")


def _quadratic_root_mod_p(a: int, b: int, p: int) -> Optional[int]:
    """A root of Y^2 + aY + b mod p, or None."""
    disc = (a * a - 4 * b) % p
    try:
        sq = sqrt_mod(disc, p)
    except ValueError:
        return None
    return (-a + sq) * pow(2, -1, p) % p


def _conjugation_f(g0: IntPoly, g1: IntPoly, a: int, b: int) -> IntPoly:
    """Res_Y(Y^2 + aY + b, g0 + Y*g1) = g0^2 - a*g0*g1 + b*g1^2."""
    return g0 * g0 - IntPoly([a]) * g0 * g1 + IntPoly([b]) * g1 * g1


def _finish_conjugation(
    p: int, n: int, seed: int, a: int, b: int, y: int,
    g0: IntPoly, g1: IntPoly,
) -> Optional[Selection]:
    psi = ModPoly(g0.coeffs, p) + ModPoly([y], p) * ModPoly(g1.coeffs, p)
    if psi.degree != n or not is_irreducible_mod_p(psi):
        return None
    f = _conjugation_f(g0, g1, a, b)
    if not probably_irreducible_over_q(f):
        return None
    try:
        u, v = rational_reconstruction(y, p)
    except ReconstructionError:
        return None
    g = IntPoly([v]) * g0 + IntPoly([u]) * g1
    if g.degree != n or resultant(f, g) == 0:
        return None
    if poly_gcd_mod_p(ModPoly(f.coeffs, p), ModPoly(g.coeffs, p)) != psi.monic():
        return None
    return Selection(
        p=p, n=n, method=CONJ, f=f, g=g, psi=psi.monic(), seed=seed,
        aux={"p_y": [b, a, 1], "y": y, "u": u, "v": v,
             "g0": list(g0.coeffs), "g1": list(g1.coeffs)},
    )


def _quadratic_candidates():
    """Monic quadratics Y^2 + aY + b, irreducible over Q, small first."""
    seen = []
    for radius in range(1, 4):
        for a in range(-radius, radius + 1):
            for b in range(-radius, radius + 1):
                if max(abs(a), abs(b)) != radius or b == 0:
                    continue
                disc = a * a - 4 * b
                if disc >= 0 and math.isqrt(disc) ** 2 == disc:
                    continue  # reducible over Q
                seen.append((a, b))
    return seen


def select_conjugation(
    p: int, n: int, seed: int = 0, trials: int = DEFAULT_TRIALS
) -> Selection:
    """Conjugation: f = Res_Y(P_y, g0 + Y g1) of degree 2n, tiny coefficients.

    P_y = Y^2 + aY + b must have a root y mod p; psi = g0 + y*g1 and
    g = v*g0 + u*g1 with (u, v) reconstructing y, giving ||g|| = O(sqrt p).
    """
    if n < 2:
        raise ValueError("extension degree must be at least 2")
    rng = random.Random(seed)
    quads = [q for q in _quadratic_candidates()]
    budget = trials
    while budget > 0:
        for (a, b) in quads:
            if budget <= 0:
                break
            budget -= 1
            y = _quadratic_root_mod_p(a, b, p)
            if y is None:
                continue
            g0 = _draw_poly(rng, n, monic=True)
            g1 = _draw_poly(rng, rng.randrange(n), monic=False)
            sel = _finish_conjugation(p, n, seed, a, b, y, g0, g1)
            if sel is not None:
                return sel
    raise SelectionError("conjugation trial budget exhausted")


def _reciprocal_pairs(rng: random.Random, n: int):
    """Small reciprocal (g0, g1) pairs; psi = g0 + y*g1 is then reciprocal."""
    m = n // 2
    while True:
        half = [rng.choice((-1, 0, 1)) for _ in range(m)]
        g0_coeffs = [1] + half[: m - 1] + [half[m - 1]] + half[m - 2 :: -1] + [1]
        g0 = IntPoly(g0_coeffs[: n + 1])
        inner = [rng.choice((-1, 0, 1)) for _ in range(m)]
        g1_coeffs = [0] + inner + inner[-2::-1] + [0]
        g1 = IntPoly(g1_coeffs[:n])
        if g1.is_zero:
            continue
        yield g0, g1


def select_conjugation_with_subfield_tower(
    p: int, n: int, seed: int = 0, trials: int = DEFAULT_TRIALS
) -> tuple[Selection, Tower]:
    """Conjugation selection whose psi carries a quadratic-tower structure.

    For n = 4 every reciprocal psi works: X^4 + y1 X^3 + (y0+2) X^2 + y1 X + 1
    factors as (X^2 - YX + 1)(X^2 - Y^p X + 1) over F_{p^2}.  Candidates are
    drawn reciprocal and certified by detect_tower.
    """
    if n % 2 or n < 4:
        raise ValueError("tower form needs even n >= 4")
    rng = random.Random(seed)
    quads = _quadratic_candidates()
    pairs = _reciprocal_pairs(rng, n)
    budget = trials
    while budget > 0:
        for (a, b) in quads:
            if budget <= 0:
                break
            budget -= 1
            y = _quadratic_root_mod_p(a, b, p)
            if y is None:
                continue
            g0, g1 = next(pairs)
            sel = _finish_conjugation(p, n, seed, a, b, y, g0, g1)
            if sel is None:
                continue
            tower = detect_tower(sel.field_ctx())
            if tower is None:
                continue
            return sel, tower
    raise SelectionError("tower conjugation trial budget exhausted")


@dataclass(frozen=True)
class SelectionReport:
    ok: bool
    issues: tuple[str, ...]
    deg_f: int
    deg_g: int
    f_norm_bits: int
    g_norm_bits: int
    irreducibility_witnessed: bool


def verify_selection(sel: Selection) -> SelectionReport:
    """Check every Selection invariant; failures are reported, not raised."""
    issues = []
    p, n = sel.p, sel.n
    if not is_probable_prime(p):
        issues.append("p is not prime")
    fp = ModPoly(sel.f.coeffs, p)
    gp = ModPoly(sel.g.coeffs, p)
    if sel.psi.degree != n:
        issues.append("psi degree != n")
    if not sel.psi.is_monic:
        issues.append("psi not monic")
    if not is_irreducible_mod_p(sel.psi):
        issues.append("psi reducible mod p")
    if poly_gcd_mod_p(fp, gp) != sel.psi:
        issues.append("gcd(f, g) mod p is not psi")
    witnessed = probably_irreducible_over_q(sel.f) and probably_irreducible_over_q(
        sel.g
    )
    sqrt_bits = math.isqrt(p).bit_length()
    if sel.method == JLSV1:
        if sel.f.degree != n or sel.g.degree != n:
            issues.append("JLSV1 degrees must both equal n")
        if sel.f.inf_norm.bit_length() > sqrt_bits + 4:
            issues.append("JLSV1 ||f|| exceeds O(sqrt p)")
        if sel.g.inf_norm.bit_length() > sqrt_bits + 4:
            issues.append("JLSV1 ||g|| exceeds O(sqrt p)")
    elif sel.method == GJL:
        d = sel.aux.get("d", sel.g.degree)
        if sel.f.degree != d + 1:
            issues.append("gJL deg f must be d+1")
        if sel.f.inf_norm > 4:
            issues.append("gJL ||f|| must be tiny")
        expect = n * p.bit_length() / (d + 1)
        if sel.g.inf_norm.bit_length() > expect + 8:
            issues.append("gJL ||g|| exceeds O(Q^{1/(d+1)})")
    elif sel.method == CONJ:
        if sel.f.degree != 2 * n:
            issues.append("conjugation deg f must be 2n")
        if sel.f.inf_norm > 16:
            issues.append("conjugation ||f|| must be tiny")
        if sel.g.degree != n:
            issues.append("conjugation deg g must be n")
        if sel.g.inf_norm.bit_length() > sqrt_bits + 4:
            issues.append("conjugation ||g|| exceeds O(sqrt p)")
    else:
        issues.append(f"unknown method {sel.method!r}")
    return SelectionReport(
        ok=not issues,
        issues=tuple(issues),
        deg_f=sel.f.degree,
        deg_g=sel.g.degree,
        f_norm_bits=sel.f.inf_norm.bit_length(),
        g_norm_bits=sel.g.inf_norm.bit_length(),
        irreducibility_witnessed=witnessed,
    )
