"""Lattice constructions lifting a finite-field target to a small-norm preimage.

Five reductions, in increasing sophistication: the naive coefficient lift,
the numerator/denominator fraction lattice, the monic lattices for JLSV1
and gJL/Conjugation, and the quadratic-subfield lattices (alone and
combined with the original target).  Every emitted candidate carries a
machine-checkable cofactor witness: its image in F_{p^n} equals the target
times an element of a declared proper subfield, so discrete logs agree
modulo ell without ever computing one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

from .arith import IntPoly, ModPoly, resultant
from .fields import FieldCtx, FqElement, Tower, make_monic, subfield_reduce
from .lattice import DEFAULT_PARAMS, IntMatrix, LLLParams, lll_reduce
from .polyselect import Selection
from .smooth import CONJ, GJL, JLSV1

NAIVE = "naive"
FRACTION_NUM_DEN = "fraction_num_den"
MONIC_JLSV1 = "monic_jlsv1"
MONIC_GJL_CONJ = "monic_gjl_conj"
SUBFIELD_ONLY = "subfield_only"
SUBFIELD_COMBINED = "subfield_combined"


class DegenerateLatticeError(ValueError):
    """All reduced rows failed the cofactor check; re-randomize the target."""


@dataclass(frozen=True)
class Preimage:
    """Element of Z[x]/(f) mapping onto a subfield multiple of the target."""

    f: IntPoly
    coeffs: tuple[int, ...]
    provenance: str
    norm: int
    cofactor_subfield: int  # degree d of the subfield holding the cofactor
    cofactor: tuple[int, ...]  # power-basis coordinates of rho(this)/target

    @property
    def poly(self) -> IntPoly:
        return IntPoly(self.coeffs)

    @property
    def norm_bits(self) -> int:
        return abs(self.norm).bit_length()


@dataclass(frozen=True)
class ReductionReport:
    """All LLL rows of one reduction, as verified preimage candidates."""

    candidates: tuple[Preimage, ...]
    e: Fraction
    predicted_norm_bits: float
    determinant: int
    params: LLLParams
    provenance: str
    rows: tuple[tuple[int, ...], ...]  # raw reduced basis, for combinations

    @property
    def best(self) -> Preimage:
        return self.candidates[0]

    @property
    def norm_bits(self) -> tuple[int, ...]:
        return tuple(c.norm_bits for c in self.candidates)


def _exponent(sel: Selection, dim: int, det_exp: int) -> Fraction:
    """Theoretical norm exponent e with Norm = O(Q^e) for a lattice shape.

    Norm ~ ||cand||^{deg f} * ||f||^{deg cand} with ||cand|| ~ p^{det_exp/dim}
    and ||f|| ~ p^{1/2} for JLSV1, O(1) otherwise.
    """
    n = sel.n
    e = Fraction(det_exp, dim) * Fraction(sel.f.degree, n)
    if sel.method == JLSV1:
        e += Fraction(dim - 1, 1) * Fraction(1, 2 * n)
    return e


def rho(ctx: FieldCtx, poly: IntPoly) -> FqElement:
    """Reduction of an integer polynomial modulo (p, psi)."""
    return ctx.element(ModPoly(poly.coeffs, ctx.p))


def naive_lift(s: FqElement, f: IntPoly) -> Preimage:
    """Coefficient-wise lift into [0, p); norm exponent is the worst case."""
    if s.rep.degree >= f.degree:
        raise ValueError("target degree must be below deg f")
    lift = s.rep.lift()
    return Preimage(
        f=f,
        coeffs=lift.coeffs,
        provenance=NAIVE,
        norm=abs(resultant(f, lift)),
        cofactor_subfield=1,
        cofactor=(1,),
    )


def _candidate(
    sel: Selection,
    ctx: FieldCtx,
    s_inv: FqElement,
    row: Sequence[int],
    provenance: str,
    subfield_d: int,
) -> Optional[Preimage]:
    poly = IntPoly(row)
    if poly.is_zero:
        return None
    cof = rho(ctx, poly) * s_inv
    if cof.is_zero:
        return None
    if subfield_d == 1:
        if not cof.in_prime_field:
            return None
    elif cof.frobenius(subfield_d) != cof:
        return None
    return Preimage(
        f=sel.f,
        coeffs=poly.coeffs,
        provenance=provenance,
        norm=abs(resultant(sel.f, poly)),
        cofactor_subfield=subfield_d,
        cofactor=cof.rep.coeffs,
    )


def _build_report(
    sel: Selection,
    ctx: FieldCtx,
    target: FqElement,
    lattice: IntMatrix,
    det_exp: int,
    provenance: str,
    subfield_d: int,
    params: LLLParams,
) -> ReductionReport:
    reduced = lll_reduce(lattice, params)
    s_inv = target.inverse()
    cands = []
    for i in range(reduced.basis.nrows):
        c = _candidate(sel, ctx, s_inv, reduced.basis.row(i), provenance, subfield_d)
        if c is not None:
            cands.append(c)
    if not cands:
        raise DegenerateLatticeError("no reduced row passed the cofactor check")
    cands.sort(key=lambda c: (c.norm_bits, c.norm))
    e = _exponent(sel, lattice.nrows, det_exp)
    return ReductionReport(
        candidates=tuple(cands),
        e=e,
        predicted_norm_bits=float(e) * sel.log2_q,
        determinant=lattice.determinant(),
        params=params,
        provenance=provenance,
        rows=reduced.basis.entries,
    )


def _p_rows(count: int, dim: int, p: int) -> list[list[int]]:
    return [[p if j == i else 0 for j in range(dim)] for i in range(count)]


def _shift_rows(psi: ModPoly, dim: int) -> list[list[int]]:
    """Monic psi-shift rows occupying indices n .. dim-1."""
    n = psi.degree
    rows = []
    for j in range(dim - n):
        row = [0] * j + list(psi.coeffs) + [0] * (dim - n - 1 - j)
        rows.append(row)
    return rows


def _monic_target_row(s: FqElement, dim: int) -> list[int]:
    shat = s.rep.lift()
    row = list(shat.coeffs)
    return row + [0] * (dim - len(row))


def monic_reduce_jlsv1(
    s: FqElement, sel: Selection, params: LLLParams = DEFAULT_PARAMS
) -> ReductionReport:
    """n x n lattice with p-diagonal and the monic target row; det p^(n-1).

    Candidates r satisfy rho(r) = u * s with u in F_p and have norm
    O(Q^{3/2 - 3/(2n)}).
    """
    n = sel.n
    if sel.method != JLSV1:
        raise ValueError("selection method must be jlsv1")
    if s.rep.degree != n - 1:
        raise DegenerateLatticeError(
            "target degree below n-1; multiply by a random subfield element"
        )
    s, _ = make_monic(s)
    rows = _p_rows(n - 1, n, sel.p) + [_monic_target_row(s, n)]
    return _build_report(
        sel, s.ctx, s, IntMatrix(rows), n - 1, MONIC_JLSV1, 1, params
    )


def monic_reduce_gjl_conj(
    s: FqElement, sel: Selection, params: LLLParams = DEFAULT_PARAMS
) -> ReductionReport:
    """d_f x d_f lattice with psi-shift rows; det p^(n-1), norm O(Q^{1-1/n})."""
    n = sel.n
    if sel.method not in (GJL, CONJ):
        raise ValueError("selection method must be gjl or conj")
    d_f = sel.f.degree
    if d_f <= n:
        raise ValueError("gJL/Conjugation requires deg f > n")
    if s.rep.degree != n - 1:
        raise DegenerateLatticeError(
            "target degree below n-1; multiply by a random subfield element"
        )
    s, _ = make_monic(s)
    rows = (
        _p_rows(n - 1, d_f, sel.p)
        + [_monic_target_row(s, d_f)]
        + _shift_rows(sel.psi, d_f)
    )
    return _build_report(
        sel, s.ctx, s, IntMatrix(rows), n - 1, MONIC_GJL_CONJ, 1, params
    )


def monic_reduce(
    s: FqElement, sel: Selection, params: LLLParams = DEFAULT_PARAMS
) -> ReductionReport:
    """Dispatch to the monic lattice matching the selection method."""
    if sel.method == JLSV1:
        return monic_reduce_jlsv1(s, sel, params)
    return monic_reduce_gjl_conj(s, sel, params)


def subfield_lattice_reduce(
    r: FqElement, sel: Selection, params: LLLParams = DEFAULT_PARAMS
) -> ReductionReport:
    """(n-1) x (n-1) lattice on the subfield-reduced target; det p^(n-2).

    r must be monic of degree n-2 (from subfield_reduce); candidates carry
    an F_{p^2} cofactor relative to r.
    """
    n = sel.n
    if r.rep.degree != n - 2 or not r.rep.is_monic:
        raise ValueError("need a monic degree n-2 subfield-reduced target")
    if n == 2:
        # the lattice is 1x1: the reduced target itself is the preimage
        poly = r.rep.lift()
        pre = Preimage(
            f=sel.f,
            coeffs=poly.coeffs,
            provenance=SUBFIELD_ONLY,
            norm=abs(resultant(sel.f, poly)),
            cofactor_subfield=2,
            cofactor=(1,),
        )
        return ReductionReport(
            candidates=(pre,),
            e=Fraction(0),
            predicted_norm_bits=0.0,
            determinant=1,
            params=params,
            provenance=SUBFIELD_ONLY,
            rows=(poly.coeffs,),
        )
    rows = _p_rows(n - 2, n - 1, sel.p) + [_monic_target_row(r, n - 1)]
    return _build_report(
        sel, r.ctx, r, IntMatrix(rows), n - 2, SUBFIELD_ONLY, 2, params
    )


def combined_reduce(
    r: FqElement,
    s: FqElement,
    sel: Selection,
    params: LLLParams = DEFAULT_PARAMS,
) -> ReductionReport:
    """Lattice mixing the subfield-reduced r and the original target s.

    p-diagonal rows 0..n-3, the r row at index n-2, the s row at index n-1,
    then psi-shift rows up to deg f for gJL/Conjugation; det p^(n-2).  Every
    candidate's cofactor relative to s is checked to lie in F_{p^2};
    failures fall back to subfield_lattice_reduce.  Norm O(Q^{3/2-5/(2n)})
    for JLSV1 and O(Q^{1-2/n}) for gJL/Conjugation.
    """
    n = sel.n
    if r.rep.degree != n - 2 or not r.rep.is_monic:
        raise ValueError("need a monic degree n-2 subfield-reduced target")
    if s.rep.degree != n - 1:
        raise DegenerateLatticeError(
            "target degree below n-1; multiply by a random subfield element"
        )
    s, _ = make_monic(s)
    dim = n if sel.method == JLSV1 else sel.f.degree
    rows = (
        _p_rows(n - 2, dim, sel.p)
        + [_monic_target_row(r, dim)]
        + [_monic_target_row(s, dim)]
        + _shift_rows(sel.psi, dim)
    )
    try:
        return _build_report(
            sel, s.ctx, s, IntMatrix(rows), n - 2, SUBFIELD_COMBINED, 2, params
        )
    except DegenerateLatticeError:
        return subfield_lattice_reduce(r, sel, params)


def fraction_reduce(
    s: FqElement, sel: Selection, params: LLLParams = DEFAULT_PARAMS
) -> tuple[Preimage, Preimage]:
    """Numerator/denominator reduction: rho(u) = rho(v) * s with both small.

    2 deg f-dimensional lattice of pairs (u, v) with u = v*s mod (p, psi);
    det p^n, so ||u||, ||v|| ~ p^{n/(2 deg f)}.  Returns the first reduced
    row with an invertible denominator.
    """
    if s.is_zero:
        raise ValueError("cannot reduce zero")
    s, _ = make_monic(s)
    ctx = s.ctx
    n, p = sel.n, sel.p
    D = sel.f.degree
    dim = 2 * D
    rows = []
    for i in range(n):
        rows.append([p if j == i else 0 for j in range(dim)])
    for j in range(D - n):
        rows.append(
            [0] * j + list(sel.psi.coeffs) + [0] * (dim - n - 1 - j)
        )
    xi = ctx.one
    for i in range(D):
        lifted = (xi * s).rep.lift()
        left = list(lifted.coeffs) + [0] * (D - len(lifted.coeffs))
        right = [1 if j == i else 0 for j in range(D)]
        rows.append(left + right)
        xi = xi * ctx.gen
    reduced = lll_reduce(IntMatrix(rows), params)
    for i in range(dim):
        row = reduced.basis.row(i)
        u_poly, v_poly = IntPoly(row[:D]), IntPoly(row[D:])
        if v_poly.is_zero:
            continue
        v_img = rho(ctx, v_poly)
        if v_img.is_zero:
            continue
        u_img = rho(ctx, u_poly)
        if u_img != v_img * s:
            continue
        num = Preimage(
            f=sel.f,
            coeffs=u_poly.coeffs,
            provenance=FRACTION_NUM_DEN,
            norm=abs(resultant(sel.f, u_poly)),
            cofactor_subfield=1,
            cofactor=v_poly.coeffs,
        )
        den = Preimage(
            f=sel.f,
            coeffs=v_poly.coeffs,
            provenance=FRACTION_NUM_DEN,
            norm=abs(resultant(sel.f, v_poly)),
            cofactor_subfield=1,
            cofactor=u_poly.coeffs,
        )
        return num, den
    raise DegenerateLatticeError("all reduced rows had degenerate denominators")


def small_combinations(
    report: ReductionReport,
    sel: Selection,
    target: FqElement,
    radius: int = 1,
) -> ReductionReport:
    """Extend a report with small integer combinations of its LLL rows."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    if radius == 0:
        return report
    ctx = target.ctx
    s_inv = target.inverse()
    d = report.candidates[0].cofactor_subfield
    seen = {c.coeffs for c in report.candidates}
    seen |= {tuple(-x for x in c) for c in seen}
    cands = list(report.candidates)
    k = len(report.rows)
    dim = len(report.rows[0])
    for combo in product(range(-radius, radius + 1), repeat=k):
        if all(c == 0 for c in combo):
            continue
        vec = tuple(
            sum(c * report.rows[i][j] for i, c in enumerate(combo))
            for j in range(dim)
        )
        if vec in seen or tuple(-x for x in vec) in seen:
            continue
        seen.add(vec)
        cand = _candidate(sel, ctx, s_inv, vec, report.provenance, d)
        if cand is not None:
            cands.append(cand)
    cands.sort(key=lambda c: (c.norm_bits, c.norm))
    return ReductionReport(
        candidates=tuple(cands),
        e=report.e,
        predicted_norm_bits=report.predicted_norm_bits,
        determinant=report.determinant,
        params=report.params,
        provenance=report.provenance,
        rows=report.rows,
    )
