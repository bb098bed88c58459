"""Booting-step driver: randomize, reduce, test smoothness, certify.

A boot certificate is a self-contained, re-checkable record: anyone can
recompute s^t, confirm the preimage maps to a subfield multiple of it,
recompute the norm resultant, and re-multiply the factorization.  No
discrete log is ever computed or claimed.
"""

from __future__ import annotations

import math
import random
import time
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Optional

from .arith import IntPoly, ModPoly, resultant
from .fields import (
    DegenerateTargetError,
    FieldCtx,
    FqElement,
    Tower,
    detect_tower,
    make_monic,
    proper_subfield_degree,
    subfield_reduce,
)
from .polyselect import Selection
from .preimage import (
    DegenerateLatticeError,
    ReductionReport,
    combined_reduce,
    monic_reduce,
    small_combinations,
)
from .smooth import (
    DEFAULT_EFFORT,
    Factorization,
    PLAIN,
    SUBFIELD,
    Smoothness,
    booting_constants,
    ComplexityProfile,
    dickman_rho,
    factor_with_bound,
    is_probable_prime,
    norm_exponent,
)


class BootError(RuntimeError):
    """Search failed; carries best-seen statistics."""

    def __init__(self, message: str, stats: Optional[dict] = None):
        super().__init__(message)
        self.stats = stats or {}


@dataclass(frozen=True)
class BootConfig:
    seed: int = 0
    max_trials: int = 1000
    workers: int = 1
    radius: int = 1
    effort: int = DEFAULT_EFFORT
    strategy: str = "auto"  # auto | monic | subfield-combined


@dataclass(frozen=True)
class BootCertificate:
    p: int
    n: int
    method: str
    variant: str
    f: tuple[int, ...]
    psi: tuple[int, ...]
    ell: int
    s: tuple[int, ...]
    t: int
    provenance: str
    preimage: tuple[int, ...]
    norm: int
    factors: tuple[tuple[int, int], ...]
    bound: int
    cofactor_subfield: int
    candidate_index: int
    combination: tuple[int, ...]
    seed: int
    trials: int
    tested: int  # smoothness tests performed before success (this worker)
    wall_time: float


def _combination_coeffs(
    rows: tuple[tuple[int, ...], ...], vec: tuple[int, ...]
) -> tuple[int, ...]:
    """Express vec as an integer combination of the (square) basis rows."""
    k = len(rows)
    m = [[Fraction(rows[i][j]) for i in range(k)] for j in range(len(vec))]
    b = [Fraction(v) for v in vec]
    # Gaussian elimination on the k x k system (rows^T) c = vec
    for col in range(k):
        piv = next(i for i in range(col, len(m)) if m[i][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        b[col], b[piv] = b[piv], b[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        b[col] *= inv
        for i in range(len(m)):
            if i != col and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[col])]
                b[i] -= f * b[col]
    out = []
    for i in range(k):
        if b[i].denominator != 1:
            raise ValueError("vector not in the row lattice")
        out.append(int(b[i]))
    return tuple(out)


def _reduce_trial(
    ctx: FieldCtx,
    sel: Selection,
    tower: Optional[Tower],
    s_t: FqElement,
    config: BootConfig,
) -> Optional[ReductionReport]:
    """One trial's reduction chain; None when the target degenerates."""
    s_t, _ = make_monic(s_t)
    use_subfield = (
        tower is not None
        and config.strategy in ("auto", "subfield-combined")
        and ctx.n % 2 == 0
    )
    try:
        if use_subfield:
            r, _ = subfield_reduce(s_t, tower)
            report = combined_reduce(r, s_t, sel)
        else:
            report = monic_reduce(s_t, sel)
    except (DegenerateTargetError, DegenerateLatticeError):
        return None
    if config.radius > 0:
        report = small_combinations(report, sel, s_t, radius=config.radius)
    return report


def _search_range(
    ctx: FieldCtx,
    sel: Selection,
    tower: Optional[Tower],
    s: FqElement,
    B: int,
    config: BootConfig,
    trial_indices: range,
) -> Optional[BootCertificate]:
    """Scan a slice of the seeded t-stream; all workers share the stream."""
    if ctx.ell is None:
        raise BootError("ell must be set on the field context")
    rng = random.Random(config.seed)
    ts = [rng.randrange(1, ctx.ell) for _ in range(trial_indices.stop)]
    start = time.monotonic()
    best_bits = None
    skipped = 0
    tested = 0
    for trial in trial_indices:
        t = ts[trial]
        s_t = s**t
        report = _reduce_trial(ctx, sel, tower, s_t, config)
        if report is None:
            skipped += 1
            continue
        for idx, cand in enumerate(report.candidates):
            if best_bits is None or cand.norm_bits < best_bits:
                best_bits = cand.norm_bits
            tested += 1
            result = factor_with_bound(cand.norm, B, config.effort)
            if result.verdict is not Smoothness.SMOOTH:
                continue
            try:
                combo = _combination_coeffs(report.rows, cand.coeffs + (0,) * (len(report.rows[0]) - len(cand.coeffs)))
            except ValueError:
                combo = ()
            variant = SUBFIELD if cand.cofactor_subfield > 1 else PLAIN
            return BootCertificate(
                p=ctx.p,
                n=ctx.n,
                method=sel.method,
                variant=variant,
                f=sel.f.coeffs,
                psi=sel.psi.coeffs,
                ell=ctx.ell,
                s=s.rep.coeffs,
                t=t,
                provenance=cand.provenance,
                preimage=cand.coeffs,
                norm=cand.norm,
                factors=result.factorization.factors,
                bound=B,
                cofactor_subfield=cand.cofactor_subfield,
                candidate_index=idx,
                combination=combo,
                seed=config.seed,
                trials=trial + 1,
                tested=tested,
                wall_time=time.monotonic() - start,
            )
    raise BootError(
        "trial budget exhausted",
        stats={
            "trials": len(trial_indices),
            "tested": tested,
            "best_norm_bits": best_bits,
            "degenerate_skipped": skipped,
        },
    )


def find_boot(
    ctx: FieldCtx,
    sel: Selection,
    s: FqElement,
    B: int,
    config: BootConfig = BootConfig(),
) -> BootCertificate:
    """Search the seeded t-stream for a B-smooth preimage norm of s^t.

    Deterministic for workers=1.  With several workers the t-stream is
    split into disjoint contiguous chunks; the first certificate found
    wins, so only *which* valid certificate returns may vary.
    """
    if s.is_zero:
        raise ValueError("target is zero")
    if B < 2:
        raise ValueError("bound must be at least 2")
    if proper_subfield_degree(s) is not None:
        import warnings

        warnings.warn("target lies in a proper subfield; its log is trivial mod ell")
    tower = None
    if ctx.n % 2 == 0 and ctx.n >= 4 and config.strategy != "monic":
        tower = detect_tower(ctx)
    if config.workers <= 1:
        return _search_range(
            ctx, sel, tower, s, B, config, range(config.max_trials)
        )
    chunk = (config.max_trials + config.workers - 1) // config.workers
    ranges = [
        range(i, min(i + chunk, config.max_trials))
        for i in range(0, config.max_trials, chunk)
    ]
    errors = []
    with ProcessPoolExecutor(max_workers=config.workers) as pool:
        futures = {
            pool.submit(_search_range, ctx, sel, tower, s, B, config, r)
            for r in ranges
        }
        try:
            while futures:
                done, futures = wait(futures, return_when=FIRST_COMPLETED)
                for fut in done:
                    try:
                        return fut.result()
                    except BootError as exc:
                        errors.append(exc)
        finally:
            for fut in futures:
                fut.cancel()
    stats = [e.stats for e in errors]
    raise BootError("trial budget exhausted in all workers", {"workers": stats})


@dataclass(frozen=True)
class VerifyReport:
    ok: bool
    failures: tuple[str, ...]


def verify_boot(cert: BootCertificate) -> VerifyReport:
    """Re-derive every relation the certificate claims, from scratch."""
    failures = []
    try:
        psi = ModPoly(cert.psi, cert.p)
        ctx = FieldCtx(p=cert.p, n=cert.n, psi=psi, ell=cert.ell)
    except ValueError as exc:
        return VerifyReport(False, (f"field context invalid: {exc}",))
    if not (1 <= cert.t <= cert.ell - 1):
        failures.append("t outside [1, ell-1]")
    f = IntPoly(cert.f)
    pre = IntPoly(cert.preimage)
    norm = abs(resultant(f, pre))
    if norm != cert.norm:
        failures.append("norm is not |Res(f, preimage)|")
    prod = 1
    for q, e in cert.factors:
        prod *= q**e
        if q > cert.bound:
            failures.append(f"factor {q} exceeds the bound")
        if not is_probable_prime(q):
            failures.append(f"factor {q} is not prime")
    if prod != cert.norm:
        failures.append("factor product mismatch")
    s = ctx.element(list(cert.s))
    if s.is_zero:
        failures.append("target is zero")
    else:
        s_t = s**cert.t
        img = ctx.element(ModPoly(cert.preimage, cert.p))
        if img.is_zero:
            failures.append("preimage maps to zero")
        else:
            cof = img * s_t.inverse()
            d = cert.cofactor_subfield
            if d == 1:
                ok = cof.in_prime_field
            elif ctx.n % d == 0 and d < ctx.n:
                ok = cof.frobenius(d) == cof
            else:
                ok = False
                failures.append("declared cofactor subfield is not proper")
            if not ok and "declared cofactor subfield is not proper" not in failures:
                failures.append("cofactor not in the declared subfield")
    return VerifyReport(ok=not failures, failures=tuple(failures))


@dataclass(frozen=True)
class Prediction:
    profile: ComplexityProfile
    recommended_B_bits: float
    norm_bits: float
    expected_trials: Optional[float]  # None when B not supplied
    chosen_B_bits: Optional[float]


def predict(
    sel: Selection,
    variant: str = PLAIN,
    B: Optional[int] = None,
) -> Prediction:
    """Asymptotic constants plus Dickman-rho trial-count estimate.

    The recommended smoothness bound is L_Q[2/3, gamma]; when a concrete B
    is given, expected trials = 1/rho(norm_bits / log2 B).
    """
    e = norm_exponent(sel.method, sel.n, variant)
    profile = booting_constants(
        e, method=sel.method, n=sel.n, variant=variant, Q_bits=sel.log2_q
    )
    norm_bits = float(e) * sel.log2_q
    expected = None
    chosen = None
    if B is not None:
        chosen = math.log2(B)
        u = norm_bits / chosen
        expected = 1.0 / dickman_rho(u) if u > 1 else 1.0
    return Prediction(
        profile=profile,
        recommended_B_bits=profile.special_q_bits,
        norm_bits=norm_bits,
        expected_trials=expected,
        chosen_B_bits=chosen,
    )
