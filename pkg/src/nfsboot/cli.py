"""Command-line front end: nfs-boot {polyselect,reduce,boot,verify,complexity,worked-examples}.

All documents are JSON with big integers as decimal strings and
polynomials as little-endian coefficient arrays, so they survive any
JSON parser.  Exit codes: 0 success, 1 negative result (verification
failed, search exhausted), 2 usage / malformed input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from dataclasses import asdict
from typing import Any, Optional

from .arith import IntPoly, ModPoly
from .boot import (
    BootCertificate,
    BootConfig,
    BootError,
    find_boot,
    predict,
    verify_boot,
)
from .fields import TowerError, detect_tower, find_ell, make_monic, subfield_reduce
from .lattice import LLLParams
from .polyselect import (
    Selection,
    SelectionError,
    select_conjugation,
    select_conjugation_with_subfield_tower,
    select_gjl,
    select_jlsv1,
    verify_selection,
)
from .preimage import (
    DegenerateLatticeError,
    ReductionReport,
    combined_reduce,
    fraction_reduce,
    monic_reduce,
    naive_lift,
    small_combinations,
    subfield_lattice_reduce,
)
from .smooth import (
    CONJ,
    GJL,
    JLSV1,
    PLAIN,
    SUBFIELD,
    baseline_exponents,
    booting_constants,
    norm_exponent,
)
from .worked_examples import run_checks

DOC_VERSION = 1
LOG2_10 = math.log2(10)


# ---------------------------------------------------------------- documents


def _enc_int(v: int) -> str:
    return str(v)


def _enc_poly(coeffs) -> list[str]:
    return [str(c) for c in coeffs]


def _dec_poly(arr) -> list[int]:
    return [int(c) for c in arr]


def _digest(doc: dict) -> str:
    blob = json.dumps(doc, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def params_to_doc(sel: Selection, ell: Optional[int]) -> dict:
    aux = {}
    for k, v in sel.aux.items():
        if isinstance(v, int):
            aux[k] = str(v)
        elif isinstance(v, (list, tuple)):
            aux[k] = [str(c) for c in v]
        else:
            aux[k] = v
    return {
        "version": DOC_VERSION,
        "kind": "params",
        "p": _enc_int(sel.p),
        "n": sel.n,
        "method": sel.method,
        "f": _enc_poly(sel.f.coeffs),
        "g": _enc_poly(sel.g.coeffs),
        "psi": _enc_poly(sel.psi.coeffs),
        "ell": _enc_int(ell) if ell else None,
        "seed": sel.seed,
        "aux": aux,
    }


def params_from_doc(doc: dict) -> tuple[Selection, Optional[int]]:
    if doc.get("kind") != "params":
        raise ValueError("not a params document")
    p = int(doc["p"])
    sel = Selection(
        p=p,
        n=int(doc["n"]),
        method=doc["method"],
        f=IntPoly(_dec_poly(doc["f"])),
        g=IntPoly(_dec_poly(doc["g"])),
        psi=ModPoly(_dec_poly(doc["psi"]), p),
        seed=int(doc.get("seed", 0)),
    )
    ell = int(doc["ell"]) if doc.get("ell") else None
    return sel, ell


def cert_to_doc(cert: BootCertificate) -> dict:
    core = {
        "p": _enc_int(cert.p),
        "n": cert.n,
        "f": _enc_poly(cert.f),
        "psi": _enc_poly(cert.psi),
        "ell": _enc_int(cert.ell),
    }
    return {
        "version": DOC_VERSION,
        "kind": "certificate",
        **core,
        "params_digest": _digest(core),
        "method": cert.method,
        "variant": cert.variant,
        "s": _enc_poly(cert.s),
        "t": _enc_int(cert.t),
        "provenance": cert.provenance,
        "preimage": _enc_poly(cert.preimage),
        "norm": _enc_int(cert.norm),
        "factors": [[_enc_int(q), e] for q, e in cert.factors],
        "bound": _enc_int(cert.bound),
        "cofactor_subfield": cert.cofactor_subfield,
        "candidate_index": cert.candidate_index,
        "combination": [str(c) for c in cert.combination],
        "seed": cert.seed,
        "trials": cert.trials,
        "tested": cert.tested,
        "wall_time": cert.wall_time,
    }


def cert_from_doc(doc: dict) -> BootCertificate:
    if doc.get("kind") != "certificate":
        raise ValueError("not a certificate document")
    core = {
        "p": doc["p"],
        "n": doc["n"],
        "f": doc["f"],
        "psi": doc["psi"],
        "ell": doc["ell"],
    }
    if doc.get("params_digest") and _digest(core) != doc["params_digest"]:
        raise ValueError("params digest mismatch; document was altered")
    return BootCertificate(
        p=int(doc["p"]),
        n=int(doc["n"]),
        method=doc["method"],
        variant=doc["variant"],
        f=tuple(_dec_poly(doc["f"])),
        psi=tuple(_dec_poly(doc["psi"])),
        ell=int(doc["ell"]),
        s=tuple(_dec_poly(doc["s"])),
        t=int(doc["t"]),
        provenance=doc["provenance"],
        preimage=tuple(_dec_poly(doc["preimage"])),
        norm=int(doc["norm"]),
        factors=tuple((int(q), int(e)) for q, e in doc["factors"]),
        bound=int(doc["bound"]),
        cofactor_subfield=int(doc["cofactor_subfield"]),
        candidate_index=int(doc["candidate_index"]),
        combination=tuple(int(c) for c in doc["combination"]),
        seed=int(doc["seed"]),
        trials=int(doc["trials"]),
        tested=int(doc.get("tested", 0)),
        wall_time=float(doc["wall_time"]),
    )


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SystemExit(f"error: cannot read {path}: {exc}")


def _save_json(path: Optional[str], doc: dict) -> None:
    text = json.dumps(doc, indent=2)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _parse_target(spec: str, n: int) -> list[int]:
    try:
        coeffs = [int(c) for c in spec.replace(" ", "").split(",") if c != ""]
    except ValueError:
        raise SystemExit(f"error: target must be comma-separated integers: {spec!r}")
    if not coeffs or len(coeffs) > n:
        raise SystemExit(f"error: target needs 1..{n} coefficients (little-endian)")
    return coeffs


# ------------------------------------------------------------- subcommands


def cmd_polyselect(args) -> int:
    methods = {
        "jlsv1": lambda: select_jlsv1(args.p, args.n, seed=args.seed),
        "gjl": lambda: select_gjl(args.p, args.n, d=args.d, seed=args.seed),
        "conj": lambda: select_conjugation(args.p, args.n, seed=args.seed),
    }
    try:
        if args.method == "conj-subfield":
            sel, tower = select_conjugation_with_subfield_tower(
                args.p, args.n, seed=args.seed
            )
            print(f"tower: {tower.kind}, quadratic subfield certified")
        else:
            sel = methods[args.method]()
    except (ValueError, SelectionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = verify_selection(sel)
    print(f"method={sel.method} deg f={report.deg_f} deg g={report.deg_g}")
    print(f"||f|| = {report.f_norm_bits} bits, ||g|| = {report.g_norm_bits} bits")
    print(f"conformance: {'ok' if report.ok else 'FAILED ' + str(report.issues)}")
    ell = None
    if args.find_ell:
        ell = find_ell(sel.p, sel.n)
        print(f"ell = {ell} ({ell.bit_length()} bits)")
    _save_json(args.out, params_to_doc(sel, ell))
    return 0 if report.ok else 1


def _run_reduction(sel: Selection, coeffs: list[int], args) -> ReductionReport:
    ctx = sel.field_ctx()
    s = ctx.element(coeffs)
    if s.is_zero:
        raise SystemExit("error: target is zero")
    s, _ = make_monic(s)
    strategy = args.strategy
    if strategy == "auto":
        tower = detect_tower(ctx) if ctx.n % 2 == 0 and ctx.n >= 4 else None
        strategy = "combined" if tower else "monic"
    if strategy == "naive":
        cand = naive_lift(s, sel.f)
        return ReductionReport(
            candidates=(cand,),
            e=baseline_exponents(sel.method, sel.n)["nothing"],
            predicted_norm_bits=float(
                baseline_exponents(sel.method, sel.n)["nothing"] * sel.log2_q
            ),
            determinant=0,
            params=LLLParams(),
            provenance=cand.provenance,
            rows=(cand.coeffs,),
        )
    if strategy == "fraction":
        num, den = fraction_reduce(s, sel)
        return ReductionReport(
            candidates=(num, den),
            e=baseline_exponents(sel.method, sel.n)["fraction"],
            predicted_norm_bits=float(
                baseline_exponents(sel.method, sel.n)["fraction"] * sel.log2_q
            ),
            determinant=sel.p**sel.n,
            params=LLLParams(),
            provenance=num.provenance,
            rows=(num.coeffs, den.coeffs),
        )
    if strategy in ("subfield", "combined"):
        tower = detect_tower(ctx)
        if tower is None:
            raise SystemExit("error: psi has no quadratic tower; use --strategy monic")
        r, _ = subfield_reduce(s, tower)
        if strategy == "subfield":
            return subfield_lattice_reduce(r, sel)
        report = combined_reduce(r, s, sel)
    else:
        report = monic_reduce(s, sel)
    if args.radius > 0:
        report = small_combinations(report, sel, s, radius=args.radius)
    return report


def cmd_reduce(args) -> int:
    sel, _ = params_from_doc(_load_json(args.params))
    coeffs = _parse_target(args.target, sel.n)
    try:
        report = _run_reduction(sel, coeffs, args)
    except (DegenerateLatticeError, TowerError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"strategy={args.strategy} provenance={report.provenance}")
    if report.e is not None:
        print(
            f"predicted: norm = Q^{float(report.e):.4f}"
            f" ~ {report.predicted_norm_bits:.0f} bits"
        )
    for i, cand in enumerate(report.candidates):
        print(
            f"  candidate {i}: {cand.norm_bits} bits"
            f" ({len(str(abs(cand.norm)))} digits),"
            f" cofactor in F_p^{cand.cofactor_subfield}"
        )
    if args.out:
        doc = {
            "version": DOC_VERSION,
            "kind": "reduction",
            "provenance": report.provenance,
            "candidates": [
                {
                    "coeffs": _enc_poly(c.coeffs),
                    "norm": _enc_int(c.norm),
                    "cofactor_subfield": c.cofactor_subfield,
                }
                for c in report.candidates
            ],
        }
        _save_json(args.out, doc)
    return 0


def cmd_boot(args) -> int:
    sel, ell = params_from_doc(_load_json(args.params))
    if args.ell:
        ell = args.ell
    if ell is None:
        print("error: no ell in params; pass --ell or rerun polyselect --find-ell",
              file=sys.stderr)
        return 2
    ctx = sel.field_ctx(ell)
    coeffs = _parse_target(args.target, sel.n)
    s = ctx.element(coeffs)
    config = BootConfig(
        seed=args.seed,
        max_trials=args.max_trials,
        workers=args.workers,
        radius=args.radius,
        strategy=args.strategy,
    )
    B = 1 << args.B_bits
    pred = predict(sel, B=B)
    print(
        f"predicted norm ~ {pred.norm_bits:.0f} bits,"
        f" expected trials ~ {pred.expected_trials:.1f}"
        f" at B = 2^{args.B_bits}"
    )
    try:
        cert = find_boot(ctx, sel, s, B, config)
    except BootError as exc:
        print(f"boot failed: {exc} {exc.stats}", file=sys.stderr)
        return 1
    print(
        f"t = {cert.t} after {cert.trials} trials"
        f" ({cert.tested} smoothness tests, {cert.wall_time:.2f}s)"
    )
    print(
        f"norm: {cert.norm.bit_length()} bits, {len(cert.factors)} prime factors"
        f" <= 2^{max(q for q, _ in cert.factors).bit_length()}"
        f" via {cert.provenance}"
    )
    _save_json(args.out, cert_to_doc(cert))
    return 0


def cmd_verify(args) -> int:
    try:
        cert = cert_from_doc(_load_json(args.cert))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = verify_boot(cert)
    if report.ok:
        print(f"certificate OK: t={cert.t}, norm {cert.norm.bit_length()} bits,"
              f" bound 2^{cert.bound.bit_length() - 1}")
        return 0
    for failure in report.failures:
        print(f"FAIL: {failure}")
    return 1


def cmd_complexity(args) -> int:
    variant = SUBFIELD if args.variant == "subfield" else PLAIN
    try:
        e = norm_exponent(args.method, args.n, variant)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    q_bits = args.Q_dd * LOG2_10
    profile = booting_constants(
        e, method=args.method, n=args.n, variant=variant, Q_bits=q_bits
    )
    print(f"method={args.method} n={args.n} variant={variant}")
    print(f"norm exponent e = {e} (norm ~ Q^{float(e):.4f})")
    print(f"runtime L_Q[1/3, {profile.c:.4f}]"
          f" = {profile.runtime_bits:.1f} bits at {args.Q_dd} dd")
    print(f"special-q bound L_Q[2/3, {profile.gamma:.4f}]"
          f" = {profile.special_q_bits:.1f} bits")
    base = baseline_exponents(args.method, args.n)
    print(f"baselines: naive e = {float(base['nothing']):.4f},"
          f" fraction e = {float(base['fraction']):.4f}")
    return 0


def cmd_worked_examples(args) -> int:
    results = run_checks()
    ok = True
    for r in results:
        print(f"{'PASS' if r.ok else 'FAIL'}  {r.name}  --  {r.detail}")
        ok = ok and r.ok
    print(f"{sum(r.ok for r in results)}/{len(results)} checks passed")
    return 0 if ok else 1


# -------------------------------------------------------------------- main


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nfs-boot",
        description="Booting-step toolkit for discrete logs in F_{p^n}",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("polyselect", help="select (f, g, psi) for F_{p^n}")
    ps.add_argument("--p", type=int, required=True)
    ps.add_argument("--n", type=int, required=True)
    ps.add_argument(
        "--method", required=True, choices=["jlsv1", "gjl", "conj", "conj-subfield"]
    )
    ps.add_argument("--d", type=int, default=None, help="gJL lattice degree (>= n)")
    ps.add_argument("--seed", type=int, default=0)
    ps.add_argument("--find-ell", action="store_true",
                    help="factor Phi_n(p) and record the largest prime factor")
    ps.add_argument("--out", default=None, help="params JSON path (default stdout)")
    ps.set_defaults(func=cmd_polyselect)

    rd = sub.add_parser("reduce", help="compute small preimages of a target")
    rd.add_argument("--params", required=True)
    rd.add_argument("--target", required=True,
                    help="little-endian coefficients, comma separated")
    rd.add_argument(
        "--strategy",
        default="auto",
        choices=["naive", "fraction", "monic", "subfield", "combined", "auto"],
    )
    rd.add_argument("--radius", type=int, default=0)
    rd.add_argument("--out", default=None)
    rd.set_defaults(func=cmd_reduce)

    bt = sub.add_parser("boot", help="search for a B-smooth preimage of s^t")
    bt.add_argument("--params", required=True)
    bt.add_argument("--target", required=True)
    bt.add_argument("--B-bits", type=int, required=True, dest="B_bits")
    bt.add_argument("--ell", type=int, default=None)
    bt.add_argument("--seed", type=int, default=0)
    bt.add_argument("--max-trials", type=int, default=1000)
    bt.add_argument("--workers", type=int, default=1)
    bt.add_argument("--radius", type=int, default=0)
    bt.add_argument(
        "--strategy", default="auto", choices=["auto", "monic", "subfield-combined"]
    )
    bt.add_argument("--out", default=None, help="certificate JSON path")
    bt.set_defaults(func=cmd_boot)

    vf = sub.add_parser("verify", help="recheck a boot certificate from scratch")
    vf.add_argument("--cert", required=True)
    vf.set_defaults(func=cmd_verify)

    cx = sub.add_parser("complexity", help="asymptotic constants for a method")
    cx.add_argument("--method", required=True, choices=[JLSV1, GJL, CONJ])
    cx.add_argument("--n", type=int, required=True)
    cx.add_argument("--Q-dd", type=int, required=True, dest="Q_dd",
                    help="field size in decimal digits")
    cx.add_argument("--variant", default="plain", choices=["plain", "subfield"])
    cx.set_defaults(func=cmd_complexity)

    we = sub.add_parser(
        "worked-examples", help="re-derive the published record-size examples"
    )
    we.set_defaults(func=cmd_worked_examples)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
