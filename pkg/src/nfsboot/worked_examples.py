"""Published record-size worked examples used as golden fixtures.

Three 180-decimal-digit fields, one per selection method, with the
printed reduced vectors and norms.  run_checks() re-derives everything
(exact resultants, LLL digit counts, subfield simplification, complexity
figures) and reports pass/fail per check; the CLI and the acceptance
suite both consume it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .arith import IntPoly, ModPoly, resultant
from .fields import FieldCtx, detect_tower, is_in_proper_subfield, subfield_reduce
from .polyselect import Selection
from .preimage import combined_reduce, monic_reduce_gjl_conj, rho
from .smooth import CONJ, GJL, JLSV1, l_eval

LOG2_10 = 3.321928094887362


@dataclass(frozen=True)
class WorkedExample:
    label: str
    method: str
    n: int
    p: int
    f: tuple[int, ...]
    psi: tuple[int, ...]
    g: tuple[int, ...]
    s: tuple[int, ...]
    printed_vectors: tuple[tuple[int, ...], ...]
    printed_norm: int
    runtime_c: float
    ell: Optional[int] = None
    printed_r: Optional[tuple[int, ...]] = None  # subfield-reduced target


N2_CONJ = WorkedExample(
    label="n=2 conjugation, 180 dd",
    method=CONJ,
    n=2,
    p=314159265358979323846264338327950288419716939937510582097494459230781640628620899877709223,
    f=(1, 0, 0, 0, 1),
    psi=(1, 107781513095823018666989883102244394809412297643895349097410632508049455376698784691699593, 1),
    g=(1,),  # not printed in the source example
    s=(95888066250767326321142016575753199022772235411526548684808440973949208471194724618090692,
       271828182845904523536028747135319858432320810108854154561922281807332337576949857498874314),
    printed_vectors=(
        (856176942703613067714, 5577462470851948956594, 13679035553643009711078, 3603397286457205828471),
        (1117888241691130060409, 8957750025494673822198, -4498175796333854926013, 9219461324482190814893),
        (5448432247710482696848, -17801940403216866332911, 5699666741226225385259, 28268390944624183141702),
        (46926508290544662542327, -5570636518084759125513, 3212585012235692902287, 3352162792941463140060),
    ),
    printed_norm=21398828029520168611169045280302428434866966657097075761337598070760485340948677800162921,
    runtime_c=1.14,
)

N3_GJL = WorkedExample(
    label="n=3 gJL, 180 dd",
    method=GJL,
    n=3,
    p=314159265358979323846264338327950288419716939937510582723487,
    f=(1, -1, 0, 0, 1),
    psi=(86398309157441443539791899517788388184853963071847115552638,
         126798022201426805402186761110440110121157863791585328913565,
         227138144243642333129902287795664772043667053260089299478579, 1),
    g=(2029073371791914965976041284208208450267120556,
       -10123533234834473316053289623165756437267298403,
       6099516524325575060821841620140470618863403881,
       2877670889871354566080333172463852249908214391),
    s=(75319902277223541152654868480858951626493739297259139859875,
       281807332337576949857498874314095888066250767326321142016575,
       271828182845904523536028747135319858432320810108854154561922),
    printed_vectors=(
        (-159912786936943488400590389195, 177828199322419553601266354904,
         165819631832105094449987774814, 159774930637505900093909307018),
        (255238068915917937217884608875, 322722415562853671586868492721,
         -521269847225531188433352927453, 136583029354520905232412941048),
        (535978811382585906107397024241, -105084220861844155797015713666,
         499013489972894059858543976363, 118289007598934068726663000266),
        (-389720783049275894296185820094, -373289346204280810310169575030,
         -240161030577722451131067159670, 411603890054539500131474313773),
    ),
    printed_norm=997840136509677868374734441582077227769466501519927620849763845265357390584602475858356409809239812991892769866071779,
    runtime_c=1.26,
)

N4_JLSV1 = WorkedExample(
    label="n=4 JLSV1 with quadratic subfield, 180 dd",
    method=JLSV1,
    n=4,
    p=314159265358979323846264338327950288419980011,
    f=(1, 1, 70898154036220641093162, 1, 1),
    psi=(1, 1, 70898154036220641093162, 1, 1),
    g=(101916096427067171567872, 101916096427067171567872, 220806328874049898551011,
       101916096427067171567872, 101916096427067171567872),
    s=(41152654868480844097394920847127588391952018,
       95888066250767326321142016575753199022772235,
       108854154561922281807332337576949857498874314,
       271828182845904523536028747135319858432320810),
    printed_vectors=(
        (1092494800287557029045, -5618779793817086743792, 290736827330861011376, 5842961997149263751946),
        (-5734086421794811858814, -4425488394163838271378, 15552590269131889589575, 1640842643903161175359),
        (16261617079167797580912, 10617583944234090880579, 13768771242650957399419, 6450686906504525374853),
        (-22787282698718065284157, 12799300411012246114079, 698185571704810258344, 16929135804139878865391),
    ),
    printed_norm=int(
        "14521439292172711151668611104133579982787299949310242601944218977645007049527"
        "012365602178307413694530274906757675751698466464799004360546745210214642178285"
    ),
    runtime_c=1.34,
    ell=49348022005446793094172454999380755676651143247932834802731698819521755649884772819780061,
    printed_r=(104642440649937756368545765334741049207121011,
               134969122397263102979743226915282355400161911, 1),
)

WORKED_EXAMPLES = (N2_CONJ, N3_GJL, N4_JLSV1)


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str


def _selection(ex: WorkedExample) -> Selection:
    return Selection(
        p=ex.p, n=ex.n, method=ex.method,
        f=IntPoly(ex.f), g=IntPoly(ex.g), psi=ModPoly(ex.psi, ex.p),
    )


def check_golden_resultants() -> list[CheckResult]:
    """Res(f, printed first vector) must equal the printed norm, bit-exact."""
    out = []
    for ex in WORKED_EXAMPLES:
        got = abs(resultant(IntPoly(ex.f), IntPoly(ex.printed_vectors[0])))
        out.append(
            CheckResult(
                name=f"golden resultant [{ex.label}]",
                ok=got == ex.printed_norm,
                detail=f"{len(str(got))} digits",
            )
        )
    return out


def check_golden_reductions() -> list[CheckResult]:
    """Our LLL must reach the printed digit count (+1 slack) with valid cofactors."""
    out = []
    for ex in WORKED_EXAMPLES:
        sel = _selection(ex)
        ctx = sel.field_ctx()
        s = ctx.element(list(ex.s))
        if ex.method == JLSV1:
            tower = detect_tower(ctx)
            r, _ = subfield_reduce(s, tower)
            report = combined_reduce(r, s, sel)
            subfield_d = 2
        else:
            report = monic_reduce_gjl_conj(s, sel)
            subfield_d = 1
        best = report.best
        digits = len(str(best.norm))
        printed = len(str(ex.printed_norm))
        cof = rho(ctx, best.poly) * s.inverse()
        member = cof.in_prime_field if subfield_d == 1 else is_in_proper_subfield(cof, 2)
        out.append(
            CheckResult(
                name=f"golden reduction [{ex.label}]",
                ok=digits <= printed + 1 and member,
                detail=f"best {digits} dd vs printed {printed} dd; cofactor in F_p^{subfield_d}",
            )
        )
    return out


def check_subfield_simplification() -> list[CheckResult]:
    """The n=4 target must reduce to exactly the printed degree-2 r."""
    ex = N4_JLSV1
    ctx = _selection(ex).field_ctx()
    tower = detect_tower(ctx)
    r, u = subfield_reduce(ctx.element(list(ex.s)), tower)
    ok = tuple(r.rep.coeffs) == ex.printed_r and is_in_proper_subfield(u, 2)
    return [
        CheckResult(
            name="subfield simplification [n=4]",
            ok=ok,
            detail=str(r.rep.lift()),
        )
    ]


def check_complexity_figures() -> list[CheckResult]:
    """The published 120-dd bit figures, o(1) = 0, tolerance +-2 bits."""
    bits120 = 120 * LOG2_10
    cases = [
        ("L[1/3, 1.38] at 120 dd", Fraction(1, 3), 1.38, 41),
        ("L[2/3, 0.634] at 120 dd", Fraction(2, 3), 0.634, 69),
        ("L[2/3, 3/4] at 120 dd", Fraction(2, 3), 0.75, 82),
    ]
    out = []
    for name, alpha, c, want in cases:
        got = l_eval(bits120, alpha, c)
        out.append(
            CheckResult(name=name, ok=abs(got - want) <= 2, detail=f"{got:.1f} bits")
        )
    return out


def run_checks() -> list[CheckResult]:
    results = []
    for fn in (
        check_golden_resultants,
        check_golden_reductions,
        check_subfield_simplification,
        check_complexity_figures,
    ):
        results.extend(fn())
    return results
