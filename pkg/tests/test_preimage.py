"""Preimage lattices: every candidate must map to a subfield multiple of
the target, and measured norms must track the predicted exponents."""

import math
import random
import statistics

import pytest

from nfsboot.arith import IntPoly, resultant
from nfsboot.fields import detect_tower, is_in_proper_subfield, make_monic, subfield_reduce
from nfsboot.polyselect import (
    select_conjugation,
    select_conjugation_with_subfield_tower,
    select_gjl,
    select_jlsv1,
)
from nfsboot.preimage import (
    combined_reduce,
    fraction_reduce,
    monic_reduce,
    naive_lift,
    rho,
    small_combinations,
    subfield_lattice_reduce,
)
from nfsboot.smooth import GJL, CONJ, JLSV1, PLAIN, SUBFIELD, next_prime, norm_exponent


@pytest.fixture(scope="module")
def p40():
    return next_prime(1 << 40)


def random_target(ctx, r):
    while True:
        s = ctx.element([r.randrange(ctx.p) for _ in range(ctx.n)])
        if s.rep.degree == ctx.n - 1:
            return make_monic(s)[0]


class TestCandidateValidity:
    def test_monic_candidates_map_to_prime_multiples(self, p40):
        r = random.Random(101)
        for sel in (
            select_jlsv1(p40, 3, seed=1),
            select_gjl(p40, 3, seed=1),
            select_conjugation(p40, 2, seed=1),
        ):
            ctx = sel.field_ctx()
            for _ in range(5):
                s = random_target(ctx, r)
                report = monic_reduce(s, sel)
                assert report.candidates
                for cand in report.candidates:
                    cof = rho(ctx, cand.poly) * s.inverse()
                    assert cof.in_prime_field and not cof.is_zero
                    assert cand.norm == abs(resultant(sel.f, cand.poly))

    def test_naive_lift_exact(self, p40):
        sel = select_gjl(p40, 3, seed=2)
        ctx = sel.field_ctx()
        s = random_target(ctx, random.Random(3))
        pre = naive_lift(s, sel.f)
        assert rho(ctx, pre.poly) == s
        assert pre.norm == abs(resultant(sel.f, pre.poly))

    def test_fraction_reduce_relation(self, p40):
        sel = select_jlsv1(p40, 3, seed=4)
        ctx = sel.field_ctx()
        r = random.Random(5)
        for _ in range(5):
            s = random_target(ctx, r)
            num, den = fraction_reduce(s, sel)
            u = rho(ctx, num.poly)
            v = rho(ctx, den.poly)
            assert not v.is_zero
            assert u == v * s

    def test_subfield_and_combined(self):
        p = next_prime(1 << 30)
        sel, tower = select_conjugation_with_subfield_tower(p, 4, seed=0)
        ctx = sel.field_ctx()
        r = random.Random(7)
        for _ in range(5):
            s = random_target(ctx, r)
            red, u = subfield_reduce(s, tower)
            rep_sub = subfield_lattice_reduce(red, sel)
            rep_comb = combined_reduce(red, s, sel)
            for cand in rep_sub.candidates + rep_comb.candidates:
                cof = rho(ctx, cand.poly) * s.inverse()
                assert is_in_proper_subfield(cof, 2)
                assert cand.cofactor_subfield in (1, 2)
            # combined basis contains the subfield-only lattice: no regression
            assert rep_comb.best.norm_bits <= rep_sub.best.norm_bits + 1

    def test_small_combinations_only_improves(self, p40):
        sel = select_conjugation(p40, 2, seed=9)
        ctx = sel.field_ctx()
        r = random.Random(11)
        s = random_target(ctx, r)
        base = monic_reduce(s, sel)
        widened = small_combinations(base, sel, s, radius=1)
        assert widened.best.norm_bits <= base.best.norm_bits
        assert len(widened.candidates) >= len(base.candidates)
        for cand in widened.candidates:
            cof = rho(ctx, cand.poly) * s.inverse()
            assert cof.in_prime_field


class TestExponentTracking:
    """Sampled norms against the predicted Q^e, small but fast version;
    the acceptance suite repeats this at 100 targets per configuration."""

    CONFIGS = [
        (JLSV1, 2, PLAIN), (JLSV1, 4, PLAIN),
        (GJL, 2, PLAIN), (GJL, 3, PLAIN),
        (CONJ, 2, PLAIN), (CONJ, 3, PLAIN),
    ]

    @pytest.mark.parametrize("method,n,variant", CONFIGS)
    def test_mean_norm_matches_exponent(self, p40, method, n, variant):
        select = {JLSV1: select_jlsv1, GJL: select_gjl, CONJ: select_conjugation}
        sel = select[method](p40, n, seed=0)
        ctx = sel.field_ctx()
        r = random.Random(13)
        ratios = []
        for _ in range(25):
            s = random_target(ctx, r)
            report = monic_reduce(s, sel)
            ratios.append(report.best.norm_bits / sel.log2_q)
        e = float(norm_exponent(method, n, variant))
        assert abs(statistics.fmean(ratios) - e) < 0.10
