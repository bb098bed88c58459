"""Polynomial selection: invariants, sizes, determinism, published data."""

import random

import pytest

from nfsboot.arith import IntPoly, ModPoly, is_irreducible_mod_p, poly_gcd_mod_p
from nfsboot.fields import detect_tower
from nfsboot.polyselect import (
    SelectionError,
    select_conjugation,
    select_conjugation_with_subfield_tower,
    select_gjl,
    select_jlsv1,
    verify_selection,
)
from nfsboot.smooth import next_prime
from nfsboot.worked_examples import N4_JLSV1, _selection


@pytest.fixture(scope="module")
def p60():
    return next_prime(10**18)


class TestJLSV1:
    def test_shape_and_conformance(self, p60):
        for n in (2, 3, 4):
            sel = select_jlsv1(p60, n, seed=n)
            report = verify_selection(sel)
            assert report.ok, report.issues
            assert sel.f.degree == n and sel.g.degree == n
            # both sides have ||.|| ~ sqrt(p)
            half = p60.bit_length() // 2
            assert abs(sel.f.inf_norm.bit_length() - half) <= 4
            assert abs(sel.g.inf_norm.bit_length() - half) <= 4

    def test_g_is_multiple_of_f_mod_p(self, p60):
        sel = select_jlsv1(p60, 3, seed=1)
        fp = ModPoly(sel.f.coeffs, p60)
        gp = ModPoly(sel.g.coeffs, p60)
        assert poly_gcd_mod_p(fp, gp) == sel.psi
        assert sel.psi == fp.monic()

    def test_deterministic(self, p60):
        a = select_jlsv1(p60, 3, seed=9)
        b = select_jlsv1(p60, 3, seed=9)
        assert a == b

    def test_published_selection_conforms(self):
        report = verify_selection(_selection(N4_JLSV1))
        assert report.ok, report.issues

    def test_published_y_u_v_relation(self):
        ex = N4_JLSV1
        # published g = v*f0 + u*f1 with u = v*y mod p
        u, v = 220806328874049898551011, 101916096427067171567872
        y = ex.f[2]  # the quadratic coefficient of f is y itself here
        assert u % ex.p == v * y % ex.p


class TestGJL:
    def test_shape_and_conformance(self, p60):
        for n in (2, 3):
            sel = select_gjl(p60, n, seed=n)
            report = verify_selection(sel)
            assert report.ok, report.issues
            assert sel.f.degree == sel.aux["d"] + 1
            assert sel.f.inf_norm <= 2
            assert sel.psi.degree == n

    def test_g_coefficients_near_det_share(self, p60):
        n, d = 3, 3
        sel = select_gjl(p60, n, d=d, seed=0)
        expect = n * p60.bit_length() / (d + 1)
        assert sel.g.inf_norm.bit_length() <= expect + 8

    def test_psi_divides_both(self, p60):
        sel = select_gjl(p60, 3, seed=2)
        fp = ModPoly(sel.f.coeffs, p60)
        gp = ModPoly(sel.g.coeffs, p60)
        assert (fp % sel.psi).is_zero
        assert (gp % sel.psi).is_zero
        assert is_irreducible_mod_p(sel.psi)

    def test_rejects_small_d(self, p60):
        with pytest.raises(ValueError):
            select_gjl(p60, 4, d=3)


class TestConjugation:
    def test_shape_and_conformance(self, p60):
        for n in (2, 3, 4):
            sel = select_conjugation(p60, n, seed=n)
            report = verify_selection(sel)
            assert report.ok, report.issues
            assert sel.f.degree == 2 * n
            assert sel.f.inf_norm <= 16
            assert sel.g.degree == n

    def test_aux_quadratic_has_root(self, p60):
        sel = select_conjugation(p60, 2, seed=5)
        b, a, _ = sel.aux["p_y"]
        y = sel.aux["y"]
        assert (y * y + a * y + b) % p60 == 0

    def test_tower_variant_certifies(self):
        p = next_prime(10**9)
        sel, tower = select_conjugation_with_subfield_tower(p, 4, seed=0)
        assert verify_selection(sel).ok
        assert detect_tower(sel.field_ctx()) is not None
        assert tower.kind in ("additive", "twisted")
        # psi reciprocal implies the twisted shape
        assert sel.psi.coeffs[0] == sel.psi.coeffs[-1]

    def test_tower_variant_rejects_odd_n(self, p60):
        with pytest.raises(ValueError):
            select_conjugation_with_subfield_tower(p60, 3)


class TestBudget:
    def test_selection_error_on_zero_trials(self, p60):
        with pytest.raises(SelectionError):
            select_gjl(p60, 3, trials=0)
