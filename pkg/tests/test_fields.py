"""Finite-field towers: Frobenius, subfield detection, target simplification."""

import random

import pytest
import sympy

from nfsboot.arith import ModPoly, is_irreducible_mod_p, poly_powmod
from nfsboot.fields import (
    ADDITIVE,
    TWISTED,
    DegenerateTargetError,
    FieldCtx,
    cyclotomic_value,
    detect_tower,
    find_ell,
    is_in_proper_subfield,
    make_monic,
    proper_subfield_degree,
    subfield_basis,
    subfield_reduce,
    subfield_reduce_general,
)

from conftest import small_field


def random_element(ctx: FieldCtx, r: random.Random):
    return ctx.element([r.randrange(ctx.p) for _ in range(ctx.n)])


class TestFieldArithmetic:
    def test_axioms_sampled(self, f_101_3, rng):
        ctx = f_101_3
        for _ in range(30):
            a, b, c = (random_element(ctx, rng) for _ in range(3))
            assert a + b == b + a
            assert (a + b) + c == a + (b + c)
            assert a * (b + c) == a * b + a * c
            if not a.is_zero:
                assert a * a.inverse() == ctx.one
                assert (a / a) == ctx.one

    def test_frobenius_is_field_automorphism(self, f_101_3, rng):
        ctx = f_101_3
        for _ in range(20):
            a, b = random_element(ctx, rng), random_element(ctx, rng)
            assert (a + b).frobenius() == a.frobenius() + b.frobenius()
            assert (a * b).frobenius() == a.frobenius() * b.frobenius()
            assert a.frobenius() == a**ctx.p

    def test_frobenius_order_n(self, f_101_3, rng):
        ctx = f_101_3
        for _ in range(10):
            a = random_element(ctx, rng)
            assert a.frobenius(ctx.n) == a
            assert a ** (ctx.p**ctx.n) == a

    def test_make_monic(self, f_101_3, rng):
        ctx = f_101_3
        for _ in range(20):
            a = random_element(ctx, rng)
            if a.is_zero:
                continue
            m, lead = make_monic(a)
            assert lead.in_prime_field
            assert m * lead == a
            assert m.rep.coeffs[-1] == 1


class TestSubfieldMembership:
    def brute_subfield(self, ctx: FieldCtx, d: int) -> set:
        """All of F_{p^d} inside F_{p^n}, by fixed-point enumeration (tiny p)."""
        elems = set()
        p, n = ctx.p, ctx.n
        for code in range(p**n):
            coeffs, t = [], code
            for _ in range(n):
                coeffs.append(t % p)
                t //= p
            a = ctx.element(coeffs)
            if a.frobenius(d) == a:
                elems.add(a)
        return elems

    def test_against_brute_force_f_5_4(self, f_5_4):
        ctx = f_5_4
        sub2 = self.brute_subfield(ctx, 2)
        assert len(sub2) == 25
        for a in sub2:
            assert is_in_proper_subfield(a, 2)
        basis = subfield_basis(ctx, 2)
        assert len(basis) == 2
        span = {
            basis[0] * i + basis[1] * j for i in range(5) for j in range(5)
        }
        assert span == sub2

    def test_proper_subfield_degree(self, f_5_4):
        ctx = f_5_4
        assert proper_subfield_degree(ctx.one) == 1
        gen_deg = proper_subfield_degree(ctx.gen)
        assert gen_deg is None  # x generates the full field here
        sub = subfield_basis(ctx, 2)[1]
        d = proper_subfield_degree(sub)
        assert d in (1, 2)


class TestEll:
    def test_cyclotomic_values(self):
        for n in (1, 2, 3, 4, 6, 12):
            for p in (7, 101, 1009):
                expect = int(sympy.cyclotomic_poly(n, p))
                assert cyclotomic_value(n, p) == expect

    def test_find_ell_matches_sympy(self):
        for p, n in ((101, 2), (1009, 3), (65537, 2)):
            ell = find_ell(p, n)
            phi = int(sympy.cyclotomic_poly(n, p))
            assert ell == max(sympy.factorint(phi))
            assert phi % ell == 0

    def test_ell_divides_group_order_not_subgroups(self):
        p, n = 1009, 3
        ell = find_ell(p, n)
        assert (p**n - 1) % ell == 0
        for d in range(1, n):
            if n % d == 0:
                assert (p**d - 1) % ell != 0


def tower_field(p: int, seed: int = 0) -> FieldCtx:
    """Quartic field built from an explicit quadratic tower, for oracle use."""
    r = random.Random(seed)
    while True:
        a, b = r.randrange(p), r.randrange(1, p)
        pz = ModPoly([b, a, 1], p)
        if not is_irreducible_mod_p(pz):
            continue
        # x with min poly T^2 - Y over F_{p^2}: psi(T) = P_z(T^2) (additive kind)
        psi = ModPoly([b, 0, a, 0, 1], p)
        if is_irreducible_mod_p(psi):
            return FieldCtx(p=p, n=4, psi=psi)


class TestTower:
    def test_detects_constructed_tower(self):
        for seed in range(4):
            ctx = tower_field(10007, seed)
            tower = detect_tower(ctx)
            assert tower is not None
            assert tower.kind == ADDITIVE
            # Defining relation: P_z(x)  =  Y  in the field.
            x = ctx.gen
            pz = tower.p_z
            val = x * x * pz[2] + x * pz[1] + ctx.element(pz[0])
            assert val == tower.Y

    def test_reciprocal_quartic_is_twisted(self):
        p = 10007
        r = random.Random(3)
        found = 0
        while found < 4:
            c = r.randrange(p)
            d = r.randrange(p)
            psi = ModPoly([1, c, d, c, 1], p)
            if not is_irreducible_mod_p(psi):
                continue
            found += 1
            ctx = FieldCtx(p=p, n=4, psi=psi)
            tower = detect_tower(ctx)
            assert tower is not None and tower.kind == TWISTED

    def test_rejects_towerless_field(self):
        # psi with full Galois group has no F_{p^2}-rational presentation
        p = 101
        r = random.Random(5)
        seen_none = False
        for _ in range(50):
            ctx = small_field(p, 4, seed=r.randrange(10**6))
            if detect_tower(ctx) is None:
                seen_none = True
                break
        assert seen_none

    def test_subfield_reduce_properties(self):
        ctx = tower_field(10007, 1)
        tower = detect_tower(ctx)
        r = random.Random(7)
        for _ in range(25):
            s = random_element(ctx, r)
            if s.rep.degree != ctx.n - 1:
                continue
            s, _ = make_monic(s)
            try:
                red, u = subfield_reduce(s, tower)
            except DegenerateTargetError:
                continue
            assert red == u * s
            assert red.rep.degree == ctx.n - 2
            assert red.rep.coeffs[-1] == 1
            assert is_in_proper_subfield(u, 2)

    def test_subfield_reduce_general_agrees(self):
        ctx = tower_field(10007, 2)
        r = random.Random(11)
        for _ in range(10):
            s = random_element(ctx, r)
            if s.is_zero:
                continue
            try:
                red, u = subfield_reduce_general(s, 2)
            except DegenerateTargetError:
                continue
            assert red == u * s
            assert is_in_proper_subfield(u, 2)
            assert red.rep.degree <= ctx.n - 2


class TestSubfieldUnitOrder:
    def test_units_die_in_quotient(self):
        """Subfield elements have trivial log modulo ell: u^((p^n-1)/ell) = 1."""
        p, n = 10007, 4
        ctx0 = tower_field(p, 0)
        ell = find_ell(p, n)
        ctx = FieldCtx(p=p, n=n, psi=ctx0.psi, ell=ell)
        exponent = (p**n - 1) // ell
        r = random.Random(13)
        checked = 0
        while checked < 25:
            basis = subfield_basis(ctx, 2)
            u = basis[0] * r.randrange(p) + basis[1] * r.randrange(p)
            if u.is_zero:
                continue
            checked += 1
            assert u**exponent == ctx.one
