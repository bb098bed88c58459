"""Exact LLL: invariants, reduction conditions, and quality bounds."""

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from nfsboot.lattice import (
    IntMatrix,
    LLLParams,
    SingularLatticeError,
    first_vector_bound,
    gram_schmidt,
    heuristic_constant,
    is_reduced,
    lll_reduce,
    worst_case_constant,
)


def norm2(v):
    return sum(x * x for x in v)


def random_basis(r: random.Random, d: int, bound: int) -> IntMatrix:
    while True:
        rows = [[r.randint(-bound, bound) for _ in range(d)] for _ in range(d)]
        m = IntMatrix(rows)
        if m.determinant() != 0:
            return m


def in_same_lattice(original: IntMatrix, reduced: IntMatrix) -> bool:
    """Each reduced row solves an integer system over the original rows."""
    d = original.nrows
    for vec in reduced.entries:
        # Solve c * original = vec with Fraction elimination.
        a = [[Fraction(original.entries[i][j]) for i in range(d)] for j in range(d)]
        b = [Fraction(x) for x in vec]
        for col in range(d):
            piv = next((i for i in range(col, d) if a[i][col] != 0), None)
            if piv is None:
                return False
            a[col], a[piv] = a[piv], a[col]
            b[col], b[piv] = b[piv], b[col]
            inv = 1 / a[col][col]
            a[col] = [x * inv for x in a[col]]
            b[col] *= inv
            for i in range(d):
                if i != col and a[i][col]:
                    f = a[i][col]
                    a[i] = [x - f * y for x, y in zip(a[i], a[col])]
                    b[i] -= f * b[col]
        if any(x.denominator != 1 for x in b):
            return False
    return True


class TestLLLInvariants:
    def test_determinant_preserved(self):
        r = random.Random(41)
        for _ in range(25):
            d = r.randint(2, 5)
            m = random_basis(r, d, 50)
            red = lll_reduce(m).basis
            assert abs(red.determinant()) == abs(m.determinant())

    def test_same_lattice(self):
        r = random.Random(43)
        for _ in range(15):
            d = r.randint(2, 4)
            m = random_basis(r, d, 30)
            red = lll_reduce(m).basis
            assert in_same_lattice(m, red) and in_same_lattice(red, m)

    def test_reduction_conditions_hold(self):
        r = random.Random(47)
        params = LLLParams()
        for _ in range(25):
            d = r.randint(2, 6)
            m = random_basis(r, d, 10**6)
            red = lll_reduce(m, params).basis
            assert is_reduced(red, params)

    def test_singular_input_raises(self):
        m = IntMatrix([[1, 2], [2, 4]])
        with pytest.raises(SingularLatticeError):
            lll_reduce(m)

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.lists(st.integers(-99, 99), min_size=3, max_size=3),
                    min_size=3, max_size=3))
    def test_hypothesis_invariants(self, rows):
        m = IntMatrix(rows)
        assume(m.determinant() != 0)
        red = lll_reduce(m).basis
        assert abs(red.determinant()) == abs(m.determinant())
        assert is_reduced(red)


class TestQualityBounds:
    def test_first_vector_within_proven_bound(self):
        r = random.Random(53)
        for _ in range(25):
            d = r.randint(2, 5)
            m = random_basis(r, d, 10**4)
            red = lll_reduce(m).basis
            bound = first_vector_bound(m)
            assert norm2(red.row(0)) <= bound * bound

    def test_bound_scales_with_determinant(self):
        m1 = IntMatrix([[100, 0], [0, 100]])
        m2 = IntMatrix([[10, 0], [0, 10]])
        assert first_vector_bound(m1) >= 10 * first_vector_bound(m2) // 11

    def test_constants_monotone(self):
        assert heuristic_constant(2) < heuristic_constant(10)
        assert worst_case_constant(2) < worst_case_constant(10)
        assert heuristic_constant(6) < worst_case_constant(6)

    def test_2d_first_vector_is_nearly_shortest(self):
        """Brute force over 500 random planar lattices.

        On a size-reduced Lovasz basis the shortest vector has coefficients
        in {-5..5}^2, so the enumeration below is exhaustive.
        """
        r = random.Random(59)
        for _ in range(500):
            m = random_basis(r, 2, 10**3)
            red = lll_reduce(m).basis
            b1, b2 = red.entries
            shortest = min(
                norm2([x * a + y * b for a, b in zip(b1, b2)])
                for x, y in itertools.product(range(-5, 6), repeat=2)
                if (x, y) != (0, 0)
            )
            assert norm2(b1) <= worst_case_constant(2) ** 2 * shortest

    def test_gram_schmidt_orthogonal(self):
        r = random.Random(61)
        m = random_basis(r, 4, 100)
        star, mu, _ = gram_schmidt(m.entries)
        for i in range(4):
            for j in range(i):
                dot = sum(a * b for a, b in zip(star[i], star[j]))
                assert dot == 0
