"""Shared fixtures: small deterministic fields, one per selection method."""

import random

import pytest

from nfsboot.arith import IntPoly, ModPoly, is_irreducible_mod_p
from nfsboot.fields import FieldCtx
from nfsboot.smooth import next_prime


@pytest.fixture(scope="session")
def rng():
    return random.Random(0xBEEF)


def small_field(p: int, n: int, seed: int = 0) -> FieldCtx:
    """F_{p^n} with the first irreducible monic psi in seed order."""
    r = random.Random(seed)
    while True:
        coeffs = [r.randrange(p) for _ in range(n)] + [1]
        psi = ModPoly(coeffs, p)
        if is_irreducible_mod_p(psi):
            return FieldCtx(p=p, n=n, psi=psi)


@pytest.fixture(scope="session")
def f_5_4():
    """F_{5^4}: tiny enough to brute-force subfield membership."""
    return small_field(5, 4)


@pytest.fixture(scope="session")
def f_101_3():
    return small_field(101, 3)


@pytest.fixture(scope="session")
def p40():
    """40-bit prime reused by the mid-size tests."""
    return next_prime(1 << 40)


def random_poly(r: random.Random, degree: int, bound: int = 10) -> IntPoly:
    coeffs = [r.randint(-bound, bound) for _ in range(degree)]
    lead = 0
    while lead == 0:
        lead = r.randint(-bound, bound)
    return IntPoly(coeffs + [lead])
