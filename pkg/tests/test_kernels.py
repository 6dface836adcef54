import random
from fractions import Fraction

import pytest

from sigmatrop import kernels
from sigmatrop import _kernels_py as pyk


def rand_terms(rng, rank, coeff):
    out = {}
    for _ in range(rng.randint(0, 6)):
        g = tuple(rng.randint(-4, 4) for _ in range(rank))
        c = coeff(rng)
        if c:
            out[g] = c
    return out


@pytest.mark.parametrize("coeff,mod", [
    (lambda rng: rng.randint(-9, 9), None),
    (lambda rng: Fraction(rng.randint(-9, 9), rng.randint(1, 5)), None),
    (lambda rng: rng.randint(0, 4), 5),
])
def test_backends_agree(coeff, mod):
    rng = random.Random(3)
    for _ in range(200):
        rank = rng.randint(1, 3)
        a = rand_terms(rng, rank, coeff)
        b = rand_terms(rng, rank, coeff)
        assert kernels.term_add(a, b, mod) == pyk.term_add(a, b, mod)
        assert kernels.term_mul(a, b, mod) == pyk.term_mul(a, b, mod)
        c = coeff(rng)
        assert kernels.term_scale(a, c, mod) == pyk.term_scale(a, c, mod)


def test_zero_handling():
    for impl in (kernels, pyk):
        assert impl.term_add({(1,): 2}, {(1,): -2}) == {}
        assert impl.term_mul({(1,): 2}, {}) == {}
        assert impl.term_scale({(1,): 2}, 0) == {}
        assert impl.term_mul({(0,): 1, (1,): 1}, {(0,): 1, (1,): -1}) == {
            (0,): 1, (2,): -1}
        assert impl.term_add({(0,): 1}, {(0,): 1}, 2) == {}


def test_backend_reports_name():
    assert kernels.BACKEND in ("cython", "python")
