import random
from fractions import Fraction

import pytest

from sigmatrop.linalg import (integer_diagonalize, invert, mat_mul, mat_vec,
                              nullspace, primitive_vector, rank, rref, solve,
                              solve_integer)


def frac_det(mat):
    m = [[Fraction(x) for x in row] for row in mat]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        pr = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pr is None:
            return Fraction(0)
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for i in range(c + 1, n):
            f = m[i][c]
            m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


def test_rref_and_rank():
    rows, pivots = rref([[2, 4], [1, 2]])
    assert pivots == [0]
    assert rows[0] == [1, 2]
    assert rank([[1, 0], [0, 1], [1, 1]]) == 2
    assert rank([]) == 0


def test_nullspace_and_solve():
    ns = nullspace([[1, 1, 0]])
    assert len(ns) == 2
    for v in ns:
        assert v[0] + v[1] == 0 or v == [Fraction(0), Fraction(0), Fraction(1)]
    x = solve([[2, 0], [0, 3]], [4, 9])
    assert x == [2, 3]
    assert solve([[1, 1], [1, 1]], [0, 1]) is None


def test_invert():
    inv = invert([[2, 1], [1, 1]])
    assert mat_mul([[2, 1], [1, 1]], inv) == [[1, 0], [0, 1]]
    assert invert([[1, 2], [2, 4]]) is None


def test_primitive_vector():
    assert primitive_vector([4, -6]) == (2, -3)
    assert primitive_vector([Fraction(1, 2), Fraction(1, 3)]) == (3, 2)
    with pytest.raises(ValueError):
        primitive_vector([0, 0])


def test_integer_diagonalize_invariants():
    rng = random.Random(23)
    for _ in range(40):
        m = rng.randint(1, 4)
        n = rng.randint(1, 4)
        a = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(m)]
        d, u, v = integer_diagonalize(a)
        assert mat_mul(mat_mul(u, a), v) == d
        assert abs(frac_det(u)) == 1 and abs(frac_det(v)) == 1
        for i in range(m):
            for j in range(n):
                if i != j:
                    assert d[i][j] == 0


def test_solve_integer():
    # parity obstruction
    assert solve_integer([[2]], [1]) is None
    assert solve_integer([[2]], [6]) == [3]
    # a system with a known integer solution
    rng = random.Random(29)
    for _ in range(40):
        m = rng.randint(1, 3)
        n = rng.randint(1, 4)
        a = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(m)]
        x = [rng.randint(-4, 4) for _ in range(n)]
        b = mat_vec(a, x)
        sol = solve_integer(a, b)
        assert sol is not None
        assert mat_vec(a, sol) == b
    # gcd obstruction: 6x + 10y = 3 has no integer solution
    assert solve_integer([[6, 10]], [3]) is None
    assert solve_integer([[6, 10]], [4]) is not None
