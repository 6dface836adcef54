import math
import random
from fractions import Fraction

import pytest

from sigmatrop.dynamics import (INF, PushMap, check_angle_bound,
                                compose_gsh_check, gsh, lambda_of_push_estimate,
                                norm, sigma_of_push)
from sigmatrop.rings import ZZ, Character, Direction, LaurentPoly

X = LaurentPoly.monomial


def mult_by(terms, rank=1):
    return PushMap.multiplication_by(LaurentPoly(rank, ZZ, terms))


def rand_push(rng, rank, size=1, max_terms=4):
    entries = []
    for _ in range(size):
        row = []
        for _ in range(size):
            terms = {}
            for _ in range(rng.randint(0, max_terms)):
                g = tuple(rng.randint(-3, 3) for _ in range(rank))
                c = rng.randint(-4, 4)
                if c:
                    terms[g] = c
            row.append(LaurentPoly(rank, ZZ, terms))
        entries.append(row)
    return PushMap.of(entries)


def test_norm_examples():
    assert norm(mult_by({(1,): 1})) == (1, 1.0)
    phi = mult_by({(1, 0): 1, (0, 2): 1}, rank=2)
    assert norm(phi).squared == 4 and norm(phi).value == 2.0
    ident = PushMap.multiplication_by(LaurentPoly.one(1))
    assert norm(ident).squared == 0
    assert norm(PushMap.multiplication_by(LaurentPoly.zero(1))).squared == 0


def test_gsh_examples():
    assert gsh(mult_by({(1,): 1}), Character.of(1)) == 1
    assert gsh(mult_by({(1,): 1, (3,): 1}), Character.of(1)) == 1
    assert gsh(mult_by({(0,): 1, (-2,): -36}), Character.of(-1)) == 0
    assert gsh(PushMap.multiplication_by(LaurentPoly.zero(1)), Character.of(1)) == INF


def test_sigma_of_push_examples():
    ray = sigma_of_push(mult_by({(1,): 1}))
    assert ray.contains((1,)) and not ray.contains((0,)) and not ray.contains((-1,))

    quad = sigma_of_push(mult_by({(1, 0): 1, (0, 1): 1}, rank=2))
    assert quad.contains((1, 1)) and not quad.contains((1, 0))

    blocked = sigma_of_push(mult_by({(0,): 1, (1,): 1}))
    assert blocked.is_empty


def test_sigma_of_push_matches_gsh_sign():
    rng = random.Random(97)
    pairs = 0
    while pairs < 200:
        rank = rng.randint(1, 3)
        phi = rand_push(rng, rank, size=rng.choice([1, 1, 2]))
        chi = Character(tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 3))
                              for _ in range(rank)))
        if chi.is_zero:
            continue
        pairs += 1
        cone = sigma_of_push(phi)
        val = gsh(phi, chi)
        assert cone.contains(chi.values) == (val != INF and val > 0 or val == INF
                                             and _total_empty(phi))


def _total_empty(phi):
    return not phi.total_support()


def test_sigma_of_push_is_open():
    rng = random.Random(5)
    for _ in range(20):
        phi = rand_push(rng, 2)
        cone = sigma_of_push(phi)
        for piece in cone.pieces:
            assert not piece.ge and not piece.eq  # strict rows only


def test_lambda_estimate_examples():
    rep = lambda_of_push_estimate(mult_by({(1,): 1}), [LaurentPoly.one(1)], 6)
    assert not rep.died_out
    assert [d.vector for d in rep.directions] == [(1,)]

    rep2 = lambda_of_push_estimate(mult_by({(1, 0): 1, (0, 1): 1}, rank=2),
                                   [LaurentPoly.one(2)], 8)
    vecs = {d.vector for d in rep2.directions}
    assert (1, 0) in vecs and (0, 1) in vecs and (1, 1) in vecs

    rep3 = lambda_of_push_estimate(PushMap.multiplication_by(LaurentPoly.zero(1)),
                                   [LaurentPoly.one(1)], 4)
    assert rep3.died_out and rep3.steps == 1 and rep3.directions == []


def test_angle_bound_examples():
    phi = mult_by({(1,): 1})
    rep = lambda_of_push_estimate(phi, [LaurentPoly.one(1)], 5)
    out = check_angle_bound(phi, Character.of(1), rep.directions)
    assert out.passed and out.bound_degrees == 0.0

    phi2 = mult_by({(1, 0): 1, (0, 1): 1}, rank=2)
    rep2 = lambda_of_push_estimate(phi2, [LaurentPoly.one(2)], 8)
    out2 = check_angle_bound(phi2, Character.of(1, 1), rep2.directions)
    assert out2.passed
    assert all(c.cos_ok_exact for c in out2.checks)

    fake = check_angle_bound(phi, Character.of(1), [Direction.of(-1)])
    assert not fake.passed

    with pytest.raises(ValueError):
        check_angle_bound(mult_by({(-1,): 1}), Character.of(1), [])


def test_compose_examples():
    x = mult_by({(1,): 1})
    xinv = mult_by({(-1,): 1})
    chi = Character.of(1)
    rep = compose_gsh_check(x, x, chi)
    assert rep.passed and rep.gsh_composed == 2

    rep2 = compose_gsh_check(mult_by({(1,): 1, (3,): 1}),
                             mult_by({(1,): 1, (3,): 1}), chi)
    assert rep2.passed

    rep3 = compose_gsh_check(x, xinv, chi)
    assert rep3.passed and rep3.gsh_composed == 0 and rep3.gsh_second == -1


def test_compose_superadditive_random():
    rng = random.Random(12)
    done = 0
    while done < 60:
        rank = rng.randint(1, 2)
        phi = rand_push(rng, rank)
        psi = rand_push(rng, rank)
        chi = Character(tuple(Fraction(rng.randint(-4, 4)) for _ in range(rank)))
        if chi.is_zero:
            continue
        done += 1
        assert compose_gsh_check(phi, psi, chi, max_power=5).passed


def test_push_respects_module_sigma():
    from sigmatrop.sigma import ScalarAction, annihilates, sigma_of_module

    corpus = [ScalarAction.of(6), ScalarAction.of(2, 3)]
    for mod in corpus:
        result = sigma_of_module(mod)
        checked = 0
        for _cone, lam in result.certificates:
            theta_plus = LaurentPoly.one(lam.rank) - lam
            # the push lifts the identity exactly when lam annihilates
            assert annihilates(LaurentPoly.one(lam.rank) - theta_plus, mod)
            cone = sigma_of_push(PushMap.multiplication_by(theta_plus))
            assert cone.radial().subset_of(result.proved_sigma)
            checked += 1
        assert checked >= 1
