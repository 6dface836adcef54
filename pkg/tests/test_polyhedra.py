import random
from fractions import Fraction

import pytest

from sigmatrop.rings import Character, Direction
from sigmatrop.polyhedra import (Polyhedron, PolyhedralSet, SphericalSet,
                                 balanceable_at, cone_membership,
                                 covers_with_antipodal, in_open_hemisphere,
                                 local_cone_at_infinity, local_cone_at_origin,
                                 pure_dimension, ray_cone)


def halfplane(rank, normal, strict=False):
    return (Polyhedron.cone(rank, gt=[normal]) if strict
            else Polyhedron.cone(rank, ge=[normal]))


def test_cone_membership_examples():
    c1 = halfplane(2, (1, 0))
    assert cone_membership(c1, Character.of(1, 5))
    c2 = halfplane(2, (1, 0), strict=True)
    assert not cone_membership(c2, Character.of(0, 1))
    c3 = Polyhedron.cone(2, eq=[(1, -1)])
    assert cone_membership(c3, Character.of(2, 2))


def test_feasibility_with_strict_rows():
    p = Polyhedron(1, ge=[((1,), 0)], gt=[((-1,), 0)])  # u >= 0 and u < 0
    assert p.is_empty
    q = Polyhedron(1, gt=[((1,), 0), ((-1,), -1)])      # 0 < u < 1
    pt = q.feasible_point()
    assert pt is not None and 0 < pt[0] < 1
    r = Polyhedron(2, eq=[((1, 1), 1)], gt=[((1, -1), 0)])
    pt = r.feasible_point()
    assert pt[0] + pt[1] == 1 and pt[0] > pt[1]


def test_dim_and_has_direction():
    assert Polyhedron.full(3).dim() == 3
    line = Polyhedron.cone(2, eq=[(0, 1)])
    assert line.dim() == 1
    origin = Polyhedron.cone(2, eq=[(1, 0), (0, 1)])
    assert origin.dim() == 0
    assert not origin.has_direction()
    assert line.has_direction()
    # implicit equality: u1 >= 0, -u1 >= 0 collapses a dimension
    implicit = Polyhedron.cone(2, ge=[(1, 0), (-1, 0)])
    assert implicit.dim() == 1


def test_rays_examples():
    quad = Polyhedron.cone(2, ge=[(1, 0), (0, 1)])
    assert quad.rays() == [(0, 1), (1, 0)]
    halfdiag = Polyhedron(2, eq=[((1, -1), 0)], ge=[((-1, 0), 0)])
    assert halfdiag.rays() == [(-1, -1)]
    full = Polyhedron.full(2)
    assert full.rays() == [(-1, 0), (0, -1), (0, 1), (1, 0)]


def test_rays_guard():
    with pytest.raises(ValueError):
        Polyhedron.full(7).rays()
    with pytest.raises(ValueError):
        Polyhedron(1, ge=[((1,), 1)]).rays()


def test_ray_cone_membership():
    r = ray_cone(Direction.of(2, 3))
    assert r.contains((2, 3)) and r.contains((4, 6))
    assert not r.contains((-2, -3)) and not r.contains((0, 0))
    assert not r.contains((2, 4))


def test_local_cone_at_origin_examples():
    point = PolyhedralSet(1, [Polyhedron(1, eq=[((1,), 1)])])
    assert local_cone_at_origin(point).is_empty

    ray = PolyhedralSet(1, [Polyhedron(1, ge=[((1,), 0)])])
    lc = local_cone_at_origin(ray)
    assert lc.set_eq(ray)

    seg = PolyhedralSet(2, [Polyhedron(2, eq=[((0, 1), 0)],
                                       ge=[((1, 0), 1), ((-1, 0), -2)])])
    assert local_cone_at_origin(seg).is_empty


def test_local_cone_at_origin_fixes_conical_sets():
    rng = random.Random(3)
    for _ in range(20):
        rank = rng.randint(1, 3)
        pieces = []
        for _ in range(rng.randint(1, 3)):
            normals = [tuple(rng.randint(-2, 2) for _ in range(rank))
                       for _ in range(rng.randint(0, 3))]
            pieces.append(Polyhedron.cone(rank, ge=normals))
        fan = PolyhedralSet(rank, pieces).pruned()
        assert local_cone_at_origin(fan).set_eq(fan)


def test_local_cone_at_infinity_examples():
    point = PolyhedralSet(1, [Polyhedron(1, eq=[((1,), 1)])])
    rec = local_cone_at_infinity(point)
    assert not rec.is_empty
    assert rec.contains((0,)) and not rec.contains((1,)) and not rec.contains((-1,))

    halfline = PolyhedralSet(1, [Polyhedron(1, ge=[((1,), 1)])])
    rec = local_cone_at_infinity(halfline)
    assert rec.set_eq(PolyhedralSet(1, [Polyhedron.cone(1, ge=[(1,)])]))

    affine_line = PolyhedralSet(2, [Polyhedron(2, eq=[((0, 1), 1)])])
    rec = local_cone_at_infinity(affine_line)
    assert rec.set_eq(PolyhedralSet(2, [Polyhedron.cone(2, eq=[(0, 1)])]))


def test_recession_idempotent():
    rng = random.Random(9)
    for _ in range(20):
        rank = rng.randint(1, 3)
        pieces = []
        for _ in range(rng.randint(1, 3)):
            rows = [(tuple(rng.randint(-2, 2) for _ in range(rank)), rng.randint(-2, 2))
                    for _ in range(rng.randint(0, 3))]
            pieces.append(Polyhedron(rank, ge=rows))
        fan = PolyhedralSet(rank, pieces).pruned()
        once = local_cone_at_infinity(fan)
        assert local_cone_at_infinity(once).set_eq(once)


def test_in_open_hemisphere_examples():
    res = in_open_hemisphere([Direction.of(1, 0), Direction.of(0, 1)])
    assert res.in_hemisphere

    res = in_open_hemisphere([Direction.of(1, 0), Direction.of(-1, 0)])
    assert not res.in_hemisphere
    assert res.combination == (Fraction(1, 2), Fraction(1, 2))

    res = in_open_hemisphere([Direction.of(1, 0), Direction.of(0, 1),
                              Direction.of(-1, -1)])
    assert not res.in_hemisphere
    assert res.combination == (Fraction(1, 3), Fraction(1, 3), Fraction(1, 3))


def test_covers_with_antipodal_examples():
    two_points = SphericalSet.from_directions([Direction.of(1, 0), Direction.of(0, 1)])
    assert covers_with_antipodal(two_points.complement())
    assert not covers_with_antipodal(SphericalSet.empty(1))
    assert covers_with_antipodal(SphericalSet.whole_sphere(2))
    # antipodal pair removed: not covered
    pair = SphericalSet.from_directions([Direction.of(1,), Direction.of(-1,)])
    assert not covers_with_antipodal(pair.complement())


def test_balanceable_examples():
    tropical_line = PolyhedralSet(2, [
        Polyhedron(2, eq=[((1, -1), 0)], ge=[((-1, 0), 0)]),
        Polyhedron(2, eq=[((1, 0), 0)], ge=[((0, 1), 0)]),
        Polyhedron(2, eq=[((0, 1), 0)], ge=[((1, 0), 0)]),
    ])
    assert balanceable_at(tropical_line, (0, 0))

    single_ray = PolyhedralSet(2, [Polyhedron.cone(2, eq=[(0, 1)], ge=[(1, 0)])])
    assert not balanceable_at(single_ray, (0, 0))

    line = PolyhedralSet(2, [Polyhedron.cone(2, eq=[(0, 1)])])
    assert balanceable_at(line, (0, 0))

    with pytest.raises(ValueError):
        balanceable_at(line, (0, 5))


def test_pure_dimension_examples():
    tropical_line = PolyhedralSet(2, [
        Polyhedron(2, eq=[((1, -1), 0)], ge=[((-1, 0), 0)]),
        Polyhedron(2, eq=[((1, 0), 0)], ge=[((0, 1), 0)]),
        Polyhedron(2, eq=[((0, 1), 0)], ge=[((1, 0), 0)]),
    ])
    assert pure_dimension(tropical_line) == 1

    mixed = PolyhedralSet(2, [
        Polyhedron.cone(2, ge=[(1, 0), (0, 1)]),
        Polyhedron.cone(2, eq=[(1, 1)], ge=[(1, -1)]),
    ])
    assert pure_dimension(mixed) is None

    origin = PolyhedralSet(2, [Polyhedron.cone(2, eq=[(1, 0), (0, 1)])])
    assert pure_dimension(origin) == 0
    assert pure_dimension(PolyhedralSet.empty(2)) is None
    # faces contained in larger pieces do not break purity
    with_face = PolyhedralSet(2, [
        Polyhedron.cone(2, ge=[(1, 0), (0, 1)]),
        Polyhedron.cone(2, eq=[(0, 1)], ge=[(1, 0)]),
    ])
    assert pure_dimension(with_face) == 2


def test_boolean_ops_and_radial():
    quad = PolyhedralSet(2, [Polyhedron.cone(2, ge=[(1, 0), (0, 1)])])
    comp = quad.complement()
    for pt in [(1, 1), (1, 0), (0, 0)]:
        assert quad.contains(pt) and not comp.contains(pt)
    for pt in [(-1, 1), (1, -1), (-2, -3)]:
        assert comp.contains(pt) and not quad.contains(pt)
    assert quad.union(comp).set_eq(PolyhedralSet.full(2))
    assert quad.intersect(comp).is_empty

    shifted = PolyhedralSet(2, [Polyhedron(2, ge=[((1, 0), 1)], eq=[((0, 1), 2)])])
    sph = shifted.radial()
    assert sph.contains(Direction.of(1, 2))
    assert sph.contains(Direction.of(2, 1))
    assert not sph.contains(Direction.of(-1, 2))
    assert not sph.contains(Direction.of(0, -1))
    # u2 = 2 with u1 >= 1: direction (0,1) only as a limit, never attained
    assert not sph.contains(Direction.of(0, 1))


def test_spherical_scale_invariance():
    rng = random.Random(21)
    quad = SphericalSet(2, [Polyhedron.cone(2, ge=[(1, 2), (2, -1)], gt=[(1, 0)])])
    for _ in range(50):
        vec = (rng.randint(-5, 5), rng.randint(-5, 5))
        if vec == (0, 0):
            continue
        d = Direction.of(*vec)
        for k in (1, 2, 5):
            scaled = Direction.from_vector(tuple(k * x for x in d.vector))
            assert quad.contains(d) == quad.contains(scaled)


def test_finite_directions():
    s = SphericalSet.from_directions([Direction.of(1, 0), Direction.of(0, 1)])
    assert [d.vector for d in s.finite_directions()] == [(0, 1), (1, 0)]
    assert SphericalSet.whole_sphere(2).finite_directions() is None
    line = SphericalSet(1, [Polyhedron.full(1)])
    assert [d.vector for d in line.finite_directions()] == [(-1,), (1,)]


def test_feasible_point_prefers_strict_bounds():
    # y >= 0, y <= 1 - x, y < 2 - 2x: feasible, but the extracted point must
    # honor the strict row even when two upper bounds evaluate equally
    p = Polyhedron(2, ge=[((0, 1), 0), ((-1, -1), -1)], gt=[((-2, -1), -2)])
    pt = p.feasible_point()
    assert pt is not None
    assert p.contains(pt)
    # the same with the strict row rewritten to tie exactly at x = 1
    q = Polyhedron(2, ge=[((0, 1), 0), ((-1, -1), -1)], gt=[((-1, -1), -1)])
    pt_q = q.feasible_point()
    assert pt_q is not None and q.contains(pt_q)


def test_feasible_points_always_contained():
    rng = random.Random(77)
    found = 0
    for _ in range(300):
        rank = rng.randint(1, 4)
        rows = lambda k: [
            (tuple(rng.randint(-3, 3) for _ in range(rank)), rng.randint(-2, 2))
            for _ in range(k)]
        p = Polyhedron(rank, eq=rows(rng.randint(0, 1)),
                       ge=rows(rng.randint(0, 3)), gt=rows(rng.randint(0, 2)))
        pt = p.feasible_point()
        if pt is not None:
            found += 1
            assert p.contains(pt)
    assert found > 50
