"""Exact rational polyhedra, finite unions, and spherical sets.

A Polyhedron is cut out by affine rows a*u = b, a*u >= b, a*u > b with
integer primitive data; homogeneous instances (all b = 0) are cones.  A
PolyhedralSet is a finite union of possibly-overlapping, relatively open
polyhedra (no face-lattice normalization).  A SphericalSet is a union of
homogeneous pieces read as a set of ray classes (the origin is ignored).

Feasibility, emptiness, dimension, containment, and point extraction are
decided exactly by Fourier-Motzkin elimination with strictness tracking,
plus Gaussian substitution for equality rows.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations

from . import linalg
from .rings import Character, DimensionError, Direction

RAY_RANK_LIMIT = 6  # ray enumeration is desk scale only


def _norm_row(vec, rhs, orient=False):
    """Scale (vec | rhs) to coprime integers; orient makes the sign canonical."""
    fr = [Fraction(x) for x in vec] + [Fraction(rhs)]
    den = math.lcm(*(x.denominator for x in fr))
    ints = [int(x * den) for x in fr]
    g = math.gcd(*(abs(x) for x in ints))
    if g:
        ints = [x // g for x in ints]
    if orient:
        lead = next((x for x in ints if x != 0), 0)
        if lead < 0:
            ints = [-x for x in ints]
    return tuple(ints[:-1]), ints[-1]


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# Fourier-Motzkin core.  Inequality rows are (vec, rhs, strict) over exact
# rationals, read as vec*y >= rhs (or > when strict).


def _dedupe_ineqs(rows):
    best = {}
    for vec, rhs, strict in rows:
        key = _norm_row(vec, rhs)
        cur = best.get(key)
        if cur is None or (strict and not cur[2]):
            best[key] = (key[0], Fraction(key[1]), strict)
    return list(best.values())


def _fm_eliminate(rows, var):
    """Eliminate variable `var`; returns reduced rows or None (infeasible)."""
    pos, neg, rest = [], [], []
    for row in rows:
        c = row[0][var]
        (pos if c > 0 else neg if c < 0 else rest).append(row)
    out = list(rest)
    for lvec, lrhs, lstrict in pos:
        for uvec, urhs, ustrict in neg:
            a, b = lvec[var], uvec[var]
            vec = tuple(-b * x + a * y for x, y in zip(lvec, uvec))
            rhs = -b * lrhs + a * urhs
            strict = lstrict or ustrict
            if any(vec):
                out.append((vec, rhs, strict))
            elif rhs > 0 or (rhs == 0 and strict):
                return None
    return _dedupe_ineqs(out)


def _fm_point(rows, n):
    """A rational point satisfying the inequality rows, or None."""
    for vec, rhs, strict in rows:
        if not any(vec) and (rhs > 0 or (rhs == 0 and strict)):
            return None
    rows = _dedupe_ineqs([r for r in rows if any(r[0])])
    if n == 0:
        return []
    stages = []  # (var, rows before eliminating var)
    remaining = list(range(n))
    while remaining:
        # cheapest variable first keeps the row blowup down
        var = min(remaining,
                  key=lambda v: (sum(1 for r in rows if r[0][v] > 0)
                                 * sum(1 for r in rows if r[0][v] < 0), v))
        stages.append((var, rows))
        rows = _fm_eliminate(rows, var)
        if rows is None:
            return None
        remaining.remove(var)
    point = [None] * n
    for var, stage_rows in reversed(stages):
        lows, highs = [], []
        for vec, rhs, strict in stage_rows:
            c = vec[var]
            if c == 0:
                continue
            rest = rhs - sum(vec[j] * point[j] for j in range(n)
                             if j != var and point[j] is not None)
            (lows if c > 0 else highs).append((Fraction(rest, c), strict))
        # at equal bound values the strict row is the binding one
        lo = max(lows) if lows else None
        hi = min(highs, key=lambda t: (t[0], not t[1])) if highs else None
        if lo is None and hi is None:
            val = Fraction(0)
        elif hi is None:
            val = lo[0] + 1 if lo[1] else lo[0]
        elif lo is None:
            val = hi[0] - 1 if hi[1] else hi[0]
        elif lo[0] == hi[0]:
            val = lo[0]
        else:
            val = (lo[0] + hi[0]) / 2
        point[var] = val
    return point


def _solve_system(eq_rows, ineq_rows, n):
    """Point satisfying equality pairs and strict-flagged inequality rows, or None."""
    if not eq_rows:
        return _fm_point(list(ineq_rows), n)
    aug = [[Fraction(x) for x in vec] + [Fraction(rhs)] for vec, rhs in eq_rows]
    red, pivots = linalg.rref(aug)
    if n in pivots:
        return None
    free = [c for c in range(n) if c not in pivots]
    sub_rows = []
    for vec, rhs, strict in ineq_rows:
        vec = [Fraction(x) for x in vec]
        const = Fraction(0)
        coef = {f: vec[f] for f in free}
        for r, pc in enumerate(pivots):
            if vec[pc]:
                const += vec[pc] * red[r][n]
                for f in free:
                    coef[f] -= vec[pc] * red[r][f]
        sub_rows.append((tuple(coef[f] for f in free), Fraction(rhs) - const, strict))
    y = _fm_point(sub_rows, len(free))
    if y is None:
        return None
    point = [Fraction(0)] * n
    for f, val in zip(free, y):
        point[f] = val
    for r, pc in enumerate(pivots):
        point[pc] = red[r][n] - sum(red[r][f] * point[f] for f in free)
    return point


# ---------------------------------------------------------------------------


class Polyhedron:
    """Exact rational polyhedron {u : eq*u = b, ge*u >= b, gt*u > b}.

    Rows are (vector, rhs) pairs; use cone() for plain normal vectors.
    Instances are immutable by discipline and hashable on their row data.
    """

    def __init__(self, rank, eq=(), ge=(), gt=()):
        self.rank = rank
        self._forced_empty = False
        groups = []
        for rows, kind in ((eq, "eq"), (ge, "ge"), (gt, "gt")):
            sink = set()
            for vec, rhs in rows:
                if len(vec) != rank:
                    raise DimensionError(
                        f"row {vec} has length {len(vec)}, expected {rank}")
                nvec, nrhs = _norm_row(vec, rhs, orient=(kind == "eq"))
                if not any(nvec):
                    if (kind == "eq" and nrhs != 0) or \
                       (kind == "ge" and nrhs > 0) or \
                       (kind == "gt" and nrhs >= 0):
                        self._forced_empty = True
                    continue
                sink.add((nvec, nrhs))
            groups.append(tuple(sorted(sink)))
        self.eq, self.ge, self.gt = groups
        self._empty = True if self._forced_empty else None
        self._point = None
        self._dim = None

    @classmethod
    def full(cls, rank):
        return cls(rank)

    @classmethod
    def cone(cls, rank, eq=(), ge=(), gt=()):
        """Homogeneous polyhedron from plain normal vectors."""
        return cls(rank, eq=[(v, 0) for v in eq], ge=[(v, 0) for v in ge],
                   gt=[(v, 0) for v in gt])

    # -- basic structure ----------------------------------------------------

    @property
    def is_homogeneous(self):
        return all(r == 0 for _, r in self.eq + self.ge + self.gt)

    def _key(self):
        return (self.rank, self._forced_empty, self.eq, self.ge, self.gt)

    def __eq__(self, other):
        return isinstance(other, Polyhedron) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"Polyhedron(rank={self.rank}, eq={self.eq}, ge={self.ge}, gt={self.gt})"

    def _ineq_rows(self):
        rows = [(tuple(Fraction(x) for x in v), Fraction(r), False) for v, r in self.ge]
        rows += [(tuple(Fraction(x) for x in v), Fraction(r), True) for v, r in self.gt]
        return rows

    # -- predicates ---------------------------------------------------------

    def contains(self, point) -> bool:
        point = [Fraction(x) for x in point]
        if len(point) != self.rank:
            raise DimensionError(f"point has length {len(point)}, expected {self.rank}")
        if self._forced_empty:
            return False
        return (all(_dot(v, point) == r for v, r in self.eq)
                and all(_dot(v, point) >= r for v, r in self.ge)
                and all(_dot(v, point) > r for v, r in self.gt))

    def feasible_point(self):
        if self._empty is not None:
            return self._point
        pt = _solve_system(list(self.eq), self._ineq_rows(), self.rank)
        self._empty = pt is None
        self._point = tuple(pt) if pt is not None else None
        return self._point

    @property
    def is_empty(self) -> bool:
        if self._empty is None:
            self.feasible_point()
        return self._empty

    def dim(self):
        """Dimension of the affine hull, or None when empty."""
        if self.is_empty:
            return None
        if self._dim is not None:
            return self._dim
        eqs = [list(v) for v, _ in self.eq]
        for vec, rhs in self.ge:
            # implicit equality: the weak row never has slack on the set
            probe = Polyhedron(self.rank, eq=self.eq, ge=self.ge,
                               gt=self.gt + ((vec, rhs),))
            if probe.is_empty:
                eqs.append(list(vec))
        self._dim = self.rank - (linalg.rank(eqs) if eqs else 0)
        return self._dim

    def has_direction(self) -> bool:
        """True iff the set contains a nonzero point (homogeneous pieces)."""
        if self.is_empty:
            return False
        if self.gt:
            return True  # strict rows rule out the origin
        if not self.is_homogeneous:
            return True
        return self.dim() >= 1

    # -- transforms ----------------------------------------------------------

    def closure(self):
        return Polyhedron(self.rank, eq=self.eq, ge=self.ge + self.gt)

    def negate(self):
        """Image under u -> -u (antipodal reflection)."""
        def flip(rows):
            return [(tuple(-a for a in v), r) for v, r in rows]
        return Polyhedron(self.rank, eq=flip(self.eq), ge=flip(self.ge),
                          gt=flip(self.gt))

    def intersect(self, other: "Polyhedron") -> "Polyhedron":
        if self.rank != other.rank:
            raise DimensionError("rank mismatch in intersection")
        out = Polyhedron(self.rank, eq=self.eq + other.eq, ge=self.ge + other.ge,
                         gt=self.gt + other.gt)
        if self._forced_empty or other._forced_empty:
            out._forced_empty = True
            out._empty = True
        return out

    def complement_pieces(self):
        """Relatively open pieces whose union is the complement."""
        if self._forced_empty:
            return [Polyhedron.full(self.rank)]
        out = []
        for vec, rhs in self.eq:
            out.append(Polyhedron(self.rank, gt=[(vec, rhs)]))
            out.append(Polyhedron(self.rank, gt=[(tuple(-a for a in vec), -rhs)]))
        for vec, rhs in self.ge:
            out.append(Polyhedron(self.rank, gt=[(tuple(-a for a in vec), -rhs)]))
        for vec, rhs in self.gt:
            out.append(Polyhedron(self.rank, ge=[(tuple(-a for a in vec), -rhs)]))
        return out

    @classmethod
    def _empty_marker(cls, rank):
        p = cls(rank)
        p._forced_empty = True
        p._empty = True
        return p

    def recession(self) -> "Polyhedron":
        """Closed cone of directions of rays eventually inside the set."""
        if self.is_empty:
            return Polyhedron._empty_marker(self.rank)
        return Polyhedron.cone(self.rank, eq=[v for v, _ in self.eq],
                               ge=[v for v, _ in self.ge + self.gt])

    def germ_cone_at(self, x):
        """Directions d with x + eps*d inside for all small eps > 0, or None."""
        x = [Fraction(v) for v in x]
        if self._forced_empty:
            return None
        eq, ge, gt = [], [], []
        for vec, rhs in self.eq:
            if _dot(vec, x) != rhs:
                return None
            eq.append(vec)
        for rows, tight_sink in ((self.ge, ge), (self.gt, gt)):
            for vec, rhs in rows:
                slack = _dot(vec, x) - rhs
                if slack < 0:
                    return None
                if slack == 0:
                    tight_sink.append(vec)
        return Polyhedron.cone(self.rank, eq=eq, ge=ge, gt=gt)

    def positive_hull(self) -> "Polyhedron":
        """Homogeneous cone {mu*u : u in P, mu > 0} via FM projection."""
        if self.is_empty:
            return Polyhedron._empty_marker(self.rank)
        if self.is_homogeneous:
            return self
        def lift(rows):
            return [(tuple(v) + (-r,), 0) for v, r in rows]
        lifted = Polyhedron(self.rank + 1, eq=lift(self.eq), ge=lift(self.ge),
                            gt=lift(self.gt) + [((0,) * self.rank + (1,), 0)])
        return lifted.project_out_last()

    def project_out_last(self) -> "Polyhedron":
        """Exact projection dropping the last coordinate."""
        n = self.rank
        rows = self._ineq_rows()
        eq_rows = [(tuple(Fraction(a) for a in v), Fraction(r)) for v, r in self.eq]
        pivot = next((row for row in eq_rows if row[0][n - 1] != 0), None)
        new_eq = []
        if pivot is not None:
            pv, pr = pivot
            c = pv[n - 1]
            for vec, rhs in eq_rows:
                if (vec, rhs) == pivot:
                    continue
                f = vec[n - 1] / c
                new_eq.append((tuple(a - f * b for a, b in zip(vec, pv))[: n - 1],
                               rhs - f * pr))
            new_rows = []
            for vec, rhs, strict in rows:
                f = vec[n - 1] / c
                new_rows.append((tuple(a - f * b for a, b in zip(vec, pv))[: n - 1],
                                 rhs - f * pr, strict))
            rows = new_rows
        else:
            new_eq = [(v[: n - 1], r) for v, r in eq_rows]
            reduced = _fm_eliminate(rows, n - 1)
            if reduced is None:
                return Polyhedron._empty_marker(n - 1)
            rows = [(v[: n - 1], r, s) for v, r, s in reduced]
        return Polyhedron(n - 1, eq=new_eq,
                          ge=[(v, r) for v, r, s in rows if not s],
                          gt=[(v, r) for v, r, s in rows if s])

    # -- ray enumeration ----------------------------------------------------

    def lineality_basis(self):
        """Primitive basis of the lineality space of the closure."""
        normals = [list(v) for v, _ in self.eq + self.ge + self.gt]
        if not normals:
            return [tuple(int(i == j) for j in range(self.rank))
                    for i in range(self.rank)]
        return [linalg.primitive_vector(b) for b in linalg.nullspace(normals)]

    def rays(self):
        """Extreme rays of the closure, primitive integer vectors, sorted.

        When the lineality space L is nonzero: rays of closure intersected
        with the orthogonal complement of L, plus +/- a primitive basis of L
        (documented convention).
        """
        if self.rank > RAY_RANK_LIMIT:
            raise ValueError(f"ray enumeration limited to rank <= {RAY_RANK_LIMIT}")
        if not self.is_homogeneous:
            raise ValueError("rays need a homogeneous piece; use positive_hull()")
        if self.is_empty:
            return []
        closure = self.closure()
        lin = closure.lineality_basis()
        result = set()
        if lin:
            for l in lin:
                result.add(tuple(l))
                result.add(tuple(-x for x in l))
            pointed = Polyhedron(self.rank,
                                 eq=closure.eq + tuple((l, 0) for l in lin),
                                 ge=closure.ge)
        else:
            pointed = closure
        eqs = [list(v) for v, _ in pointed.eq]
        normals = sorted({v for v, _ in pointed.ge})
        base_rank = linalg.rank(eqs) if eqs else 0
        need = self.rank - 1 - base_rank
        for size in range(0, max(need, -1) + 1):
            for combo in combinations(normals, size):
                mat = eqs + [list(v) for v in combo]
                if mat:
                    ns = linalg.nullspace(mat)
                else:
                    ns = [[Fraction(int(i == j)) for j in range(self.rank)]
                          for i in range(self.rank)]
                if len(ns) != 1:
                    continue
                d = linalg.primitive_vector(ns[0])
                for cand in (d, tuple(-x for x in d)):
                    if all(_dot(v, cand) >= 0 for v in normals):
                        result.add(cand)
        return sorted(result)


# ---------------------------------------------------------------------------


class PolyhedralSet:
    """Finite union of relatively open polyhedra of a common rank."""

    def __init__(self, rank, pieces=()):
        self.rank = rank
        seen, keep = set(), []
        for p in pieces:
            if p.rank != rank:
                raise DimensionError("all pieces must share the ambient rank")
            key = p._key()
            if key not in seen:
                seen.add(key)
                keep.append(p)
        self.pieces = tuple(keep)

    @classmethod
    def empty(cls, rank):
        return cls(rank)

    @classmethod
    def full(cls, rank):
        return cls(rank, [Polyhedron.full(rank)])

    def pruned(self) -> "PolyhedralSet":
        return PolyhedralSet(self.rank, [p for p in self.pieces if not p.is_empty])

    @property
    def is_empty(self) -> bool:
        return all(p.is_empty for p in self.pieces)

    def contains(self, point) -> bool:
        return any(p.contains(point) for p in self.pieces)

    def union(self, other: "PolyhedralSet") -> "PolyhedralSet":
        if self.rank != other.rank:
            raise DimensionError("rank mismatch in union")
        return PolyhedralSet(self.rank, self.pieces + other.pieces).pruned()

    def intersect(self, other: "PolyhedralSet") -> "PolyhedralSet":
        if self.rank != other.rank:
            raise DimensionError("rank mismatch in intersection")
        out = [p.intersect(q) for p in self.pieces for q in other.pieces]
        return PolyhedralSet(self.rank, [p for p in out if not p.is_empty])

    def complement(self) -> "PolyhedralSet":
        out = [Polyhedron.full(self.rank)]
        for piece in self.pieces:
            if piece.is_empty:
                continue
            out = [q.intersect(c) for q in out for c in piece.complement_pieces()]
            out = [q for q in out if not q.is_empty]
        return PolyhedralSet(self.rank, out)

    def minus(self, other: "PolyhedralSet") -> "PolyhedralSet":
        return self.intersect(other.complement())

    def subset_of(self, other: "PolyhedralSet") -> bool:
        return self.minus(other).is_empty

    def set_eq(self, other: "PolyhedralSet") -> bool:
        return self.subset_of(other) and other.subset_of(self)

    def negate(self) -> "PolyhedralSet":
        return PolyhedralSet(self.rank, [p.negate() for p in self.pieces])

    def local_cone_at(self, x) -> "PolyhedralSet":
        germs = [p.germ_cone_at(x) for p in self.pieces]
        return PolyhedralSet(self.rank,
                             [g for g in germs if g is not None and not g.is_empty])

    def recession(self) -> "PolyhedralSet":
        recs = [p.recession() for p in self.pieces if not p.is_empty]
        return PolyhedralSet(self.rank, recs)

    def radial(self) -> "SphericalSet":
        hulls = [p.positive_hull() for p in self.pieces if not p.is_empty]
        return SphericalSet(self.rank, [h for h in hulls if h.has_direction()])

    def __repr__(self):
        return f"PolyhedralSet(rank={self.rank}, pieces={len(self.pieces)})"


class SphericalSet:
    """Union of homogeneous pieces read as ray classes on the boundary sphere."""

    def __init__(self, rank, pieces=()):
        for p in pieces:
            if not p.is_homogeneous and not p._forced_empty:
                raise ValueError("spherical sets need homogeneous pieces")
        self._set = PolyhedralSet(rank, pieces)
        self.rank = rank

    @classmethod
    def empty(cls, rank):
        return cls(rank)

    @classmethod
    def whole_sphere(cls, rank):
        return cls(rank, [Polyhedron.full(rank)])

    @classmethod
    def from_directions(cls, dirs, rank=None) -> "SphericalSet":
        dirs = list(dirs)
        if not dirs and rank is None:
            raise ValueError("need a rank for an empty direction list")
        rank = rank if rank is not None else dirs[0].rank
        return cls(rank, [ray_cone(d) for d in dirs])

    @property
    def pieces(self):
        return self._set.pieces

    def contains(self, direction: Direction) -> bool:
        # pieces are homogeneous, so testing the primitive representative
        # realizes scale invariance of [chi] membership exactly
        return self._set.contains(direction.vector)

    @property
    def is_empty(self) -> bool:
        return not any(p.has_direction() for p in self.pieces)

    def union(self, other: "SphericalSet") -> "SphericalSet":
        if self.rank != other.rank:
            raise DimensionError("rank mismatch in union")
        return SphericalSet(self.rank, self.pieces + other.pieces)

    def intersect(self, other: "SphericalSet") -> "SphericalSet":
        return SphericalSet(self.rank, self._set.intersect(other._set).pieces)

    def complement(self) -> "SphericalSet":
        return SphericalSet(self.rank, self._set.complement().pieces)

    def minus(self, other: "SphericalSet") -> "SphericalSet":
        return SphericalSet(self.rank, self._set.minus(other._set).pieces)

    def negate(self) -> "SphericalSet":
        return SphericalSet(self.rank, self._set.negate().pieces)

    def subset_of(self, other: "SphericalSet") -> bool:
        return not any(p.has_direction() for p in self._set.minus(other._set).pieces)

    def set_eq(self, other: "SphericalSet") -> bool:
        return self.subset_of(other) and other.subset_of(self)

    def rays(self):
        """Sorted extreme rays of the closures of all pieces."""
        out = set()
        for p in self.pieces:
            if not p.is_empty:
                out.update(p.rays())
        return [Direction(r) for r in sorted(out)]

    def finite_directions(self):
        """The direction list when every piece is at most a ray, else None."""
        dirs = set()
        for p in self.pieces:
            if p.is_empty or not p.has_direction():
                continue
            if p.dim() > 1:
                return None
            for r in p.rays():
                d = Direction(r)
                if self.contains(d):
                    dirs.add(d)
        return sorted(dirs, key=lambda d: d.vector)

    def __repr__(self):
        return f"SphericalSet(rank={self.rank}, pieces={len(self.pieces)})"


def ray_cone(d: Direction) -> Polyhedron:
    """The open ray {lambda * d : lambda > 0} as a homogeneous piece."""
    n = d.rank
    v = d.vector
    eqs = []
    # u parallel to d, via the 2x2 minors of (u ; d)
    for i in range(n):
        for j in range(i + 1, n):
            row = [0] * n
            row[i], row[j] = v[j], -v[i]
            if any(row):
                eqs.append(tuple(row))
    return Polyhedron.cone(n, eq=eqs, gt=[v])


# ---------------------------------------------------------------------------
# Named decision procedures.


def cone_membership(piece: Polyhedron, chi: Character) -> bool:
    return piece.contains(chi.values)


def local_cone_at_origin(fan: PolyhedralSet) -> PolyhedralSet:
    return fan.local_cone_at([0] * fan.rank)


def local_cone_at_infinity(fan: PolyhedralSet) -> PolyhedralSet:
    return fan.recession()


class HemisphereCertificate:
    """Either a strict witness chi or a rational convex combination of 0."""

    def __init__(self, witness=None, combination=None):
        assert (witness is None) != (combination is None)
        self.witness = witness
        self.combination = combination

    @property
    def in_hemisphere(self) -> bool:
        return self.witness is not None


def in_open_hemisphere(dirs) -> HemisphereCertificate:
    """Decide whether finitely many directions share an open hemisphere.

    Returns a verified witness character (chi * u > 0 for every input u) or
    a verified rational convex combination of the inputs equal to zero.
    """
    dirs = [d.vector if isinstance(d, Direction) else tuple(d) for d in dirs]
    if not dirs:
        raise ValueError("need at least one direction")
    n = len(dirs[0])
    # chi * u >= 1 for all u is scale-equivalent to chi * u > 0
    point = _solve_system([], [(tuple(Fraction(x) for x in u), Fraction(1), False)
                               for u in dirs], n)
    if point is not None:
        chi = Character(tuple(point))
        assert all(_dot(chi.values, u) > 0 for u in dirs)
        return HemisphereCertificate(witness=chi)
    k = len(dirs)
    eqs = [(tuple(Fraction(dirs[j][i]) for j in range(k)), Fraction(0))
           for i in range(n)]
    eqs.append((tuple(Fraction(1) for _ in range(k)), Fraction(1)))
    nonneg = [(tuple(Fraction(int(j == i)) for j in range(k)), Fraction(0), False)
              for i in range(k)]
    lam = _solve_system(eqs, nonneg, k)
    assert lam is not None, "hemisphere alternative failed to produce a certificate"
    assert sum(lam) == 1 and all(x >= 0 for x in lam)
    for i in range(n):
        assert sum(l * u[i] for l, u in zip(lam, dirs)) == 0
    return HemisphereCertificate(combination=tuple(lam))


def covers_with_antipodal(s: SphericalSet) -> bool:
    """True iff s together with its antipodal set covers the whole sphere."""
    comp = s.complement()
    for p in comp.pieces:
        for q in comp.pieces:
            if p.intersect(q.negate()).has_direction():
                return False
    return True


def balanceable_at(fan: PolyhedralSet, x) -> bool:
    """True iff the convex hull of the local cone at x is an affine subspace.

    Tested as: for every generator g of the local cone, -g lies in the
    positive hull of all generators.
    """
    if not fan.contains(x):
        raise ValueError(f"point {tuple(x)} is not in the set")
    local = fan.local_cone_at(x)
    gens: set = set()
    for piece in local.pieces:
        if not piece.is_empty:
            gens.update(piece.rays())
    gens = sorted(gens)
    if not gens:
        return True  # local cone is the origin; its hull is the zero subspace
    k = len(gens)
    for g in gens:
        eqs = [(tuple(Fraction(gens[j][i]) for j in range(k)), Fraction(-g[i]))
               for i in range(fan.rank)]
        nonneg = [(tuple(Fraction(int(j == i)) for j in range(k)), Fraction(0), False)
                  for i in range(k)]
        if _solve_system(eqs, nonneg, k) is None:
            return False
    return True


def pure_dimension(fan: PolyhedralSet):
    """Common dimension of inclusion-maximal pieces; None if mixed or empty."""
    pieces = [p for p in fan.pieces if not p.is_empty]
    if not pieces:
        return None
    sets = [PolyhedralSet(fan.rank, [p]) for p in pieces]
    dims = [p.dim() for p in pieces]
    maximal_dims = set()
    for i in range(len(pieces)):
        strictly_contained = False
        for j in range(len(pieces)):
            if j == i or dims[j] < dims[i]:
                continue
            if sets[i].subset_of(sets[j]) and not sets[j].subset_of(sets[i]):
                strictly_contained = True
                break
        if not strictly_contained:
            maximal_dims.add(dims[i])
    return maximal_dims.pop() if len(maximal_dims) == 1 else None
