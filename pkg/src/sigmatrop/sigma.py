"""The zero-dimensional sigma invariant of modules over Z^n, with certificates.

Architecture: membership of a ray class in the invariant is only ever claimed
with a checkable certificate (an annihilator whose initial part at the
direction is exactly 1); complement membership only with an explicit
valuation vector; everything else stays "undecided".  This keeps every
answer sound without a general Groebner-fan computation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import sympy

from . import linalg
from .polyhedra import (Polyhedron, PolyhedralSet, SphericalSet,
                        covers_with_antipodal, in_open_hemisphere)
from .rings import (ZZ, Character, DimensionError, Direction, Domain,
                    LaurentPoly, chi_value, initial_part, v_chi)
from .tropical import ValuedPoly, global_tropical_Z, trop_hypersurface, trop_prevariety
from .valuations import PAdicValuation, TrivialValuation, prime_support


class UnsupportedModeError(ValueError):
    """The requested operation is not available for this presentation mode."""


# ---------------------------------------------------------------------------
# Module presentations.


@dataclass(frozen=True)
class ScalarAction:
    """Z^n acting on a rank-one rational lattice: generator i scales by rhos[i]."""

    rhos: tuple[Fraction, ...]

    @classmethod
    def of(cls, *rhos) -> "ScalarAction":
        return cls(tuple(Fraction(r) for r in rhos))

    def __post_init__(self):
        if not self.rhos or any(r == 0 for r in self.rhos):
            raise ValueError("scalar actions need nonzero ratios")

    @property
    def rank(self) -> int:
        return len(self.rhos)

    @property
    def dim(self) -> int:
        return 1


@dataclass(frozen=True)
class MatrixAction:
    """Z^n acting on Q^d by pairwise-commuting invertible rational matrices."""

    mats: tuple  # n matrices, each a d-tuple of d-tuples of Fractions
    generators: tuple  # module generators, each a d-tuple of Fractions

    @classmethod
    def of(cls, mats, generators) -> "MatrixAction":
        mats = tuple(tuple(tuple(Fraction(x) for x in row) for row in m) for m in mats)
        generators = tuple(tuple(Fraction(x) for x in g) for g in generators)
        return cls(mats, generators)

    def __post_init__(self):
        if not self.mats:
            raise ValueError("need at least one acting matrix")
        d = len(self.mats[0])
        for m in self.mats:
            if len(m) != d or any(len(row) != d for row in m):
                raise ValueError("matrices must be square of one size")
            if linalg.invert([list(r) for r in m]) is None:
                raise ValueError("acting matrices must be invertible")
        for a, b in itertools.combinations(self.mats, 2):
            ab = linalg.mat_mul([list(r) for r in a], [list(r) for r in b])
            ba = linalg.mat_mul([list(r) for r in b], [list(r) for r in a])
            if ab != ba:
                raise ValueError("acting matrices must commute pairwise")
        if not self.generators:
            raise ValueError("need module generators")
        if linalg.rank([list(g) for g in self.generators]) != d:
            raise ValueError("generators must span Q^d")

    @property
    def rank(self) -> int:
        return len(self.mats)

    @property
    def dim(self) -> int:
        return len(self.mats[0])


@dataclass(frozen=True)
class CyclicModule:
    """Cyclic presentation DG/(gens) over D in {Z, Q, GF(p)}."""

    rank: int
    domain: Domain
    gens: tuple[LaurentPoly, ...]

    def __post_init__(self):
        for g in self.gens:
            if g.rank != self.rank or g.domain != self.domain:
                raise DimensionError("generators must live in the stated ring")


ModulePresentation = ScalarAction | MatrixAction | CyclicModule


def as_matrix_action(mod: ModulePresentation) -> MatrixAction:
    if isinstance(mod, MatrixAction):
        return mod
    if isinstance(mod, ScalarAction):
        return MatrixAction.of([[[r]] for r in mod.rhos], [[1]])
    raise UnsupportedModeError("cyclic presentations have no action matrices")


def direct_sum_module(a: ModulePresentation, b: ModulePresentation) -> MatrixAction:
    """Block-diagonal direct sum of two matrix-action presentations."""
    ma, mb = as_matrix_action(a), as_matrix_action(b)
    if ma.rank != mb.rank:
        raise DimensionError("direct summands must share the acting rank")
    da, db = ma.dim, mb.dim
    mats = []
    for i in range(ma.rank):
        block = [[Fraction(0)] * (da + db) for _ in range(da + db)]
        for r in range(da):
            for c in range(da):
                block[r][c] = ma.mats[i][r][c]
        for r in range(db):
            for c in range(db):
                block[da + r][da + c] = mb.mats[i][r][c]
        mats.append(block)
    gens = [tuple(g) + (Fraction(0),) * db for g in ma.generators]
    gens += [(Fraction(0),) * da + tuple(g) for g in mb.generators]
    return MatrixAction.of(mats, gens)


# ---------------------------------------------------------------------------
# Action evaluation.


def _mat_power(m, k, inverse):
    d = len(m)
    out = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    base = m if k >= 0 else inverse
    for _ in range(abs(k)):
        out = linalg.mat_mul(out, base)
    return out


class _ActionCache:
    """Monomial-to-matrix evaluation for one MatrixAction."""

    def __init__(self, mod: MatrixAction):
        self.mod = mod
        self.d = mod.dim
        self.inverses = [linalg.invert([list(r) for r in m]) for m in mod.mats]
        self.cache: dict[tuple, list] = {}

    def monomial_matrix(self, g):
        g = tuple(g)
        if g not in self.cache:
            d = self.d
            out = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
            for i, e in enumerate(g):
                if e:
                    out = linalg.mat_mul(
                        out, _mat_power([list(r) for r in self.mod.mats[i]], e,
                                        self.inverses[i]))
            self.cache[g] = out
        return self.cache[g]

    def evaluate(self, lam: LaurentPoly):
        d = self.d
        out = [[Fraction(0)] * d for _ in range(d)]
        for g, c in lam.terms.items():
            mg = self.monomial_matrix(g)
            for i in range(d):
                for j in range(d):
                    out[i][j] += Fraction(c) * mg[i][j]
        return out


_caches: dict[MatrixAction, _ActionCache] = {}


def _cache_for(mod: MatrixAction) -> _ActionCache:
    if mod not in _caches:
        _caches[mod] = _ActionCache(mod)
    return _caches[mod]


def annihilates(lam: LaurentPoly, mod: ModulePresentation) -> bool:
    """True iff lam evaluated at the action matrices is the zero matrix."""
    if isinstance(mod, CyclicModule):
        raise UnsupportedModeError("use ideal_membership for cyclic presentations")
    m = as_matrix_action(mod)
    if lam.rank != m.rank:
        raise DimensionError(f"lam has rank {lam.rank}, module has rank {m.rank}")
    val = _cache_for(m).evaluate(lam)
    return all(x == 0 for row in val for x in row)


# ---------------------------------------------------------------------------
# Ideal membership in the Laurent ring (field coefficients, desk scale).

MEMBERSHIP_RANK_LIMIT = 4
MEMBERSHIP_DEGREE_LIMIT = 12


def _to_sympy_poly(f: LaurentPoly, syms):
    """Clear monomial units: shift exponents to be nonnegative."""
    shifts = [min((g[i] for g in f.terms), default=0) for i in range(f.rank)]
    shifts = [min(s, 0) for s in shifts]
    expr = 0
    for g, c in f.terms.items():
        term = sympy.Integer(c) if isinstance(c, int) else sympy.Rational(c)
        for i, e in enumerate(g):
            term *= syms[i] ** (e - shifts[i])
        expr += term
    return expr


def ideal_membership(lam: LaurentPoly, gens, domain: Domain) -> bool:
    """Decide lam in (gens) inside the Laurent ring over a field.

    Clears monomial units and reduces against a Groebner basis of the ideal
    saturated at the product of the variables.  Z coefficients are not
    supported here (see the tropical route for principal ideals over Z).
    """
    if domain.kind == "ZZ":
        raise UnsupportedModeError("ideal membership needs field coefficients")
    if lam.rank > MEMBERSHIP_RANK_LIMIT:
        raise ValueError(f"rank limited to {MEMBERSHIP_RANK_LIMIT}")
    gens = [g for g in gens if not g.is_zero]
    if lam.is_zero:
        return True
    if not gens:
        return False
    span = max(max(abs(e) for g in f.terms for e in g) for f in gens + [lam])
    if span * lam.rank > MEMBERSHIP_DEGREE_LIMIT * 2:
        raise ValueError("degree exceeds the desk-scale membership guard")
    n = lam.rank
    syms = sympy.symbols(f"v0:{n}") if n > 1 else (sympy.Symbol("v0"),)
    t = sympy.Symbol("t_sat")
    prod = t
    for s in syms:
        prod *= s
    basis_polys = [_to_sympy_poly(g, syms) for g in gens] + [prod - 1]
    kwargs = {"order": "grevlex"}
    if domain.kind == "GF":
        kwargs["modulus"] = domain.p
    gb = sympy.groebner(basis_polys, *syms, t, **kwargs)
    target = sympy.Poly(_to_sympy_poly(lam, syms), *syms, t,
                        **({"modulus": domain.p} if domain.kind == "GF" else {}))
    return gb.reduce(target)[1] == 0


# ---------------------------------------------------------------------------
# Certificates.


def certificate_valid(lam: LaurentPoly, chi: Character,
                      mod: ModulePresentation) -> bool:
    """Eq-style certificate check: lam annihilates the module and the initial
    part of lam at chi is exactly the constant 1."""
    if chi.is_zero:
        raise ValueError("certificates are defined for nonzero directions")
    if isinstance(mod, CyclicModule):
        kills = ideal_membership(lam, mod.gens, mod.domain)
    else:
        kills = annihilates(lam, mod)
    return kills and initial_part(chi, lam).is_one


def matrix_certificate_valid(theta, chi: Character, mod: ModulePresentation) -> bool:
    """Matrix certificate: theta * generators = 0 and the least chi-grade of
    theta is the identity matrix."""
    k = len(theta)
    if any(len(row) != k for row in theta):
        raise ValueError("theta must be square")
    m = as_matrix_action(mod)
    if k != len(m.generators):
        raise ValueError(f"theta is {k}x{k} but the module has "
                         f"{len(m.generators)} generators")
    cache = _cache_for(m)
    d = m.dim
    for i in range(k):
        acc = [Fraction(0)] * d
        for j in range(k):
            mat = cache.evaluate(theta[i][j])
            vec = m.generators[j]
            for r in range(d):
                acc[r] += sum(mat[r][c] * vec[c] for c in range(d))
        if any(x != 0 for x in acc):
            return False
    vals = [v_chi(chi, e) for row in theta for e in row if not e.is_zero]
    if not vals:
        return False
    rstar = min(vals)
    if rstar != 0:
        return False
    for i in range(k):
        for j in range(k):
            comp = LaurentPoly(
                theta[i][j].rank, theta[i][j].domain,
                {g: c for g, c in theta[i][j].terms.items()
                 if chi_value(chi, g) == rstar})
            if i == j and not comp.is_one:
                return False
            if i != j and not comp.is_zero:
                return False
    return True


def determinant_reduction(theta) -> LaurentPoly:
    """Determinant of a matrix certificate; if theta is a valid matrix
    certificate at chi then det(theta) is a valid scalar certificate there."""
    from .rings import poly_matrix_det

    return poly_matrix_det(theta)


# -- search ------------------------------------------------------------------


def _support_in_box(rank: int, k: int):
    return sorted(g for g in itertools.product(range(-k, k + 1), repeat=rank)
                  if any(g))


def _solve_for_support(mod: MatrixAction, monos, coeff_bound: int):
    """Integer coefficients c_g with sum c_g * action(g) = -identity, or None."""
    cache = _cache_for(mod)
    d = mod.dim
    cols = [cache.monomial_matrix(g) for g in monos]
    rows, rhs = [], []
    for i in range(d):
        for j in range(d):
            row = [c[i][j] for c in cols]
            den = math.lcm(*(x.denominator for x in row), 1)
            rows.append([int(x * den) for x in row])
            rhs.append(int(-Fraction(int(i == j)) * den))
    sol = linalg.solve_integer(rows, rhs)
    if sol is None or any(abs(c) > coeff_bound for c in sol):
        return None
    terms = {(0,) * mod.rank: 1}
    for g, c in zip(monos, sol):
        if c:
            terms[g] = c
    return LaurentPoly(mod.rank, ZZ, terms)


def certificate_search(mod: ModulePresentation, chi: Character, box: int,
                       coeff_bound: int):
    """Search for an integer certificate at chi.

    Supports are {0} union {g in [-box, box]^n : chi * g > 0}, enumerated by
    increasing box size then lexicographic order; the zero-monomial
    coefficient is fixed to 1 and the linear system is solved by exact
    integer diagonalization.  Returns the first solution whose coefficients
    stay within coeff_bound, else None.
    """
    if chi.is_zero:
        raise ValueError("search needs a nonzero direction")
    if isinstance(mod, CyclicModule):
        raise UnsupportedModeError(
            "cyclic mode: supply certificates and use certificate_valid")
    m = as_matrix_action(mod)
    if chi.rank != m.rank:
        raise DimensionError("direction rank does not match the module")
    for k in range(1, box + 1):
        monos = [g for g in _support_in_box(m.rank, k) if chi_value(chi, g) > 0]
        if not monos:
            continue
        lam = _solve_for_support(m, monos, coeff_bound)
        if lam is not None:
            assert certificate_valid(lam, chi, mod)
            return lam
    return None


# ---------------------------------------------------------------------------
# SigmaResult assembly.


@dataclass(frozen=True)
class ComplementWitness:
    """A valuation vector realizing a proved complement direction."""

    direction: Direction
    kind: str  # "p-adic" | "tropical"
    prime: int | None = None
    vector: tuple = ()


@dataclass
class SigmaResult:
    rank: int
    proved_sigma: SphericalSet
    proved_complement: SphericalSet
    undecided: SphericalSet
    certificates: tuple = ()  # (validity cone, LaurentPoly) pairs
    witnesses: tuple = ()  # ComplementWitness
    complement_outer_bound: PolyhedralSet | None = None
    notes: tuple = ()

    def certificate_for(self, direction: Direction):
        for cone, lam in self.certificates:
            if cone.contains(direction.vector):
                return lam
        return None

    def classify(self, direction: Direction) -> str:
        if self.proved_sigma.contains(direction):
            return "sigma"
        if self.proved_complement.contains(direction):
            return "complement"
        return "undecided"


COVER_BOX_LIMIT = 6
COVER_SPLIT_DEPTH = 4


def _strict_dual_candidates(piece: Polyhedron, rank: int, k: int):
    """Monomials g whose open halfspace {chi*g > 0} contains every direction
    of the piece (the origin is immaterial on the sphere)."""
    out = []
    for g in _support_in_box(rank, k):
        bad = piece.intersect(Polyhedron.cone(rank, ge=[tuple(-x for x in g)]))
        if not bad.has_direction():
            out.append(g)
    return out


def _cover_piece(mod: MatrixAction, piece: Polyhedron, coeff_bound: int,
                 box_limit: int, depth: int):
    """Certify one region piece, splitting on coordinate signs on failure.

    Returns (certified, failed): certified is a list of
    (sub-piece, validity cone, certificate)."""
    for k in range(1, box_limit + 1):
        monos = _strict_dual_candidates(piece, mod.rank, k)
        if not monos:
            continue
        lam = _solve_for_support(mod, monos, coeff_bound)
        if lam is not None:
            support = [g for g in lam.terms if any(g)]
            cone = Polyhedron.cone(mod.rank, gt=support)
            return [(piece, cone, lam)], []
    if depth > 0:
        for i in range(mod.rank):
            axis = [0] * mod.rank
            axis[i] = 1
            pos = piece.intersect(Polyhedron.cone(mod.rank, gt=[tuple(axis)]))
            neg = piece.intersect(
                Polyhedron.cone(mod.rank, gt=[tuple(-x for x in axis)]))
            if pos.has_direction() and neg.has_direction():
                zero = piece.intersect(Polyhedron.cone(mod.rank, eq=[tuple(axis)]))
                certified, failed = [], []
                for part in (pos, neg, zero):
                    if not part.has_direction():
                        continue
                    c, f = _cover_piece(mod, part, coeff_bound, box_limit, depth - 1)
                    certified += c
                    failed += f
                return certified, failed
    return [], [piece]


def sigma_scalar_action_exact(mod: ModulePresentation, box_limit: int = COVER_BOX_LIMIT,
                              coeff_bound: int = 10 ** 6) -> SigmaResult:
    """Sigma invariant for scalar or matrix actions over Q.

    Scalar actions are exact: the complement is the radial projection of the
    finite set of p-adic value vectors of the ratios, and the rest of the
    sphere is covered by searched certificates.  Matrix actions reduce to
    scalar ones when simultaneously diagonalizable over Q; otherwise only the
    certificate side is attempted and the complement side stays undecided.
    """
    if isinstance(mod, CyclicModule):
        raise UnsupportedModeError("use sigma_cyclic_field for cyclic presentations")
    m = as_matrix_action(mod)
    notes = []
    if m.dim > 1:
        tuples = _rational_eigentuples(m)
        if tuples is not None:
            result = None
            for rhos in tuples:
                part = sigma_scalar_action_exact(ScalarAction(rhos), box_limit,
                                                 coeff_bound)
                result = part if result is None else sigma_direct_sum(result, part)
            result.notes = tuple(result.notes) + (
                "matrix action diagonalized over Q into scalar actions",)
            return result
        notes.append("matrix action not simultaneously diagonalizable over Q: "
                     "complement side undecided, sigma side by certificates only")
        complement = SphericalSet.empty(m.rank)
        witnesses: list[ComplementWitness] = []
    else:
        rhos = tuple(m.mats[i][0][0] for i in range(m.rank))
        witnesses = []
        dirs = []
        for p in sorted(prime_support(rhos)):
            vec = tuple(PAdicValuation(p).value(r) for r in rhos)
            if any(vec):
                d = Direction.from_vector(vec)
                if all(w.direction != d for w in witnesses):
                    dirs.append(d)
                witnesses.append(ComplementWitness(direction=d, kind="p-adic",
                                                   prime=p, vector=vec))
        complement = SphericalSet.from_directions(dirs, rank=m.rank)

    region = complement.complement()
    certified, failed = [], []
    for piece in region.pieces:
        if not piece.has_direction():
            continue
        c, f = _cover_piece(m, piece, coeff_bound, box_limit, COVER_SPLIT_DEPTH)
        certified += c
        failed += f
    if failed:
        notes.append(f"{len(failed)} region pieces exhausted the search bounds "
                     f"(box {box_limit}, coefficients {coeff_bound})")
    return SigmaResult(
        rank=m.rank,
        proved_sigma=SphericalSet(m.rank, [p for p, _, _ in certified]),
        proved_complement=complement,
        undecided=SphericalSet(m.rank, failed),
        certificates=tuple((cone, lam) for _, cone, lam in certified),
        witnesses=tuple(witnesses),
        notes=tuple(notes),
    )


def _char_poly(mat):
    """Characteristic polynomial coefficients (monic, descending) over Q."""
    d = len(mat)
    lam = sympy.Symbol("lam")
    m = sympy.Matrix([[sympy.Rational(x) for x in row] for row in mat])
    poly = sympy.Poly((m - lam * sympy.eye(d)).det() * (-1) ** d, lam)
    return [Fraction(str(c)) for c in poly.all_coeffs()]


def _rational_roots(coeffs):
    """Rational roots of a monic rational polynomial, via the integer model."""
    den = math.lcm(*(c.denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    lead, const = ints[0], ints[-1]
    if const == 0:
        roots = {Fraction(0)}
        return roots | _rational_roots([Fraction(c) for c in coeffs[:-1]])
    roots = set()
    for p in sympy.divisors(abs(const)):
        for q in sympy.divisors(abs(lead)):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                val = Fraction(0)
                for c in coeffs:
                    val = val * cand + c
                if val == 0:
                    roots.add(cand)
    return roots


def _rational_eigentuples(m: MatrixAction):
    """Joint eigenvalue tuples when simultaneously diagonalizable over Q, else None."""
    d = m.dim
    spaces = [([tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d)], ())]
    for mat in m.mats:
        mat = [list(r) for r in mat]
        new_spaces = []
        for basis, eigs in spaces:
            k = len(basis)
            cols = [linalg.mat_vec(mat, list(b)) for b in basis]
            bt = [[basis[j][i] for j in range(k)] for i in range(d)]
            rep = []
            for v in cols:
                coords = linalg.solve(bt, list(v))
                if coords is None:
                    return None
                rep.append(coords)
            t = [[rep[j][i] for j in range(k)] for i in range(k)]
            cp = _char_poly(t)
            found = 0
            for root in sorted(_rational_roots(cp)):
                shifted = [[t[i][j] - (root if i == j else 0) for j in range(k)]
                           for i in range(k)]
                kern = linalg.nullspace(shifted)
                if not kern:
                    continue
                found += len(kern)
                sub_basis = []
                for v in kern:
                    w = [sum(v[j] * basis[j][i] for j in range(k)) for i in range(d)]
                    sub_basis.append(tuple(w))
                new_spaces.append((sub_basis, eigs + (root,)))
            if found != k:
                return None
        spaces = new_spaces
    out = []
    for basis, eigs in spaces:
        out.append(tuple(eigs))
    return sorted(set(out))


def sigma_cyclic_field(mod: CyclicModule, box_limit: int = COVER_BOX_LIMIT,
                       coeff_bound: int = 10 ** 6) -> SigmaResult:
    """Sigma invariant for cyclic presentations.

    Exact for principal ideals: over a field the complement is the radial
    projection of the trivial-valuation hypersurface; over Z it is the
    projection of the global tropical variety.  The zero ideal is the free
    module: the complement is the whole sphere.  Multiple generators over a
    field only give the prevariety as an outer candidate for the complement;
    the sigma side is filled with per-generator certificates and the rest is
    undecided.
    """
    rank = mod.rank
    gens = [g for g in mod.gens if not g.is_zero]
    if not gens:
        return SigmaResult(
            rank=rank,
            proved_sigma=SphericalSet.empty(rank),
            proved_complement=SphericalSet.whole_sphere(rank),
            undecided=SphericalSet.empty(rank),
            witnesses=(ComplementWitness(
                direction=Direction.of(*([1] + [0] * (rank - 1))),
                kind="tropical",
                vector=()),),
            notes=("zero ideal: the module is the free module of rank one; "
                   "every nonzero direction admits a valuation witness",),
        )
    if any(len(g.terms) == 1 for g in gens):
        return SigmaResult(
            rank=rank,
            proved_sigma=SphericalSet.whole_sphere(rank),
            proved_complement=SphericalSet.empty(rank),
            undecided=SphericalSet.empty(rank),
            notes=("a generator is a unit: the module is zero and the "
                   "invariant is the whole sphere",),
        )
    if len(gens) == 1:
        f = gens[0]
        notes = []
        if mod.domain.kind == "ZZ":
            complement = global_tropical_Z(f).radial()
            certified, failed = [], []
            for piece in complement.complement().pieces:
                if not piece.has_direction():
                    continue
                c, fl = _cover_multiple_piece(f, piece, box_limit, coeff_bound)
                certified += c
                failed += fl
            sigma = SphericalSet(rank, [p for p, _, _ in certified])
            undecided = SphericalSet(rank, failed)
            if failed:
                notes.append(
                    f"{len(failed)} pieces exhausted the multiple-search bounds")
        else:
            complement = trop_hypersurface(f, TrivialValuation()).radial()
            # off the hypersurface one monomial is strictly initial; dividing
            # f by that term gives the certificate on its openness cone
            certified = []
            for g0 in sorted(f.terms):
                others = [tuple(a - b for a, b in zip(g, g0))
                          for g in f.terms if g != g0]
                cone = Polyhedron.cone(rank, gt=others)
                if not cone.has_direction():
                    continue
                lam = f.shift(tuple(-e for e in g0)).scale(
                    _field_inverse(f.terms[g0], f.domain))
                certified.append((cone, cone, lam))
            sigma = SphericalSet(rank, [c for c, _, _ in certified])
            undecided = sigma.union(complement).complement()
        witnesses = []
        fd = complement.finite_directions()
        if fd is not None:
            for d in fd:
                witnesses.append(ComplementWitness(direction=d, kind="tropical",
                                                   vector=tuple(d.vector)))
        return SigmaResult(
            rank=rank,
            proved_sigma=sigma,
            proved_complement=complement,
            undecided=undecided,
            certificates=tuple((cone, lam) for _, cone, lam in certified),
            witnesses=tuple(witnesses),
            notes=tuple(notes) + (
                "complement realized by the valuations behind each "
                "hypersurface piece",),
        )
    # multiple generators: prevariety outer bound only
    if mod.domain.kind == "ZZ":
        raise UnsupportedModeError(
            "cyclic mode over Z supports principal ideals only")
    prevariety = trop_prevariety([ValuedPoly(g, TrivialValuation()) for g in gens])
    certified = []
    for f in gens:
        for g0 in sorted(f.terms):
            others = [g for g in f.terms if g != g0]
            cone = Polyhedron.cone(rank, gt=[tuple(a - b for a, b in zip(g, g0))
                                             for g in others])
            if not cone.has_direction():
                continue
            c0 = f.terms[g0]
            inv = _field_inverse(c0, mod.domain)
            lam = f.shift(tuple(-e for e in g0)).scale(inv)
            certified.append((cone, cone, lam))
    sigma = SphericalSet(rank, [c for c, _, _ in certified])
    undecided = sigma.complement()
    return SigmaResult(
        rank=rank,
        proved_sigma=sigma,
        proved_complement=SphericalSet.empty(rank),
        undecided=undecided,
        certificates=tuple((cone, lam) for _, cone, lam in certified),
        complement_outer_bound=prevariety,
        notes=("multiple generators: complement bounded by the prevariety "
               "(outer candidate), sigma side by per-generator certificates; "
               "the remainder is undecided",),
    )


def _field_inverse(c, domain: Domain):
    if domain.kind == "GF":
        return pow(int(c), domain.p - 2, domain.p)
    return 1 / Fraction(c)


def _cover_multiple_piece(f: LaurentPoly, piece: Polyhedron, box_limit: int,
                          coeff_bound: int):
    """Certify a piece for the principal ideal (f): find lam = f*h with
    integer (or field) coefficients, constant term 1, and support in the
    piece's strict dual."""
    rank = f.rank
    zero = (0,) * rank
    assert f.domain.kind == "ZZ"
    supp_f = sorted(f.terms)
    dual_cache: dict[tuple, bool] = {}

    def in_strict_dual(g):
        if g not in dual_cache:
            bad = piece.intersect(Polyhedron.cone(rank, ge=[tuple(-x for x in g)]))
            dual_cache[g] = not bad.has_direction()
        return dual_cache[g]

    for k in range(1, box_limit + 1):
        hsupp = sorted(itertools.product(range(-k, k + 1), repeat=rank))
        prod_supp = sorted({tuple(a + b for a, b in zip(g, h))
                            for g in supp_f for h in hsupp})
        rows, rhs = [], []
        for msum in prod_supp:
            if msum != zero and not in_strict_dual(msum):
                rows.append([int(f.terms.get(
                    tuple(a - b for a, b in zip(msum, h)), 0)) for h in hsupp])
                rhs.append(0)
        rows.append([int(f.terms.get(tuple(-x for x in h), 0)) for h in hsupp])
        rhs.append(1)
        sol = linalg.solve_integer(rows, rhs)
        if sol is None or any(abs(c) > coeff_bound for c in sol):
            continue
        h = LaurentPoly(rank, ZZ, {h_: c for h_, c in zip(hsupp, sol) if c})
        lam = f * h
        support = [g for g in lam.terms if any(g)]
        cone = Polyhedron.cone(rank, gt=support)
        return [(piece, cone, lam)], []
    return [], [piece]


def sigma_direct_sum(r1: SigmaResult, r2: SigmaResult) -> SigmaResult:
    """Invariant of a direct sum: sigma intersects, complements unite."""
    if r1.rank != r2.rank:
        raise DimensionError("direct summands must share the rank")
    sigma = r1.proved_sigma.intersect(r2.proved_sigma)
    complement = r1.proved_complement.union(r2.proved_complement)
    undecided = sigma.union(complement).complement()
    certs = []
    for c1, l1 in r1.certificates:
        for c2, l2 in r2.certificates:
            meet = c1.intersect(c2)
            if meet.has_direction() and l1.domain == l2.domain:
                certs.append((meet, l1 * l2))
    return SigmaResult(
        rank=r1.rank,
        proved_sigma=sigma,
        proved_complement=complement,
        undecided=undecided,
        certificates=tuple(certs),
        witnesses=tuple(r1.witnesses) + tuple(r2.witnesses),
        notes=tuple(r1.notes) + tuple(r2.notes),
    )


def sigma_of_module(mod: ModulePresentation, box_limit: int = COVER_BOX_LIMIT,
                    coeff_bound: int = 10 ** 6) -> SigmaResult:
    if isinstance(mod, CyclicModule):
        return sigma_cyclic_field(mod, box_limit, coeff_bound)
    return sigma_scalar_action_exact(mod, box_limit, coeff_bound)


# ---------------------------------------------------------------------------
# Metabelian finiteness predicates.


def _resolve(mod_or_result, **kw) -> SigmaResult:
    if isinstance(mod_or_result, SigmaResult):
        return mod_or_result
    return sigma_of_module(mod_or_result, **kw)


def metabelian_fp(mod_or_result, **kw):
    """Finite presentability of the metabelian extension: the invariant and
    its antipodal set must cover the sphere.  None when undecided regions
    could change the answer."""
    r = _resolve(mod_or_result, **kw)
    lower = covers_with_antipodal(r.proved_sigma)
    if r.undecided.is_empty:
        return lower
    upper = covers_with_antipodal(r.proved_sigma.union(r.undecided))
    return lower if lower == upper else None


def metabelian_fp_infinity(mod_or_result, **kw):
    """FP-infinity: the complement must be finite and inside an open hemisphere."""
    r = _resolve(mod_or_result, **kw)
    dirs = r.proved_complement.finite_directions()
    if dirs is None:
        return False  # a positive-dimensional proved piece is already infinite
    if dirs:
        hemi = in_open_hemisphere(dirs)
        if not hemi.in_hemisphere:
            return False
    return True if r.undecided.is_empty else None


def fpm_test(mod_or_result, m: int, **kw):
    """Conjectural FP_m criterion: every m-point subset of the complement
    lies in an open hemisphere (theorem-backed for m in {1, 2})."""
    r = _resolve(mod_or_result, **kw)
    if not r.undecided.is_empty:
        return None
    dirs = r.proved_complement.finite_directions()
    if dirs is None:
        return None
    if len(dirs) > 12:
        raise ValueError("combinatorial guard: complement size <= 12")
    if not dirs:
        return True
    size = min(m, len(dirs))
    return all(in_open_hemisphere(sub).in_hemisphere
               for sub in itertools.combinations(dirs, size))


def fpm_basis(m: int) -> str:
    return "theorem" if m in (1, 2) else "conjecture"
