"""Exact Laurent-polynomial arithmetic over Z, Q, and prime fields.

Monomials are integer exponent tuples (group elements of Z^n); a polynomial
is a finite map from monomials to nonzero coefficients.  Characters are
exact rational vectors.  The minimum convention is used throughout: the
initial part of f at chi collects the terms of minimal chi-value.  All
values are immutable; every operation is a pure function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from sympy import isprime

from . import kernels

INF = math.inf

Monomial = tuple  # integer exponent tuple of length rank


class DimensionError(ValueError):
    """Operands live over different ranks or domains."""


@dataclass(frozen=True)
class Domain:
    """Coefficient domain tag: IntegerRing, RationalField, or PrimeField(p)."""

    kind: str  # "ZZ" | "QQ" | "GF"
    p: int | None = None

    def __post_init__(self):
        if self.kind == "GF":
            if self.p is None or self.p < 2 or not isprime(self.p):
                raise ValueError(f"prime field modulus must be prime, got {self.p!r}")
        elif self.kind in ("ZZ", "QQ"):
            if self.p is not None:
                raise ValueError(f"{self.kind} takes no modulus")
        else:
            raise ValueError(f"unknown domain kind {self.kind!r}")

    @property
    def is_field(self) -> bool:
        return self.kind != "ZZ"

    def normalize(self, c):
        """Coerce c into the domain; raises on non-integral values over ZZ/GF."""
        if self.kind == "QQ":
            return Fraction(c)
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise ValueError(f"{c} is not integral over {self.kind}")
            c = c.numerator
        c = int(c)
        return c % self.p if self.kind == "GF" else c

    def __str__(self):
        return {"ZZ": "Z", "QQ": "Q"}.get(self.kind) or f"GF({self.p})"


ZZ = Domain("ZZ")
QQ = Domain("QQ")


def GF(p: int) -> Domain:
    return Domain("GF", p)


_VAR_NAMES = ("x", "y", "z", "w")


def _var(i: int, rank: int) -> str:
    return _VAR_NAMES[i] if rank <= len(_VAR_NAMES) else f"x{i}"


class LaurentPoly:
    """Finite map from exponent tuples to nonzero coefficients, with a domain."""

    __slots__ = ("rank", "domain", "terms")

    def __init__(self, rank: int, domain: Domain, terms):
        clean = {}
        for g, c in dict(terms).items():
            g = tuple(int(e) for e in g)
            if len(g) != rank:
                raise DimensionError(f"monomial {g} has length {len(g)}, expected {rank}")
            c = domain.normalize(c)
            if c:
                clean[g] = c
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    @classmethod
    def zero(cls, rank: int, domain: Domain = ZZ) -> "LaurentPoly":
        return cls(rank, domain, {})

    @classmethod
    def one(cls, rank: int, domain: Domain = ZZ) -> "LaurentPoly":
        return cls(rank, domain, {(0,) * rank: 1})

    @classmethod
    def monomial(cls, g, c=1, domain: Domain = ZZ) -> "LaurentPoly":
        g = tuple(int(e) for e in g)
        return cls(len(g), domain, {g: c})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_one(self) -> bool:
        return self.terms == {(0,) * self.rank: self.domain.normalize(1)}

    def support(self):
        """Monomials with nonzero coefficient, sorted lexicographically."""
        return sorted(self.terms)

    def coefficient(self, g) -> object:
        return self.terms.get(tuple(g), 0)

    def constant_coefficient(self):
        return self.terms.get((0,) * self.rank, 0)

    def _compat(self, other: "LaurentPoly"):
        if self.rank != other.rank:
            raise DimensionError(f"rank mismatch: {self.rank} vs {other.rank}")
        if self.domain != other.domain:
            raise DimensionError(f"domain mismatch: {self.domain} vs {other.domain}")

    @property
    def _mod(self):
        return self.domain.p if self.domain.kind == "GF" else None

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._compat(other)
        out = LaurentPoly.__new__(LaurentPoly)
        object.__setattr__(out, "rank", self.rank)
        object.__setattr__(out, "domain", self.domain)
        object.__setattr__(out, "terms", kernels.term_add(self.terms, other.terms, self._mod))
        return out

    def __neg__(self) -> "LaurentPoly":
        return self.scale(-1)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._compat(other)
        out = LaurentPoly.__new__(LaurentPoly)
        object.__setattr__(out, "rank", self.rank)
        object.__setattr__(out, "domain", self.domain)
        object.__setattr__(out, "terms", kernels.term_mul(self.terms, other.terms, self._mod))
        return out

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            raise ValueError("negative powers only for single monomials; use shift")
        out = LaurentPoly.one(self.rank, self.domain)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def scale(self, c) -> "LaurentPoly":
        c = self.domain.normalize(c)
        out = LaurentPoly.__new__(LaurentPoly)
        object.__setattr__(out, "rank", self.rank)
        object.__setattr__(out, "domain", self.domain)
        object.__setattr__(out, "terms", kernels.term_scale(self.terms, c, self._mod))
        return out

    def shift(self, g) -> "LaurentPoly":
        """Multiply by the monomial x^g (g may have negative entries)."""
        g = tuple(int(e) for e in g)
        if len(g) != self.rank:
            raise DimensionError(f"shift vector has length {len(g)}, expected {self.rank}")
        return LaurentPoly(
            self.rank, self.domain,
            {tuple(a + b for a, b in zip(h, g)): c for h, c in self.terms.items()},
        )

    def map_coefficients(self, fn, domain: Domain | None = None) -> "LaurentPoly":
        return LaurentPoly(self.rank, domain or self.domain,
                           {g: fn(c) for g, c in self.terms.items()})

    def __eq__(self, other):
        return (isinstance(other, LaurentPoly) and self.rank == other.rank
                and self.domain == other.domain and self.terms == other.terms)

    def __hash__(self):
        return hash((self.rank, self.domain, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for g in self.support():
            c = self.terms[g]
            mono = "*".join(
                f"{_var(i, self.rank)}" + (f"^{e}" if e != 1 else "")
                for i, e in enumerate(g) if e != 0
            )
            if not mono:
                bits.append(str(c))
            elif c == 1:
                bits.append(mono)
            elif c == -1:
                bits.append(f"-{mono}")
            else:
                bits.append(f"{c}*{mono}")
        s = " + ".join(bits).replace("+ -", "- ")
        return s

    def __repr__(self):
        return f"LaurentPoly({self.rank}, {self.domain}, {self.terms!r})"


@dataclass(frozen=True)
class Character:
    """Homomorphism Z^n -> R with exact rational values on the standard basis."""

    values: tuple[Fraction, ...]

    @classmethod
    def of(cls, *values) -> "Character":
        return cls(tuple(Fraction(v) for v in values))

    @property
    def rank(self) -> int:
        return len(self.values)

    @property
    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)

    def __neg__(self) -> "Character":
        return Character(tuple(-v for v in self.values))

    def __str__(self):
        return "(" + ", ".join(str(v) for v in self.values) + ")"


@dataclass(frozen=True)
class Direction:
    """Primitive integer representative of a ray class [chi] on the sphere."""

    vector: tuple[int, ...]

    @classmethod
    def of(cls, *vector) -> "Direction":
        return cls.from_vector(vector)

    @classmethod
    def from_vector(cls, v) -> "Direction":
        nums = [Fraction(e) for e in v]
        if all(e == 0 for e in nums):
            raise ValueError("a direction must be nonzero")
        den = math.lcm(*(e.denominator for e in nums))
        ints = [int(e * den) for e in nums]
        g = math.gcd(*(abs(e) for e in ints))
        return cls(tuple(e // g for e in ints))

    @property
    def rank(self) -> int:
        return len(self.vector)

    def to_character(self) -> Character:
        return Character(tuple(Fraction(e) for e in self.vector))

    def __neg__(self) -> "Direction":
        return Direction(tuple(-e for e in self.vector))

    def __str__(self):
        return "[" + ", ".join(str(e) for e in self.vector) + "]"


def chi_value(chi: Character, g) -> Fraction:
    """Evaluate chi(g) = sum chi_i g_i exactly."""
    g = tuple(g)
    if len(g) != chi.rank:
        raise DimensionError(f"chi has rank {chi.rank}, monomial has length {len(g)}")
    return sum((v * e for v, e in zip(chi.values, g)), Fraction(0))


def v_chi(chi: Character, f: LaurentPoly):
    """min over supp(f) of chi(g); +inf for the zero polynomial."""
    if f.is_zero:
        return INF
    return min(chi_value(chi, g) for g in f.terms)


def initial_part(chi: Character, f: LaurentPoly) -> LaurentPoly:
    """Sum of the terms of f whose monomials minimize chi (zero maps to zero)."""
    if f.is_zero:
        return f
    vals = {g: chi_value(chi, g) for g in f.terms}
    m = min(vals.values())
    return LaurentPoly(f.rank, f.domain, {g: c for g, c in f.terms.items() if vals[g] == m})


def grading(chi: Character, f: LaurentPoly) -> list[tuple[Fraction, LaurentPoly]]:
    """Canonical decomposition of f into chi-homogeneous components.

    Returns (value, component) pairs with strictly increasing values; the
    components sum to f.
    """
    buckets: dict[Fraction, dict] = {}
    for g, c in f.terms.items():
        buckets.setdefault(chi_value(chi, g), {})[g] = c
    return [(r, LaurentPoly(f.rank, f.domain, buckets[r])) for r in sorted(buckets)]


def poly_matrix_mul(a, b):
    """Product of matrices with LaurentPoly entries."""
    k, m, n = len(a), len(b), len(b[0])
    assert all(len(row) == m for row in a)
    out = []
    for i in range(k):
        row = []
        for j in range(n):
            acc = a[i][0] * b[0][j]
            for t in range(1, m):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def poly_matrix_det(rows) -> LaurentPoly:
    """Determinant of a square LaurentPoly matrix by cofactor expansion."""
    k = len(rows)
    if any(len(r) != k for r in rows):
        raise ValueError("determinant needs a square matrix")
    if k == 1:
        return rows[0][0]
    first = rows[0][0]
    acc = LaurentPoly.zero(first.rank, first.domain)
    for j in range(k):
        minor = [[rows[i][t] for t in range(k) if t != j] for i in range(1, k)]
        term = rows[0][j] * poly_matrix_det(minor)
        acc = acc + (term if j % 2 == 0 else -term)
    return acc
