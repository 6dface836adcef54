"""Tropical hypersurfaces of valued Laurent polynomials, prevariety bounds,
the global variety over Z, and a numeric amoeba sampler.

The exact operations follow the min convention: the hypersurface of f is the
locus where min over terms g of (v(c_g) + chi*g) is attained at least twice.
Pieces come from monomial pairs (tie + minimality rows); no face-lattice
normalization is attempted.  Amoeba sampling is floating point by design and
documented as approximate.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .polyhedra import Polyhedron, PolyhedralSet
from .rings import DimensionError, LaurentPoly
from .valuations import PAdicValuation, TrivialValuation, ValuationSpec, prime_support


@dataclass(frozen=True)
class ValuedPoly:
    poly: LaurentPoly
    valuation: ValuationSpec


def trop_hypersurface(f: LaurentPoly, v: ValuationSpec) -> PolyhedralSet:
    """Exact tropical hypersurface of f with respect to v.

    A single-monomial f is a unit: its hypersurface is empty.  The result is
    the union over monomial pairs (g, h) of
    {chi : v(c_g) + chi*g = v(c_h) + chi*h <= v(c_k) + chi*k for all k}.
    """
    if f.is_zero:
        raise ValueError("the zero polynomial has no tropical hypersurface")
    vals = {g: v.value(_coeff_as_rational(f, g)) for g in f.terms}
    monos = sorted(vals)
    if len(monos) == 1:
        return PolyhedralSet.empty(f.rank)
    pieces = []
    for i, g in enumerate(monos):
        for h in monos[i + 1:]:
            eq = [(tuple(a - b for a, b in zip(g, h)), vals[h] - vals[g])]
            ge = [(tuple(a - b for a, b in zip(k, g)), vals[g] - vals[k])
                  for k in monos if k != g and k != h]
            pieces.append(Polyhedron(f.rank, eq=eq, ge=ge))
    return PolyhedralSet(f.rank, [p for p in pieces if not p.is_empty])


def _coeff_as_rational(f: LaurentPoly, g) -> Fraction:
    c = f.terms[g]
    if f.domain.kind == "GF":
        # over a prime field every nonzero coefficient is a unit
        return Fraction(1) if c % f.domain.p else Fraction(0)
    return Fraction(c)


def trop_prevariety(gens: list[ValuedPoly]) -> PolyhedralSet:
    """Intersection of the generators' hypersurfaces (a sound outer bound:
    it contains the tropical variety and may strictly contain it)."""
    if not gens:
        raise ValueError("need at least one generator")
    rank = gens[0].poly.rank
    v = gens[0].valuation
    for g in gens[1:]:
        if g.poly.rank != rank:
            raise DimensionError("generators must share one rank")
        if g.valuation != v:
            raise ValueError("generators must share one valuation")
    out = trop_hypersurface(gens[0].poly, v)
    for g in gens[1:]:
        out = out.intersect(trop_hypersurface(g.poly, v))
    return out


def global_tropical_Z(f: LaurentPoly) -> PolyhedralSet:
    """Union of the trivial-valuation hypersurface and the p-adic ones over
    the primes of the coefficient support (all other primes repeat the
    trivial one)."""
    if f.is_zero:
        raise ValueError("the zero polynomial has no tropical variety")
    if f.domain.kind != "ZZ":
        raise ValueError("global tropical variety is defined over Z coefficients")
    out = trop_hypersurface(f, TrivialValuation())
    for p in sorted(prime_support(f.terms.values())):
        out = out.union(trop_hypersurface(f, PAdicValuation(p)))
    return out


# ---------------------------------------------------------------------------
# Amoeba sampling (numeric, rank 2).


@dataclass
class AmoebaCloud:
    """Sampled points (ln|x|, ln|y|) of a plane curve, plus drop counters."""

    points: list[tuple[float, float]]
    dropped: int = 0
    max_radius: float = 0.0

    def __post_init__(self):
        if self.points:
            self.max_radius = max(math.hypot(*p) for p in self.points)


RESIDUAL_TOL = 1e-9


def amoeba_sample(f: LaurentPoly, s_grid, angles: int) -> AmoebaCloud:
    """Sample the amoeba of a rank-2 curve: for each s in s_grid and each of
    `angles` arguments phi, set x = e^(s+i phi) and record (s, ln|y|) for the
    roots y of f(x, -).

    Roots come from the companion matrix (numpy.roots), are ordered by (real,
    imaginary) part, and are dropped (and counted) when the relative residual
    exceeds 1e-9 or |y| = 0.
    """
    if f.rank != 2:
        raise DimensionError("amoeba sampling needs a polynomial in two variables")
    if f.is_zero:
        raise ValueError("zero polynomial")
    ydegs = [g[1] for g in f.terms]
    ymin, ymax = min(ydegs), max(ydegs)
    if ymax == ymin:
        raise ValueError("polynomial has y-degree zero; no roots to follow")
    points: list[tuple[float, float]] = []
    dropped = 0
    for s in s_grid:
        for k in range(angles):
            phi = 2.0 * math.pi * k / angles
            x = cmath.exp(complex(s, phi))
            coeffs = [complex(0)] * (ymax - ymin + 1)
            for (a, b), c in f.terms.items():
                coeffs[ymax - b] += float(c) * x ** a
            if abs(coeffs[0]) == 0.0:
                dropped += 1
                continue
            roots = sorted(np.roots(coeffs), key=lambda z: (z.real, z.imag))
            for y in roots:
                y = complex(y)
                ay = abs(y)
                if ay == 0.0 or not math.isfinite(ay):
                    dropped += 1
                    continue
                resid = abs(sum(float(c) * x ** a * y ** b
                                for (a, b), c in f.terms.items()))
                weight = sum(abs(float(c)) * abs(x) ** a * ay ** b
                             for (a, b), c in f.terms.items())
                if weight == 0.0 or resid / weight > RESIDUAL_TOL:
                    dropped += 1
                    continue
                points.append((float(s), math.log(ay)))
    return AmoebaCloud(points=points, dropped=dropped)


@dataclass
class LimitDirections:
    """Clustered far directions of a cloud, in the valuation sign convention
    (the cloud is reflected through the origin before binning, so directions
    are comparable with min-convention tropical rays)."""

    directions: list[tuple[tuple[float, float], int]]
    no_far_points: bool = False


def log_limit_directions(cloud: AmoebaCloud, min_radius: float,
                         angle_bins: int) -> LimitDirections:
    """Bin the reflected far points (norm >= min_radius) into angular bins;
    each populated bin reports the normalized mean direction and the count."""
    if not cloud.points:
        raise ValueError("empty cloud")
    bins: dict[int, list[tuple[float, float]]] = {}
    for px, py in cloud.points:
        r = math.hypot(px, py)
        if r < min_radius:
            continue
        ux, uy = -px / r, -py / r
        angle = math.atan2(uy, ux) % (2.0 * math.pi)
        idx = min(int(angle / (2.0 * math.pi / angle_bins)), angle_bins - 1)
        bins.setdefault(idx, []).append((ux, uy))
    if not bins:
        return LimitDirections(directions=[], no_far_points=True)
    out = []
    for idx in sorted(bins):
        vecs = bins[idx]
        mx = sum(v[0] for v in vecs) / len(vecs)
        my = sum(v[1] for v in vecs) / len(vecs)
        norm = math.hypot(mx, my)
        out.append(((mx / norm, my / norm), len(vecs)))
    return LimitDirections(directions=out)
