"""Reflexive Gorenstein cone pairs and their degree slices.

A full-dimensional pointed cone K in M is Gorenstein when some integral
linear functional evaluates to 1 on every primitive ray generator.  When the
dual cone carries such a functional too, the pair (K, K_dual) is reflexive
and the pairing of the two degree elements is the index of the pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .convex import (
    GeometryError,
    PolyhedralCone,
    RationalPolytope,
    dual_cone,
    lattice_points,
)
from .intlinalg import Vector, vdot, solve_rational
from .laurent import Poly


@dataclass(frozen=True)
class GorensteinCone:
    """Pointed full-dimensional cone together with its degree functional."""

    cone: PolyhedralCone
    degree_element: Vector

    def __post_init__(self):
        for g in self.cone.generators:
            if vdot(g, self.degree_element) != 1:
                raise GeometryError("degree element must pair to 1 with every ray")


def gorenstein_degree(cone: PolyhedralCone):
    """The unique integral functional pairing to 1 with all generators.

    Returns None when no such functional exists.  Uniqueness comes from the
    cone being full-dimensional.
    """
    if cone.dim != cone.ambient_rank:
        raise GeometryError("gorenstein_degree requires a full-dimensional cone")
    sol = solve_rational([list(g) for g in cone.generators],
                         [1] * len(cone.generators))
    if sol is None or any(x.denominator != 1 for x in sol):
        return None
    n = tuple(int(x) for x in sol)
    if any(vdot(g, n) != 1 for g in cone.generators):
        return None
    return n


@dataclass(frozen=True)
class ReflexivePair:
    """Reflexive Gorenstein pair: K in M, its dual in N, both degrees.

    deg lives in M (pairs to 1 with the rays of K_dual), deg_dual lives in N
    (pairs to 1 with the rays of K).  index = <deg, deg_dual> >= 1.
    """

    K: GorensteinCone
    K_dual: GorensteinCone
    deg: Vector
    deg_dual: Vector
    index: int

    @property
    def ambient_rank(self) -> int:
        return self.K.cone.ambient_rank

    def swapped(self) -> "ReflexivePair":
        return ReflexivePair(self.K_dual, self.K, self.deg_dual, self.deg, self.index)


def reflexive_pair(cone: PolyhedralCone):
    """Build the reflexive pair on a cone, or None when not Gorenstein both ways."""
    dual = dual_cone(cone)
    deg_dual = gorenstein_degree(cone)
    deg = gorenstein_degree(dual)
    if deg is None or deg_dual is None:
        return None
    index = vdot(deg, deg_dual)
    if index < 1:
        raise GeometryError("degree pairing must be positive")
    return ReflexivePair(
        K=GorensteinCone(cone, deg_dual),
        K_dual=GorensteinCone(dual, deg),
        deg=deg,
        deg_dual=deg_dual,
        index=index,
    )


def degree_slice(pair: ReflexivePair, side: str, level: int) -> RationalPolytope:
    """The polytope {x in cone : <x, degree> == level}, as a V-rep."""
    if side == "K":
        cone = pair.K.cone
    elif side == "K_dual":
        cone = pair.K_dual.cone
    else:
        raise ValueError("side must be 'K' or 'K_dual'")
    if level < 0:
        raise ValueError("level must be nonnegative")
    # every primitive generator sits at level 1, so the slice at `level` is
    # just the scaled level-1 slice
    return RationalPolytope.from_points(
        [tuple(level * x for x in g) for g in cone.generators], pair.ambient_rank)


@lru_cache(maxsize=None)
def _slice_points_cached(pair: ReflexivePair, side: str, level: int):
    if level == 0:
        return (tuple(0 for _ in range(pair.ambient_rank)),)
    return tuple(lattice_points(degree_slice(pair, side, level)))


def degree_slice_points(pair: ReflexivePair, side: str, level: int):
    """Lattice points of the chosen cone at the given degree level."""
    return list(_slice_points_cached(pair, side, level))


def k1_points(pair: ReflexivePair):
    """Canonically ordered lattice points of K at degree one."""
    return degree_slice_points(pair, "K", 1)


def kdual1_points(pair: ReflexivePair):
    """Canonically ordered lattice points of K_dual at degree one."""
    return degree_slice_points(pair, "K_dual", 1)


def interior_slice_points(pair: ReflexivePair, side: str, level: int):
    """Lattice points strictly inside the cone at the given degree level."""
    if side == "K":
        cone, other = pair.K.cone, pair.K_dual.cone
    else:
        cone, other = pair.K_dual.cone, pair.K.cone
    pts = degree_slice_points(pair, side, level)
    # facet normals of the cone are exactly the rays of the dual
    normals = other.generators
    return [p for p in pts if all(vdot(p, n) > 0 for n in normals)]


def cayley_cone(deltas, ambient_rank=None) -> ReflexivePair:
    """Reflexive pair of the Cayley cone of k lattice polytopes.

    The dual-side cone lives in rank k + n and is generated by (e_j; w) for w
    a vertex of the j-th polytope; the resulting pair has index k.  Raises
    GeometryError when the data is not a valid nef-partition (the cone fails
    to be reflexive Gorenstein).
    """
    deltas = [d if isinstance(d, RationalPolytope) else
              RationalPolytope.from_points(d, ambient_rank) for d in deltas]
    if not deltas:
        raise GeometryError("need at least one polytope")
    n = deltas[0].ambient_rank
    if any(d.ambient_rank != n for d in deltas):
        raise GeometryError("polytopes must share an ambient lattice")
    k = len(deltas)
    gens = []
    for j, d in enumerate(deltas):
        if not d.is_lattice():
            raise GeometryError("Cayley construction needs lattice polytopes")
        for w in d.vertices:
            gens.append(tuple(1 if i == j else 0 for i in range(k))
                        + tuple(int(x) for x in w))
    cone = PolyhedralCone.from_generators(gens, k + n)
    pair = reflexive_pair(cone)
    if pair is None:
        raise GeometryError("Cayley cone is not reflexive Gorenstein; "
                            "input is not nef-partition data")
    pair = pair.swapped()  # the constructed cone is the dual-side cone
    if pair.index != k:
        raise GeometryError(f"Cayley cone has index {pair.index}, expected {k}")
    return pair


@dataclass(frozen=True)
class CoefficientFunction:
    """Assignment of a coefficient to every degree-one point of K.

    Values are `Poly` instances: rational constants or opaque symbols, so the
    same plumbing serves numeric and symbolic computations.
    """

    points: tuple[Vector, ...]
    values: tuple[Poly, ...]

    def __post_init__(self):
        if len(self.points) != len(self.values):
            raise ValueError("one value per point required")

    @classmethod
    def symbolic(cls, pair: ReflexivePair, prefix: str = "c"):
        pts = tuple(k1_points(pair))
        return cls(pts, tuple(Poly.symbol(f"{prefix}{i}") for i in range(len(pts))))

    @classmethod
    def from_map(cls, pair: ReflexivePair, mapping):
        pts = tuple(k1_points(pair))
        missing = [p for p in pts if p not in mapping]
        if missing or len(mapping) != len(pts):
            raise ValueError("domain must be exactly the degree-one points of K")
        vals = []
        for p in pts:
            v = mapping[p]
            vals.append(v if isinstance(v, Poly) else Poly.const(Fraction(v)))
        return cls(pts, tuple(vals))

    def __getitem__(self, point) -> Poly:
        try:
            idx = self.points.index(tuple(point))
        except ValueError:
            raise KeyError(f"{point} is not a degree-one point of K") from None
        return self.values[idx]
