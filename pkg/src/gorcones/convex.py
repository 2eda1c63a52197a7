"""Cones and polytopes with exact rational arithmetic.

The single workhorse is a double description pass (`extreme_rays_of_halfspaces`)
that turns a list of homogeneous inequalities into the extreme rays and
lineality of the solution cone.  Dual cones, facet enumeration, vertex
enumeration and polar duals are all small wrappers around it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import lp
from .intlinalg import (
    Vector,
    clear_denominators,
    is_zero,
    primitive,
    rational_rank,
    solve_rational,
    vdot,
)


class GeometryError(ValueError):
    pass


# ---------------------------------------------------------------------------
# double description


def extreme_rays_of_halfspaces(halfspaces, dim):
    """Extreme rays and lineality basis of {x : <a, x> >= 0 for all a}.

    Incremental double description with zero-set adjacency.  Input vectors may
    be rational; they are cleared to primitive integer form.  Returned rays
    are primitive integer vectors in a canonical sorted order; the lineality
    list is a basis of the largest linear subspace inside the cone (empty for
    pointed cones).
    """
    cleaned = []
    seen = set()
    for a in halfspaces:
        v = clear_denominators(a)
        if is_zero(v) or v in seen:
            continue
        seen.add(v)
        cleaned.append(v)

    lineality = [tuple(1 if j == i else 0 for j in range(dim)) for i in range(dim)]
    rays = []  # list of [vector, zeroset-bitmask]
    prev_mask = 0

    for idx, a in enumerate(cleaned):
        bit = 1 << idx
        pivot = next((l for l in lineality if vdot(a, l) != 0), None)
        if pivot is not None:
            pa = vdot(a, pivot)
            lineality = [
                primitive(tuple(x * pa - y * vdot(a, l) for x, y in zip(l, pivot)))
                if vdot(a, l) != 0 else l
                for l in lineality if l is not pivot
            ]
            new_rays = []
            for vec, mask in rays:
                va = vdot(a, vec)
                if va != 0:
                    # slide along the pivot line onto the hyperplane; previous
                    # constraints all vanish on the pivot, so they are kept
                    vec = primitive(tuple(x * abs(pa) - y * (va * (1 if pa > 0 else -1))
                                          for x, y in zip(vec, pivot)))
                new_rays.append([vec, mask | bit])
            r0 = pivot if pa > 0 else tuple(-x for x in pivot)
            new_rays.append([primitive(r0), prev_mask])
            rays = new_rays
        else:
            plus, zero, minus = [], [], []
            for vec, mask in rays:
                va = vdot(a, vec)
                if va > 0:
                    plus.append([vec, mask])
                elif va == 0:
                    zero.append([vec, mask | bit])
                else:
                    minus.append([vec, mask])
            if minus:
                everyone = rays
                combined = []
                for u, mu in plus:
                    au = vdot(a, u)
                    for w, mw in minus:
                        meet = mu & mw
                        adjacent = True
                        for v, mv in everyone:
                            if v is u or v is w:
                                continue
                            if meet & mv == meet:
                                adjacent = False
                                break
                        if not adjacent:
                            continue
                        aw = vdot(a, w)
                        vec = primitive(tuple(au * y - aw * x for x, y in zip(u, w)))
                        combined.append([vec, (meet | bit)])
                rays = plus + zero + combined
            else:
                rays = plus + zero
        prev_mask |= bit

    out = sorted({tuple(vec) for vec, _ in rays})
    return out, sorted(lineality)


# ---------------------------------------------------------------------------
# polyhedral cones


@dataclass(frozen=True)
class PolyhedralCone:
    """Pointed rational polyhedral cone, stored by its extreme rays."""

    ambient_rank: int
    generators: tuple[Vector, ...]

    @classmethod
    def from_generators(cls, vectors, ambient_rank=None):
        vectors = [tuple(int(x) for x in v) for v in vectors]
        if ambient_rank is None:
            if not vectors:
                raise GeometryError("empty generator list needs an ambient rank")
            ambient_rank = len(vectors[0])
        if any(len(v) != ambient_rank for v in vectors):
            raise GeometryError("mixed ambient ranks in generators")
        vectors = [v for v in vectors if not is_zero(v)]
        if not vectors:
            return cls(ambient_rank, ())
        # round trip through the dual cone to keep only extreme rays
        facets, lin = extreme_rays_of_halfspaces(vectors, ambient_rank)
        half = list(facets)
        for l in lin:
            half.append(l)
            half.append(tuple(-x for x in l))
        rays, ray_lin = extreme_rays_of_halfspaces(half, ambient_rank)
        if ray_lin:
            raise GeometryError("cone is not pointed (contains a line)")
        return cls(ambient_rank, tuple(sorted(rays)))

    @property
    def dim(self) -> int:
        return rational_rank(list(self.generators)) if self.generators else 0

    def facet_normals(self):
        """Primitive inner normals; full-dimensional pointed cones only."""
        facets, lin = extreme_rays_of_halfspaces(self.generators, self.ambient_rank)
        if lin:
            raise GeometryError("cone is not full dimensional")
        return tuple(facets)

    def contains(self, point) -> bool:
        return lp.in_cone_hull(point, self.generators)

    def interior_contains(self, point) -> bool:
        return all(vdot(n, point) > 0 for n in self.facet_normals())


def dual_cone(cone: PolyhedralCone) -> PolyhedralCone:
    """Dual cone {y : <x, y> >= 0 on the cone}; input must be full rank.

    Exact involution: dual_cone(dual_cone(c)) == c.
    """
    if cone.dim != cone.ambient_rank:
        raise GeometryError("dual_cone requires a full-dimensional cone")
    rays, lin = extreme_rays_of_halfspaces(cone.generators, cone.ambient_rank)
    if lin:
        raise GeometryError("dual of a full-dimensional cone cannot contain a line")
    return PolyhedralCone(cone.ambient_rank, tuple(sorted(rays)))


# ---------------------------------------------------------------------------
# polytopes


def _canonical_vertices(points):
    return tuple(sorted(dict.fromkeys(tuple(Fraction(x) for x in p) for p in points)))


@dataclass(frozen=True)
class RationalPolytope:
    """Bounded convex hull of finitely many rational points.

    The vertex set is canonical (extreme points only, sorted), so equality of
    polytopes is equality of the `vertices` tuples.  The H-representation is
    computed on demand: `facets` is a tuple of (normal, offset) pairs meaning
    <normal, x> + offset >= 0 with primitive integer normals, and `equations`
    holds the affine hull constraints <normal, x> + offset == 0 for polytopes
    of less than full dimension.
    """

    ambient_rank: int
    vertices: tuple[tuple[Fraction, ...], ...]
    _hrep: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        pass

    @classmethod
    def from_points(cls, points, ambient_rank=None):
        pts = [tuple(Fraction(x) for x in p) for p in points]
        if ambient_rank is None:
            if not pts:
                raise GeometryError("empty point list needs an ambient rank")
            ambient_rank = len(pts[0])
        if any(len(p) != ambient_rank for p in pts):
            raise GeometryError("mixed ambient ranks in points")
        if not pts:
            return cls(ambient_rank, ())
        # double description round trip over the homogenisation (1, x): the
        # first pass finds the affine hull and facets, the second keeps only
        # the extreme points
        gens = [clear_denominators((Fraction(1),) + p) for p in pts]
        facets, lin = extreme_rays_of_halfspaces(gens, ambient_rank + 1)
        half = list(facets)
        for l in lin:
            half.append(l)
            half.append(tuple(-x for x in l))
        rays, ray_lin = extreme_rays_of_halfspaces(half, ambient_rank + 1)
        if ray_lin:
            raise GeometryError("point hull produced a non-pointed cone")
        verts = []
        for r in rays:
            if r[0] <= 0:
                raise GeometryError("homogenisation produced a horizontal ray")
            verts.append(tuple(Fraction(x, r[0]) for x in r[1:]))
        return cls(ambient_rank, _canonical_vertices(verts))

    @classmethod
    def from_hrep(cls, inequalities, equations=(), ambient_rank=None):
        """Vertex enumeration of {x : <a,x> + c >= 0, <e,x> + f == 0}."""
        if ambient_rank is None:
            sample = list(inequalities) + list(equations)
            if not sample:
                raise GeometryError("empty H-rep needs an ambient rank")
            ambient_rank = len(sample[0][0])
        half = []
        for a, c in inequalities:
            half.append(tuple(Fraction(x) for x in a) + (Fraction(c),))
        for a, c in equations:
            row = tuple(Fraction(x) for x in a) + (Fraction(c),)
            half.append(row)
            half.append(tuple(-x for x in row))
        # homogenise as (x, t) with t >= 0; vertices sit at t > 0
        half.append(tuple(Fraction(0) for _ in range(ambient_rank)) + (Fraction(1),))
        rays, lin = extreme_rays_of_halfspaces(half, ambient_rank + 1)
        if lin:
            raise GeometryError("H-representation is unbounded (lineality)")
        verts = []
        for r in rays:
            t = r[-1]
            if t == 0:
                raise GeometryError("H-representation is unbounded (recession ray)")
            verts.append(tuple(Fraction(x, t) for x in r[:-1]))
        return cls(ambient_rank, _canonical_vertices(verts))

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @property
    def dim(self) -> int:
        if self.is_empty:
            return -1
        v0 = self.vertices[0]
        diffs = [tuple(x - y for x, y in zip(v, v0)) for v in self.vertices[1:]]
        return rational_rank(diffs) if diffs else 0

    def _compute_hrep(self):
        if "facets" in self._hrep:
            return
        if self.is_empty:
            self._hrep["facets"] = ()
            self._hrep["equations"] = ()
            return
        gens = [clear_denominators((Fraction(1),) + v) for v in self.vertices]
        facets, lin = extreme_rays_of_halfspaces(gens, self.ambient_rank + 1)
        ineqs = []
        eqs = []
        for r in facets:
            ineqs.append((tuple(r[1:]), r[0]))  # <a, x> + c >= 0 with r = (c, a)
        for l in lin:
            eqs.append((tuple(l[1:]), l[0]))
        self._hrep["facets"] = tuple(sorted(ineqs))
        self._hrep["equations"] = tuple(sorted(eqs))

    @property
    def facets(self):
        self._compute_hrep()
        return self._hrep["facets"]

    @property
    def equations(self):
        self._compute_hrep()
        return self._hrep["equations"]

    def contains(self, point) -> bool:
        if self.is_empty:
            return False
        p = tuple(Fraction(x) for x in point)
        return (all(vdot(a, p) + c >= 0 for a, c in self.facets)
                and all(vdot(a, p) + c == 0 for a, c in self.equations))

    def interior_contains(self, point) -> bool:
        """Strict interior relative to the full ambient space."""
        if self.is_empty or self.equations:
            return False
        p = tuple(Fraction(x) for x in point)
        return all(vdot(a, p) + c > 0 for a, c in self.facets)

    def translate(self, vec):
        return RationalPolytope(
            self.ambient_rank,
            _canonical_vertices([tuple(x + Fraction(y) for x, y in zip(v, vec))
                                 for v in self.vertices]))

    def scale(self, c):
        c = Fraction(c)
        if c == 0:
            origin = tuple(Fraction(0) for _ in range(self.ambient_rank))
            return RationalPolytope(self.ambient_rank, (origin,) if self.vertices else ())
        return RationalPolytope(
            self.ambient_rank,
            _canonical_vertices([tuple(c * x for x in v) for v in self.vertices]))

    def is_lattice(self) -> bool:
        return all(x.denominator == 1 for v in self.vertices for x in v)


class LatticePolytope(RationalPolytope):
    """Rational polytope whose vertices are integral."""

    def __post_init__(self):
        if not self.is_lattice():
            raise GeometryError("vertices are not lattice points")


def polytope_from_int_points(points, ambient_rank=None) -> LatticePolytope:
    p = RationalPolytope.from_points(points, ambient_rank)
    return LatticePolytope(p.ambient_rank, p.vertices)


def minkowski_sum(p: RationalPolytope, q: RationalPolytope) -> RationalPolytope:
    """Exact Minkowski sum; vertex candidates are pairwise vertex sums."""
    if p.ambient_rank != q.ambient_rank:
        raise GeometryError("ambient ranks differ")
    if p.is_empty or q.is_empty:
        return RationalPolytope(p.ambient_rank, ())
    sums = [tuple(a + b for a, b in zip(u, v)) for u in p.vertices for v in q.vertices]
    return RationalPolytope.from_points(sums, p.ambient_rank)


def polar_dual(p: RationalPolytope) -> RationalPolytope:
    """Polar dual {y : <x, y> >= -1 for x in p}.

    Defined for full-dimensional polytopes with the origin strictly interior;
    then the polar is again such a polytope and the operation is an exact
    involution.  Vertices of the polar are facet normals scaled by their
    offsets.
    """
    if p.is_empty or p.dim != p.ambient_rank:
        raise GeometryError("polar dual needs a full-dimensional polytope")
    origin = tuple(Fraction(0) for _ in range(p.ambient_rank))
    if not p.interior_contains(origin):
        raise GeometryError("polar dual needs the origin strictly inside")
    verts = []
    for a, c in p.facets:
        # <a, x> >= -c with c > 0; polar vertex is a / c
        verts.append(tuple(Fraction(x, 1) / c for x in a))
    return RationalPolytope(p.ambient_rank, _canonical_vertices(verts))


def polytope_equal(p: RationalPolytope, q: RationalPolytope) -> bool:
    """Exact equality via canonical vertex sets."""
    return p.ambient_rank == q.ambient_rank and p.vertices == q.vertices


# ---------------------------------------------------------------------------
# lattice point enumeration


def lattice_points(p: RationalPolytope):
    """All integer points of a polytope, in sorted order.

    Scans the integer bounding box coordinate by coordinate; partial prefixes
    are pruned with interval arithmetic against every facet and equation, and
    surviving candidates get a final exact membership check.
    """
    if p.is_empty:
        return []
    n = p.ambient_rank
    lo = []
    hi = []
    for i in range(n):
        values = [v[i] for v in p.vertices]
        lo.append(_ceil(min(values)))
        hi.append(_floor(max(values)))
        if lo[i] > hi[i]:
            return []
    rows = [(a, Fraction(c), False) for a, c in p.facets]
    rows += [(a, Fraction(c), True) for a, c in p.equations]

    # per-constraint bounds of the tail contribution sum_{j>=k} a_j x_j
    tail_min = [[Fraction(0)] * (n + 1) for _ in rows]
    tail_max = [[Fraction(0)] * (n + 1) for _ in rows]
    for r, (a, _, _) in enumerate(rows):
        for j in range(n - 1, -1, -1):
            contrib = (a[j] * lo[j], a[j] * hi[j])
            tail_min[r][j] = tail_min[r][j + 1] + min(contrib)
            tail_max[r][j] = tail_max[r][j + 1] + max(contrib)

    out = []
    partial = [Fraction(0)] * len(rows)
    point = [0] * n

    def recurse(depth):
        if depth == n:
            for r, (_, c, is_eq) in enumerate(rows):
                val = partial[r] + c
                if val < 0 or (is_eq and val != 0):
                    return
            out.append(tuple(point))
            return
        for x in range(lo[depth], hi[depth] + 1):
            point[depth] = x
            ok = True
            for r, (a, c, is_eq) in enumerate(rows):
                base = partial[r] + a[depth] * x + c
                if base + tail_max[r][depth + 1] < 0:
                    ok = False
                    break
                if is_eq and base + tail_min[r][depth + 1] > 0:
                    ok = False
                    break
            if ok:
                for r, (a, _, _) in enumerate(rows):
                    partial[r] += a[depth] * x
                recurse(depth + 1)
                for r, (a, _, _) in enumerate(rows):
                    partial[r] -= a[depth] * x
    recurse(0)
    return sorted(out)


def _ceil(f: Fraction) -> int:
    return -((-f.numerator) // f.denominator)


def _floor(f: Fraction) -> int:
    return f.numerator // f.denominator


def lattice_points_bruteforce(p: RationalPolytope):
    """Independent oracle: plain bounding-box scan with membership filter."""
    if p.is_empty:
        return []
    n = p.ambient_rank
    ranges = []
    for i in range(n):
        values = [v[i] for v in p.vertices]
        ranges.append(range(_ceil(min(values)), _floor(max(values)) + 1))
    from itertools import product

    return sorted(c for c in product(*ranges) if p.contains(c))
