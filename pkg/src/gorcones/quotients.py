"""Quotient lattices and slice polytopes attached to a degree decomposition.

Fixing a decomposition splits the picture in two.  On one side the ambient
lattice is divided by the span of the decomposition vectors, and the images
of the degree-one dual points form a polytope around the origin.  On the
other side the annihilator of those vectors carves a rational slice out of
the primal cone.  The two polytopes are polar dual, and the slice is
recovered cell by cell from the point partition through a permutation sum.
That reconstruction is checked here, not assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import lp
from .convex import (
    GeometryError,
    LatticePolytope,
    RationalPolytope,
    minkowski_sum,
    polar_dual,
    polytope_equal,
    polytope_from_int_points,
)
from .decomposition import Decomposition, partition_points
from .gorenstein import ReflexivePair, k1_points, kdual1_points
from .intlinalg import (
    AbelianGroupData,
    birkhoff_decompose,
    coordinates_in_basis,
    DoublyStochasticMatrix,
    free_quotient_projection,
    project_with,
    quotient_group,
    transpose,
    vadd,
    vdot,
    vneg,
    vsub,
)

__all__ = [
    "QuotientData",
    "PartitionPolytopes",
    "Section7Report",
    "quotient_data",
    "theta_polytope",
    "t_polytope",
    "embed_in_ambient",
    "partition_polytopes",
    "d_polytope",
    "s_polytope",
    "verify_section7",
    "birkhoff_certificate",
]


@dataclass(frozen=True)
class QuotientData:
    """Both coordinate systems induced by a decomposition.

    ``projection`` maps the dual-side lattice onto the free part of the
    quotient by the decomposition vectors; ``m_bar_basis`` rows form a basis
    of the annihilator of those vectors on the primal side.  The two are
    transposes of one another, so annihilator coordinates pair with
    free-quotient coordinates by the standard dot product.
    """

    n_bar: AbelianGroupData
    n_bar_free_rank: int
    projection: tuple
    m_bar_basis: tuple


@dataclass(frozen=True)
class PartitionPolytopes:
    """Convex hulls of the partition cells, in ambient primal coordinates.

    ``A[j]`` is the hull of the points pairing 1 with the j-th unsplit
    vector; ``T[i][j]`` the hull of the quadratic cell for the pair (i, j).
    Empty cells are stored as empty polytopes.
    """

    ambient_rank: int
    A: tuple
    T: tuple


@dataclass(frozen=True)
class Section7Report:
    """Outcome of the three slice-reconstruction checks for one decomposition."""

    slice_equals_sum: bool
    polar_dual_matches: bool
    double_slice_integral: bool
    t: RationalPolytope
    s: RationalPolytope
    theta: LatticePolytope
    witness: str = ""

    @property
    def ok(self):
        return (
            self.slice_equals_sum
            and self.polar_dual_matches
            and self.double_slice_integral
        )


def quotient_data(pair: ReflexivePair, dec: Decomposition) -> QuotientData:
    """Quotient group, projection, and annihilator basis for a decomposition."""
    kill = list(dec.s) + list(dec.t) + [pair.deg_dual]
    n_bar = quotient_group(pair.ambient_rank, kill)
    proj = free_quotient_projection(kill, pair.ambient_rank)
    basis = tuple(transpose(proj))
    for b in basis:
        if any(vdot(b, v) != 0 for v in kill):
            raise ArithmeticError("projection columns fail to annihilate the decomposition")
    if n_bar.free_rank != (len(proj[0]) if proj else 0):
        raise ArithmeticError("free rank disagrees with the projection width")
    return QuotientData(
        n_bar=n_bar,
        n_bar_free_rank=n_bar.free_rank,
        projection=tuple(tuple(row) for row in proj),
        m_bar_basis=basis,
    )


def theta_polytope(pair, dec, quotient=None) -> LatticePolytope:
    """Hull of the projected degree-one dual points; the origin is interior."""
    qd = quotient if quotient is not None else quotient_data(pair, dec)
    images = sorted({project_with(qd.projection, p) for p in kdual1_points(pair)})
    theta = polytope_from_int_points(images, qd.n_bar_free_rank)
    if not theta.interior_contains((0,) * qd.n_bar_free_rank):
        raise GeometryError("projected slice hull does not surround the origin")
    return theta


def t_polytope(pair, dec, quotient=None):
    """Slice of the primal cone pairing to 1 with every decomposition vector.

    The slice is shifted by the degree element and written in annihilator
    coordinates, so the origin sits inside whenever the slice is full.
    Returns None when the slice is empty; that cannot happen for a valid
    decomposition (the degree element itself lies on the slice) but callers
    get an explicit signal rather than a zero-vertex polytope.
    """
    qd = quotient if quotient is not None else quotient_data(pair, dec)
    basis = qd.m_bar_basis
    ineqs = []
    for g in pair.K_dual.cone.generators:
        ineqs.append((tuple(vdot(b, g) for b in basis), vdot(pair.deg, g)))
    poly = RationalPolytope.from_hrep(ineqs, ambient_rank=len(basis))
    return None if poly.is_empty else poly


def embed_in_ambient(polytope, quotient, offset=None) -> RationalPolytope:
    """Re-express an annihilator-coordinate polytope in the ambient lattice."""
    basis = quotient.m_bar_basis
    rank = len(basis[0])
    verts = []
    for v in polytope.vertices:
        amb = tuple(sum((Fraction(a) * b[i] for a, b in zip(v, basis)), Fraction(0)) for i in range(rank))
        if offset is not None:
            amb = vadd(amb, offset)
        verts.append(amb)
    return RationalPolytope.from_points(verts, rank)


def partition_polytopes(pair, dec, parts=None) -> PartitionPolytopes:
    """Convex hulls of every partition cell, empty cells included."""
    part = parts if parts is not None else partition_points(pair, dec)
    rank = pair.ambient_rank

    def hull(cell):
        if not cell:
            return LatticePolytope(rank, ())
        return polytope_from_int_points(cell, rank)

    a_polys = tuple(hull(cell) for cell in part.A)
    t_polys = tuple(tuple(hull(cell) for cell in row) for row in part.T)
    return PartitionPolytopes(ambient_rank=rank, A=a_polys, T=t_polys)


def _reducer(quotient):
    # any linear map injective on translates of the annihilator span works
    # for extreme-point pruning; pairing against the basis itself (a Gram
    # form, positive definite on the span) avoids a second coordinate system
    if quotient is None:
        return lambda p: tuple(p)
    proj = quotient.projection
    return lambda p: project_with(proj, p)


def d_polytope(parts: PartitionPolytopes, quotient=None) -> RationalPolytope:
    """Hull of the permutation sums of the quadratic cells.

    Permutations sharing a prefix are processed once: the walk carries every
    achievable (partial sum, used column set) state and prunes each state to
    the extreme points of its partial sums.  All sums in one state share
    their pairing profile, so pruning may run in quotient coordinates.
    Returns an empty polytope when no permutation avoids the empty cells.
    """
    two_r = len(parts.T)
    rank = parts.ambient_rank
    if two_r == 0:
        return RationalPolytope.from_points([(0,) * rank], rank)
    reduce_pt = _reducer(quotient)
    zero = tuple(Fraction(0) for _ in range(rank))
    states = {frozenset(): [zero]}
    for i in range(two_r):
        nxt = {}
        for used, pts in states.items():
            for j in range(two_r):
                if j in used or parts.T[i][j].is_empty:
                    continue
                bucket = nxt.setdefault(used | {j}, {})
                for p in pts:
                    for v in parts.T[i][j].vertices:
                        q = vadd(p, v)
                        bucket[reduce_pt(q)] = q
        states = {}
        for used, bucket in nxt.items():
            keep = lp.extreme_points(bucket.keys())
            states[used] = [bucket[key] for key in keep]
    final = states.get(frozenset(range(two_r)))
    if not final:
        return RationalPolytope(rank, ())
    return RationalPolytope.from_points(final, rank)


def s_polytope(parts: PartitionPolytopes, d: RationalPolytope, deg, quotient) -> RationalPolytope:
    """Linear-cell sum plus half the permutation hull, in annihilator coordinates."""
    if d.is_empty:
        raise GeometryError("permutation hull is empty; no full permutation exists")
    total = d.scale(Fraction(1, 2))
    for a in parts.A:
        if a.is_empty:
            raise GeometryError("a linear cell is empty; the slice cannot be reconstructed")
        total = minkowski_sum(total, a)
    basis = quotient.m_bar_basis
    coords = []
    for v in total.translate(vneg(deg)).vertices:
        c = coordinates_in_basis(v, basis)
        if c is None:
            raise ArithmeticError("reconstructed vertex escapes the annihilator span")
        coords.append(c)
    return RationalPolytope.from_points(coords, len(basis))


def verify_section7(pair, dec) -> Section7Report:
    """Check the slice reconstruction for one decomposition.

    Three verdicts: the permutation-sum polytope equals the slice, the polar
    dual of the slice equals the projected hull, and twice the slice has
    lattice vertices.  Failures carry a short witness string.
    """
    qd = quotient_data(pair, dec)
    parts = partition_polytopes(pair, dec)
    theta = theta_polytope(pair, dec, qd)
    t_poly = t_polytope(pair, dec, qd)
    if t_poly is None:
        raise GeometryError("slice is empty for a valid decomposition")
    d_poly = d_polytope(parts, qd)
    s_poly = s_polytope(parts, d_poly, pair.deg, qd)

    witness = []
    eq = polytope_equal(s_poly, t_poly)
    if not eq:
        only_s = [v for v in s_poly.vertices if not t_poly.contains(v)]
        only_t = [v for v in t_poly.vertices if not s_poly.contains(v)]
        witness.append("sum/slice vertex mismatch: %r vs %r" % (only_s, only_t))

    try:
        dual_ok = polytope_equal(polar_dual(t_poly), theta)
    except GeometryError as err:
        dual_ok = False
        witness.append("polar dual failed: %s" % err)
    else:
        if not dual_ok:
            witness.append("polar dual of the slice differs from the projected hull")

    integral = t_poly.scale(2).is_lattice()
    if not integral:
        witness.append("doubled slice has a non-lattice vertex")

    return Section7Report(
        slice_equals_sum=eq,
        polar_dual_matches=dual_ok,
        double_slice_integral=integral,
        t=t_poly,
        s=s_poly,
        theta=theta,
        witness="; ".join(witness),
    )


def birkhoff_certificate(pair, dec, point, quotient=None, parts=None):
    """Constructive membership of an annihilator-coordinate point in the sum.

    Writes point + deg as a nonnegative combination of degree-one primal
    points, folds the quadratic weights into a doubly stochastic matrix, and
    converts its permutation decomposition into an explicit convex
    combination: one barycenter per linear cell plus a weighted permutation
    sum of quadratic-cell barycenters.  Returns None when the point is not
    on the slice.
    """
    qd = quotient if quotient is not None else quotient_data(pair, dec)
    part = parts if parts is not None else partition_points(pair, dec)
    two_r = len(part.T)
    target = vadd(pair.deg, tuple(
        sum((Fraction(a) * b[i] for a, b in zip(point, qd.m_bar_basis)), Fraction(0))
        for i in range(pair.ambient_rank)
    ))
    pts = k1_points(pair)
    rows = [[Fraction(p[i]) for p in pts] for i in range(pair.ambient_rank)]
    rhs = [Fraction(x) for x in target]
    lam = lp.feasible_nonneg(rows, rhs)
    if lam is None:
        return None
    weight = dict(zip(pts, lam))

    def mass(cell):
        return sum((weight[p] for p in cell), Fraction(0))

    def barycenter(cell):
        total = mass(cell)
        acc = tuple(
            sum((weight[p] * p[i] for p in cell), Fraction(0))
            for i in range(pair.ambient_rank)
        )
        return tuple(x / total for x in acc)

    a_part = [barycenter(cell) for cell in part.A]
    a_mass = [mass(cell) for cell in part.A]
    if any(m != 1 for m in a_mass):
        raise ArithmeticError("linear-cell weights must sum to one each")
    if two_r == 0:
        return {"weights": weight, "linear": a_part, "permutations": []}

    b_rows = []
    for i in range(two_r):
        row = []
        for j in range(two_r):
            m = mass(part.T[i][j])
            row.append(2 * m if i == j else m)
        b_rows.append(row)
    matrix = DoublyStochasticMatrix.from_rows(b_rows)
    perms = birkhoff_decompose(matrix)
    bary = {}
    for i in range(two_r):
        for j in range(two_r):
            if mass(part.T[i][j]) > 0:
                bary[(i, j)] = barycenter(part.T[i][j])
    for coeff, perm in perms:
        for i, j in enumerate(perm):
            if (i, j) not in bary:
                raise ArithmeticError("permutation uses an empty cell")
    return {
        "weights": weight,
        "linear": a_part,
        "matrix": matrix,
        "permutations": perms,
        "quadratic_barycenters": bary,
    }


def check_birkhoff_reconstruction(pair, dec, point, certificate) -> bool:
    """Replay a certificate: the pieces must re-assemble to the given point."""
    if certificate is None:
        return False
    total = [Fraction(0)] * pair.ambient_rank
    for a in certificate["linear"]:
        total = [x + y for x, y in zip(total, a)]
    for coeff, perm in certificate["permutations"]:
        for i, j in enumerate(perm):
            z = certificate["quadratic_barycenters"][(i, j)]
            total = [x + coeff * y / 2 for x, y in zip(total, z)]
    shifted = vsub(tuple(total), pair.deg)
    qd = quotient_data(pair, dec)
    coords = coordinates_in_basis(shifted, qd.m_bar_basis)
    return coords is not None and tuple(Fraction(x) for x in coords) == tuple(
        Fraction(x) for x in point
    )
