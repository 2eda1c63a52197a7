"""Character towers and quadratic-form data attached to a decomposition.

A decomposition of the dual degree element singles out a torus (or a torus
times an involution) inside the character group of the degree-one dual
points.  This module computes that tower of groups, assembles the generic
sections into linear forms plus a symmetric matrix, takes the determinant
down to a discriminant on the quotient torus, and works out the finite
presentation generated by odd square roots: commutation table, centre, and
the squares of the central monomials.  All of it is exact arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .convex import LatticePolytope
from .decomposition import Decomposition, PointPartition, partition_points
from .gorenstein import CoefficientFunction, ReflexivePair, kdual1_points
from .intlinalg import (
    AbelianGroupData,
    coordinates_in_basis,
    content,
    diagonal_of,
    integer_kernel,
    primitive,
    quotient_group,
    rational_rank,
    smith_normal_form,
    transpose,
    vdot,
    vscale,
)
from .laurent import LaurentPolynomial, Poly, determinant
from .quotients import QuotientData, quotient_data

__all__ = [
    "GroupTower",
    "SymmetricPolyMatrix",
    "CliffordPresentation",
    "CentralElement",
    "Multidegree",
    "FlatnessReport",
    "group_tower",
    "clifford_presentation",
    "assemble_sections",
    "total_section",
    "reconstruction_identity",
    "discriminant",
    "multidegree",
    "flatness_heuristic",
    "clifford_center",
]


@dataclass(frozen=True)
class GroupTower:
    """Structure of the character groups cut out by a decomposition.

    Each entry records invariants of a diagonalizable group: free rank f and
    torsion orders d give a product of f tori and cyclic factors of those
    orders.  ``h_meet_g_order`` is the order of the intersection of the
    distinguished one-parameter subgroup with the finite level; both it and
    ``g_bar`` are None for decompositions without a quadratic part.
    ``quotient_check`` certifies that the big group modulo the small one is
    a single torus factor.
    """

    g: AbelianGroupData
    g_hat: AbelianGroupData
    h_meet_g_order: int | None
    g_bar: AbelianGroupData | None
    quotient_check: bool


@dataclass(frozen=True)
class SymmetricPolyMatrix:
    """Symmetric matrix of Laurent polynomials over the ambient exponent lattice."""

    size: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.size or any(len(r) != self.size for r in self.entries):
            raise ValueError("entries must form a square matrix")
        for i in range(self.size):
            for j in range(i):
                if self.entries[i][j] != self.entries[j][i]:
                    raise ValueError("matrix must be symmetric")

    def __getitem__(self, key):
        i, j = key
        return self.entries[i][j]


@dataclass(frozen=True)
class CliffordPresentation:
    """Finite presentation data for the odd square-root generators.

    ``twist`` lists the sign each generator picks up under conjugation by
    the extra involution, or None when the involution is absent; the first
    sign is normalised to +1, the only regauge available.  ``coefficients``
    names the symbol attached to each generator's square.
    """

    r: int
    twist: tuple | None
    coefficients: tuple

    @property
    def generator_count(self):
        return 2 * self.r


@dataclass(frozen=True)
class CentralElement:
    """A central basis monomial together with its square."""

    h_power: int
    indices: tuple
    square: Poly

    def label(self, names):
        parts = (["h"] if self.h_power else []) + [names[i] for i in self.indices]
        return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class Multidegree:
    """Vanishing orders of a discriminant along the vertex directions.

    ``groups`` partitions the ray indices into circuit-connected blocks; when
    the configuration splits as a product, each block is one factor and
    ``group_degrees`` lists the total order per factor.
    """

    rays: tuple
    coefficients: tuple
    groups: tuple

    @property
    def group_degrees(self):
        return tuple(sum(self.coefficients[i] for i in block) for block in self.groups)


@dataclass(frozen=True)
class FlatnessReport:
    """Generic-position count of quadratic cells against the base dimension.

    A heuristic, not a proof: more nonempty cells than base dimensions means
    a generic section matrix has no fiber where it vanishes identically.
    """

    nonempty_quadratic_cells: int
    base_dimension: int

    @property
    def verdict(self):
        if self.nonempty_quadratic_cells > self.base_dimension:
            return "expected-flat"
        return "expected-nonflat"


def _annihilator_images(pair):
    """Rows: images in Z^p of a basis of the functionals killing deg_dual."""
    pts = kdual1_points(pair)
    ann = integer_kernel(transpose([list(pair.deg_dual)]))
    return pts, [tuple(vdot(m, pt) for pt in pts) for m in ann]


def _h_exponents(pts, dec):
    lookup = {pt: i for i, pt in enumerate(pts)}
    a = [0] * len(pts)
    for v in dec.s:
        a[lookup[v]] = 1
    for v in dec.t:
        a[lookup[v]] = 2
    return tuple(a)


def group_tower(pair: ReflexivePair, dec: Decomposition) -> GroupTower:
    """Character groups at the three levels singled out by a decomposition."""
    pts, img_rows = _annihilator_images(pair)
    p = len(pts)
    n = pair.ambient_rank
    full_rows = [tuple(pt[i] for pt in pts) for i in range(n)]
    g = quotient_group(p, full_rows)
    g_hat = quotient_group(p, img_rows)
    # the quotient of the two levels is one torus exactly when the points
    # span the lattice and the degree functional has a free cokernel line
    deg_line = quotient_group(n, integer_kernel(transpose([list(pair.deg_dual)])))
    check = (
        rational_rank([list(r) for r in full_rows]) == n
        and deg_line.free_rank == 1
        and not deg_line.torsion
    )
    if dec.r == 0:
        return GroupTower(g=g, g_hat=g_hat, h_meet_g_order=None, g_bar=None,
                          quotient_check=check)

    a = _h_exponents(pts, dec)
    twice = tuple(sum(a[i] * pt[j] for i, pt in enumerate(pts)) for j in range(n))
    if twice != vscale(2, pair.deg_dual):
        raise ArithmeticError("half-weight profile does not double to the dual degree")
    order = content(twice)

    # characters modulo the half-weight subgroup live on the kernel of its
    # exponent functional; rewrite the relations in that sublattice
    kernel = integer_kernel(transpose([list(a)]))
    rel = []
    for row in img_rows:
        c = coordinates_in_basis(row, kernel)
        if c is None or any(Fraction(x).denominator != 1 for x in c):
            raise ArithmeticError("a relation escapes the half-weight kernel")
        rel.append([int(x) for x in c])
    g_bar = quotient_group(p - 1, rel)
    return GroupTower(g=g, g_hat=g_hat, h_meet_g_order=order, g_bar=g_bar,
                      quotient_check=check)


def clifford_presentation(pair, dec) -> CliffordPresentation:
    """Generator count, involution twist, and coefficient names.

    Torsion of the character-group relations decides whether the extra
    involution is present; its conjugation signs are read off the torsion
    coordinate of the normal form.  Torsion beyond a single order-2 factor
    is out of scope and raises.
    """
    if dec.r == 0:
        raise ValueError("a quadratic part is required")
    pts, img_rows = _annihilator_images(pair)
    s_mat, _, v = smith_normal_form([list(r) for r in img_rows])
    torsion = [abs(d) for d in diagonal_of(s_mat) if abs(d) > 1]
    # torsion here can differ from the quotient lattice's: a half-sum of
    # parts lying on the degree-one slice untwists the character side while
    # the base keeps its finite factor
    names = tuple("c%d" % (i + 1) for i in range(2 * dec.r))
    if not torsion:
        return CliffordPresentation(r=dec.r, twist=None, coefficients=names)
    if torsion != [2]:
        raise ArithmeticError("only order-2 torsion is supported, got %r" % torsion)
    col = diagonal_of(s_mat).index(2)
    lookup = {pt: i for i, pt in enumerate(pts)}
    signs = [(-1) ** (v[lookup[w]][col] % 2) for w in dec.s]
    if signs[0] < 0:
        signs = [-x for x in signs]
    return CliffordPresentation(r=dec.r, twist=tuple(signs), coefficients=names)


def assemble_sections(c: CoefficientFunction, parts: PointPartition, dec: Decomposition):
    """Fold a coefficient assignment into linear forms and a symmetric matrix.

    Returns (f, R): one Laurent polynomial per unsplit vector, collecting the
    coefficients of its cell, and the symmetric matrix of the quadratic
    cells.  Off-diagonal cells are shared by two positions, hence the half;
    summing all matrix entries plus the linear forms returns the total
    section, which pins the convention.
    """
    rank = dec.pair.ambient_rank

    def fold(cell, half=False):
        poly = LaurentPolynomial(rank, {tuple(m): c[m] for m in cell})
        return poly * Fraction(1, 2) if half else poly

    f = tuple(fold(cell) for cell in parts.A)
    two_r = 2 * dec.r
    entries = tuple(
        tuple(fold(parts.T[i][j], half=(i != j)) for j in range(two_r))
        for i in range(two_r)
    )
    return f, SymmetricPolyMatrix(size=two_r, entries=entries)


def total_section(c: CoefficientFunction, pair) -> LaurentPolynomial:
    """The generic section: every degree-one point weighted by its coefficient."""
    return LaurentPolynomial(pair.ambient_rank, {tuple(m): c[m] for m in c.points})


def reconstruction_identity(f, matrix, c, pair) -> bool:
    """Check that the assembled pieces sum back to the total section."""
    acc = LaurentPolynomial.zero(pair.ambient_rank)
    for row in matrix.entries:
        for entry in row:
            acc = acc + entry
    for poly in f:
        acc = acc + poly
    return acc == total_section(c, pair)


def discriminant(matrix: SymmetricPolyMatrix, pair, dec, quotient=None) -> LaurentPolynomial:
    """Matrix determinant, shifted by twice the degree, on the quotient torus.

    Every exponent of the shifted determinant must annihilate the
    decomposition vectors; decompositions with unsplit vectors leave a
    residual pairing and are rejected.  The result is written in annihilator
    coordinates, ready for multidegree computations.
    """
    qd = quotient if quotient is not None else quotient_data(pair, dec)
    det = determinant([list(row) for row in matrix.entries])
    g = det.shift(vscale(-2, pair.deg))
    for exp in g.support():
        for w in dec.s + dec.t:
            if vdot(exp, w) != 0:
                raise ArithmeticError(
                    "exponent %r pairs to %d with %r; discriminant does not "
                    "descend to the quotient torus" % (exp, vdot(exp, w), w))

    def to_bar(exp):
        coords = coordinates_in_basis(exp, qd.m_bar_basis)
        if coords is None or any(Fraction(x).denominator != 1 for x in coords):
            raise ArithmeticError("support escapes the annihilator lattice")
        return tuple(int(x) for x in coords)

    if g.is_zero():
        return LaurentPolynomial.zero(len(qd.m_bar_basis))
    return g.reexpress(to_bar)


def _matroid_components(vectors):
    """Blocks of indices joined by minimal linear dependencies."""
    n = len(vectors)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        parent[find(i)] = find(j)

    rank_all = rational_rank([list(v) for v in vectors])
    for size in range(2, rank_all + 2):
        for subset in itertools.combinations(range(n), size):
            rows = [list(vectors[i]) for i in subset]
            if rational_rank(rows) == size:
                continue
            if any(
                rational_rank([list(vectors[i]) for i in subset if i != drop]) < size - 1
                for drop in subset
            ):
                continue
            for i in subset[1:]:
                union(subset[0], i)
    blocks = {}
    for i in range(n):
        blocks.setdefault(find(i), []).append(i)
    return tuple(tuple(b) for _, b in sorted(blocks.items(), key=lambda kv: kv[1][0]))


def multidegree(g: LaurentPolynomial, theta: LatticePolytope) -> Multidegree:
    """Vanishing order of g along each vertex direction of the projected hull.

    Rays are the primitive vertex directions; the order along a ray is minus
    the minimal pairing over the support.  Rays are grouped by circuit
    connectivity, so a product configuration reports one degree per factor.
    """
    if g.is_zero():
        raise ValueError("zero discriminant has no multidegree")
    rays = tuple(primitive(tuple(int(x) for x in v)) for v in theta.vertices)
    coeffs = tuple(-g.min_pairing(ray) for ray in rays)
    return Multidegree(rays=rays, coefficients=coeffs, groups=_matroid_components(rays))


def flatness_heuristic(pair, dec, parts=None, quotient=None) -> FlatnessReport:
    """Count nonempty quadratic cells against the quotient dimension."""
    if dec.r == 0:
        raise ValueError("a quadratic part is required")
    part = parts if parts is not None else partition_points(pair, dec)
    qd = quotient if quotient is not None else quotient_data(pair, dec)
    two_r = 2 * dec.r
    count = sum(
        1 for i in range(two_r) for j in range(i, two_r) if part.T[i][j]
    )
    return FlatnessReport(nonempty_quadratic_cells=count,
                          base_dimension=qd.n_bar_free_rank)


def _word_product(twist, left, right):
    """Normal-ordered product of basis words (h-power, index tuple).

    Returns (h-power, word, sign, squared): squared lists the indices whose
    generators collided, each contributing a factor -c.
    """
    (l1, s1), (l2, s2) = left, right
    sign = 1
    if l2:
        for i in s1:
            if twist[i] < 0:
                sign = -sign
    word = list(s1)
    squared = []
    for i in s2:
        greater = sum(1 for a in word if a > i)
        if greater % 2:
            sign = -sign
        if i in word:
            word.remove(i)
            squared.append(i)
        else:
            word.append(i)
            word.sort()
    return (l1 ^ l2, tuple(word), sign, tuple(squared))


def _commutes(twist, a, b):
    la, wa, sa, qa = _word_product(twist, a, b)
    lb, wb, sb, qb = _word_product(twist, b, a)
    # collision sets agree for both orders, so the coefficient polynomials
    # match exactly when the signs do
    return (la, wa, qa) == (lb, wb, qb) and sa == sb


def even_monomial_basis(presentation: CliffordPresentation):
    """Basis words of the even part, as (involution power, index tuple) pairs.

    Words use an even number of generators; the involution letter, when the
    presentation has one, contributes a free exponent in {0, 1}.
    """
    m = presentation.generator_count
    h_powers = (0, 1) if presentation.twist is not None else (0,)
    return [
        (l, subset)
        for l in h_powers
        for size in range(0, m + 1, 2)
        for subset in itertools.combinations(range(m), size)
    ]


def clifford_center(presentation: CliffordPresentation):
    """Central monomials of the even part, with their squares.

    Candidates commuting with all quadratic generators and the involution
    are verified against the complete even basis by explicit multiplication.
    """
    m = presentation.generator_count
    twist = presentation.twist if presentation.twist is not None else (1,) * m
    basis = even_monomial_basis(presentation)
    gens = [(0, (i, j)) for i in range(m) for j in range(i + 1, m)]
    if presentation.twist is not None:
        gens.append((1, ()))
    central = [b for b in basis if all(_commutes(twist, b, g) for g in gens)]
    for b in central:
        for other in basis:
            if not _commutes(twist, b, other):
                raise ArithmeticError("generator test accepted a non-central monomial")

    out = []
    for l, subset in central:
        _, word, sign, squared = _word_product(twist, (l, subset), (l, subset))
        if word or squared != subset:
            raise ArithmeticError("square of a basis monomial must collapse")
        square = Poly.const(sign * (-1) ** len(subset))
        for i in subset:
            square = square * Poly.symbol(presentation.coefficients[i])
        out.append(CentralElement(h_power=l, indices=subset, square=square))
    out.sort(key=lambda e: (len(e.indices), e.indices, e.h_power))
    return tuple(out)
