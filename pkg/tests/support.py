"""Shared randomized generators and comparison helpers for the test suite."""

from fractions import Fraction

from gorcones.convex import RationalPolytope
from gorcones.decomposition import enumerate_decompositions
from gorcones.gorenstein import cayley_cone
from gorcones.intlinalg import identity_matrix
from gorcones.laurent import LaurentPolynomial, Poly

# rank n + index k stays <= 6; the two largest full-anticanonical shapes are
# left out because their dual slices carry hundreds of points
NEF_SHAPES = ((1, 1), (2, 1), (3, 1), (1, 2), (2, 2), (2, 3),
              (3, 2), (3, 3), (4, 2))


def random_unimodular(rng, n):
    """Random element of GL_n(Z) built from row additions."""
    u = identity_matrix(n)
    for _ in range(2 * n):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        c = rng.choice((1, -1))
        for col in range(n):
            u[j][col] += c * u[i][col]
    return u


def random_nef_deltas(rng, shapes=NEF_SHAPES):
    """Polytopes of a random nef-partition of projective space.

    The n + 1 vectors e_1..e_n, -sum(e) are split into k nonempty groups and
    each group's hull with the origin is moved by a random lattice shift and a
    common unimodular change of coordinates.
    """
    n, k = rng.choice(shapes)
    verts = [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    verts.append(tuple(-1 for _ in range(n)))
    rng.shuffle(verts)
    cuts = sorted(rng.sample(range(1, n + 1), k - 1))
    groups, prev = [], 0
    for cut in cuts + [n + 1]:
        groups.append(verts[prev:cut])
        prev = cut
    u = random_unimodular(rng, n)

    def act(v):
        return tuple(sum(u[i][j] * v[j] for j in range(n)) for i in range(n))

    deltas = []
    for group in groups:
        shift = tuple(rng.randint(-1, 1) for _ in range(n))
        deltas.append([tuple(a + b for a, b in zip(act(v), shift))
                       for v in [tuple(0 for _ in range(n))] + group])
    return deltas, n, k


def random_nef_pair(rng, shapes=NEF_SHAPES):
    deltas, _, k = random_nef_deltas(rng, shapes)
    pair = cayley_cone(deltas)
    assert pair.index == k
    return pair


def random_nef_pair_with_dec(rng, shapes=NEF_SHAPES):
    pair = random_nef_pair(rng, shapes)
    decs = enumerate_decompositions(pair, 0)
    assert decs, "a nef-partition cone always has its tag decomposition"
    return pair, decs[0]


def random_origin_polytope(rng, n):
    """Random full-dimensional polytope with the origin strictly inside."""
    points = [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    points += [tuple(-x for x in p) for p in points]
    for _ in range(rng.randrange(4)):
        points.append(tuple(rng.randint(-2, 2) for _ in range(n)))
    return RationalPolytope.from_points(points)


def random_doubly_stochastic(rng, n, terms=4):
    """Convex-type combination of random permutation matrices."""
    rows = [[Fraction(0)] * n for _ in range(n)]
    weights = [Fraction(rng.randint(1, 9), rng.randint(1, 9))
               for _ in range(terms)]
    for w in weights:
        perm = list(range(n))
        rng.shuffle(perm)
        for i, j in enumerate(perm):
            rows[i][j] += w
    return rows, sum(weights)


def scale_laurent(poly, factor):
    factor = factor if isinstance(factor, Poly) else Poly.const(Fraction(factor))
    return LaurentPolynomial(poly.rank,
                             {e: c * factor for e, c in poly.items()})


def unit_monomial_match(a, b):
    """Shift and rational scalar with b == scalar * x^shift * a, if any.

    This is equality up to an invertible element of the Laurent ring over the
    coefficient field.  Returns (shift, scalar) or None.
    """
    if a.is_zero() or b.is_zero():
        return ((), Fraction(0)) if a.is_zero() and b.is_zero() else None
    ea, ca = min(a.items(), key=lambda kv: kv[0])
    eb, cb = min(b.items(), key=lambda kv: kv[0])
    shift = tuple(x - y for x, y in zip(eb, ea))
    # the scalar must be rational; read a candidate off a shared monomial of
    # the matched lead coefficients and verify the whole polynomial
    lead_a = dict(ca.items())
    for mon, coeff in cb.items():
        if mon in lead_a:
            scalar = coeff / lead_a[mon]
            if scale_laurent(a.shift(shift), scalar) == b:
                return shift, scalar
            return None
    return None
