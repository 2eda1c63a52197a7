"""Exact linear algebra over the integers and rationals.

Everything here works on plain tuples of ints (lattice vectors) and lists of
lists (matrices).  No floating point anywhere: unimodular bookkeeping breaks
at the first rounding error, so all pivoting is done with exact arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

Vector = tuple[int, ...]


# ---------------------------------------------------------------------------
# vector helpers


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vscale(c, a):
    return tuple(c * x for x in a)


def vneg(a):
    return tuple(-x for x in a)


def vdot(a, b):
    return sum(x * y for x, y in zip(a, b, strict=True))


def is_zero(a) -> bool:
    return all(x == 0 for x in a)


def content(a) -> int:
    """Gcd of the entries, 0 for the zero vector."""
    g = 0
    for x in a:
        g = gcd(g, abs(int(x)))
    return g


def primitive(a) -> Vector:
    """Divide an integer vector by its content.  Zero stays zero."""
    g = content(a)
    if g <= 1:
        return tuple(int(x) for x in a)
    return tuple(int(x) // g for x in a)


def clear_denominators(a) -> Vector:
    """Scale a rational vector by a positive integer to a primitive one."""
    lcm = 1
    for x in a:
        f = Fraction(x)
        lcm = lcm * f.denominator // gcd(lcm, f.denominator)
    return primitive(tuple(int(Fraction(x) * lcm) for x in a))


# ---------------------------------------------------------------------------
# matrix helpers (row-major lists of lists)


def identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(rows):
    return [list(col) for col in zip(*rows)] if rows else []


def mat_mul(a, b):
    if not a or not b:
        return []
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a, v):
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def rational_rank(rows) -> int:
    """Rank over the rationals, by fraction-free Gaussian elimination."""
    work = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    cols = len(work[0]) if work else 0
    for col in range(cols):
        pivot = next((i for i in range(rank, len(work)) if work[i][col] != 0), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        prow = work[rank]
        inv = 1 / prow[col]
        work[rank] = [x * inv for x in prow]
        for i in range(len(work)):
            if i != rank and work[i][col] != 0:
                f = work[i][col]
                work[i] = [x - f * y for x, y in zip(work[i], work[rank])]
        rank += 1
        if rank == len(work):
            break
    return rank


def solve_rational(rows, rhs):
    """One exact solution x of (rows) @ x = rhs, or None if inconsistent.

    Returns a tuple of Fractions.  Underdetermined systems yield the solution
    with free variables set to zero.
    """
    m = len(rows)
    if m == 0:
        return ()
    n = len(rows[0])
    aug = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(rows)]
    pivots = []
    rank = 0
    for col in range(n):
        pivot = next((i for i in range(rank, m) if aug[i][col] != 0), None)
        if pivot is None:
            continue
        aug[rank], aug[pivot] = aug[pivot], aug[rank]
        inv = 1 / aug[rank][col]
        aug[rank] = [x * inv for x in aug[rank]]
        for i in range(m):
            if i != rank and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[rank])]
        pivots.append(col)
        rank += 1
    for i in range(rank, m):
        if aug[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for r, col in enumerate(pivots):
        x[col] = aug[r][n]
    return tuple(x)


def nullspace_rational(rows, n=None):
    """Basis of {x : rows @ x = 0} over the rationals (list of tuples)."""
    if n is None:
        n = len(rows[0]) if rows else 0
    work = [[Fraction(x) for x in row] for row in rows]
    pivots = {}
    rank = 0
    for col in range(n):
        pivot = next((i for i in range(rank, len(work)) if work[i][col] != 0), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        inv = 1 / work[rank][col]
        work[rank] = [x * inv for x in work[rank]]
        for i in range(len(work)):
            if i != rank and work[i][col] != 0:
                f = work[i][col]
                work[i] = [x - f * y for x, y in zip(work[i], work[rank])]
        pivots[col] = rank
        rank += 1
    basis = []
    free = [c for c in range(n) if c not in pivots]
    for fcol in free:
        v = [Fraction(0)] * n
        v[fcol] = Fraction(1)
        for col, r in pivots.items():
            v[col] = -work[r][fcol]
        basis.append(tuple(v))
    return basis


# ---------------------------------------------------------------------------
# Smith normal form


def smith_normal_form(a):
    """Smith normal form with transforms: returns (s, u, v) with s = u a v.

    u and v are unimodular, s is diagonal with nonnegative entries satisfying
    the divisibility chain d1 | d2 | ... .  Pivoting picks the entry of
    minimal absolute value in the remaining block; on small dense inputs this
    keeps intermediate growth tame without needing anything fancier.
    """
    s = [[int(x) for x in row] for row in a]
    m = len(s)
    n = len(s[0]) if m else 0
    u = identity_matrix(m)
    v = identity_matrix(n)

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        # row dst += q * row src
        s[dst] = [x + q * y for x, y in zip(s[dst], s[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, q):
        for row in s:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        # locate minimal-abs nonzero entry in the trailing block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = s[i][j]
                if x != 0 and (best is None or abs(x) < abs(s[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            # clear column t
            dirty = False
            for i in range(t + 1, m):
                if s[i][t] != 0:
                    q = round(Fraction(s[i][t], s[t][t]))
                    add_row(t, i, -q)
                    if s[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
            # clear row t
            for j in range(t + 1, n):
                if s[t][j] != 0:
                    q = round(Fraction(s[t][j], s[t][t]))
                    add_col(t, j, -q)
                    if s[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
            if not dirty:
                break
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
        # pivot must divide every entry further down; if not, fold the
        # offending row in and redo this step
        offender = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if s[i][j] % s[t][t] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(offender, t, 1)
            continue
        t += 1
    return s, u, v


def diagonal_of(s):
    return [s[i][i] for i in range(min(len(s), len(s[0]) if s else 0)) if s[i][i] != 0]


@dataclass(frozen=True)
class AbelianGroupData:
    """Finitely generated abelian group: free rank plus a divisibility chain."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for i, d in enumerate(self.torsion):
            if d < 2:
                raise ValueError("torsion orders must be >= 2")
            if i and self.torsion[i - 1] != 0 and d % self.torsion[i - 1] != 0:
                raise ValueError("torsion orders must form a divisibility chain")

    @property
    def order(self):
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " x ".join(parts) if parts else "0"


def quotient_group(ambient_rank: int, relations) -> AbelianGroupData:
    """Structure of Z^ambient_rank modulo the subgroup spanned by relations."""
    relations = [list(r) for r in relations]
    for r in relations:
        if len(r) != ambient_rank:
            raise ValueError("relation length does not match ambient rank")
    if not relations:
        return AbelianGroupData(ambient_rank, ())
    s, _, _ = smith_normal_form(relations)
    diag = diagonal_of(s)
    return AbelianGroupData(ambient_rank - len(diag), tuple(d for d in diag if d > 1))


def unimodular_inverse(u):
    """Exact inverse of a unimodular integer matrix, as integer rows."""
    n = len(u)
    aug = [[Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(n)]
           for i, row in enumerate(u)]
    for col in range(n):
        pivot = next(i for i in range(col, n) if aug[i][col] != 0)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    out = []
    for row in aug:
        vals = row[n:]
        if any(x.denominator != 1 for x in vals):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in vals])
    return out


def saturate(generators, ambient_rank=None):
    """Basis of the saturation (Q-span intersected with Z^n) of a row span."""
    gens = [list(g) for g in generators if not is_zero(g)]
    if not gens:
        return []
    n = ambient_rank or len(gens[0])
    s, _, v = smith_normal_form(gens)
    rank = len(diagonal_of(s))
    vinv = unimodular_inverse(v)
    # row span of A equals the row span of S V^{-1}, whose nonzero rows are
    # d_i times the first `rank` rows of V^{-1}
    return [tuple(vinv[i][:n]) for i in range(rank)]


def free_quotient_projection(kill_rows, ambient_rank=None):
    """Projection of Z^n onto the free quotient by a saturated row span.

    Returns an n x (n - q) integer matrix P, stored as rows, with q the rank
    of the span; x maps to x @ P.  The kernel is exactly the saturation of
    the span, so the quotient is torsion-free and the map hits all of
    Z^(n-q).
    """
    rows = [list(r) for r in kill_rows if not is_zero(r)]
    if not rows:
        if ambient_rank is None:
            raise ValueError("ambient rank required when no relations are given")
        return identity_matrix(ambient_rank)
    n = len(rows[0])
    s, _, v = smith_normal_form(rows)
    q = len(diagonal_of(s))
    return [tuple(v[i][q:]) for i in range(n)]


def project_with(projection_rows, vec) -> Vector:
    """Apply a rows-as-matrix projection to a row vector."""
    width = len(projection_rows[0]) if projection_rows else 0
    return tuple(sum(vec[i] * projection_rows[i][j] for i in range(len(vec)))
                 for j in range(width))


def integer_kernel(rows):
    """Basis of {x in Z^m : x @ rows = 0} for an m x n integer matrix."""
    m = len(rows)
    if m == 0:
        return []
    s, u, _ = smith_normal_form(rows)
    rank = len(diagonal_of(s))
    return [tuple(u[i]) for i in range(rank, m)]


def lattice_span_basis(rows):
    """Basis (as rows) of the integer lattice generated by the given rows."""
    rows = [list(r) for r in rows if not is_zero(r)]
    if not rows:
        return []
    s, _, v = smith_normal_form(rows)
    vinv = unimodular_inverse(v)
    diag = diagonal_of(s)
    n = len(rows[0])
    return [tuple(diag[i] * vinv[i][j] for j in range(n)) for i in range(len(diag))]


def coordinates_in_basis(vec, basis_rows):
    """Exact coordinates of vec in the given row basis, or None if outside."""
    cols = transpose([list(b) for b in basis_rows])
    sol = solve_rational(cols, list(vec))
    if sol is None:
        return None
    # solve_rational gives one solution; with independent basis rows it is the
    # unique one
    return sol


def det_rational(rows):
    """Exact determinant of a square matrix (int or Fraction entries)."""
    n = len(rows)
    work = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for col in range(n):
        pivot = next((i for i in range(col, n) if work[i][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            det = -det
        det *= work[col][col]
        inv = 1 / work[col][col]
        work[col] = [x * inv for x in work[col]]
        for i in range(col + 1, n):
            if work[i][col] != 0:
                f = work[i][col]
                work[i] = [x - f * y for x, y in zip(work[i], work[col])]
    return det


# ---------------------------------------------------------------------------
# Birkhoff-von Neumann


@dataclass(frozen=True)
class DoublyStochasticMatrix:
    """Square nonnegative rational matrix with all line sums equal."""

    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        if any(len(row) != n for row in self.entries):
            raise ValueError("matrix must be square")
        if any(x < 0 for row in self.entries for x in row):
            raise ValueError("entries must be nonnegative")
        sums = {sum(row) for row in self.entries}
        sums |= {sum(col) for col in zip(*self.entries)}
        if len(sums) > 1:
            raise ValueError("row and column sums disagree")

    @classmethod
    def from_rows(cls, rows):
        return cls(tuple(tuple(Fraction(x) for x in row) for row in rows))

    @property
    def size(self):
        return len(self.entries)

    @property
    def line_sum(self) -> Fraction:
        return sum(self.entries[0]) if self.entries else Fraction(0)


def _perfect_matching(support):
    """Perfect matching rows -> cols in a bipartite support set, or None."""
    n = len(support)
    match_col = [None] * n  # col -> row

    def augment(row, seen):
        for col in support[row]:
            if col in seen:
                continue
            seen.add(col)
            if match_col[col] is None or augment(match_col[col], seen):
                match_col[col] = row
                return True
        return False

    for row in range(n):
        if not augment(row, set()):
            return None
    perm = [None] * n
    for col, row in enumerate(match_col):
        perm[row] = col
    return tuple(perm)


def birkhoff_decompose(matrix):
    """Write a doubly stochastic matrix as a convex-type sum of permutations.

    Returns a list of (weight, permutation) pairs with positive rational
    weights; permutation p sends row i to column p[i].  The weights sum to the
    common line sum and the weighted permutation matrices reconstruct the
    input exactly.  Greedy peeling of the minimum entry along a support
    matching needs at most n^2 - n + 1 terms.
    """
    if not isinstance(matrix, DoublyStochasticMatrix):
        matrix = DoublyStochasticMatrix.from_rows(matrix)
    n = matrix.size
    work = [list(row) for row in matrix.entries]
    out = []
    while any(x != 0 for row in work for x in row):
        support = [[j for j in range(n) if work[i][j] != 0] for i in range(n)]
        perm = _perfect_matching(support)
        if perm is None:
            raise ValueError("support of a doubly stochastic matrix must contain a matching")
        w = min(work[i][perm[i]] for i in range(n))
        out.append((w, perm))
        for i in range(n):
            work[i][perm[i]] -= w
    if len(out) > n * n - n + 1 and n > 0:
        raise AssertionError("peeling exceeded the n^2 - n + 1 term bound")
    return out
