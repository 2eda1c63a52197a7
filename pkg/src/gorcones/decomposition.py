"""Decompositions of the dual degree element and induced point partitions.

A decomposition writes deg_dual as half the sum of 2r distinct degree-one
points s_1..s_{2r} of the dual cone plus a sum of k-r further points
t_1..t_{k-r}, all jointly linearly independent.  r = 0 recovers the complete
intersection case, r = k the purely quadratic one.  Each decomposition sorts
the degree-one points of K into linear supports (one per t) and a symmetric
array of quadratic supports (one per unordered pair of s indices).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import lp
from .gorenstein import ReflexivePair, k1_points, kdual1_points
from .intlinalg import Vector, rational_rank, vadd, vdot


@dataclass(frozen=True)
class Decomposition:
    pair: ReflexivePair
    s: tuple[Vector, ...]
    t: tuple[Vector, ...]

    @property
    def r(self) -> int:
        return len(self.s) // 2

    def __post_init__(self):
        if len(self.s) % 2:
            raise ValueError("number of s vectors must be even")
        if len(self.s) // 2 + len(self.t) != self.pair.index:
            raise ValueError("wrong number of parts for the pair index")
        if len(set(self.s)) != len(self.s):
            raise ValueError("s vectors must be distinct")
        total = [Fraction(0)] * self.pair.ambient_rank
        for v in self.s:
            total = [a + Fraction(b, 2) for a, b in zip(total, v)]
        for v in self.t:
            total = [a + b for a, b in zip(total, v)]
        if tuple(total) != tuple(Fraction(x) for x in self.pair.deg_dual):
            raise ValueError("parts do not sum to the dual degree element")
        if rational_rank([list(v) for v in self.s + self.t]) != len(self.s) + len(self.t):
            raise ValueError("s and t vectors must be jointly linearly independent")
        level_one = set(kdual1_points(self.pair))
        if not set(self.s) <= level_one or not set(self.t) <= level_one:
            raise ValueError("parts must be degree-one points of the dual cone")


@dataclass(frozen=True)
class PointPartition:
    """Degree-one points of K keyed by their pairing pattern with s and t.

    A[j] holds the points pairing to 1 with t_j; T[i][j] == T[j][i] holds
    the points pairing to 1 with both s_i and s_j (to 2 with s_i when
    i == j).  Diagonal cells are allowed to be empty.
    """

    A: tuple[tuple[Vector, ...], ...]
    T: tuple[tuple[tuple[Vector, ...], ...], ...]

    def cells(self):
        """All cells with labels: ('A', j) or ('T', i, j) with i <= j."""
        out = [(("A", j), cell) for j, cell in enumerate(self.A)]
        for i in range(len(self.T)):
            for j in range(i, len(self.T)):
                out.append((("T", i, j), self.T[i][j]))
        return out


def enumerate_decompositions(pair: ReflexivePair, r: int) -> list[Decomposition]:
    """All decompositions of deg_dual with 2r half-weight parts.

    Depth-first over the degree-one points of the dual cone, t parts first.
    Each prefix is kept only while twice the remaining target stays inside
    the cone of the still-available points.
    """
    k = pair.index
    if not 0 <= r <= k:
        raise ValueError(f"r must lie in [0, {k}]")
    candidates = kdual1_points(pair)
    found: list[Decomposition] = []

    # residual bookkeeping uses doubled targets to stay integral
    def feasible(target2, start: int) -> bool:
        if all(x == 0 for x in target2):
            return True
        return lp.in_cone_hull(target2, candidates[start:])

    def choose_s(t_parts, start: int, s_parts, target2):
        if len(s_parts) == 2 * r:
            if any(x != 0 for x in target2):
                return
            vecs = [list(v) for v in s_parts + t_parts]
            if rational_rank(vecs) == len(vecs):
                found.append(Decomposition(pair, tuple(s_parts), tuple(t_parts)))
            return
        for i in range(start, len(candidates)):
            v = candidates[i]
            rest = tuple(a - b for a, b in zip(target2, v))
            if not feasible(rest, i + 1):
                continue
            choose_s(t_parts, i + 1, s_parts + [v], rest)

    def choose_t(start: int, t_parts, target2):
        if len(t_parts) == k - r:
            choose_s(t_parts, 0, [], target2)
            return
        for i in range(start, len(candidates)):
            v = candidates[i]
            rest = tuple(a - 2 * b for a, b in zip(target2, v))
            if not feasible(rest, 0):
                continue
            choose_t(i + 1, t_parts + [v], rest)

    choose_t(0, [], tuple(2 * x for x in pair.deg_dual))
    return found


def partition_points(pair: ReflexivePair, dec: Decomposition) -> PointPartition:
    """Classify every degree-one point of K by its pairings with s and t.

    Pairing against deg_dual equals 1, so the nonnegative profile
    (half-sum over s, sum over t) leaves exactly three shapes: a single t
    hit, a doubled s hit, or two distinct single s hits.
    """
    two_r, k_minus_r = len(dec.s), len(dec.t)
    A = [[] for _ in range(k_minus_r)]
    T = [[[] for _ in range(two_r)] for _ in range(two_r)]
    for x in k1_points(pair):
        sp = [vdot(x, s) for s in dec.s]
        tp = [vdot(x, t) for t in dec.t]
        if any(v < 0 for v in sp + tp):
            raise ValueError(f"point {x} pairs negatively; not in the cone")
        s_hits = [i for i, v in enumerate(sp) if v]
        t_hits = [j for j, v in enumerate(tp) if v]
        if not s_hits and len(t_hits) == 1 and tp[t_hits[0]] == 1:
            A[t_hits[0]].append(x)
        elif not t_hits and len(s_hits) == 1 and sp[s_hits[0]] == 2:
            i = s_hits[0]
            T[i][i].append(x)
        elif not t_hits and len(s_hits) == 2 and all(sp[i] == 1 for i in s_hits):
            i, j = s_hits
            T[i][j].append(x)
            T[j][i].append(x)
        else:
            raise ValueError(f"point {x} has inconsistent pairing profile "
                             f"s={sp} t={tp}")
    return PointPartition(
        A=tuple(tuple(cell) for cell in A),
        T=tuple(tuple(tuple(cell) for cell in row) for row in T),
    )


def quadratic_part_supports(pair: ReflexivePair, dec: Decomposition):
    """Same content as partition_points, keyed for the mixed construction.

    Returns (linear, quadratic) where linear[j] supports the j-th linear
    section and quadratic is the symmetric support array of the quadratic
    form.  Either side may be empty at the boundary values of r.
    """
    part = partition_points(pair, dec)
    return part.A, part.T


def decomposition_residual(dec: Decomposition) -> tuple[Fraction, ...]:
    """Re-summed parts minus deg_dual; always the zero vector."""
    total = [Fraction(0)] * dec.pair.ambient_rank
    for v in dec.s:
        total = [a + Fraction(b, 2) for a, b in zip(total, v)]
    for v in dec.t:
        total = vadd(total, v)
    return tuple(a - b for a, b in zip(total, dec.pair.deg_dual))
