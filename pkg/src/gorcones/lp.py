"""Exact rational linear programming, feasibility only.

Phase-1 simplex over Fractions with Bland's rule.  The instances solved here
are tiny (tens of rows), so clarity beats sparsity tricks.  Strict
inequalities never appear directly: callers encode strictness as a margin,
e.g. "fold >= 1" instead of "fold > 0", which is equivalent up to scaling for
homogeneous systems.
"""

from __future__ import annotations

from fractions import Fraction


def feasible_nonneg(a_rows, b):
    """Some x >= 0 with A x = b, or None if the system is infeasible."""
    m = len(a_rows)
    if m == 0:
        return ()
    n = len(a_rows[0])
    tab = []
    for i in range(m):
        row = [Fraction(x) for x in a_rows[i]] + [Fraction(0)] * m + [Fraction(b[i])]
        if row[-1] < 0:
            row = [-x for x in row]
        row[n + i] = Fraction(1)
        tab.append(row)
    width = n + m + 1
    basis = [n + i for i in range(m)]
    # reduced costs for minimizing the sum of artificials
    cost = [Fraction(0)] * width
    for j in range(width):
        col_sum = sum(tab[i][j] for i in range(m))
        cost[j] = (Fraction(1) if n <= j < n + m else Fraction(0)) - col_sum

    while True:
        enter = next((j for j in range(n + m) if cost[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = tab[i][-1] / tab[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            raise ArithmeticError("phase-1 objective unbounded; inconsistent tableau")
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[leave])]
        if cost[enter] != 0:
            f = cost[enter]
            cost = [x - f * y for x, y in zip(cost, tab[leave] + [])]
        basis[leave] = enter

    objective = -cost[-1]
    if objective != 0:
        return None
    x = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            x[var] = tab[i][-1]
    return tuple(x)


def feasible_system(n_vars, inequalities=(), equalities=()):
    """Some free x in Q^n with a.x >= c for (a, c) in inequalities and
    a.x = c for (a, c) in equalities; None if infeasible."""
    ineqs = [(list(a), Fraction(c)) for a, c in inequalities]
    eqs = [(list(a), Fraction(c)) for a, c in equalities]
    m = len(ineqs) + len(eqs)
    if m == 0:
        return tuple(Fraction(0) for _ in range(n_vars))
    # x = u - w with u, w >= 0; slack s >= 0 on inequalities
    rows = []
    rhs = []
    n_slack = len(ineqs)
    for idx, (a, c) in enumerate(ineqs):
        row = [Fraction(x) for x in a] + [Fraction(-x) for x in a] + [Fraction(0)] * n_slack
        row[2 * n_vars + idx] = Fraction(-1)
        rows.append(row)
        rhs.append(c)
    for a, c in eqs:
        row = [Fraction(x) for x in a] + [Fraction(-x) for x in a] + [Fraction(0)] * n_slack
        rows.append(row)
        rhs.append(c)
    sol = feasible_nonneg(rows, rhs)
    if sol is None:
        return None
    return tuple(sol[j] - sol[n_vars + j] for j in range(n_vars))


def in_convex_hull(point, generators):
    """True when point is a convex combination of the generators."""
    gens = list(generators)
    if not gens:
        return False
    d = len(point)
    rows = []
    rhs = []
    for i in range(d):
        rows.append([Fraction(g[i]) for g in gens])
        rhs.append(Fraction(point[i]))
    rows.append([Fraction(1)] * len(gens))
    rhs.append(Fraction(1))
    return feasible_nonneg(rows, rhs) is not None


def in_cone_hull(point, generators):
    """True when point is a nonnegative combination of the generators."""
    gens = list(generators)
    d = len(point)
    if not gens:
        return all(Fraction(x) == 0 for x in point)
    rows = [[Fraction(g[i]) for g in gens] for i in range(d)]
    rhs = [Fraction(point[i]) for i in range(d)]
    return feasible_nonneg(rows, rhs) is not None


def extreme_points(points):
    """Subset of points that are vertices of the convex hull (exact LP test)."""
    pts = list(dict.fromkeys(tuple(p) for p in points))
    out = []
    for i, p in enumerate(pts):
        others = [q for j, q in enumerate(pts) if j != i]
        if not in_convex_hull(p, others):
            out.append(p)
    return out
