"""Regular simplicial fans over the degree-one points of the dual cone.

Construction goes through exact lower hulls of lifted point configurations.
Every fan produced here can be re-certified from scratch: simpliciality,
proper pairwise intersections, exact volume bookkeeping against a reference
triangulation, and a rational LP certificate of regularity.  On top of that
sit the centrality searches (all maximal cones containing a prescribed ray
set) and the piecewise-linear walk between two lifts that reads off the
circuit of every elementary flip.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from math import lcm

from . import lp
from .convex import GeometryError, extreme_rays_of_halfspaces
from .decomposition import Decomposition
from .gorenstein import ReflexivePair, kdual1_points
from .intlinalg import (
    Vector,
    clear_denominators,
    det_rational,
    free_quotient_projection,
    nullspace_rational,
    project_with,
    rational_rank,
    solve_rational,
    vdot,
)

# attempt schedule for symbolic-style tie breaking; the base grows fast so a
# later attempt dominates every earlier near-degeneracy
_PERTURBATION_BASES = (1 << 8, 1 << 16, 1 << 32, 1 << 64, 1 << 128)


@dataclass(frozen=True)
class SimplicialFan:
    """Simplicial cones indexed into a fixed point configuration.

    Unused points are legitimate: they simply appear in no cone.  The lift
    that produced the fan is kept when known; it never takes part in
    equality.
    """

    point_config: tuple[Vector, ...]
    maximal_cones: tuple[tuple[int, ...], ...]
    lift: tuple[Fraction, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "point_config",
                           tuple(tuple(p) for p in self.point_config))
        object.__setattr__(self, "maximal_cones",
                           tuple(sorted(tuple(sorted(c)) for c in self.maximal_cones)))

    @property
    def rank(self) -> int:
        return len(self.point_config[0]) if self.point_config else 0

    def cone_points(self, cone: tuple[int, ...]):
        return [self.point_config[i] for i in cone]

    def used_indices(self) -> set[int]:
        return {i for cone in self.maximal_cones for i in cone}

    def common_ray_indices(self) -> tuple[int, ...]:
        """Indices present in every maximal cone."""
        if not self.maximal_cones:
            return ()
        common = set(self.maximal_cones[0])
        for cone in self.maximal_cones[1:]:
            common &= set(cone)
        return tuple(sorted(common))


@dataclass(frozen=True)
class Circuit:
    """Minimal integral relation among configuration points.

    positive holds (index, weight > 0), negative holds (index, weight < 0);
    the weighted points sum to zero exactly.  For flip events the sign is
    normalized so that the cells removed by the flip are the ones omitting a
    positive-part index; the new cells each omit a negative-part index.
    """

    point_config: tuple[Vector, ...]
    positive: tuple[tuple[int, int], ...]
    negative: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if any(w <= 0 for _, w in self.positive) or any(w >= 0 for _, w in self.negative):
            raise ValueError("sign convention violated in circuit parts")
        rank = len(self.point_config[0])
        total = [0] * rank
        for idx, w in self.positive + self.negative:
            for j in range(rank):
                total[j] += w * self.point_config[idx][j]
        if any(total):
            raise ValueError("circuit weights do not sum to zero")

    def support(self) -> tuple[int, ...]:
        return tuple(sorted(i for i, _ in self.positive + self.negative))


def circuit_mu(circuit: Circuit, pair: ReflexivePair) -> int:
    """Sum of the circuit weights, cross-checked through the degree pairing.

    On degree-one points every weight contributes itself to the pairing of
    the (zero) relation vector with deg, so both computations must agree.
    """
    direct = sum(w for _, w in circuit.positive + circuit.negative)
    paired = sum(w * vdot(circuit.point_config[i], pair.deg)
                 for i, w in circuit.positive + circuit.negative)
    if direct != paired:
        raise ValueError("circuit points are not all at degree one")
    return direct


@dataclass(frozen=True)
class FanReport:
    """Outcome of verify_fan: first failure wins, witness attached."""

    ok: bool
    failure: str | None = None
    witness: object = None
    heights: tuple[Fraction, ...] | None = None
    level_volume: int | None = None
    reference_volume: int | None = None
    common_ray_indices: tuple[int, ...] = ()


# ---------------------------------------------------------------------------
# lower hulls and regular triangulations


def _as_heights(points, lifting) -> tuple[Fraction, ...]:
    if callable(lifting):
        return tuple(Fraction(lifting(i)) for i in range(len(points)))
    if isinstance(lifting, dict):
        return tuple(Fraction(lifting.get(i, 0)) for i in range(len(points)))
    heights = tuple(Fraction(h) for h in lifting)
    if len(heights) != len(points):
        raise ValueError("one height per point required")
    return heights


def lower_cells(points, heights):
    """Cells of the regular subdivision selected by the heights.

    The subdivision is read off the facets of the cone over the lifted
    points with an added vertical ray; facets whose normals have positive
    last coordinate face downward and project to the cells.
    """
    m = len(points)
    rank = len(points[0])
    lifted = []
    for p, h in zip(points, heights):
        row = [Fraction(x) for x in p] + [h]
        scale = lcm(*(x.denominator for x in row))
        lifted.append(tuple(int(x * scale) for x in row))
    lifted.append(tuple([0] * rank + [1]))
    rays, lineality = extreme_rays_of_halfspaces([tuple(v) for v in lifted], rank + 1)
    if lineality:
        raise GeometryError("points do not positively span a full-rank cone")
    cells = []
    for normal in rays:
        if normal[-1] <= 0:
            continue
        cell = tuple(i for i in range(m) if vdot(lifted[i], normal) == 0)
        cells.append(cell)
    return sorted(cells)


def _cell_volume(points, cell) -> int:
    det = det_rational([list(points[i]) for i in cell])
    if det.denominator != 1:
        raise AssertionError("integer points produced a non-integer determinant")
    return abs(int(det))


def regular_triangulation(points, lifting) -> SimplicialFan:
    """Regular triangulation of the cone over the points for a given lift.

    When the lift has flat spots, ties are broken by adding infinitesimals
    ordered by point index, realized as inverse powers of a growing base.
    A perturbed result is accepted only if it is simplicial and refines the
    unperturbed subdivision, so the outcome is deterministic and faithful to
    the requested lift.
    """
    points = tuple(tuple(p) for p in points)
    if not points:
        raise ValueError("empty point configuration")
    if rational_rank([list(p) for p in points]) != len(points[0]):
        raise GeometryError("points do not span the ambient space")
    heights = _as_heights(points, lifting)
    base_cells = lower_cells(points, heights)
    rank = len(points[0])
    if all(len(c) == rank for c in base_cells):
        return SimplicialFan(points, tuple(base_cells), lift=heights)
    base_sets = [set(c) for c in base_cells]
    for base in _PERTURBATION_BASES:
        jiggled = tuple(h + Fraction(1, base ** (i + 1))
                        for i, h in enumerate(heights))
        cells = lower_cells(points, jiggled)
        if any(len(c) != rank for c in cells):
            continue
        if all(any(set(c) <= b for b in base_sets) for c in cells):
            return SimplicialFan(points, tuple(cells), lift=jiggled)
    raise GeometryError("lift stayed degenerate through the perturbation budget")


@lru_cache(maxsize=None)
def reference_triangulation(points: tuple) -> SimplicialFan:
    """Fixed triangulation used for volume bookkeeping: squared-norm lift."""
    return regular_triangulation(points, [sum(x * x for x in p) for p in points])


def configuration_volume(points: tuple) -> int:
    """Normalized volume of the cone over the points, at pairing level one."""
    fan = reference_triangulation(tuple(tuple(p) for p in points))
    return sum(_cell_volume(fan.point_config, c) for c in fan.maximal_cones)


# ---------------------------------------------------------------------------
# walls, circuits, regularity


@lru_cache(maxsize=None)
def _relation_on(points: tuple, indices: tuple):
    """Minimal integral relation among rank+1 points, or None if degenerate.

    The kernel must be one-dimensional; the sign is fixed by the first
    nonzero weight being positive.
    """
    cols = [points[i] for i in indices]
    rank = len(points[0])
    rows = [[cols[j][i] for j in range(len(cols))] for i in range(rank)]
    kernel = nullspace_rational(rows)
    if len(kernel) != 1:
        return None
    rel = clear_denominators(kernel[0])
    lead = next(x for x in rel if x)
    if lead < 0:
        rel = tuple(-x for x in rel)
    return rel


@lru_cache(maxsize=None)
def _coordinates_in_cell(points: tuple, cell: tuple, idx: int):
    """Barycentric-style coordinates of a point over a simplicial cell."""
    cols = [[points[j][i] for j in cell] for i in range(len(points[0]))]
    return solve_rational(cols, list(points[idx]))


def fan_walls(fan: SimplicialFan):
    """Map from wall (sorted index tuple of size rank-1) to incident cones."""
    walls: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for cone in fan.maximal_cones:
        for drop in cone:
            wall = tuple(i for i in cone if i != drop)
            walls.setdefault(wall, []).append(cone)
    return walls


def _wall_fold(fan: SimplicialFan, wall, cone_a, cone_b):
    """Circuit weights across a wall, positive on the two apex points."""
    apex_a = next(i for i in cone_a if i not in wall)
    apex_b = next(i for i in cone_b if i not in wall)
    z = tuple(sorted(set(wall) | {apex_a, apex_b}))
    rel = _relation_on(fan.point_config, z)
    if rel is None:
        return None
    weights = dict(zip(z, rel))
    if weights[apex_a] < 0:
        weights = {i: -w for i, w in weights.items()}
    if weights[apex_a] <= 0 or weights[apex_b] <= 0:
        return None
    return weights


def _boundary_normals(pair: ReflexivePair):
    # facet normals of the dual cone are exactly the primitive rays of K
    return pair.K.cone.generators


def _wall_on_boundary(points, wall, normals) -> bool:
    return any(all(vdot(points[i], nu) == 0 for i in wall) for nu in normals)


def _regularity_constraints(fan: SimplicialFan):
    """Linear rows over per-point heights expressing strict convexity.

    One row per interior wall (the fold there must be positive) and one row
    per unused point (it must sit strictly above the hull over any cell that
    contains it).  Returns None if the fan is not even wall-consistent.
    """
    m = len(fan.point_config)
    rows = []
    for wall, cones in sorted(fan_walls(fan).items()):
        if len(cones) == 1:
            continue
        if len(cones) > 2:
            return None
        weights = _wall_fold(fan, wall, cones[0], cones[1])
        if weights is None:
            return None
        row = [Fraction(0)] * m
        for i, w in weights.items():
            row[i] = Fraction(w)
        rows.append((row, Fraction(1)))
    used = fan.used_indices()
    for idx in range(m):
        if idx in used:
            continue
        coords = None
        host = None
        for cone in fan.maximal_cones:
            c = _coordinates_in_cell(fan.point_config, cone, idx)
            if c is not None and all(x >= 0 for x in c):
                coords, host = c, cone
                break
        if coords is None:
            return None
        row = [Fraction(0)] * m
        row[idx] = Fraction(1)
        for j, lam in zip(host, coords):
            row[j] -= lam
        rows.append((row, Fraction(1)))
    return rows


def regularity_certificate(fan: SimplicialFan):
    """Heights making the fan the exact lower hull of its own lift."""
    rows = _regularity_constraints(fan)
    if rows is None:
        return None
    return lp.feasible_system(len(fan.point_config), inequalities=rows)


def _cone_halfspaces(points, cone):
    gens = [tuple(points[i]) for i in cone]
    duals, lin = extreme_rays_of_halfspaces(gens, len(points[0]))
    if lin:
        raise GeometryError(f"cone {cone} spans a line")
    return duals


def _proper_intersection(points, cone_a, cone_b, hs_a, hs_b) -> bool:
    """cone_a and cone_b must meet exactly in their common generator face."""
    common = sorted(set(cone_a) & set(cone_b))
    rays, lin = extreme_rays_of_halfspaces(list(hs_a) + list(hs_b),
                                           len(points[0]))
    if lin:
        return False
    face = [points[i] for i in common]
    return all(lp.in_cone_hull(ray, face) for ray in rays)


def verify_fan(fan: SimplicialFan, pair: ReflexivePair) -> FanReport:
    """Full certificate run for a fan over the dual degree-one points."""
    config = tuple(kdual1_points(pair))
    if tuple(fan.point_config) != config:
        return FanReport(False, "point-config",
                         witness="configuration differs from the degree-one points")
    rank = pair.ambient_rank
    volumes = {}
    for cone in fan.maximal_cones:
        if len(cone) != rank:
            return FanReport(False, "simpliciality", witness=cone)
        vol = _cell_volume(config, cone)
        if vol == 0:
            return FanReport(False, "simpliciality", witness=cone)
        volumes[cone] = vol
    halfspaces = {cone: _cone_halfspaces(config, cone)
                  for cone in fan.maximal_cones}
    for cone_a, cone_b in itertools.combinations(fan.maximal_cones, 2):
        if not _proper_intersection(config, cone_a, cone_b,
                                    halfspaces[cone_a], halfspaces[cone_b]):
            return FanReport(False, "pairwise-intersection",
                             witness=(cone_a, cone_b))
    total = sum(volumes.values())
    reference = configuration_volume(config)
    if total != reference:
        return FanReport(False, "support-volume", witness=(total, reference),
                         level_volume=total, reference_volume=reference)
    walls = fan_walls(fan)
    normals = _boundary_normals(pair)
    for wall, cones in sorted(walls.items()):
        if len(cones) == 1 and not _wall_on_boundary(config, wall, normals):
            return FanReport(False, "unmatched-wall", witness=wall,
                             level_volume=total, reference_volume=reference)
        if len(cones) > 2:
            return FanReport(False, "overused-wall", witness=wall,
                             level_volume=total, reference_volume=reference)
    heights = regularity_certificate(fan)
    if heights is None:
        return FanReport(False, "regularity", witness=None,
                         level_volume=total, reference_volume=reference)
    return FanReport(True, heights=tuple(heights), level_volume=total,
                     reference_volume=reference,
                     common_ray_indices=fan.common_ray_indices())


# ---------------------------------------------------------------------------
# central fans


@dataclass(frozen=True)
class CentralSearchResult:
    """Outcome of the exhaustive centrality search.

    status is "found" (fan attached), "none" (exhaustion finished: no fan
    whose maximal cones all contain the required rays exists), or
    "inconclusive" (budget ran out first).
    """

    status: str
    fan: SimplicialFan | None
    nodes: int
    budget: int


def _required_indices(pair: ReflexivePair, dec: Decomposition):
    config = tuple(kdual1_points(pair))
    index_of = {p: i for i, p in enumerate(config)}
    return config, tuple(sorted(index_of[v] for v in dec.s + dec.t))


def _heuristic_central_fan(pair, dec, config, required):
    """Preimage construction: triangulate the projected configuration.

    The span of the decomposition parts is projected away; cells of a
    regular triangulation downstairs pull back to candidate maximal cones
    upstairs by re-attaching the required rays.
    """
    proj = free_quotient_projection([list(config[i]) for i in required],
                                    pair.ambient_rank)
    images: dict[Vector, int] = {}
    order = []
    for i, p in enumerate(config):
        if i in required:
            continue
        image = project_with(proj, p)
        if all(x == 0 for x in image):
            continue
        if image not in images:
            images[image] = i
            order.append(image)
    if not order:
        return None
    quotient_rank = len(order[0])
    if rational_rank([list(v) for v in order]) != quotient_rank:
        return None
    try:
        downstairs = regular_triangulation(tuple(order), [0] * len(order))
    except GeometryError:
        return None
    cones = []
    for cell in downstairs.maximal_cones:
        lifted = tuple(sorted(set(required) | {images[order[j]] for j in cell}))
        if len(lifted) != pair.ambient_rank:
            return None
        cones.append(lifted)
    return SimplicialFan(config, tuple(cones))


def _candidate_central_cones(pair, config, required):
    """All simplicial full-rank cones through the required rays whose
    walls dropping a required ray lie on the boundary of the dual cone.

    A wall missing a required ray can never be shared with another cone
    that also contains every required ray, so inside any central fan such
    walls must be boundary walls; cones violating that are unusable.
    """
    rank = pair.ambient_rank
    normals = _boundary_normals(pair)
    free = [i for i in range(len(config)) if i not in required]
    req_set = set(required)
    out = []
    for extra in itertools.combinations(free, rank - len(required)):
        cone = tuple(sorted(req_set | set(extra)))
        vol = _cell_volume(config, cone) if len(cone) == rank else 0
        if vol == 0:
            continue
        ok = True
        for drop in required:
            wall = tuple(i for i in cone if i != drop)
            if not _wall_on_boundary(config, wall, normals):
                ok = False
                break
        if ok:
            out.append((cone, vol))
    return out


def _interiors_overlap(config, cone_a, cone_b) -> bool:
    na, nb = len(cone_a), len(cone_b)
    rank = len(config[0])
    eqs = []
    for i in range(rank):
        row = [Fraction(config[j][i]) for j in cone_a]
        row += [-Fraction(config[j][i]) for j in cone_b]
        eqs.append((row, Fraction(0)))
    ineqs = []
    for pos in range(na + nb):
        row = [Fraction(0)] * (na + nb)
        row[pos] = Fraction(1)
        ineqs.append((row, Fraction(1)))
    return lp.feasible_system(na + nb, inequalities=ineqs, equalities=eqs) is not None


def central_fan_search(pair: ReflexivePair, dec: Decomposition,
                       budget: int = 10 ** 6) -> CentralSearchResult:
    """Exhaustive search for a fan whose maximal cones all contain s and t.

    Backtracking over wall-matched collections of candidate cones seeded at
    a generic interior point; every complete collection is volume-checked
    and certified before being accepted.
    """
    config, required = _required_indices(pair, dec)
    candidates = _candidate_central_cones(pair, config, required)
    reference = configuration_volume(config)
    normals = _boundary_normals(pair)
    rank = pair.ambient_rank
    # deterministic generic interior point: weighted sum of all points
    witness = tuple(sum((i * i + 1) * p[j] for i, p in enumerate(config))
                    for j in range(rank))
    seeds = [(cone, vol) for cone, vol in candidates
             if lp.in_cone_hull(witness, [config[i] for i in cone])]
    nodes = 0
    visited: set[frozenset] = set()

    def frontier_walls(chosen):
        counts: dict[tuple[int, ...], int] = {}
        for cone in chosen:
            for drop in cone:
                if drop in required:
                    continue
                wall = tuple(i for i in cone if i != drop)
                counts[wall] = counts.get(wall, 0) + 1
        open_walls = []
        for wall, count in counts.items():
            if count > 2:
                return None
            if count == 1 and not _wall_on_boundary(config, wall, normals):
                open_walls.append(wall)
        return sorted(open_walls)

    def other_side(wall, cone, candidate):
        apex = next(i for i in cone if i not in wall)
        cap = next(i for i in candidate if i not in wall)
        # functional vanishing on the wall separates the two apex points
        kernel = nullspace_rational([list(config[i]) for i in wall])
        if len(kernel) != 1:
            return False
        nu = kernel[0]
        return vdot(config[apex], nu) * vdot(config[cap], nu) < 0

    def search(chosen, vol_used):
        nonlocal nodes
        key = frozenset(chosen)
        if key in visited:
            return None
        visited.add(key)
        nodes += 1
        if nodes > budget:
            raise _BudgetExceeded
        walls = frontier_walls(chosen)
        if walls is None:
            return None
        if not walls:
            if vol_used != reference:
                return None
            fan = SimplicialFan(config, tuple(sorted(chosen)))
            if verify_fan(fan, pair).ok:
                return fan
            return None
        wall = walls[0]
        holder = next(c for c in chosen if set(wall) <= set(c))
        for cone, vol in candidates:
            if cone in chosen or not set(wall) <= set(cone):
                continue
            if vol_used + vol > reference:
                continue
            if not other_side(wall, holder, cone):
                continue
            if any(_interiors_overlap(config, cone, c) for c in chosen):
                continue
            found = search(chosen | {cone}, vol_used + vol)
            if found is not None:
                return found
        return None

    try:
        for cone, vol in seeds:
            fan = search(frozenset([cone]), vol)
            if fan is not None:
                return CentralSearchResult("found", fan, nodes, budget)
    except _BudgetExceeded:
        return CentralSearchResult("inconclusive", None, nodes, budget)
    return CentralSearchResult("none", None, nodes, budget)


class _BudgetExceeded(Exception):
    pass


def find_central_fan(pair: ReflexivePair, dec: Decomposition,
                     budget: int = 10 ** 6):
    """A verified fan whose maximal cones contain all parts of dec, if any.

    The projection heuristic is tried first; the exhaustive search covers
    the cases it misses.  None means no fan was found, which is conclusive
    only if central_fan_search reports exhaustion.
    """
    config, required = _required_indices(pair, dec)
    fan = _heuristic_central_fan(pair, dec, config, required)
    if fan is not None:
        report = verify_fan(fan, pair)
        if report.ok and set(required) <= set(fan.common_ray_indices()):
            return fan
    result = central_fan_search(pair, dec, budget)
    return result.fan


def certify_no_central_fan(pair: ReflexivePair, dec: Decomposition,
                           budget: int = 10 ** 6) -> CentralSearchResult:
    """Run the exhaustive search to completion if the budget allows.

    status "none" is a certificate that no central fan exists for this
    decomposition; "found" disproves non-existence; "inconclusive" means
    the budget was exhausted first and nothing is claimed.
    """
    return central_fan_search(pair, dec, budget)


# ---------------------------------------------------------------------------
# interpolation walks


class DegenerateWalk(Exception):
    """Simultaneous distinct flips that perturbation failed to separate."""


def _walk_constraints(fan_cells, points, h_minus, h_plus):
    """Fold and slack values at both endpoints, with their circuit sets."""
    fan = SimplicialFan(points, tuple(fan_cells))
    out = []
    for wall, cones in sorted(fan_walls(fan).items()):
        if len(cones) != 2:
            if len(cones) > 2:
                raise DegenerateWalk(f"wall {wall} shared by {len(cones)} cones")
            continue
        weights = _wall_fold(fan, wall, cones[0], cones[1])
        if weights is None:
            raise DegenerateWalk(f"wall {wall} carries no clean fold")
        z = tuple(sorted(set(cones[0]) | set(cones[1])))
        f_minus = sum(w * h_minus[i] for i, w in weights.items())
        f_plus = sum(w * h_plus[i] for i, w in weights.items())
        out.append((f_minus, f_plus, z))
    used = fan.used_indices()
    for idx in range(len(points)):
        if idx in used:
            continue
        host = None
        coords = None
        for cone in fan.maximal_cones:
            c = _coordinates_in_cell(points, cone, idx)
            if c is not None and all(x >= 0 for x in c):
                host, coords = cone, c
                break
        if host is None:
            raise DegenerateWalk(f"unused point {idx} is outside every cell")
        z = tuple(sorted(set(host) | {idx}))
        f_minus = h_minus[idx] - sum(l * h_minus[j] for j, l in zip(host, coords))
        f_plus = h_plus[idx] - sum(l * h_plus[j] for j, l in zip(host, coords))
        out.append((f_minus, f_plus, z))
    return out


def _normalized_support(points, z):
    """Primitive relation on z keyed by support index, sign-canonical."""
    rel = _relation_on(points, z)
    if rel is None:
        return None
    items = tuple((i, w) for i, w in zip(z, rel) if w != 0)
    if items and items[0][1] < 0:
        items = tuple((i, -w) for i, w in items)
    return items


def _circuit_flip(cells, points, z):
    """Bistellar flip across the circuit supported on z.

    Zero-coefficient indices of z are link points, not circuit members, so
    the whole star of the circuit flips in one event; walls that share a
    degenerate relation (collinear configurations) are crossed together.
    """
    items = _normalized_support(points, z)
    if items is None:
        raise DegenerateWalk(f"no unique relation on {z}")
    weights = dict(items)
    support = set(weights)
    pos = frozenset(i for i, w in weights.items() if w > 0)
    neg = frozenset(i for i, w in weights.items() if w < 0)
    star = {}
    for cell in cells:
        missing = support - set(cell)
        if len(missing) == 1:
            link = tuple(sorted(set(cell) - support))
            star.setdefault(link, set()).add(missing.pop())
    sides = set(map(frozenset, star.values()))
    if star and sides == {pos}:
        pass
    elif star and sides == {neg}:
        weights = {i: -w for i, w in weights.items()}
        pos, neg = neg, pos
    else:
        raise DegenerateWalk(f"circuit on {z} does not match the current cells")
    removed = {tuple(sorted((support - {i}) | set(link)))
               for link in star for i in pos}
    added = {tuple(sorted((support - {j}) | set(link)))
             for link in star for j in neg}
    if added & cells:
        raise DegenerateWalk(f"star of the circuit on {z} is incomplete")
    new_cells = (cells - removed) | added
    circuit = Circuit(
        point_config=tuple(points),
        positive=tuple((i, weights[i]) for i in sorted(weights) if weights[i] > 0),
        negative=tuple((i, weights[i]) for i in sorted(weights) if weights[i] < 0),
    )
    return new_cells, circuit


def _walk_once(points, cells_from, cells_to, h_minus, h_plus, pair):
    cells = set(cells_from)
    target = set(cells_to)
    t = Fraction(0)
    circuits = []
    guard = 0
    while True:
        guard += 1
        if guard > 10000:
            raise DegenerateWalk("walk did not terminate")
        constraints = _walk_constraints(cells, points, h_minus, h_plus)
        best = None
        for f_minus, f_plus, z in constraints:
            value_now = f_minus + t * (f_plus - f_minus)
            if value_now < 0:
                raise DegenerateWalk("constraint already violated")
            slope = f_plus - f_minus
            if slope >= 0:
                continue
            root = f_minus / (f_minus - f_plus)
            if root <= t or root > 1:
                if root == t and value_now == 0:
                    raise DegenerateWalk("stalled event")
                continue
            if best is None or root < best[0]:
                best = (root, {z})
            elif root == best[0]:
                best[1].add(z)
        if best is None:
            break
        root, zs = best
        supports = {_normalized_support(points, z) for z in zs}
        if len(supports) != 1 or None in supports:
            raise DegenerateWalk(f"simultaneous circuits at t={root}: {sorted(zs)}")
        cells, circuit = _circuit_flip(cells, points, next(iter(zs)))
        if pair is not None and circuit_mu(circuit, pair) != 0:
            raise AssertionError("flip circuit has nonzero weight sum")
        circuits.append(circuit)
        t = root
    if cells != target:
        raise DegenerateWalk("walk finished on a different triangulation")
    return circuits


def interpolate_fans(f_plus: SimplicialFan, f_minus: SimplicialFan,
                     pair: ReflexivePair | None = None):
    """Circuits of the elementary flips linking two regular fans.

    Straight-line interpolation between certified lifts of the two fans;
    events are crossed one at a time.  Simultaneous events are separated by
    perturbing the target lift within its certificate margin, which cannot
    change either endpoint triangulation.
    """
    if tuple(f_plus.point_config) != tuple(f_minus.point_config):
        raise ValueError("fans live on different point configurations")
    points = tuple(f_minus.point_config)
    base_minus = regularity_certificate(f_minus)
    base_plus = regularity_certificate(f_plus)
    if base_minus is None or base_plus is None:
        raise GeometryError("both fans must be regular to interpolate")
    for attempt in range(9):
        if attempt == 0:
            h_plus = list(base_plus)
        else:
            # jiggle the target heights inside the unit certificate margin;
            # fresh noise each attempt, always applied to the pristine lift
            salt = 0x9E3779B97F4A7C15 * attempt
            noise = [((salt * (i + 1)) >> 17) % 1001 - 500
                     for i in range(len(points))]
            bound = _max_noise_fold(f_plus, noise)
            delta = Fraction(1, 2 * (1 + bound))
            h_plus = [h + delta * n for h, n in zip(base_plus, noise)]
        try:
            return _walk_once(points, f_minus.maximal_cones,
                              f_plus.maximal_cones, list(base_minus), h_plus,
                              pair)
        except DegenerateWalk:
            if attempt == 8:
                raise
    raise DegenerateWalk("walk stayed degenerate after perturbation attempts")


def _max_noise_fold(fan, noise):
    """Largest absolute fold or slack the noise vector can produce."""
    rows = _regularity_constraints(fan)
    worst = 0
    for row, _ in rows or []:
        value = abs(sum(r * n for r, n in zip(row, noise)))
        worst = max(worst, int(value) + 1)
    return worst
