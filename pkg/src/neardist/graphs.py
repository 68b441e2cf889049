"""Qualifying-pair graphs, complete-tripartite witnesses, and angle diagnostics.

The graph on a point set has an edge for every pair whose distance falls in
the interval family, labeled with the smallest qualifying interval index.
Witness extraction looks for a K(1, s, s): a hub vertex x and two disjoint
s-sets B, D with every x-B, x-D and B-D edge present. Homogenization refines a
witness to subsets on which each of the three edge classes carries a single
label. Both searches are explicit and deterministic; they are meant for desk
scale (roughly s <= 4 and n <= 500) and degrade to exponential enumeration
beyond that.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from itertools import combinations

from .counting import label_pairs
from .geometry import IntervalFamily, PointSet

__all__ = [
    "NearEqualGraph",
    "build_graph",
    "TripartiteWitness",
    "find_tripartite",
    "HomogeneousWitness",
    "homogenize",
    "TriangleCase",
    "classify_label_triple",
    "TriangleAngleBounds",
    "triangle_angle_bounds",
    "TriangleAngleReport",
    "angle_diagnostic",
]

# A triangle counts as degenerate when its area is below this fraction of the
# squared longest side.
_DEGENERATE_AREA_RATIO = 1e-9


class NearEqualGraph:
    """Graph of qualifying pairs with smallest-interval edge labels (1-based)."""

    __slots__ = ("n", "labels", "_adj")

    def __init__(self, n: int, labeled_edges: dict[tuple[int, int], int]):
        self.n = n
        self.labels: dict[tuple[int, int], int] = {}
        adj: list[set[int]] = [set() for _ in range(n)]
        for (i, j), l in labeled_edges.items():
            if not (0 <= i < n and 0 <= j < n and i != j):
                raise ValueError(f"edge ({i}, {j}) out of range for n={n}")
            a, b = (i, j) if i < j else (j, i)
            self.labels[(a, b)] = l
            adj[a].add(b)
            adj[b].add(a)
        self._adj = tuple(frozenset(s) for s in adj)

    @property
    def edges(self) -> set[tuple[int, int]]:
        return set(self.labels.keys())

    @property
    def edge_count(self) -> int:
        return len(self.labels)

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.labels

    def label(self, i: int, j: int) -> int:
        return self.labels[(min(i, j), max(i, j))]

    def neighbors(self, i: int) -> frozenset[int]:
        return self._adj[i]

    def __repr__(self) -> str:
        return f"NearEqualGraph(n={self.n}, edges={self.edge_count})"


def build_graph(ps: PointSet, iv: IntervalFamily) -> NearEqualGraph:
    """Build the qualifying-pair graph; edge count equals the pair count."""
    return NearEqualGraph(ps.n, {(i, j): l for i, j, l in label_pairs(ps, iv)})


@dataclass(frozen=True)
class TripartiteWitness:
    """A K(1, s, s) subgraph: hub x plus disjoint s-sets B and D.

    All edges x-b, x-d and b-d are present; edges inside B or D are not
    required.
    """

    x: int
    B: tuple[int, ...]
    D: tuple[int, ...]

    @property
    def s(self) -> int:
        return len(self.B)

    def to_dict(self) -> dict:
        return {"x": self.x, "B": list(self.B), "D": list(self.D)}


def _find_bipartite_in(
    adj: tuple[frozenset[int], ...], cand: list[int], s: int
) -> tuple[list[int], list[int]] | None:
    """Lexicographically least complete bipartite (B, D) with parts of size s
    inside the candidate list, where every B-D pair must be adjacent."""
    cand_set = set(cand)

    def extend(chosen: list[int], start: int, common: set[int]):
        if len(chosen) == s:
            avail = sorted(common.difference(chosen))
            if len(avail) >= s:
                return chosen, avail[:s]
            return None
        need = s - len(chosen)
        for idx in range(start, len(cand) - need + 1):
            v = cand[idx]
            new_common = common & adj[v]
            # D needs s vertices of the final common set outside B; the set
            # only shrinks as B grows, so this bound is safe to prune on.
            if len(new_common.difference(chosen, (v,))) < s:
                continue
            result = extend(chosen + [v], idx + 1, new_common)
            if result is not None:
                return result
        return None

    return extend([], 0, cand_set)


def find_tripartite(g: NearEqualGraph, s: int) -> TripartiteWitness | None:
    """Search for a K(1, s, s) witness; None when the graph contains none.

    Deterministic: returns the least witness under lexicographic order of
    (x, sorted B, sorted D). Exhaustive over hubs, branch and bound inside
    each hub's neighborhood.
    """
    if s < 1:
        raise ValueError(f"witness part size must be >= 1, got {s}")
    for x in range(g.n):
        nbrs = sorted(g.neighbors(x))
        if len(nbrs) < 2 * s:
            continue
        found = _find_bipartite_in(g._adj, nbrs, s)
        if found is not None:
            B, D = found
            return TripartiteWitness(x=x, B=tuple(B), D=tuple(D))
    return None


@dataclass(frozen=True)
class HomogeneousWitness:
    """A label-constant refinement of a tripartite witness.

    Every x-B2 edge carries label_xb, every x-D2 edge label_xd, and every
    B2-D2 edge label_bd.
    """

    base: TripartiteWitness
    B2: tuple[int, ...]
    D2: tuple[int, ...]
    label_xb: int
    label_xd: int
    label_bd: int

    @property
    def m(self) -> int:
        return len(self.B2)

    def to_dict(self) -> dict:
        d = self.base.to_dict()
        d.update(
            {
                "B2": list(self.B2),
                "D2": list(self.D2),
                "labels": {"x_b": self.label_xb, "x_d": self.label_xd, "b_d": self.label_bd},
            }
        )
        return d


def _largest_label_class(g: NearEqualGraph, x: int, members: tuple[int, ...]) -> tuple[int, list[int]]:
    """Partition members by their edge label to x; largest class wins, ties to
    the smaller label."""
    classes: dict[int, list[int]] = {}
    for v in members:
        classes.setdefault(g.label(x, v), []).append(v)
    label = min(classes, key=lambda l: (-len(classes[l]), l))
    return label, sorted(classes[label])


def homogenize(g: NearEqualGraph, w: TripartiteWitness, m: int) -> HomogeneousWitness | None:
    """Refine a witness to m-subsets with one label per edge class, or None.

    B is first restricted to its largest x-label class (ties to the smaller
    label), D likewise; the B-D class is then made constant by exhaustive
    search over m-subsets, returning the lexicographically least solution.
    """
    if not (1 <= m <= w.s):
        raise ValueError(f"m must lie in [1, s] = [1, {w.s}], got {m}")
    label_xb, b_pool = _largest_label_class(g, w.x, w.B)
    label_xd, d_pool = _largest_label_class(g, w.x, w.D)
    if len(b_pool) < m or len(d_pool) < m:
        return None
    for B2 in combinations(b_pool, m):
        for D2 in combinations(d_pool, m):
            labels = {g.label(y, z) for y in B2 for z in D2}
            if len(labels) == 1:
                return HomogeneousWitness(
                    base=w,
                    B2=B2,
                    D2=D2,
                    label_xb=label_xb,
                    label_xd=label_xd,
                    label_bd=labels.pop(),
                )
    return None


class TriangleCase(Enum):
    """Classification of a triangle's three edge labels after sorting.

    UNIQUE_MAX: the largest label is carried by exactly one side.
    TIED_MAX: the two largest labels coincide.
    """

    UNIQUE_MAX = "unique_max"
    TIED_MAX = "tied_max"


def classify_label_triple(l_a: int, l_b: int, l_c: int) -> TriangleCase:
    """Sort the three labels and report whether the maximum is unique.

    Total and invariant under permutations of the arguments.
    """
    l1, l2, l3 = sorted((l_a, l_b, l_c))
    return TriangleCase.UNIQUE_MAX if l2 < l3 else TriangleCase.TIED_MAX


@dataclass(frozen=True)
class TriangleAngleBounds:
    """Angle bounds implied by the near-sum margin delta.

    min_angle = 2 * arcsin(delta / (4 - 2*delta)) bounds the two smaller
    angles of a unique-max triangle from below; the largest angle stays below
    pi - max_angle_margin with max_angle_margin = 2 * min_angle. For small
    delta, min_angle behaves like delta / 2.
    """

    delta: float
    min_angle: float
    max_angle_margin: float

    @property
    def half_delta_residual(self) -> float:
        """min_angle - delta/2, the deviation from the small-delta equivalent."""
        return self.min_angle - self.delta / 2.0

    def to_dict(self) -> dict:
        return {
            "delta": self.delta,
            "min_angle": self.min_angle,
            "max_angle_margin": self.max_angle_margin,
        }


def triangle_angle_bounds(delta: float) -> TriangleAngleBounds:
    """Compute the angle bounds for a given delta in (0, 1)."""
    if not (0.0 < delta < 1.0):
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    min_angle = 2.0 * math.asin(delta / (4.0 - 2.0 * delta))
    return TriangleAngleBounds(
        delta=delta, min_angle=min_angle, max_angle_margin=2.0 * min_angle
    )


@dataclass(frozen=True)
class TriangleAngleReport:
    """Angle check of one unique-max triangle against the delta bounds.

    A diagnostic, not an assertion: the bounds are only guaranteed for
    sufficiently large distance values, so a violation is reported, never
    raised.
    """

    ids: tuple[int, int, int]
    side_lengths: tuple[float, float, float]
    labels: tuple[int, int, int]
    degenerate: bool
    angles: tuple[float, float, float] | None
    bounds: TriangleAngleBounds
    min_angle_ok: bool | None
    max_angle_ok: bool | None

    def to_dict(self) -> dict:
        return {
            "ids": list(self.ids),
            "side_lengths": list(self.side_lengths),
            "labels": list(self.labels),
            "degenerate": self.degenerate,
            "angles": None if self.angles is None else list(self.angles),
            "bounds": self.bounds.to_dict(),
            "min_angle_ok": self.min_angle_ok,
            "max_angle_ok": self.max_angle_ok,
        }


def angle_diagnostic(
    ps: PointSet, ids: tuple[int, int, int], iv: IntervalFamily, delta: float
) -> TriangleAngleReport:
    """Check a qualifying unique-max triangle's angles against the delta bounds.

    The three pairs must all qualify for some interval and their labels must
    classify as UNIQUE_MAX; otherwise ValueError. Collinear triangles are
    reported as degenerate with no angles.
    """
    i, j, k = ids
    if len({i, j, k}) != 3:
        raise ValueError(f"triangle ids must be distinct, got {ids}")
    coords = ps.coords
    pairs = ((i, j), (j, k), (k, i))
    sq = []
    labels = []
    for a, b in pairs:
        dx = float(coords[a, 0] - coords[b, 0])
        dy = float(coords[a, 1] - coords[b, 1])
        d2 = dx * dx + dy * dy
        label = iv.smallest_label(d2)
        if label is None:
            raise ValueError(f"pair ({a}, {b}) does not qualify for any interval")
        sq.append(d2)
        labels.append(label)
    case = classify_label_triple(*labels)
    if case is not TriangleCase.UNIQUE_MAX:
        raise ValueError(f"triangle labels {tuple(labels)} have a tied maximum")
    sides = tuple(math.sqrt(v) for v in sq)
    bounds = triangle_angle_bounds(delta)

    ax, ay = coords[i]
    bx, by = coords[j]
    cx, cy = coords[k]
    area = abs((bx - ax) * (cy - ay) - (cx - ax) * (by - ay)) / 2.0
    if area < _DEGENERATE_AREA_RATIO * max(sq):
        return TriangleAngleReport(
            ids=ids,
            side_lengths=sides,
            labels=tuple(labels),
            degenerate=True,
            angles=None,
            bounds=bounds,
            min_angle_ok=None,
            max_angle_ok=None,
        )

    # Law of cosines; angle at the vertex opposite each listed side.
    def angle(opp: float, s1: float, s2: float) -> float:
        c = (s1 * s1 + s2 * s2 - opp * opp) / (2.0 * s1 * s2)
        return math.acos(min(1.0, max(-1.0, c)))

    a_ij, a_jk, a_ki = sides
    angles = (angle(a_jk, a_ij, a_ki), angle(a_ki, a_ij, a_jk), angle(a_ij, a_jk, a_ki))
    return TriangleAngleReport(
        ids=ids,
        side_lengths=sides,
        labels=tuple(labels),
        degenerate=False,
        angles=angles,
        bounds=bounds,
        min_angle_ok=min(angles) >= bounds.min_angle,
        max_angle_ok=max(angles) <= math.pi - bounds.max_angle_margin,
    )
