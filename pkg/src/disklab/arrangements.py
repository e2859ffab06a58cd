"""Exact analysis of unit-disk collections: intersection graphs, complement
topology, and certificate verification.

Everything here treats disks as closed (touching counts as intersecting) and
runs in exact rational arithmetic.  The two load-bearing facts, both for
equal radii:

* The segment between centers of two intersecting disks lies inside their
  union, and the triangle spanned by three disks with a common point is
  covered by those disks (midpoint/bisector argument).  Convex hulls of
  center sets with a common point are covered likewise, so the affine
  "shadow" of the intersection complex lives inside the union and carries
  its homotopy type.
* Two uncovered points p, q lie in different connected components of the
  complement of the union exactly when some cycle of the center graph has
  odd crossing parity with a path from p to q.  Crossing parity with a fixed
  closed curve is invariant under path choice, vanishes on boundaries of
  covered triangles (no uncovered point sits inside one), and the resulting
  pairing between union cycles and complement components is perfect, so a
  spanning-forest parity sweep decides separation exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .geometry import (
    Disk,
    ParamSet,
    Point,
    dist_sq,
    point_on_segment,
    rational_from_str,
    rational_to_str,
    segment_intersection_point,
    segments_cross_properly,
    triple_intersection_nonempty,
)


class VerificationError(ValueError):
    """Raised for malformed instances or certificates (as opposed to valid
    certificates that simply fail)."""


class DegenerateGeometry(Exception):
    """Internal: a probe path touched the structure it was testing."""


# ---------------------------------------------------------------------------
# instances
# ---------------------------------------------------------------------------

@dataclass
class DiskInstance:
    """A collection of equal closed disks plus marked points.

    ``meta`` carries problem-specific extras: ``kind`` (``isolation``,
    ``acc`` or ``udmc``), terminal disk ids for cut instances, and the
    intended budget when the instance ships with one.
    """

    radius: Fraction
    disks: List[Disk]
    points: Dict[str, Point] = field(default_factory=dict)
    params: Optional[ParamSet] = None
    meta: Dict[str, object] = field(default_factory=dict)

    def validate(self) -> None:
        if self.radius <= 0:
            raise VerificationError("radius must be positive")
        if len(self.points) != len(set(self.points.values())):
            raise VerificationError("marked points must be distinct")
        for t in self.meta.get("terminal_disks", []):
            if not (0 <= int(t) < len(self.disks)):
                raise VerificationError(f"terminal disk id {t} out of range")

    def centers(self) -> List[Point]:
        return [(d.x, d.y) for d in self.disks]

    def to_dict(self) -> Dict[str, object]:
        return {
            "radius": rational_to_str(self.radius),
            "disks": [
                {"c": [rational_to_str(d.x), rational_to_str(d.y)], "prov": list(d.tag)}
                for d in self.disks
            ],
            "points": {
                k: [rational_to_str(p[0]), rational_to_str(p[1])]
                for k, p in self.points.items()
            },
            "params": self.params.as_dict() if self.params is not None else None,
            "meta": self.meta,
        }

    @classmethod
    def from_dict(cls, d: Dict[str, object]) -> "DiskInstance":
        disks = [
            Disk(rational_from_str(e["c"][0]), rational_from_str(e["c"][1]),
                 tuple(e.get("prov", ())))
            for e in d["disks"]
        ]
        points = {
            str(k): (rational_from_str(v[0]), rational_from_str(v[1]))
            for k, v in dict(d.get("points", {})).items()
        }
        params = d.get("params")
        inst = cls(
            radius=rational_from_str(d["radius"]),
            disks=disks,
            points=points,
            params=ParamSet.from_dict(params) if params else None,
            meta=dict(d.get("meta", {})),
        )
        inst.validate()
        return inst


# ---------------------------------------------------------------------------
# intersection graph
# ---------------------------------------------------------------------------

@dataclass
class UnitDiskGraph:
    n: int
    edges: List[Tuple[int, int]]
    adj: List[List[int]]

    def degree(self, i: int) -> int:
        return len(self.adj[i])


def _integer_scaled(centers: Sequence[Point], r: Fraction):
    """Common-denominator integer coordinates and the scaled squared
    diameter, so all pair tests are big-int only."""
    den = r.denominator
    for (x, y) in centers:
        den = den * x.denominator // math.gcd(den, x.denominator)
        den = den * y.denominator // math.gcd(den, y.denominator)
    xs = [int(x * den) for x, _ in centers]
    ys = [int(y * den) for _, y in centers]
    two_r = 2 * r * den
    assert two_r.denominator == 1
    return xs, ys, int(two_r) ** 2, den


def unit_disk_graph(centers: Sequence[Point], r: Fraction) -> UnitDiskGraph:
    """Intersection graph of equal closed disks (tangency included), built
    with a uniform spatial hash so synthesized instances with hundreds of
    thousands of disks stay tractable."""
    n = len(centers)
    if n == 0:
        return UnitDiskGraph(0, [], [])
    xs, ys, four_r2, den = _integer_scaled(centers, r)
    cell = int(math.isqrt(four_r2)) + 1
    grid: Dict[Tuple[int, int], List[int]] = {}
    for i in range(n):
        grid.setdefault((xs[i] // cell, ys[i] // cell), []).append(i)
    edges: List[Tuple[int, int]] = []
    adj: List[List[int]] = [[] for _ in range(n)]
    for (cx, cy), bucket in grid.items():
        neighbors: List[int] = []
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                neighbors.extend(grid.get((cx + dx, cy + dy), ()))
        for i in bucket:
            xi, yi = xs[i], ys[i]
            for j in neighbors:
                if j <= i:
                    continue
                ddx = xi - xs[j]
                ddy = yi - ys[j]
                if ddx * ddx + ddy * ddy <= four_r2:
                    edges.append((i, j))
                    adj[i].append(j)
                    adj[j].append(i)
    edges.sort()
    for a in adj:
        a.sort()
    return UnitDiskGraph(n, edges, adj)


def udg_components(udg: UnitDiskGraph) -> List[int]:
    comp = [-1] * udg.n
    c = 0
    for s in range(udg.n):
        if comp[s] != -1:
            continue
        comp[s] = c
        stack = [s]
        while stack:
            v = stack.pop()
            for w in udg.adj[v]:
                if comp[w] == -1:
                    comp[w] = c
                    stack.append(w)
        c += 1
    return comp


def covering_disks(centers: Sequence[Point], r: Fraction, p: Point) -> List[int]:
    """Indices of disks containing ``p`` (closed)."""
    r2 = r * r
    return [i for i, c in enumerate(centers) if dist_sq(c, p) <= r2]


# ---------------------------------------------------------------------------
# complement topology via the intersection complex
# ---------------------------------------------------------------------------

@dataclass
class RegionSummary:
    union_components: int
    bounded_complement_regions: int   # first Betti number of the union
    nerve_edges: int
    nerve_triangles: int


def filled_triangles(
    centers: Sequence[Point], r: Fraction, udg: UnitDiskGraph
) -> List[Tuple[int, int, int]]:
    """Triples of pairwise-intersecting disks with a common point."""
    out = []
    adjset = [set(a) for a in udg.adj]
    for i, j in udg.edges:
        for k in sorted(adjset[i] & adjset[j]):
            if k > j:
                if triple_intersection_nonempty(centers[i], centers[j], centers[k], r):
                    out.append((i, j, k))
    return out


def _gf2_rank(masks: Iterable[int]) -> int:
    pivots: Dict[int, int] = {}
    for m in masks:
        while m:
            p = m.bit_length() - 1
            if p in pivots:
                m ^= pivots[p]
            else:
                pivots[p] = m
                break
    return len(pivots)


def complement_regions(centers: Sequence[Point], r: Fraction) -> RegionSummary:
    """Connected components of the union and the number of bounded holes in
    its complement, computed from the intersection complex: components come
    from the graph, holes from edges - vertices + components - rank of the
    filled-triangle boundary operator over GF(2)."""
    udg = unit_disk_graph(centers, r)
    comps = len(set(udg_components(udg))) if udg.n else 0
    tris = filled_triangles(centers, r, udg)
    eidx = {e: i for i, e in enumerate(udg.edges)}
    masks = []
    for (i, j, k) in tris:
        masks.append(
            (1 << eidx[(i, j)]) | (1 << eidx[(i, k)]) | (1 << eidx[(j, k)])
        )
    rank = _gf2_rank(masks)
    beta1 = len(udg.edges) - udg.n + comps - rank
    return RegionSummary(
        union_components=comps,
        bounded_complement_regions=beta1,
        nerve_edges=len(udg.edges),
        nerve_triangles=len(tris),
    )


# ---------------------------------------------------------------------------
# separation of points by a disk union
# ---------------------------------------------------------------------------

def _segment_crossing_parity(a: Point, b: Point, c: Point, d: Point) -> int:
    if segments_cross_properly(a, b, c, d):
        return 1
    for p, (u, v) in ((a, (c, d)), (b, (c, d)), (c, (a, b)), (d, (a, b))):
        if point_on_segment(p, u, v):
            raise DegenerateGeometry
    return 0


def _probe_paths(p: Point, q: Point, attempts: int):
    """Deterministic sequence of polyline paths from p to q: the straight
    segment first, then bent variants for degeneracy recovery.

    The bend point gets both a perpendicular and an axial offset so that no
    line fixed by the configuration (for instance a mirror axis between p
    and q that happens to carry a row of centers) can stay degenerate for
    every attempt.
    """
    yield [p, q]
    mx, my = (p[0] + q[0]) / 2, (p[1] + q[1]) / 2
    dx, dy = q[0] - p[0], q[1] - p[1]
    span = abs(dx) + abs(dy)
    if span == 0:
        span = Fraction(1)
    for k in range(1, attempts):
        t = span * Fraction((-1) ** k * (2 * k + 1), 3 * k * k + 7)
        u = span * Fraction(2 * k + 3, 7 * k * k + 11 * k + 13)
        yield [
            p,
            (mx + dx * u / span - dy * t / span, my + dy * u / span + dx * t / span),
            q,
        ]


@dataclass
class SeparationResult:
    separated: bool
    witness_cycle: Optional[List[int]] = None  # disk ids, consecutive ones intersect


def edge_crossing_parities(
    centers: Sequence[Point],
    udg: UnitDiskGraph,
    p: Point,
    q: Point,
    attempts: int = 48,
) -> Dict[Tuple[int, int], int]:
    """Crossing parity of every center-graph edge against one generic probe
    path from p to q.  Raises if all probe candidates hit a degeneracy."""
    for path in _probe_paths(p, q, attempts):
        pieces = list(zip(path, path[1:]))
        try:
            parity: Dict[Tuple[int, int], int] = {}
            for (i, j) in udg.edges:
                ci, cj = centers[i], centers[j]
                if ci == cj:
                    parity[(i, j)] = 0
                    continue
                x = 0
                for (a, b) in pieces:
                    x ^= _segment_crossing_parity(a, b, ci, cj)
                parity[(i, j)] = x
            return parity
        except DegenerateGeometry:
            continue
    raise VerificationError(
        "no generic probe path found between the query points"
    )


def separation(
    centers: Sequence[Point],
    r: Fraction,
    udg: UnitDiskGraph,
    p: Point,
    q: Point,
    attempts: int = 48,
) -> SeparationResult:
    """Decide whether the union separates ``p`` from ``q``.

    Labels every center-graph edge with its crossing parity against a probe
    path, then sweeps a spanning forest: an edge whose parity disagrees with
    the endpoint potentials closes an odd cycle, which is returned as the
    separating witness.
    """
    parity = edge_crossing_parities(centers, udg, p, q, attempts)
    pot = [-1] * udg.n
    parent: List[Optional[int]] = [None] * udg.n
    for s in range(udg.n):
        if pot[s] != -1:
            continue
        pot[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for w in udg.adj[v]:
                if pot[w] == -1:
                    key = (v, w) if v < w else (w, v)
                    pot[w] = pot[v] ^ parity[key]
                    parent[w] = v
                    stack.append(w)
    for (i, j), x in parity.items():
        if pot[i] ^ pot[j] != x:
            return SeparationResult(True, _tree_cycle(parent, i, j))
    return SeparationResult(False, None)


def _tree_cycle(parent: List[Optional[int]], i: int, j: int) -> List[int]:
    anc_i = []
    v: Optional[int] = i
    while v is not None:
        anc_i.append(v)
        v = parent[v]
    seen = {v: k for k, v in enumerate(anc_i)}
    path_j = []
    v = j
    while v not in seen:
        path_j.append(v)
        v = parent[v]
    meet = seen[v]
    return anc_i[: meet + 1] + list(reversed(path_j))


# ---------------------------------------------------------------------------
# certificate verifiers
# ---------------------------------------------------------------------------

@dataclass
class IsolationReport:
    ok: bool
    pair_results: Dict[Tuple[str, str], bool]
    witnesses: Dict[Tuple[str, str], List[int]]
    chosen: List[int]
    messages: List[str] = field(default_factory=list)

    def lines(self) -> List[str]:
        out = [f"chosen disks: {len(self.chosen)}"]
        for pair, sep in sorted(self.pair_results.items()):
            out.append(f"{'ok  ' if sep else 'FAIL'} {pair[0]} | {pair[1]} separated: {sep}")
        out.extend(self.messages)
        return out


def _check_ids(ids: Iterable[int], n: int, what: str) -> List[int]:
    out = sorted(set(int(i) for i in ids))
    if out and (out[0] < 0 or out[-1] >= n):
        raise VerificationError(f"{what} contains out-of-range disk ids")
    return out


def verify_isolation(
    instance: DiskInstance,
    chosen_ids: Iterable[int],
    budget: Optional[int] = None,
) -> IsolationReport:
    """Check that the chosen disks separate every pair of marked points.

    Malformed input (bad ids, covered marked points) raises
    :class:`VerificationError`; a well-formed certificate that fails to
    separate — or overshoots the budget — yields ``ok=False`` with reasons.
    """
    instance.validate()
    if len(instance.points) < 2:
        raise VerificationError("isolation needs at least two marked points")
    chosen = _check_ids(chosen_ids, len(instance.disks), "certificate")
    messages = []
    if budget is not None and len(chosen) > budget:
        messages.append(f"budget: certificate uses {len(chosen)} disks, cap {budget}")
    all_centers = instance.centers()
    for pid, p in instance.points.items():
        hit = covering_disks(all_centers, instance.radius, p)
        if hit:
            raise VerificationError(
                f"marked point {pid!r} is covered by disk {hit[0]}"
            )
    centers = [all_centers[i] for i in chosen]
    udg = unit_disk_graph(centers, instance.radius)
    ids = sorted(instance.points)
    pair_results: Dict[Tuple[str, str], bool] = {}
    witnesses: Dict[Tuple[str, str], List[int]] = {}
    for x in range(len(ids)):
        for y in range(x + 1, len(ids)):
            a, b = ids[x], ids[y]
            res = separation(
                centers, instance.radius, udg,
                instance.points[a], instance.points[b],
            )
            pair_results[(a, b)] = res.separated
            if res.witness_cycle is not None:
                witnesses[(a, b)] = [chosen[k] for k in res.witness_cycle]
    return IsolationReport(
        ok=all(pair_results.values()) and not messages,
        pair_results=pair_results,
        witnesses=witnesses,
        chosen=chosen,
        messages=messages,
    )


@dataclass
class AccReport:
    ok: bool
    removed: List[int]
    remaining_regions: RegionSummary
    reasons: List[str] = field(default_factory=list)

    def lines(self) -> List[str]:
        rs = self.remaining_regions
        return [
            f"removed disks: {len(self.removed)}",
            f"{'ok  ' if self.ok else 'FAIL'} remaining union has "
            f"{rs.bounded_complement_regions} bounded complement region(s)",
            *self.reasons,
        ]


def verify_acc(
    instance: DiskInstance,
    removed_ids: Iterable[int],
    budget: Optional[int] = None,
) -> AccReport:
    """Check that deleting the given disks leaves a union with no bounded
    complement region (an acyclic disk collection)."""
    instance.validate()
    removed = _check_ids(removed_ids, len(instance.disks), "certificate")
    reasons = []
    if budget is not None and len(removed) > budget:
        reasons.append(f"budget: certificate removes {len(removed)} disks, cap {budget}")
    removed_set = set(removed)
    centers = [c for i, c in enumerate(instance.centers()) if i not in removed_set]
    regions = complement_regions(centers, instance.radius)
    return AccReport(
        ok=regions.bounded_complement_regions == 0 and not reasons,
        removed=removed,
        remaining_regions=regions,
        reasons=reasons,
    )


@dataclass
class CutReport:
    ok: bool
    removed: List[Tuple[int, int]]
    terminal_components: Dict[int, int]
    reasons: List[str] = field(default_factory=list)

    def lines(self) -> List[str]:
        groups = len(set(self.terminal_components.values()))
        return [
            f"removed intersection edges: {len(self.removed)}",
            f"{'ok  ' if self.ok else 'FAIL'} {len(self.terminal_components)} "
            f"terminals in {groups} component(s)",
            *self.reasons,
        ]


def normalize_edge_list(pairs: Iterable) -> List[Tuple[int, int]]:
    """Canonical (min, max) pairs, deduplicated and sorted."""
    out = set()
    for p in pairs:
        seq = tuple(int(x) for x in p)
        if len(seq) != 2 or seq[0] == seq[1]:
            raise VerificationError(f"not an edge: {p!r}")
        out.add((min(seq), max(seq)))
    return sorted(out)


def verify_multiterminal_cut(
    instance: DiskInstance,
    removed_edges: Iterable,
    budget: Optional[int] = None,
) -> CutReport:
    """Check that deleting the given intersection-graph edges leaves all
    terminal disks in pairwise distinct components.

    ``removed_edges`` is a collection of disk-id pairs; each pair must name
    an actual edge of the instance's intersection graph (the problem deletes
    graph edges, never disks).  Over-budget certificates are rejected, not
    errored.
    """
    instance.validate()
    terminals = [int(t) for t in instance.meta.get("terminal_disks", [])]
    if len(terminals) < 2:
        raise VerificationError("cut instances need at least two terminal disks")
    removed = normalize_edge_list(removed_edges)
    udg = unit_disk_graph(instance.centers(), instance.radius)
    edge_set = {(min(i, j), max(i, j)) for i, j in udg.edges}
    for e in removed:
        if e not in edge_set:
            raise VerificationError(
                f"certificate removes {e}, which is not an intersection edge"
            )
    reasons = []
    if budget is not None and len(removed) > budget:
        reasons.append(f"budget: certificate removes {len(removed)} edges, cap {budget}")
    removed_set = set(removed)
    adj: Dict[int, List[int]] = {v: [] for v in range(udg.n)}
    for i, j in udg.edges:
        if (min(i, j), max(i, j)) not in removed_set:
            adj[i].append(j)
            adj[j].append(i)
    color: Dict[int, int] = {}
    for start in range(udg.n):
        if start in color:
            continue
        color[start] = start
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in color:
                    color[y] = start
                    stack.append(y)
    terminal_components = {t: color[t] for t in terminals}
    separated = len(set(terminal_components.values())) == len(terminals)
    if not separated:
        reasons.append("two terminal disks stay connected")
    return CutReport(
        ok=separated and not reasons,
        removed=removed,
        terminal_components=terminal_components,
        reasons=reasons,
    )


# ---------------------------------------------------------------------------
# segment arrangements
# ---------------------------------------------------------------------------

@dataclass
class ArrangementSummary:
    vertices: int
    edges: int
    faces: int       # including the unbounded face
    components: int


def build_segment_arrangement(
    segments: Sequence[Tuple[Point, Point]]
) -> ArrangementSummary:
    """Planarize a set of closed segments and count cells.

    Splits every segment at each point where another segment's endpoint,
    crossing, or collinear-overlap boundary touches it, dedupes the
    resulting unit pieces, and gets the face count from Euler's relation
    V - E + F = 1 + C.
    """
    segs = [(a, b) for a, b in segments if a != b]
    pts_on: List[Set[Point]] = [set((a, b)) for a, b in segs]
    for i in range(len(segs)):
        a, b = segs[i]
        for j in range(i + 1, len(segs)):
            c, d = segs[j]
            if segments_cross_properly(a, b, c, d):
                x = segment_intersection_point(a, b, c, d)
                pts_on[i].add(x)
                pts_on[j].add(x)
                continue
            for p in (c, d):
                if point_on_segment(p, a, b):
                    pts_on[i].add(p)
            for p in (a, b):
                if point_on_segment(p, c, d):
                    pts_on[j].add(p)
    vertices: Set[Point] = set()
    edge_set: Set[FrozenSet[Point]] = set()
    for (a, b), cuts in zip(segs, pts_on):
        ordered = sorted(cuts, key=lambda p: dist_sq(a, p))
        vertices.update(ordered)
        for u, v in zip(ordered, ordered[1:]):
            edge_set.add(frozenset((u, v)))
    # components over the vertex set
    parent: Dict[Point, Point] = {v: v for v in vertices}

    def find(x: Point) -> Point:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in edge_set:
        u, v = tuple(e)
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    comps = len({find(v) for v in vertices})
    V, E = len(vertices), len(edge_set)
    F = E - V + 1 + comps
    return ArrangementSummary(vertices=V, edges=E, faces=F, components=comps)
