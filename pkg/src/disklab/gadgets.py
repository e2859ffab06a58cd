"""Disk-instance synthesis for the three reductions.

Layout happens in floating point (direction vectors, serpentine waypoints,
arclength walks), then every center is snapped to a fine rational grid and
all structural claims are re-established by exact arithmetic: chains must
induce simple paths, rings simple cycles, and cross-structure contacts must
match an explicit allow-list.  A failed check raises
:class:`SynthesisError`; no instance leaves this module unverified.

Scale conventions.  Drawings live on the integer grid; disk radii come from
the parameter schedule, which makes structures tiny relative to grid edges
in sound mode and chunky in toy mode.  Sound walls serpentine inside their
half-corridor to spend exactly the uniform per-edge disk budget; toy walls
pick the budget so a straight chain works.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from .arrangements import DiskInstance, UnitDiskGraph, unit_disk_graph
from .geometry import (
    Disk,
    ParamSet,
    Point,
    ceil_frac,
    compute_params,
    dist_sq,
    pi_bounds,
)
from .graphs import PlanarEmbeddedGraph, StructureError, SubdivisionInstance, Vertex
from .gridembed import GridEmbedding, locate_face

Tag = Tuple


class SynthesisError(ValueError):
    """A synthesized instance failed its exact post-verification."""


# ---------------------------------------------------------------------------
# snapping
# ---------------------------------------------------------------------------

class Snapper:
    """Rounds layout floats onto the grid of multiples of 1/M, with M fine
    enough (denominator of r times 2**34) that snapping moves points by far
    less than any structural margin."""

    def __init__(self, r: Fraction):
        self.M = r.denominator * (1 << 34)

    def snap(self, x: float) -> Fraction:
        return Fraction(round(Fraction(x) * self.M), self.M)

    def snap_point(self, p: Tuple[float, float]) -> Point:
        return (self.snap(p[0]), self.snap(p[1]))


def _unit(dx: float, dy: float) -> Tuple[float, float]:
    n = math.hypot(dx, dy)
    if n == 0:
        raise SynthesisError("zero-length direction")
    return dx / n, dy / n


def _walk_polyline(waypoints: Sequence[Tuple[float, float]], count: int) -> List[Tuple[float, float]]:
    """``count`` points at uniform arclength along a polyline, endpoints
    included."""
    if count < 2:
        raise SynthesisError("chains need at least two disks")
    lengths = []
    for (x0, y0), (x1, y1) in zip(waypoints, waypoints[1:]):
        lengths.append(math.hypot(x1 - x0, y1 - y0))
    total = sum(lengths)
    if total <= 0:
        raise SynthesisError("degenerate polyline")
    step = total / (count - 1)
    out = [waypoints[0]]
    seg = 0
    walked = 0.0
    for k in range(1, count - 1):
        target = k * step
        while walked + lengths[seg] < target:
            walked += lengths[seg]
            seg += 1
        t = (target - walked) / lengths[seg]
        (x0, y0), (x1, y1) = waypoints[seg], waypoints[seg + 1]
        out.append((x0 + t * (x1 - x0), y0 + t * (y1 - y0)))
    out.append(waypoints[-1])
    return out


# ---------------------------------------------------------------------------
# structural verification
# ---------------------------------------------------------------------------

@dataclass
class StructureSpec:
    """What the intersection graph of a synthesized instance must look like:
    named chains (paths) and rings (cycles) over disk indices, plus an
    allow-list for contacts between different structures."""

    chains: Dict[Tag, List[int]] = field(default_factory=dict)
    rings: Dict[Tag, List[int]] = field(default_factory=dict)
    # (struct_a, struct_b) -> (min_contacts, max_contacts); missing = forbidden
    allowed_contacts: Dict[Tuple[Tag, Tag], Tuple[int, int]] = field(default_factory=dict)


@dataclass
class ContactReport:
    ok: bool
    violations: List[str]
    contact_counts: Dict[Tuple[Tag, Tag], int]


def check_structure(instance: DiskInstance, spec: StructureSpec) -> ContactReport:
    """Exact check of intra-structure shape and cross-structure contacts."""
    centers = instance.centers()
    udg = unit_disk_graph(centers, instance.radius)
    owner: Dict[int, Tag] = {}
    index_in: Dict[int, int] = {}
    for tag, ids in {**spec.chains, **spec.rings}.items():
        for pos, i in enumerate(ids):
            if i in owner:
                return ContactReport(False, [f"disk {i} owned by two structures"], {})
            owner[i] = tag
            index_in[i] = pos
    violations: List[str] = []
    for i in range(udg.n):
        if i not in owner:
            violations.append(f"disk {i} belongs to no declared structure")
    cross: Dict[Tuple[Tag, Tag], int] = {}
    for (i, j) in udg.edges:
        ti, tj = owner.get(i), owner.get(j)
        if ti is None or tj is None:
            continue
        if ti == tj:
            gap = abs(index_in[i] - index_in[j])
            size = len(spec.chains.get(ti) or spec.rings[ti])
            is_ring = ti in spec.rings
            if is_ring:
                gap = min(gap, size - gap)
            if gap != 1:
                violations.append(
                    f"structure {ti}: disks {i} and {j} touch at index gap {gap}"
                )
        else:
            key = (ti, tj) if (ti, tj) in spec.allowed_contacts else (tj, ti)
            if key not in spec.allowed_contacts:
                violations.append(f"forbidden contact between {ti} and {tj}")
            else:
                cross[key] = cross.get(key, 0) + 1
    four_r2 = 4 * instance.radius ** 2
    for tag, ids in spec.chains.items():
        need = len(ids) - 1
        have = sum(
            1 for a, b in zip(ids, ids[1:])
            if dist_sq(centers[a], centers[b]) <= four_r2
        )
        if have != need:
            violations.append(f"chain {tag}: only {have}/{need} consecutive contacts")
    for tag, ids in spec.rings.items():
        if len(ids) >= 2:
            cyc = ids + ids[:1]
            have = sum(
                1 for a, b in zip(cyc, cyc[1:])
                if dist_sq(centers[a], centers[b]) <= four_r2
            )
            if have != len(ids):
                violations.append(f"ring {tag}: broken cycle")
    for key, (lo, hi) in spec.allowed_contacts.items():
        got = cross.get(key, 0)
        if not (lo <= got <= hi):
            violations.append(
                f"contact {key[0]} ~ {key[1]}: {got} intersecting pairs, wanted [{lo}, {hi}]"
            )
    return ContactReport(ok=not violations, violations=violations, contact_counts=cross)


# ---------------------------------------------------------------------------
# walls and vertex structures
# ---------------------------------------------------------------------------

@dataclass
class WallPlan:
    centers: List[Tuple[float, float]]
    spacing_over_r: float


def _sound_wall_plan(
    ax: float, ay: float, bx: float, by: float, p: ParamSet
) -> WallPlan:
    """Disk centers for one wall in sound mode.

    The chain starts and ends at distance s+r from the endpoints on the
    segment axis (ring contact), runs straight within distance s+a of either
    endpoint (incident corridors may be angularly close there), and spends
    any surplus budget on a square-wave detour of amplitude below the
    half-corridor h/2 in the middle zone.
    """
    r, s, a, h = float(p.r), float(p.s), float(p.a), float(p.h)
    c = p.c_edge
    L = math.hypot(bx - ax, by - ay)
    ux, uy = _unit(bx - ax, by - ay)
    vx, vy = -uy, ux
    sr = s + r
    straight = L - 2 * sr
    if straight <= 0:
        raise SynthesisError("edge too short for its vertex clearances")
    sigma_lo, sigma_hi = 1.45 * r, 1.95 * r
    sigma0 = straight / (c - 1)

    def to_world(pts_uv):
        return [(ax + u * ux + v * vx, ay + u * uy + v * vy) for (u, v) in pts_uv]

    if sigma_lo <= sigma0 <= 2 * r * (1 - 2.0 ** -16):
        pts = _walk_polyline(to_world([(sr, 0.0), (L - sr, 0.0)]), c)
        return WallPlan(pts, sigma0 / r)
    if sigma0 > 2 * r * (1 - 2.0 ** -16):
        raise SynthesisError("edge longer than the disk budget allows")

    amp = h / 2 - 1.2 * r
    lam = 2.2 * r
    m0, m1 = s + a, L - (s + a)
    if amp <= 0 or m1 - m0 <= 3 * lam:
        raise SynthesisError("no room for a detour on this edge")
    k_max = int((m1 - m0) / lam) - 1
    k_target = round(((c - 1) * 1.7 * r - straight) / (2 * amp)) + 1
    k = max(2, min(k_max, k_target))
    sigma = (straight + 2 * amp * (k - 1)) / (c - 1)
    if not (sigma_lo <= sigma <= sigma_hi):
        raise SynthesisError(
            f"no admissible spacing: sigma/r={sigma / r:.3f} with {k} detour legs"
        )
    gap = (m1 - m0) / (k + 1)
    uv = [(sr, 0.0), (m0, 0.0)]
    level = 0.0
    for i in range(1, k + 1):
        pi = m0 + i * gap
        nxt = amp if level <= 0 else -amp
        if i == k:
            nxt = 0.0
        uv.append((pi, level))
        uv.append((pi, nxt))
        level = nxt
    uv.append((m1, 0.0))
    uv.append((L - sr, 0.0))
    pts = _walk_polyline(to_world(uv), c)
    return WallPlan(pts, sigma / r)


def _toy_wall_plan(ax, ay, bx, by, p: ParamSet, attach: float) -> WallPlan:
    r = float(p.r)
    c = p.c_edge
    L = math.hypot(bx - ax, by - ay)
    ux, uy = _unit(bx - ax, by - ay)
    straight = L - 2 * attach * r
    if straight <= 0:
        raise SynthesisError("edge too short for toy attachments")
    sigma = straight / (c - 1)
    if not (1.02 * r <= sigma <= 1.95 * r):
        raise SynthesisError(
            f"toy spacing sigma/r={sigma / r:.3f} outside (1.02, 1.95); "
            "adjust the per-edge disk budget"
        )
    start = (ax + attach * r * ux, ay + attach * r * uy)
    end = (bx - attach * r * ux, by - attach * r * uy)
    pts = _walk_polyline([start, end], c)
    return WallPlan(pts, sigma / r)


def toy_edge_budget(emb: GridEmbedding, p: ParamSet, cap: int = 10, attach: float = 1.8) -> int:
    """Smallest uniform per-edge disk count (at most ``cap``) whose straight
    chains have admissible spacing on every drawn edge, or raise."""
    r = float(p.r)
    lengths = []
    for (u, w) in emb.graph.edges:
        (ax, ay), (bx, by) = emb.coords[u], emb.coords[w]
        lengths.append(math.hypot(bx - ax, by - ay) - 2 * attach * r)
    for c in range(3, cap + 1):
        if all(1.05 * r <= L / (c - 1) <= 1.93 * r for L in lengths):
            return c
    raise SynthesisError(
        f"no uniform per-edge count up to {cap} fits every edge of this drawing"
    )


def _ring_centers(cx: float, cy: float, s: float, count: int, phase: float) -> List[Tuple[float, float]]:
    return [
        (cx + s * math.cos(phase + 2 * math.pi * j / count),
         cy + s * math.sin(phase + 2 * math.pi * j / count))
        for j in range(count)
    ]


# ---------------------------------------------------------------------------
# isolation instances
# ---------------------------------------------------------------------------

@dataclass
class IsolationArtifacts:
    instance: DiskInstance
    spec: StructureSpec
    wall_ids: Dict[int, List[int]]        # edge id -> disk ids in chain order
    vertex_ids: Dict[Vertex, List[int]]   # vertex -> ring/anchor disk ids
    report: ContactReport


def _place_face_points(
    emb: GridEmbedding,
    terminals: Dict[str, int],
    centers: Sequence[Point],
    r: Fraction,
) -> Dict[str, Point]:
    """A marked point per terminal face, strictly inside the face and at
    exact distance > 5r/4 from every disk center."""
    g = emb.graph
    need2 = (r + Fraction(r, 4)) ** 2
    fcs = [(float(x), float(y)) for (x, y) in centers]
    rf = float(r)
    points: Dict[str, Point] = {}
    for pid, face in terminals.items():
        found = None
        walk = g.facial_walks()[face]
        candidates: List[Point] = []
        for d in walk:
            t = emb.coords[g.dart_tail(d)]
            hh = emb.coords[g.dart_head(d)]
            mx, my = Fraction(t[0] + hh[0], 2), Fraction(t[1] + hh[1], 2)
            nx_, ny_ = -(hh[1] - t[1]), (hh[0] - t[0])
            scale = max(abs(nx_), abs(ny_))
            for kappa in (Fraction(1, 3), Fraction(1, 4), Fraction(1, 2), Fraction(1, 6),
                          Fraction(1, 8), Fraction(1, 12), Fraction(1, 16), Fraction(1, 24)):
                candidates.append((mx + Fraction(nx_, scale) * kappa,
                                   my + Fraction(ny_, scale) * kappa))
        if not walk:
            v = g.vertices[0]
            candidates.append((Fraction(emb.coords[v][0] + 1), Fraction(emb.coords[v][1])))
        for cand in candidates:
            cx, cy = float(cand[0]), float(cand[1])
            close = [
                i for i, (fx, fy) in enumerate(fcs)
                if (fx - cx) ** 2 + (fy - cy) ** 2 < (2.0 * rf) ** 2
            ]
            if any(dist_sq(centers[i], cand) <= need2 for i in close):
                continue
            try:
                if locate_face(g, emb.coords, cand) != face:
                    continue
            except Exception:
                continue
            found = cand
            break
        if found is None:
            raise SynthesisError(f"no clear marked point for face {face}")
        points[pid] = found
    return points


def build_isolation_instance(
    sub: SubdivisionInstance,
    emb: GridEmbedding,
    params: Optional[ParamSet] = None,
    mode: str = "sound",
) -> IsolationArtifacts:
    """Compile a drawn subdivision instance into disks.

    Every edge becomes a wall of exactly ``c_edge`` disks; every vertex a
    ring (sound) or a single anchor disk (toy).  Marked points land inside
    their faces.  The result is exactly verified: walls are simple paths,
    rings simple cycles, wall ends touch exactly their endpoint's vertex
    structure 1-3 times, and nothing else intersects — except, in toy mode,
    end-of-wall pairs meeting at a shared vertex, which the counting
    argument tolerates because entire walls still stand or fall as units.
    """
    sub.validate()
    if set(sub.graph.vertices) != set(emb.graph.vertices) or \
            [tuple(e) for e in sub.graph.edges] != [tuple(e) for e in emb.graph.edges]:
        raise SynthesisError("drawing does not match the instance graph")
    g = emb.graph
    if params is None:
        params = compute_params(emb.grid_size, mode=mode)
    p = params
    total_edge_disks = p.c_edge * len(g.edges)
    if total_edge_disks > 2_000_000:
        raise SynthesisError(
            f"instance would need {total_edge_disks} wall disks; refusing"
        )
    snapper = Snapper(p.r)
    disks: List[Disk] = []
    wall_ids: Dict[int, List[int]] = {}
    vertex_ids: Dict[Vertex, List[int]] = {}
    spec = StructureSpec()
    coords_f = {v: (float(x), float(y)) for v, (x, y) in emb.coords.items()}

    toy_attach = 1.8
    if p.mode == "toy":
        for v in g.vertices:
            i = len(disks)
            x, y = emb.coords[v]
            disks.append(Disk(Fraction(x), Fraction(y), ("anchor", str(v))))
            vertex_ids[v] = [i]
            spec.chains[("anchor", str(v))] = [i]
    else:
        for v in g.vertices:
            phase_try = (0.0, math.pi / p.c_vertex, math.pi / (2 * p.c_vertex))
            placed = None
            for phase in phase_try:
                ring = _ring_centers(*coords_f[v], float(p.s), p.c_vertex, phase)
                snapped = [snapper.snap_point(c) for c in ring]
                if _ring_is_cycle(snapped, p.r):
                    placed = snapped
                    break
            if placed is None:
                raise SynthesisError(f"vertex ring at {v!r} failed to close")
            ids = []
            for j, c in enumerate(placed):
                ids.append(len(disks))
                disks.append(Disk(c[0], c[1], ("ring", str(v), j)))
            vertex_ids[v] = ids
            spec.rings[("ring", str(v))] = ids

    for eid, (u, w) in enumerate(g.edges):
        (ax, ay), (bx, by) = coords_f[u], coords_f[w]
        if p.mode == "toy":
            plan = _toy_wall_plan(ax, ay, bx, by, p, toy_attach)
        else:
            plan = _sound_wall_plan(ax, ay, bx, by, p)
        ids = []
        for j, c in enumerate(plan.centers):
            sc = snapper.snap_point(c)
            ids.append(len(disks))
            disks.append(Disk(sc[0], sc[1], ("wall", eid, j)))
        wall_ids[eid] = ids
        wt = ("wall", eid)
        spec.chains[wt] = ids
        ukey = ("anchor", str(u)) if p.mode == "toy" else ("ring", str(u))
        wkey = ("anchor", str(w)) if p.mode == "toy" else ("ring", str(w))
        spec.allowed_contacts[(wt, ukey)] = (1, 3)
        spec.allowed_contacts[(wt, wkey)] = (1, 3)

    if p.mode == "toy":
        # walls meeting at a shared endpoint may brush near the anchor
        by_vertex: Dict[Vertex, List[int]] = {}
        for eid, (u, w) in enumerate(g.edges):
            by_vertex.setdefault(u, []).append(eid)
            by_vertex.setdefault(w, []).append(eid)
        for v, eids in by_vertex.items():
            for i in range(len(eids)):
                for j in range(i + 1, len(eids)):
                    key = (("wall", eids[i]), ("wall", eids[j]))
                    spec.allowed_contacts[key] = (0, 4)

    centers = [(d.x, d.y) for d in disks]
    points = _place_face_points(emb, sub.terminals, centers, p.r)
    vertex_disk_total = sum(len(v) for v in vertex_ids.values())
    inst = DiskInstance(
        radius=p.r,
        disks=disks,
        points=points,
        params=p,
        meta={
            "kind": "isolation",
            "c_edge": p.c_edge,
            "vertex_disk_total": vertex_disk_total,
            "groups": sub.groups,
            "terminal_faces": dict(sub.terminals),
        },
    )
    inst.validate()
    report = check_structure(inst, spec)
    if not report.ok:
        raise SynthesisError(
            "isolation instance failed verification:\n  " + "\n  ".join(report.violations[:12])
        )
    if vertex_disk_total >= p.c_edge:
        raise SynthesisError(
            f"vertex structures use {vertex_disk_total} disks, which reaches the "
            f"per-wall budget {p.c_edge} and breaks the size law"
        )
    return IsolationArtifacts(
        instance=inst, spec=spec, wall_ids=wall_ids, vertex_ids=vertex_ids, report=report
    )


def _ring_is_cycle(centers: Sequence[Point], r: Fraction) -> bool:
    n = len(centers)
    if n < 3:
        return False
    four_r2 = 4 * r * r
    for i in range(n):
        for j in range(i + 1, n):
            gap = min(j - i, n - (j - i))
            touching = dist_sq(centers[i], centers[j]) <= four_r2
            if touching != (gap == 1):
                return False
    return True


def isolation_budget(artifacts_meta: Dict[str, object], kept_edges: int) -> int:
    """The certificate budget that admits ``kept_edges`` full walls plus all
    vertex structures."""
    return int(artifacts_meta["c_edge"]) * kept_edges + int(artifacts_meta["vertex_disk_total"])


def lift_fence_to_edges(instance: DiskInstance, chosen_ids: Iterable[int]) -> List[int]:
    """Edges whose wall appears in full among the chosen disks.

    Partial walls leak, so discarding them never loses separation power; a
    fence of size k therefore lifts to at most floor(k / c_edge) edges.
    """
    c_edge = int(instance.meta["c_edge"])
    per_edge: Dict[int, int] = {}
    for i in set(int(x) for x in chosen_ids):
        tag = instance.disks[i].tag
        if tag and tag[0] == "wall":
            per_edge[tag[1]] = per_edge.get(tag[1], 0) + 1
    return sorted(e for e, cnt in per_edge.items() if cnt == c_edge)


# ---------------------------------------------------------------------------
# acyclicity instances (vertex-deletion cycle breaking)
# ---------------------------------------------------------------------------

@dataclass
class AccArtifacts:
    instance: DiskInstance
    hub_of_vertex: Dict[Vertex, int]
    spec: StructureSpec
    cycle_rank: int


def build_acc_instance(
    vertices: Sequence[Vertex],
    edges: Sequence[Tuple[Vertex, Vertex]],
    coords: Dict[Vertex, Tuple[int, int]],
    r: Fraction = Fraction(1, 10),
) -> AccArtifacts:
    """Hub disk per vertex, chain of disks per edge along its drawn segment.

    Deleting disks to kill every bounded complement region then matches
    deleting vertices to kill every cycle: chain deletions are dominated by
    deleting an endpoint hub.  The builder verifies that the initial number
    of holes equals the graph's cycle rank, so no accidental contact has
    added or filled anything.
    """
    snapper = Snapper(r)
    rf = float(r)
    disks: List[Disk] = []
    spec = StructureSpec()
    hub_of_vertex: Dict[Vertex, int] = {}
    for v in vertices:
        hub_of_vertex[v] = len(disks)
        x, y = coords[v]
        disks.append(Disk(Fraction(x), Fraction(y), ("hub", str(v))))
        spec.chains[("hub", str(v))] = [hub_of_vertex[v]]
    for eid, (u, w) in enumerate(edges):
        if u == w:
            raise SynthesisError("loops are not drawable as chains")
        (ax, ay), (bx, by) = coords[u], coords[w]
        L = math.hypot(bx - ax, by - ay)
        ux, uy = _unit(bx - ax, by - ay)
        attach = 1.5 * rf
        inner = L - 2 * attach
        if inner <= 0:
            raise SynthesisError(f"edge {eid} too short for hub clearance")
        m = max(2, math.ceil(inner / (1.8 * rf)) + 1)
        sigma = inner / (m - 1)
        if not (1.02 * rf < sigma <= 1.95 * rf):
            m += 1
            sigma = inner / (m - 1)
            if not (1.02 * rf < sigma <= 1.95 * rf):
                raise SynthesisError(f"edge {eid}: no admissible chain spacing")
        pts = _walk_polyline(
            [(ax + attach * ux, ay + attach * uy), (bx - attach * ux, by - attach * uy)], m
        )
        ids = []
        for j, c in enumerate(pts):
            sc = snapper.snap_point(c)
            ids.append(len(disks))
            disks.append(Disk(sc[0], sc[1], ("conn", eid, j)))
        tag = ("conn", eid)
        spec.chains[tag] = ids
        spec.allowed_contacts[(tag, ("hub", str(u)))] = (1, 1)
        spec.allowed_contacts[(tag, ("hub", str(w)))] = (1, 1)
    by_vertex: Dict[Vertex, List[int]] = {}
    for eid, (u, w) in enumerate(edges):
        by_vertex.setdefault(u, []).append(eid)
        by_vertex.setdefault(w, []).append(eid)
    for v, eids in by_vertex.items():
        for i in range(len(eids)):
            for j in range(i + 1, len(eids)):
                spec.allowed_contacts[(("conn", eids[i]), ("conn", eids[j]))] = (0, 1)

    inst = DiskInstance(
        radius=r,
        disks=disks,
        params=None,
        meta={"kind": "acc", "hubs": {str(v): i for v, i in hub_of_vertex.items()}},
    )
    report = check_structure(inst, spec)
    if not report.ok:
        raise SynthesisError(
            "acyclicity instance failed verification:\n  " + "\n  ".join(report.violations[:12])
        )
    # the union must have exactly one hole per independent cycle
    from .arrangements import complement_regions

    comp_labels: Dict[Vertex, Vertex] = {v: v for v in vertices}

    def find(x):
        while comp_labels[x] != x:
            comp_labels[x] = comp_labels[comp_labels[x]]
            x = comp_labels[x]
        return x

    for (u, w) in edges:
        ru, rw = find(u), find(w)
        if ru != rw:
            comp_labels[ru] = rw
    n_comp = len({find(v) for v in vertices})
    cycle_rank = len(edges) - len(vertices) + n_comp
    regions = complement_regions(inst.centers(), r)
    if regions.bounded_complement_regions != cycle_rank or \
            regions.union_components != n_comp:
        raise SynthesisError(
            f"drawn topology mismatch: {regions} vs cycle rank {cycle_rank}, "
            f"{n_comp} component(s)"
        )
    return AccArtifacts(
        instance=inst, hub_of_vertex=hub_of_vertex, spec=spec, cycle_rank=cycle_rank
    )


def lift_vertex_set_to_acc(art: AccArtifacts, fvs: Iterable[Vertex]) -> List[int]:
    return sorted(art.hub_of_vertex[v] for v in fvs)


# ---------------------------------------------------------------------------
# weighted multiterminal cut instances
# ---------------------------------------------------------------------------

@dataclass
class CutArtifacts:
    instance: DiskInstance
    terminal_of_vertex: Dict[Vertex, int]
    lane_ids: Dict[Tuple[int, int], List[int]]  # (edge id, copy) -> chain disk ids


def build_weighted_edge_instance(
    weight: int,
    span: float = 4.0,
    r: Fraction = Fraction(1, 10),
) -> CutArtifacts:
    """Two terminal disks joined by ``weight`` disjoint disk lanes.

    Weights become multiplicities: cutting the terminals apart requires one
    deletion per lane, and lanes only meet near the terminals where a
    deletion never helps (any surviving lane still reaches both ends), so
    the minimum cut is exactly the weight.
    """
    if weight < 1:
        raise SynthesisError("weight must be at least 1")
    rf = float(r)
    snapper = Snapper(r)
    disks: List[Disk] = [
        Disk(Fraction(0), Fraction(0), ("terminal", "u")),
        Disk(snapper.snap(span), Fraction(0), ("terminal", "v")),
    ]
    spec = StructureSpec()
    spec.chains[("terminal", "u")] = [0]
    spec.chains[("terminal", "v")] = [1]
    lane_ids: Dict[Tuple[int, int], List[int]] = {}
    lane_pitch = 2.4 * rf
    bend = max(6 * rf, lane_pitch * weight / 1.5)
    if span < 2 * bend + 4 * rf:
        raise SynthesisError(
            f"span {span} too short to fan {weight} lanes; need > {2 * bend + 4 * rf:.2f}"
        )
    for j in range(weight):
        y = (j - (weight - 1) / 2.0) * lane_pitch
        ang = math.atan2(y, bend)
        sx, sy = 1.8 * rf * math.cos(ang), 1.8 * rf * math.sin(ang)
        way = [
            (sx, sy),
            (bend, y),
            (span - bend, y),
            (span - sx, sy),
        ]
        length = sum(
            math.hypot(x1 - x0, y1 - y0) for (x0, y0), (x1, y1) in zip(way, way[1:])
        )
        m = max(2, math.ceil(length / (1.7 * rf)) + 1)
        pts = _walk_polyline(way, m)
        ids = []
        for k, c in enumerate(pts):
            sc = snapper.snap_point(c)
            ids.append(len(disks))
            disks.append(Disk(sc[0], sc[1], ("lane", 0, j, k)))
        lane_ids[(0, j)] = ids
        tag = ("lane", 0, j)
        spec.chains[tag] = ids
        spec.allowed_contacts[(tag, ("terminal", "u"))] = (1, 1)
        spec.allowed_contacts[(tag, ("terminal", "v"))] = (1, 1)
    # lanes may brush inside the end fans; extra contacts there never lower the
    # cut (a surviving lane still reaches both terminals on its own).  The
    # middle-zone disjointness that makes the cut *achievable* is checked
    # positionally below.
    for j in range(weight):
        for j2 in range(j + 1, weight):
            spec.allowed_contacts[(("lane", 0, j), ("lane", 0, j2))] = (0, 10**9)
    inst = DiskInstance(
        radius=r,
        disks=disks,
        meta={"kind": "udmc", "terminal_disks": [0, 1], "weight": weight},
    )
    report = check_structure(inst, spec)
    if not report.ok:
        raise SynthesisError(
            "cut instance failed verification:\n  " + "\n  ".join(report.violations[:12])
        )
    # each lane alone must connect the terminals, and in the middle zone
    # (between the fans) lanes must be pairwise disjoint so that deleting one
    # mid-lane disk per lane really disconnects the ends
    centers = inst.centers()
    udg = unit_disk_graph(centers, r)
    adj = [set(a) for a in udg.adj]
    for (eid, j), ids in lane_ids.items():
        if not (0 in adj[ids[0]] and 1 in adj[ids[-1]]):
            raise SynthesisError(f"lane {j} fails to reach both terminals")
    mid_lo = Fraction(snapper.snap(bend + 2 * rf))
    mid_hi = Fraction(snapper.snap(span - bend - 2 * rf))
    lane_of = {i: tag[2] for i, d in enumerate(disks) if (tag := d.tag)[0] == "lane"}
    for (i, j) in udg.edges:
        li, lj = lane_of.get(i), lane_of.get(j)
        if li is None or lj is None or li == lj:
            continue
        if mid_lo <= centers[i][0] <= mid_hi and mid_lo <= centers[j][0] <= mid_hi:
            raise SynthesisError(
                f"lanes {li} and {lj} touch in the middle zone; cut size would drift"
            )
    return CutArtifacts(
        instance=inst, terminal_of_vertex={"u": 0, "v": 1}, lane_ids=lane_ids
    )


def perturb_copy(p: Tuple[float, float], j: int, r: Fraction) -> Tuple[float, float]:
    """Tiny deterministic distinct offset for the j-th coincident copy."""
    rf = float(r)
    return (
        p[0] + j * rf / 1000.0,
        p[1] + ((j * j) % 1000) * rf / 1_000_000.0,
    )


# ---------------------------------------------------------------------------
# full unit-disk multiterminal instances: bundles at vertices, lanes on edges
# ---------------------------------------------------------------------------

BUNDLE_COPIES = 16


@dataclass
class UdmcArtifacts:
    instance: DiskInstance
    spec: StructureSpec
    hub_of_vertex: Dict[Vertex, int]
    sigma_ids: Dict[Vertex, List[int]]             # all ring-copy disk ids
    lane_ids: Dict[Tuple[int, int], List[int]]     # (edge id, lane) -> chain ids
    lane_cut_edge: Dict[Tuple[int, int], Tuple[int, int]]
    report: ContactReport


def _gap_midangle(angles: Sequence[float]) -> float:
    """Midpoint of the widest angular gap between the given directions."""
    if not angles:
        return 0.0
    a = sorted(x % (2 * math.pi) for x in angles)
    best = -1.0
    where = a[0]
    for i, x in enumerate(a):
        nxt = a[(i + 1) % len(a)] + (2 * math.pi if i + 1 == len(a) else 0.0)
        if nxt - x > best:
            best = nxt - x
            where = (x + nxt) / 2.0
    return where % (2 * math.pi)


def build_udmc_instance(
    mti,
    emb: GridEmbedding,
    r: Fraction = Fraction(1, 10),
    scale: int = 4,
    copies: int = BUNDLE_COPIES,
) -> UdmcArtifacts:
    """Compile a weighted terminal-separation graph into unit disks.

    Every vertex becomes a bundle: ``copies`` perturbed copies of a ring of
    disks around the vertex plus ``copies`` perturbed two-disk connector
    chains joining a central hub disk to the ring.  Every edge of weight w
    becomes w disk lanes that leave the ring, fan out to a fixed pitch, run
    parallel through a middle zone where they are pairwise disjoint, and fan
    back into the far ring.  The hub of each terminal vertex is that
    terminal's disk.

    The point of the shape: the hub touches exactly ``copies`` disks, so no
    intersection-edge cut cheaper than ``copies`` ever enters a bundle,
    while severing an edge costs exactly its weight (one cut per lane in the
    middle zone).  Weights above 5 would break the accounting against
    degree-3 bundles (3 * 5 < 16) and are refused, as are degrees above 3.

    Everything is gated by exact verification; drawings whose incident edges
    leave too little angular room are rejected rather than approximated.
    """
    mti.validate()
    g = mti.graph
    if set(g.vertices) != set(emb.graph.vertices) or \
            [tuple(e) for e in g.edges] != [tuple(e) for e in emb.graph.edges]:
        raise SynthesisError("drawing does not match the instance graph")
    seen_pairs: Set[Tuple[Vertex, Vertex]] = set()
    degree: Dict[Vertex, int] = {v: 0 for v in g.vertices}
    for eid, (u, v) in enumerate(g.edges):
        if u == v:
            raise SynthesisError("loops cannot be synthesized")
        key = (u, v) if str(u) <= str(v) else (v, u)
        if key in seen_pairs:
            raise SynthesisError("parallel edges cannot be synthesized")
        seen_pairs.add(key)
        degree[u] += 1
        degree[v] += 1
        w = mti.weights.get(eid, 1)
        if not (1 <= w <= 5):
            raise SynthesisError(f"edge weight {w} outside the supported range 1..5")
    for v, d in degree.items():
        if d > 3:
            raise SynthesisError(f"vertex {v!r} has degree {d}; at most 3 supported")
    if copies < 2:
        raise SynthesisError("bundles need at least two copies")
    if copies <= 3 * 5:
        # still buildable, but the cut accounting that makes solutions
        # liftable needs copies > max_degree * max_weight
        if copies < 16:
            raise SynthesisError("fewer than 16 copies breaks the cut accounting")

    rf = float(r)
    snapper = Snapper(r)
    pos = {v: (float(x) * scale, float(y) * scale) for v, (x, y) in emb.coords.items()}
    ring_r = 5.0 * rf
    lane_start = 6.0 * rf
    pitch = 2.4 * rf
    pi_hi = pi_bounds()[1]
    m = ceil_frac(Fraction(5) * pi_hi)   # ring positions per copy

    disks: List[Disk] = []
    spec = StructureSpec()
    hub_of_vertex: Dict[Vertex, int] = {}
    sigma_ids: Dict[Vertex, List[int]] = {}
    sigma_tags: Dict[Vertex, List[Tag]] = {}
    incident_angles: Dict[Vertex, List[float]] = {v: [] for v in g.vertices}
    for (u, v) in g.edges:
        (ax, ay), (bx, by) = pos[u], pos[v]
        incident_angles[u].append(math.atan2(by - ay, bx - ax))
        incident_angles[v].append(math.atan2(ay - by, ax - bx))

    for v in g.vertices:
        cx, cy = pos[v]
        hub_id = len(disks)
        hub_tag: Tag = ("hub", str(v))
        sc = snapper.snap_point((cx, cy))
        disks.append(Disk(sc[0], sc[1], hub_tag))
        spec.chains[hub_tag] = [hub_id]
        hub_of_vertex[v] = hub_id
        sigma_ids[v] = []
        sigma_tags[v] = []
        spur_ang = _gap_midangle(incident_angles[v])
        sdx, sdy = math.cos(spur_ang), math.sin(spur_ang)
        gamma_tags: List[Tag] = []
        for j in range(copies):
            ring_tag: Tag = ("sigma", str(v), j)
            ids = []
            for p_idx in range(m):
                ang = 2 * math.pi * p_idx / m
                base = (cx + ring_r * math.cos(ang), cy + ring_r * math.sin(ang))
                q = snapper.snap_point(perturb_copy(base, j, r))
                ids.append(len(disks))
                disks.append(Disk(q[0], q[1], ring_tag + (p_idx,)))
            spec.rings[ring_tag] = ids
            sigma_ids[v].extend(ids)
            sigma_tags[v].append(ring_tag)
            spur_tag: Tag = ("gamma", str(v), j)
            ids = []
            for rad in (1.5 * rf, 3.3 * rf):
                base = (cx + rad * sdx, cy + rad * sdy)
                q = snapper.snap_point(perturb_copy(base, j, r))
                ids.append(len(disks))
                disks.append(Disk(q[0], q[1], spur_tag + (len(ids),)))
            spec.chains[spur_tag] = ids
            gamma_tags.append(spur_tag)
            spec.allowed_contacts[(spur_tag, hub_tag)] = (1, 1)
        for j in range(copies):
            for k in range(j + 1, copies):
                spec.allowed_contacts[(sigma_tags[v][j], sigma_tags[v][k])] = (3 * m, 3 * m)
                spec.allowed_contacts[(gamma_tags[j], gamma_tags[k])] = (4, 4)
            for k in range(copies):
                spec.allowed_contacts[(gamma_tags[j], sigma_tags[v][k])] = (1, 2)

    lane_ids: Dict[Tuple[int, int], List[int]] = {}
    lane_window: Dict[int, Tuple[float, float, Tuple[float, float], Tuple[float, float]]] = {}
    for eid, (u, v) in enumerate(g.edges):
        (ax, ay), (bx, by) = pos[u], pos[v]
        L = math.hypot(bx - ax, by - ay)
        ux, uy = _unit(bx - ax, by - ay)
        vx, vy = -uy, ux
        theta = math.atan2(uy, ux)
        w = mti.weights.get(eid, 1)
        bend = lane_start + max(6 * rf, pitch * w / 1.5)
        if L + 1e-9 < 2 * bend + 12 * rf:
            raise SynthesisError(
                f"edge {eid} is too short ({L / rf:.1f}r) for {w} lanes; "
                f"needs {2 * bend / rf + 12:.1f}r"
            )
        lane_window[eid] = (bend + 2 * rf, L - bend - 2 * rf, (ax, ay), (ux, uy))
        for i in range(w):
            delta = (i - (w - 1) / 2.0) * (math.pi / 60.0)
            off = (i - (w - 1) / 2.0) * pitch
            way = [
                (ax + lane_start * math.cos(theta + delta),
                 ay + lane_start * math.sin(theta + delta)),
                (ax + bend * ux + off * vx, ay + bend * uy + off * vy),
                (bx - bend * ux + off * vx, by - bend * uy + off * vy),
                (bx - lane_start * math.cos(theta - delta),
                 by - lane_start * math.sin(theta - delta)),
            ]
            length = sum(math.hypot(x1 - x0, y1 - y0)
                         for (x0, y0), (x1, y1) in zip(way, way[1:]))
            count = max(2, math.ceil(length / (1.7 * rf)) + 1)
            pts = _walk_polyline(way, count)
            ids = []
            lane_tag: Tag = ("lane", eid, i)
            for k, c in enumerate(pts):
                q = snapper.snap_point(c)
                ids.append(len(disks))
                disks.append(Disk(q[0], q[1], lane_tag + (k,)))
            spec.chains[lane_tag] = ids
            lane_ids[(eid, i)] = ids
            for end_v in (u, v):
                for ring_tag in sigma_tags[end_v]:
                    spec.allowed_contacts[(lane_tag, ring_tag)] = (1, 2)
            for i2 in range(i):
                spec.allowed_contacts[(("lane", eid, i2), lane_tag)] = (0, 10**9)

    inst = DiskInstance(
        radius=r,
        disks=disks,
        meta={
            "kind": "udmc",
            "terminal_disks": [hub_of_vertex[t] for t in mti.terminals],
            "weights": {str(eid): mti.weights.get(eid, 1) for eid in range(len(g.edges))},
            "copies": copies,
            "scale": scale,
        },
    )
    report = check_structure(inst, spec)
    if not report.ok:
        raise SynthesisError(
            "bundle instance failed verification:\n  "
            + "\n  ".join(report.violations[:12])
        )

    centers = inst.centers()
    udg = unit_disk_graph(centers, r)
    adj = [set(a) for a in udg.adj]
    for v in g.vertices:
        if len(adj[hub_of_vertex[v]]) != copies:
            raise SynthesisError(
                f"hub of {v!r} touches {len(adj[hub_of_vertex[v]])} disks, "
                f"wanted exactly {copies}"
            )

    lane_cut_edge: Dict[Tuple[int, int], Tuple[int, int]] = {}
    for eid, (u, v) in enumerate(g.edges):
        lo, hi, (ax, ay), (ux, uy) = lane_window[eid]
        mid: Dict[int, int] = {}     # disk id -> lane, for mid-zone disks
        for (e2, i), ids in lane_ids.items():
            if e2 != eid:
                continue
            proj = [
                (float(centers[d][0]) - ax) * ux + (float(centers[d][1]) - ay) * uy
                for d in ids
            ]
            inside = [k for k, t in enumerate(proj) if lo <= t <= hi]
            for k in inside:
                mid[ids[k]] = i
            # the cut pair: consecutive chain disks nearest the window center
            target = (lo + hi) / 2.0
            best_k = min(
                (k for k in inside if k + 1 in inside),
                key=lambda k: abs((proj[k] + proj[k + 1]) / 2.0 - target),
                default=None,
            )
            if best_k is None:
                raise SynthesisError(f"lane {i} of edge {eid} has no cuttable stretch")
            if min(proj[best_k], proj[best_k + 1]) - lo < 2 * rf or \
                    hi - max(proj[best_k], proj[best_k + 1]) < 2 * rf:
                raise SynthesisError(f"lane {i} of edge {eid}: cut pair too close to the fans")
            lane_cut_edge[(eid, i)] = (ids[best_k], ids[best_k + 1])
        for d1 in mid:
            for d2 in adj[d1]:
                if d2 in mid and mid[d2] != mid[d1]:
                    raise SynthesisError(
                        f"edge {eid}: lanes {mid[d1]} and {mid[d2]} touch in the middle zone"
                    )
        # every lane must enter both rings on its own
        sig_u, sig_v = set(sigma_ids[u]), set(sigma_ids[v])
        for (e2, i), ids in lane_ids.items():
            if e2 != eid:
                continue
            if not (adj[ids[0]] & sig_u) or not (adj[ids[-1]] & sig_v):
                raise SynthesisError(f"lane {i} of edge {eid} misses a ring")

    return UdmcArtifacts(
        instance=inst,
        spec=spec,
        hub_of_vertex=hub_of_vertex,
        sigma_ids=sigma_ids,
        lane_ids=lane_ids,
        lane_cut_edge=lane_cut_edge,
        report=report,
    )


def lift_multiterminal_to_udmc(
    art: UdmcArtifacts, cut_edge_ids: Iterable[int]
) -> List[Tuple[int, int]]:
    """Intersection-graph edges realizing a source edge cut: one middle-zone
    chain contact per lane of every cut edge."""
    out = []
    for eid in sorted(set(int(e) for e in cut_edge_ids)):
        lanes = [key for key in art.lane_cut_edge if key[0] == eid]
        if not lanes:
            raise SynthesisError(f"unknown edge id {eid}")
        for key in sorted(lanes):
            a, b = art.lane_cut_edge[key]
            out.append((min(a, b), max(a, b)))
    return sorted(out)
