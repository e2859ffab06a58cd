"""Straight-line drawings of embedded graphs on small integer grids.

The drawing pipeline has to respect the prescribed rotation system exactly —
downstream synthesis carves disk chains along the drawn segments and the
separation argument needs the drawn cyclic edge order at every vertex to be
the combinatorial one.  All drawing validity checks run in exact rational
arithmetic; floats appear only inside networkx's coordinate assignment,
whose integer output is then re-verified from scratch.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from .geometry import (
    Point,
    orient,
    point_on_segment,
    segments_cross_properly,
)
from .graphs import Dart, PlanarEmbeddedGraph, StructureError, Vertex, other_end

Coords = Dict[Vertex, Tuple[int, int]]


class DrawingError(ValueError):
    """A straight-line drawing violates planarity or the rotation system."""


# ---------------------------------------------------------------------------
# exact validity checks
# ---------------------------------------------------------------------------

def _as_point(xy: Tuple[int, int]) -> Point:
    return (Fraction(xy[0]), Fraction(xy[1]))


def _cw_angle_cmp(u: Tuple[int, int], v: Tuple[int, int]) -> int:
    """Total order on nonzero integer vectors by clockwise angle from the
    positive x axis (exact)."""
    def half(w):
        # 0 for the open upper half plane plus the positive x axis
        return 0 if (w[1] > 0 or (w[1] == 0 and w[0] > 0)) else 1

    hu, hv = half(u), half(v)
    if hu != hv:
        return -1 if hu < hv else 1
    cross = u[0] * v[1] - u[1] * v[0]
    if cross == 0:
        return 0
    # cross(u, v) < 0 means u sits ccw-later (larger angle), so u leads the
    # descending sweep within its half plane
    return -1 if cross < 0 else 1


def induced_rotation(g: PlanarEmbeddedGraph, coords: Coords) -> Dict[Vertex, List[Dart]]:
    """Clockwise dart order around each vertex as drawn.

    Raises :class:`DrawingError` when two darts at a vertex point the same
    way (the cyclic order would be ambiguous).
    """
    rot: Dict[Vertex, List[Dart]] = {}
    for v in g.vertices:
        vecs: List[Tuple[Tuple[int, int], Dart]] = []
        vx, vy = coords[v]
        for d in g.rot[v]:
            w = g.dart_head(d)
            wx, wy = coords[w]
            vec = (wx - vx, wy - vy)
            if vec == (0, 0):
                raise DrawingError(f"edge {d[0]} has zero length at {v!r}")
            vecs.append((vec, d))
        vecs.sort(key=functools.cmp_to_key(lambda a, b: _cw_angle_cmp(a[0], b[0])))
        for (u, du), (w, dw) in zip(vecs, vecs[1:]):
            if _cw_angle_cmp(u, w) == 0:
                raise DrawingError(
                    f"darts {du} and {dw} leave {v!r} in the same direction"
                )
        rot[v] = [d for _, d in vecs]
    return rot


def cyclic_equal(a: Sequence, b: Sequence) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    try:
        k = list(b).index(a[0])
    except ValueError:
        return False
    n = len(a)
    return all(a[i] == b[(k + i) % n] for i in range(n))


def rotation_equivalent(g: PlanarEmbeddedGraph, coords: Coords) -> bool:
    drawn = induced_rotation(g, coords)
    return all(cyclic_equal(list(g.rot[v]), drawn[v]) for v in g.vertices)


def check_drawing(g: PlanarEmbeddedGraph, coords: Coords) -> None:
    """Exact validity: integer coordinates, distinct vertices, no segment
    contacts except at shared endpoints, no vertex on a foreign edge, and the
    drawn rotation matches the combinatorial one.  Raises DrawingError."""
    if not g.is_simple():
        raise DrawingError("straight-line drawings require a simple graph")
    if set(coords) != set(g.vertices):
        raise DrawingError("coordinate map does not cover the vertex set")
    pts: Dict[Vertex, Point] = {}
    for v, xy in coords.items():
        if len(xy) != 2 or not all(isinstance(c, int) for c in xy):
            raise DrawingError(f"vertex {v!r} has non-integer coordinates {xy!r}")
        pts[v] = _as_point(xy)
    if len(set(pts.values())) != len(pts):
        raise DrawingError("two vertices share a grid point")

    segs = [(pts[u], pts[v], (u, v)) for u, v in g.edges]
    for i in range(len(segs)):
        a, b, (u1, v1) = segs[i]
        for j in range(i + 1, len(segs)):
            c, d, (u2, v2) = segs[j]
            shared = {u1, v1} & {u2, v2}
            if len(shared) == 1:
                if (point_on_segment(c, a, b) and c not in (a, b)) or \
                   (point_on_segment(d, a, b) and d not in (a, b)) or \
                   (point_on_segment(a, c, d) and a not in (c, d)) or \
                   (point_on_segment(b, c, d) and b not in (c, d)):
                    raise DrawingError(f"edges {i} and {j} overlap beyond their shared vertex")
            elif not shared:
                if segments_cross_properly(a, b, c, d) or \
                   point_on_segment(a, c, d) or point_on_segment(b, c, d) or \
                   point_on_segment(c, a, b) or point_on_segment(d, a, b):
                    raise DrawingError(f"edges {i} and {j} intersect")
    for w, p in pts.items():
        for eid, (u, v) in enumerate(g.edges):
            if w not in (u, v) and point_on_segment(p, pts[u], pts[v]):
                raise DrawingError(f"vertex {w!r} lies on edge {eid}")
    if not rotation_equivalent(g, coords):
        raise DrawingError("drawn rotation differs from the prescribed one")


def drawing_valid(g: PlanarEmbeddedGraph, coords: Coords) -> bool:
    try:
        check_drawing(g, coords)
        return True
    except DrawingError:
        return False


# ---------------------------------------------------------------------------
# face location in a drawing
# ---------------------------------------------------------------------------

def winding_number(walk_points: Sequence[Tuple[Point, Point]], p: Point) -> int:
    """Exact winding number of a closed polygonal walk around ``p``.

    ``walk_points`` is the list of directed segments.  ``p`` must avoid the
    walk itself.
    """
    w = 0
    for a, b in walk_points:
        if point_on_segment(p, a, b):
            raise DrawingError("query point lies on the walk")
        if a[1] <= p[1] < b[1] and orient(a, b, p) > 0:
            w += 1
        elif b[1] <= p[1] < a[1] and orient(a, b, p) < 0:
            w -= 1
    return w


def _walk_segments(g: PlanarEmbeddedGraph, coords: Coords, face: int):
    pts = {v: _as_point(coords[v]) for v in g.vertices}
    return [
        (pts[g.dart_tail(d)], pts[g.dart_head(d)])
        for d in g.facial_walks()[face]
    ]


def locate_face(g: PlanarEmbeddedGraph, coords: Coords, p: Point) -> int:
    """Face of the drawing containing ``p`` (must be off every edge).

    Bounded face walks run counterclockwise under the clockwise-rotation
    convention, so ``p`` sits in the unique face whose walk winds +1 around
    it, or in the face with no such walk when every winding is <= 0.
    """
    hits = []
    outer_candidates = []
    for f in range(g.face_count()):
        segs = _walk_segments(g, coords, f)
        if not segs:
            outer_candidates.append(f)
            continue
        w = winding_number(segs, p)
        if w == 1:
            hits.append(f)
        elif w == 0:
            outer_candidates.append(f)
    if len(hits) == 1:
        return hits[0]
    if not hits:
        # every bounded walk missed: p lies in the unbounded face, which is
        # the one whose own walk does not wind +1 around its points
        unbounded = [f for f in range(g.face_count()) if _face_is_unbounded(g, coords, f)]
        if len(unbounded) == 1:
            return unbounded[0]
    raise DrawingError("face location failed; drawing may be invalid")


def _face_is_unbounded(g: PlanarEmbeddedGraph, coords: Coords, face: int) -> bool:
    """The unbounded face's walk has non-positive total signed area."""
    segs = _walk_segments(g, coords, face)
    if not segs:
        return True
    twice_area = sum(a[0] * b[1] - b[0] * a[1] for a, b in segs)
    return twice_area <= 0


def unbounded_face(g: PlanarEmbeddedGraph, coords: Coords) -> int:
    for f in range(g.face_count()):
        if _face_is_unbounded(g, coords, f):
            return f
    raise DrawingError("no unbounded face found")


def point_in_face(g: PlanarEmbeddedGraph, coords: Coords, face: int) -> Point:
    """Some rational point strictly inside ``face``, off all edges.

    Probes points perpendicular to walk edges at shrinking offsets and
    verifies each candidate by exact location.
    """
    walk = g.facial_walks()[face]
    if not walk:
        # single-vertex graph: everything but the vertex is the one face
        v = g.vertices[0]
        return (Fraction(coords[v][0] + 1), Fraction(coords[v][1]))
    for d in walk:
        a = _as_point(coords[g.dart_tail(d)])
        b = _as_point(coords[g.dart_head(d)])
        mx, my = (a[0] + b[0]) / 2, (a[1] + b[1]) / 2
        # left normal of the dart direction: face side under our convention
        nx_, ny_ = -(b[1] - a[1]), (b[0] - a[0])
        scale = max(abs(nx_), abs(ny_))
        for k in (2, 4, 8, 16, 64, 256, 1024):
            p = (mx + nx_ / (scale * k), my + ny_ / (scale * k))
            try:
                if locate_face(g, coords, p) == face:
                    return p
            except DrawingError:
                continue
    raise DrawingError(f"could not produce an interior point for face {face}")


# ---------------------------------------------------------------------------
# drawing synthesis
# ---------------------------------------------------------------------------

def _nx_embedding(g: PlanarEmbeddedGraph) -> nx.PlanarEmbedding:
    emb = nx.PlanarEmbedding()
    for v in g.vertices:
        ref = None
        for d in g.rot[v]:
            w = g.dart_head(d)
            emb.add_half_edge_cw(v, w, ref)
            ref = w
    emb.check_structure()
    return emb


def _normalize(coords: Coords) -> Coords:
    xmin = min(x for x, _ in coords.values())
    ymin = min(y for _, y in coords.values())
    return {v: (x - xmin, y - ymin) for v, (x, y) in coords.items()}


def _spans(coords: Coords) -> Tuple[int, int]:
    xs = [x for x, _ in coords.values()]
    ys = [y for _, y in coords.values()]
    return max(xs) - min(xs), max(ys) - min(ys)


def grid_size_of(coords: Coords) -> int:
    w, h = _spans(coords)
    return max(w, h, 2)


def draw_with_networkx(g: PlanarEmbeddedGraph) -> Coords:
    if len(g.vertices) == 1:
        return {g.vertices[0]: (0, 0)}
    if len(g.vertices) == 2:
        a, b = g.vertices
        return {a: (0, 0), b: (1, 0)}
    if not g.is_connected():
        raise DrawingError("drawing requires a connected graph")
    pos = nx.combinatorial_embedding_to_pos(_nx_embedding(g), fully_triangulate=False)
    coords = {v: (int(x), int(y)) for v, (x, y) in pos.items()}
    return _normalize(coords)


def compact_drawing(g: PlanarEmbeddedGraph, coords: Coords, passes: int = 8) -> Coords:
    """Shrink a valid drawing by deleting empty grid rows/columns and nudging
    vertices toward the origin, keeping only moves that re-verify exactly."""
    best = _normalize(dict(coords))

    def try_axis_compression(cur: Coords) -> Optional[Coords]:
        for axis in (0, 1):
            used = sorted({xy[axis] for xy in cur.values()})
            rank = {c: i for i, c in enumerate(used)}
            if rank and used[-1] + 1 > len(used):
                cand = {
                    v: ((rank[xy[0]], xy[1]) if axis == 0 else (xy[0], rank[xy[1]]))
                    for v, xy in cur.items()
                }
                if cand != cur and drawing_valid(g, cand):
                    return cand
                # all-at-once failed: drop empty lines one at a time
                for gap in range(len(used)):
                    if used[gap] != gap:
                        shift = used[gap] - gap
                        c2 = {
                            v: ((xy[0] - shift, xy[1]) if axis == 0 and xy[0] >= used[gap]
                                else (xy[0], xy[1] - shift) if axis == 1 and xy[1] >= used[gap]
                                else xy)
                            for v, xy in cur.items()
                        }
                        if drawing_valid(g, c2):
                            return c2
                        break
        return None

    def try_nudges(cur: Coords) -> Optional[Coords]:
        w, h = _spans(cur)
        order = sorted(cur, key=lambda v: -(cur[v][0] + cur[v][1]))
        for v in order:
            x, y = cur[v]
            for dx, dy in ((-1, -1), (-1, 0), (0, -1)):
                nxy = (x + dx, y + dy)
                if nxy[0] < 0 or nxy[1] < 0:
                    continue
                cand = dict(cur)
                cand[v] = nxy
                if drawing_valid(g, cand):
                    nw, nh = _spans(cand)
                    if (max(nw, nh), nw * nh) <= (max(w, h), w * h):
                        return _normalize(cand)
        return None

    for _ in range(passes):
        step = try_axis_compression(best)
        if step is None:
            step = try_nudges(best)
        if step is None:
            break
        best = _normalize(step)
    return best


def search_minimal_drawing(
    g: PlanarEmbeddedGraph,
    max_size: int = 4,
    node_budget: int = 300_000,
) -> Optional[Coords]:
    """Backtracking search for a rotation-faithful drawing in the smallest
    [0,k] x [0,k] box, k ascending.  Returns None when the budget runs out or
    nothing fits."""
    if not g.is_simple() or not g.is_connected():
        return None
    verts = sorted(g.vertices, key=lambda v: -g.degree(v))
    n = len(verts)
    budget = [node_budget]

    adj_prev: List[List[Tuple[int, Vertex]]] = []
    for i, v in enumerate(verts):
        prev = []
        before = set(verts[:i])
        for d in g.rot[v]:
            w = g.dart_head(d)
            if w in before:
                prev.append((d[0], w))
        adj_prev.append(prev)

    def feasible(placed: Dict[Vertex, Tuple[int, int]], v: Vertex, xy, i: int) -> bool:
        if xy in placed.values():
            return False
        a = xy  # integer tuples work directly with the exact predicates
        new_segs = []
        for eid, w in adj_prev[i]:
            b = placed[w]
            if a == b:
                return False
            new_segs.append((eid, a, b))
        for x in range(len(new_segs)):
            for y in range(x + 1, len(new_segs)):
                _, _, b1 = new_segs[x]
                _, _, b2 = new_segs[y]
                if point_on_segment(b1, a, b2) or point_on_segment(b2, a, b1):
                    return False
        pts = dict(placed)
        for eid, sa, sb in new_segs:
            u1, v1 = g.edges[eid]
            for eid2, (u2, v2) in enumerate(g.edges):
                if eid2 == eid or u2 not in placed or v2 not in placed:
                    continue
                if {u2, v2} - set(placed):
                    continue
                c, d = pts[u2], pts[v2]
                shared = {u1, v1} & {u2, v2}
                if len(shared) == 1:
                    if (point_on_segment(c, sa, sb) and c not in (sa, sb)) or \
                       (point_on_segment(d, sa, sb) and d not in (sa, sb)) or \
                       (point_on_segment(sa, c, d) and sa not in (c, d)) or \
                       (point_on_segment(sb, c, d) and sb not in (c, d)):
                        return False
                elif not shared:
                    if segments_cross_properly(sa, sb, c, d) or \
                       point_on_segment(sa, c, d) or point_on_segment(sb, c, d) or \
                       point_on_segment(c, sa, sb) or point_on_segment(d, sa, sb):
                        return False
            for w2, p2 in pts.items():
                if w2 not in (u1, v1) and point_on_segment(p2, sa, sb):
                    return False
        for eid2, (u2, v2) in enumerate(g.edges):
            if u2 in placed and v2 in placed and v not in (u2, v2):
                if point_on_segment(a, pts[u2], pts[v2]):
                    return False
        return True

    def rec(i: int, placed: Dict[Vertex, Tuple[int, int]], k: int) -> Optional[Coords]:
        if budget[0] <= 0:
            return None
        if i == n:
            cand = dict(placed)
            if drawing_valid(g, cand):
                return _normalize(cand)
            return None
        v = verts[i]
        for x in range(k + 1):
            for y in range(k + 1):
                budget[0] -= 1
                if budget[0] <= 0:
                    return None
                if feasible(placed, v, (x, y), i):
                    placed[v] = (x, y)
                    got = rec(i + 1, placed, k)
                    if got is not None:
                        return got
                    del placed[v]
        return None

    for k in range(1, max_size + 1):
        if (k + 1) ** 2 < n:
            continue
        budget[0] = node_budget
        got = rec(0, {}, k)
        if got is not None:
            return got
    return None


@dataclass
class GridEmbedding:
    graph: PlanarEmbeddedGraph
    coords: Coords
    grid_size: int

    def to_dict(self) -> Dict[str, object]:
        return {
            "graph": self.graph.to_dict(),
            "coords": {str(v): list(self.coords[v]) for v in self.graph.vertices},
            "grid_size": self.grid_size,
        }

    @classmethod
    def from_dict(cls, d: Dict[str, object]) -> "GridEmbedding":
        g = PlanarEmbeddedGraph.from_dict(d["graph"])
        by_name = {str(v): v for v in g.vertices}
        coords = {by_name[k]: (int(x), int(y)) for k, (x, y) in dict(d["coords"]).items()}
        emb = cls(graph=g, coords=coords, grid_size=int(d["grid_size"]))
        check_drawing(g, coords)
        if emb.grid_size != grid_size_of(coords):
            raise DrawingError("stored grid size disagrees with the coordinates")
        return emb


def grid_embed(
    g: PlanarEmbeddedGraph,
    compact: bool = True,
    search_small: bool = True,
    search_budget: int = 300_000,
) -> GridEmbedding:
    """Rotation-faithful straight-line drawing on the smallest integer grid
    this module can find.  The result is always re-verified exactly."""
    coords = draw_with_networkx(g)
    if len(g.vertices) > 2:
        check_drawing(g, coords)
        if compact:
            coords = compact_drawing(g, coords)
        if search_small:
            target = max(_spans(coords))
            limit = min(4, max(2, target - 1))
            found = search_minimal_drawing(g, max_size=limit, node_budget=search_budget)
            if found is not None and max(_spans(found)) < max(_spans(coords)):
                coords = found
    check_drawing(g, coords)
    return GridEmbedding(graph=g, coords=_normalize(coords), grid_size=grid_size_of(coords))
