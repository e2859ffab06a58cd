"""Embedded planar multigraphs as rotation systems.

A graph is stored as a list of edges plus, for every vertex, the clockwise
cyclic order of its edge ends ("darts").  Faces, geometric duals and edge
subdivisions are all derived purely combinatorially from that data, so the
same code handles multi-edges and self-loops (which show up as soon as duals
of graphs with parallel faces or bridges are taken).

A dart is a pair ``(edge_id, end)``; dart ``(e, 0)`` leaves ``edges[e][0]``
and dart ``(e, 1)`` leaves ``edges[e][1]``.  For a self-loop both darts leave
the same vertex and are distinguished by their position in the rotation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

Vertex = Hashable
Dart = Tuple[int, int]


class StructureError(ValueError):
    """Raised when a graph, rotation system, or instance is malformed."""


def other_end(dart: Dart) -> Dart:
    return (dart[0], 1 - dart[1])


class PlanarEmbeddedGraph:
    def __init__(
        self,
        vertices: Sequence[Vertex],
        edges: Sequence[Tuple[Vertex, Vertex]],
        rotation: Dict[Vertex, Sequence[Dart]],
    ):
        self.vertices: List[Vertex] = list(vertices)
        self.edges: List[Tuple[Vertex, Vertex]] = [tuple(e) for e in edges]
        self.rot: Dict[Vertex, Tuple[Dart, ...]] = {v: tuple(rotation.get(v, ())) for v in self.vertices}
        self._faces: Optional[List[List[Dart]]] = None
        self._face_of_dart: Optional[Dict[Dart, int]] = None
        self._validate()

    # -- construction -------------------------------------------------------

    @classmethod
    def from_edge_rotation(
        cls,
        vertices: Sequence[Vertex],
        edges: Sequence[Tuple[Vertex, Vertex]],
        rotation_edge_ids: Dict[Vertex, Sequence[int]],
    ) -> "PlanarEmbeddedGraph":
        """Build from per-vertex clockwise edge-id lists.

        A self-loop id must appear exactly twice in its vertex's list; the
        first occurrence is taken to be end 0.
        """
        rotation: Dict[Vertex, List[Dart]] = {}
        for v in vertices:
            seen_loop: Dict[int, int] = {}
            darts: List[Dart] = []
            for eid in rotation_edge_ids.get(v, ()):
                if not (0 <= eid < len(edges)):
                    raise StructureError(f"vertex {v!r}: rotation names unknown edge {eid}")
                u, w = edges[eid]
                if u == w:  # self-loop
                    if u != v:
                        raise StructureError(f"vertex {v!r}: edge {eid} is not incident")
                    end = seen_loop.get(eid, 0)
                    seen_loop[eid] = end + 1
                    if end > 1:
                        raise StructureError(f"vertex {v!r}: loop {eid} appears more than twice")
                    darts.append((eid, end))
                elif v == u:
                    darts.append((eid, 0))
                elif v == w:
                    darts.append((eid, 1))
                else:
                    raise StructureError(f"vertex {v!r}: edge {eid} is not incident")
            rotation[v] = darts
        return cls(vertices, edges, rotation)

    def _validate(self) -> None:
        if len(set(self.vertices)) != len(self.vertices):
            raise StructureError("duplicate vertex ids")
        vset = set(self.vertices)
        for eid, (u, v) in enumerate(self.edges):
            if u not in vset or v not in vset:
                raise StructureError(f"edge {eid} references unknown vertex")
        placed: Dict[Dart, Vertex] = {}
        for v, darts in self.rot.items():
            for d in darts:
                if d in placed:
                    raise StructureError(f"dart {d} appears at both {placed[d]!r} and {v!r}")
                eid, end = d
                if not (0 <= eid < len(self.edges)) or end not in (0, 1):
                    raise StructureError(f"vertex {v!r}: invalid dart {d}")
                if self.edges[eid][end] != v:
                    raise StructureError(f"vertex {v!r}: dart {d} belongs to {self.edges[eid][end]!r}")
                placed[d] = v
        for eid, (u, v) in enumerate(self.edges):
            for end, w in ((0, u), (1, v)):
                if (eid, end) not in placed:
                    raise StructureError(f"edge {eid} missing from rotation at vertex {w!r}")

    # -- basic queries -------------------------------------------------------

    def dart_tail(self, d: Dart) -> Vertex:
        return self.edges[d[0]][d[1]]

    def dart_head(self, d: Dart) -> Vertex:
        return self.edges[d[0]][1 - d[1]]

    def degree(self, v: Vertex) -> int:
        return len(self.rot[v])

    def is_simple(self) -> bool:
        seen = set()
        for u, v in self.edges:
            if u == v:
                return False
            key = frozenset((u, v))
            if key in seen:
                return False
            seen.add(key)
        return True

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            v = stack.pop()
            for d in self.rot[v]:
                w = self.dart_head(d)
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    def next_at_vertex(self, d: Dart) -> Dart:
        """Next dart clockwise after ``d`` around its tail vertex."""
        v = self.dart_tail(d)
        darts = self.rot[v]
        i = darts.index(d)
        return darts[(i + 1) % len(darts)]

    def next_in_face(self, d: Dart) -> Dart:
        """Face-walk successor: step to the head of ``d`` and turn to the
        next dart clockwise after the reversal."""
        return self.next_at_vertex(other_end(d))

    # -- faces ---------------------------------------------------------------

    def facial_walks(self) -> List[List[Dart]]:
        """All facial walks, canonicalized.

        Each walk is rotated to start at its lexicographically smallest dart
        and the list of walks is sorted by that dart, so face ids (indices
        into the returned list) are deterministic.  An edgeless one-vertex
        graph yields a single empty walk for its only face.
        """
        if self._faces is not None:
            return self._faces
        if not self.edges:
            self._faces = [[]] if len(self.vertices) == 1 else [[] for _ in range(1)]
            self._face_of_dart = {}
            return self._faces
        unvisited = {(e, end) for e in range(len(self.edges)) for end in (0, 1)}
        walks: List[List[Dart]] = []
        while unvisited:
            start = min(unvisited)
            walk = [start]
            unvisited.discard(start)
            d = self.next_in_face(start)
            while d != start:
                walk.append(d)
                unvisited.discard(d)
                d = self.next_in_face(d)
            k = walk.index(min(walk))
            walks.append(walk[k:] + walk[:k])
        walks.sort(key=lambda w: w[0])
        self._faces = walks
        self._face_of_dart = {d: i for i, w in enumerate(walks) for d in w}
        return walks

    def face_of_dart(self, d: Dart) -> int:
        self.facial_walks()
        assert self._face_of_dart is not None
        return self._face_of_dart[d]

    def face_count(self) -> int:
        return len(self.facial_walks())

    def edge_faces(self) -> List[Tuple[int, int]]:
        """For each edge, the pair (face of dart 0, face of dart 1)."""
        self.facial_walks()
        return [
            (self.face_of_dart((e, 0)), self.face_of_dart((e, 1)))
            for e in range(len(self.edges))
        ]

    def euler_characteristic_ok(self) -> bool:
        """V - E + F == 2 for a connected rotation system of genus zero."""
        return len(self.vertices) - len(self.edges) + self.face_count() == 2

    # -- serialization -------------------------------------------------------

    def to_dict(self) -> Dict[str, object]:
        return {
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.edges],
            "rotation": {str(v): [d[0] for d in self.rot[v]] for v in self.vertices},
        }

    @classmethod
    def from_dict(cls, d: Dict[str, object]) -> "PlanarEmbeddedGraph":
        vertices = list(d["vertices"])
        by_name = {str(v): v for v in vertices}
        if len(by_name) != len(vertices):
            raise StructureError("vertex names collide after string coercion")
        edges = [tuple(e) for e in d["edges"]]
        rotation = {by_name[k]: list(v) for k, v in dict(d["rotation"]).items()}
        return cls.from_edge_rotation(vertices, edges, rotation)


# ---------------------------------------------------------------------------
# geometric dual
# ---------------------------------------------------------------------------

@dataclass
class DualResult:
    dual: PlanarEmbeddedGraph          # vertex i of the dual is face i of the primal
    primal_face_of_dart: Dict[Dart, int]
    vertex_face: Dict[Vertex, int]     # primal vertex -> face id of the dual


def geometric_dual(g: PlanarEmbeddedGraph) -> DualResult:
    """Geometric dual of a connected embedded graph.

    Dual edge ids coincide with primal edge ids.  Dart labels carry over:
    dual dart ``(e, end)`` leaves the dual vertex (= primal face) containing
    primal dart ``(e, end)``, and its rotation around each dual vertex is the
    facial-walk order of that face.  Faces of the dual then correspond to
    primal vertices, which is exposed via ``vertex_face``.
    """
    if not g.is_connected():
        raise StructureError("dual requires a connected graph")
    walks = g.facial_walks()
    face_of = {d: i for i, w in enumerate(walks) for d in w}
    dual_vertices = list(range(len(walks)))
    dual_edges = [
        (face_of[(e, 0)], face_of[(e, 1)]) for e in range(len(g.edges))
    ]
    rotation: Dict[Vertex, List[Dart]] = {i: list(w) for i, w in enumerate(walks)}
    dual = PlanarEmbeddedGraph(dual_vertices, dual_edges, rotation)
    vertex_face: Dict[Vertex, int] = {}
    for v in g.vertices:
        if g.rot[v]:
            vertex_face[v] = dual.face_of_dart(g.rot[v][0])
        elif len(g.vertices) == 1:
            vertex_face[v] = 0
        else:
            raise StructureError(f"isolated vertex {v!r} in a connected dual computation")
    return DualResult(dual=dual, primal_face_of_dart=face_of, vertex_face=vertex_face)


# ---------------------------------------------------------------------------
# subdivision
# ---------------------------------------------------------------------------

@dataclass
class SubdivisionMap:
    graph: PlanarEmbeddedGraph
    fragments: Dict[int, List[int]]    # original edge id -> new edge ids in order
    face_map: Dict[int, int]           # original face id -> new face id
    new_vertices: List[Vertex]


def subdivide_all_edges(g: PlanarEmbeddedGraph, label_prefix: str = "x") -> SubdivisionMap:
    """Subdivide every edge once; self-loops are subdivided twice so the
    result is simple.  Fragment groups and the face correspondence are
    returned so solutions can be mapped back.
    """
    new_vertices = list(g.vertices)
    new_edges: List[Tuple[Vertex, Vertex]] = []
    fragments: Dict[int, List[int]] = {}
    # replacement darts for the two original ends
    end_replacement: Dict[Dart, Dart] = {}
    mid_rotation: Dict[Vertex, List[Dart]] = {}
    added: List[Vertex] = []

    for eid, (u, v) in enumerate(g.edges):
        if u != v:
            m = f"{label_prefix}{eid}"
            f1 = len(new_edges); new_edges.append((u, m))
            f2 = len(new_edges); new_edges.append((m, v))
            fragments[eid] = [f1, f2]
            end_replacement[(eid, 0)] = (f1, 0)
            end_replacement[(eid, 1)] = (f2, 1)
            mid_rotation[m] = [(f1, 1), (f2, 0)]
            added.append(m)
            new_vertices.append(m)
        else:
            m1 = f"{label_prefix}{eid}a"
            m2 = f"{label_prefix}{eid}b"
            f1 = len(new_edges); new_edges.append((u, m1))
            f2 = len(new_edges); new_edges.append((m1, m2))
            f3 = len(new_edges); new_edges.append((m2, v))
            fragments[eid] = [f1, f2, f3]
            end_replacement[(eid, 0)] = (f1, 0)
            end_replacement[(eid, 1)] = (f3, 1)
            mid_rotation[m1] = [(f1, 1), (f2, 0)]
            mid_rotation[m2] = [(f2, 1), (f3, 0)]
            added.extend([m1, m2])
            new_vertices.extend([m1, m2])

    rotation: Dict[Vertex, List[Dart]] = {
        v: [end_replacement[d] for d in g.rot[v]] for v in g.vertices
    }
    rotation.update(mid_rotation)
    g2 = PlanarEmbeddedGraph(new_vertices, new_edges, rotation)

    face_map: Dict[int, int] = {}
    for i, walk in enumerate(g.facial_walks()):
        if walk:
            face_map[i] = g2.face_of_dart(end_replacement[walk[0]])
    if len(g2.facial_walks()) != len(g.facial_walks()):
        raise StructureError("subdivision changed the face count")
    return SubdivisionMap(graph=g2, fragments=fragments, face_map=face_map, new_vertices=added)


# ---------------------------------------------------------------------------
# problem instances
# ---------------------------------------------------------------------------

@dataclass
class MultiterminalInstance:
    """Edge-deletion multiterminal cut on an embedded graph.

    A solution is an edge set whose removal leaves no two terminals in one
    component; weights default to 1 per edge.
    """

    graph: PlanarEmbeddedGraph
    terminals: List[Vertex]
    weights: Dict[int, int] = field(default_factory=dict)

    def weight(self, eid: int) -> int:
        return self.weights.get(eid, 1)

    def validate(self) -> None:
        vset = set(self.graph.vertices)
        for t in self.terminals:
            if t not in vset:
                raise StructureError(f"terminal {t!r} is not a vertex")
        if len(set(self.terminals)) != len(self.terminals):
            raise StructureError("duplicate terminals")
        for eid, w in self.weights.items():
            if not (0 <= eid < len(self.graph.edges)):
                raise StructureError(f"weight names unknown edge {eid}")
            if w < 1:
                raise StructureError(f"edge {eid} has non-positive weight")

    def to_dict(self) -> Dict[str, object]:
        d = self.graph.to_dict()
        d["terminals"] = list(self.terminals)
        if self.weights:
            d["weights"] = {str(k): v for k, v in self.weights.items()}
        return d

    @classmethod
    def from_dict(cls, d: Dict[str, object]) -> "MultiterminalInstance":
        g = PlanarEmbeddedGraph.from_dict(d)
        weights = {int(k): int(v) for k, v in dict(d.get("weights", {})).items()}
        inst = cls(graph=g, terminals=list(d.get("terminals", [])), weights=weights)
        inst.validate()
        return inst


@dataclass
class SubdivisionInstance:
    """Keep a minimum edge set whose embedding leaves every marked face
    point in its own face.

    ``terminals`` maps a point id to the face id (of the full graph) that
    hosts it.  ``groups``, when present, partitions the edges into the
    fragment groups of one source dual edge each; solutions are then unions
    of whole groups and each used group is counted with mass 2 regardless of
    its fragment count (see the solver).
    """

    graph: PlanarEmbeddedGraph
    terminals: Dict[str, int]
    groups: Optional[List[List[int]]] = None

    def validate(self) -> None:
        nf = self.graph.face_count()
        if len(set(self.terminals.values())) != len(self.terminals):
            raise StructureError("two points share a face")
        for pid, f in self.terminals.items():
            if not (0 <= f < nf):
                raise StructureError(f"point {pid!r} names unknown face {f}")
        if self.groups is not None:
            flat = [e for grp in self.groups for e in grp]
            if sorted(flat) != list(range(len(self.graph.edges))):
                raise StructureError("groups must partition the edge set")

    def to_dict(self) -> Dict[str, object]:
        d = self.graph.to_dict()
        d["terminals"] = {str(k): v for k, v in self.terminals.items()}
        if self.groups is not None:
            d["groups"] = [list(grp) for grp in self.groups]
        return d

    @classmethod
    def from_dict(cls, d: Dict[str, object]) -> "SubdivisionInstance":
        g = PlanarEmbeddedGraph.from_dict(d)
        groups = d.get("groups")
        inst = cls(
            graph=g,
            terminals={str(k): int(v) for k, v in dict(d["terminals"]).items()},
            groups=[list(grp) for grp in groups] if groups is not None else None,
        )
        inst.validate()
        return inst


def face_components(g: PlanarEmbeddedGraph, kept_edges: Iterable[int]) -> Dict[int, int]:
    """Face partition of the subgraph retaining ``kept_edges``.

    Deleting an edge merges the two faces on its sides, so the faces of the
    retained subgraph are the components of the dual restricted to deleted
    edges.  Returns a face-id -> representative map (union-find roots).
    """
    kept = set(kept_edges)
    parent = list(range(g.face_count()))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for eid, (fa, fb) in enumerate(g.edge_faces()):
        if eid not in kept:
            ra, rb = find(fa), find(fb)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    return {f: find(f) for f in range(g.face_count())}


def subdivision_solution_ok(inst: SubdivisionInstance, kept_edges: Iterable[int]) -> bool:
    """True if retaining ``kept_edges`` leaves all marked points in
    pairwise distinct faces."""
    comp = face_components(inst.graph, kept_edges)
    reps = [comp[f] for f in inst.terminals.values()]
    return len(set(reps)) == len(reps)


# ---------------------------------------------------------------------------
# reduction: planar multiterminal cut -> planar subdivision
# ---------------------------------------------------------------------------

@dataclass
class SolutionBackMap:
    """Pairing between subdivision edges and source edges.

    ``pairing`` groups every dual-fragment edge of the target instance under
    its source edge id; every target edge appears in exactly one group and
    the fragments of one group share their subdivision vertices.
    """

    pairing: Dict[int, List[int]]

    def to_dict(self) -> Dict[str, object]:
        return {"pairing": {str(k): list(v) for k, v in self.pairing.items()}}

    @classmethod
    def from_dict(cls, d: Dict[str, object]) -> "SolutionBackMap":
        return cls(pairing={int(k): list(v) for k, v in dict(d["pairing"]).items()})


@dataclass
class PmcReduction:
    instance: SubdivisionInstance
    back: SolutionBackMap
    dual: PlanarEmbeddedGraph
    vertex_face: Dict[Vertex, int] = field(default_factory=dict)  # source vertex -> target face


def reduce_pmc_to_subdivision(mti: MultiterminalInstance) -> PmcReduction:
    """Compile a planar multiterminal cut instance into a subdivision
    instance on the subdivided geometric dual.

    Every dual edge is split so the target graph is simple; a face of the
    target corresponds to each source vertex, and each terminal contributes
    one marked point in its face.  A solution of mass 2M in the target
    (counting each used fragment group as 2) corresponds to a source
    solution of M edges; ``lift_subdivision_solution`` maps back.
    """
    mti.validate()
    g = mti.graph
    if not g.is_connected():
        raise StructureError("source graph must be connected")
    if any(w != 1 for w in mti.weights.values()):
        raise StructureError("this reduction handles unweighted instances only")
    dres = geometric_dual(g)
    sub = subdivide_all_edges(dres.dual)
    if not sub.graph.is_simple():
        raise StructureError("subdivided dual failed to be simple")
    dual_face_map = {v: dres.vertex_face[v] for v in g.vertices}
    terminals = {
        str(t): sub.face_map[dual_face_map[t]] for t in mti.terminals
    }
    groups = [sub.fragments[e] for e in range(len(dres.dual.edges))]
    inst = SubdivisionInstance(graph=sub.graph, terminals=terminals, groups=groups)
    inst.validate()
    back = SolutionBackMap(pairing=dict(sub.fragments))
    vertex_face = {v: sub.face_map[dual_face_map[v]] for v in g.vertices}
    return PmcReduction(instance=inst, back=back, dual=dres.dual, vertex_face=vertex_face)


def lift_subdivision_solution(back: SolutionBackMap, kept_edges: Iterable[int]) -> List[int]:
    """Source edges whose fragment group is entirely kept.

    Fragments of a partially-kept group never change the face partition, so
    closing the solution under pairing (dropping incomplete groups) loses no
    separation power.
    """
    kept = set(kept_edges)
    out = []
    for src, frags in back.pairing.items():
        if all(f in kept for f in frags):
            out.append(src)
    return sorted(out)


def multiterminal_solution_ok(mti: MultiterminalInstance, removed: Iterable[int]) -> bool:
    """True if deleting ``removed`` separates all terminals pairwise."""
    removed = set(removed)
    g = mti.graph
    adj: Dict[Vertex, List[Vertex]] = {v: [] for v in g.vertices}
    for eid, (u, v) in enumerate(g.edges):
        if eid not in removed and u != v:
            adj[u].append(v)
            adj[v].append(u)
    color: Dict[Vertex, int] = {}
    for i, start in enumerate(g.vertices):
        if start in color:
            continue
        color[start] = i
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in color:
                    color[y] = i
                    stack.append(y)
    reps = [color[t] for t in mti.terminals]
    return len(set(reps)) == len(reps)
