"""Exact brute-force and polynomial reference solvers.

These establish ground-truth optima for small instances so the reduction
laws can be checked end to end.  Enumeration solvers refuse instances above
hard caps instead of silently running forever; the two-point isolation
solver and the terminal-pair cut solver are polynomial and handle the
synthesized instances directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx

from .arrangements import (
    DiskInstance,
    VerificationError,
    complement_regions,
    edge_crossing_parities,
    unit_disk_graph,
)
from .graphs import (
    MultiterminalInstance,
    PlanarEmbeddedGraph,
    SubdivisionInstance,
    Vertex,
    multiterminal_solution_ok,
    subdivision_solution_ok,
)


class SolverCapExceeded(RuntimeError):
    """The instance is larger than this brute-force solver will accept."""


@dataclass
class OptimumCertificate:
    """A solved instance: the optimum value, one witness, and how it was
    obtained."""

    problem: str
    optimum: int
    witness: List[object] = field(default_factory=list)
    method: str = "enumeration"
    detail: Dict[str, object] = field(default_factory=dict)


# ---------------------------------------------------------------------------
# graph-level problems
# ---------------------------------------------------------------------------

def brute_min_multiterminal(
    inst: MultiterminalInstance, max_edges: int = 18
) -> OptimumCertificate:
    """Minimum total weight of deleted edges leaving all terminals in
    pairwise distinct components, by subset enumeration."""
    inst.validate()
    m = len(inst.graph.edges)
    if m > max_edges:
        raise SolverCapExceeded(f"{m} edges exceeds the enumeration cap {max_edges}")
    best: Optional[Tuple[int, List[int]]] = None
    for size in range(m + 1):
        for combo in combinations(range(m), size):
            if multiterminal_solution_ok(inst, combo):
                w = sum(inst.weights.get(e, 1) for e in combo)
                if best is None or w < best[0]:
                    best = (w, list(combo))
        if best is not None and best[0] <= size:
            # any larger subset weighs at least its own cardinality
            break
    if best is None:
        raise VerificationError("no edge subset separates the terminals")
    return OptimumCertificate(
        problem="multiterminal-cut", optimum=best[0], witness=best[1]
    )


def brute_min_subdivision(
    inst: SubdivisionInstance, max_groups: int = 18
) -> OptimumCertificate:
    """Minimum group-counted mass of kept edges that separate the marked
    faces.  Only whole groups are worth keeping, and each used group counts
    two regardless of its fragment count."""
    inst.validate()
    groups = inst.groups or [[e] for e in range(len(inst.graph.edges))]
    g = len(groups)
    if g > max_groups:
        raise SolverCapExceeded(f"{g} groups exceeds the enumeration cap {max_groups}")
    # mass is twice the number of used groups, so the first feasible size wins
    for size in range(g + 1):
        for combo in combinations(range(g), size):
            kept = [e for gi in combo for e in groups[gi]]
            if subdivision_solution_ok(inst, kept):
                return OptimumCertificate(
                    problem="face-separation",
                    optimum=2 * size,
                    witness=list(combo),
                    detail={"kept_edges": sorted(kept)},
                )
    raise VerificationError("no group subset separates the marked faces")


def brute_min_fvs(
    vertices: Sequence[Vertex],
    edges: Sequence[Tuple[Vertex, Vertex]],
    max_vertices: int = 20,
) -> OptimumCertificate:
    """Minimum vertex set meeting every cycle, by subset enumeration."""
    vs = list(vertices)
    if len(vs) > max_vertices:
        raise SolverCapExceeded(
            f"{len(vs)} vertices exceeds the enumeration cap {max_vertices}"
        )

    def acyclic_without(removed: Set[Vertex]) -> bool:
        parent: Dict[Vertex, Vertex] = {v: v for v in vs if v not in removed}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (u, w) in edges:
            if u in removed or w in removed:
                continue
            if u == w:
                return False
            ru, rw = find(u), find(w)
            if ru == rw:
                return False
            parent[ru] = rw
        return True

    for size in range(len(vs) + 1):
        for combo in combinations(vs, size):
            if acyclic_without(set(combo)):
                return OptimumCertificate(
                    problem="cycle-hitting-set", optimum=size, witness=list(combo)
                )
    raise AssertionError("removing all vertices always leaves an acyclic graph")


# ---------------------------------------------------------------------------
# disk-level problems
# ---------------------------------------------------------------------------

def brute_min_isolation_two_points(
    instance: DiskInstance, max_disks: int = 20000
) -> OptimumCertificate:
    """Exact minimum fence for an instance with exactly two marked points.

    The union of a chosen set separates the points iff the set's
    intersection graph contains a cycle of odd crossing parity against a
    generic probe path, so the optimum is the shortest odd cycle in the
    parity double cover of the full intersection graph — polynomial, no
    enumeration.
    """
    instance.validate()
    if len(instance.points) != 2:
        raise VerificationError("this solver handles exactly two marked points")
    if len(instance.disks) > max_disks:
        raise SolverCapExceeded(f"{len(instance.disks)} disks exceeds {max_disks}")
    centers = instance.centers()
    r = instance.radius
    need2 = (r + Fraction(r, 1000)) ** 2
    p, q = [instance.points[k] for k in sorted(instance.points)]
    for pt in (p, q):
        for c in centers:
            if (c[0] - pt[0]) ** 2 + (c[1] - pt[1]) ** 2 <= need2:
                raise VerificationError("a marked point is covered or nearly covered")
    udg = unit_disk_graph(centers, r)
    parity = edge_crossing_parities(centers, udg, p, q)

    n = udg.n
    adj: List[List[Tuple[int, int]]] = [[] for _ in range(n)]
    for (i, j) in udg.edges:
        x = parity[(i, j)]
        adj[i].append((j, x))
        adj[j].append((i, x))

    best_len: Optional[int] = None
    best_cycle: Optional[List[int]] = None
    from collections import deque

    for s in range(n):
        # BFS over (vertex, parity) states from (s, 0) to (s, 1)
        if best_len is not None and best_len <= 3:
            break
        dist: Dict[Tuple[int, int], int] = {(s, 0): 0}
        prev: Dict[Tuple[int, int], Tuple[int, int]] = {}
        dq = deque([(s, 0)])
        goal = (s, 1)
        while dq:
            v, par = dq.popleft()
            d = dist[(v, par)]
            if best_len is not None and d + 1 >= best_len:
                continue
            for (w, x) in adj[v]:
                state = (w, par ^ x)
                if state not in dist:
                    dist[state] = d + 1
                    prev[state] = (v, par)
                    if state == goal:
                        dq.clear()
                        break
                    dq.append(state)
        if goal in dist and (best_len is None or dist[goal] < best_len):
            walk = [goal]
            while walk[-1] != (s, 0):
                walk.append(prev[walk[-1]])
            cyc = _extract_odd_cycle([v for (v, _) in reversed(walk)], parity)
            if cyc is not None:
                best_len = len(cyc)
                best_cycle = cyc
    if best_cycle is None:
        raise VerificationError("no subset of the disks separates the two points")
    return OptimumCertificate(
        problem="two-point-isolation",
        optimum=best_len,
        witness=sorted(best_cycle),
        method="parity double cover",
        detail={"cycle": best_cycle},
    )


def _extract_odd_cycle(
    walk: List[int], parity: Dict[Tuple[int, int], int]
) -> Optional[List[int]]:
    """A simple odd-parity cycle inside a closed odd walk.

    Splicing out an even closed subwalk preserves odd total parity;
    recursing into an odd closed subwalk shortens the problem.  Either way
    the walk loses vertices, so this terminates with a simple cycle.
    """

    def par_of(a: int, b: int) -> int:
        return parity[(a, b) if a < b else (b, a)]

    def total(w: List[int]) -> int:
        x = 0
        for a, b in zip(w, w[1:]):
            x ^= par_of(a, b)
        return x

    w = list(walk)
    while True:
        seen: Dict[int, int] = {}
        repeat = None
        for idx, v in enumerate(w[:-1]):
            if v in seen:
                repeat = (seen[v], idx)
                break
            seen[v] = idx
        if repeat is None:
            return w[:-1] if total(w) == 1 else None
        i, j = repeat
        inner = w[i: j + 1]  # closed: w[i] == w[j]
        if total(inner) == 1:
            w = inner
        else:
            w = w[:i] + w[j:]


def brute_min_isolation(
    instance: DiskInstance,
    max_subset: int = 12,
    max_disks: int = 40,
) -> OptimumCertificate:
    """Minimum fence by subset enumeration, any number of marked points.

    Strictly capped; use the two-point solver for synthesized instances.
    """
    from .arrangements import verify_isolation

    instance.validate()
    n = len(instance.disks)
    if n > max_disks:
        raise SolverCapExceeded(
            f"{n} disks exceeds the enumeration cap {max_disks}; "
            "use the two-point solver or shrink the instance"
        )
    for size in range(min(max_subset, n) + 1):
        for combo in combinations(range(n), size):
            if verify_isolation(instance, list(combo)).ok:
                return OptimumCertificate(
                    problem="point-isolation", optimum=size, witness=list(combo)
                )
    raise SolverCapExceeded(
        f"no fence of size <= {max_subset} found within the subset cap"
    )


def brute_min_acc(
    instance: DiskInstance,
    max_subset: int = 12,
    max_disks: int = 64,
) -> OptimumCertificate:
    """Minimum number of deleted disks leaving a union with no bounded
    complement region, by subset enumeration over deletions."""
    instance.validate()
    n = len(instance.disks)
    if n > max_disks:
        raise SolverCapExceeded(f"{n} disks exceeds the enumeration cap {max_disks}")
    centers = instance.centers()
    r = instance.radius
    if complement_regions(centers, r).bounded_complement_regions == 0:
        return OptimumCertificate(problem="acyclic-cover", optimum=0, witness=[])
    for size in range(1, min(max_subset, n) + 1):
        for combo in combinations(range(n), size):
            remaining = [c for k, c in enumerate(centers) if k not in set(combo)]
            if complement_regions(remaining, r).bounded_complement_regions == 0:
                return OptimumCertificate(
                    problem="acyclic-cover", optimum=size, witness=list(combo)
                )
    raise SolverCapExceeded(f"no deletion set of size <= {max_subset} found")


def min_terminal_pair_cut(
    instance: DiskInstance,
    cutoff: Optional[int] = None,
) -> OptimumCertificate:
    """Minimum number of intersection-graph edges whose deletion disconnects
    the two terminal disks, via max-flow with unit edge capacities.

    The witness is a list of disk-id pairs.  With ``cutoff`` the search
    stops once the flow reaches it; the reported optimum is then a lower
    bound marked in the detail dict.
    """
    instance.validate()
    terminals = [int(t) for t in instance.meta.get("terminal_disks", [])]
    if len(terminals) != 2:
        raise VerificationError("terminal-pair cut needs exactly two terminal disks")
    s_id, t_id = terminals
    udg = unit_disk_graph(instance.centers(), instance.radius)
    g = nx.DiGraph()
    for (i, j) in udg.edges:
        g.add_edge(i, j, capacity=1)
        g.add_edge(j, i, capacity=1)
    if s_id not in g or t_id not in g or not nx.has_path(g, s_id, t_id):
        return OptimumCertificate(
            problem="terminal-pair-cut", optimum=0, witness=[], method="max-flow"
        )
    if cutoff is not None:
        res = nx.algorithms.flow.edmonds_karp(g, s_id, t_id, cutoff=cutoff)
        value = res.graph["flow_value"]
        return OptimumCertificate(
            problem="terminal-pair-cut",
            optimum=int(value),
            witness=[],
            method="max-flow (cutoff)",
            detail={"lower_bound_only": value >= cutoff},
        )
    value, (side_s, _) = nx.minimum_cut(g, s_id, t_id)
    cut_edges = sorted(
        (min(i, j), max(i, j))
        for i, j in udg.edges
        if (i in side_s) != (j in side_s)
    )
    assert len(cut_edges) == int(value)
    return OptimumCertificate(
        problem="terminal-pair-cut",
        optimum=int(value),
        witness=[list(e) for e in cut_edges],
        method="max-flow",
    )


def multiterminal_cut_lower_bound(instance: DiskInstance) -> int:
    """Certified lower bound on the minimum intersection-edge cut that
    pairwise separates the terminal disks: half the sum of single-terminal
    isolating cuts, rounded up.

    Sound because every edge of an optimal cut lies on the boundary of at
    most two terminal components, while the cut's restriction to one
    terminal's component boundary is itself an isolating cut.  Together with
    a verified certificate of the same size this pins the optimum exactly.
    """
    instance.validate()
    terminals = [int(t) for t in instance.meta.get("terminal_disks", [])]
    if len(terminals) < 2:
        return 0
    udg = unit_disk_graph(instance.centers(), instance.radius)
    g = nx.DiGraph()
    for (i, j) in udg.edges:
        g.add_edge(i, j, capacity=1)
        g.add_edge(j, i, capacity=1)
    sink = ("sink",)
    total = 0
    for t in terminals:
        g.add_node(sink)
        for o in terminals:
            if o != t:
                g.add_edge(o, sink, capacity=float("inf"))
        if t in g and nx.has_path(g, t, sink):
            total += int(nx.maximum_flow_value(g, t, sink))
        g.remove_node(sink)
    return -(-total // 2)
