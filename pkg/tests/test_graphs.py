"""Rotation systems: faces, duals, subdivision, and the cut-to-subdivision
reduction."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from disklab import graphs as gr


def triangle():
    return gr.PlanarEmbeddedGraph.from_edge_rotation(
        ["a", "b", "c"],
        [("a", "b"), ("b", "c"), ("c", "a")],
        {"a": [0, 2], "b": [1, 0], "c": [2, 1]},
    )


def path3():
    return gr.PlanarEmbeddedGraph.from_edge_rotation(
        ["a", "b", "c"], [("a", "b"), ("b", "c")], {"a": [0], "b": [0, 1], "c": [1]}
    )


def k4():
    # outer triangle 0,1,2 with vertex 3 inside; rotations clockwise
    return gr.PlanarEmbeddedGraph.from_edge_rotation(
        [0, 1, 2, 3],
        [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        {0: [1, 2, 0], 1: [0, 4, 3], 2: [3, 5, 1], 3: [4, 2, 5]},
    )


def cycle(k):
    verts = list(range(k))
    edges = [(i, (i + 1) % k) for i in range(k)]
    rot = {i: [(i - 1) % k, i] for i in verts}
    return gr.PlanarEmbeddedGraph.from_edge_rotation(verts, edges, rot)


# ---------------------------------------------------------------------------
# faces
# ---------------------------------------------------------------------------

def test_single_edge_one_face_of_length_two():
    g = gr.PlanarEmbeddedGraph.from_edge_rotation(
        ["u", "v"], [("u", "v")], {"u": [0], "v": [0]}
    )
    walks = g.facial_walks()
    assert len(walks) == 1
    assert len(walks[0]) == 2


def test_triangle_two_triangular_faces():
    g = triangle()
    walks = g.facial_walks()
    assert sorted(len(w) for w in walks) == [3, 3]
    assert g.euler_characteristic_ok()


def test_path_has_single_face():
    g = path3()
    walks = g.facial_walks()
    assert len(walks) == 1 and len(walks[0]) == 4


def test_k4_has_four_faces():
    g = k4()
    assert g.face_count() == 4
    assert all(len(w) == 3 for w in g.facial_walks())
    assert g.euler_characteristic_ok()


def test_face_ids_deterministic():
    g = triangle()
    again = triangle()
    assert g.facial_walks() == again.facial_walks()
    for e in range(3):
        for end in (0, 1):
            assert g.face_of_dart((e, end)) == again.face_of_dart((e, end))


def test_loop_rotation_and_faces():
    g = gr.PlanarEmbeddedGraph.from_edge_rotation(
        ["v"], [("v", "v")], {"v": [0, 0]}
    )
    assert g.face_count() == 2
    assert g.euler_characteristic_ok()


def test_edgeless_single_vertex():
    g = gr.PlanarEmbeddedGraph(["v"], [], {"v": []})
    assert g.face_count() == 1


# ---------------------------------------------------------------------------
# structural validation
# ---------------------------------------------------------------------------

def test_missing_edge_at_endpoint_is_reported():
    with pytest.raises(gr.StructureError, match="missing from rotation at vertex 'v'"):
        gr.PlanarEmbeddedGraph.from_edge_rotation(
            ["u", "v"], [("u", "v")], {"u": [0], "v": []}
        )


def test_foreign_edge_in_rotation_is_reported():
    with pytest.raises(gr.StructureError, match="not incident"):
        gr.PlanarEmbeddedGraph.from_edge_rotation(
            ["u", "v", "w"], [("u", "v"), ("v", "w")], {"u": [0, 1], "v": [0, 1], "w": [1]}
        )


def test_unknown_edge_id_is_reported():
    with pytest.raises(gr.StructureError, match="unknown edge"):
        gr.PlanarEmbeddedGraph.from_edge_rotation(["u"], [], {"u": [3]})


def test_duplicate_vertices_rejected():
    with pytest.raises(gr.StructureError):
        gr.PlanarEmbeddedGraph(["u", "u"], [], {"u": []})


# ---------------------------------------------------------------------------
# dual
# ---------------------------------------------------------------------------

def test_dual_of_path_is_loops_on_one_vertex():
    d = gr.geometric_dual(path3())
    assert len(d.dual.vertices) == 1
    assert d.dual.edges == [(0, 0), (0, 0)]
    assert d.dual.face_count() == 3
    # the three dual faces correspond to the three path vertices
    assert sorted(d.vertex_face.values()) == [0, 1, 2]


def test_dual_of_triangle_is_banana():
    d = gr.geometric_dual(triangle())
    assert len(d.dual.vertices) == 2
    assert all(tuple(sorted(e)) == (0, 1) for e in d.dual.edges)
    assert d.dual.face_count() == 3


def test_k4_is_self_dual():
    d = gr.geometric_dual(k4())
    assert len(d.dual.vertices) == 4
    assert len(d.dual.edges) == 6
    assert d.dual.is_simple()
    assert sorted(d.dual.degree(v) for v in d.dual.vertices) == [3, 3, 3, 3]


def test_dual_of_dual_restores_counts():
    for g in (triangle(), k4(), cycle(5)):
        d = gr.geometric_dual(g)
        dd = gr.geometric_dual(d.dual)
        assert len(dd.dual.vertices) == len(g.vertices)
        assert len(dd.dual.edges) == len(g.edges)
        assert dd.dual.face_count() == g.face_count()


def test_dual_requires_connectivity():
    g = gr.PlanarEmbeddedGraph.from_edge_rotation(
        ["a", "b", "c", "d"], [("a", "b"), ("c", "d")],
        {"a": [0], "b": [0], "c": [1], "d": [1]},
    )
    with pytest.raises(gr.StructureError, match="connected"):
        gr.geometric_dual(g)


# ---------------------------------------------------------------------------
# subdivision
# ---------------------------------------------------------------------------

def test_subdivide_plain_edge_makes_two_fragments():
    sub = gr.subdivide_all_edges(triangle())
    assert sub.graph.is_simple()
    assert all(len(frags) == 2 for frags in sub.fragments.values())
    assert sub.graph.face_count() == 2
    assert len(sub.graph.vertices) == 6


def test_subdivide_loop_makes_three_fragments():
    g = gr.PlanarEmbeddedGraph.from_edge_rotation(["v"], [("v", "v")], {"v": [0, 0]})
    sub = gr.subdivide_all_edges(g)
    assert sub.graph.is_simple()
    assert len(sub.fragments[0]) == 3
    assert sub.graph.face_count() == 2


def test_subdivision_face_map_is_bijective():
    g = k4()
    sub = gr.subdivide_all_edges(g)
    assert sorted(sub.face_map.keys()) == list(range(g.face_count()))
    assert sorted(sub.face_map.values()) == sorted(set(sub.face_map.values()))


# ---------------------------------------------------------------------------
# random rotation systems (hypothesis)
# ---------------------------------------------------------------------------

@st.composite
def rotation_systems(draw):
    n = draw(st.integers(min_value=1, max_value=6))
    verts = list(range(n))
    edges = [(i, i + 1) for i in range(n - 1)]  # spanning path keeps it connected
    extra = draw(st.integers(min_value=0, max_value=5))
    for _ in range(extra):
        u = draw(st.integers(min_value=0, max_value=n - 1))
        v = draw(st.integers(min_value=0, max_value=n - 1))
        edges.append((u, v))
    seed = draw(st.integers(min_value=0, max_value=2**32 - 1))
    rng = random.Random(seed)
    rot = {v: [] for v in verts}
    for eid, (u, v) in enumerate(edges):
        rot[u].append((eid, 0))
        rot[v].append((eid, 1))
    for v in verts:
        rng.shuffle(rot[v])
    return gr.PlanarEmbeddedGraph(verts, edges, rot)


@given(rotation_systems())
@settings(max_examples=120)
def test_walk_lengths_sum_to_twice_edges(g):
    walks = g.facial_walks()
    assert sum(len(w) for w in walks) == 2 * len(g.edges)
    darts = [d for w in walks for d in w]
    assert len(darts) == len(set(darts))


@given(rotation_systems())
@settings(max_examples=80)
def test_euler_characteristic_is_even_and_at_most_two(g):
    # an arbitrary rotation system embeds on an orientable surface of some
    # genus: V - E + F = 2 - 2g
    chi = len(g.vertices) - len(g.edges) + g.face_count()
    assert chi <= 2 and chi % 2 == 0


@given(rotation_systems())
@settings(max_examples=80)
def test_dual_swaps_vertices_and_faces(g):
    d = gr.geometric_dual(g)
    assert len(d.dual.vertices) == g.face_count()
    assert len(d.dual.edges) == len(g.edges)
    assert d.dual.face_count() == len(g.vertices)
    faces_used = sorted(d.vertex_face.values())
    assert faces_used == list(range(len(g.vertices)))  # distinct faces, one per vertex


@given(rotation_systems())
@settings(max_examples=80)
def test_subdivision_preserves_faces_and_is_simple(g):
    sub = gr.subdivide_all_edges(g)
    assert sub.graph.is_simple()
    assert sub.graph.face_count() == g.face_count()
    n_loops = sum(1 for u, v in g.edges if u == v)
    assert len(sub.graph.edges) == 2 * len(g.edges) + n_loops


# ---------------------------------------------------------------------------
# face components / solution checking
# ---------------------------------------------------------------------------

def test_face_components_full_and_empty():
    g = triangle()
    comp_all = gr.face_components(g, range(3))
    assert len(set(comp_all.values())) == 2
    comp_none = gr.face_components(g, [])
    assert len(set(comp_none.values())) == 1


def test_subdivision_solution_check_on_theta():
    # triangle's dual subdivided: theta graph with three marked faces
    red = gr.reduce_pmc_to_subdivision(
        gr.MultiterminalInstance(graph=triangle(), terminals=["a", "b", "c"])
    )
    inst = red.instance
    all_edges = range(len(inst.graph.edges))
    assert gr.subdivision_solution_ok(inst, all_edges)
    assert not gr.subdivision_solution_ok(inst, inst.groups[0] + inst.groups[1])


# ---------------------------------------------------------------------------
# the reduction and its lift
# ---------------------------------------------------------------------------

def brute_min_group_mass(inst):
    from itertools import combinations

    k = len(inst.groups)
    for size in range(k + 1):
        for chosen in combinations(range(k), size):
            kept = [e for gi in chosen for e in inst.groups[gi]]
            if gr.subdivision_solution_ok(inst, kept):
                return 2 * size, kept
    raise AssertionError("keeping everything must always succeed")


def test_path_reduction_round_trip():
    mti = gr.MultiterminalInstance(graph=path3(), terminals=["a", "c"])
    red = gr.reduce_pmc_to_subdivision(mti)
    assert len(red.instance.terminals) == 2
    mass, kept = brute_min_group_mass(red.instance)
    assert mass == 2
    lifted = gr.lift_subdivision_solution(red.back, kept)
    assert len(lifted) == 1
    assert gr.multiterminal_solution_ok(mti, lifted)


def test_triangle_reduction_needs_all_edges():
    mti = gr.MultiterminalInstance(graph=triangle(), terminals=["a", "b", "c"])
    red = gr.reduce_pmc_to_subdivision(mti)
    mass, kept = brute_min_group_mass(red.instance)
    assert mass == 6
    assert gr.lift_subdivision_solution(red.back, kept) == [0, 1, 2]


def test_cycle_reduction_two_terminals():
    g = cycle(4)
    mti = gr.MultiterminalInstance(graph=g, terminals=[0, 2])
    red = gr.reduce_pmc_to_subdivision(mti)
    mass, kept = brute_min_group_mass(red.instance)
    assert mass == 4  # the source optimum deletes two opposite edges
    lifted = gr.lift_subdivision_solution(red.back, kept)
    assert len(lifted) == 2
    assert gr.multiterminal_solution_ok(mti, lifted)


def test_lift_drops_incomplete_groups():
    back = gr.SolutionBackMap(pairing={0: [0, 1], 1: [2, 3, 4]})
    assert gr.lift_subdivision_solution(back, [0, 1, 2, 3]) == [0]
    assert gr.lift_subdivision_solution(back, [0, 1, 2, 3, 4]) == [0, 1]
    assert gr.lift_subdivision_solution(back, []) == []


def test_reduction_rejects_weights():
    mti = gr.MultiterminalInstance(graph=path3(), terminals=["a", "c"], weights={0: 2})
    with pytest.raises(gr.StructureError, match="unweighted"):
        gr.reduce_pmc_to_subdivision(mti)


def test_reduction_target_is_simple_even_with_loops_in_dual():
    # bridge edges give dual loops; the subdivided dual must still be simple
    mti = gr.MultiterminalInstance(graph=path3(), terminals=["a", "b"])
    red = gr.reduce_pmc_to_subdivision(mti)
    assert red.instance.graph.is_simple()
    assert red.dual.edges == [(0, 0), (0, 0)]


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def test_graph_round_trip():
    for g in (triangle(), k4(), path3()):
        h = gr.PlanarEmbeddedGraph.from_dict(g.to_dict())
        assert [tuple(e) for e in h.edges] == [tuple(e) for e in g.edges]
        assert h.facial_walks() == g.facial_walks()


def test_instance_round_trips():
    mti = gr.MultiterminalInstance(graph=triangle(), terminals=["a", "c"], weights={1: 3})
    again = gr.MultiterminalInstance.from_dict(mti.to_dict())
    assert again.terminals == ["a", "c"]
    assert again.weight(1) == 3 and again.weight(0) == 1

    red = gr.reduce_pmc_to_subdivision(
        gr.MultiterminalInstance(graph=triangle(), terminals=["a", "b"])
    )
    inst2 = gr.SubdivisionInstance.from_dict(red.instance.to_dict())
    assert inst2.terminals == red.instance.terminals
    assert inst2.groups == red.instance.groups

    back = gr.SolutionBackMap.from_dict(red.back.to_dict())
    assert back.pairing == red.back.pairing


def test_subdivision_instance_validation():
    g = triangle()
    with pytest.raises(gr.StructureError, match="share a face"):
        gr.SubdivisionInstance(graph=g, terminals={"p": 0, "q": 0}).validate()
    with pytest.raises(gr.StructureError, match="unknown face"):
        gr.SubdivisionInstance(graph=g, terminals={"p": 9}).validate()
