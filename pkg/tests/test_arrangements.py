"""Disk-union topology, separation verdicts, cut/acyclicity verifiers, and
segment arrangements."""

import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from disklab import arrangements as ar
from disklab.geometry import Disk

from floodfill import flood_fill_summary, random_robust_centers

ONE = F(1)


def ring4(r=F(3, 2)):
    centers = [(F(2), F(0)), (F(0), F(2)), (F(-2), F(0)), (F(0), F(-2))]
    return ar.DiskInstance(
        radius=r,
        disks=[Disk(x, y, ("ring", i)) for i, (x, y) in enumerate(centers)],
        points={"in": (F(0), F(0)), "out": (F(10), F(10))},
    )


# ---------------------------------------------------------------------------
# intersection graph
# ---------------------------------------------------------------------------

def test_unit_disk_graph_tangency_counts():
    centers = [(F(0), F(0)), (F(2), F(0)), (F(5), F(0))]
    udg = ar.unit_disk_graph(centers, ONE)
    assert udg.edges == [(0, 1)]
    assert udg.adj[0] == [1] and udg.adj[2] == []


def test_unit_disk_graph_empty():
    udg = ar.unit_disk_graph([], ONE)
    assert udg.n == 0 and udg.edges == []


@given(st.integers(min_value=0, max_value=2**20))
@settings(max_examples=30)
def test_unit_disk_graph_matches_quadratic_scan(seed):
    rng = random.Random(seed)
    centers = [
        (F(rng.randint(-20, 20), rng.randint(1, 4)), F(rng.randint(-20, 20), rng.randint(1, 4)))
        for _ in range(rng.randint(0, 18))
    ]
    udg = ar.unit_disk_graph(centers, ONE)
    brute = [
        (i, j)
        for i in range(len(centers))
        for j in range(i + 1, len(centers))
        if ar.dist_sq(centers[i], centers[j]) <= 4
    ]
    assert udg.edges == sorted(brute)


def test_components():
    centers = [(F(0), F(0)), (F(1), F(0)), (F(10), F(0)), (F(11), F(0))]
    comp = ar.udg_components(ar.unit_disk_graph(centers, ONE))
    assert comp[0] == comp[1] != comp[2] == comp[3]


# ---------------------------------------------------------------------------
# complement topology
# ---------------------------------------------------------------------------

def test_filled_trio_has_no_hole():
    centers = [(F(0), F(0)), (F(2), F(0)), (F(1), F(1))]
    rs = ar.complement_regions(centers, ONE)
    assert rs.union_components == 1
    assert rs.bounded_complement_regions == 0
    assert rs.nerve_triangles == 1


def test_open_trio_has_one_hole():
    centers = [(F(0), F(0)), (F(2), F(0)), (F(1), F(17, 10))]
    rs = ar.complement_regions(centers, ONE)
    assert rs.union_components == 1
    assert rs.bounded_complement_regions == 1
    assert rs.nerve_triangles == 0


def test_two_separate_rings_two_holes():
    ring = [(F(2), F(0)), (F(0), F(2)), (F(-2), F(0)), (F(0), F(-2))]
    far = [(x + 20, y) for x, y in ring]
    rs = ar.complement_regions(ring + far, F(3, 2))
    assert rs.union_components == 2
    assert rs.bounded_complement_regions == 2


def test_duplicate_disks_change_nothing():
    centers = [(F(0), F(0)), (F(2), F(0)), (F(1), F(17, 10))]
    rs1 = ar.complement_regions(centers, ONE)
    rs2 = ar.complement_regions(centers + centers[:1], ONE)
    assert rs1.union_components == rs2.union_components
    assert rs1.bounded_complement_regions == rs2.bounded_complement_regions


def test_single_disks_and_chains():
    assert ar.complement_regions([(F(0), F(0))], ONE).bounded_complement_regions == 0
    chain = [(F(i), F(0)) for i in range(8)]
    rs = ar.complement_regions(chain, ONE)
    assert rs.union_components == 1
    assert rs.bounded_complement_regions == 0


# ---------------------------------------------------------------------------
# separation
# ---------------------------------------------------------------------------

def test_ring_separates_inside_from_outside():
    inst = ring4()
    centers = inst.centers()
    udg = ar.unit_disk_graph(centers, inst.radius)
    res = ar.separation(centers, inst.radius, udg, (F(0), F(0)), (F(10), F(10)))
    assert res.separated
    cyc = res.witness_cycle
    assert cyc is not None and len(cyc) >= 3
    for a, b in zip(cyc, cyc[1:] + cyc[:1]):
        assert ar.dist_sq(centers[a], centers[b]) <= 4 * inst.radius ** 2


def test_no_separation_without_cycle():
    inst = ring4(r=F(13, 10))  # gaps between consecutive disks
    centers = inst.centers()
    udg = ar.unit_disk_graph(centers, inst.radius)
    res = ar.separation(centers, inst.radius, udg, (F(0), F(0)), (F(10), F(10)))
    assert not res.separated and res.witness_cycle is None


def test_separation_is_symmetric_and_reflexive_false():
    inst = ring4()
    centers = inst.centers()
    udg = ar.unit_disk_graph(centers, inst.radius)
    p, q = (F(0), F(0)), (F(10), F(10))
    assert ar.separation(centers, inst.radius, udg, p, q).separated
    assert ar.separation(centers, inst.radius, udg, q, p).separated
    assert not ar.separation(centers, inst.radius, udg, q, q).separated


def test_separation_recovers_from_degenerate_probes():
    inst = ring4()
    centers = inst.centers()
    udg = ar.unit_disk_graph(centers, inst.radius)
    # the straight probe passes through a disk center and two graph vertices
    res = ar.separation(centers, inst.radius, udg, (F(0), F(0)), (F(4), F(0)))
    assert res.separated


def test_far_disks_do_not_affect_separation():
    inst = ring4()
    centers = inst.centers() + [(F(50), F(50)), (F(53), F(50))]
    udg = ar.unit_disk_graph(centers, inst.radius)
    res = ar.separation(centers, inst.radius, udg, (F(0), F(0)), (F(10), F(10)))
    assert res.separated


# ---------------------------------------------------------------------------
# verifiers
# ---------------------------------------------------------------------------

def test_verify_isolation_accepts_full_ring():
    rep = ar.verify_isolation(ring4(), [0, 1, 2, 3])
    assert rep.ok
    assert rep.pair_results[("in", "out")]
    assert len(rep.witnesses[("in", "out")]) == 4
    assert any("separated" in line for line in rep.lines())


def test_verify_isolation_rejects_partial_ring():
    rep = ar.verify_isolation(ring4(), [0, 1, 2])
    assert not rep.ok


def test_verify_isolation_budget_and_ids():
    inst = ring4()
    rep = ar.verify_isolation(inst, [0, 1, 2, 3], budget=3)
    assert not rep.ok  # separates, but over budget
    assert all(rep.pair_results.values())
    assert any("budget" in m for m in rep.messages)
    with pytest.raises(ar.VerificationError, match="out-of-range"):
        ar.verify_isolation(inst, [0, 9])
    assert ar.verify_isolation(inst, [0, 1, 2, 3], budget=4).ok


def test_verify_isolation_rejects_covered_point():
    inst = ring4()
    inst.points["bad"] = (F(2), F(0))  # the center of disk 0
    with pytest.raises(ar.VerificationError, match="covered"):
        ar.verify_isolation(inst, [0, 1, 2, 3])


def test_verify_isolation_needs_two_points():
    inst = ring4()
    inst.points = {"only": (F(0), F(0))}
    with pytest.raises(ar.VerificationError, match="two marked points"):
        ar.verify_isolation(inst, [0])


def test_verify_acc():
    centers = [(F(0), F(0)), (F(2), F(0)), (F(1), F(17, 10))]
    inst = ar.DiskInstance(radius=ONE, disks=[Disk(x, y) for x, y in centers])
    assert not ar.verify_acc(inst, []).ok
    rep = ar.verify_acc(inst, [1])
    assert rep.ok and rep.remaining_regions.bounded_complement_regions == 0
    assert any("bounded complement" in line for line in rep.lines())


def test_verify_multiterminal_cut():
    chain = [(F(2 * i), F(0)) for i in range(5)]
    inst = ar.DiskInstance(
        radius=ONE,
        disks=[Disk(x, y) for x, y in chain],
        meta={"kind": "udmc", "terminal_disks": [0, 4]},
    )
    assert ar.verify_multiterminal_cut(inst, [(2, 3)]).ok
    assert not ar.verify_multiterminal_cut(inst, []).ok
    rep = ar.verify_multiterminal_cut(inst, [(1, 2), (2, 3)], budget=1)
    assert not rep.ok and any("budget" in m for m in rep.reasons)
    with pytest.raises(ar.VerificationError, match="not an intersection edge"):
        ar.verify_multiterminal_cut(inst, [(0, 4)])
    with pytest.raises(ar.VerificationError, match="not an edge"):
        ar.verify_multiterminal_cut(inst, [(2, 2)])
    inst.meta["terminal_disks"] = [0]
    with pytest.raises(ar.VerificationError, match="two terminal"):
        ar.verify_multiterminal_cut(inst, [(2, 3)])


def test_instance_round_trip_and_validation():
    inst = ring4()
    inst.meta = {"kind": "isolation", "budget": 4}
    again = ar.DiskInstance.from_dict(inst.to_dict())
    assert again.radius == inst.radius
    assert again.disks == inst.disks
    assert again.points == inst.points
    assert again.meta == inst.meta

    bad = inst.to_dict()
    bad["radius"] = "-1/2"
    with pytest.raises(ar.VerificationError, match="radius"):
        ar.DiskInstance.from_dict(bad)


# ---------------------------------------------------------------------------
# agreement with the raster oracle
# ---------------------------------------------------------------------------

def test_flood_fill_agreement_sample():
    rng = random.Random(987123)
    for _ in range(40):
        centers = random_robust_centers(rng)
        exact = ar.complement_regions(centers, ONE)
        occ, holes = flood_fill_summary(centers, ONE)
        assert occ == exact.union_components
        assert holes == exact.bounded_complement_regions


# ---------------------------------------------------------------------------
# segment arrangements
# ---------------------------------------------------------------------------

def seg(ax, ay, bx, by):
    return ((F(ax), F(ay)), (F(bx), F(by)))


def test_crossing_pair_has_single_face():
    s = ar.build_segment_arrangement([seg(0, 0, 2, 2), seg(0, 2, 2, 0)])
    assert (s.vertices, s.edges, s.faces, s.components) == (5, 4, 1, 1)


def test_triangle_cells():
    s = ar.build_segment_arrangement(
        [seg(0, 0, 2, 0), seg(2, 0, 1, 1), seg(1, 1, 0, 0)]
    )
    assert (s.vertices, s.edges, s.faces, s.components) == (3, 3, 2, 1)


def test_collinear_overlap_is_decomposed():
    s = ar.build_segment_arrangement([seg(0, 0, 4, 0), seg(2, 0, 6, 0)])
    assert (s.vertices, s.edges, s.faces, s.components) == (4, 3, 1, 1)


def test_tic_tac_toe_grid():
    s = ar.build_segment_arrangement(
        [seg(0, 1, 3, 1), seg(0, 2, 3, 2), seg(1, 0, 1, 3), seg(2, 0, 2, 3)]
    )
    assert s.components == 1
    assert s.vertices == 12 and s.edges == 12
    assert s.faces == 2  # one bounded cell plus the outer face


def test_disjoint_segments():
    s = ar.build_segment_arrangement([seg(0, 0, 1, 0), seg(5, 5, 6, 5)])
    assert (s.vertices, s.edges, s.faces, s.components) == (4, 2, 1, 2)


def test_degenerate_segments_dropped():
    s = ar.build_segment_arrangement([seg(0, 0, 0, 0), seg(1, 1, 2, 2)])
    assert (s.vertices, s.edges) == (2, 1)
