"""Acceptance gates: one test per numbered criterion.

Each test function is the pass/fail line for its criterion (``pytest -v``
prints one PASSED/FAILED row per criterion, in order).  Corpus seeds are
fixed constants so every run exercises byte-identical instances.  Criteria
with a wall-clock cap assert it with ``time.monotonic`` around the
measured work.
"""

import json
import random
import time
from fractions import Fraction

import networkx as nx
import pytest

from floodfill import (
    flood_fill_separated,
    flood_fill_summary,
    random_robust_centers,
    random_robust_points,
)

from disklab import arrangements as ar
from disklab import pipeline as pl
from disklab.corpus import seeded_multiterminal_instances, seeded_planar_graphs
from disklab.gadgets import (
    BUNDLE_COPIES,
    build_acc_instance,
    build_isolation_instance,
    build_udmc_instance,
    build_weighted_edge_instance,
    lift_vertex_set_to_acc,
)
from disklab.geometry import (
    Disk,
    check_constraints,
    compute_params,
    dist_sq,
    min_grid_angle_exceeds,
    min_grid_line_point_distance_sq,
)
from disklab.graphs import (
    MultiterminalInstance,
    PlanarEmbeddedGraph,
    SubdivisionInstance,
    reduce_pmc_to_subdivision,
)
from disklab.gridembed import GridEmbedding
from disklab.solvers import (
    brute_min_acc,
    brute_min_fvs,
    brute_min_multiterminal,
    brute_min_subdivision,
    min_terminal_pair_cut,
)

ONE = Fraction(1)

SOUND_CORPUS_SEED = 20260814   # criterion 4
CUT_CORPUS_SEED = 31415        # criterion 5
ORACLE_SEED = 271828           # criteria 9 and 10


# ---------------------------------------------------------------------------
# shared corpora (module-scoped so the full run builds each exactly once)
# ---------------------------------------------------------------------------

@pytest.fixture(scope="module")
def sound_corpus():
    """Twenty seeded planar graphs (3..8 vertices, drawn on grids of size at
    most 3) synthesized as sound-mode fence instances, every face marked."""
    embs = seeded_planar_graphs(
        SOUND_CORPUS_SEED, 20, min_vertices=3, max_vertices=8, max_grid=3
    )
    built = []
    for emb in embs:
        g = emb.graph
        sub = SubdivisionInstance(
            graph=g, terminals={f"p{f}": f for f in range(g.face_count())}
        )
        sub.validate()
        art = build_isolation_instance(sub, emb, mode="sound")
        built.append((emb, art))
    return built


@pytest.fixture(scope="module")
def toy_fence_corpus(tmp_path_factory):
    """Five toy-mode fence reductions over the same two-terminal source with
    shrinking disk radius, run end to end through the file-based verbs."""
    base = tmp_path_factory.mktemp("fences")
    g = PlanarEmbeddedGraph.from_edge_rotation(
        ["u", "v"], [("u", "v"), ("u", "v")], {"u": [0, 1], "v": [1, 0]}
    )
    src = MultiterminalInstance(graph=g, terminals=["u", "v"]).to_dict()
    dirs = []
    for idx, rs in enumerate(["1/10", "1/12", "1/14", "1/16", "1/18"]):
        d = base / f"radius{idx}"
        d.mkdir()
        (d / "src.json").write_text(json.dumps(src))
        code, lines = pl.cli_reduce(
            "pmc->subdivision", str(d / "src.json"), str(d / "mid.json")
        )
        assert code == 0, lines
        code, lines = pl.cli_reduce(
            "subdivision->isolation", str(d / "mid.json"), str(d / "iso.json"),
            mode="toy", overrides={"r": Fraction(rs)},
        )
        assert code == 0, lines
        code, lines = pl.cli_solve("isolation", str(d / "iso.json"), str(d / "sol.json"))
        assert code == 0, lines
        dirs.append(d)
    return dirs


@pytest.fixture(scope="module")
def oracle_corpus():
    """A thousand robust random disk layouts (at most 10 disks each) with a
    random kept-subset and two robust query points, plus the exact
    separation verdicts."""
    rng = random.Random(ORACLE_SEED)
    out = []
    for _ in range(1000):
        centers = random_robust_centers(rng, n_lo=1, n_hi=10, span=20)
        chosen = [i for i in range(len(centers)) if rng.random() < 0.75]
        p, q = random_robust_points(rng, centers, ONE, span=20)
        inst = ar.DiskInstance(
            radius=ONE,
            disks=[Disk(c[0], c[1]) for c in centers],
            points={"a": p, "b": q},
        )
        report = ar.verify_isolation(inst, chosen)
        out.append((centers, chosen, inst, report))
    return out


# ---------------------------------------------------------------------------
# criteria
# ---------------------------------------------------------------------------

def test_criterion_01_min_grid_line_point_distance_exact():
    t0 = time.monotonic()
    for n in range(2, 9):
        value, (p, q, t) = min_grid_line_point_distance_sq(n)
        assert value == Fraction(1, 2 * n * n - 2 * n + 1)
        # the witness must be a real configuration attaining the value
        ax, ay = q[0] - p[0], q[1] - p[1]
        cross = ax * (t[1] - p[1]) - ay * (t[0] - p[0])
        assert cross != 0
        assert Fraction(cross * cross, ax * ax + ay * ay) == value
        for pt in (p, q, t):
            assert 0 <= pt[0] <= n and 0 <= pt[1] <= n
    assert time.monotonic() - t0 < 10.0


def test_criterion_02_min_grid_angle_above_threshold():
    t0 = time.monotonic()
    for n in range(2, 9):
        res = min_grid_angle_exceeds(n)
        t = Fraction(1, 6 * n * n)
        assert res.threshold_tan == 2 * t / (1 - t * t)
        assert res.ok and res.min_tan is not None
        assert res.min_tan > res.threshold_tan
        apex, u, v = res.witness
        cross = abs(u[0] * v[1] - u[1] * v[0])
        dot = abs(u[0] * v[0] + u[1] * v[1])
        assert dot != 0 and Fraction(cross, dot) == res.min_tan
        assert 0 <= apex[0] <= n and 0 <= apex[1] <= n
    assert min_grid_angle_exceeds(2).min_tan == Fraction(1, 3)
    assert time.monotonic() - t0 < 60.0


def test_criterion_03_sound_parameters_feasible_to_n64():
    t0 = time.monotonic()
    for n in range(2, 65):
        p = compute_params(n, mode="sound")
        assert p.s == 6 * p.r * n * n
        rep = check_constraints(p)
        assert rep.ok, (n, rep)
    assert time.monotonic() - t0 < 5.0


def test_criterion_04_sound_corpus_gadget_contacts(sound_corpus):
    assert len(sound_corpus) == 20
    grids = set()
    for emb, art in sound_corpus:
        g = emb.graph
        grids.add(emb.grid_size)
        assert 3 <= len(g.vertices) <= 8
        inst = art.instance
        tags = [d.tag for d in inst.disks]
        ends = {eid: (str(u), str(w)) for eid, (u, w) in enumerate(g.edges)}
        udg = ar.unit_disk_graph(inst.centers(), inst.radius)
        ring_contacts = {}
        for i, j in udg.edges:
            ti, tj = tags[i], tags[j]
            if ti[:2] == tj[:2]:
                continue  # same wall or same ring
            kinds = {ti[0], tj[0]}
            # the only permitted cross-gadget contact: a wall touching the
            # rings of its own endpoints
            assert kinds == {"wall", "ring"}, f"gadget overlap: {ti} ~ {tj}"
            wall_tag, ring_tag = (ti, tj) if ti[0] == "wall" else (tj, ti)
            assert ring_tag[1] in ends[wall_tag[1]], f"gadget overlap: {ti} ~ {tj}"
            wall_disk = i if ti[0] == "wall" else j
            ring_contacts[wall_disk] = ring_contacts.get(wall_disk, 0) + 1
        for eid, ids in art.wall_ids.items():
            for end_disk in (ids[0], ids[-1]):
                assert 1 <= ring_contacts.get(end_disk, 0) <= 3, (eid, end_disk)
    assert grids == {2, 3}  # the seed covers both parameter scales


def test_criterion_05_subdivision_optimum_doubles_cut_optimum():
    corpus = seeded_multiterminal_instances(CUT_CORPUS_SEED, 12)
    assert len(corpus) >= 10
    for mti in corpus:
        mc = brute_min_multiterminal(mti)
        red = reduce_pmc_to_subdivision(mti)
        sd = brute_min_subdivision(red.instance)
        assert sd.optimum == 2 * mc.optimum, mti.to_dict()


def test_criterion_06_toy_fence_size_law_and_exact_lift(toy_fence_corpus):
    assert len(toy_fence_corpus) >= 5
    per_wall_counts = []
    for d in toy_fence_corpus:
        inst = ar.DiskInstance.from_dict(json.loads((d / "iso.json").read_text()))
        c_edge = int(inst.meta["c_edge"])
        assert c_edge <= 10
        per_wall_counts.append(c_edge)
        mid = SubdivisionInstance.from_dict(json.loads((d / "mid.json").read_text()))
        b = brute_min_subdivision(mid).optimum
        sol = json.loads((d / "sol.json").read_text())
        k1 = int(sol["optimum"])
        assert b * c_edge <= k1 < (b + 1) * c_edge, (b, c_edge, k1)
        code, lines = pl.cli_lift(
            record_path=str(d / "iso.json.record.json"),
            solution_path=str(d / "sol.json"),
            source_path=str(d / "mid.json"),
            target_path=str(d / "iso.json"),
            out_path=str(d / "lift.json"),
        )
        assert code == 0, lines
        lifted = json.loads((d / "lift.json").read_text())
        assert len(lifted["candidate"]) == b
    assert len(set(per_wall_counts)) >= 3  # the radius sweep varies the count


def test_criterion_07_acyclic_complement_matches_vertex_deletion():
    triangle = (["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")],
                {"a": (0, 0), "b": (1, 0), "c": (0, 1)}, 1)
    two_triangles = (
        ["a", "b", "c", "d", "e", "f"],
        [("a", "b"), ("b", "c"), ("c", "a"), ("d", "e"), ("e", "f"), ("f", "d")],
        {"a": (0, 0), "b": (1, 0), "c": (0, 1),
         "d": (4, 0), "e": (5, 0), "f": (4, 1)}, 2)
    four_cycle = (["a", "b", "c", "d"],
                  [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")],
                  {"a": (0, 0), "b": (1, 0), "c": (1, 1), "d": (0, 1)}, 1)
    for vertices, edges, coords, expect in (triangle, two_triangles, four_cycle):
        art = build_acc_instance(vertices, edges, coords)
        acc = brute_min_acc(art.instance)
        fvs = brute_min_fvs(vertices, edges)
        assert acc.optimum == expect
        assert fvs.optimum == expect
        removed = lift_vertex_set_to_acc(art, fvs.witness)
        rep = ar.verify_acc(art.instance, removed)
        assert rep.ok
        assert rep.remaining_regions.bounded_complement_regions == 0


def test_criterion_08_weighted_lane_cuts_and_bundle_flow():
    t0 = time.monotonic()
    for w in range(1, 6):
        art = build_weighted_edge_instance(w)
        cert = min_terminal_pair_cut(art.instance)
        assert cert.optimum == w
        # removing the witness edge pairs really disconnects the terminals
        udg = ar.unit_disk_graph(art.instance.centers(), art.instance.radius)
        nxg = nx.Graph(udg.edges)
        nxg.add_nodes_from(range(udg.n))
        nxg.remove_edges_from([tuple(e) for e in cert.witness])
        s, t = art.instance.meta["terminal_disks"]
        assert not nx.has_path(nxg, s, t)
    g = PlanarEmbeddedGraph.from_edge_rotation(["v"], [], {"v": []})
    mti = MultiterminalInstance(graph=g, terminals=["v"], weights={})
    emb = GridEmbedding(graph=g, coords={"v": (0, 0)}, grid_size=1)
    art = build_udmc_instance(mti, emb)
    udg = ar.unit_disk_graph(art.instance.centers(), art.instance.radius)
    nxg = nx.Graph(udg.edges)
    hub = art.hub_of_vertex["v"]
    assert BUNDLE_COPIES >= 16
    for probe in (art.sigma_ids["v"][0], art.sigma_ids["v"][5]):
        assert nx.edge_connectivity(nxg, hub, probe) >= 16
    assert time.monotonic() - t0 < 60.0


def test_criterion_09_raster_oracle_agreement(oracle_corpus):
    assert len(oracle_corpus) == 1000
    disagreements = 0
    for centers, chosen, inst, report in oracle_corpus:
        exact = ar.complement_regions(centers, ONE)
        occ, holes = flood_fill_summary(centers, ONE)
        if (occ, holes) != (exact.union_components,
                            exact.bounded_complement_regions):
            disagreements += 1
        raster_sep = flood_fill_separated(
            [centers[i] for i in chosen], ONE, inst.points["a"], inst.points["b"]
        )
        if report.pair_results[("a", "b")] != raster_sep:
            disagreements += 1
    assert disagreements == 0


def test_criterion_10_accepted_certificates_carry_udg_cycles(
    toy_fence_corpus, oracle_corpus
):
    accepted = []
    for d in toy_fence_corpus:
        inst = ar.DiskInstance.from_dict(json.loads((d / "iso.json").read_text()))
        sol = json.loads((d / "sol.json").read_text())
        report = ar.verify_isolation(inst, sol["witness"])
        assert report.ok
        accepted.append((inst, report))
    accepted.extend(
        (inst, report) for _, _, inst, report in oracle_corpus if report.ok
    )
    assert len(accepted) >= 5
    cycles_checked = 0
    for inst, report in accepted:
        centers = inst.centers()
        four_r2 = 4 * inst.radius ** 2
        chosen = set(report.chosen)
        for pair, separated in report.pair_results.items():
            assert separated
            assert pair in report.witnesses, f"no cycle witness for {pair}"
            cyc = report.witnesses[pair]
            assert len(cyc) >= 3
            assert len(set(cyc)) == len(cyc)
            assert set(cyc) <= chosen
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                assert dist_sq(centers[a], centers[b]) <= four_r2
            cycles_checked += 1
    assert cycles_checked >= len(accepted)
