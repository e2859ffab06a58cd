"""SVG output: structure, determinism, golden files."""

from fractions import Fraction
from pathlib import Path

from disklab.arrangements import DiskInstance
from disklab.gadgets import build_weighted_edge_instance
from disklab.geometry import Disk
from disklab.graphs import PlanarEmbeddedGraph
from disklab.gridembed import grid_embed
from disklab.render import svg_for_embedding, svg_for_instance

GOLDEN = Path(__file__).parent / "golden"


def ring_instance():
    return DiskInstance(
        radius=Fraction(3, 2),
        disks=[Disk(Fraction(2), Fraction(0), ("ring", 0)),
               Disk(Fraction(0), Fraction(2), ("ring", 0)),
               Disk(Fraction(-2), Fraction(0), ("ring", 0)),
               Disk(Fraction(0), Fraction(-2), ("ring", 0))],
        points={"in": (Fraction(0), Fraction(0)), "out": (Fraction(5), Fraction(5))},
    )


def test_empty_instance_is_valid_svg():
    svg = svg_for_instance(DiskInstance(radius=Fraction(1), disks=[]))
    assert svg.startswith("<svg ") and svg.endswith("</svg>\n")
    assert "<circle" not in svg


def test_ring_golden():
    assert svg_for_instance(ring_instance()) == (GOLDEN / "ring4.svg").read_text()


def test_weight5_golden_has_five_lanes():
    svg = svg_for_instance(build_weighted_edge_instance(5).instance)
    assert svg == (GOLDEN / "weight5.svg").read_text()
    # one fill color per lane plus one for the two terminal disks
    fills = {part.split('"')[0] for part in svg.split('fill="')[1:] if part[0] == "#"}
    assert len(fills) >= 6


def test_embedding_golden():
    tri = PlanarEmbeddedGraph.from_edge_rotation(
        [0, 1, 2], [(0, 1), (1, 2), (2, 0)], {0: [0, 2], 1: [1, 0], 2: [2, 1]})
    assert svg_for_embedding(grid_embed(tri)) == (
        GOLDEN / "triangle_embedding.svg").read_text()


def test_rebuild_is_byte_identical():
    a = svg_for_instance(build_weighted_edge_instance(3).instance, guides=True)
    b = svg_for_instance(build_weighted_edge_instance(3).instance, guides=True)
    assert a == b


def test_terminal_disks_get_heavy_outline():
    inst = ring_instance()
    inst.meta["terminal_disks"] = [0, 2]
    svg = svg_for_instance(inst)
    assert svg.count('stroke-width="2.4"') == 2


def test_circle_count_matches_disks():
    svg = svg_for_instance(ring_instance())
    assert svg.count("<circle") == 4
    assert svg.count("<line") == 4  # two crosses


def test_guides_draw_grid_lines():
    bare = svg_for_instance(ring_instance())
    gridded = svg_for_instance(ring_instance(), guides=True)
    assert gridded.count("<line") > bare.count("<line")


def test_y_axis_points_up():
    inst = DiskInstance(
        radius=Fraction(1),
        disks=[Disk(Fraction(0), Fraction(0)), Disk(Fraction(0), Fraction(5))],
    )
    svg = svg_for_instance(inst)
    rows = [line for line in svg.splitlines() if line.startswith("<circle")]
    cy = [float(line.split('cy="')[1].split('"')[0]) for line in rows]
    assert cy[1] < cy[0]  # larger scene y renders higher (smaller svg y)


def test_point_labels_present():
    svg = svg_for_instance(ring_instance())
    assert ">in</text>" in svg and ">out</text>" in svg
