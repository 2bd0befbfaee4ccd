import pytest

import virtgen


def test_group_basics():
    g = virtgen.Group("S:3")
    assert g.order == 6
    assert len(g.closure([2])) == 3
    assert g.is_soluble()
    assert virtgen.Group("Q:8").frattini() == sorted(virtgen.Group("Q:8").frattini())
    assert len(virtgen.Group("Q:8").frattini()) == 2


def test_adjacency():
    g = virtgen.Group("Q:8")
    x, y = 1, 2
    assert g.adjacent(x, y)
    assert not g.adjacent(x, g.mul(x, x))
    assert g.adjacent(x, y, "generating")


def test_graph_report():
    assert virtgen.graph_report("Dic:3")["diameter"] == 3
    assert len(virtgen.graph_report("C:4")["isolated"]) == 4


def test_tarski_and_census():
    t = virtgen.tarski_table("S:4")
    assert (t["d"], t["m"], t["gap_free"]) == (2, 3, True)
    assert virtgen.census(2, 50, 1)["components"] == 2
    assert virtgen.generator_pairs(1)["pass"]
    assert not virtgen.generator_pairs(1, "paper")["pass"]


def test_separation():
    assert virtgen.separation([1.5, 2, 3], 4, doubling=30)["all_separated"]
    assert not virtgen.separation([1.5, 2, 3], 4, doubling=12)["all_separated"]


def test_errors():
    with pytest.raises(virtgen.ParseError):
        virtgen.Group("Z:3")
    with pytest.raises(virtgen.PreconditionError):
        virtgen.Group("S:3").adjacent(1, 1, "generating")
    with pytest.raises(virtgen.VirtgenError):
        virtgen.verify("no-such-suite")
