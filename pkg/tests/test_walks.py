"""The digraph walks, path diagrams, and the insertion bijection."""

import pytest

from opstats.opart import OrderedPartition, form, format_partition, iter_blocks, parse
from opstats.qnum import ordered_partition_count
from opstats.stats import coord
from opstats.walks import (
    EAST,
    NORTH,
    NULL,
    SOUTH_EAST,
    PathDiagram,
    choice_bound,
    enumerate_diagrams,
    enumerate_paths,
    is_path,
    parse_steps,
    path_vertices,
    psi,
    psi_inverse,
    step_properties,
    vertex_count,
    vertex_order,
)

# the ten-step worked example
STEPS = parse_steps("NNNOOESSES")
XI = (1, 2, 1, 2, 1, 1, 1, 2, 4, 1)
PARTITION = "6/3,5,7/1,4,10/9/2,8"


def test_vertex_order():
    assert vertex_order(2) == [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0)]
    assert vertex_count(2) == 6
    assert vertex_count(4) == 15
    for k in range(5):
        vs = vertex_order(k)
        assert vs[0] == (0, 0) and vs[-1] == (k, 0)
        assert len(vs) == vertex_count(k)


def test_paths_are_exactly_forms():
    # the forms of OP_n^k are exactly the walks (0,0) -> (k,0) of length n
    for n in range(0, 7):
        for k in range(0, n + 1):
            forms = set()
            for blocks in iter_blocks(n, k):
                forms.add(form(OrderedPartition._unchecked(blocks)))
            paths = {tuple(path_vertices(s)) for s in enumerate_paths(n, k)}
            assert forms == paths, (n, k)


def test_omega_2_2_matches_distinct_forms():
    forms = {form(pi_) for pi_ in map(OrderedPartition._unchecked, iter_blocks(2, 2))}
    assert len(list(enumerate_paths(2, 2))) == len(forms) == 1


def test_worked_example_path_is_valid():
    assert is_path(STEPS, 5)
    assert path_vertices(STEPS) == [
        (0, 0), (0, 1), (0, 2), (0, 3), (0, 3), (0, 3),
        (1, 3), (2, 2), (3, 1), (4, 1), (5, 0),
    ]
    assert not is_path(STEPS, 6)  # wrong depth
    assert not is_path(("S",), 1)  # south-east needs an opened block


def test_psi_worked_example():
    d = PathDiagram(STEPS, XI)
    assert format_partition(psi(d)) == PARTITION


def test_psi_all_east():
    n = 5
    steps = (EAST,) * n
    assert format_partition(psi(PathDiagram(steps, tuple(range(1, n + 1))))) == "1/2/3/4/5"
    assert format_partition(psi(PathDiagram(steps, (1,) * n))) == "5/4/3/2/1"


def test_psi_inverse_worked_example():
    d = psi_inverse(parse(PARTITION))
    assert d.steps == STEPS
    assert d.xi == XI


def test_psi_inverse_identity_partition():
    d = psi_inverse(parse("1/2/3/4"))
    assert d.steps == (EAST,) * 4
    assert d.xi == (1, 2, 3, 4)


def test_round_trip_both_ways():
    for n in range(1, 6):
        for k in range(1, n + 1):
            count = 0
            for blocks in iter_blocks(n, k):
                pi = OrderedPartition._unchecked(blocks)
                assert psi(psi_inverse(pi)) == pi
            for d in enumerate_diagrams(n, k):
                assert psi_inverse(psi(d)) == d
                count += 1
            assert count == ordered_partition_count(n, k)


def test_step_properties_worked_example():
    d = PathDiagram(STEPS, XI)
    pi = parse(PARTITION)
    props = step_properties(d, 9)  # East at (3,1)
    assert (props["p"], props["q"]) == (3, 1)
    assert props["lcs+rcs"] == 3 and props["lsb+rsb"] == 1
    assert props["los"] == 3 and props["ros"] == 1
    assert coord(pi, 9, "lcs") + coord(pi, 9, "rcs") == 3
    assert coord(pi, 9, "los") == 3 and coord(pi, 9, "ros") == 1
    # first step: everything 0 with xi_1 = 1
    props = step_properties(d, 1)
    assert (props["p"], props["q"]) == (0, 0)
    assert props["lcs+rcs"] == 0 and props["lsb+rsb"] == 0 and props["los"] == 0
    # a Null step at height 1 forces lsb = rsb = 0
    d2 = psi_inverse(parse("1,2,3"))
    assert d2.steps == (NORTH, NULL, SOUTH_EAST)
    props = step_properties(d2, 2)
    assert props["lsb"] == 0 and props["rsb"] == 0


def test_step_predictions_match_statistics():
    for n in range(1, 6):
        for k in range(1, n + 1):
            for blocks in iter_blocks(n, k):
                pi = OrderedPartition._unchecked(blocks)
                d = psi_inverse(pi)
                for i in range(1, n + 1):
                    pred = step_properties(d, i)
                    assert pred["lcs+rcs"] == coord(pi, i, "lcs") + coord(pi, i, "rcs")
                    assert pred["lsb+rsb"] == coord(pi, i, "lsb") + coord(pi, i, "rsb")
                    if d.steps[i - 1] in (NORTH, EAST):
                        assert pred["los"] == coord(pi, i, "los")
                        assert pred["ros"] == coord(pi, i, "ros")
                    else:
                        assert pred["lsb"] == coord(pi, i, "lsb")
                        assert pred["rsb"] == coord(pi, i, "rsb")


def test_choice_weighted_path_counts():
    for n in range(1, 7):
        for k in range(0, n + 1):
            total = 0
            for steps in enumerate_paths(n, k):
                vs = path_vertices(steps)
                w = 1
                for i, kind in enumerate(steps):
                    w *= choice_bound(vs[i], kind)
                total += w
            assert total == ordered_partition_count(n, k)


def test_diagram_validation():
    with pytest.raises(ValueError):
        PathDiagram((NORTH,), (1, 2))
    with pytest.raises(ValueError, match="outside"):
        PathDiagram((EAST, EAST), (1, 3)).validate()  # only 2 gaps at (1,0)
    with pytest.raises(ValueError, match="not a walk"):
        PathDiagram((SOUTH_EAST,), (1,)).validate(1)
    with pytest.raises(ValueError, match="bad step"):
        parse_steps("NXE")
