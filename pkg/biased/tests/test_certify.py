# biased/tests/test_certify.py
import hypothesis
import pytest
from hypothesis import given, strategies as st

from biased.certify import (
    ReroutingCertificate,
    ReroutingStep,
    apply_rerouting,
    rerouting_moves,
    search_certificate,
    shelling_certificate,
    validate,
)
from biased.constructions import build_2Cn, build_coloured_planar, build_F, build_H, identify
from biased.exceptions import ArcMismatchError, SubwalkNotPathError, SubwalkNotPresentError
from biased.graphs import BACKWARD, FORWARD, ClosedWalk, Multigraph, cycle_walk, enumerate_cycles
from biased.grouplab import label_2Cn, walk_value

from .helpers import k4, ordinary

TRIANGLE = Multigraph.build(range(3), [(0, 0, 1), (1, 1, 2), (2, 2, 0)])
AROUND = ClosedWalk(((0, FORWARD), (1, FORWARD), (2, FORWARD)))
WHOLE = frozenset({0, 1, 2})


# -------------------------------
# REROUTING
# -------------------------------

def test_reroute_one_edge_of_a_triangle_across_itself():
    step = ReroutingStep(WHOLE, 0, 1, ((2, BACKWARD), (1, BACKWARD)))
    result = apply_rerouting(TRIANGLE, AROUND, step)
    assert result.steps == ((2, BACKWARD), (1, BACKWARD), (1, FORWARD), (2, FORWARD))


def test_rerouting_back_restores_the_walk():
    there = apply_rerouting(TRIANGLE, AROUND, ReroutingStep(WHOLE, 0, 1, ((2, BACKWARD), (1, BACKWARD))))
    back = apply_rerouting(TRIANGLE, there, ReroutingStep(WHOLE, 0, 2, ((0, FORWARD),)))
    assert back == AROUND


def test_reroute_a_two_cycle_across_a_balanced_triangle(two_c3):
    walk = cycle_walk(two_c3.graph, frozenset({0, 3}))
    step = ReroutingStep(frozenset({0, 1, 2}), 0, 1, ((2, BACKWARD), (1, BACKWARD)))
    result = apply_rerouting(two_c3.graph, walk, step)
    assert len(result) == 3
    assert result.steps == ((2, BACKWARD), (1, BACKWARD), (3, BACKWARD))
    assert result.is_simple(two_c3.graph)


def test_subwalk_out_of_range():
    with pytest.raises(SubwalkNotPresentError):
        apply_rerouting(TRIANGLE, AROUND, ReroutingStep(WHOLE, 5, 1, ((0, FORWARD),)))


def test_whole_cycle_cannot_be_replaced():
    with pytest.raises(SubwalkNotPathError):
        apply_rerouting(TRIANGLE, AROUND, ReroutingStep(WHOLE, 0, 3, ()))


def test_wrong_arc_is_rejected():
    with pytest.raises(ArcMismatchError):
        apply_rerouting(TRIANGLE, AROUND, ReroutingStep(WHOLE, 0, 1, ((1, FORWARD), (2, FORWARD))))


def test_moves_of_a_two_cycle(two_c3):
    walk = cycle_walk(two_c3.graph, frozenset({0, 3}))
    moves = rerouting_moves(two_c3, walk)
    assert {move.cycle for move in moves} == two_c3.balanced
    for move in moves:
        apply_rerouting(two_c3.graph, walk, move)


@hypothesis.settings(max_examples=60, deadline=None)
@given(st.integers(2, 5), st.data())
def test_rerouting_keeps_the_labelled_value(n, data):
    biased, labelling = build_2Cn(n), label_2Cn(n)
    cycles = sorted(enumerate_cycles(biased.graph), key=sorted)
    walk = cycle_walk(biased.graph, data.draw(st.sampled_from(cycles)))
    moves = rerouting_moves(biased, walk)
    hypothesis.assume(moves)
    step = data.draw(st.sampled_from(moves))
    result = apply_rerouting(biased.graph, walk, step)
    assert walk_value(labelling, result) == walk_value(labelling, walk.rotated(step.start))


# -------------------------------
# VALIDATION & SHELLING
# -------------------------------

def test_f4_shelling_is_valid(f4, f4_biased):
    certificate = shelling_certificate(f4)
    assert validate(f4_biased, certificate).ok
    assert len(certificate) <= len(f4.finite_faces())


@pytest.mark.parametrize("plane", [build_F(3), build_H(1)], ids=["F6", "H2"])
def test_shelling_is_valid(plane):
    assert validate(identify(plane), shelling_certificate(plane)).ok


# step counts: F8 14, coloured (4, 4) 30, coloured (5, 4) 34
@pytest.mark.parametrize(
    "plane",
    [build_F(4), build_coloured_planar(4, 4), build_coloured_planar(5, 4)],
    ids=["F8", "t4-l4", "t5-l4"],
)
def test_larger_shellings_are_valid_and_short(plane):
    certificate = shelling_certificate(plane)
    assert validate(identify(plane), certificate).ok
    assert len(certificate) <= len(plane.finite_faces())


def test_perturbed_walk_is_caught(f4, f4_biased):
    certificate = shelling_certificate(f4)
    walks = list(certificate.walks)
    walks[1] = walks[0]
    verdict = validate(f4_biased, ReroutingCertificate(tuple(walks), certificate.steps))
    assert not verdict
    assert verdict.index == 1


def test_unbalanced_last_walk_fails_the_terminal_check(two_c3):
    walk = cycle_walk(two_c3.graph, frozenset({0, 3}))
    verdict = validate(two_c3, ReroutingCertificate((walk,), ()))
    assert not verdict
    assert verdict.index == 0
    assert "last walk" in verdict.reason


def test_step_count_must_match(two_c3):
    walk = cycle_walk(two_c3.graph, frozenset({0, 3}))
    verdict = validate(two_c3, ReroutingCertificate((walk, walk), ()))
    assert verdict.index == 2


def test_balanced_start_is_refused(two_c3):
    walk = cycle_walk(two_c3.graph, frozenset({0, 1, 2}))
    verdict = validate(two_c3, ReroutingCertificate((walk,), ()))
    assert verdict.index == 0
    assert "first walk" in verdict.reason


# -------------------------------
# BOUNDED SEARCH
# -------------------------------

def test_search_finds_a_certificate_for_f4(f4_biased):
    certificate = search_certificate(f4_biased, 2 * len(f4_biased.graph.edges), 20)
    assert certificate is not None
    assert validate(f4_biased, certificate).ok


@pytest.mark.parametrize("n", [3, 5])
def test_doubled_cycles_have_no_certificate(n):
    assert search_certificate(build_2Cn(n)) is None


def test_ordinary_graph_has_no_certificate():
    assert search_certificate(ordinary(k4())) is None


def test_search_bounds_must_be_positive(two_c3):
    with pytest.raises(ValueError):
        search_certificate(two_c3, 0, 5)
