# biased/tests/test_matroids.py
from itertools import combinations

import hypothesis
import pytest
from hypothesis import given, strategies as st

from biased.bias import BiasedGraph
from biased.constructions import antichain_family, build_2Cn, build_coloured_planar, identify
from biased.exceptions import OverlapError, ResourceLimitError
from biased.graphs import Multigraph
from biased.matroids import (
    FRAME,
    KINDS,
    LIFT,
    CircuitMatroid,
    check_circuit_axioms,
    circuit_hyperplanes,
    closure,
    excluded_minor_check,
    frame_matroid,
    is_independent,
    is_uniform_rank_two,
    lift_matroid,
    matroid_antichain,
    matroid_isomorphic,
    matroid_minor,
    matroid_of,
    rank,
    u24_classes,
    u2m_representations,
    u2m_search,
    uniform_matroid,
    uniqueness_hypotheses,
)

from .helpers import parallel


def unbalanced(graph):
    return BiasedGraph(graph, frozenset())


def partitioning_pairs(matroid):
    """Disjoint pairs of circuit-hyperplanes whose union is the ground set."""
    ground = frozenset(matroid.ground)
    return {
        frozenset({a, b})
        for a, b in combinations(circuit_hyperplanes(matroid), 2)
        if not a & b and a | b == ground
    }


@pytest.fixture(scope="module")
def u24():
    return lift_matroid(unbalanced(parallel(4)))


# -------------------------------
# CONSTRUCTION
# -------------------------------

def test_four_parallel_unbalanced_edges_lift_to_u24(u24):
    assert u24.circuits == {frozenset(c) for c in combinations(range(4), 3)}
    assert u24.rank() == 2


def test_handcuff_is_a_lift_circuit(two_c3):
    assert frozenset({0, 3, 1, 4}) in lift_matroid(two_c3).circuits


def test_balanced_cycles_are_circuits(two_c3):
    for kind in (lift_matroid, frame_matroid):
        assert two_c3.balanced <= kind(two_c3).circuits


def test_frame_of_double_loop_graph_is_u24():
    graph = Multigraph.build([0, 1], [(0, 0, 1), (1, 0, 1), (2, 0, 0), (3, 1, 1)])
    assert is_uniform_rank_two(frame_matroid(unbalanced(graph)))


def test_disjoint_loops_need_a_path_in_the_frame_matroid():
    graph = Multigraph.build([0, 1], [(0, 0, 1), (1, 0, 0), (2, 1, 1)])
    biased = unbalanced(graph)
    assert frozenset({0, 1, 2}) in frame_matroid(biased).circuits
    assert frozenset({1, 2}) in lift_matroid(biased).circuits


def test_ranks_equal_vertex_count_with_an_unbalanced_cycle(two_c3):
    assert lift_matroid(two_c3).rank() == 3
    assert frame_matroid(two_c3).rank() == 3


def test_rank_closure_and_independence(u24):
    assert rank(u24, {0, 1, 2}) == 2
    assert closure(u24, {0, 1}) == {0, 1, 2, 3}
    assert is_independent(u24, {0, 1})
    assert not is_independent(u24, {0, 1, 2})


def test_uniform_matroid_passes_the_axioms():
    report = check_circuit_axioms(uniform_matroid(2, 4))
    assert report.ok and report.checked


def test_nested_circuits_fail_the_axioms():
    bad = CircuitMatroid((0, 1, 2), frozenset({frozenset({0, 1}), frozenset({0, 1, 2})}))
    assert not check_circuit_axioms(bad)


@pytest.mark.parametrize("kind", KINDS)
def test_axioms_are_checked_on_the_identified_f4(f4_biased, kind):
    report = check_circuit_axioms(matroid_of(f4_biased, kind))
    assert report.checked
    assert report.ok


@hypothesis.settings(max_examples=100, deadline=None)
@given(st.sets(st.integers(0, 7)), st.sets(st.integers(0, 7)))
def test_rank_is_monotone_and_submodular(a, b):
    matroid = lift_matroid(build_2Cn(4))
    assert rank(matroid, a) <= rank(matroid, a | b)
    assert rank(matroid, a) + rank(matroid, b) >= rank(matroid, a | b) + rank(matroid, a & b)
    assert rank(matroid, a) <= len(a)


def test_axiom_check_is_skipped_past_the_limit(settings):
    settings.BIASED_GRAPHS = {"MATROID_AXIOM_CHECK_LIMIT": 2}
    report = check_circuit_axioms(uniform_matroid(2, 4))
    assert report.ok and not report.checked


# -------------------------------
# HYPERPLANES & MINORS
# -------------------------------

def test_doubled_triangle_lift_has_two_circuit_hyperplanes(two_c3):
    hyperplanes = circuit_hyperplanes(lift_matroid(two_c3))
    assert hyperplanes == [frozenset({0, 1, 2}), frozenset({3, 4, 5})]


def test_doubled_square_frame_hyperplanes():
    biased = build_2Cn(4)
    hyperplanes = circuit_hyperplanes(frame_matroid(biased))
    # the two balanced squares partition E; the other four are tight handcuffs on adjacent digons
    assert biased.balanced <= set(hyperplanes)
    assert len(hyperplanes) == 6
    handcuffs = [h for h in hyperplanes if h not in biased.balanced]
    assert frozenset({0, 4, 1, 5}) in handcuffs


# hyperplane and partitioning-pair counts; n = 4 adds tight handcuffs on adjacent digons
HYPERPLANE_COUNTS = {
    (3, LIFT): (2, 1), (3, FRAME): (2, 1),
    (4, LIFT): (8, 4), (4, FRAME): (6, 3),
    (5, LIFT): (2, 1), (5, FRAME): (2, 1),
}


@pytest.mark.parametrize("n,kind", sorted(HYPERPLANE_COUNTS))
def test_balanced_cycles_partition_the_ground_set(n, kind):
    biased = build_2Cn(n)
    matroid = matroid_of(biased, kind)
    pairs = partitioning_pairs(matroid)
    assert (len(circuit_hyperplanes(matroid)), len(pairs)) == HYPERPLANE_COUNTS[n, kind]
    assert frozenset(biased.balanced) in pairs


@pytest.mark.parametrize("n,kind", sorted(HYPERPLANE_COUNTS))
def test_no_single_element_minor_keeps_a_partitioning_pair(n, kind):
    matroid = matroid_of(build_2Cn(n), kind)
    for e in matroid.ground:
        assert not partitioning_pairs(matroid_minor(matroid, {e}, ()))
        assert not partitioning_pairs(matroid_minor(matroid, (), {e}))


def test_u24_has_no_circuit_hyperplanes():
    assert circuit_hyperplanes(uniform_matroid(2, 4)) == []


def test_empty_minor_is_the_matroid(two_c3):
    matroid = lift_matroid(two_c3)
    assert matroid_minor(matroid) == matroid


def test_minor_sets_must_not_overlap(u24):
    with pytest.raises(OverlapError):
        matroid_minor(u24, {0}, {0})


def test_contracting_a_u24_element_leaves_a_rank_one_matroid(u24):
    minor = matroid_minor(u24, contract={0})
    assert minor.ground == (1, 2, 3)
    assert minor.rank() == 1


# -------------------------------
# ISOMORPHISM
# -------------------------------

def test_u24_built_two_ways_is_isomorphic(u24):
    assert matroid_isomorphic(u24, uniform_matroid(2, 4)) is not None


def test_u24_and_u25_differ_in_size(u24):
    assert matroid_isomorphic(u24, uniform_matroid(2, 5)) is None


def test_lift_and_frame_of_doubled_triangle_compare(two_c3):
    lift, frame = lift_matroid(two_c3), frame_matroid(two_c3)
    mapping = matroid_isomorphic(lift, frame)
    if mapping is not None:
        assert {frozenset(mapping[e] for e in c) for c in lift.circuits} == frame.circuits


def test_isomorphism_ground_limit(settings):
    settings.BIASED_GRAPHS = {"MATROID_ISO_MAX_GROUND": 3}
    with pytest.raises(ResourceLimitError):
        matroid_isomorphic(uniform_matroid(2, 4), uniform_matroid(2, 4))


# -------------------------------
# U_{2,m} & UNIQUENESS
# -------------------------------

@pytest.mark.parametrize("kind,count", [(LIFT, 2), (FRAME, 3)])
def test_u24_representations(kind, count):
    assert len(u2m_representations(4, kind)) == count


@pytest.mark.parametrize("kind,count", [(LIFT, 2), (FRAME, 3)])
def test_u24_search_finds_exactly_the_listed_representations(kind, count):
    assert len(u2m_search(4, kind, 4)) == count


def test_uniqueness_hypotheses_hold_for_the_coloured_graph():
    assert uniqueness_hypotheses(identify(build_coloured_planar(3, 4)))


def test_doubled_triangle_fails_uniqueness(two_c3):
    assert not uniqueness_hypotheses(two_c3)


def test_balanced_digon_fails_uniqueness():
    graph = Multigraph.build(
        range(3), [(i, u, v) for i, (u, v) in enumerate([(0, 1), (1, 2), (0, 2)] * 4)]
    )
    assert not uniqueness_hypotheses(BiasedGraph(graph, frozenset({frozenset({0, 3})})))


def test_u24_classes_are_parallel_classes(f4_biased):
    classes = u24_classes(lift_matroid(f4_biased))
    expected = sorted((frozenset(ids) for ids in f4_biased.graph.parallel_classes.values()), key=sorted)
    assert classes == expected


# -------------------------------
# EXCLUDED MINORS
# -------------------------------

@pytest.mark.parametrize("kind", [LIFT, FRAME])
def test_identified_f4_is_an_excluded_minor(f4, kind):
    report = excluded_minor_check(f4, kind)
    assert report.ok, report.failures
    assert report.rank == 3


@pytest.mark.parametrize("kind", KINDS)
def test_second_coloured_graph_is_an_excluded_minor(kind):
    plane = build_coloured_planar(3, 5)
    assert len(plane.graph.edges) == 18
    report = excluded_minor_check(plane, kind)
    assert report.ok, report.failures
    assert report.rank == 3


# -------------------------------
# MATROID ANTICHAINS
# -------------------------------

@pytest.mark.parametrize("kind", KINDS)
def test_coloured_members_give_a_rank_three_matroid_antichain(kind):
    report = matroid_antichain(antichain_family(3, [4, 6]), kind)
    assert report.ok
    assert report.ranks == (3, 3)


def test_doubled_cycles_are_not_a_matroid_antichain_by_this_route():
    report = matroid_antichain([build_2Cn(3), build_2Cn(4)], LIFT)
    assert report.antichain.ok
    assert not any(report.unique)
    assert not report


def test_matroid_antichain_needs_two_members():
    with pytest.raises(ValueError):
        matroid_antichain(antichain_family(3, [4]), FRAME)
