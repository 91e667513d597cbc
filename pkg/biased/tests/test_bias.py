# biased/tests/test_bias.py
import pytest

from biased.bias import (
    BiasedGraph,
    all_biased_graphs,
    apply_operations,
    contract_edge,
    delete_edge,
    is_minor,
    isomorphic,
    validate_theta,
    verify_antichain,
)
from biased.constructions import antichain_family, build_2Cn
from biased.exceptions import (
    InvalidGraphError,
    ThetaPropertyError,
    UnbalancedLoopContractionError,
    UnknownEdgeError,
)
from biased.graphs import Multigraph, enumerate_cycles

from .helpers import k4, ordinary, parallel


def unbalanced(graph):
    return BiasedGraph(graph, frozenset())


# -------------------------------
# THETA PROPERTY
# -------------------------------

def test_doubled_triangle_is_a_biased_graph(two_c3):
    assert validate_theta(two_c3).ok


def test_two_of_three_balanced_is_a_violation():
    biased = BiasedGraph(parallel(3), frozenset({frozenset({0, 1}), frozenset({0, 2})}))
    verdict = validate_theta(biased)
    assert not verdict
    assert verdict.balanced_count == 2
    assert verdict.theta.edges == frozenset({0, 1, 2})


def test_all_cycles_balanced_is_ok():
    assert validate_theta(ordinary(k4())).ok


def test_balanced_set_must_hold_cycles():
    with pytest.raises(InvalidGraphError):
        BiasedGraph(k4(), frozenset({frozenset({0, 1})}))


# -------------------------------
# DELETION & CONTRACTION
# -------------------------------

def test_delete_edge_of_doubled_cycle_keeps_one_balanced(two_c3):
    minor = delete_edge(two_c3, 0)
    assert minor.balanced == {frozenset({3, 4, 5})}
    assert len(minor.graph.edges) == 5


def test_delete_edge_of_ordinary_graph_stays_ordinary():
    minor = delete_edge(ordinary(k4()), 0)
    assert minor.balanced == enumerate_cycles(minor.graph)
    assert len(minor.balanced) == 3


def test_contract_edge_of_ordinary_graph_stays_ordinary():
    minor = contract_edge(ordinary(k4()), 0)
    assert len(minor.graph.vertices) == 3
    assert minor.balanced == enumerate_cycles(minor.graph)
    assert len(minor.balanced) == 6


def test_contraction_turns_a_parallel_edge_into_a_loop(two_c3):
    minor = contract_edge(two_c3, 0)
    assert minor.graph.vertices == {0, 2}
    assert minor.graph.loops() == (3,)
    assert minor.balanced == {frozenset({1, 2})}


def test_contraction_count_matches_re_enumeration(two_c3):
    e = 1
    minor = contract_edge(two_c3, e)
    expected = {c for c in two_c3.balanced if e not in c and minor.graph.is_cycle(c)}
    expected |= {c - {e} for c in two_c3.balanced if e in c and len(c) >= 2}
    assert minor.balanced == expected


def test_unbalanced_loop_cannot_be_contracted():
    graph = Multigraph.build([0, 1], [(0, 0, 1), (1, 1, 1)])
    with pytest.raises(UnbalancedLoopContractionError):
        contract_edge(unbalanced(graph), 1)


def test_balanced_loop_contracts_as_deletion():
    graph = Multigraph.build([0, 1], [(0, 0, 1), (1, 1, 1)])
    biased = BiasedGraph(graph, frozenset({frozenset({1})}))
    assert contract_edge(biased, 1) == delete_edge(biased, 1)


def test_unknown_edge_is_rejected(two_c3):
    with pytest.raises(UnknownEdgeError):
        delete_edge(two_c3, 99)


def test_theta_assertion_catches_a_broken_minor(settings):
    settings.BIASED_GRAPHS = {"ASSERT_THETA": True}
    # Deleting edge 3 leaves three parallel edges with exactly two balanced 2-cycles.
    biased = BiasedGraph(parallel(4), frozenset({frozenset({0, 1}), frozenset({0, 2})}))
    with pytest.raises(ThetaPropertyError):
        delete_edge(biased, 3)


# -------------------------------
# ISOMORPHISM
# -------------------------------

def test_relabelled_vertices_are_isomorphic(two_c3):
    shift = {0: 2, 1: 0, 2: 1}
    graph = Multigraph.build(range(3), [(e.id, shift[e.tail], shift[e.head]) for e in two_c3.graph.edges])
    assert isomorphic(two_c3, BiasedGraph(graph, two_c3.balanced)) is not None


def test_relabelled_edges_are_isomorphic(two_c3):
    graph = Multigraph.build(range(3), [(10 + e.id, e.tail, e.head) for e in two_c3.graph.edges])
    balanced = frozenset(frozenset(10 + e for e in c) for c in two_c3.balanced)
    assert isomorphic(two_c3, BiasedGraph(graph, balanced)) is not None


def test_different_balanced_counts_are_not_isomorphic(two_c3):
    one = BiasedGraph(two_c3.graph, frozenset({frozenset({0, 1, 2})}))
    assert isomorphic(two_c3, one) is None


def test_isomorphism_is_reflexive_and_symmetric():
    pool = list(all_biased_graphs(2, 3))
    for a in pool:
        assert isomorphic(a, a) is not None
        for b in pool:
            assert (isomorphic(a, b) is None) == (isomorphic(b, a) is None)


def relabelled(biased):
    """Same biased graph with vertices reversed and edge ids shifted by 10."""
    top = max(biased.graph.vertices)
    graph = Multigraph.build(
        biased.graph.vertices, [(10 + e.id, top - e.tail, top - e.head) for e in biased.graph.edges]
    )
    return BiasedGraph(graph, frozenset(frozenset(10 + e for e in c) for c in biased.balanced))


def test_isomorphism_is_transitive():
    base = list(all_biased_graphs(2, 2))
    pool = base + [relabelled(b) for b in base]
    iso = {(i, j): isomorphic(a, b) is not None for i, a in enumerate(pool) for j, b in enumerate(pool)}
    for i in range(len(pool)):
        for j in range(len(pool)):
            for k in range(len(pool)):
                if iso[i, j] and iso[j, k]:
                    assert iso[i, k]
    assert all(iso[i, i + len(base)] for i in range(len(base)))


def test_small_enumeration_count():
    # loop plus link, and two parallel links; each with its one cycle balanced or not
    assert len(list(all_biased_graphs(2, 2))) == 4


# -------------------------------
# MINORS & ANTICHAINS
# -------------------------------

def test_doubled_cycles_are_not_minors_of_each_other():
    assert is_minor(build_2Cn(3), build_2Cn(4)) is None


def test_contracting_one_parallel_class_gives_a_minor():
    small, big = unbalanced(build_2Cn(3).graph), unbalanced(build_2Cn(4).graph)
    witness = is_minor(small, big)
    assert witness is not None
    assert len(witness.contracted) == 1
    assert len(witness.deleted) == 1
    assert isomorphic(small, apply_operations(big, witness.operations)) is not None


def test_single_deletion_is_a_minor(two_c3):
    witness = is_minor(delete_edge(two_c3, 2), two_c3)
    assert witness is not None
    assert witness.contracted == ()


def test_doubled_cycles_form_an_antichain():
    assert verify_antichain([build_2Cn(n) for n in (3, 4, 5)]).ok


def test_a_graph_and_its_deletion_are_not_an_antichain(two_c3):
    verdict = verify_antichain([two_c3, delete_edge(two_c3, 4)])
    assert not verdict
    assert verdict.pair == (1, 0)


def test_coloured_members_form_an_antichain():
    family = antichain_family(3, [4, 6])
    assert [len(member.graph.edges) for member in family] == [12, 18]
    assert verify_antichain(family).ok
