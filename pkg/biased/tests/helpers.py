# biased/tests/helpers.py
from io import StringIO
from itertools import combinations

from django.core.management import call_command

from biased.bias import BiasedGraph
from biased.graphs import Multigraph, enumerate_cycles


def parallel(m):
    """K_2^m: two vertices joined by m parallel edges."""
    return Multigraph.build([0, 1], [(i, 0, 1) for i in range(m)])


def k4():
    return Multigraph.build(
        range(4), [(0, 0, 1), (1, 0, 2), (2, 0, 3), (3, 1, 2), (4, 1, 3), (5, 2, 3)]
    )


def ordinary(graph):
    return BiasedGraph(graph, frozenset(enumerate_cycles(graph)))


def subsets(edge_ids):
    for size in range(1, len(edge_ids) + 1):
        yield from (frozenset(c) for c in combinations(edge_ids, size))


def brute_force_cycles(graph):
    return {s for s in subsets(graph.edge_ids) if graph.is_cycle(s)}


def run(name, *args):
    """call_command with captured stdout; returns the text."""
    out = StringIO()
    call_command(name, *args, stdout=out)
    return out.getvalue()
