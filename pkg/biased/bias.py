# biased/bias.py
import logging
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, combinations_with_replacement, permutations

from .conf import setting
from .exceptions import InvalidGraphError, ResourceLimitError, UnbalancedLoopContractionError
from .graphs import Multigraph, enumerate_cycles, pair_key, theta_from_pair
from .signals import minor_taken

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BiasedGraph:
    """A multigraph plus its set of balanced cycles (edge-id frozensets)."""
    graph: Multigraph
    balanced: frozenset

    def __post_init__(self):
        balanced = frozenset(frozenset(c) for c in self.balanced)
        for cycle in balanced:
            if not self.graph.is_cycle(cycle):
                raise InvalidGraphError(f"balanced set lists {sorted(cycle)}, which is not a cycle")
        object.__setattr__(self, "balanced", balanced)

    @cached_property
    def balanced_by_edge(self):
        index = defaultdict(set)
        for cycle in self.balanced:
            for e in cycle:
                index[e].add(cycle)
        return {e: frozenset(cycles) for e, cycles in index.items()}

    def is_balanced(self, cycle):
        return frozenset(cycle) in self.balanced

    def unbalanced_cycles(self, max_len=None):
        return {c for c in enumerate_cycles(self.graph, max_len) if c not in self.balanced}


@dataclass(frozen=True)
class ThetaVerdict:
    ok: bool
    theta: object = None
    balanced_count: int = None

    def __bool__(self):
        return self.ok


def validate_theta(biased):
    """
    Check that no theta has exactly two balanced cycles.
    Such a theta is the union of two balanced cycles meeting in one path whose
    symmetric difference is unbalanced, so only pairs of balanced cycles are examined.
    """
    ordered = sorted(biased.balanced, key=sorted)
    rank = {cycle: i for i, cycle in enumerate(ordered)}
    for first in ordered:
        partners = set()
        for e in first:
            partners.update(biased.balanced_by_edge[e])
        for second in sorted((c for c in partners if rank[c] > rank[first]), key=rank.get):
            theta = theta_from_pair(biased.graph, first, second)
            if theta is not None and (first ^ second) not in biased.balanced:
                return ThetaVerdict(False, theta, 2)
    return ThetaVerdict(True)


# -------------------------------
# MINOR OPERATIONS
# -------------------------------

def delete_edge(biased, edge_id):
    biased.graph.edge(edge_id)
    result = BiasedGraph(
        biased.graph.without_edge(edge_id),
        frozenset(c for c in biased.balanced if edge_id not in c),
    )
    minor_taken.send(sender=BiasedGraph, operation="delete", edge=edge_id, result=result)
    return result


def contract_edge(biased, edge_id):
    """
    Contract one edge; balanced loops are deleted, unbalanced loops are refused.
    A cycle of the contraction is balanced iff it, or it plus the edge, was balanced.
    """
    edge = biased.graph.edge(edge_id)
    if edge.is_loop:
        if frozenset({edge_id}) in biased.balanced:
            return delete_edge(biased, edge_id)
        raise UnbalancedLoopContractionError(edge_id)
    contracted = biased.graph.contracted(edge_id)
    balanced = set()
    for cycle in biased.balanced:
        if edge_id in cycle:
            balanced.add(cycle - {edge_id})
        elif contracted.is_cycle(cycle):
            balanced.add(cycle)
    result = BiasedGraph(contracted, frozenset(balanced))
    minor_taken.send(sender=BiasedGraph, operation="contract", edge=edge_id, result=result)
    return result


def apply_operations(biased, operations):
    for operation, edge_id in operations:
        if operation == "delete":
            biased = delete_edge(biased, edge_id)
        elif operation == "contract":
            biased = contract_edge(biased, edge_id)
        else:
            raise ValueError(f"unknown minor operation {operation!r}")
    return biased


# -------------------------------
# ISOMORPHISM
# -------------------------------

@dataclass(frozen=True)
class Isomorphism:
    vertex_map: dict
    edge_map: dict


def _edge_signature(biased, edge_id):
    cycles = biased.balanced_by_edge.get(edge_id, ())
    return (biased.graph.edge(edge_id).is_loop, tuple(sorted(len(c) for c in cycles)))


def _vertex_signature(biased, vertex, edge_signatures):
    graph = biased.graph
    loops = sum(1 for e in graph.incidence[vertex] if graph.edge(e).is_loop)
    incident = tuple(sorted(edge_signatures[e] for e in graph.incidence[vertex]))
    return (graph.degree(vertex), loops, incident)


def invariants(biased):
    """Isomorphism invariants compared before any backtracking."""
    graph = biased.graph
    edge_signatures = {e: _edge_signature(biased, e) for e in graph.edge_ids}
    return (
        len(graph.vertices),
        len(graph.edges),
        len(biased.balanced),
        tuple(sorted(len(c) for c in biased.balanced)),
        tuple(sorted(edge_signatures.values())),
        tuple(sorted(len(ids) for ids in graph.parallel_classes.values())),
        tuple(sorted(_vertex_signature(biased, v, edge_signatures) for v in graph.vertices)),
    )


def isomorphic(first, second):
    """A vertex/edge bijection preserving incidence and the balanced sets, or None."""
    if invariants(first) != invariants(second):
        return None
    ga, gb = first.graph, second.graph
    sig_a = {e: _edge_signature(first, e) for e in ga.edge_ids}
    sig_b = {e: _edge_signature(second, e) for e in gb.edge_ids}
    vsig_a = {v: _vertex_signature(first, v, sig_a) for v in ga.vertices}
    vsig_b = {v: _vertex_signature(second, v, sig_b) for v in gb.vertices}
    census_a, census_b = ga.pair_census(), gb.pair_census()
    order = sorted(ga.vertices, key=lambda v: (-ga.degree(v), v))
    vertex_map = {}

    def assign(index):
        if index == len(order):
            return _match_edges(first, second, vertex_map, sig_a, sig_b)
        v = order[index]
        used = set(vertex_map.values())
        for w in sorted(gb.vertices):
            if w in used or vsig_b[w] != vsig_a[v]:
                continue
            if any(
                census_a[pair_key(v, u)] != census_b[pair_key(w, x)] for u, x in vertex_map.items()
            ):
                continue
            vertex_map[v] = w
            found = assign(index + 1)
            if found is not None:
                return found
            del vertex_map[v]
        return None

    return assign(0)


def _match_edges(first, second, vertex_map, sig_a, sig_b):
    ga, gb = first.graph, second.graph

    def image_key(edge):
        return pair_key(vertex_map[edge.tail], vertex_map[edge.head])

    targets = defaultdict(list)
    for edge in gb.edges:
        targets[pair_key(edge.tail, edge.head)].append(edge.id)
    order = sorted(ga.edge_ids, key=lambda e: (image_key(ga.edge(e)), e))
    edge_map = {}
    used = set()

    def consistent(e):
        for cycle in first.balanced_by_edge.get(e, ()):
            mapped = [edge_map[f] for f in cycle if f in edge_map]
            pool = set(second.balanced_by_edge.get(mapped[0], ()))
            for f in mapped[1:]:
                pool &= second.balanced_by_edge.get(f, frozenset())
            if not any(len(c) == len(cycle) for c in pool):
                return False
        return True

    def assign(index):
        if index == len(order):
            image = frozenset(frozenset(edge_map[e] for e in c) for c in first.balanced)
            if image == second.balanced:
                return Isomorphism(dict(vertex_map), dict(edge_map))
            return None
        e = order[index]
        for f in targets[image_key(ga.edge(e))]:
            if f in used or sig_b[f] != sig_a[e]:
                continue
            edge_map[e] = f
            used.add(f)
            if consistent(e):
                found = assign(index + 1)
                if found is not None:
                    return found
            used.discard(f)
            del edge_map[e]
        return None

    return assign(0)


# -------------------------------
# MINOR CONTAINMENT
# -------------------------------

@dataclass(frozen=True)
class MinorWitness:
    operations: tuple
    isomorphism: Isomorphism

    @property
    def deleted(self):
        return tuple(e for op, e in self.operations if op == "delete")

    @property
    def contracted(self):
        return tuple(e for op, e in self.operations if op == "contract")


def is_minor(small, big):
    """
    Exhaustive search for a sequence of deletions and contractions taking `big`
    to a biased graph isomorphic to `small`.
    Each edge, in id order, is kept, deleted or contracted. The number of
    contractions is fixed by the vertex counts, and the balanced-cycle count
    never grows under either operation, which prunes the tree.
    """
    max_edges = setting("MINOR_SEARCH_MAX_EDGES")
    if len(big.graph.edges) > max_edges:
        raise ResourceLimitError("minor search edge count", max_edges)
    contractions = len(big.graph.vertices) - len(small.graph.vertices)
    deletions = len(big.graph.edges) - len(small.graph.edges) - contractions
    if contractions < 0 or deletions < 0 or len(big.balanced) < len(small.balanced):
        return None

    target = invariants(small)
    order = big.graph.edge_ids
    max_nodes = setting("MINOR_SEARCH_MAX_NODES")
    visited = 0

    def search(current, index, dels, cons, operations):
        nonlocal visited
        visited += 1
        if visited > max_nodes:
            logger.error(f"❌ Minor search gave up after {max_nodes} nodes")
            raise ResourceLimitError("minor search nodes", max_nodes)
        if len(current.balanced) < len(small.balanced):
            return None
        remaining = len(order) - index
        if dels + cons > remaining:
            return None
        if dels == 0 and cons == 0:
            if invariants(current) != target:
                return None
            iso = isomorphic(small, current)
            return MinorWitness(operations, iso) if iso is not None else None
        e = order[index]
        if remaining > dels + cons:
            found = search(current, index + 1, dels, cons, operations)
            if found is not None:
                return found
        if dels:
            found = search(delete_edge(current, e), index + 1, dels - 1, cons, operations + (("delete", e),))
            if found is not None:
                return found
        if cons and not current.graph.edge(e).is_loop:
            found = search(contract_edge(current, e), index + 1, dels, cons - 1, operations + (("contract", e),))
            if found is not None:
                return found
        return None

    witness = search(big, 0, deletions, contractions, ())
    logger.debug("minor search finished", extra={"nodes": visited, "found": witness is not None})
    return witness


@dataclass(frozen=True)
class AntichainVerdict:
    ok: bool
    pair: tuple = None
    witness: MinorWitness = None

    def __bool__(self):
        return self.ok


def verify_antichain(family):
    """ok iff no member is a minor of another; otherwise the first (minor, host) index pair."""
    for i, j in permutations(range(len(family)), 2):
        witness = is_minor(family[i], family[j])
        if witness is not None:
            return AntichainVerdict(False, (i, j), witness)
    return AntichainVerdict(True)


# -------------------------------
# SMALL-GRAPH ENUMERATION
# -------------------------------

def graph_canonical_key(graph):
    """Least sorted endpoint list over all vertex relabellings; complete for unlabelled multigraphs."""
    vertices = sorted(graph.vertices)
    best = None
    for perm in permutations(range(len(vertices))):
        relabel = dict(zip(vertices, perm))
        key = tuple(sorted(pair_key(relabel[e.tail], relabel[e.head]) for e in graph.edges))
        if best is None or key < best:
            best = key
    return best


def all_biased_graphs(vertex_count, edge_count):
    """
    Every connected biased graph on `vertex_count` vertices with `edge_count` edges and
    no isolated vertex, one underlying multigraph per isomorphism class; balanced sets
    range over all subsets of cycles that satisfy the theta property.
    """
    pairs = [(u, v) for u in range(vertex_count) for v in range(u, vertex_count)]
    seen = set()
    for chosen in combinations_with_replacement(pairs, edge_count):
        touched = {v for pair in chosen for v in pair}
        if len(touched) != vertex_count:
            continue
        graph = Multigraph.build(range(vertex_count), [(i, u, v) for i, (u, v) in enumerate(chosen)])
        if not graph.is_connected():
            continue
        key = graph_canonical_key(graph)
        if key in seen:
            continue
        seen.add(key)
        cycles = sorted(enumerate_cycles(graph), key=sorted)
        for size in range(len(cycles) + 1):
            for subset in combinations(cycles, size):
                candidate = BiasedGraph(graph, frozenset(subset))
                if validate_theta(candidate):
                    yield candidate