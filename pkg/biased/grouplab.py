# biased/grouplab.py
import logging
from collections import Counter
from dataclasses import dataclass
from functools import total_ordering

import networkx as nx
from sympy import Matrix

from .bias import contract_edge, delete_edge
from .constructions import antichain_member, build_2Cn, identify
from .exceptions import (
    DisconnectedGraphError,
    HostMismatchError,
    InvalidConstructionError,
    NotSpanningTreeError,
)
from .graphs import FORWARD, cycle_walk, enumerate_cycles, faces

logger = logging.getLogger(__name__)


# -------------------------------
# FREE WORDS
# -------------------------------

def reduce(letters):
    """Freely reduce a sequence of (generator index, ±1) letters."""
    stack = []
    for index, sign in letters:
        if sign not in (1, -1):
            raise ValueError(f"letter exponent must be +1 or -1, got {sign}")
        if stack and stack[-1] == (index, -sign):
            stack.pop()
        else:
            stack.append((index, sign))
    return FreeWord(tuple(stack))


@total_ordering
@dataclass(frozen=True)
class FreeWord:
    """A reduced word over free generators g_0, g_1, ...; the empty word is the identity."""
    letters: tuple = ()

    @classmethod
    def identity(cls):
        return cls()

    @classmethod
    def generator(cls, index, sign=1):
        return cls(((index, sign),))

    def __post_init__(self):
        letters = tuple((int(i), int(s)) for i, s in self.letters)
        for (a, s), (b, r) in zip(letters, letters[1:]):
            if a == b and s == -r:
                raise ValueError("FreeWord letters must be reduced; build words with reduce()")
        object.__setattr__(self, "letters", letters)

    def __mul__(self, other):
        return reduce(self.letters + other.letters)

    def __invert__(self):
        return FreeWord(tuple((i, -s) for i, s in reversed(self.letters)))

    def __pow__(self, n):
        if n == 0:
            return FreeWord()
        if n < 0:
            return ~(self ** -n)
        half = self ** (n // 2)
        return half * half * self if n % 2 else half * half

    def __len__(self):
        return len(self.letters)

    def __lt__(self, other):
        return (len(self), self.letters) < (len(other), other.letters)

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(f"{'+' if s == 1 else '-'}{i}" for i, s in self.letters)

    def is_identity(self):
        return not self.letters

    def cyclically_reduced(self):
        """The representative of the conjugacy class left after stripping matching ends."""
        letters = self.letters
        while len(letters) > 1 and letters[0] == (letters[-1][0], -letters[-1][1]):
            letters = letters[1:-1]
        return FreeWord(letters)

    def exponent_sums(self):
        sums = Counter()
        for i, s in self.letters:
            sums[i] += s
        return Counter({i: v for i, v in sums.items() if v})

    def generators(self):
        return frozenset(i for i, _ in self.letters)


# -------------------------------
# LABELLINGS
# -------------------------------

@dataclass(frozen=True)
class GroupLabelling:
    """Free-group values on the edges of `host`, read along each edge's reference orientation."""
    host: object
    values: dict

    def __post_init__(self):
        missing = [e for e in self.host.edge_ids if e not in self.values]
        if missing:
            raise InvalidConstructionError(f"labelling has no value on edges {missing}")
        extra = [e for e in self.values if not self.host.has_edge(e)]
        if extra:
            raise HostMismatchError(f"labelling names edges {sorted(extra)} outside the host")

    def value(self, edge_id):
        return self.values[edge_id]


def walk_value(labelling, walk):
    walk.vertex_sequence(labelling.host)
    letters = []
    for edge_id, direction in walk:
        word = labelling.values[edge_id]
        letters.extend(word.letters if direction == FORWARD else (~word).letters)
    return reduce(letters)


def balanced_set(labelling):
    host = labelling.host
    return {
        cycle
        for cycle in enumerate_cycles(host)
        if walk_value(labelling, cycle_walk(host, cycle)).is_identity()
    }


def realizes(labelling, biased):
    if labelling.host != biased.graph:
        raise HostMismatchError("labelling and biased graph live on different hosts")
    return balanced_set(labelling) == set(biased.balanced)


def winding(labelling, walk):
    """The exponent s with walk_value conjugate to g_0^s, or None if it is not a power of g_0."""
    word = walk_value(labelling, walk).cyclically_reduced()
    if word.generators() - {0}:
        return None
    return sum(s for _, s in word.letters)


# -------------------------------
# VAN KAMPEN PRESENTATIONS
# -------------------------------

@dataclass(frozen=True)
class GroupPresentation:
    """Generator i stands for non-tree edge generators[i]; one relator per balanced cycle."""
    generators: tuple
    relators: tuple
    tree: frozenset = frozenset()

    def __post_init__(self):
        declared = set(range(len(self.generators)))
        for word in self.relators:
            if not word.generators() <= declared:
                raise InvalidConstructionError(f"relator {word} uses an undeclared generator")

    def abelianization_rank(self):
        """Free rank of the abelianization: generators minus the rank of the exponent-sum matrix."""
        if not self.relators:
            return len(self.generators)
        sums = [r.exponent_sums() for r in self.relators]
        matrix = Matrix([[row.get(i, 0) for i in range(len(self.generators))] for row in sums])
        return len(self.generators) - matrix.rank()


def spanning_tree(graph):
    """The Kruskal tree that prefers low edge ids."""
    g = graph.to_networkx()
    for u, v, key in g.edges(keys=True):
        g.edges[u, v, key]["weight"] = key
    if not graph.vertices or not nx.is_connected(g):
        raise DisconnectedGraphError("host graph is not connected")
    return frozenset(key for _, _, key in nx.minimum_spanning_edges(g, keys=True, data=False))


def _check_tree(graph, tree):
    if not graph.is_connected():
        raise DisconnectedGraphError("host graph is not connected")
    g = nx.MultiGraph()
    g.add_nodes_from(graph.vertices)
    for e in tree:
        if not graph.has_edge(e):
            raise NotSpanningTreeError(f"tree edge {e} is not in the graph")
        edge = graph.edge(e)
        g.add_edge(edge.tail, edge.head, key=e)
    if not nx.is_tree(g):
        raise NotSpanningTreeError(f"edges {sorted(tree)} do not form a spanning tree")


def presentation(biased, tree=None):
    graph = biased.graph
    tree = spanning_tree(graph) if tree is None else frozenset(tree)
    _check_tree(graph, tree)
    generators = tuple(e for e in graph.edge_ids if e not in tree)
    index = {e: i for i, e in enumerate(generators)}
    relators = []
    for cycle in sorted(biased.balanced, key=sorted):
        walk = cycle_walk(graph, cycle)
        relators.append(reduce([(index[e], d) for e, d in walk if e in index]))
    logger.debug("presentation built", extra={"generators": len(generators), "relators": len(relators)})
    return GroupPresentation(generators, tuple(relators), tree)


def tautological_labelling(biased, tree=None):
    """
    Tree edges get the identity and each other edge its own generator, in the free group
    on the presentation's generators. The relators are returned alongside, unsolved.
    """
    pres = presentation(biased, tree)
    values = {e: FreeWord() for e in biased.graph.edge_ids}
    for i, e in enumerate(pres.generators):
        values[e] = FreeWord.generator(i)
    return GroupLabelling(biased.graph, values), pres


# -------------------------------
# LABELLINGS OF THE CONSTRUCTIONS
# -------------------------------

def label_2Cn(n):
    """
    The first balanced cycle is labelled 1; the second reads g_1, ..., g_(n-1) and then
    closes with their inverse product, so no proper subsequence multiplies to 1.
    """
    biased = build_2Cn(n)
    values = {i: FreeWord() for i in range(n)}
    closing = []
    for i in range(1, n):
        values[n + i - 1] = FreeWord.generator(i)
        closing.insert(0, (i, -1))
    values[2 * n - 1] = reduce(closing)
    return GroupLabelling(biased.graph, values)


def _vertex_label(i, j, twist=0):
    letters = [(i, -1)]
    if twist:
        letters.append((0, twist))
    letters.append((j, 1))
    return reduce(letters)


def _require_identifiable(plane):
    try:
        return identify(plane)
    except InvalidConstructionError:
        logger.error("❌ Labelling requested for a plane graph that does not identify")
        raise


def label_contraction(plane, edge_id):
    """
    Labelling of identify(plane)/e. Edges on the finite faces through e become
    g_i^-1 g_j over the vertices of H/e; every other edge gets its own later generator.
    """
    biased = contract_edge(_require_identifiable(plane), edge_id)
    graph = plane.graph
    target = graph.edge(edge_id)
    h_edges = set()
    for face in plane.finite_faces():
        if edge_id in face.edge_set:
            h_edges |= face.edge_set
    keep, gone = sorted(target.ends)

    def merged(v):
        return keep if v == gone else v

    h_vertices = sorted({merged(v) for e in h_edges for v in graph.edge(e).ends})
    index = {v: i for i, v in enumerate(h_vertices)}
    outside = [e for e in graph.edge_ids if e not in h_edges]
    values = {}
    for e in h_edges - {edge_id}:
        edge = graph.edge(e)
        values[e] = _vertex_label(index[merged(edge.tail)], index[merged(edge.head)])
    for k, e in enumerate(outside, start=len(h_vertices)):
        values[e] = FreeWord.generator(k)
    return GroupLabelling(biased.graph, values)


def _dual_path(plane, source_key, target_key):
    """
    Crossing edges of a shortest dual path, as (edge id, face crossed from).
    Among shortest routes the least sequence of face keys wins; two faces sharing
    several edges are crossed at the lowest edge id.
    """
    dual = nx.Graph()
    by_key = {face.key: face for face in faces(plane)}
    dual.add_nodes_from(sorted(by_key))
    for e in plane.graph.edge_ids:
        sides = sorted({face.key for face in plane.faces_with_edge(e)})
        if len(sides) == 2 and not dual.has_edge(*sides):
            a, b = sides
            dual.add_edge(a, b, via=e)
    to_target = nx.single_source_shortest_path_length(dual, target_key)
    if source_key not in to_target:
        raise nx.NetworkXNoPath(f"face {target_key} is not reachable from face {source_key}")
    route = [source_key]
    while route[-1] != target_key:
        here = route[-1]
        route.append(min(f for f in dual[here] if to_target.get(f) == to_target[here] - 1))
    return [(dual.edges[a, b]["via"], by_key[a]) for a, b in zip(route, route[1:])]


def label_deletion(plane, edge_id):
    """
    Labelling of identify(plane) minus e. On the outer face every edge gets g_i^-1 g_j.
    Otherwise edges crossing a dual path from the outer face to the merged face R get
    g_i^-1 g_0^(±1) g_j, oriented alike, so closed walks evaluate to conjugates of g_0^s.
    """
    biased = delete_edge(_require_identifiable(plane), edge_id)
    graph = plane.graph
    on_outer = edge_id in plane.outer_face().edge_set
    shift = 0 if on_outer else 1
    index = {v: i + shift for i, v in enumerate(sorted(graph.vertices))}
    twists = {}
    if not on_outer:
        reduced = plane.without_edge(edge_id)
        merged = next(f for f in faces(reduced) if f.key not in {g.key for g in faces(plane)})
        for crossing, source in _dual_path(reduced, reduced.outer, merged.key):
            twists[crossing] = next(d for e, d in source.walk if e == crossing)
    values = {}
    for e in graph.edge_ids:
        if e == edge_id:
            continue
        edge = graph.edge(e)
        values[e] = _vertex_label(index[edge.tail], index[edge.head], twists.get(e, 0))
    return GroupLabelling(biased.graph, values)


def label_antichain_member(plane):
    """g_i^-1 g_j over the vertices of the plane graph; every face boundary telescopes to 1."""
    biased = antichain_member(plane)
    graph = plane.graph
    index = {v: i for i, v in enumerate(sorted(graph.vertices))}
    values = {
        e.id: _vertex_label(index[e.tail], index[e.head]) for e in graph.edges
    }
    return GroupLabelling(biased.graph, values)


def assert_realizes(labelling, biased, kind):
    if not realizes(labelling, biased):
        logger.error(f"❌ {kind} labelling does not realise its biased graph")
        raise InvalidConstructionError(f"{kind} labelling does not realise its biased graph")
    return labelling
