# biased/graphs.py
import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product

import networkx as nx

from .conf import setting
from .exceptions import (
    InvalidEmbeddingError,
    InvalidGraphError,
    ResourceLimitError,
    UnknownEdgeError,
    WalkError,
)

logger = logging.getLogger(__name__)

FORWARD = 1
BACKWARD = -1

# A cycle is the frozenset of its edge ids.
Cycle = frozenset


def pair_key(u, v):
    return (u, v) if u <= v else (v, u)


# -------------------------------
# MULTIGRAPHS
# -------------------------------

@dataclass(frozen=True, order=True)
class Edge:
    id: int
    tail: int
    head: int

    @property
    def is_loop(self):
        return self.tail == self.head

    @property
    def ends(self):
        return (self.tail, self.head)

    def start(self, direction):
        return self.tail if direction == FORWARD else self.head

    def end(self, direction):
        return self.head if direction == FORWARD else self.tail

    def other(self, vertex):
        if vertex == self.tail:
            return self.head
        if vertex == self.head:
            return self.tail
        raise InvalidGraphError(f"vertex {vertex} is not an end of edge {self.id}")


@dataclass(frozen=True)
class Multigraph:
    """
    Vertices plus oriented edges with stable ids.
    Loops and parallel edges are allowed; tail/head fix the reference orientation.
    """
    vertices: frozenset
    edges: tuple

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))
        ids = [e.id for e in self.edges]
        if len(set(ids)) != len(ids):
            raise InvalidGraphError("edge ids must be unique")
        for e in self.edges:
            if e.tail not in self.vertices or e.head not in self.vertices:
                raise InvalidGraphError(f"edge {e.id} has an endpoint outside the vertex set")

    @classmethod
    def build(cls, vertices, triples):
        return cls(frozenset(vertices), tuple(Edge(*t) for t in triples))

    @cached_property
    def _by_id(self):
        return {e.id: e for e in self.edges}

    @cached_property
    def incidence(self):
        incident = {v: [] for v in self.vertices}
        for e in self.edges:
            incident[e.tail].append(e.id)
            if not e.is_loop:
                incident[e.head].append(e.id)
        return {v: tuple(ids) for v, ids in incident.items()}

    @cached_property
    def parallel_classes(self):
        """Non-loop edge ids grouped by unordered vertex pair."""
        classes = defaultdict(list)
        for e in self.edges:
            if not e.is_loop:
                classes[pair_key(e.tail, e.head)].append(e.id)
        return {key: tuple(ids) for key, ids in classes.items()}

    @property
    def edge_ids(self):
        return tuple(e.id for e in self.edges)

    def edge(self, edge_id):
        try:
            return self._by_id[edge_id]
        except KeyError:
            raise UnknownEdgeError(edge_id) from None

    def has_edge(self, edge_id):
        return edge_id in self._by_id

    def degree(self, vertex):
        return sum(2 if self.edge(e).is_loop else 1 for e in self.incidence[vertex])

    def loops(self):
        return tuple(e.id for e in self.edges if e.is_loop)

    def pair_census(self):
        """Number of edges joining each unordered pair of distinct vertices."""
        return Counter({key: len(ids) for key, ids in self.parallel_classes.items()})

    def without_edge(self, edge_id):
        self.edge(edge_id)
        return Multigraph(self.vertices, tuple(e for e in self.edges if e.id != edge_id))

    def contracted(self, edge_id):
        """Identify the ends of a non-loop edge; the smaller vertex id survives."""
        target = self.edge(edge_id)
        if target.is_loop:
            raise InvalidGraphError(f"edge {edge_id} is a loop")
        keep, gone = sorted(target.ends)

        def rename(v):
            return keep if v == gone else v

        edges = tuple(
            Edge(e.id, rename(e.tail), rename(e.head)) for e in self.edges if e.id != edge_id
        )
        return Multigraph(self.vertices - {gone}, edges)

    def cycle_vertices(self, edge_ids):
        vertices = set()
        for e in edge_ids:
            vertices.update(self.edge(e).ends)
        return frozenset(vertices)

    def is_cycle(self, edge_ids):
        """True iff the edge set spans a connected 2-regular subgraph."""
        edge_ids = frozenset(edge_ids)
        if not edge_ids or not all(self.has_edge(e) for e in edge_ids):
            return False
        if len(edge_ids) == 1:
            return self.edge(next(iter(edge_ids))).is_loop
        degree = Counter()
        for e in edge_ids:
            edge = self.edge(e)
            if edge.is_loop:
                return False
            degree[edge.tail] += 1
            degree[edge.head] += 1
        if any(d != 2 for d in degree.values()):
            return False
        return len(degree) == len(edge_ids) and nx.is_connected(self.subgraph(edge_ids))

    def subgraph(self, edge_ids):
        g = nx.MultiGraph()
        for e in edge_ids:
            edge = self.edge(e)
            g.add_edge(edge.tail, edge.head, key=edge.id)
        return g

    def to_networkx(self):
        g = nx.MultiGraph()
        g.add_nodes_from(self.vertices)
        for e in self.edges:
            g.add_edge(e.tail, e.head, key=e.id)
        return g

    def is_connected(self):
        if not self.vertices:
            return True
        return nx.is_connected(self.to_networkx())


# -------------------------------
# WALKS
# -------------------------------

@dataclass(frozen=True)
class ClosedWalk:
    steps: tuple

    def __post_init__(self):
        steps = tuple((int(e), int(d)) for e, d in self.steps)
        if not steps:
            raise WalkError("a closed walk needs at least one step")
        if any(d not in (FORWARD, BACKWARD) for _, d in steps):
            raise WalkError("direction flags must be +1 or -1")
        object.__setattr__(self, "steps", steps)

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def __str__(self):
        return " ".join(f"{'+' if d == FORWARD else '-'}{e}" for e, d in self.steps)

    @property
    def edge_ids(self):
        return [e for e, _ in self.steps]

    def vertex_sequence(self, graph):
        """Start vertex of every step; raises WalkError if the walk does not fit `graph`."""
        try:
            edges = [graph.edge(e) for e, _ in self.steps]
        except UnknownEdgeError as exc:
            raise WalkError(f"walk uses an edge outside the host: {exc}") from exc
        starts = [edge.start(d) for edge, (_, d) in zip(edges, self.steps)]
        for i, (edge, (_, d)) in enumerate(zip(edges, self.steps)):
            if edge.end(d) != starts[(i + 1) % len(starts)]:
                raise WalkError(f"step {i} of walk [{self}] does not meet step {i + 1}")
        return starts

    def is_simple(self, graph):
        """A simple closed walk around a cycle: no repeated vertex or edge."""
        vertices = self.vertex_sequence(graph)
        return len(set(vertices)) == len(vertices) and len(set(self.edge_ids)) == len(self)

    def rotated(self, index):
        index %= len(self.steps)
        return ClosedWalk(self.steps[index:] + self.steps[:index])

    def reversed(self):
        return ClosedWalk(tuple((e, -d) for e, d in reversed(self.steps)))

    def canonical(self):
        """Least rotation or reflection of the step sequence."""
        best = None
        for walk in (self.steps, self.reversed().steps):
            for i in range(len(walk)):
                candidate = walk[i:] + walk[:i]
                if best is None or candidate < best:
                    best = candidate
        return best

    def same_up_to_rotation(self, other):
        if len(self) != len(other):
            return False
        doubled = self.steps + self.steps
        return any(doubled[i:i + len(self)] == other.steps for i in range(len(self)))


def cycle_walk(graph, cycle):
    """The simple closed walk around `cycle`, starting forward along its lowest edge."""
    if not graph.is_cycle(cycle):
        raise WalkError(f"edge set {sorted(cycle)} is not a cycle")
    first = graph.edge(min(cycle))
    steps = [(first.id, FORWARD)]
    used = {first.id}
    current = first.head
    while current != first.tail:
        step = next(e for e in sorted(cycle - used) if current in graph.edge(e).ends)
        edge = graph.edge(step)
        direction = FORWARD if edge.tail == current else BACKWARD
        steps.append((step, direction))
        used.add(step)
        current = edge.end(direction)
    return ClosedWalk(tuple(steps))


def trace_path(graph, edge_ids, start):
    """
    Follow the path formed by `edge_ids` from vertex `start`.
    Returns (steps, end vertex) or None when the edges are not a path starting there.
    """
    remaining = set(edge_ids)
    steps = []
    current = start
    visited = {start}
    while remaining:
        nxt = [e for e in remaining if current in graph.edge(e).ends]
        if len(nxt) != 1 or graph.edge(nxt[0]).is_loop:
            return None
        edge = graph.edge(nxt[0])
        direction = FORWARD if edge.tail == current else BACKWARD
        steps.append((edge.id, direction))
        remaining.discard(edge.id)
        current = edge.end(direction)
        if current in visited:
            return None
        visited.add(current)
    return steps, current


def path_ends(graph, edge_ids):
    """Ends (x, y) with x < y if the edges form a path of length >= 1, else None."""
    if not edge_ids:
        return None
    degree = Counter()
    for e in edge_ids:
        edge = graph.edge(e)
        if edge.is_loop:
            return None
        degree[edge.tail] += 1
        degree[edge.head] += 1
    ends = sorted(v for v, d in degree.items() if d == 1)
    if len(ends) != 2 or any(d > 2 for d in degree.values()):
        return None
    traced = trace_path(graph, edge_ids, ends[0])
    if traced is None or traced[1] != ends[1]:
        return None
    return ends[0], ends[1]


# -------------------------------
# CYCLES & THETAS
# -------------------------------

def enumerate_cycles(graph, max_len=None):
    """
    Every cycle of `graph` (of length <= max_len when given), as frozensets of edge ids.
    Loops and parallel pairs are listed directly; longer cycles come from the simple
    cycles of the underlying simple graph, expanded over each parallel class.
    """
    if max_len is not None and max_len < 1:
        raise ValueError("max_len must be at least 1")
    limit = setting("CYCLE_LIMIT")
    found = set()

    def add(cycle):
        found.add(frozenset(cycle))
        if len(found) > limit:
            logger.error(f"❌ Cycle enumeration stopped after {limit} cycles")
            raise ResourceLimitError("cycle enumeration", limit)

    for e in graph.loops():
        add((e,))
    classes = graph.parallel_classes
    if max_len is None or max_len >= 2:
        for ids in classes.values():
            for pair in combinations(ids, 2):
                add(pair)
    if max_len is None or max_len >= 3:
        simple = nx.Graph()
        simple.add_nodes_from(graph.vertices)
        simple.add_edges_from(classes)
        for vertex_cycle in nx.simple_cycles(simple, length_bound=max_len):
            if len(vertex_cycle) < 3:
                continue
            hops = zip(vertex_cycle, vertex_cycle[1:] + vertex_cycle[:1])
            for choice in product(*(classes[pair_key(u, v)] for u, v in hops)):
                add(choice)
    return found


@dataclass(frozen=True)
class Theta:
    """Two vertices x < y joined by three internally disjoint paths (edge ids from x to y)."""
    x: int
    y: int
    paths: tuple

    @property
    def edges(self):
        return frozenset(e for path in self.paths for e in path)

    @property
    def cycles(self):
        p, q, r = (frozenset(path) for path in self.paths)
        return (p | q, p | r, q | r)


def theta_from_pair(graph, first, second):
    """The theta formed by two cycles meeting in a single path, or None."""
    shared = first & second
    ends = path_ends(graph, shared) if shared else None
    if ends is None:
        return None
    path_vertices = graph.cycle_vertices(shared)
    if graph.cycle_vertices(first) & graph.cycle_vertices(second) != path_vertices:
        return None
    x, y = ends
    paths = []
    for part in (shared, first - shared, second - shared):
        steps, end = trace_path(graph, part, x)
        if end != y:
            return None
        paths.append(tuple(e for e, _ in steps))
    return Theta(x, y, tuple(sorted(paths)))


def enumerate_thetas(graph):
    """Every theta subgraph exactly once, found as unions of cycle pairs."""
    cycles = sorted((c for c in enumerate_cycles(graph) if len(c) > 1), key=sorted)
    thetas = {}
    for first, second in combinations(cycles, 2):
        theta = theta_from_pair(graph, first, second)
        if theta is not None:
            thetas.setdefault(theta.edges, theta)
    return set(thetas.values())


# -------------------------------
# PLANE GRAPHS
# -------------------------------

@dataclass(frozen=True)
class Face:
    walk: ClosedWalk
    key: tuple
    outer: bool = False

    @property
    def edge_set(self):
        return frozenset(self.walk.edge_ids)

    def __len__(self):
        return len(self.walk)


def face_key(edge_ids):
    edge_ids = tuple(edge_ids)
    return min(edge_ids[i:] + edge_ids[:i] for i in range(len(edge_ids)))


@dataclass(frozen=True)
class PlaneGraph:
    """
    A simple graph with a rotation system (counterclockwise edge order at every vertex)
    and a designated outer face, named by its face key.
    """
    graph: Multigraph
    rotation: dict
    outer: tuple
    colouring: dict = field(default_factory=dict)
    palette: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "outer", tuple(self.outer))
        object.__setattr__(self, "palette", tuple(self.palette))
        if self.graph.loops() or any(len(ids) > 1 for ids in self.graph.parallel_classes.values()):
            raise InvalidEmbeddingError("plane graphs must be simple")
        for v in self.graph.vertices:
            if sorted(self.rotation.get(v, ())) != sorted(self.graph.incidence[v]):
                raise InvalidEmbeddingError(f"rotation at vertex {v} does not list its edges")

    @cached_property
    def _faces(self):
        return _trace_faces(self)

    def colour(self, vertex):
        return self.colouring.get(vertex)

    def finite_faces(self):
        return [f for f in self._faces if not f.outer]

    def outer_face(self):
        return next(f for f in self._faces if f.outer)

    def faces_with_edge(self, edge_id):
        return [f for f in self._faces if edge_id in f.edge_set]

    def without_edge(self, edge_id):
        """The plane graph with one edge removed; the outer face must survive unchanged."""
        rotation = {v: tuple(e for e in rot if e != edge_id) for v, rot in self.rotation.items()}
        return PlaneGraph(self.graph.without_edge(edge_id), rotation, self.outer, self.colouring, self.palette)


def face_walks(graph, rotation):
    """
    Trace every face of a rotation system; returns (face key, walk) pairs sorted by key.
    The successor of a dart arriving at v is the next edge after it in v's rotation.
    """
    position = {(v, e): i for v, rot in rotation.items() for i, e in enumerate(rot)}
    used = set()
    walks = []
    darts = sorted((e.id, d) for e in graph.edges for d in (FORWARD, BACKWARD))
    for dart in darts:
        if dart in used:
            continue
        steps = []
        current = dart
        while current not in used:
            used.add(current)
            steps.append(current)
            edge_id, direction = current
            v = graph.edge(edge_id).end(direction)
            rot = rotation[v]
            following = graph.edge(rot[(position[(v, edge_id)] + 1) % len(rot)])
            current = (following.id, FORWARD if following.tail == v else BACKWARD)
        if current != dart:
            raise InvalidEmbeddingError("face traversal did not close")
        walks.append(ClosedWalk(tuple(steps)))

    v, e, f = len(graph.vertices), len(graph.edges), len(walks)
    if v - e + f != 2:
        raise InvalidEmbeddingError(f"Euler relation fails: V - E + F = {v} - {e} + {f}")
    keyed = sorted(((face_key(w.edge_ids), w) for w in walks), key=lambda pair: pair[0])
    keys = [k for k, _ in keyed]
    if len(set(keys)) != len(keys):
        raise InvalidEmbeddingError("two faces share a face key")
    return keyed


def _trace_faces(plane):
    keyed = face_walks(plane.graph, plane.rotation)
    keys = [k for k, _ in keyed]
    if plane.outer not in keys:
        raise InvalidEmbeddingError(f"outer face {plane.outer} is not a face")
    return [Face(w, k, k == plane.outer) for k, w in keyed]


def faces(plane):
    """All faces of the embedding, sorted by face key; the outer one is flagged."""
    return list(plane._faces)


# -------------------------------
# CONNECTIVITY
# -------------------------------

def suppress_degree_two(graph):
    """Repeatedly replace a degree-2 vertex's two edges by a single edge."""
    g = graph.to_networkx()
    while True:
        candidates = sorted(v for v in g if g.degree(v) == 2 and not g.has_edge(v, v))
        if not candidates:
            return g
        v = candidates[0]
        (_, a), (_, b) = [(x, y) for x, y, _ in g.edges(v, keys=True)]
        g.remove_node(v)
        g.add_edge(a, b)


def is_subdivision_of_3connected(graph):
    g = suppress_degree_two(graph)
    if g.number_of_nodes() < 4 or nx.number_of_selfloops(g):
        return False
    if nx.Graph(g).number_of_edges() != g.number_of_edges():
        return False
    if not nx.is_connected(g):
        return False
    nodes = sorted(g.nodes)
    for cut in combinations(nodes, 2):
        rest = g.subgraph([v for v in nodes if v not in cut])
        if not nx.is_connected(rest):
            return False
    return True
