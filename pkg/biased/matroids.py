# biased/matroids.py
import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from math import comb

import networkx as nx

from .bias import BiasedGraph, all_biased_graphs, contract_edge, delete_edge, isomorphic, verify_antichain
from .certify import shelling_certificate, validate
from .conf import setting
from .constructions import identify
from .exceptions import InvalidConstructionError, OverlapError, ResourceLimitError, UnsupportedParametersError
from .graphs import Multigraph, enumerate_thetas, pair_key
from .grouplab import label_contraction, label_deletion, realizes

logger = logging.getLogger(__name__)

LIFT = "lift"
FRAME = "frame"
KINDS = (LIFT, FRAME)


def _minimal(sets):
    """Inclusion-minimal members of a family of frozensets."""
    kept = []
    for candidate in sorted(set(sets), key=lambda s: (len(s), sorted(s))):
        if candidate and not any(c <= candidate for c in kept):
            kept.append(candidate)
    return frozenset(kept)


@dataclass(frozen=True)
class CircuitMatroid:
    """A matroid on edge ids given by its circuits; rank and closure reduce to circuit containment."""
    ground: tuple
    circuits: frozenset

    def __post_init__(self):
        object.__setattr__(self, "ground", tuple(sorted(self.ground)))
        circuits = frozenset(frozenset(c) for c in self.circuits)
        ground = set(self.ground)
        for c in circuits:
            if not c or not c <= ground:
                raise InvalidConstructionError(f"circuit {sorted(c)} is empty or leaves the ground set")
        object.__setattr__(self, "circuits", circuits)

    @classmethod
    def from_candidates(cls, ground, candidates):
        return cls(tuple(ground), _minimal(candidates))

    @cached_property
    def _bit(self):
        return {e: 1 << i for i, e in enumerate(self.ground)}

    @cached_property
    def _masks(self):
        return [self.mask(c) for c in sorted(self.circuits, key=lambda c: (len(c), sorted(c)))]

    def mask(self, elements):
        value = 0
        for e in elements:
            value |= self._bit[e]
        return value

    def is_independent(self, elements):
        m = self.mask(elements)
        return not any(c & m == c for c in self._masks)

    def rank(self, elements=None):
        elements = self.ground if elements is None else elements
        chosen = 0
        size = 0
        for e in sorted(elements):
            trial = chosen | self._bit[e]
            if not any(c & trial == c for c in self._masks):
                chosen = trial
                size += 1
        return size

    def closure(self, elements):
        elements = frozenset(elements)
        r = self.rank(elements)
        return elements | {e for e in self.ground if e not in elements and self.rank(elements | {e}) == r}

    def restriction(self, elements):
        elements = frozenset(elements)
        return CircuitMatroid(tuple(elements), frozenset(c for c in self.circuits if c <= elements))

    def __len__(self):
        return len(self.ground)


def rank(matroid, elements):
    return matroid.rank(elements)


def closure(matroid, elements):
    return matroid.closure(elements)


def is_independent(matroid, elements):
    return matroid.is_independent(elements)


def uniform_matroid(r, n):
    return CircuitMatroid(tuple(range(n)), frozenset(frozenset(c) for c in combinations(range(n), r + 1)))


def is_uniform_rank_two(matroid):
    m = len(matroid.ground)
    return all(len(c) == 3 for c in matroid.circuits) and len(matroid.circuits) == comb(m, 3)


@dataclass(frozen=True)
class AxiomReport:
    ok: bool
    checked: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def check_circuit_axioms(matroid):
    """Incomparability and elimination; skipped (checked=False) past MATROID_AXIOM_CHECK_LIMIT circuits."""
    limit = setting("MATROID_AXIOM_CHECK_LIMIT")
    if len(matroid.circuits) > limit:
        logger.info("circuit axiom check skipped", extra={"circuits": len(matroid.circuits), "limit": limit})
        return AxiomReport(True, False)
    masks = matroid._masks
    for a, b in combinations(masks, 2):
        if a & b in (a, b):
            return AxiomReport(False, True, "one circuit contains another")
        shared = a & b
        union = a | b
        while shared:
            low = shared & -shared
            rest = union & ~low
            if not any(c & rest == c for c in masks):
                return AxiomReport(False, True, "circuit elimination fails")
            shared &= ~low
    return AxiomReport(True, True)


def _verified(matroid, kind):
    report = check_circuit_axioms(matroid)
    if not report.ok:
        logger.error(f"❌ {kind} matroid breaks the circuit axioms: {report.reason}")
        raise InvalidConstructionError(f"{kind} matroid breaks the circuit axioms: {report.reason}")
    return matroid


# -------------------------------
# FRAME & LIFT MATROIDS
# -------------------------------

def _unbalanced_with_vertices(biased):
    graph = biased.graph
    return [
        (cycle, graph.cycle_vertices(cycle))
        for cycle in sorted(biased.unbalanced_cycles(), key=lambda c: (len(c), sorted(c)))
    ]


def _wholly_unbalanced_thetas(biased):
    return [
        theta.edges
        for theta in enumerate_thetas(biased.graph)
        if not any(c in biased.balanced for c in theta.cycles)
    ]


def lift_matroid(biased):
    """Balanced cycles, pairs of unbalanced cycles meeting in at most one vertex, unbalanced thetas."""
    candidates = set(biased.balanced)
    unbalanced = _unbalanced_with_vertices(biased)
    for (c1, v1), (c2, v2) in combinations(unbalanced, 2):
        if len(v1 & v2) <= 1 and not c1 & c2:
            candidates.add(c1 | c2)
    candidates.update(_wholly_unbalanced_thetas(biased))
    return _verified(CircuitMatroid.from_candidates(biased.graph.edge_ids, candidates), LIFT)


def _connecting_paths(graph, first, second):
    """Edge sets of paths from one vertex set to the other, internally avoiding both."""
    classes = graph.parallel_classes
    simple = nx.Graph()
    simple.add_nodes_from(graph.vertices)
    simple.add_edges_from(classes)
    blocked = first | second
    for a in sorted(first):
        for b in sorted(second):
            allowed = (set(graph.vertices) - blocked) | {a, b}
            view = simple.subgraph(allowed)
            for route in nx.all_simple_paths(view, a, b):
                hops = zip(route, route[1:])
                for choice in product(*(classes[pair_key(u, v)] for u, v in hops)):
                    yield frozenset(choice)


def frame_matroid(biased):
    """Like the lift matroid, except disjoint unbalanced cycles need a connecting path."""
    graph = biased.graph
    candidates = set(biased.balanced)
    unbalanced = _unbalanced_with_vertices(biased)
    for (c1, v1), (c2, v2) in combinations(unbalanced, 2):
        shared = v1 & v2
        if len(shared) == 1 and not c1 & c2:
            candidates.add(c1 | c2)
        elif not shared:
            for path in _connecting_paths(graph, v1, v2):
                candidates.add(c1 | c2 | path)
    candidates.update(_wholly_unbalanced_thetas(biased))
    return _verified(CircuitMatroid.from_candidates(graph.edge_ids, candidates), FRAME)


def matroid_of(biased, kind):
    if kind == LIFT:
        return lift_matroid(biased)
    if kind == FRAME:
        return frame_matroid(biased)
    raise UnsupportedParametersError(f"unknown matroid kind {kind!r}")


def circuit_hyperplanes(matroid):
    target = matroid.rank() - 1
    return sorted(
        (c for c in matroid.circuits if matroid.rank(c) == target and matroid.closure(c) == c),
        key=sorted,
    )


# -------------------------------
# MINORS & ISOMORPHISM
# -------------------------------

def matroid_minor(matroid, delete=(), contract=()):
    delete, contract = frozenset(delete), frozenset(contract)
    if delete & contract:
        raise OverlapError(f"edges {sorted(delete & contract)} are both deleted and contracted")
    unknown = (delete | contract) - set(matroid.ground)
    if unknown:
        raise OverlapError(f"edges {sorted(unknown)} are not in the ground set")
    ground = [e for e in matroid.ground if e not in delete and e not in contract]
    kept = (c for c in matroid.circuits if not c & delete)
    return CircuitMatroid.from_candidates(ground, (c - contract for c in kept))


def _census(matroid):
    return sorted(len(c) for c in matroid.circuits)


def _element_signatures(matroid):
    sizes = {e: [] for e in matroid.ground}
    for c in matroid.circuits:
        for e in c:
            sizes[e].append(len(c))
    return {e: tuple(sorted(s)) for e, s in sizes.items()}


def matroid_isomorphic(first, second):
    """A ground-set bijection carrying circuits onto circuits, or None."""
    limit = setting("MATROID_ISO_MAX_GROUND")
    if max(len(first.ground), len(second.ground)) > limit:
        raise ResourceLimitError("matroid isomorphism ground set", limit)
    if len(first.ground) != len(second.ground) or _census(first) != _census(second):
        return None
    sig_a, sig_b = _element_signatures(first), _element_signatures(second)
    if sorted(sig_a.values()) != sorted(sig_b.values()):
        return None
    order = sorted(first.ground, key=lambda e: (sig_a[e], e))
    by_element = {e: [c for c in first.circuits if e in c] for e in first.ground}
    mapping = {}

    def consistent(e):
        for c in by_element[e]:
            if all(x in mapping for x in c) and frozenset(mapping[x] for x in c) not in second.circuits:
                return False
        return True

    def assign(index):
        if index == len(order):
            return dict(mapping)
        e = order[index]
        used = set(mapping.values())
        for f in second.ground:
            if f in used or sig_b[f] != sig_a[e]:
                continue
            mapping[e] = f
            if consistent(e):
                found = assign(index + 1)
                if found is not None:
                    return found
            del mapping[e]
        return None

    return assign(0)


# -------------------------------
# U_{2,m} AND UNIQUENESS
# -------------------------------

def u2m_representations(m, kind):
    """
    The biased graphs whose matroid of this kind is U_{2,m}: m parallel edges, m-1 parallel
    edges plus a loop and, for frame matroids, m-2 parallel edges plus a loop at each end.
    """
    if m < 4:
        raise UnsupportedParametersError("u2m_representations needs m >= 4")
    shapes = [
        [(i, 0, 1) for i in range(m)],
        [(i, 0, 1) for i in range(m - 1)] + [(m - 1, 0, 0)],
    ]
    if kind == FRAME:
        shapes.append([(i, 0, 1) for i in range(m - 2)] + [(m - 2, 0, 0), (m - 1, 1, 1)])
    graphs = [BiasedGraph(Multigraph.build([0, 1], triples), frozenset()) for triples in shapes]
    for biased in graphs:
        if not is_uniform_rank_two(matroid_of(biased, kind)):
            raise InvalidConstructionError(f"{kind} matroid of a U_2,{m} representation is not uniform")
    return graphs


def u2m_search(m, kind, max_vertices):
    """Exhaustively collect connected biased graphs on <= max_vertices vertices with matroid U_{2,m}."""
    found = []
    for n in range(1, max_vertices + 1):
        for biased in all_biased_graphs(n, m):
            if not is_uniform_rank_two(matroid_of(biased, kind)):
                continue
            if not any(isomorphic(biased, other) for other in found):
                found.append(biased)
    logger.info("U_2,m search finished", extra={"m": m, "kind": kind, "found": len(found)})
    return found


def uniqueness_hypotheses(biased):
    """Loopless, >= 3 vertices, >= 4 edges on every vertex pair and every 2-cycle unbalanced."""
    graph = biased.graph
    if graph.loops() or len(graph.vertices) < 3:
        return False
    census = graph.pair_census()
    if any(census[pair_key(u, v)] < 4 for u, v in combinations(sorted(graph.vertices), 2)):
        return False
    return not any(len(c) == 2 for c in biased.balanced)


def u24_classes(matroid):
    """Classes of "e and f lie in a common U_{2,4} restriction", singletons included."""
    triples = [c for c in matroid.circuits if len(c) == 3]
    lines = nx.Graph()
    lines.add_nodes_from(matroid.ground)
    for a, b in combinations(triples, 2):
        union = a | b
        if len(union) != 4:
            continue
        if all(frozenset(t) in matroid.circuits for t in combinations(union, 3)):
            lines.add_edges_from(combinations(sorted(union), 2))
    return sorted((frozenset(c) for c in nx.connected_components(lines)), key=sorted)


# -------------------------------
# EXCLUDED MINORS
# -------------------------------

@dataclass(frozen=True)
class ExcludedMinorReport:
    kind: str
    rank: int
    vertices: int
    unique: bool
    not_labellable: bool
    minors_labellable: bool
    minors_consistent: bool
    failures: tuple = ()

    @property
    def ok(self):
        return (
            self.rank == self.vertices
            and self.unique
            and self.not_labellable
            and self.minors_labellable
            and self.minors_consistent
        )


def excluded_minor_check(plane, kind):
    """
    The matroid of identify(plane) is an excluded minor for the class of this kind when:
    the uniqueness hypotheses hold, a shelling certificate rules out any group labelling,
    every single-edge minor has a realising labelling, and every single-edge biased
    minor has exactly the matroid minor as its matroid.
    """
    biased = identify(plane)
    matroid = matroid_of(biased, kind)
    certificate = shelling_certificate(plane)
    failures = []
    labellable = consistent = True
    for e in biased.graph.edge_ids:
        for operation, minor, labeller, delete, contract in (
            ("delete", delete_edge(biased, e), label_deletion, {e}, ()),
            ("contract", contract_edge(biased, e), label_contraction, (), {e}),
        ):
            if not realizes(labeller(plane, e), minor):
                labellable = False
                failures.append(f"{operation} {e}: no realising labelling")
            if matroid_of(minor, kind).circuits != matroid_minor(matroid, delete, contract).circuits:
                consistent = False
                failures.append(f"{operation} {e}: matroid minor disagrees")
    report = ExcludedMinorReport(
        kind,
        matroid.rank(),
        len(biased.graph.vertices),
        uniqueness_hypotheses(biased),
        validate(biased, certificate).ok,
        labellable,
        consistent,
        tuple(failures),
    )
    if not report.ok:
        logger.error(f"❌ Excluded-minor check failed for the {kind} matroid: {failures[:3]}")
    return report


# -------------------------------
# MATROID ANTICHAINS
# -------------------------------

@dataclass(frozen=True)
class MatroidAntichainReport:
    kind: str
    ranks: tuple
    vertices: tuple
    unique: tuple
    antichain: object

    @property
    def ok(self):
        return (
            self.antichain.ok
            and all(self.unique)
            and self.ranks == self.vertices
            and len(set(self.ranks)) == 1
        )

    def __bool__(self):
        return self.ok


def matroid_antichain(family, kind):
    """
    Biased graphs meeting the uniqueness hypotheses have their matroid determined up to
    the graph, so a biased antichain of such members whose matroids all have rank t is
    an antichain of rank-t matroids of this kind.
    """
    if len(family) < 2:
        raise ValueError("a matroid antichain needs at least two members")
    report = MatroidAntichainReport(
        kind,
        tuple(matroid_of(member, kind).rank() for member in family),
        tuple(len(member.graph.vertices) for member in family),
        tuple(uniqueness_hypotheses(member) for member in family),
        verify_antichain(family),
    )
    if not report.ok:
        logger.error(f"❌ Not a {kind} matroid antichain: ranks {report.ranks}, unique {report.unique}")
    return report
