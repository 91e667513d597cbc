# biased/certify.py
import logging
from collections import Counter
from dataclasses import dataclass

from sympy import Matrix

from .conf import setting
from .constructions import identify
from .exceptions import (
    ArcMismatchError,
    InvalidConstructionError,
    NoShellingFoundError,
    ResourceLimitError,
    SubwalkNotPathError,
    SubwalkNotPresentError,
    WalkError,
)
from .graphs import ClosedWalk, cycle_walk, enumerate_cycles, trace_path

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReroutingStep:
    """
    Replace `length` steps of the walk, starting at index `start` (wrapping around),
    by `replacement`, the other arc of the balanced cycle `cycle`.
    """
    cycle: frozenset
    start: int
    length: int
    replacement: tuple

    def __post_init__(self):
        object.__setattr__(self, "cycle", frozenset(self.cycle))
        object.__setattr__(self, "replacement", tuple((int(e), int(d)) for e, d in self.replacement))


@dataclass(frozen=True)
class ReroutingCertificate:
    walks: tuple
    steps: tuple

    def __len__(self):
        return len(self.steps)


@dataclass(frozen=True)
class CertificateVerdict:
    ok: bool
    index: int = None
    reason: str = ""

    def __bool__(self):
        return self.ok


# -------------------------------
# REROUTING
# -------------------------------

def _edges_of(walk, start, length):
    n = len(walk)
    return [walk.steps[(start + i) % n][0] for i in range(length)]


def apply_rerouting(graph, walk, step):
    n = len(walk)
    if not 0 <= step.start < n or not 1 <= step.length <= n:
        raise SubwalkNotPresentError(f"no subwalk of length {step.length} at index {step.start}")
    rotated = walk.rotated(step.start)
    sub = rotated.steps[:step.length]
    sub_edges = [e for e, _ in sub]
    if len(set(sub_edges)) != len(sub_edges) or not set(sub_edges) < step.cycle:
        raise SubwalkNotPathError("replaced subwalk is not a proper part of the cycle")
    starts = rotated.vertex_sequence(graph)
    path = starts[:step.length] + [starts[step.length % n]]
    if len(set(path)) != len(path):
        raise SubwalkNotPathError(f"subwalk at index {step.start} revisits a vertex")
    arc_edges = [e for e, _ in step.replacement]
    if set(arc_edges) != step.cycle - set(sub_edges) or len(set(arc_edges)) != len(arc_edges):
        raise ArcMismatchError("replacement is not the complementary arc of the cycle")
    traced = trace_path(graph, arc_edges, path[0])
    if traced is None or traced[1] != path[-1] or tuple(traced[0]) != step.replacement:
        raise ArcMismatchError("replacement does not join the ends of the replaced subwalk")
    return ClosedWalk(step.replacement + rotated.steps[step.length:])


def rerouting_moves(biased, walk):
    """Every balanced rerouting of `walk`, ordered by cycle, then start index, then length."""
    graph = biased.graph
    starts = walk.vertex_sequence(graph)
    n = len(walk)
    edges = walk.edge_ids
    cycles = set()
    for e in edges:
        cycles.update(biased.balanced_by_edge.get(e, ()))
    moves = []
    for cycle in sorted(cycles, key=sorted):
        for start in range(n):
            seen_vertices = [starts[start]]
            for length in range(1, min(n, len(cycle) - 1) + 1):
                e = edges[(start + length - 1) % n]
                nxt = starts[(start + length) % n]
                if e not in cycle or nxt in seen_vertices or e in _edges_of(walk, start, length - 1):
                    break
                seen_vertices.append(nxt)
                sub = set(_edges_of(walk, start, length))
                traced = trace_path(graph, cycle - sub, starts[start])
                if traced is None or traced[1] != nxt:
                    continue
                moves.append(ReroutingStep(cycle, start, length, tuple(traced[0])))
    return moves


# -------------------------------
# VALIDATION
# -------------------------------

def _is_cycle_walk(graph, walk):
    try:
        return walk.is_simple(graph) and graph.is_cycle(walk.edge_ids)
    except WalkError:
        return False


def validate(biased, certificate):
    """The first unjustified walk index, or ok; failures are values, never exceptions."""
    graph = biased.graph
    walks, steps = certificate.walks, certificate.steps
    if not walks:
        return CertificateVerdict(False, 0, "certificate has no walks")
    if len(steps) != len(walks) - 1:
        return CertificateVerdict(False, len(walks), "step count must be one less than walk count")
    first = walks[0]
    if not _is_cycle_walk(graph, first) or biased.is_balanced(first.edge_ids):
        return CertificateVerdict(False, 0, "first walk is not around an unbalanced cycle")
    for i, step in enumerate(steps):
        if step.cycle not in biased.balanced:
            return CertificateVerdict(False, i + 1, "rerouting cycle is not balanced")
        try:
            result = apply_rerouting(graph, walks[i], step)
        except WalkError as exc:
            return CertificateVerdict(False, i + 1, str(exc))
        if not result.same_up_to_rotation(walks[i + 1]):
            return CertificateVerdict(False, i + 1, "walk does not follow from the previous one")
    last = walks[-1]
    if not _is_cycle_walk(graph, last) or not biased.is_balanced(last.edge_ids):
        return CertificateVerdict(False, len(walks) - 1, "last walk is not around a balanced cycle")
    return CertificateVerdict(True)


# -------------------------------
# SHELLING
# -------------------------------

def _block(walk, face_edges):
    """(start, length) of the single contiguous run of walk steps on the face, or None."""
    n = len(walk)
    on_face = [e in face_edges for e in walk.edge_ids]
    if not any(on_face) or all(on_face):
        return None
    runs = [i for i in range(n) if on_face[i] and not on_face[i - 1]]
    if len(runs) != 1:
        return None
    start = runs[0]
    length = 0
    while on_face[(start + length) % n]:
        length += 1
    return start, length


def shelling_certificate(plane):
    """
    Peel finite faces off the disc one at a time, rerouting the boundary walk across
    each; the lowest-key eligible face goes first and dead ends are backtracked.
    """
    biased = identify(plane)
    graph = plane.graph
    finite = sorted(plane.finite_faces(), key=lambda f: f.key)
    start_walk = plane.outer_face().walk
    dead = set()

    def peel(region, walk):
        if len(region) == 1:
            return [], [walk]
        if region in dead:
            return None
        for face in finite:
            if face.key not in region:
                continue
            block = _block(walk, face.edge_set)
            if block is None or block[1] >= len(face):
                continue
            start, length = block
            sub = set(_edges_of(walk, start, length))
            path_start = walk.rotated(start).vertex_sequence(graph)[0]
            traced = trace_path(graph, face.edge_set - sub, path_start)
            if traced is None:
                continue
            step = ReroutingStep(face.edge_set, start, length, tuple(traced[0]))
            try:
                result = apply_rerouting(graph, walk, step)
            except WalkError:
                continue
            if not result.is_simple(graph):
                continue
            found = peel(region - {face.key}, result)
            if found is not None:
                steps, walks = found
                return [step] + steps, [walk] + walks
        dead.add(region)
        return None

    found = peel(frozenset(f.key for f in finite), start_walk)
    if found is None:
        logger.error(f"❌ No shelling order for a plane graph with {len(finite)} finite faces")
        raise NoShellingFoundError("no shelling order reaches a single face")
    steps, walks = found
    certificate = ReroutingCertificate(tuple(walks), tuple(steps))
    verdict = validate(biased, certificate)
    if not verdict.ok:
        logger.error(f"❌ Shelling certificate fails validation at walk {verdict.index}: {verdict.reason}")
        raise InvalidConstructionError(f"shelling certificate is invalid: {verdict.reason}")
    logger.info("shelling certificate built", extra={"steps": len(steps)})
    return certificate


# -------------------------------
# BOUNDED SEARCH
# -------------------------------

def walk_vector(walk):
    vector = Counter()
    for e, d in walk:
        vector[e] += d
    return vector


def _homology_filter(biased):
    """
    Reroutings change a walk's edge vector by a balanced-cycle vector, so only
    unbalanced cycles inside the span of the balanced ones can reach a balanced cycle.
    """
    graph = biased.graph
    columns = {e: i for i, e in enumerate(graph.edge_ids)}

    def row(walk):
        vector = walk_vector(walk)
        return [vector.get(e, 0) for e in columns]

    rows = [row(cycle_walk(graph, c)) for c in sorted(biased.balanced, key=sorted)]
    kernel = Matrix(rows).nullspace() if rows else None

    def in_span(walk):
        if kernel is None:
            return False
        v = Matrix([row(walk)])
        return all((v * k)[0, 0] == 0 for k in kernel)

    return in_span


def _expand(biased, frontier, visited, max_walk_len, limit):
    graph = biased.graph
    layer = {}
    for key, walk in frontier.items():
        for step in rerouting_moves(biased, walk):
            result = apply_rerouting(graph, walk, step)
            if len(result) > max_walk_len:
                continue
            child = result.canonical()
            if child in visited or child in layer:
                continue
            layer[child] = result
            visited[child] = key
            if len(visited) > limit:
                logger.error(f"❌ Certificate search stopped after {limit} walks")
                raise ResourceLimitError("certificate search states", limit)
    return layer


def _chain(visited, key):
    chain = [key]
    while visited[chain[-1]] is not None:
        chain.append(visited[chain[-1]])
    return chain


def _replay(biased, keys, first_walk):
    walk = first_walk
    walks, steps = [walk], []
    for key in keys[1:]:
        for step in rerouting_moves(biased, walk):
            result = apply_rerouting(biased.graph, walk, step)
            if result.canonical() == key:
                walks.append(result)
                steps.append(step)
                walk = result
                break
        else:
            raise InvalidConstructionError("certificate chain cannot be replayed")
    return ReroutingCertificate(tuple(walks), tuple(steps))


def search_certificate(biased, max_walk_len=None, max_steps=None):
    """
    Bidirectional breadth-first search between simple walks around unbalanced cycles
    and around balanced cycles; reroutings are involutions, so both sides use the same
    moves. A result is a proof of non-labellability; None only means "not within bounds".
    """
    graph = biased.graph
    max_walk_len = 2 * len(graph.edges) if max_walk_len is None else max_walk_len
    max_steps = len(biased.balanced) + len(graph.edges) if max_steps is None else max_steps
    if max_walk_len < 1 or max_steps < 1:
        raise ValueError("search bounds must be at least 1")
    if not biased.balanced:
        return None
    in_span = _homology_filter(biased)
    starts = {}
    for cycle in sorted(enumerate_cycles(graph), key=lambda c: (len(c), sorted(c))):
        if cycle in biased.balanced:
            continue
        walk = cycle_walk(graph, cycle)
        if len(walk) <= max_walk_len and in_span(walk):
            starts.setdefault(walk.canonical(), walk)
    if not starts:
        return None
    goals = {}
    for cycle in sorted(biased.balanced, key=sorted):
        walk = cycle_walk(graph, cycle)
        if len(walk) <= max_walk_len:
            goals.setdefault(walk.canonical(), walk)

    limit = setting("CERTIFICATE_MAX_STATES")
    forward = {key: None for key in starts}
    backward = {key: None for key in goals}
    front, back = dict(starts), dict(goals)
    depth = 0
    meet = None
    while front and back and meet is None and depth < max_steps:
        if len(front) <= len(back):
            front = _expand(biased, front, forward, max_walk_len, limit)
        else:
            back = _expand(biased, back, backward, max_walk_len, limit)
        depth += 1
        common = sorted(set(forward) & set(backward))
        if common:
            meet = common[0]
    logger.debug("certificate search finished", extra={"forward": len(forward), "backward": len(backward)})
    if meet is None:
        return None
    keys = list(reversed(_chain(forward, meet))) + _chain(backward, meet)[1:]
    certificate = _replay(biased, keys, starts[keys[0]])
    verdict = validate(biased, certificate)
    if not verdict.ok:
        logger.error(f"❌ Searched certificate fails validation at walk {verdict.index}: {verdict.reason}")
        raise InvalidConstructionError(f"searched certificate is invalid: {verdict.reason}")
    return certificate
