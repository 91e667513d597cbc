# biased/constructions.py
import logging
from collections import Counter
from dataclasses import dataclass

from .bias import BiasedGraph, validate_theta
from .conf import setting
from .exceptions import InvalidConstructionError, UnsupportedParametersError
from .graphs import (
    Edge,
    Multigraph,
    PlaneGraph,
    enumerate_cycles,
    face_walks,
    faces,
    is_subdivision_of_3connected,
    pair_key,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ColouredPlaneGraph(PlaneGraph):
    """A plane graph whose every vertex carries a colour from `palette` (t = len(palette))."""

    def __post_init__(self):
        super().__post_init__()
        if set(self.colouring) != set(self.graph.vertices):
            raise InvalidConstructionError("every vertex needs a colour")
        if not set(self.colouring.values()) <= set(self.palette):
            raise InvalidConstructionError("colouring uses a colour outside the palette")

    @property
    def t(self):
        return len(self.palette)


# -------------------------------
# EMBEDDING BUILDER
# -------------------------------

class _PlaneBuilder:
    """Accumulates vertices, edges and rotations; subdivision keeps rotations consistent."""

    def __init__(self):
        self.colouring = {}
        self.edges = {}
        self.rotation = {}
        self._next_edge = 0

    def vertex(self, colour):
        v = len(self.colouring)
        self.colouring[v] = colour
        return v

    def edge(self, tail, head):
        e = self._next_edge
        self._next_edge += 1
        self.edges[e] = (tail, head)
        return e

    def subdivide(self, edge_id, colours):
        """Replace an edge by a path whose new vertices get `colours`, listed from its tail."""
        if not colours:
            return []
        tail, head = self.edges.pop(edge_id)
        inner = [self.vertex(c) for c in colours]
        chain = [tail] + inner + [head]
        path = [self.edge(u, v) for u, v in zip(chain, chain[1:])]
        self.rotation[tail] = [path[0] if e == edge_id else e for e in self.rotation[tail]]
        self.rotation[head] = [path[-1] if e == edge_id else e for e in self.rotation[head]]
        for i, v in enumerate(inner):
            self.rotation[v] = [path[i], path[i + 1]]
        return inner

    def build(self, palette, outer_vertex):
        """Renumber edges compactly and take the lowest-key face at `outer_vertex` as outer."""
        renumber = {old: new for new, old in enumerate(sorted(self.edges))}
        graph = Multigraph(
            frozenset(self.colouring),
            tuple(Edge(renumber[e], *ends) for e, ends in self.edges.items()),
        )
        rotation = {v: tuple(renumber[e] for e in rot) for v, rot in self.rotation.items()}
        outer = next(
            key
            for key, walk in face_walks(graph, rotation)
            if outer_vertex in walk.vertex_sequence(graph)
        )
        return ColouredPlaneGraph(graph, rotation, outer, dict(self.colouring), tuple(palette))


def _wheel_pair(builder, rim_colours, hub_colour):
    """A 2k-cycle with one hub inside and one outside, both joined to every rim vertex."""
    n = len(rim_colours)
    rim = [builder.vertex(c) for c in rim_colours]
    hub_in = builder.vertex(hub_colour)
    hub_out = builder.vertex(hub_colour)
    rim_edges = [builder.edge(rim[i], rim[(i + 1) % n]) for i in range(n)]
    spokes_in = [builder.edge(hub_in, rim[i]) for i in range(n)]
    spokes_out = [builder.edge(hub_out, rim[i]) for i in range(n)]
    builder.rotation[hub_in] = list(spokes_in)
    builder.rotation[hub_out] = list(reversed(spokes_out))
    for i in range(n):
        builder.rotation[rim[i]] = [spokes_out[i], rim_edges[i], spokes_in[i], rim_edges[i - 1]]
    return rim, hub_in, hub_out, rim_edges, spokes_in, spokes_out


# -------------------------------
# F_2k AND H_2k
# -------------------------------

def build_F(k):
    """
    F_2k: a 2k-cycle coloured 0,1 alternately plus two hubs of colour a.
    The outer face is the lowest-key triangle at the outside hub.
    """
    if k < 2:
        # k = 1 turns the rim into a pair of parallel edges
        raise UnsupportedParametersError("build_F needs k >= 2 for a simple graph")
    builder = _PlaneBuilder()
    rim_colours = ["0" if i % 2 == 0 else "1" for i in range(2 * k)]
    _, _, hub_out, *_ = _wheel_pair(builder, rim_colours, "a")
    return builder.build(("a", "0", "1"), hub_out)


_RING_A = ("b", "0", "b", "1", "b", "0", "b", "1")
_RING_B = ("a", "1", "a", "0", "a", "1", "a", "0")


def _nested_rings(builder, k, colour_of):
    """
    2k nested 8-cycles joined by perfect matchings, hub v1 inside on the odd
    positions of ring 0 and hub v2 outside on the odd positions of the last ring.
    """
    rings = 2 * k
    last = rings - 1
    ring = [[builder.vertex(colour_of(r, p)) for p in range(8)] for r in range(rings)]
    v1 = builder.vertex("a")
    v2 = builder.vertex("b")
    ring_edges = [[builder.edge(ring[r][p], ring[r][(p + 1) % 8]) for p in range(8)] for r in range(rings)]
    matching = [[builder.edge(ring[r][p], ring[r + 1][p]) for p in range(8)] for r in range(last)]
    spokes_in = {p: builder.edge(v1, ring[0][p]) for p in (1, 3, 5, 7)}
    spokes_out = {p: builder.edge(v2, ring[last][p]) for p in (1, 3, 5, 7)}
    builder.rotation[v1] = [spokes_in[p] for p in (1, 3, 5, 7)]
    builder.rotation[v2] = [spokes_out[p] for p in (7, 5, 3, 1)]
    for r in range(rings):
        for p in range(8):
            outward = matching[r][p] if r < last else spokes_out.get(p)
            inward = matching[r - 1][p] if r > 0 else spokes_in.get(p)
            order = [outward, ring_edges[r][p], inward, ring_edges[r][p - 1]]
            builder.rotation[ring[r][p]] = [e for e in order if e is not None]
    return ring, v1, v2, ring_edges


def build_H(k):
    """
    H_2k: the inner ring is b,0,b,1,b,0,b,1 and rings alternate with a,1,a,0,a,1,a,0,
    which is the only extension giving every quadrilateral the colours a, b, 0, 1.
    """
    if k < 1:
        raise UnsupportedParametersError("build_H needs k >= 1")
    builder = _PlaneBuilder()
    _, _, v2, _ = _nested_rings(builder, k, lambda r, p: (_RING_A if r % 2 == 0 else _RING_B)[p])
    return builder.build(("a", "b", "0", "1"), v2)


# -------------------------------
# COLOURED PLANAR GRAPHS FOR ANY t
# -------------------------------

def choose_sequence(s, ell, variant):
    """
    A sequence x_1..x_2k over 1..2s with x_i of the parity of i, every odd/even pair
    consecutive at least ell times, and every value repeated ell(s-1) times ("odd")
    or ell*s times ("even"). Built greedily: the next value settles the largest pair
    deficit with the current one, then the largest outstanding deficits overall.
    Returns (sequence, k).
    """
    if s < 1 or ell < 1:
        raise UnsupportedParametersError("choose_sequence needs s >= 1 and ell >= 1")
    if variant not in ("odd", "even"):
        raise UnsupportedParametersError(f"unknown variant {variant!r}")
    odds = list(range(1, 2 * s, 2))
    evens = list(range(2, 2 * s + 1, 2))
    need = ell * (s - 1) if variant == "odd" else ell * s
    min_k = max(2, s + 1) if variant == "odd" else 2
    pairs = Counter()
    counts = Counter({1: 1})
    sequence = [1]

    def pair_deficit(a, b):
        return max(0, ell - pairs[pair_key(a, b)])

    def total_deficit(c):
        return sum(pair_deficit(c, d) for d in (evens if c % 2 else odds))

    def satisfied():
        return all(pair_deficit(a, b) == 0 for a in odds for b in evens) and all(
            counts[c] >= need for c in odds + evens
        )

    while not satisfied() or len(sequence) % 2 or len(sequence) < 2 * min_k:
        prev = sequence[-1]
        candidates = odds if (len(sequence) + 1) % 2 else evens
        nxt = max(
            candidates,
            key=lambda c: (pair_deficit(prev, c), total_deficit(c), need - counts[c], -c),
        )
        pairs[pair_key(prev, nxt)] += 1
        counts[nxt] += 1
        sequence.append(nxt)
    return tuple(sequence), len(sequence) // 2


def _wrap(value, s):
    return (value - 1) % (2 * s) + 1


def _same_parity(colour, s):
    return [c for c in range(1, 2 * s + 1) if c % 2 == colour % 2 and c != colour]


def _build_odd(s, ell):
    sequence, k = choose_sequence(s, ell, "odd")
    builder = _PlaneBuilder()
    rim, _, hub_out, _, spokes_in, spokes_out = _wheel_pair(builder, [str(x) for x in sequence], "a")

    for i, x in enumerate(sequence):
        near_hub = _wrap(x + 2, s)
        rest = sorted(set(_same_parity(x, s)) - {near_hub})
        builder.subdivide(spokes_in[i], [str(c) for c in [near_hub] + rest])

    # u-vertices next to the rim on the outside spokes cover every same-parity pair
    designated = {}
    for j in range(1, 2 * s + 1):
        holders = [i for i, x in enumerate(sequence) if x == j][: ell * (s - 1)]
        for n in range(1, s):
            for i in holders[(n - 1) * ell:n * ell]:
                designated[i] = _wrap(j + 2 * n, s)
    for i, x in enumerate(sequence):
        options = sorted(_same_parity(x, s))
        near_rim = designated.get(i, options[-1])
        rest = [c for c in options if c != near_rim]
        builder.subdivide(spokes_out[i], [str(c) for c in rest + [near_rim]])

    palette = ("a",) + tuple(str(c) for c in range(1, 2 * s + 1))
    return builder.build(palette, hub_out)


def _build_even(s, ell):
    """
    Recolour the four radial lines of H_2k with the sequence (lines at positions 3 and 7
    read x_1..x_2k, lines at 1 and 5 read x_2..x_2k,x_1), then subdivide every ring edge
    s-1 times. Lines at 3 and 1 serve the hub-colour pairs, lines at 7 and 5 the
    same-parity pairs; new colours are picked greedily by pair deficit.
    """
    sequence, k = choose_sequence(s, ell, "even")
    n = len(sequence)

    def colour_of(r, p):
        if p % 2 == 0:
            return (_RING_A if r % 2 == 0 else _RING_B)[p]
        x = sequence[r] if p in (3, 7) else sequence[(r + 1) % n]
        return str(x)

    builder = _PlaneBuilder()
    ring, _, v2, ring_edges = _nested_rings(builder, k, colour_of)
    counts = Counter()
    for u, v in builder.edges.values():
        counts[pair_key(builder.colouring[u], builder.colouring[v])] += 1

    def cheapest(anchor, options):
        return min(options, key=lambda c: (counts[pair_key(anchor, str(c))], c))

    for position, hub_duty in ((3, True), (1, True), (7, False), (5, False)):
        for r in range(2 * k):
            for edge_id in (ring_edges[r][position], ring_edges[r][position - 1]):
                tail, head = builder.edges[edge_id]
                hub, rim = (tail, head) if builder.colouring[tail] in ("a", "b") else (head, tail)
                hub_colour, rim_colour = builder.colouring[hub], builder.colouring[rim]
                remaining = _same_parity(int(rim_colour), s)
                chain = []
                if hub_duty:
                    chain.append(cheapest(hub_colour, remaining))
                    remaining.remove(chain[-1])
                    while remaining:
                        chain.append(cheapest(str(chain[-1]), remaining))
                        remaining.remove(chain[-1])
                else:
                    chain.insert(0, cheapest(rim_colour, remaining))
                    remaining.remove(chain[0])
                    while remaining:
                        chain.insert(0, cheapest(str(chain[0]), remaining))
                        remaining.remove(chain[0])
                path = [hub_colour] + [str(c) for c in chain] + [rim_colour]
                for a, b in zip(path, path[1:]):
                    counts[pair_key(a, b)] += 1
                counts[pair_key(hub_colour, rim_colour)] -= 1
                from_tail = chain if tail == hub else list(reversed(chain))
                builder.subdivide(edge_id, [str(c) for c in from_tail])

    palette = ("a", "b") + tuple(str(c) for c in range(1, 2 * s + 1))
    return builder.build(palette, v2)


def build_coloured_planar(t, ell):
    """
    A t-coloured plane graph with every colour once per face, every cycle of length
    <= t facial, and every colour pair joined by >= ell edges. Properties are
    machine-checked; failed attempts are rebuilt with a larger sequence.
    """
    if t < 3 or ell < 1:
        raise UnsupportedParametersError("build_coloured_planar needs t >= 3 and ell >= 1")
    attempts = setting("CONSTRUCTION_ATTEMPTS")
    for attempt in range(attempts):
        target = ell + attempt
        if t == 3:
            candidate = build_F(max(2, -(-target // 2)))
        elif t == 4:
            candidate = build_H(max(2, -(-target // 4)))
        elif t % 2:
            candidate = _build_odd((t - 1) // 2, target)
        else:
            candidate = _build_even((t - 2) // 2, target)
        report = check_properties(candidate, ell)
        if report.ok:
            return candidate
        logger.info("rebuilding coloured planar graph", extra={"t": t, "ell": ell, "report": str(report)})
    logger.error(f"❌ No coloured planar graph for t={t}, ell={ell} after {attempts} attempts")
    raise InvalidConstructionError(f"could not build a coloured planar graph for t={t}, ell={ell}")


# -------------------------------
# PROPERTY CHECKS
# -------------------------------

@dataclass(frozen=True)
class PropertyReport:
    subdivision_of_3connected: bool
    colours_once_per_face: bool
    short_cycles_facial: bool
    pairs_joined: bool = None

    @property
    def ok(self):
        return all(v is not False for v in (
            self.subdivision_of_3connected,
            self.colours_once_per_face,
            self.short_cycles_facial,
            self.pairs_joined,
        ))

    def __str__(self):
        return (
            f"P1={self.subdivision_of_3connected} P2={self.colours_once_per_face} "
            f"P3={self.short_cycles_facial} P4={self.pairs_joined}"
        )


def colours_once_per_face(plane):
    palette = sorted(plane.palette)
    return all(
        sorted(plane.colouring[v] for v in face.walk.vertex_sequence(plane.graph)) == palette
        for face in faces(plane)
    )


def colour_pair_census(plane):
    census = Counter()
    for e in plane.graph.edges:
        census[pair_key(plane.colouring[e.tail], plane.colouring[e.head])] += 1
    return census


def check_properties(plane, ell=None):
    t = len(plane.palette)
    face_sets = {face.edge_set for face in faces(plane)}
    short = enumerate_cycles(plane.graph, t)
    joined = None
    if ell is not None:
        census = colour_pair_census(plane)
        joined = all(
            census[pair_key(a, b)] >= ell
            for i, a in enumerate(plane.palette)
            for b in plane.palette[i + 1:]
        )
    return PropertyReport(
        is_subdivision_of_3connected(plane.graph),
        colours_once_per_face(plane),
        short <= face_sets,
        joined,
    )


# -------------------------------
# CYCLE CONSTRUCTION & DOUBLED CYCLES
# -------------------------------

def build_cycle_construction(t, k):
    """
    Recoloured and subdivided F_2k whose faces read 0,1,...,t-1 cyclically, so that the
    identified graph has underlying simple graph C_t with 2k edges per adjacent pair.
    """
    if t < 3 or t == 4:
        raise UnsupportedParametersError(f"the cycle construction needs t = 3 or t >= 5, got t={t}")
    if k < 2:
        raise UnsupportedParametersError("the cycle construction needs k >= 2")
    if (t, k) in {(5, 2), (8, 2)}:
        raise UnsupportedParametersError(f"(t, k) = ({t}, {k}) is not produced by the subdivision scheme")
    builder = _PlaneBuilder()
    if t == 3:
        rim_colours = ["0" if i % 2 == 0 else "1" for i in range(2 * k)]
        _, _, hub_out, *_ = _wheel_pair(builder, rim_colours, "2")
        return builder.build(("0", "1", "2"), hub_out)

    p, q = {0: (0, 0), 1: (0, 1), 2: (1, 1)}[t % 3]
    s = (t - p - q) // 3
    hub, top = s + p, 2 * s + p + q
    rim_colours = ["0" if i % 2 == 0 else str(top) for i in range(2 * k)]
    _, _, hub_out, rim_edges, spokes_in, spokes_out = _wheel_pair(builder, rim_colours, str(hub))
    for i in range(2 * k):
        if i % 2 == 0:
            spoke = list(range(hub - 1, 0, -1))
            rim_path = list(range(t - 1, top, -1))
        else:
            spoke = list(range(hub + 1, top))
            rim_path = list(range(top + 1, t))
        for edge_id in (spokes_in[i], spokes_out[i]):
            builder.subdivide(edge_id, [str(c) for c in spoke])
        builder.subdivide(rim_edges[i], [str(c) for c in rim_path])
    return builder.build(tuple(str(c) for c in range(t)), hub_out)


def build_2Cn(n):
    """(2C_n, B_n): edges i and n+i join v_i to v_(i+1); each copy of the cycle is balanced."""
    if n < 2:
        raise UnsupportedParametersError("build_2Cn needs n >= 2")
    triples = [(i, i, (i + 1) % n) for i in range(n)] + [(n + i, i, (i + 1) % n) for i in range(n)]
    graph = Multigraph.build(range(n), triples)
    return BiasedGraph(graph, frozenset({frozenset(range(n)), frozenset(range(n, 2 * n))}))


# -------------------------------
# IDENTIFICATION
# -------------------------------

def identify(plane, include_outer=False):
    """
    Merge every colour class to one vertex (named by its palette index), keeping edge ids.
    Balanced cycles are the finite-face boundaries, or every face with include_outer.
    """
    if not isinstance(plane, ColouredPlaneGraph) or not plane.palette:
        raise InvalidConstructionError("identification needs a coloured plane graph")
    if not colours_once_per_face(plane):
        raise InvalidConstructionError("some face does not show every colour exactly once")
    index = {colour: i for i, colour in enumerate(plane.palette)}
    colour = plane.colouring
    graph = Multigraph(
        frozenset(range(len(plane.palette))),
        tuple(Edge(e.id, index[colour[e.tail]], index[colour[e.head]]) for e in plane.graph.edges),
    )
    chosen = faces(plane) if include_outer else plane.finite_faces()
    biased = BiasedGraph(graph, frozenset(face.edge_set for face in chosen))
    verdict = validate_theta(biased)
    if not verdict.ok:
        logger.error(f"❌ Identified graph breaks the theta property: {verdict.theta}")
        raise InvalidConstructionError("identification does not yield a biased graph")
    return biased


def antichain_member(plane):
    return identify(plane, include_outer=True)


def antichain_family(t, ells):
    """Members with all faces balanced, one per distinct edge count."""
    members = {}
    for ell in ells:
        plane = build_coloured_planar(t, ell)
        members.setdefault(len(plane.graph.edges), plane)
    return [antichain_member(members[size]) for size in sorted(members)]
