# biased/serializers.py
"""
Line-oriented text formats, one object per file.

The first line is `format <kind>`; blank lines and `#` comments are ignored.

    graph         vertex <v> / edge <id> <tail> <head>
    biased        graph lines + balanced <edge ids...>
    plane         graph lines + rotation <v> <edge ids...> / outer <edge ids...>
                  + optional palette <colours...> / colour <v> <colour>
    labelling     graph lines + label <edge> <word>          (word "1" or "+3 -0 ...")
    presentation  tree <edge ids...> / gen <i> <edge> / rel <word>
    certificate   biased lines + walk <i> <steps...>
                  + step <i> cycle <ids...> at <start> <length> via <steps...>
    matroid       ground <ids...> / circuit <ids...>

Emission is sorted, so equal objects give byte-identical files.
"""
import logging
from pathlib import Path

from .bias import BiasedGraph
from .certify import ReroutingCertificate, ReroutingStep
from .constructions import ColouredPlaneGraph
from .exceptions import BiasedGraphError, ParseError
from .graphs import BACKWARD, FORWARD, ClosedWalk, Edge, Multigraph, PlaneGraph
from .grouplab import FreeWord, GroupLabelling, GroupPresentation, reduce
from .matroids import CircuitMatroid

logger = logging.getLogger(__name__)


def _ids(values):
    return " ".join(str(v) for v in values)


def _steps(steps):
    return " ".join(f"{'+' if d == FORWARD else '-'}{e}" for e, d in steps)


# -------------------------------
# EMIT
# -------------------------------

def _graph_lines(graph):
    lines = [f"vertex {v}" for v in sorted(graph.vertices)]
    lines += [f"edge {e.id} {e.tail} {e.head}" for e in graph.edges]
    return lines


def _biased_lines(biased):
    return _graph_lines(biased.graph) + [
        f"balanced {_ids(sorted(c))}" for c in sorted(biased.balanced, key=sorted)
    ]


def dump_graph(graph):
    return _document("graph", _graph_lines(graph))


def dump_biased(biased):
    return _document("biased", _biased_lines(biased))


def dump_plane(plane):
    lines = _graph_lines(plane.graph)
    lines += [f"rotation {v} {_ids(plane.rotation[v])}" for v in sorted(plane.rotation)]
    lines.append(f"outer {_ids(plane.outer)}")
    if plane.palette:
        lines.append(f"palette {_ids(plane.palette)}")
    lines += [f"colour {v} {plane.colouring[v]}" for v in sorted(plane.colouring)]
    return _document("plane", lines)


def dump_labelling(labelling):
    lines = _graph_lines(labelling.host)
    lines += [f"label {e} {labelling.values[e]}" for e in sorted(labelling.values)]
    return _document("labelling", lines)


def dump_presentation(presentation):
    lines = [f"tree {_ids(sorted(presentation.tree))}"]
    lines += [f"gen {i} {e}" for i, e in enumerate(presentation.generators)]
    lines += [f"rel {word}" for word in presentation.relators]
    return _document("presentation", lines)


def dump_certificate(biased, certificate):
    lines = _biased_lines(biased)
    lines += [f"walk {i} {_steps(w.steps)}" for i, w in enumerate(certificate.walks)]
    lines += [
        f"step {i} cycle {_ids(sorted(s.cycle))} at {s.start} {s.length} via {_steps(s.replacement)}"
        for i, s in enumerate(certificate.steps)
    ]
    return _document("certificate", lines)


def dump_matroid(matroid):
    lines = [f"ground {_ids(matroid.ground)}"]
    lines += [f"circuit {_ids(sorted(c))}" for c in sorted(matroid.circuits, key=lambda c: (len(c), sorted(c)))]
    return _document("matroid", lines)


def _document(kind, lines):
    return "\n".join([f"format {kind}"] + lines) + "\n"


# -------------------------------
# PARSE
# -------------------------------

class _Reader:
    """Groups the lines of a document by keyword, remembering line numbers for errors."""

    def __init__(self, text):
        self.entries = []
        self.kind = None
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            keyword, *rest = line.split()
            if self.kind is None:
                if keyword != "format" or len(rest) != 1:
                    raise ParseError(number, "the first line must be `format <kind>`")
                self.kind = rest[0]
                continue
            self.entries.append((number, keyword, rest))
        if self.kind is None:
            raise ParseError(1, "empty document")

    def expect(self, *kinds):
        if self.kind not in kinds:
            raise ParseError(1, f"expected format {' or '.join(kinds)}, got {self.kind}")

    def check_keywords(self, allowed):
        for number, keyword, _ in self.entries:
            if keyword not in allowed:
                raise ParseError(number, f"unexpected keyword {keyword!r}")

    def lines(self, keyword):
        return [(number, rest) for number, kw, rest in self.entries if kw == keyword]


def _int(number, token):
    try:
        return int(token)
    except ValueError:
        raise ParseError(number, f"expected an integer, got {token!r}") from None


def _parse_steps(number, tokens):
    steps = []
    for token in tokens:
        if len(token) < 2 or token[0] not in "+-":
            raise ParseError(number, f"expected a signed edge like +3 or -0, got {token!r}")
        steps.append((_int(number, token[1:]), FORWARD if token[0] == "+" else BACKWARD))
    return tuple(steps)


def _parse_word(number, tokens):
    if tokens == ["1"]:
        return FreeWord()
    return reduce(_parse_steps(number, tokens))


def _wrap(number, build):
    """Run a constructor, turning domain errors into parse errors at `number`."""
    try:
        return build()
    except ParseError:
        raise
    except BiasedGraphError as exc:
        raise ParseError(number, str(exc)) from exc


def _read_graph(reader):
    vertices = []
    for number, rest in reader.lines("vertex"):
        if len(rest) != 1:
            raise ParseError(number, "vertex takes one id")
        vertices.append(_int(number, rest[0]))
    edges = []
    for number, rest in reader.lines("edge"):
        if len(rest) != 3:
            raise ParseError(number, "edge takes id, tail and head")
        edges.append(Edge(*(_int(number, t) for t in rest)))
    first = reader.entries[0][0] if reader.entries else 1
    return _wrap(first, lambda: Multigraph(frozenset(vertices), tuple(edges)))


def _read_balanced(reader, graph):
    cycles = [
        (number, frozenset(_int(number, t) for t in rest)) for number, rest in reader.lines("balanced")
    ]
    for number, cycle in cycles:
        if not graph.is_cycle(cycle):
            raise ParseError(number, f"balanced set {sorted(cycle)} is not a cycle")
    return BiasedGraph(graph, frozenset(c for _, c in cycles))


_GRAPH = {"vertex", "edge"}


def load_graph(text):
    reader = _Reader(text)
    reader.expect("graph")
    reader.check_keywords(_GRAPH)
    return _read_graph(reader)


def load_biased(text):
    reader = _Reader(text)
    reader.expect("biased", "certificate")
    if reader.kind == "biased":
        reader.check_keywords(_GRAPH | {"balanced"})
    return _read_balanced(reader, _read_graph(reader))


def load_plane(text):
    reader = _Reader(text)
    reader.expect("plane")
    reader.check_keywords(_GRAPH | {"rotation", "outer", "palette", "colour"})
    graph = _read_graph(reader)
    rotation = {}
    for number, rest in reader.lines("rotation"):
        if not rest:
            raise ParseError(number, "rotation needs a vertex")
        rotation[_int(number, rest[0])] = tuple(_int(number, t) for t in rest[1:])
    outer_lines = reader.lines("outer")
    if len(outer_lines) != 1:
        raise ParseError(outer_lines[1][0] if outer_lines else 1, "exactly one outer line is required")
    number, rest = outer_lines[0]
    outer = tuple(_int(number, t) for t in rest)
    palette = tuple(t for _, rest in reader.lines("palette") for t in rest)
    colouring = {}
    for number, rest in reader.lines("colour"):
        if len(rest) != 2:
            raise ParseError(number, "colour takes a vertex and a colour")
        colouring[_int(number, rest[0])] = rest[1]
    cls = ColouredPlaneGraph if palette else PlaneGraph
    plane = _wrap(number, lambda: cls(graph, rotation, outer, colouring, palette))
    _wrap(number, lambda: plane.outer_face())
    return plane


def load_labelling(text):
    reader = _Reader(text)
    reader.expect("labelling")
    reader.check_keywords(_GRAPH | {"label"})
    graph = _read_graph(reader)
    values = {}
    for number, rest in reader.lines("label"):
        if len(rest) < 2:
            raise ParseError(number, "label takes an edge and a word")
        values[_int(number, rest[0])] = _parse_word(number, rest[1:])
    return _wrap(1, lambda: GroupLabelling(graph, values))


def load_presentation(text):
    reader = _Reader(text)
    reader.expect("presentation")
    reader.check_keywords({"tree", "gen", "rel"})
    tree = frozenset(_int(number, t) for number, rest in reader.lines("tree") for t in rest)
    generators = {}
    for number, rest in reader.lines("gen"):
        if len(rest) != 2:
            raise ParseError(number, "gen takes an index and an edge")
        generators[_int(number, rest[0])] = _int(number, rest[1])
    if sorted(generators) != list(range(len(generators))):
        raise ParseError(1, "generator indices must be 0, 1, 2, ...")
    relators = [_parse_word(number, rest) for number, rest in reader.lines("rel")]
    ordered = tuple(generators[i] for i in range(len(generators)))
    return _wrap(1, lambda: GroupPresentation(ordered, tuple(relators), tree))


def load_certificate(text):
    """Returns (biased graph, certificate)."""
    reader = _Reader(text)
    reader.expect("certificate")
    reader.check_keywords(_GRAPH | {"balanced", "walk", "step"})
    biased = _read_balanced(reader, _read_graph(reader))
    walks = []
    for number, rest in reader.lines("walk"):
        if _int(number, rest[0] if rest else "?") != len(walks):
            raise ParseError(number, "walks must be numbered 0, 1, 2, ...")
        walks.append(_wrap(number, lambda: ClosedWalk(_parse_steps(number, rest[1:]))))
    steps = []
    for number, rest in reader.lines("step"):
        try:
            index = _int(number, rest[0])
            at, via = rest.index("at"), rest.index("via")
        except (IndexError, ValueError):
            raise ParseError(number, "step needs `<i> cycle ... at <start> <length> via ...`") from None
        if index != len(steps) or rest[1] != "cycle" or via != at + 3:
            raise ParseError(number, "malformed step line")
        cycle = frozenset(_int(number, t) for t in rest[2:at])
        start, length = _int(number, rest[at + 1]), _int(number, rest[at + 2])
        steps.append(ReroutingStep(cycle, start, length, _parse_steps(number, rest[via + 1:])))
    return biased, ReroutingCertificate(tuple(walks), tuple(steps))


def load_matroid(text):
    reader = _Reader(text)
    reader.expect("matroid")
    reader.check_keywords({"ground", "circuit"})
    ground = [_int(number, t) for number, rest in reader.lines("ground") for t in rest]
    circuits = [frozenset(_int(number, t) for t in rest) for number, rest in reader.lines("circuit")]
    return _wrap(1, lambda: CircuitMatroid(tuple(ground), frozenset(circuits)))


# -------------------------------
# FILES
# -------------------------------

def read_format(path):
    """The `format` kind named on the first meaningful line of a file."""
    return _Reader(Path(path).read_text()).kind


def write_text(path, text):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    logger.info("artifact written", extra={"path": str(path), "bytes": len(text)})
    return path
