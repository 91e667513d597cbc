# biased/tests/test_serializers.py
import pytest

from biased.certify import shelling_certificate, validate
from biased.exceptions import ParseError
from biased.grouplab import label_2Cn, presentation
from biased.matroids import lift_matroid
from biased.serializers import (
    dump_biased,
    dump_certificate,
    dump_labelling,
    dump_matroid,
    dump_plane,
    dump_presentation,
    load_biased,
    load_certificate,
    load_labelling,
    load_matroid,
    load_plane,
    load_presentation,
)


# -------------------------------
# ROUND TRIPS
# -------------------------------

def test_biased_graph_survives_a_round_trip(two_c3):
    assert load_biased(dump_biased(two_c3)) == two_c3


def test_emission_is_deterministic(two_c3):
    assert dump_biased(two_c3) == dump_biased(load_biased(dump_biased(two_c3)))


def test_plane_graph_survives_a_round_trip(f4):
    loaded = load_plane(dump_plane(f4))
    assert loaded == f4
    assert loaded.t == 3


def test_labelling_and_presentation(two_c3):
    labelling = label_2Cn(3)
    assert load_labelling(dump_labelling(labelling)).values == labelling.values
    pres = presentation(two_c3, {0, 1})
    assert load_presentation(dump_presentation(pres)) == pres


def test_matroid_round_trip(two_c3):
    matroid = lift_matroid(two_c3)
    assert load_matroid(dump_matroid(matroid)) == matroid


def test_certificate_text_revalidates(f4, f4_biased):
    certificate = shelling_certificate(f4)
    biased, loaded = load_certificate(dump_certificate(f4_biased, certificate))
    assert biased == f4_biased
    assert loaded == certificate
    assert validate(biased, loaded).ok


def test_certificate_file_also_loads_as_a_biased_graph(f4, f4_biased):
    assert load_biased(dump_certificate(f4_biased, shelling_certificate(f4))) == f4_biased


# -------------------------------
# PARSE ERRORS
# -------------------------------

def test_comments_and_blank_lines_are_ignored():
    text = "# doubled digon\nformat biased\n\nvertex 0\nvertex 1   # second\nedge 0 0 1\nedge 1 0 1\n"
    assert len(load_biased(text).graph.edges) == 2


@pytest.mark.parametrize(
    "text,line",
    [
        ("format biased\nvertex 0\nedge x 0 0\n", 3),
        ("vertex 0\n", 1),
        ("format biased\nvertex 0\nvertex 1\nedge 0 0 1\nbalanced 0\n", 5),
        ("format biased\nvertex 0\nwobble 1\n", 3),
        ("format labelling\nvertex 0\nedge 0 0 0\nlabel 0 *2\n", 4),
    ],
)
def test_parse_error_names_the_line(text, line):
    with pytest.raises(ParseError) as excinfo:
        load_biased(text) if "labelling" not in text else load_labelling(text)
    assert excinfo.value.line == line
    assert f"line {line}:" in str(excinfo.value)


def test_wrong_format_is_refused(two_c3):
    with pytest.raises(ParseError):
        load_plane(dump_biased(two_c3))


def test_plane_needs_exactly_one_outer_line(f4):
    text = "\n".join(line for line in dump_plane(f4).splitlines() if not line.startswith("outer"))
    with pytest.raises(ParseError):
        load_plane(text)
