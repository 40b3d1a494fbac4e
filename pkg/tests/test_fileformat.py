import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from listbrooks.coloring import DISTANCE3, DISTANCE4, palette
from listbrooks.fileformat import (
    ParseError,
    format_coloring,
    format_instance,
    instance_file_from,
    parse_coloring,
    parse_instance,
)
from listbrooks.instances import random_instance

SAMPLE = """\
# a star with one short list
graph 5
mode d4
edge 0 1
edge 0 2
edge 0 3
edge 0 4
list 1 1 2
forbid 2 4
precolor 3 2
"""


def test_parse_sample():
    inst = parse_instance(SAMPLE)
    assert inst.n == 5 and inst.mode == DISTANCE4 and len(inst.edges) == 4
    lists = inst.list_assignment()
    assert lists[1] == {1, 2} and lists[2] == {1, 2, 3} and lists[0] == palette(4)
    assert inst.precolors == {3: 2}
    assert inst.short_list_vertices() == {1, 2}
    assert inst.comments == ["a star with one short list"]


def test_round_trip_is_byte_stable():
    assert format_instance(parse_instance(SAMPLE)) == SAMPLE


@pytest.mark.parametrize(
    "text,line",
    [
        ("edge 0 1\n", 1),
        ("graph 2\nedge 0 2\n", 2),
        ("graph 2\nedge 0 0\n", 2),
        ("graph 3\nedge 0 1\nedge 1 0\n", 3),
        ("graph 2\nlist 0\n", 2),
        ("graph 2\nlist 0 1 1\n", 2),
        ("graph 2\nlist 0 0\n", 2),
        ("graph 2\nlist 0 1\nforbid 0 2\n", 3),
        ("graph 2\nprecolor 0 1\nprecolor 0 2\n", 3),
        ("graph 2\nmode d5\n", 2),
        ("graph 2\nvertex 0\n", 2),
        ("graph x\n", 1),
        ("graph 2\ngraph 3\n", 2),
        ("# nothing\n", 0),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as info:
        parse_instance(text)
    assert info.value.lineno == line
    assert str(info.value).startswith(f"line {line}:")


@settings(max_examples=60, deadline=None)
@given(st.integers(4, 6), st.integers(0, 10**6), st.sampled_from([DISTANCE3, DISTANCE4]))
def test_random_instances_round_trip(delta, seed, mode):
    b = random_instance(delta, 30, mode, seed)
    text = format_instance(instance_file_from(b.graph, b.lists, mode=mode, comments=["x"]))
    inst = parse_instance(text)
    g = inst.graph()
    assert g.edges() == b.graph.edges()
    assert inst.list_assignment(g) == b.lists
    assert inst.short_list_vertices(g) == b.P
    assert format_instance(inst) == text


def test_coloring_format():
    c = {2: 1, 0: 3}
    text = format_coloring(c)
    assert text == "color 0 3\ncolor 2 1\n"
    assert parse_coloring("# header\n" + text) == c
    with pytest.raises(ParseError):
        parse_coloring("color 0 1\ncolor 0 2\n")
    with pytest.raises(ParseError):
        parse_coloring("colour 0 1\n")
