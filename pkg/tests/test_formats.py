import pytest

from core.decomposition import decompose_tree
from core.errors import FormatError
from core.separation import CSSeparator, Cut, all_cuts
from core.trigraph import SWITCHABLE, Trigraph
from core.weights import BicliqueKind, make_biclique
from utils.fixtures import fixture
from utils.formats import (
    dump_biclique,
    dump_composition,
    dump_decomposition,
    dump_separator,
    dump_trigraph,
    load_separator,
    load_trigraph,
    parse_biclique,
    parse_separator,
    parse_trigraph,
)
from utils.generator import generate

SAMPLE = """\
# a path with one switchable pair
trigraph v1
n 4
theta 0 1 1
theta 1 2 0   # switchable
theta 2 3 1
weight 0 2 0 0
pairweight 1 2 1 0
region 0 1
"""


def test_parse_sample():
    parsed = parse_trigraph(SAMPLE)
    T = parsed.trigraph
    assert T.n == 4
    assert T.switchable_pairs() == [(1, 2)]
    assert T.value(1, 2) == SWITCHABLE
    assert T.value(0, 3) == -1
    assert parsed.weights.real == (2, 0, 0, 0)
    assert parsed.weights.pair_weight(1, 2) == (1, 0)
    assert parsed.regions == (0b0011,)


def test_files_without_weight_lines_have_no_weights():
    assert parse_trigraph("trigraph v1\nn 2\ntheta 0 1 1\n").weights is None


def test_dump_then_parse(random_trigraph):
    T = random_trigraph(11, 8, switchable=3)
    assert parse_trigraph(dump_trigraph(T)).trigraph == T


@pytest.mark.parametrize("text", [
    "",
    "graph v1\nn 2\n",
    "trigraph v2\nn 2\n",
    "trigraph v1\ntheta 0 1 1\n",
    "trigraph v1\nn 2\nn 2\n",
    "trigraph v1\nn -1\n",
    "trigraph v1\nn 2\ntheta 1 0 1\n",
    "trigraph v1\nn 2\ntheta 0 1 -1\n",
    "trigraph v1\nn 2\ntheta 0 1 1\ntheta 0 1 0\n",
    "trigraph v1\nn 2\ntheta 0 2 1\n",
    "trigraph v1\nn 2\ntheta 0 x 1\n",
    "trigraph v1\nn 2\nedge 0 1\n",
    "trigraph v1\nn 2\ntheta 0 1 1\npairweight 0 1 1 1\n",
    "trigraph v1\nn 2\nweight 0 1 -1 0\n",
    "trigraph v1\nn 2\nregion 0 5\n",
    "trigraph v1\n",
])
def test_malformed_trigraph_files(text):
    with pytest.raises(FormatError):
        parse_trigraph(text)


def test_format_errors_carry_the_line_number():
    with pytest.raises(FormatError) as info:
        parse_trigraph("trigraph v1\nn 2\n\ntheta 0 1 7\n")
    assert "line 4" in str(info.value)


def test_missing_file(tmp_path):
    with pytest.raises(FormatError):
        load_trigraph(tmp_path / "absent.tri")


def test_load_from_disk(tmp_trigraph_file):
    path = tmp_trigraph_file(dump_trigraph(fixture("C6")))
    assert load_trigraph(path).trigraph == fixture("C6")


def test_separator_text(tmp_path):
    F = all_cuts(fixture("P3"))
    path = tmp_path / "sep.txt"
    path.write_text(dump_separator(F), encoding="utf-8")
    loaded = load_separator(path)
    assert loaded.n == 3
    assert loaded.cuts == F.cuts


def test_separator_lines():
    F = parse_separator("separator v1\nn 3\ncut 0,1 | 2\ncut  | 0,1,2\n")
    assert F.cuts == (Cut(0b011, 0b100), Cut(0, 0b111))
    assert dump_separator(CSSeparator(2, (Cut(0b01, 0b10),))) == "separator v1\nn 2\ncut 0 | 1\n"


@pytest.mark.parametrize("text", [
    "separator v1\nn 3\ncut 0,1 | 1,2\n",
    "separator v1\nn 3\ncut 0,1 2\n",
    "separator v1\ncut 0 | 1\n",
    "separator v1\nn 3\ncut 0 | 1\n",
    "separator v1\nn 2\ncut 0 | 5\n",
    "separator v1\n",
])
def test_malformed_separator_files(text):
    with pytest.raises(FormatError):
        parse_separator(text)


def test_biclique_line(c4):
    b = make_biclique(0b0101, 0b1010, BicliqueKind.COMPLETE)
    line = dump_biclique(b)
    assert line == "biclique complete | 0,2 | 1,3 | 2"
    assert parse_biclique(line, 4) == b


def test_overlapping_biclique_line():
    with pytest.raises(FormatError):
        parse_biclique("biclique anticomplete | 0,1 | 1 | 1", 4)


def test_decomposition_dump(c4):
    text = dump_decomposition(decompose_tree(c4))
    assert text.splitlines()[0] == "leaf n=4 origin=0,1,2,3"
    assert "  certificate bipartite" in text
    assert text.rstrip().endswith("end")


def test_composition_dump():
    tree = generate("kjoin(p1, leaf(C4), leaf(P3))", 1, k=2, run_checks=False).kjoin_tree
    lines = dump_composition(tree).splitlines()
    assert lines[0].startswith(f"join n={tree.trigraph.n} 1x1 iface=[1]")
    assert lines[1].startswith("  leaf n=")
    assert len(lines) == 3


def test_switchable_pairs_survive_the_text_form():
    T = Trigraph.from_edges(3, [(0, 1)], switchable=[(1, 2)])
    assert "theta 1 2 0" in dump_trigraph(T)
