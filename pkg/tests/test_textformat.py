import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pcrfa import compile_dfa, translate
from pcrfa.automata import PartialFA
from pcrfa.generators import random_dfa, random_multihead
from pcrfa.textformat import (
    FormatSemanticError,
    FormatSyntaxError,
    ParseError,
    document,
    dump,
    load,
    parse,
    serialize,
)

from conftest import AB, FIXTURES, anb_two_head

CORPUS = sorted(FIXTURES.glob("*.txt"))

def strip_comments(text):
    return "".join(line for line in text.splitlines(keepends=True) if not line.lstrip().startswith("#"))

def test_example_fixture_parses(m):
    doc = load(FIXTURES / "ends_in_a_dfa.txt")
    assert doc.kind == "dfa"
    assert isinstance(doc.body, PartialFA)
    assert len(doc.body.states) == 2 and len(doc.body.trans) == 4
    assert doc.body == m

def test_compiled_fixture_is_current(m):
    assert (FIXTURES / "ends_in_a_pcrfa.txt").read_text() == serialize(document(compile_dfa(m)))
    assert (FIXTURES / "anb_2head_pcrfa.txt").read_text() == serialize(document(translate(anb_two_head())))

@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.name)
def test_corpus_round_trip(path):
    text = path.read_text()
    doc = parse(text)
    canon = serialize(doc)
    assert parse(canon) == doc
    assert serialize(parse(canon)) == canon
    # fixtures are written in canonical layout apart from comments
    assert canon == strip_comments(text)

def test_duplicate_transition_key():
    text = "type dfa\nalphabet a b\nstates q0 q1\nstart q0\nfinal q1\ntrans q0 a q1\ntrans q0 a q1\n"
    with pytest.raises(FormatSemanticError) as e:
        parse(text)
    assert e.value.line == 7 and "duplicate" in e.value.message

@pytest.mark.parametrize(
    "text, cls, line",
    [
        ("", FormatSyntaxError, 1),
        ("alphabet a\n", FormatSyntaxError, 1),
        ("type nfa\n", FormatSemanticError, 1),
        ("type dfa\nalphabet a\nstates q\nstart q\nfinal q\ntrans q a\n", FormatSyntaxError, 6),
        ("type dfa\nalphabet a\nstates q\nstart q\nfinal q\ntrans q c q\n", FormatSemanticError, 6),
        ("type dfa\nalphabet a\nstates q\nstart r\n", FormatSemanticError, 4),
        ("type dfa\nalphabet a\n\n# gap\nstates q\nstates q\n", FormatSemanticError, 6),
        ("type dfa\nalphabet a\nstates q\nstart q\nbogus x\n", FormatSyntaxError, 5),
        ("type mhrfa\nalphabet a\nheads 2\nstates q\nstart q\ntrans q a q\n", FormatSemanticError, 6),
        ("type pcrfa\nalphabet a\nquery K=3\ncomponent A\nstates q K\nstart q\n", FormatSemanticError, 3),
        ("type pcrfa\nalphabet a\nquery K2\n", FormatSyntaxError, 3),
        ("type pcrfa\nalphabet a\nstates q\n", FormatSemanticError, 3),
        ("type dfa\nalphabet a a\nstates q\nstart q\n", FormatSemanticError, 2),
    ],
)
def test_errors_carry_location(text, cls, line):
    with pytest.raises(cls) as e:
        parse(text)
    assert e.value.line == line
    assert str(e.value).startswith(f"line {line}, column")

def test_column_reported():
    with pytest.raises(ParseError) as e:
        parse("type dfa\nalphabet a\nstates q\nstart q\ntrans q a   zz\n")
    assert (e.value.line, e.value.column) == (5, 13)

def test_query_lines_anywhere():
    text = (
        "type pcrfa\nalphabet a\n\ncomponent A\nstates q K\nstart q\nfinal q\ntrans q a K\n"
        "query K=2\n\ncomponent B\nstates r\nstart r\nfinal r\ntrans r a r\n"
    )
    doc = parse(text)
    assert doc.body.query_states == {"K": 2}
    assert doc.body.names == ("A", "B")
    assert serialize(doc).splitlines()[2] == "query K=2"

def test_tuple_state_rendering(two_head):
    text = serialize(document(translate(two_head)))
    assert "q0[a,-]" in text
    assert "trans q0[a] - q0[a,-]" in text
    assert "trans q0[b] a q0[b,a]" in text

def test_empty_final_line():
    fa = PartialFA(AB, {"q"}, "q", set(), {})
    text = serialize(document(fa))
    assert "\nfinal\n" in text and parse(text).body == fa

def test_dump_load(tmp_path, m):
    doc = document(compile_dfa(m))
    dump(doc, tmp_path / "x.txt")
    assert load(tmp_path / "x.txt") == doc
    assert (tmp_path / "x.txt").read_bytes() == serialize(doc).encode()

def test_document_kind(m):
    assert document(m).kind == "dfa"
    assert document(load(FIXTURES / "loop_rfa.txt").body).kind == "rfa"

@st.composite
def documents(draw):
    rng = random.Random(draw(st.integers(0, 2**32)))
    choice = draw(st.sampled_from(["dfa", "mhrfa", "pcrfa", "strict"]))
    if choice == "dfa":
        return document(random_dfa(rng))
    m = random_multihead(rng, heads=draw(st.integers(1, 3)), transitions=rng.randint(0, 6))
    if choice == "mhrfa":
        return document(m)
    if choice == "pcrfa":
        return document(compile_dfa(random_dfa(rng)))
    if not m.report.reversible:
        return document(m)
    try:
        return document(translate(m, literal=rng.random() < 0.5))
    except Exception:
        return document(m)

@settings(max_examples=150, deadline=None)
@given(documents())
def test_round_trip_property(doc):
    text = serialize(doc)
    back = parse(text)
    assert back == doc
    assert serialize(back) == text
