import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from elmendorf2.errors import AxiomViolation, NotAssociative, ParseError
from elmendorf2.fixture_format import Entry, FixtureDoc, Section, Workspace, dump_fixture, parse_fixture
from elmendorf2.fixtures import BUNDLED, bundled_path


def load_text(text, overrides=None):
    return Workspace(parse_fixture(text), overrides)


@pytest.mark.parametrize("name", sorted(BUNDLED) + ["s3_candidate"])
def test_bundled_documents_round_trip(name):
    with open(bundled_path(name), encoding="utf-8") as fh:
        doc = parse_fixture(fh.read())
    text = dump_fixture(doc)
    assert dump_fixture(parse_fixture(text)) == text
    assert parse_fixture(text).digest() == doc.digest()


@pytest.mark.parametrize(
    "text,line,col",
    [
        ("[group Z2\nmul 0", 1, 10),
        ("[widget W]\n", 1, 2),
        ("mul 0 1\n", 1, 1),
        ("[group A]\ntrivial\n\n[group A]\ntrivial\n", 4, 1),
        ("[bounds extra]\n", 1, 1),
        ("[group]\n", 1, 1),
    ],
)
def test_syntax_errors_carry_position(text, line, col):
    with pytest.raises(ParseError) as info:
        parse_fixture(text)
    assert (info.value.line, info.value.column) == (line, col)


def test_resolution_errors_carry_position():
    W = load_text("[twogroup D]\ndiscrete Nope\n")
    with pytest.raises(ParseError) as info:
        W.twogroup("D")
    assert (info.value.line, info.value.column) == (2, 10)
    W = load_text("[group Z]\nmul 0 x\nmul 1 0\n")
    with pytest.raises(ParseError) as info:
        W.group("Z")
    assert (info.value.line, info.value.column) == (2, 7)


def test_bounds_section_and_overrides():
    W = load_text("[bounds]\nmax_group_order 5\n")
    assert W.bounds.max_group_order == 5
    W = load_text("[bounds]\nmax_group_order 5\n", {"max_group_order": 7})
    assert W.bounds.max_group_order == 7
    with pytest.raises(ParseError):
        load_text("[bounds]\nno_such_bound 5\n")


def test_axiom_failures_surface_as_validator_errors():
    W = load_text("[group G]\nmul 0 1 2\nmul 1 0 2\nmul 2 2 0\n")
    with pytest.raises(NotAssociative):
        W.group("G")


def test_presheaf_from_tables():
    text = """
[group Z2]
cyclic 2
[twogroup D2]
discrete Z2
[presheaf F]
group D2
sizes 2 0
map 0 0 1 1 0
map 0 1 0
"""
    # a free orbit: two points swapped, no global points
    W = load_text(text)
    F = W.presheaf("F")
    assert [C.n_objects for C in F.cats] == [2, 0]
    bad = text.replace("map 0 1 0", "map 1 0 0")
    with pytest.raises(ParseError) as info:
        load_text(bad).presheaf("F")
    assert info.value.line == 10


def test_presheaf_functoriality_is_validated():
    text = """
[group Z2]
cyclic 2
[twogroup D2]
discrete Z2
[presheaf F]
group D2
sizes 2 1
map 0 0 1 1 0
map 0 1 0 1
"""
    # the global point maps to 1, which the swap moves: composition fails
    with pytest.raises(AxiomViolation):
        load_text(text).presheaf("F")


def test_general_category_and_direct_two_group():
    text = """
[category iso]
objects 2
arrow 0 1
arrow 1 0
compose 2 3 1
compose 3 2 0
[group Z2]
cyclic 2
[twogroup D]
objects Z2
arrows Z2
d0 0 1
d1 0 1
i 0 1
comp 0 0 0
comp 1 1 1
"""
    W = load_text(text)
    assert W.category("iso").n_arrows == 4
    assert W.twogroup("D").G1.order == 2


words = st.text(alphabet="abcxyz019_", min_size=1, max_size=6)
entries = st.builds(lambda k, a: Entry(k, tuple(a), 0, (1,)), words, st.lists(words, max_size=4))
sections = st.builds(
    lambda kind, name, es: Section(kind, "" if kind == "bounds" else name, 0, es),
    st.sampled_from(["group", "category", "action", "presheaf", "bounds"]),
    words,
    st.lists(entries, max_size=4),
)


@settings(max_examples=100, deadline=None)
@given(st.lists(sections, max_size=5, unique_by=lambda s: (s.kind, s.name)))
def test_dump_parse_round_trip(secs):
    text = dump_fixture(FixtureDoc(secs))
    doc = parse_fixture(text)
    assert [(s.kind, s.name, [(e.key, e.args) for e in s.entries]) for s in doc.sections] == [
        (s.kind, s.name, [(e.key, e.args) for e in s.entries]) for s in secs
    ]
    assert dump_fixture(doc) == text
