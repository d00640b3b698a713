import pytest
from hypothesis import given

from conslang import Domain, Language, Relation, boolean_minority
from conslang.formats import (ParseError, format_instance, format_language, format_operation,
                              parse_instance, parse_language, parse_operation)
from test_algebra import operations

MINORITY = """\
# boolean minority
domain 2
op minority

0 0 0 0
0 0 1 1
0 1 0 1
0 1 1 0
1 0 0 1
1 0 1 0
1 1 0 0
1 1 1 1
"""

LANG = """\
domain 3
conservative
# relations
rel lt binary { (0,1) (0,2) (1,2) }
rel small unary { 0 1 }
rel none binary { }
"""


def test_parse_operation():
    op = parse_operation(MINORITY)
    assert op == boolean_minority()
    assert op.name == "minority"


def test_operation_round_trip_is_exact():
    op = parse_operation(MINORITY)
    stripped = "\n".join(line for line in MINORITY.splitlines()
                         if line.strip() and not line.startswith("#")) + "\n"
    assert format_operation(op) == stripped


@given(operations(max_n=3))
def test_operation_round_trip_property(op):
    assert parse_operation(format_operation(op)) == op


@pytest.mark.parametrize("text, line", [
    ("domain 2\nop p\n0 0 0 0\n", 4),                       # incomplete
    ("domain 2\nop p\n0 0 1 1\n", 3),                       # out of order
    ("domain 2\nop p\n0 0 0 5\n", 3),                       # bad value
    ("domain x\n", 1),
    ("op p\n", 1),
    ("domain 2\nop p\n0 0 0\n", 3),
])
def test_operation_parse_errors(text, line):
    with pytest.raises(ParseError) as info:
        parse_operation(text)
    assert info.value.line == line


def test_parse_language():
    lang = parse_language(LANG)
    assert lang.conservative
    assert list(lang.relations) == ["lt", "small", "none"]
    assert lang["lt"].members == ((0, 1), (0, 2), (1, 2))
    assert lang["small"].members == ((0,), (1,))
    assert len(lang["none"]) == 0


def test_language_round_trip():
    lang = parse_language(LANG)
    assert parse_language(format_language(lang)) == lang


@pytest.mark.parametrize("text, line", [
    ("domain 2\nrel a binary { (0,1) (0,1) }\n", 2),
    ("domain 2\nrel a unary { 0 0 }\n", 2),
    ("domain 2\nrel a binary { (0,1) }\nrel a unary { 0 }\n", 3),
    ("domain 2\nrel a ternary { (0,1,1) }\n", 2),
    ("domain 2\nrel a binary { (0,2) }\n", 2),
    ("domain 2\nrel a binary { (0,1) junk }\n", 2),
    ("domain 2\nrel a unary { 0 }\nconservative\n", 3),
])
def test_language_parse_errors(text, line):
    with pytest.raises(ParseError) as info:
        parse_language(text)
    assert info.value.line == line
    assert f":{line}:" in str(info.value)


def test_parse_instance():
    lang = parse_language(LANG)
    inst = parse_instance("vars 3\n# c\nconstraint lt 0 1\nconstraint small 2\n", lang)
    assert inst.num_vars == 3
    assert inst.constraints == (("lt", (0, 1)), ("small", (2,)))
    assert parse_instance(format_instance(inst), lang) == inst


@pytest.mark.parametrize("text", [
    "vars 2\nconstraint lt 0 2\n",
    "vars 2\nconstraint nope 0 1\n",
    "vars 2\nconstraint small 0 1\n",
    "vars 2\nrequire lt 0 1\n",
    "constraint lt 0 1\n",
])
def test_instance_parse_errors(text):
    with pytest.raises(ParseError):
        parse_instance(text, parse_language(LANG))


def test_empty_language_format():
    lang = Language(Domain(2), {"e": Relation.empty(Domain(2), 1)})
    assert format_language(lang) == "domain 2\nrel e unary { }\n"
