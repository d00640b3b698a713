"""Plain-text formats for operations, languages and instances.

Operation::

    domain 2
    op minority
    0 0 0 0
    0 0 1 1
    ...            (n**3 lines "x y z v" in table order)

Language::

    domain 3
    conservative
    rel neq binary { (0,1) (1,0) (0,2) (2,0) (1,2) (2,1) }
    rel small unary { 0 1 }

Instance::

    vars 3
    constraint neq 0 1
    constraint small 2

``#`` starts a comment line; blank lines are ignored everywhere.
"""
from __future__ import annotations

import re
from pathlib import Path

from .algebra import Domain, TernaryOperation
from .relations import Language, Relation
from .solver import Instance


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1, source: str = "<string>"):
        self.line = line
        self.column = column
        self.source = source
        super().__init__(f"{source}:{line}:{column}: {message}")


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        col = len(raw) - len(raw.lstrip()) + 1
        yield lineno, col, stripped


def _int(token: str, lineno: int, col: int, source: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected an integer, got {token!r}", lineno, col, source) from None


def _header(lines, keyword: str, source: str) -> tuple[int, list[str]]:
    try:
        lineno, col, text = next(lines)
    except StopIteration:
        raise ParseError(f"missing '{keyword}' line", 1, 1, source) from None
    parts = text.split()
    if parts[0] != keyword or len(parts) != 2:
        raise ParseError(f"expected '{keyword} <value>'", lineno, col, source)
    return lineno, parts


def _domain(lines, source: str) -> Domain:
    lineno, parts = _header(lines, "domain", source)
    n = _int(parts[1], lineno, 8, source)
    if n < 1:
        raise ParseError("domain size must be at least 1", lineno, 8, source)
    return Domain(n)


def parse_operation(text: str, source: str = "<string>") -> TernaryOperation:
    lines = _lines(text)
    dom = _domain(lines, source)
    _, parts = _header(lines, "op", source)
    name = parts[1]
    n = dom.size
    table = []
    last = 0
    for lineno, col, line in lines:
        fields = line.split()
        if len(fields) != 4:
            raise ParseError("expected 'x y z v'", lineno, col, source)
        x, y, z, v = (_int(f, lineno, col, source) for f in fields)
        for e in (x, y, z, v):
            if not 0 <= e < n:
                raise ParseError(f"element {e} outside domain 0..{n - 1}", lineno, col, source)
        idx = dom.cell(x, y, z)
        if idx != len(table):
            raise ParseError(
                f"entry for ({x},{y},{z}) out of order; expected index {len(table)}", lineno, col, source)
        table.append(v)
        last = lineno
    if len(table) != n ** 3:
        raise ParseError(f"table has {len(table)} entries, expected {n ** 3}", last + 1, 1, source)
    return TernaryOperation(dom, tuple(table), name)


def format_operation(op: TernaryOperation) -> str:
    out = [f"domain {op.domain.size}", f"op {op.name}"]
    for (x, y, z), v in zip(op.domain.cells(), op.table):
        out.append(f"{x} {y} {z} {v}")
    return "\n".join(out) + "\n"


_REL = re.compile(r"rel\s+(\S+)\s+(unary|binary)\s*\{(.*)\}\s*$")
_PAIR = re.compile(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")


def parse_language(text: str, source: str = "<string>") -> Language:
    lines = _lines(text)
    dom = _domain(lines, source)
    n = dom.size
    conservative = False
    relations: dict[str, Relation] = {}
    for lineno, col, line in lines:
        if line == "conservative":
            if relations or conservative:
                raise ParseError("'conservative' must directly follow the domain line", lineno, col, source)
            conservative = True
            continue
        m = _REL.match(line)
        if not m:
            raise ParseError("expected 'rel <name> unary|binary { ... }'", lineno, col, source)
        name, kind, body = m.groups()
        if name in relations:
            raise ParseError(f"duplicate relation name {name!r}", lineno, col, source)
        body_col = col + m.start(3)
        if kind == "unary":
            tuples = [(_int(tok, lineno, body_col, source),) for tok in body.split()]
        else:
            if _PAIR.sub("", body).strip():
                raise ParseError("binary relation body must be a list of (a,b) pairs", lineno, body_col, source)
            tuples = [(int(a), int(b)) for a, b in _PAIR.findall(body)]
        if len(set(tuples)) != len(tuples):
            raise ParseError(f"duplicate tuple in relation {name!r}", lineno, body_col, source)
        for t in tuples:
            if not all(0 <= e < n for e in t):
                raise ParseError(f"tuple {t} outside domain 0..{n - 1}", lineno, body_col, source)
        relations[name] = Relation.from_tuples(dom, 1 if kind == "unary" else 2, tuples)
    return Language(dom, relations, conservative)


def format_language(lang: Language) -> str:
    out = [f"domain {lang.domain.size}"]
    if lang.conservative:
        out.append("conservative")
    for name, rel in lang.relations.items():
        if rel.arity == 1:
            body = " ".join(str(t[0]) for t in rel.members)
            out.append(f"rel {name} unary {{ {body} }}" if body else f"rel {name} unary {{ }}")
        else:
            body = " ".join(f"({a},{b})" for a, b in rel.members)
            out.append(f"rel {name} binary {{ {body} }}" if body else f"rel {name} binary {{ }}")
    return "\n".join(out) + "\n"


def parse_instance(text: str, language: Language, source: str = "<string>") -> Instance:
    lines = _lines(text)
    lineno, parts = _header(lines, "vars", source)
    m = _int(parts[1], lineno, 6, source)
    if m < 0:
        raise ParseError("number of variables must be non-negative", lineno, 6, source)
    constraints = []
    for lineno, col, line in lines:
        fields = line.split()
        if fields[0] != "constraint" or len(fields) not in (3, 4):
            raise ParseError("expected 'constraint <relname> <i> [<j>]'", lineno, col, source)
        name = fields[1]
        if name not in language:
            raise ParseError(f"unknown relation {name!r}", lineno, col, source)
        scope = tuple(_int(f, lineno, col, source) for f in fields[2:])
        if any(not 0 <= v < m for v in scope):
            raise ParseError(f"variable index out of range 0..{m - 1}", lineno, col, source)
        if len(scope) != language[name].arity:
            raise ParseError(f"relation {name!r} has arity {language[name].arity}", lineno, col, source)
        constraints.append((name, scope))
    return Instance(language, m, tuple(constraints))


def format_instance(inst: Instance) -> str:
    out = [f"vars {inst.num_vars}"]
    for name, scope in inst.constraints:
        out.append("constraint " + " ".join([name, *map(str, scope)]))
    return "\n".join(out) + "\n"


def read_operation(path) -> TernaryOperation:
    path = Path(path)
    return parse_operation(path.read_text(), str(path))


def read_language(path) -> Language:
    path = Path(path)
    return parse_language(path.read_text(), str(path))


def read_instance(path, language: Language) -> Instance:
    path = Path(path)
    return parse_instance(path.read_text(), language, str(path))
