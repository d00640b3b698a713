"""Finding, enumerating and sampling ternary polymorphisms."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterator

import numpy as np

from .algebra import (Domain, TernaryOperation, derivative, is_conservative,
                      is_maltsev, is_majority)
from .relations import Language, PolymorphismReport, is_polymorphism

MODES = ("first", "count", "all")
MAX_ENUMERATION_SIZE = 3


@dataclass(frozen=True)
class SearchSpec:
    language: Language
    require_maltsev: bool = False
    require_conservative: bool = False
    mode: str = "first"

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if not (self.require_maltsev or self.require_conservative
                or self.language.relations or self.language.conservative):
            raise ValueError("nothing to search for: the first projection answers an empty request")


def maltsev_forced_cells(domain: Domain) -> dict[int, int]:
    """Cells fixed by p(x, x, y) = p(y, x, x) = y."""
    forced = {}
    for x in domain:
        for y in domain:
            forced[domain.cell(x, x, y)] = y
            forced[domain.cell(y, x, x)] = y
    return forced


def _free_cells(domain: Domain) -> list[tuple[int, tuple[int, ...]]]:
    """Non-forced cells with their conservative candidates, in table order."""
    forced = maltsev_forced_cells(domain)
    out = []
    for i, (x, y, z) in enumerate(domain.cells()):
        if i not in forced:
            out.append((i, tuple(sorted({x, y, z}))))
    return out


class _CellNetwork:
    """Binary CSP whose variables are the table cells of the operation.

    A triple of member tuples of a binary relation R touches two cells c1
    and c2 and requires (p[c1], p[c2]) in R; a unary relation gives a
    single-cell restriction. Constraints between the same pair of cells are
    merged into one support table.
    """

    def __init__(self, spec: SearchSpec):
        lang = spec.language
        dom = lang.domain
        n = dom.size
        self.n = n
        self.num_cells = n ** 3
        full = (1 << n) - 1
        self.domains = [full] * self.num_cells

        conservative = spec.require_conservative or lang.conservative
        if conservative:
            for i, args in enumerate(dom.cells()):
                self.domains[i] &= sum(1 << a for a in set(args))
        if spec.require_maltsev:
            for i, v in maltsev_forced_cells(dom).items():
                self.domains[i] &= 1 << v

        # support[c][o] = list over values v of c of the bitmask of allowed values of o
        self.support: list[dict[int, list[int]]] = [dict() for _ in range(self.num_cells)]
        for rel in lang.relations.values():
            members = rel.member_array
            if rel.arity == 1:
                allowed = sum(1 << int(a) for a in members[:, 0])
                for a, b, c in product(members[:, 0], repeat=3):
                    self.domains[dom.cell(a, b, c)] &= allowed
                continue
            bits = rel.bitmap
            row = [sum(1 << w for w in range(n) if bits[v, w]) for v in range(n)]
            col = [sum(1 << v for v in range(n) if bits[v, w]) for w in range(n)]
            diag = sum(1 << v for v in range(n) if bits[v, v])
            pairs = set()
            for s, t, u in product(range(len(members)), repeat=3):
                c1 = dom.cell(members[s, 0], members[t, 0], members[u, 0])
                c2 = dom.cell(members[s, 1], members[t, 1], members[u, 1])
                pairs.add((int(c1), int(c2)))
            if not pairs:
                continue
            for c1, c2 in sorted(pairs):
                if c1 == c2:
                    self.domains[c1] &= diag
                else:
                    self._add(c1, c2, row)
                    self._add(c2, c1, col)

    def _add(self, c: int, o: int, masks: list[int]) -> None:
        cur = self.support[c].get(o)
        self.support[c][o] = list(masks) if cur is None else [a & b for a, b in zip(cur, masks)]

    def solutions(self) -> Iterator[tuple[int, ...]]:
        if any(d == 0 for d in self.domains):
            return
        n = self.n
        values = [0] * self.num_cells

        def assign(cell: int, domains: list[int]) -> Iterator[tuple[int, ...]]:
            if cell == self.num_cells:
                yield tuple(values)
                return
            for v in range(n):
                if not (domains[cell] >> v) & 1:
                    continue
                values[cell] = v
                pruned = list(domains)
                pruned[cell] = 1 << v
                ok = True
                for other, masks in self.support[cell].items():
                    if other > cell:
                        pruned[other] &= masks[v]
                        if not pruned[other]:
                            ok = False
                            break
                if ok:
                    yield from assign(cell + 1, pruned)

        yield from assign(0, list(self.domains))


def _verify(op: TernaryOperation, spec: SearchSpec) -> None:
    # full recheck; the incremental pruning above is only an optimization
    if spec.require_maltsev and not is_maltsev(op):
        raise AssertionError(f"search produced a non-Maltsev table {op.table}")
    if spec.require_conservative and not is_conservative(op):
        raise AssertionError(f"search produced a non-conservative table {op.table}")
    report = is_polymorphism(op, spec.language)
    if not report:
        raise AssertionError(f"search produced a non-polymorphism: {report.violations}")


def iter_polymorphisms(spec: SearchSpec) -> Iterator[TernaryOperation]:
    """All operations satisfying ``spec`` in lexicographic table order."""
    dom = spec.language.domain
    for table in _CellNetwork(spec).solutions():
        op = TernaryOperation(dom, table, "p")
        _verify(op, spec)
        yield op


def find_polymorphism(spec: SearchSpec):
    """Run the search in ``spec.mode``.

    Returns the lexicographically least operation (or None) for mode
    ``"first"``, the number of solutions for ``"count"`` and the list of
    all solutions for ``"all"``.
    """
    it = iter_polymorphisms(spec)
    if spec.mode == "first":
        return next(it, None)
    if spec.mode == "count":
        return sum(1 for _ in it)
    return list(it)


def enumerate_maltsev_conservative(domain: Domain) -> Iterator[TernaryOperation]:
    """Every conservative Maltsev operation on ``domain``, in table order."""
    if domain.size > MAX_ENUMERATION_SIZE:
        raise ValueError(
            f"exhaustive enumeration is limited to n <= {MAX_ENUMERATION_SIZE}; "
            "use sample_maltsev_conservative for larger domains")
    base = [0] * domain.size ** 3
    for cell, v in maltsev_forced_cells(domain).items():
        base[cell] = v
    free = _free_cells(domain)
    cells = [c for c, _ in free]
    for choice in product(*(cands for _, cands in free)):
        for c, v in zip(cells, choice):
            base[c] = v
        yield TernaryOperation(domain, tuple(base), "p")


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def sample_maltsev_conservative(domain: Domain, seed) -> TernaryOperation:
    """Random conservative Maltsev operation.

    Forced cells are fixed and each free cell takes a uniform value from
    its argument set. ``seed`` is an int or a numpy Generator.
    """
    rng = _rng(seed)
    table = [0] * domain.size ** 3
    for cell, v in maltsev_forced_cells(domain).items():
        table[cell] = v
    for cell, cands in _free_cells(domain):
        table[cell] = cands[int(rng.integers(len(cands)))]
    return TernaryOperation(domain, tuple(table), "p")


def sample_maltsev(domain: Domain, seed) -> TernaryOperation:
    """Random Maltsev operation; free cells range over the whole domain."""
    rng = _rng(seed)
    table = [int(v) for v in rng.integers(domain.size, size=domain.size ** 3)]
    for cell, v in maltsev_forced_cells(domain).items():
        table[cell] = v
    return TernaryOperation(domain, tuple(table), "p")


def sample_conservative(domain: Domain, seed) -> TernaryOperation:
    rng = _rng(seed)
    table = []
    for args in domain.cells():
        cands = sorted(set(args))
        table.append(cands[int(rng.integers(len(cands)))])
    return TernaryOperation(domain, tuple(table), "p")


def sample_non_conservative(domain: Domain, seed) -> TernaryOperation:
    """Uniform random table, resampled until it is not conservative."""
    if domain.size < 2:
        raise ValueError("the only operation on one element is conservative")
    rng = _rng(seed)
    while True:
        table = tuple(int(v) for v in rng.integers(domain.size, size=domain.size ** 3))
        op = TernaryOperation(domain, table, "p")
        if not is_conservative(op):
            return op


@dataclass
class Analysis:
    language: Language
    maltsev: TernaryOperation | None = None
    majority: TernaryOperation | None = None
    majority_ok: bool = False
    report: PolymorphismReport = field(default_factory=PolymorphismReport)

    @property
    def found(self) -> bool:
        return self.maltsev is not None

    @property
    def success(self) -> bool:
        return self.found and self.majority_ok and self.report.ok


def analyze(language: Language) -> Analysis:
    """Look for a Maltsev polymorphism and derive the majority one from it."""
    spec = SearchSpec(language, require_maltsev=True,
                      require_conservative=language.conservative)
    p = find_polymorphism(spec)
    result = Analysis(language)
    if p is None:
        return result
    q = derivative(p)
    result.maltsev = p
    result.majority = q
    result.majority_ok = is_majority(q)
    result.report = is_polymorphism(q, language)
    return result
