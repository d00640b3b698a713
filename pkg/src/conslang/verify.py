"""Runnable checks that Maltsev-to-majority derivation behaves as proven.

Four families of checks are run:

``L1``  a non-conservative operation fails to preserve the unary relation
        {x, y, z} built from a triple it maps outside its arguments;
``L2``  a conservative operation preserves every unary relation;
``L3``  the derivative of a Maltsev operation is a majority operation;
``THM`` the derivative of a conservative Maltsev operation preserves every
        binary relation the operation itself preserves.

Work is cut into fixed-size units whose randomness depends only on
``(seed, unit index)``, so the report does not depend on the worker count.
"""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Callable

import numpy as np

from .algebra import (Domain, TernaryOperation, boolean_minority, derivative,
                      is_conservative, is_maltsev, is_majority)
from .relations import (Relation, all_unary_relations, closure_under,
                        conservativity_witness, preservation_witness, preserved_relations,
                        preserves)
from .search import (enumerate_maltsev_conservative, sample_conservative, sample_maltsev,
                     sample_maltsev_conservative, sample_non_conservative)

CHECKS = {
    "L1": "non-conservative op violates its <=3-element unary witness",
    "L2": "conservative op preserves every unary relation",
    "L3": "derivative of a Maltsev op is a majority op",
    "THM": "derivative preserves every binary relation the op preserves",
}
UNIT_SIZE = 25
MAX_EXAMPLES = 5
MAX_RANDOM_SIZE = 6


@dataclass
class Tally:
    checks: int = 0
    violations: int = 0
    examples: list = field(default_factory=list)

    def fail(self, message: str) -> None:
        self.violations += 1
        if len(self.examples) < MAX_EXAMPLES:
            self.examples.append(message)

    def merge(self, other: "Tally") -> None:
        self.checks += other.checks
        self.violations += other.violations
        room = MAX_EXAMPLES - len(self.examples)
        self.examples.extend(other.examples[:max(room, 0)])


@dataclass
class VerifyReport:
    n: int
    mode: str
    samples: int
    seed: int
    relations: int
    operations: int = 0
    relations_checked: int = 0
    tallies: dict = field(default_factory=lambda: {k: Tally() for k in CHECKS})
    elapsed: float = 0.0

    @property
    def violations(self) -> int:
        return sum(t.violations for t in self.tallies.values())

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_text(self) -> str:
        # wall-clock is left out so the text is reproducible
        out = [
            f"verify n={self.n} mode={self.mode} samples={self.samples} "
            f"seed={self.seed} relations={self.relations}",
            f"operations checked: {self.operations}",
            f"binary relations checked: {self.relations_checked}",
        ]
        for key, desc in CHECKS.items():
            t = self.tallies[key]
            status = "PASS" if t.violations == 0 else "FAIL"
            out.append(f"{key:<4} checks={t.checks:<8} violations={t.violations:<6} {status}  {desc}")
            for ex in t.examples:
                out.append(f"     ! {ex}")
        out.append(f"result: {'PASS' if self.passed else 'FAIL'} ({self.violations} violations)")
        return "\n".join(out) + "\n"

    def to_tsv(self) -> str:
        out = ["check\tchecks\tviolations"]
        for key in CHECKS:
            t = self.tallies[key]
            out.append(f"{key}\t{t.checks}\t{t.violations}")
        out.append(f"operations\t{self.operations}\t0")
        out.append(f"relations\t{self.relations_checked}\t0")
        out.append(f"total\t{sum(t.checks for t in self.tallies.values())}\t{self.violations}")
        return "\n".join(out) + "\n"


@dataclass
class _Unit:
    index: int
    n: int
    seed: int
    maltsev_conservative: list      # tables; L3 and THM
    maltsev_general: list           # tables; L3 only
    non_conservative: list          # tables; L1
    conservative: list              # tables; L2
    relation_mode: str              # "all" or "closure"
    relations: int
    derivative_fn: Callable = derivative


@dataclass
class _UnitResult:
    index: int
    operations: int = 0
    relations_checked: int = 0
    tallies: dict = field(default_factory=lambda: {k: Tally() for k in CHECKS})


def random_seed_relation(domain: Domain, rng: np.random.Generator, max_pairs: int | None = None) -> Relation:
    """A few random pairs, or half the time a random partial bijection."""
    n = domain.size
    if max_pairs is None:
        max_pairs = n + 1
    if n >= 2 and rng.random() < 0.5:
        k = int(rng.integers(2, n + 1))
        firsts, seconds = rng.permutation(n)[:k], rng.permutation(n)[:k]
        return Relation.from_tuples(domain, 2, zip(firsts.tolist(), seconds.tolist()))
    k = int(rng.integers(1, min(max_pairs, n * n) + 1))
    cells = rng.choice(n * n, size=k, replace=False)
    return Relation.from_tuples(domain, 2, [(int(c) // n, int(c) % n) for c in cells])


def invariant_relations(op: TernaryOperation, count: int, rng: np.random.Generator) -> list[Relation]:
    """``count`` op-invariant binary relations grown from random seeds."""
    return [closure_under(op, random_seed_relation(op.domain, rng)) for _ in range(count)]


def _run_unit(unit: _Unit) -> _UnitResult:
    dom = Domain(unit.n)
    rng = np.random.default_rng([unit.seed, unit.index])
    res = _UnitResult(unit.index)
    t = res.tallies
    for table in unit.maltsev_conservative + unit.maltsev_general:
        p = TernaryOperation(dom, table)
        res.operations += 1
        t["L3"].checks += 1
        if not is_majority(unit.derivative_fn(p)):
            t["L3"].fail(f"derivative of {table} is not a majority op")
    for table in unit.maltsev_conservative:
        p = TernaryOperation(dom, table)
        q = unit.derivative_fn(p)
        if unit.relation_mode == "all":
            rels = preserved_relations(p, 2)
        else:
            rels = invariant_relations(p, unit.relations, rng)
        for rel in rels:
            if not preserves(p, rel):
                raise AssertionError(f"relation {rel.members} is not invariant under {table}")
            res.relations_checked += 1
            t["THM"].checks += 1
            w = preservation_witness(q, rel)
            if w is not None:
                t["THM"].fail(f"derivative of {table} breaks {rel.members} at {w}")
    for table in unit.non_conservative:
        p = TernaryOperation(dom, table)
        res.operations += 1
        t["L1"].checks += 1
        found = conservativity_witness(p)
        if found is None:
            if not is_conservative(p):
                t["L1"].fail(f"no witness found for non-conservative {table}")
            continue
        triple, rel = found
        if len(rel) > 3 or preserves(p, rel):
            t["L1"].fail(f"witness {triple} of {table} is not a violation")
    unaries = all_unary_relations(dom)
    for table in unit.conservative:
        p = TernaryOperation(dom, table)
        res.operations += 1
        for rel in unaries:
            t["L2"].checks += 1
            if not preserves(p, rel):
                t["L2"].fail(f"conservative {table} breaks unary {rel.members}")
    return res


def _chunks(items: list, size: int) -> list[list]:
    return [items[i:i + size] for i in range(0, len(items), size)] or [[]]


def _build_units(n: int, mode: str, samples: int, seed: int, relations: int,
                 derivative_fn: Callable) -> list[_Unit]:
    dom = Domain(n)
    units = []
    if mode == "exhaustive":
        mc = [op.table for op in enumerate_maltsev_conservative(dom)]
        if n <= 2:
            everything = [tuple(t) for t in product(range(n), repeat=n ** 3)]
            nc = everything
            cons = [t for t in everything if is_conservative(TernaryOperation(dom, t))]
            seen = set(mc)
            general = [t for t in everything
                       if t not in seen and is_maltsev(TernaryOperation(dom, t))]
            relation_mode = "all"
        else:
            rng = np.random.default_rng([seed, 2 ** 32])
            nc = [sample_non_conservative(dom, rng).table for _ in range(samples)]
            cons = [sample_conservative(dom, rng).table for _ in range(samples)]
            general = [sample_maltsev(dom, rng).table for _ in range(samples)]
            relation_mode = "closure"
        count = max(len(mc), len(nc), len(cons), len(general))
        blocks = [(mc[i:i + UNIT_SIZE], general[i:i + UNIT_SIZE], nc[i:i + UNIT_SIZE],
                   cons[i:i + UNIT_SIZE]) for i in range(0, max(count, 1), UNIT_SIZE)]
        for idx, (a, b, c, d) in enumerate(blocks):
            units.append(_Unit(idx, n, seed, list(a), list(b), list(c), list(d),
                               relation_mode, relations, derivative_fn))
        return units
    for idx, start in enumerate(range(0, max(samples, 1), UNIT_SIZE)):
        k = min(UNIT_SIZE, samples - start)
        rng = np.random.default_rng([seed, idx, 1])
        mc = [sample_maltsev_conservative(dom, rng).table for _ in range(k)]
        general = [sample_maltsev(dom, rng).table for _ in range(k)]
        nc = [sample_non_conservative(dom, rng).table for _ in range(k)] if n >= 2 else []
        cons = [sample_conservative(dom, rng).table for _ in range(k)]
        units.append(_Unit(idx, n, seed, mc, general, nc, cons, "closure", relations, derivative_fn))
    return units


def run_verify(n: int, mode: str = "random", samples: int = 1000, seed: int = 0,
               relations: int = 100, workers: int = 1,
               derivative_fn: Callable = derivative) -> VerifyReport:
    """Run every check and collect a :class:`VerifyReport`.

    ``derivative_fn`` replaces the derivative construction; it exists so
    tests can feed in a broken one and watch the harness fail.
    """
    if mode not in ("exhaustive", "random"):
        raise ValueError(f"mode must be 'exhaustive' or 'random', got {mode!r}")
    if n < 1:
        raise ValueError("domain size must be at least 1")
    if mode == "exhaustive" and n > 3:
        raise ValueError("exhaustive mode supports n <= 3 (n <= 2 with every binary relation)")
    if mode == "random" and n > MAX_RANDOM_SIZE:
        raise ValueError(f"random mode supports n <= {MAX_RANDOM_SIZE}")
    if samples < 0 or relations < 0 or workers < 1:
        raise ValueError("samples and relations must be non-negative, workers positive")
    start = time.perf_counter()
    units = _build_units(n, mode, samples, seed, relations, derivative_fn)
    if workers == 1:
        results = [_run_unit(u) for u in units]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_unit, units))
    report = VerifyReport(n, mode, samples, seed, relations)
    for res in sorted(results, key=lambda r: r.index):
        report.operations += res.operations
        report.relations_checked += res.relations_checked
        for key in CHECKS:
            report.tallies[key].merge(res.tallies[key])
    report.elapsed = time.perf_counter() - start
    return report


def _preservation_violation(op: TernaryOperation, tuples):
    """First triple of rows (lexicographic) that op maps outside ``tuples``."""
    rows = sorted(set(tuples))
    members = set(rows)
    for a, b, c in product(rows, repeat=3):
        image = tuple(op(x, y, z) for x, y, z in zip(a, b, c))
        if image not in members:
            return (a, b, c), image
    return None


XOR_ROWS = ((0, 1, 1), (1, 0, 1), (1, 1, 0))


@dataclass
class BoundaryDemo:
    relation: tuple
    minority_is_maltsev: bool
    minority_is_conservative: bool
    minority_preserves: bool
    derivative_is_majority: bool
    derivative_preserves: bool
    first_violation: tuple | None
    rows_image: tuple
    rows_image_in_relation: bool

    @property
    def reproduced(self) -> bool:
        return (self.minority_is_maltsev and self.minority_is_conservative
                and self.minority_preserves and self.derivative_is_majority
                and not self.derivative_preserves
                and self.rows_image == (1, 1, 1) and not self.rows_image_in_relation)

    def to_text(self) -> str:
        yn = lambda b: "yes" if b else "no"  # noqa: E731
        rel = " ".join("(" + ",".join(map(str, t)) + ")" for t in self.relation)
        out = [
            f"R = {{(a,b,c) : a xor b xor c = 0}} = {{ {rel} }}",
            "p = minority, p(x,y,z) = x xor y xor z",
            f"p is Maltsev: {yn(self.minority_is_maltsev)}",
            f"p is conservative: {yn(self.minority_is_conservative)}",
            f"p preserves R: {yn(self.minority_preserves)}",
            f"p' is a majority operation: {yn(self.derivative_is_majority)}",
            f"p' preserves R: {yn(self.derivative_preserves)}",
        ]
        if self.first_violation is not None:
            (a, b, c), img = self.first_violation
            out.append(f"first violation: p' applied to rows {a} {b} {c} -> {img} not in R")
        rows = " ".join(map(str, XOR_ROWS))
        membership = "in R" if self.rows_image_in_relation else "not in R"
        out.append(f"p' applied to rows {rows} -> {self.rows_image} {membership}")
        out.append("demonstration reproduced: " + yn(self.reproduced))
        return "\n".join(out) + "\n"


def boundary_demo() -> BoundaryDemo:
    """Show that the result stops at binary relations.

    The ternary relation a xor b xor c = 0 has the Boolean minority as a
    conservative Maltsev polymorphism, yet its derivative (the Boolean
    majority) does not preserve it.
    """
    relation = tuple(t for t in product((0, 1), repeat=3) if t[0] ^ t[1] ^ t[2] == 0)
    p = boolean_minority()
    q = derivative(p)
    violation = _preservation_violation(q, relation)
    image = tuple(q(*col) for col in zip(*XOR_ROWS))
    return BoundaryDemo(
        relation=relation,
        minority_is_maltsev=is_maltsev(p),
        minority_is_conservative=is_conservative(p),
        minority_preserves=_preservation_violation(p, relation) is None,
        derivative_is_majority=is_majority(q),
        derivative_preserves=violation is None,
        first_violation=violation,
        rows_image=image,
        rows_image_in_relation=image in relation,
    )
