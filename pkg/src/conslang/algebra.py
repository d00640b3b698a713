"""Ternary operations on a finite domain {0, ..., n-1}.

An operation is stored as a flat table of n**3 entries; the value of
p(x, y, z) lives at index ``x*n*n + y*n + z``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Callable, Iterator, Sequence

import numpy as np

CASE_LABELS = (
    "x1x2", "x1y2", "x1z2",
    "y1x2", "y1y2", "y1z2",
    "z1x2", "z1y2", "z1z2",
)


@dataclass(frozen=True)
class Domain:
    size: int

    def __post_init__(self):
        if not isinstance(self.size, (int, np.integer)) or self.size < 1:
            raise ValueError(f"domain size must be a positive integer, got {self.size!r}")

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.size))

    def __len__(self) -> int:
        return self.size

    def check(self, *elements: int) -> None:
        for e in elements:
            if not 0 <= e < self.size:
                raise ValueError(f"element {e} is outside the domain 0..{self.size - 1}")

    def cell(self, x: int, y: int, z: int) -> int:
        n = self.size
        return x * n * n + y * n + z

    def cells(self) -> Iterator[tuple[int, int, int]]:
        """All argument triples in flattened-index order."""
        return product(range(self.size), repeat=3)


@dataclass(frozen=True)
class TernaryOperation:
    domain: Domain
    table: tuple[int, ...]
    name: str = "p"

    def __post_init__(self):
        n = self.domain.size
        table = tuple(int(v) for v in self.table)
        if len(table) != n ** 3:
            raise ValueError(f"table has {len(table)} entries, expected {n ** 3}")
        bad = [v for v in table if not 0 <= v < n]
        if bad:
            raise ValueError(f"table entry {bad[0]} is outside the domain 0..{n - 1}")
        object.__setattr__(self, "table", table)

    # equality and hashing ignore the display name
    def __eq__(self, other):
        if not isinstance(other, TernaryOperation):
            return NotImplemented
        return self.domain == other.domain and self.table == other.table

    def __hash__(self):
        return hash((self.domain, self.table))

    def __call__(self, x: int, y: int, z: int) -> int:
        return apply(self, x, y, z)

    @cached_property
    def array(self) -> np.ndarray:
        """The table as a read-only int array of shape (n**3,)."""
        a = np.asarray(self.table, dtype=np.intp)
        a.flags.writeable = False
        return a

    @classmethod
    def from_function(cls, domain: Domain, fn: Callable[[int, int, int], int],
                      name: str = "p") -> "TernaryOperation":
        return cls(domain, tuple(fn(x, y, z) for x, y, z in domain.cells()), name)

    def renamed(self, name: str) -> "TernaryOperation":
        return TernaryOperation(self.domain, self.table, name)


def projection(domain: Domain, index: int) -> TernaryOperation:
    if index not in (0, 1, 2):
        raise ValueError("projection index must be 0, 1 or 2")
    return TernaryOperation.from_function(domain, lambda *args: args[index], f"pr{index + 1}")


def boolean_minority() -> TernaryOperation:
    return TernaryOperation.from_function(Domain(2), lambda x, y, z: x ^ y ^ z, "minority")


def boolean_majority() -> TernaryOperation:
    return TernaryOperation.from_function(
        Domain(2), lambda x, y, z: 1 if x + y + z >= 2 else 0, "majority")


def apply(op: TernaryOperation, x: int, y: int, z: int) -> int:
    op.domain.check(x, y, z)
    n = op.domain.size
    return op.table[x * n * n + y * n + z]


def non_conservative_triple(op: TernaryOperation) -> tuple[int, int, int] | None:
    """First triple (in table order) whose value is not one of its arguments."""
    t = op.table
    for i, (x, y, z) in enumerate(op.domain.cells()):
        v = t[i]
        if v != x and v != y and v != z:
            return (x, y, z)
    return None


def is_conservative(op: TernaryOperation) -> bool:
    return non_conservative_triple(op) is None


def is_maltsev(op: TernaryOperation) -> bool:
    n = op.domain.size
    t = op.table
    for x in range(n):
        for y in range(n):
            if t[x * n * n + x * n + y] != y or t[y * n * n + x * n + x] != y:
                return False
    return True


def is_majority(op: TernaryOperation) -> bool:
    n = op.domain.size
    t = op.table
    for x in range(n):
        for y in range(n):
            if (t[x * n * n + x * n + y] != x
                    or t[x * n * n + y * n + x] != x
                    or t[y * n * n + x * n + x] != x):
                return False
    return True


def derivative(op: TernaryOperation) -> TernaryOperation:
    """Return p' with p'(x, y, z) = z if p(x, y, z) == x, and x otherwise.

    Defined for every operation. When ``op`` is Maltsev the result is a
    majority operation, and it is always conservative since it returns
    either its first or its third argument.
    """
    t = op.table
    table = tuple(z if t[i] == x else x for i, (x, _, z) in enumerate(op.domain.cells()))
    return TernaryOperation(op.domain, table, op.name + "'")


def _coordinate_label(value: int, x: int, y: int, z: int, coord: int) -> str:
    # priority x, then y, then z
    if value == x:
        return f"x{coord}"
    if value == y:
        return f"y{coord}"
    if value == z:
        return f"z{coord}"
    raise AssertionError("value is not an argument of a conservative operation")


def classify_case(xs: Sequence[int], ys: Sequence[int], zs: Sequence[int],
                  op: TernaryOperation) -> str:
    """Label which arguments ``op`` picks when applied to three pairs.

    ``xs``, ``ys`` and ``zs`` are the pairs (x1, x2), (y1, y2), (z1, z2).
    The result is one of :data:`CASE_LABELS`, e.g. ``"x1y2"`` when
    p(x1, y1, z1) = x1 and p(x2, y2, z2) = y2. If an output value equals
    several arguments, x wins over y and y over z.
    """
    if not is_conservative(op):
        raise ValueError("classify_case requires a conservative operation")
    (x1, x2), (y1, y2), (z1, z2) = xs, ys, zs
    first = apply(op, x1, y1, z1)
    second = apply(op, x2, y2, z2)
    return _coordinate_label(first, x1, y1, z1, 1) + _coordinate_label(second, x2, y2, z2, 2)


def derivative_case(label: str) -> str:
    """Map the case of p to the arguments p' picks on the same input.

    A coordinate where p returns x becomes z under the derivative; any other
    coordinate becomes x. So ``"x1y2"`` maps to ``"z1x2"``.
    """
    if label not in CASE_LABELS:
        raise ValueError(f"unknown case label {label!r}")
    first = "z1" if label[0] == "x" else "x1"
    second = "z2" if label[2] == "x" else "x2"
    return first + second


def select_case(label: str, xs: Sequence[int], ys: Sequence[int],
                zs: Sequence[int]) -> tuple[int, int]:
    """The concrete pair named by ``label``, e.g. ``"z1x2"`` -> (z1, x2)."""
    args = {"x": xs, "y": ys, "z": zs}
    return (args[label[0]][0], args[label[2]][1])
