"""Unary and binary relations, constraint languages and preservation checks.

A relation is a membership bitmap over X (unary) or X x X (binary). Bit
``i`` of the mask is set when the tuple with flattened index ``i`` belongs
to the relation, so a binary tuple (a, b) sits at bit ``a*n + b``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np

from .algebra import Domain, TernaryOperation, non_conservative_triple

MAX_ENUMERATED_TUPLES = 16


@dataclass(frozen=True)
class Relation:
    arity: int
    domain: Domain
    mask: int

    def __post_init__(self):
        if self.arity not in (1, 2):
            raise ValueError(f"relations must be unary or binary, got arity {self.arity}")
        if not 0 <= self.mask < (1 << self.num_cells):
            raise ValueError("relation mask has bits outside the domain")

    @classmethod
    def from_tuples(cls, domain: Domain, arity: int, tuples: Iterable) -> "Relation":
        n = domain.size
        mask = 0
        for t in tuples:
            t = (t,) if isinstance(t, (int, np.integer)) else tuple(t)
            if len(t) != arity:
                raise ValueError(f"tuple {t} does not have arity {arity}")
            domain.check(*t)
            mask |= 1 << (t[0] if arity == 1 else t[0] * n + t[1])
        return cls(arity, domain, mask)

    @classmethod
    def from_bitmap(cls, domain: Domain, bitmap: np.ndarray) -> "Relation":
        bitmap = np.asarray(bitmap, dtype=bool)
        mask = 0
        for i in np.flatnonzero(bitmap.ravel()):
            mask |= 1 << int(i)
        return cls(bitmap.ndim, domain, mask)

    @classmethod
    def full(cls, domain: Domain, arity: int) -> "Relation":
        return cls(arity, domain, (1 << domain.size ** arity) - 1)

    @classmethod
    def empty(cls, domain: Domain, arity: int) -> "Relation":
        return cls(arity, domain, 0)

    @property
    def num_cells(self) -> int:
        return self.domain.size ** self.arity

    @cached_property
    def bitmap(self) -> np.ndarray:
        """Boolean array of shape (n,) or (n, n)."""
        bits = np.array([(self.mask >> i) & 1 for i in range(self.num_cells)], dtype=bool)
        bits = bits.reshape((self.domain.size,) * self.arity)
        bits.flags.writeable = False
        return bits

    @cached_property
    def members(self) -> tuple[tuple[int, ...], ...]:
        """Member tuples in lexicographic order."""
        return tuple(tuple(int(v) for v in t) for t in np.argwhere(self.bitmap))

    @cached_property
    def member_array(self) -> np.ndarray:
        a = np.argwhere(self.bitmap).astype(np.intp).reshape(-1, self.arity)
        a.flags.writeable = False
        return a

    def __contains__(self, t) -> bool:
        t = (t,) if isinstance(t, (int, np.integer)) else tuple(t)
        if len(t) != self.arity or not all(0 <= v < self.domain.size for v in t):
            return False
        idx = t[0] if self.arity == 1 else t[0] * self.domain.size + t[1]
        return bool((self.mask >> idx) & 1)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __and__(self, other: "Relation") -> "Relation":
        self._check_compatible(other)
        return Relation(self.arity, self.domain, self.mask & other.mask)

    def __or__(self, other: "Relation") -> "Relation":
        self._check_compatible(other)
        return Relation(self.arity, self.domain, self.mask | other.mask)

    def _check_compatible(self, other: "Relation") -> None:
        if self.arity != other.arity or self.domain != other.domain:
            raise ValueError("relations differ in arity or domain")

    def transpose(self) -> "Relation":
        if self.arity != 2:
            raise ValueError("only binary relations can be transposed")
        return Relation.from_bitmap(self.domain, self.bitmap.T)

    def diagonal(self) -> "Relation":
        """The unary relation {a : (a, a) in self}."""
        if self.arity != 2:
            raise ValueError("only binary relations have a diagonal")
        return Relation.from_bitmap(self.domain, np.diagonal(self.bitmap))


@dataclass(frozen=True)
class Language:
    """Named unary/binary relations over one domain.

    With ``conservative`` set, the language also contains every unary
    relation on the domain. Those are implied by the flag and never stored.
    """

    domain: Domain
    relations: Mapping[str, Relation] = field(default_factory=dict)
    conservative: bool = False

    def __post_init__(self):
        rels = dict(self.relations)
        for name, rel in rels.items():
            if rel.domain != self.domain:
                raise ValueError(f"relation {name!r} is over a different domain")
        object.__setattr__(self, "relations", rels)

    def __getitem__(self, name: str) -> Relation:
        try:
            return self.relations[name]
        except KeyError:
            raise ValueError(f"unknown relation {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self.relations


def _check_domains(op: TernaryOperation, rel: Relation) -> None:
    if op.domain != rel.domain:
        raise ValueError(
            f"operation domain has size {op.domain.size}, relation domain has size {rel.domain.size}")


def _images(op: TernaryOperation, members: np.ndarray) -> np.ndarray:
    """Apply op componentwise to every ordered triple of member tuples.

    Returns an int array of shape (k, k, k, arity); entry [i, j, l] is
    p(t_i, t_j, t_l) for member tuples t.
    """
    n = op.domain.size
    coords = []
    for c in range(members.shape[1]):
        a = members[:, c]
        idx = a[:, None, None] * (n * n) + a[None, :, None] * n + a[None, None, :]
        coords.append(op.array[idx])
    return np.stack(coords, axis=-1)


def preservation_witness(op: TernaryOperation, rel: Relation):
    """First triple of member tuples that op maps outside ``rel``, or None.

    Triples are scanned in lexicographic order of member indices.
    """
    _check_domains(op, rel)
    members = rel.member_array
    if len(members) == 0:
        return None
    img = _images(op, members)
    inside = rel.bitmap[tuple(img[..., c] for c in range(rel.arity))]
    if inside.all():
        return None
    i, j, l = np.unravel_index(int(np.argmin(inside)), inside.shape)
    return (rel.members[i], rel.members[j], rel.members[l])


def preserves(op: TernaryOperation, rel: Relation) -> bool:
    return preservation_witness(op, rel) is None


CONSERVATIVE_CHECK = "<all unary relations>"


@dataclass(frozen=True)
class PolymorphismReport:
    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def is_polymorphism(op: TernaryOperation, lang: Language) -> PolymorphismReport:
    """Check op against every relation of ``lang``.

    The report is truthy when op is a polymorphism. Each violation is a
    ``(relation name, witness triple)`` pair. For a conservative language
    the implied unary relations are covered by checking that op itself is
    conservative; a failure there is reported under
    :data:`CONSERVATIVE_CHECK` with the offending argument triple.
    """
    if op.domain != lang.domain:
        raise ValueError("operation and language are over different domains")
    violations = []
    if lang.conservative:
        triple = non_conservative_triple(op)
        if triple is not None:
            violations.append((CONSERVATIVE_CHECK, triple))
    for name, rel in lang.relations.items():
        w = preservation_witness(op, rel)
        if w is not None:
            violations.append((name, w))
    return PolymorphismReport(tuple(violations))


def conservativity_witness(op: TernaryOperation):
    """For a non-conservative op, build the unary relation it fails to preserve.

    Finds a triple (x, y, z) with p(x, y, z) outside {x, y, z} and returns
    ``((x, y, z), Relation{x, y, z})``. The relation has at most three
    elements and the triple is a preservation violation for it. Returns
    None when op is conservative.
    """
    triple = non_conservative_triple(op)
    if triple is None:
        return None
    return triple, Relation.from_tuples(op.domain, 1, set(triple))


def closure_under(op: TernaryOperation, seed: Relation) -> Relation:
    """Smallest relation containing ``seed`` that op preserves."""
    _check_domains(op, seed)
    bitmap = np.array(seed.bitmap)
    while True:
        members = np.argwhere(bitmap)
        if len(members) == 0:
            break
        img = _images(op, members).reshape(-1, seed.arity)
        grown = bitmap.copy()
        grown[tuple(img[:, c] for c in range(seed.arity))] = True
        if np.array_equal(grown, bitmap):
            break
        bitmap = grown
    return Relation.from_bitmap(seed.domain, bitmap)


def preserved_relations(op: TernaryOperation, arity: int) -> list[Relation]:
    """Every relation of the given arity that op preserves, by ascending mask."""
    n = op.domain.size
    cells = n ** arity
    if cells > MAX_ENUMERATED_TUPLES:
        raise ValueError(
            f"enumerating 2**{cells} relations is too large (limit {MAX_ENUMERATED_TUPLES} tuples); "
            "sample invariant relations with closure_under instead")
    out = []
    for mask in range(1 << cells):
        rel = Relation(arity, op.domain, mask)
        if preserves(op, rel):
            out.append(rel)
    return out


def all_unary_relations(domain: Domain) -> list[Relation]:
    return [Relation(1, domain, mask) for mask in range(1 << domain.size)]

