"""Slow, obviously-correct reference computations used by the tests.

Nothing here calls into the library's checking code; operations are plain
Python callables or tables and relations are plain sets of tuples.
"""
from itertools import product

import numpy as np

from conslang import Domain, Language, Relation, TernaryOperation, closure_under
from conslang.search import sample_maltsev_conservative


def table_fn(table, n):
    return lambda x, y, z: table[x * n * n + y * n + z]


def naive_preserves(fn, tuples):
    tuples = sorted(set(tuples))
    members = set(tuples)
    for a, b, c in product(tuples, repeat=3):
        if tuple(fn(x, y, z) for x, y, z in zip(a, b, c)) not in members:
            return False
    return True


def naive_closure(fn, tuples):
    current = set(tuples)
    while True:
        new = {tuple(fn(x, y, z) for x, y, z in zip(a, b, c))
               for a, b, c in product(current, repeat=3)}
        if new <= current:
            return current
        current |= new


def naive_is_maltsev(fn, n):
    return all(fn(x, x, y) == y and fn(y, x, x) == y for x in range(n) for y in range(n))


def naive_is_majority(fn, n):
    return all(fn(x, x, y) == x and fn(x, y, x) == x and fn(y, x, x) == x
               for x in range(n) for y in range(n))


def naive_is_conservative(fn, n):
    return all(fn(x, y, z) in (x, y, z) for x, y, z in product(range(n), repeat=3))


def all_tables(n):
    return product(range(n), repeat=n ** 3)


def naive_solutions(num_vars, n, constraints):
    """constraints: list of (set_of_tuples, scope)."""
    out = []
    for a in product(range(n), repeat=num_vars):
        if all(tuple(a[v] for v in scope) in rel for rel, scope in constraints):
            out.append(a)
    return out


def random_majority_language(rng, n=None):
    """A conservative language with a known majority polymorphism.

    Binary relations are closures under a random conservative Maltsev op p,
    so derivative(p) preserves them; unary relations are arbitrary.
    """
    from conslang.verify import random_seed_relation

    n = n or int(rng.integers(2, 4))
    dom = Domain(n)
    p = sample_maltsev_conservative(dom, rng)
    rels = {}
    for i in range(int(rng.integers(1, 4))):
        rels[f"b{i}"] = closure_under(p, random_seed_relation(dom, rng))
    for i in range(int(rng.integers(0, 3))):
        rels[f"u{i}"] = Relation(1, dom, int(rng.integers(0, 1 << n)))
    return Language(dom, rels, conservative=True), p


def random_language(rng, n=None):
    """Arbitrary relations, no polymorphism promised."""
    n = n or int(rng.integers(2, 4))
    dom = Domain(n)
    rels = {}
    for i in range(int(rng.integers(1, 4))):
        rels[f"b{i}"] = Relation(2, dom, int(rng.integers(0, 1 << (n * n))))
    for i in range(int(rng.integers(0, 2))):
        rels[f"u{i}"] = Relation(1, dom, int(rng.integers(1, 1 << n)))
    if n == 3 and rng.random() < 0.3:
        rels["neq"] = Relation.from_tuples(dom, 2, [(a, b) for a in range(3) for b in range(3) if a != b])
    return Language(dom, rels)


def random_instance(lang, rng, max_vars=8):
    from conslang import Instance

    m = int(rng.integers(1, max_vars + 1))
    names = list(lang.relations)
    cons = []
    for _ in range(int(rng.integers(1, 2 * m + 2))):
        name = names[int(rng.integers(len(names)))]
        if lang.relations[name].arity == 1:
            cons.append((name, (int(rng.integers(m)),)))
        else:
            cons.append((name, (int(rng.integers(m)), int(rng.integers(m)))))
    return Instance(lang, m, tuple(cons))


def op_from(table, n, name="p"):
    return TernaryOperation(Domain(n), tuple(table), name)


def rng(seed):
    return np.random.default_rng(seed)
