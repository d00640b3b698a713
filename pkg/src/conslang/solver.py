"""CSP instances, a brute-force oracle and the path-consistency solver.

For a language with a majority polymorphism, a nonempty strongly path
consistent network is globally consistent, so picking values greedily after
each round of propagation never gets stuck.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

import numpy as np

from .algebra import TernaryOperation, is_majority
from .relations import Language, is_polymorphism

BRUTE_FORCE_BUDGET = 10 ** 7
_CHUNK = 1 << 15


@dataclass(frozen=True)
class Instance:
    language: Language
    num_vars: int
    constraints: tuple[tuple[str, tuple[int, ...]], ...] = ()

    def __post_init__(self):
        if self.num_vars < 0:
            raise ValueError("number of variables must be non-negative")
        cons = tuple((name, tuple(int(v) for v in scope)) for name, scope in self.constraints)
        for name, scope in cons:
            rel = self.language[name]
            if len(scope) != rel.arity:
                raise ValueError(f"relation {name!r} has arity {rel.arity}, scope {scope} does not match")
            for v in scope:
                if not 0 <= v < self.num_vars:
                    raise ValueError(f"variable {v} out of range in constraint {name}{scope}")
        object.__setattr__(self, "constraints", cons)

    def is_satisfied_by(self, assignment: Sequence[int]) -> bool:
        if len(assignment) != self.num_vars:
            return False
        return all(tuple(assignment[v] for v in scope) in self.language[name]
                   for name, scope in self.constraints)


@dataclass
class Network:
    """Candidate values per variable and allowed pairs per variable pair.

    ``domains`` has shape (m, n); ``edges`` has shape (m, m, n, n) with
    ``edges[j, i]`` kept equal to ``edges[i, j].T`` and ``edges[i, i]``
    equal to the diagonal of ``domains[i]``.
    """

    domains: np.ndarray
    edges: np.ndarray

    def copy(self) -> "Network":
        return Network(self.domains.copy(), self.edges.copy())

    def __eq__(self, other):
        return (isinstance(other, Network)
                and np.array_equal(self.domains, other.domains)
                and np.array_equal(self.edges, other.edges))

    @property
    def num_vars(self) -> int:
        return self.domains.shape[0]

    def is_empty(self) -> bool:
        if self.num_vars == 0:
            return False
        return bool((~self.domains.any(axis=1)).any() or (~self.edges.any(axis=(2, 3))).any())


def _sync_diagonal(edges: np.ndarray, domains: np.ndarray) -> None:
    for i in range(domains.shape[0]):
        edges[i, i] = np.diag(domains[i])


def normalize(inst: Instance) -> Network:
    m, n = inst.num_vars, inst.language.domain.size
    domains = np.ones((m, n), dtype=bool)
    edges = np.ones((m, m, n, n), dtype=bool)
    for name, scope in inst.constraints:
        bits = inst.language[name].bitmap
        if len(scope) == 1:
            domains[scope[0]] &= bits
        elif scope[0] == scope[1]:
            domains[scope[0]] &= np.diagonal(bits)
        else:
            i, j = scope
            edges[i, j] &= bits
            edges[j, i] &= bits.T
    edges &= domains[:, None, :, None] & domains[None, :, None, :]
    _sync_diagonal(edges, domains)
    return Network(domains, edges)


def _sweep(domains: np.ndarray, edges: np.ndarray) -> None:
    """One simultaneous application of the arc and path rules, in place."""
    m = domains.shape[0]
    edges &= domains[:, None, :, None] & domains[None, :, None, :]
    # arc rule: a stays in D_i only if every edge (i, j) supports it
    supported = (edges & domains[None, :, None, :]).any(axis=3)
    domains &= supported.all(axis=1)
    # path rule: (a, b) stays in E_ij only if every k offers a common c
    e = edges.astype(np.uint8)
    keep = np.ones_like(edges)
    for k in range(m):
        keep &= np.einsum("iac,jcb->ijab", e[:, k], e[k, :], dtype=np.int32) > 0
    edges &= keep
    edges &= domains[:, None, :, None] & domains[None, :, None, :]
    for i in range(m):
        domains[i] &= np.diagonal(edges[i, i])


def _apply_arc(domains, edges, i, j) -> bool:
    new = domains[i] & (edges[i, j] & domains[j][None, :]).any(axis=1)
    if np.array_equal(new, domains[i]):
        return False
    domains[i] = new
    edges[:, i] &= new[None, None, :]
    edges[i, :] &= new[None, :, None]
    return True


def _apply_path(domains, edges, i, j, k) -> bool:
    comp = (edges[i, k].astype(np.uint8) @ (edges[k, j] & domains[k][:, None]).astype(np.uint8)) > 0
    new = edges[i, j] & comp
    if np.array_equal(new, edges[i, j]):
        return False
    edges[i, j] = new
    edges[j, i] = new.T
    if i == j:
        domains[i] &= np.diagonal(new)
        _sync_diagonal(edges, domains)
    return True


def establish_path_consistency(net: Network, rng: np.random.Generator | None = None):
    """Tighten ``net`` to its greatest arc- and path-consistent sub-network.

    Returns a new :class:`Network`, or None as soon as a domain or an edge
    becomes empty. The default propagates with whole-network sweeps. Given
    ``rng``, it instead applies single arc/path rules one at a time in a
    shuffled order; both reach the same fixed point.
    """
    net = net.copy()
    m = net.num_vars
    if m == 0:
        return net
    if net.is_empty():
        return None
    if rng is None:
        while True:
            before = net.copy()
            _sweep(net.domains, net.edges)
            if net.is_empty():
                return None
            if net == before:
                return net
    rules = [("arc", i, j, -1) for i in range(m) for j in range(m)]
    rules += [("path", i, j, k) for i in range(m) for j in range(m) for k in range(m)]
    changed = True
    while changed:
        changed = False
        for r in rng.permutation(len(rules)):
            kind, i, j, k = rules[r]
            if kind == "arc":
                hit = _apply_arc(net.domains, net.edges, i, j)
            else:
                hit = _apply_path(net.domains, net.edges, i, j, k)
            if hit:
                changed = True
                if net.is_empty():
                    return None
    return net


def brute_force_solve(inst: Instance, budget: int = BRUTE_FORCE_BUDGET):
    """Lexicographically least satisfying assignment, or None if UNSAT."""
    m, n = inst.num_vars, inst.language.domain.size
    total = n ** m
    if total > budget:
        raise ValueError(f"brute force would try {n}**{m} = {total} assignments, budget is {budget}")
    if m == 0:
        return ()
    checks = [(inst.language[name].bitmap, scope) for name, scope in inst.constraints]
    weights = n ** np.arange(m - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        rows = (idx[:, None] // weights[None, :]) % n
        ok = np.ones(len(idx), dtype=bool)
        for bits, scope in checks:
            ok &= bits[tuple(rows[:, v] for v in scope)]
        hit = np.flatnonzero(ok)
        if len(hit):
            return tuple(int(v) for v in rows[hit[0]])
    return None


def check_witness(inst: Instance, witness: TernaryOperation) -> None:
    if not is_majority(witness):
        raise ValueError("witness is not a majority operation")
    report = is_polymorphism(witness, inst.language)
    if not report:
        names = ", ".join(f"{name} (witness {w})" for name, w in report.violations)
        raise ValueError(f"witness does not preserve: {names}")


def solve_majority(inst: Instance, witness: TernaryOperation):
    """Solve ``inst`` using a majority polymorphism of its language.

    The witness is checked first; an invalid one raises ValueError.
    Returns an assignment tuple or None for UNSAT.
    """
    check_witness(inst, witness)
    net = establish_path_consistency(normalize(inst))
    if net is None:
        return None
    m, n = inst.num_vars, inst.language.domain.size
    assignment = []
    for v in range(m):
        for a in np.flatnonzero(net.domains[v]):
            trial = net.copy()
            trial.domains[v] = False
            trial.domains[v, a] = True
            trial.edges &= trial.domains[:, None, :, None] & trial.domains[None, :, None, :]
            _sync_diagonal(trial.edges, trial.domains)
            trial = establish_path_consistency(trial)
            if trial is not None:
                net = trial
                assignment.append(int(a))
                break
        else:
            raise RuntimeError(
                f"greedy extension failed at variable {v}; the network was not globally "
                "consistent, so the witness cannot be a majority polymorphism of this language")
    result = tuple(assignment)
    if not inst.is_satisfied_by(result):
        raise RuntimeError(f"solver produced an assignment violating the instance: {result}")
    return result


def all_solutions(inst: Instance) -> list[tuple[int, ...]]:
    """Every satisfying assignment, by plain enumeration (tiny instances only)."""
    n = inst.language.domain.size
    return [a for a in product(range(n), repeat=inst.num_vars) if inst.is_satisfied_by(a)]
