from itertools import product

import numpy as np
import pytest

from conslang import (Domain, Language, Relation, SearchSpec, analyze, derivative,
                      enumerate_maltsev_conservative, find_polymorphism, is_conservative,
                      is_maltsev, is_majority, is_polymorphism, sample_maltsev_conservative)
from conslang.search import (iter_polymorphisms, maltsev_forced_cells, sample_non_conservative)
from oracles import (all_tables, naive_is_conservative, naive_is_maltsev, naive_preserves,
                     table_fn)


def test_spec_needs_something_to_search_for():
    with pytest.raises(ValueError):
        SearchSpec(Language(Domain(2)))
    with pytest.raises(ValueError):
        SearchSpec(Language(Domain(2)), require_maltsev=True, mode="best")


def test_eq_is_preserved_by_everything(eq2):
    spec = SearchSpec(Language(Domain(2), {"eq": eq2}), require_maltsev=True,
                      require_conservative=True, mode="count")
    assert find_polymorphism(spec) == 4


def test_neq_first_solution_matches_brute_force(neq2):
    lang = Language(Domain(2), {"neq": neq2}, conservative=True)
    op = find_polymorphism(SearchSpec(lang, require_maltsev=True))
    expected = next(t for t in all_tables(2)
                    if naive_is_maltsev(table_fn(t, 2), 2)
                    and naive_is_conservative(table_fn(t, 2), 2)
                    and naive_preserves(table_fn(t, 2), neq2.members))
    assert op.table == expected == (0, 1, 0, 0, 1, 1, 0, 1)
    assert is_maltsev(op) and is_polymorphism(op, lang)


def test_count_matches_enumeration():
    lang = Language(Domain(2))
    spec = SearchSpec(lang, require_maltsev=True, require_conservative=True, mode="count")
    assert find_polymorphism(spec) == 4 == len(list(enumerate_maltsev_conservative(Domain(2))))


def test_no_maltsev_polymorphism_for_three_coloring():
    # K3 colouring has no Maltsev polymorphism; exhaustive search must agree
    dom = Domain(3)
    neq = Relation.from_tuples(dom, 2, [(a, b) for a in range(3) for b in range(3) if a != b])
    assert find_polymorphism(SearchSpec(Language(dom, {"neq": neq}), require_maltsev=True)) is None
    assert not analyze(Language(dom, {"neq": neq}, conservative=True)).found


def _random_language(rng, n):
    dom = Domain(n)
    rels = {}
    for i in range(int(rng.integers(1, 3))):
        rels[f"b{i}"] = Relation(2, dom, int(rng.integers(0, 1 << n * n)))
    if rng.random() < 0.5:
        rels["u"] = Relation(1, dom, int(rng.integers(0, 1 << n)))
    return Language(dom, rels, conservative=bool(rng.random() < 0.5))


@pytest.mark.parametrize("seed", range(12))
def test_all_solutions_match_brute_force_on_two_elements(seed):
    rng = np.random.default_rng(seed)
    lang = _random_language(rng, 2)
    flags = dict(require_maltsev=bool(rng.random() < 0.5))
    found = [op.table for op in find_polymorphism(SearchSpec(lang, mode="all", **flags))]
    expected = []
    for t in all_tables(2):
        fn = table_fn(t, 2)
        if flags["require_maltsev"] and not naive_is_maltsev(fn, 2):
            continue
        if lang.conservative and not naive_is_conservative(fn, 2):
            continue
        if all(naive_preserves(fn, r.members) for r in lang.relations.values()):
            expected.append(t)
    assert found == expected


@pytest.mark.parametrize("seed", range(4))
def test_maltsev_solutions_match_filtered_enumeration_on_three_elements(seed):
    rng = np.random.default_rng(100 + seed)
    lang = _random_language(rng, 3)
    lang = Language(lang.domain, lang.relations, conservative=True)
    found = [op.table for op in iter_polymorphisms(SearchSpec(lang, require_maltsev=True))]
    expected = [op.table for op in enumerate_maltsev_conservative(lang.domain)
                if all(naive_preserves(table_fn(op.table, 3), r.members)
                       for r in lang.relations.values())]
    assert found == expected


def test_forced_cells():
    forced = maltsev_forced_cells(Domain(2))
    # cell index = 4x + 2y + z
    assert forced == {0: 0, 1: 1, 3: 0, 4: 1, 6: 0, 7: 1}


@pytest.mark.parametrize("n, count", [(1, 1), (2, 4), (3, 2 ** 6 * 3 ** 6)])
def test_enumeration_counts(n, count):
    ops = list(enumerate_maltsev_conservative(Domain(n)))
    assert len(ops) == count
    assert len({op.table for op in ops}) == count
    assert [op.table for op in ops] == sorted(op.table for op in ops)


def test_enumeration_matches_filter_on_two_elements():
    expected = [t for t in all_tables(2)
                if naive_is_maltsev(table_fn(t, 2), 2) and naive_is_conservative(table_fn(t, 2), 2)]
    assert [op.table for op in enumerate_maltsev_conservative(Domain(2))] == expected


def test_enumerated_ops_are_conservative_maltsev():
    for op in enumerate_maltsev_conservative(Domain(3)):
        if op.table[5] == 0:  # a cheap slice through the space
            assert is_maltsev(op) and is_conservative(op)


def test_enumeration_guard():
    with pytest.raises(ValueError, match="sample_maltsev_conservative"):
        next(enumerate_maltsev_conservative(Domain(4)))


def test_sampling_is_deterministic_and_valid():
    dom = Domain(4)
    a = sample_maltsev_conservative(dom, 12345)
    b = sample_maltsev_conservative(dom, 12345)
    assert a.table == b.table
    assert is_maltsev(a) and is_conservative(a)
    assert sample_maltsev_conservative(dom, 1).table != a.table


def test_sampling_frequencies_are_uniform():
    dom = Domain(3)
    rng = np.random.default_rng(2024)
    samples = np.array([sample_maltsev_conservative(dom, rng).table for _ in range(10000)])
    forced = maltsev_forced_cells(dom)
    for cell, (x, y, z) in enumerate(product(range(3), repeat=3)):
        column = samples[:, cell]
        if cell in forced:
            assert (column == forced[cell]).all()
            continue
        cands = sorted({x, y, z})
        k, total = len(cands), len(column)
        assert set(np.unique(column)) <= set(cands)
        for v in cands:
            observed = (column == v).sum()
            sd = np.sqrt(total * (1 / k) * (1 - 1 / k))
            assert abs(observed - total / k) <= 5 * sd


def test_non_conservative_sampler():
    for n in (2, 3, 4):
        op = sample_non_conservative(Domain(n), n)
        assert not is_conservative(op)


def test_analyze_neq(neq2):
    result = analyze(Language(Domain(2), {"neq": neq2}, conservative=True))
    assert result.success
    assert result.majority == derivative(result.maltsev)
    assert is_majority(result.majority)


def test_analyze_empty_relation_is_vacuous():
    result = analyze(Language(Domain(3), {"none": Relation.empty(Domain(3), 2)}, conservative=True))
    assert result.success
    assert result.maltsev == next(enumerate_maltsev_conservative(Domain(3)))
