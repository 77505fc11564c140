import random

import pytest

import coxpack as cp
from coxpack.census import (
    ADMISSIBLE_LABELS,
    Family,
    _filter_level2,
    _is_cycle,
    _is_path,
    _is_tailed_cycle,
    _is_tree,
    _specials,
    census_report,
    enumerate_level1,
    enumerate_level2,
    nominate,
)


@pytest.fixture(scope="module")
def level1():
    return enumerate_level1(10)


def test_shape_predicates():
    assert _is_tree(cp.path_graph([3, 3, 3]))
    assert _is_path(cp.path_graph([3, 3, 3]))
    assert not _is_path(
        cp.CoxeterGraph(4, (
            (0, 1, cp.EdgeLabel(3)), (0, 2, cp.EdgeLabel(3)), (0, 3, cp.EdgeLabel(3)),
        ))
    )
    assert _is_cycle(cp.cycle_graph([3, 4, 3, 4]))
    tailed = cp.CoxeterGraph(4, (
        (0, 1, cp.EdgeLabel(3)), (1, 2, cp.EdgeLabel(3)),
        (0, 2, cp.EdgeLabel(3)), (2, 3, cp.EdgeLabel(4)),
    ))
    assert _is_tailed_cycle(tailed)
    assert not _is_tailed_cycle(cp.cycle_graph([3, 3, 3]))


def test_specials_are_level1():
    k4, k4e, k23 = _specials()
    assert cp.level(k4) == 1
    assert cp.level(k4e) == 1
    assert cp.level(k23) == 1
    assert len(k4.edges) == 6 and len(k4e.edges) == 5 and len(k23.edges) == 6


def test_relabeled_specials_never_level1():
    """Changing any bond of a special graph to 4, 5 or 6 breaks level 1."""
    for base in _specials():
        for i, (u, v, _) in enumerate(base.edges):
            for m in (4, 5, 6):
                edges = list(base.edges)
                edges[i] = (u, v, cp.EdgeLabel(m))
                g = cp.CoxeterGraph(base.rank, tuple(edges))
                assert cp.level(g) != 1


def test_enumerate_level1_contents(level1):
    keys = {cp.canonical_key(g) for g in level1}
    assert cp.canonical_key(_specials()[0]) in keys  # K4 qualifies
    # finite and affine shapes are filtered out
    assert cp.canonical_key(cp.path_graph([3, 3, 3])) not in keys
    assert cp.canonical_key(cp.cycle_graph([3, 3, 3])) not in keys
    assert all(cp.level(g) == 1 for g in level1)
    assert len(keys) == len(level1)
    assert all(g.rank <= 10 for g in level1)


def test_enumerate_level1_validation():
    with pytest.raises(ValueError):
        enumerate_level1(11)
    with pytest.raises(ValueError):
        enumerate_level1(10, labels=(3, 4, 5, 6, 7))


def test_nominate_from_k4(level1):
    cands = list(nominate(Family.FROM_K4, level1))
    assert len(cands) == 624  # sum over nonempty subsets of 4^|subset|
    assert all(g.rank == 5 for g in cands)


def test_nominate_two_cycles_has_butterfly(level1):
    found = False
    for g in nominate(Family.TWO_CYCLES, level1):
        degs = sorted(g.degree(v) for v in range(g.rank))
        if g.rank == 5 and degs == [2, 2, 2, 2, 4]:
            found = True
            break
    assert found


def test_nominate_tree_count(level1):
    trees = [g for g in level1 if _is_tree(g)]
    t = trees[0]
    cands = [g for g in nominate(Family.TREE, [t])]
    assert len(cands) == t.rank * 4


def test_filter_level2_agrees_with_direct_level(level1):
    cands = [g for g in nominate(Family.FROM_K23, level1) if g.rank >= 5]
    fast = {cp.canonical_key(g) for g in _filter_level2(cands, 1e-3)}
    slow = {cp.canonical_key(g) for g in cands if cp.level(g) == 2}
    assert fast == slow


def test_census_rank5_slice():
    entries = enumerate_level2(max_rank=5)
    assert len(entries) == 189  # frozen from the verified full run
    assert all(e.rank == 5 for e in entries)


def test_census_entries_verified(census_entries):
    assert len(census_entries) == len({e.key for e in census_entries})
    sample = random.Random(5).sample(census_entries, 12)
    for e in sample:
        assert cp.level(e.graph) == 2
        assert 5 <= e.rank <= 11
        assert e.n_imaginary + e.n_real + e.n_surreal == e.rank
        assert e.graph.is_connected()


def test_census_labels_admissible(census_entries):
    for e in census_entries:
        for _, _, lab in e.graph.edges:
            assert lab.m in ADMISSIBLE_LABELS


def test_census_closure(census_entries):
    """Deleting any vertex leaves components of level at most 1."""
    sample = random.Random(9).sample(census_entries, 10)
    for e in sample:
        g = e.graph
        for v in range(g.rank):
            rest = [u for u in range(g.rank) if u != v]
            sub = cp.induced_subgraph(g, rest)
            for comp in _components(sub):
                assert cp.level(cp.induced_subgraph(sub, comp)) <= 1


def _components(g):
    unseen = set(range(g.rank))
    comps = []
    while unseen:
        stack = [unseen.pop()]
        comp = {stack[0]}
        while stack:
            u = stack.pop()
            for w in g.neighbors(u):
                if w in unseen:
                    unseen.remove(w)
                    comp.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def test_census_11_vertices_are_trees(census_entries):
    elevens = [e for e in census_entries if e.rank == 11]
    assert elevens and all(_is_tree(e.graph) for e in elevens)
    assert any(e.rank == 10 for e in census_entries)


def test_dedup_stable_under_candidate_shuffle(level1):
    """The admitted key set cannot depend on nomination order."""
    cands = [g for g in nominate(Family.FROM_K4_MINUS_E, level1) if g.rank >= 5]
    ordered = {cp.canonical_key(g) for g in _filter_level2(cands, 1e-3)}
    shuffled = cands[:]
    random.Random(3).shuffle(shuffled)
    assert {cp.canonical_key(g) for g in _filter_level2(shuffled, 1e-3)} == ordered


def test_parallel_filter_matches_sequential(level1):
    import numpy as np

    from coxpack.census import _filter_level2_arrays, _filter_level2_parallel

    cands = list(nominate(Family.FROM_K4, level1))
    grams = np.stack([g.gram for g in cands])
    seq = _filter_level2_arrays(grams, 1e-3)
    par = _filter_level2_parallel(grams, 1e-3, jobs=2)
    assert np.array_equal(np.sort(seq), par)


def test_census_contains_butterfly(census_entries):
    """Two triangles sharing a vertex survive recognition with some labeling."""
    hits = [
        e
        for e in census_entries
        if e.rank == 5
        and sorted(e.graph.degree(v) for v in range(5)) == [2, 2, 2, 2, 4]
    ]
    assert hits


def test_census_frames_valid(census_entries):
    import numpy as np

    from coxpack.balls import lorentz_frame

    for e in census_entries:
        b = e.graph.gram
        frame = lorentz_frame(b)
        n = e.rank
        target = np.diag([1.0] * (n - 1) + [-1.0])
        assert np.abs(frame.basis_change.T @ b @ frame.basis_change - target).max() <= 1e-9


def test_census_report(census_entries):
    rep = census_report(census_entries)
    assert rep.total == len(census_entries)
    assert sum(rep.by_family_rank.values()) == rep.total
    assert set(rep.rank_histogram()) <= set(range(5, 12))
    assert rep.strict_total == sum(1 for e in census_entries if e.strict)
    assert rep.class_totals == (
        sum(e.n_imaginary for e in census_entries),
        sum(e.n_real for e in census_entries),
        sum(e.n_surreal for e in census_entries),
    )
