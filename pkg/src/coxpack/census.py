"""Census of connected level-2 graphs on 5..11 vertices over labels {3,4,5,6}.

Candidates are nominated family by family from a catalog of level-1 graphs
(trees, cycles, and cycles with a pendant edge) plus three simply-laced
special graphs, then passed through numeric level recognition and
deduplicated by canonical key.  Every surviving entry is re-verified by
direct level computation before it is admitted.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from enum import Enum
from itertools import combinations, product
from typing import Iterable, Iterator

import numpy as np

from .forms import DEFAULT_ZERO_TOL, fundamental_weights, level
from .graphs import (
    CoxeterGraph,
    EdgeLabel,
    canonical_key,
    complete_graph,
    cycle_graph,
    to_compact,
)
from .tangency import InconsistencyError, is_strict_level2

ADMISSIBLE_LABELS = (3, 4, 5, 6)
_EIG_CHUNK = 8192


class Family(Enum):
    """Nomination family, in dedup priority order."""

    FROM_K4 = "from_k4"
    FROM_K4_MINUS_E = "from_k4_minus_e"
    FROM_K23 = "from_k23"
    TWO_CYCLES = "two_cycles"
    CYCLE = "cycle"
    CYCLE_TAIL1 = "cycle_tail1"
    CYCLE_TAIL2 = "cycle_tail2"
    CYCLE_TWO_TAILS = "cycle_two_tails"
    TREE = "tree"


@dataclass(frozen=True)
class CensusEntry:
    graph: CoxeterGraph
    key: bytes
    family: Family
    strict: bool
    n_imaginary: int
    n_real: int
    n_surreal: int

    @property
    def rank(self) -> int:
        return self.graph.rank


# ---------------------------------------------------------------------------
# Shape predicates and small graph surgery.
# ---------------------------------------------------------------------------


def _attach(g: CoxeterGraph, joints: list[tuple[int, EdgeLabel]]) -> CoxeterGraph:
    """New graph with one extra vertex connected through the given labeled edges."""
    new = g.rank
    edges = list(g.edges) + [(v, new, lab) for v, lab in joints]
    return CoxeterGraph(g.rank + 1, tuple(edges))


def _is_tree(g: CoxeterGraph) -> bool:
    return len(g.edges) == g.rank - 1 and g.is_connected()


def _is_path(g: CoxeterGraph) -> bool:
    return _is_tree(g) and all(g.degree(v) <= 2 for v in range(g.rank))


def _is_cycle(g: CoxeterGraph) -> bool:
    return (
        g.rank >= 3
        and len(g.edges) == g.rank
        and g.is_connected()
        and all(g.degree(v) == 2 for v in range(g.rank))
    )


def _is_tailed_cycle(g: CoxeterGraph) -> bool:
    """A cycle with exactly one pendant edge attached."""
    if len(g.edges) != g.rank or not g.is_connected():
        return False
    degs = sorted(g.degree(v) for v in range(g.rank))
    return g.rank >= 4 and degs[0] == 1 and degs[-1] == 3 and all(
        d == 2 for d in degs[1:-1]
    )


def _leaves(g: CoxeterGraph) -> list[int]:
    return [v for v in range(g.rank) if g.degree(v) == 1]


def _path_order(g: CoxeterGraph) -> list[int]:
    """Vertices of a path graph from one end to the other."""
    ends = _leaves(g)
    order = [ends[0]]
    prev = None
    while len(order) < g.rank:
        cur = order[-1]
        nxt = [w for w in g.neighbors(cur) if w != prev]
        prev = cur
        order.append(nxt[0])
    return order


# ---------------------------------------------------------------------------
# Level-1 catalog.  Connected level-0 graphs lose a non-cut vertex and stay
# connected level-0, so trees grow leaf by leaf from a single vertex; a
# level-1 tree is a level-0 tree plus one pendant edge, a level-1 cycle is a
# level-0 path with its ends joined to a new vertex, and a level-1 tailed
# cycle hangs a pendant edge on an unlabeled (all-3) cycle, the only
# positive-semidefinite cycles.
# ---------------------------------------------------------------------------


def _batch_min_eig(grams: np.ndarray) -> np.ndarray:
    out = np.empty(grams.shape[0])
    for lo in range(0, grams.shape[0], _EIG_CHUNK):
        hi = min(grams.shape[0], lo + _EIG_CHUNK)
        out[lo:hi] = np.linalg.eigvalsh(grams[lo:hi])[:, 0]
    return out


def _catalog_level01(max_n: int, labels, zero_tol: float):
    labs = [EdgeLabel(m) for m in labels]
    l0_trees: dict[int, list[CoxeterGraph]] = {1: [CoxeterGraph(1)]}
    l1_trees: list[CoxeterGraph] = []
    for k in range(1, max_n):
        grown: list[CoxeterGraph] = []
        seen: set[bytes] = set()
        for base in l0_trees[k]:
            for v in range(k):
                for lab in labs:
                    cand = _attach(base, [(v, lab)])
                    key = canonical_key(cand)
                    if key in seen:
                        continue
                    seen.add(key)
                    lv = level(cand, zero_tol)
                    if lv == 0:
                        grown.append(cand)
                    elif lv == 1:
                        l1_trees.append(cand)
        l0_trees[k + 1] = grown

    l0_paths = {k: [t for t in trees if _is_path(t)] for k, trees in l0_trees.items()}

    l1_cycles: list[CoxeterGraph] = []
    for k in range(2, max_n):
        seen = set()
        for base in l0_paths[k]:
            ends = _leaves(base)
            for lab1, lab2 in product(labs, repeat=2):
                cand = _attach(base, [(ends[0], lab1), (ends[1], lab2)])
                key = canonical_key(cand)
                if key in seen:
                    continue
                seen.add(key)
                if level(cand, zero_tol) == 1:
                    l1_cycles.append(cand)

    l1_tailed: list[CoxeterGraph] = []
    for m in range(3, max_n):
        base = cycle_graph([3] * m)
        for lab in labs:
            cand = _attach(base, [(0, lab)])
            if level(cand, zero_tol) == 1:
                l1_tailed.append(cand)

    return l0_trees, l1_trees, l1_cycles, l1_tailed


def _specials() -> list[CoxeterGraph]:
    k4 = complete_graph(4, 3)
    k4_minus_e = CoxeterGraph(4, tuple(e for e in k4.edges if (e[0], e[1]) != (2, 3)))
    k23 = CoxeterGraph(
        5, tuple((u, v, EdgeLabel(3)) for u in (0, 1) for v in (2, 3, 4))
    )
    return [k4, k4_minus_e, k23]


def enumerate_level1(
    max_n: int = 10,
    labels: Iterable[int] = ADMISSIBLE_LABELS,
    zero_tol: float = DEFAULT_ZERO_TOL,
) -> list[CoxeterGraph]:
    """Connected level-1 trees, cycles, and singly-tailed cycles, plus specials.

    These shapes (and the three special graphs) are the only connected
    level <= 1 graphs that appear as building blocks of level-2 graphs on
    five or more vertices, which also pins the label set to {3, 4, 5, 6}.
    """
    labels = tuple(sorted(set(labels)))
    if labels != ADMISSIBLE_LABELS:
        raise ValueError(f"unsupported label set {labels}; expected {ADMISSIBLE_LABELS}")
    if not 2 <= max_n <= 10:
        raise ValueError(f"max_n must lie in 2..10, got {max_n}")
    _, l1_trees, l1_cycles, l1_tailed = _catalog_level01(max_n, labels, zero_tol)
    out: dict[bytes, CoxeterGraph] = {}
    for g in l1_trees + l1_cycles + l1_tailed + [s for s in _specials() if s.rank <= max_n]:
        if g.rank > max_n:
            continue
        if level(g, zero_tol) != 1:
            raise InconsistencyError(f"catalog graph {to_compact(g)} is not level 1")
        out.setdefault(canonical_key(g), g)
    return [out[k] for k in sorted(out)]


# ---------------------------------------------------------------------------
# Nomination.
# ---------------------------------------------------------------------------


def _extend_by_vertex(base: CoxeterGraph, labs) -> Iterator[CoxeterGraph]:
    for r in range(1, base.rank + 1):
        for subset in combinations(range(base.rank), r):
            for labeling in product(labs, repeat=r):
                yield _attach(base, list(zip(subset, labeling)))


def _butterfly_edges() -> list[tuple[int, int]]:
    return [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]


def _theta_edges(a: int, bsz: int, c: int) -> tuple[int, list[tuple[int, int]]]:
    """Two hub vertices joined by three paths with a, b, c interior vertices."""
    edges = []
    nxt = 2
    for size in (a, bsz, c):
        chain = [0] + list(range(nxt, nxt + size)) + [1]
        nxt += size
        edges.extend((chain[i], chain[i + 1]) for i in range(len(chain) - 1))
    return nxt, edges


def _all_labelings(rank: int, shape: list[tuple[int, int]], labs) -> Iterator[CoxeterGraph]:
    for labeling in product(labs, repeat=len(shape)):
        yield CoxeterGraph(
            rank, tuple((u, v, lab) for (u, v), lab in zip(shape, labeling))
        )


def nominate(
    family: Family,
    level1: list[CoxeterGraph],
    labels: Iterable[int] = ADMISSIBLE_LABELS,
) -> Iterator[CoxeterGraph]:
    """Candidate stream for one family; no level filtering happens here."""
    labs = [EdgeLabel(m) for m in sorted(set(labels))]
    if family is Family.FROM_K4:
        yield from _extend_by_vertex(_specials()[0], labs)
    elif family is Family.FROM_K4_MINUS_E:
        yield from _extend_by_vertex(_specials()[1], labs)
    elif family is Family.FROM_K23:
        yield from _extend_by_vertex(_specials()[2], labs)
    elif family is Family.TWO_CYCLES:
        yield from _all_labelings(5, _butterfly_edges(), labs)
        for a, bsz, c in [(0, 1, 1), (0, 1, 2), (0, 2, 2), (1, 1, 1), (1, 1, 2), (1, 2, 2), (2, 2, 2)]:
            rank, shape = _theta_edges(a, bsz, c)
            yield from _all_labelings(rank, shape, labs)
    elif family is Family.CYCLE:
        # a path of level 1 closed up by a new vertex joined to both ends
        for p in level1:
            if not _is_path(p):
                continue
            ends = _leaves(p)
            for lab1, lab2 in product(labs, repeat=2):
                yield _attach(p, [(ends[0], lab1), (ends[1], lab2)])
    elif family is Family.CYCLE_TAIL1:
        # pendant edge on a level-1 cycle
        for cyc in level1:
            if not _is_cycle(cyc):
                continue
            for v in range(cyc.rank):
                for lab in labs:
                    yield _attach(cyc, [(v, lab)])
        # level-1 tree with three leaves, new vertex joined to two of them;
        # the remaining branch becomes the tail and must have length one
        for t in level1:
            if not _is_tree(t):
                continue
            leaves = _leaves(t)
            if len(leaves) != 3:
                continue
            hub = next(v for v in range(t.rank) if t.degree(v) == 3)
            for l1, l2 in combinations(leaves, 2):
                third = next(x for x in leaves if x not in (l1, l2))
                if third not in t.neighbors(hub):
                    continue
                for lab1, lab2 in product(labs, repeat=2):
                    yield _attach(t, [(l1, lab1), (l2, lab2)])
        # level-1 path, new vertex joined to the second and the last vertex
        for p in level1:
            if not _is_path(p) or p.rank < 3:
                continue
            order = _path_order(p)
            for seq in (order, order[::-1]):
                for lab1, lab2 in product(labs, repeat=2):
                    yield _attach(p, [(seq[1], lab1), (seq[-1], lab2)])
    elif family is Family.CYCLE_TAIL2:
        # grow the tail of a level-1 tailed cycle by one edge
        for tc in level1:
            if not _is_tailed_cycle(tc):
                continue
            tail = _leaves(tc)[0]
            for lab in labs:
                yield _attach(tc, [(tail, lab)])
    elif family is Family.CYCLE_TWO_TAILS:
        # pendant edge on any cycle vertex of a level-1 tailed cycle
        for tc in level1:
            if not _is_tailed_cycle(tc):
                continue
            tail = _leaves(tc)[0]
            for v in range(tc.rank):
                if v == tail:
                    continue
                for lab in labs:
                    yield _attach(tc, [(v, lab)])
    elif family is Family.TREE:
        for t in level1:
            if not _is_tree(t):
                continue
            for v in range(t.rank):
                for lab in labs:
                    yield _attach(t, [(v, lab)])
    else:
        raise ValueError(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# Recognition: staged, vectorized level-2 filtering.
# level(g) == 2 is equivalent to: some vertex deletion is not positive
# semidefinite, and every deletion of two vertices is.  A non-PSD full
# matrix is a necessary precondition and cheap to screen first.
# ---------------------------------------------------------------------------


def _filter_level2_arrays(grams: np.ndarray, zero_tol: float) -> np.ndarray:
    """Indices of the stacked Gram matrices that belong to level-2 graphs."""
    count, n, _ = grams.shape
    alive = np.arange(count)
    # full matrix must fail positive semidefiniteness
    alive = alive[_batch_min_eig(grams[alive]) < -zero_tol]
    if alive.size == 0:
        return alive
    # some single-vertex deletion must also fail it
    bad_minor = np.zeros(alive.size, dtype=bool)
    for v in range(n):
        idx = np.array([i for i in range(n) if i != v])
        sub = grams[alive][:, idx[:, None], idx[None, :]]
        bad_minor |= _batch_min_eig(sub) < -zero_tol
    alive = alive[bad_minor]
    # every two-vertex deletion must be positive semidefinite
    for u, v in combinations(range(n), 2):
        if alive.size == 0:
            break
        idx = np.array([i for i in range(n) if i not in (u, v)])
        sub = grams[alive][:, idx[:, None], idx[None, :]]
        alive = alive[_batch_min_eig(sub) >= -zero_tol]
    return alive


def _filter_level2(
    graphs: list[CoxeterGraph], zero_tol: float, jobs: int = 1
) -> list[CoxeterGraph]:
    by_rank: dict[int, list[int]] = {}
    for i, g in enumerate(graphs):
        by_rank.setdefault(g.rank, []).append(i)
    keep: list[int] = []
    for n in sorted(by_rank):
        idxs = by_rank[n]
        grams = np.empty((len(idxs), n, n))
        for row, i in enumerate(idxs):
            grams[row] = graphs[i].gram
        if jobs > 1 and len(idxs) > 4 * _EIG_CHUNK:
            survivors = _filter_level2_parallel(grams, zero_tol, jobs)
        else:
            survivors = _filter_level2_arrays(grams, zero_tol)
        keep.extend(idxs[row] for row in survivors)
    keep.sort()
    return [graphs[i] for i in keep]


def _parallel_worker(args):
    grams, zero_tol = args
    return _filter_level2_arrays(grams, zero_tol)


def _filter_level2_parallel(grams: np.ndarray, zero_tol: float, jobs: int) -> np.ndarray:
    import multiprocessing

    chunks = np.array_split(np.arange(grams.shape[0]), jobs * 4)
    payload = [(grams[c], zero_tol) for c in chunks if c.size]
    with multiprocessing.Pool(jobs) as pool:
        parts = pool.map(_parallel_worker, payload)
    out = []
    for chunk, part in zip([c for c in chunks if c.size], parts):
        out.extend(chunk[part])
    return np.array(sorted(out), dtype=int)


# ---------------------------------------------------------------------------
# The census.
# ---------------------------------------------------------------------------


def _make_entry(g: CoxeterGraph, key: bytes, family: Family, zero_tol: float) -> CensusEntry:
    _, norms = fundamental_weights(g.gram)
    n_im = n_re = n_su = 0
    for norm in norms:
        if norm > 1.0 + 1e-9:
            raise InconsistencyError(
                f"level-2 graph {to_compact(g)} has weight norm {norm} > 1"
            )
        if abs(norm - 1.0) <= 1e-9:
            n_su += 1
        elif norm <= 1e-9:
            n_im += 1
        else:
            n_re += 1
    return CensusEntry(
        g, key, family, is_strict_level2(g, zero_tol), n_im, n_re, n_su
    )


def enumerate_level2(
    max_rank: int = 11,
    labels: Iterable[int] = ADMISSIBLE_LABELS,
    zero_tol: float = DEFAULT_ZERO_TOL,
    jobs: int = 1,
) -> list[CensusEntry]:
    """All connected level-2 graphs on 5..max_rank vertices, sorted by key.

    Candidates come from the nomination families in declaration order; the
    first family to produce a graph keeps the tag.  Every entry is verified
    by direct level recognition, independent of how it was constructed.
    """
    if not 5 <= max_rank <= 11:
        raise ValueError(f"max_rank must lie in 5..11, got {max_rank}")
    level1 = enumerate_level1(min(10, max_rank - 1), labels, zero_tol)
    seen: dict[bytes, Family] = {}
    entries: list[CensusEntry] = []
    for family in Family:
        cands = [
            g
            for g in nominate(family, level1, labels)
            if 5 <= g.rank <= max_rank
        ]
        for g in _filter_level2(cands, zero_tol, jobs):
            if level(g, zero_tol) != 2:
                raise InconsistencyError(
                    f"recognition accepted {to_compact(g)} but level != 2"
                )
            key = canonical_key(g)
            if key in seen:
                continue
            seen[key] = family
            entries.append(_make_entry(g, key, family, zero_tol))
    entries.sort(key=lambda e: e.key)
    return entries


@dataclass(frozen=True)
class CensusReport:
    total: int
    strict_total: int
    by_family_rank: dict[tuple[Family, int], int]
    class_totals: tuple[int, int, int]  # imaginary, real, surreal

    def rank_histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for (_, rank), cnt in self.by_family_rank.items():
            hist[rank] = hist.get(rank, 0) + cnt
        return dict(sorted(hist.items()))


def census_report(entries: list[CensusEntry]) -> CensusReport:
    by_fr: dict[tuple[Family, int], int] = {}
    n_im = n_re = n_su = 0
    strict = 0
    for e in sorted(entries, key=lambda e: e.key):
        by_fr[(e.family, e.rank)] = by_fr.get((e.family, e.rank), 0) + 1
        n_im += e.n_imaginary
        n_re += e.n_real
        n_su += e.n_surreal
        strict += e.strict
    return CensusReport(len(entries), strict, by_fr, (n_im, n_re, n_su))


_CSV_COLUMNS = [
    "key",
    "rank",
    "family",
    "strict",
    "n_imaginary",
    "n_real",
    "n_surreal",
    "edge_list",
]


def entry_row(e: CensusEntry) -> dict:
    return {
        "key": e.key.decode("ascii"),
        "rank": e.rank,
        "family": e.family.value,
        "strict": e.strict,
        "n_imaginary": e.n_imaginary,
        "n_real": e.n_real,
        "n_surreal": e.n_surreal,
        "edge_list": to_compact(e.graph),
    }


def write_census_csv(entries: list[CensusEntry], path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=_CSV_COLUMNS)
        writer.writeheader()
        for e in sorted(entries, key=lambda e: e.key):
            row = entry_row(e)
            row["strict"] = "true" if row["strict"] else "false"
            writer.writerow(row)


def write_census_json(entries: list[CensusEntry], path) -> None:
    rows = [entry_row(e) for e in sorted(entries, key=lambda e: e.key)]
    with open(path, "w") as fh:
        json.dump(rows, fh, indent=1)
        fh.write("\n")
