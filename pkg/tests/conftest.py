import numpy as np
import pytest

import coxpack as cp


@pytest.fixture
def fig1a():
    """Complete rank-4 graph, all bonds 4 (level 2)."""
    return cp.complete_graph(4, 4)


@pytest.fixture
def fig1b():
    """Complete rank-4 graph, all bonds 4 except one dotted bond -1.1 (level 3)."""
    edges = [(u, v, cp.EdgeLabel(4)) for u, v in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]]
    edges.append((2, 3, cp.EdgeLabel(None, 1.1)))
    return cp.CoxeterGraph(4, tuple(edges))


@pytest.fixture
def five_cycle():
    """5-cycle with all bonds 4 (level 2)."""
    return cp.cycle_graph([4] * 5)


@pytest.fixture
def universal4():
    """Universal rank-4 system: all bonds infinite with weight 1."""
    return cp.universal_graph(4)


@pytest.fixture
def star_inf():
    """Rank-4 star: three infinite bonds meeting at one vertex (level 2)."""
    inf = cp.EdgeLabel(None, 1.0)
    return cp.CoxeterGraph(4, ((0, 3, inf), (1, 3, inf), (2, 3, inf)))


def level3_systems():
    """Three Lorentzian systems of level 3 for cluster (non-packing) checks."""
    edges = [(u, v, cp.EdgeLabel(4)) for u, v in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]]
    edges.append((2, 3, cp.EdgeLabel(None, 1.1)))
    fig_b = cp.CoxeterGraph(4, tuple(edges))
    k5 = cp.complete_graph(5, 4)
    dotted = [(u, v, cp.EdgeLabel(None, 1.0)) for u, v in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]]
    dotted.append((2, 3, cp.EdgeLabel(None, 1.5)))
    universal_dotted = cp.CoxeterGraph(4, tuple(dotted))
    return [fig_b, k5, universal_dotted]


@pytest.fixture(scope="session")
def census_entries():
    """The full census at the default tolerance (expensive; shared)."""
    from coxpack.census import enumerate_level2

    return enumerate_level2()


@pytest.fixture(scope="session")
def census_sorted(census_entries):
    return sorted(census_entries, key=lambda e: (e.rank, e.key))


@pytest.fixture(scope="session")
def census_sample_10(census_sorted):
    """Ten census graphs spread across the census, deterministically."""
    idx = np.linspace(0, len(census_sorted) - 1, 10).astype(int)
    return [census_sorted[i] for i in idx]
