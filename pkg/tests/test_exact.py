import math

import pytest

from mcskit import complement, erdos_renyi, new_graph
from mcskit.errors import BudgetExceededError, ParameterError
from mcskit.exact import (
    OracleBudget,
    is_clique,
    is_independent_set,
    largest_eigenvalue,
    max_clique_exact,
    mcs_brute_force,
    mis_exact,
    verify_common_subgraph,
)


def K(n):
    return new_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def cycle(n):
    return new_graph(n, [(i, (i + 1) % n) for i in range(n)])


P3 = new_graph(3, [(0, 1), (1, 2)])


def test_max_clique_k4():
    assert max_clique_exact(K(4)) == {0, 1, 2, 3}


def test_max_clique_c5_lex_smallest():
    assert max_clique_exact(cycle(5)) == {0, 1}


def test_max_clique_edgeless():
    assert max_clique_exact(new_graph(3, [])) == {0}


def test_max_clique_budget_vertices():
    with pytest.raises(BudgetExceededError):
        max_clique_exact(K(5), OracleBudget(max_vertices=4))


def test_oracle_budget_validation():
    with pytest.raises(ParameterError):
        OracleBudget(max_vertices=0)


def test_max_clique_is_maximal_and_clique():
    for seed in range(30):
        g = erdos_renyi(10, 0.5, seed)
        c = max_clique_exact(g)
        assert is_clique(g, c)
        for v in range(g.n):
            if v not in c:
                assert not is_clique(g, c | {v})


def test_mis_c4():
    assert mis_exact(cycle(4)) == {0, 2}


def test_mis_k5():
    assert mis_exact(K(5)) == {0}


def test_mis_edgeless():
    assert mis_exact(new_graph(4, [])) == {0, 1, 2, 3}


def test_mis_clique_complement_identity():
    for seed in range(20):
        g = erdos_renyi(9, 0.4, seed)
        assert len(mis_exact(g)) == len(max_clique_exact(complement(g)))


def test_brute_force_k3_p3():
    assert len(mcs_brute_force(K(3), P3)) == 2


def test_brute_force_self():
    for seed in range(5):
        g = erdos_renyi(5, 0.5, seed)
        assert len(mcs_brute_force(g, g)) == g.n


def test_brute_force_k1():
    assert len(mcs_brute_force(K(1), K(7))) == 1


def test_is_clique():
    assert is_clique(K(3), {0, 1, 2})
    assert not is_clique(P3, {0, 2})
    assert is_clique(P3, set())
    assert is_independent_set(P3, {0, 2})


def test_verify_identity_subsets():
    g = erdos_renyi(6, 0.5, 3)
    assert verify_common_subgraph(g, g, [(v, v) for v in (0, 2, 4)])


def test_verify_rejects_one_way_edge():
    assert not verify_common_subgraph(K(2), new_graph(2, []), [(0, 0), (1, 1)])


def test_verify_rejects_non_injective():
    g = K(3)
    assert not verify_common_subgraph(g, g, [(0, 1), (2, 1)])
    assert not verify_common_subgraph(g, g, [(0, 0), (0, 1)])


def test_eigenvalue_complete():
    assert largest_eigenvalue(K(3), {0, 1, 2}) == pytest.approx(2.0, abs=1e-8)


def test_eigenvalue_single_vertex():
    assert largest_eigenvalue(K(3), {0}) == pytest.approx(0.0, abs=1e-12)


def test_eigenvalue_p3():
    assert largest_eigenvalue(P3, {0, 1, 2}) == pytest.approx(math.sqrt(2), abs=1e-8)


def test_eigenvalue_k2_restriction():
    # 2x2 closed form: lambda_max of an edge is 1
    assert largest_eigenvalue(K(3), {0, 1}) == pytest.approx(1.0, abs=1e-8)


def test_eigenvalue_empty_restriction():
    with pytest.raises(ParameterError):
        largest_eigenvalue(K(3), set())
