import numpy as np
import pytest

from mcskit import association_graph, erdos_renyi, new_graph
from mcskit.annealing import (
    AnnealingSchedule,
    build_schedule,
    clique_upper_bound,
    compute_gamma,
    density,
    gamma_hat,
    run_aih,
    shifted_payoff,
)
from mcskit.dynamics import rd_step, characteristic_vector
from mcskit.errors import ParameterError
from mcskit.exact import is_clique, max_clique_exact


def K(n):
    return new_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


P3 = new_graph(3, [(0, 1), (1, 2)])


def test_density():
    assert density(K(4)) == 1.0
    assert density(new_graph(5, [])) == 0.0
    assert density(P3) == pytest.approx(2 / 3)
    with pytest.raises(ParameterError):
        density(K(1))


def test_gamma_hat_values():
    assert gamma_hat(5, 0.5, 20, 0.01) == pytest.approx(-1.5000000354, abs=1e-9)
    assert gamma_hat(1, 1.0, 17, 0.01) == 1.0
    assert gamma_hat(4, 0.5, 20, 0.01) == pytest.approx(-1.00000001, abs=1e-7)


def test_gamma_hat_domain():
    with pytest.raises(ParameterError):
        gamma_hat(0, 0.5, 10, 0.01)
    with pytest.raises(ParameterError):
        gamma_hat(3, 1.5, 10, 0.01)
    with pytest.raises(ParameterError):
        gamma_hat(3, 0.5, 10, 1.0)


def test_gamma_hat_strictly_decreasing():
    rng = np.random.default_rng(0)
    for _ in range(200):
        n = int(rng.integers(3, 60))
        q = float(rng.uniform(0.01, 0.99))
        delta = float(rng.uniform(0.001, 0.5))
        vals = [gamma_hat(m, q, n, delta) for m in range(1, n + 1)]
        assert all(b < a for a, b in zip(vals, vals[1:]))


def test_clique_upper_bound_safe():
    a = association_graph(K(3), K(3))
    # |E| and n1,n2 clamp
    assert clique_upper_bound(a) <= 3
    g10 = new_graph(5, [(u, v) for u in range(5) for v in range(u + 1, 5)])
    assert clique_upper_bound(g10) == 5  # |E| = 10 -> c=5
    assert clique_upper_bound(new_graph(6, [])) == 1
    assert clique_upper_bound(new_graph(4, [(0, 1)])) == 2


def test_clique_upper_bound_safe_is_valid():
    for seed in range(60):
        g = erdos_renyi(12, float((seed % 9 + 1) / 10), seed)
        assert clique_upper_bound(g) >= len(max_clique_exact(g))


def test_clique_upper_bound_paper_formula_exposed():
    g10 = K(5)
    # the alternative formula is intentionally not a valid bound
    assert clique_upper_bound(g10, mode="paper-formula") == 2
    with pytest.raises(ParameterError):
        clique_upper_bound(g10, mode="bogus")


def test_build_schedule_shape():
    sched = build_schedule(association_graph(erdos_renyi(5, 0.5, 1), erdos_renyi(5, 0.5, 2)))
    assert isinstance(sched, AnnealingSchedule)
    ms = [m for m, _ in sched.steps]
    assert ms == list(range(sched.c_sup, 1, -1))
    # negated gamma-hat midpoints: alpha strictly decreasing as m decreases
    alphas = [a for _, a in sched.steps]
    assert all(b < a for a, b in zip(alphas, alphas[1:]))


def test_build_schedule_alpha_value():
    # midpoint of gamma_hat(4) and gamma_hat(5) at q=0.5, n=20, negated
    g4 = gamma_hat(4, 0.5, 20, 0.01)
    g5 = gamma_hat(5, 0.5, 20, 0.01)
    expected = -(g4 + g5) / 2.0
    assert expected == pytest.approx(1.25, abs=1e-6)
    # a graph with exactly 95 of 190 possible edges: density 0.5 on n=20
    pairs = [(u, v) for u in range(20) for v in range(u + 1, 20)]
    g = new_graph(20, pairs[:95])
    assert g.density() == 0.5
    sched = build_schedule(g, size_cap=5)
    m5 = dict(sched.steps)[5]
    assert m5 == pytest.approx(expected, abs=1e-9)


def test_build_schedule_complete_graph():
    sched = build_schedule(K(6), size_cap=3)
    # q = 1: all gamma-hat are 1, all alphas are -1
    assert all(a == pytest.approx(-1.0) for _, a in sched.steps)


def test_schedule_csv():
    sched = build_schedule(K(4))
    text = sched.to_csv()
    lines = text.strip().splitlines()
    assert lines[0] == "m,gamma_hat_m,alpha"
    assert len(lines) == len(sched.steps) + 1


def test_shifted_payoff_entries():
    assert np.allclose(shifted_payoff(K(2), 0.0).entries, [[0, 1], [1, 0]])
    assert np.allclose(shifted_payoff(K(2), -1.0).entries, [[1, 1], [1, 1]])
    w = shifted_payoff(K(2), 0.5)
    assert np.allclose(w.entries, [[0, 1.5], [1.5, 0]])
    assert w.objective_offset == 0.5


def test_shifted_payoff_objective_scale():
    # reported objective equals x^T (A - alpha I) x despite the +alpha J repair
    from mcskit.dynamics import barycenter, objective

    g = K(3)
    x = barycenter(3)
    for alpha in (-0.5, 0.0, 0.7, 2.0):
        w = shifted_payoff(g, alpha)
        direct = float(x @ (g.adjacency_matrix() - alpha * np.eye(3)) @ x)
        assert objective(w, x) == pytest.approx(direct, abs=1e-12)


def test_shift_preserves_fixed_points():
    # characteristic vectors keep/lose fixed-point status identically
    for seed in range(10):
        g = erdos_renyi(6, 0.5, seed)
        if g.edge_count == 0:
            continue
        a = g.adjacency_matrix()
        for alpha in (0.3, 1.1):
            w = shifted_payoff(g, alpha)
            for c in ({0, 1}, {1, 2, 3}):  # singletons hit a zero denominator
                x = characteristic_vector(c, g.n)
                shifted_fixed = np.linalg.norm(rd_step(w, x) - x) < 1e-9
                pi = (a - alpha * np.eye(g.n)) @ x
                val = float(x @ pi)
                direct_fixed = all(
                    abs(pi[i] - val) < 1e-9 for i in c
                )
                assert shifted_fixed == direct_fixed


def test_compute_gamma():
    assert compute_gamma(K(4), {0, 1, 2}) == 1
    g = new_graph(4, [(0, 1), (1, 2), (0, 2)])
    assert compute_gamma(g, {0, 1, 2}) == -2
    assert compute_gamma(K(3), {0, 1, 2}) == 1 - 3
    with pytest.raises(ParameterError):
        compute_gamma(K(3), set())


def test_gamma_hat_probabilistic_guarantee():
    # gamma(C) > gamma_hat_m should hold with frequency >= 1 - delta-ish
    rng = np.random.default_rng(11)
    hits = trials = 0
    for _ in range(300):
        q = float(rng.uniform(0.2, 0.8))
        g = erdos_renyi(20, q, int(rng.integers(1 << 30)))
        m = int(rng.integers(2, 10))
        c = set(rng.choice(20, size=m, replace=False).tolist())
        trials += 1
        if compute_gamma(g, c) > gamma_hat(m, q, 20, 0.01):
            hits += 1
    assert hits / trials >= 0.95


def test_run_aih_small_exact():
    a = association_graph(K(3), K(3))
    clique = run_aih(a, seed=0)
    assert is_clique(a.graph, clique)
    assert len(clique) == 3


def test_run_aih_k1():
    a = association_graph(K(1), K(5))
    assert len(run_aih(a, seed=0)) == 1


def test_run_aih_best_so_far_contract():
    # the returned clique is always a clique and never smaller than 1
    for seed in range(5):
        g1 = erdos_renyi(8, 0.5, seed)
        g2 = erdos_renyi(8, 0.5, 50 + seed)
        a = association_graph(g1, g2)
        clique = run_aih(a, seed=seed)
        assert is_clique(a.graph, clique)
        assert len(clique) >= 1
