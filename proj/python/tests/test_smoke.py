import math

import pytest

import ordkm


def make_instance(n=8, k=3, seed=7):
    return ordkm.gen_random_metric(n, k, seed, 100.0)


def test_metric_and_costs():
    inst = make_instance()
    ok, msg = ordkm.validate_metric(inst)
    assert ok, msg
    assert inst.n == 8 and inst.k == 3
    assert inst(0, 0) == 0.0
    assert inst(0, 1) == inst(1, 0) > 0.0
    assert ordkm.ordered_cost([1.0, 1.0, 0.0], [5.0, 2.0, 7.0]) == 12.0
    assert ordkm.truncate_weights([8.0, 4.0, 0.01], 0.3) == [8.0, 4.0, 0.0]


def test_centrum_routes():
    inst = make_instance()
    ell = 3
    w = ordkm.centrum_weights(inst.n, ell)
    _, opt = ordkm.brute_force_ordered(inst, w)

    sol, diag = ordkm.solve_centrum_pd(inst, ell, 0.1)
    assert len(sol.centers) <= inst.k
    assert sol.cost >= opt - 1e-9 * (1.0 + opt)
    assert sol.cost <= (12.0 + 6.0 * 0.1) * diag.Bbar * (1.0 + 1e-9)

    red, rdiag = ordkm.solve_centrum_lp_reduce(inst, ell, 0.1, brute_kmedian=True)
    assert len(red.centers) <= inst.k
    assert red.cost >= opt - 1e-9 * (1.0 + opt)
    assert red.cost <= rdiag.kmed_cost + 2.0 * rdiag.Bbar + 1e-9 * (1.0 + opt)

    Bbar, lp_val, solves = ordkm.find_Bbar(inst, ell, 0.1)
    assert Bbar <= (1.0 + 0.1) * opt * (1.0 + 1e-9)
    assert lp_val <= Bbar + 1e-9 * (1.0 + Bbar)
    assert solves >= 1


def test_ordered_solver():
    inst = ordkm.gen_random_metric(6, 2, 3, 10.0)
    w = [1.0, 0.7, 0.5, 0.2, 0.1, 0.0]
    sol, diag = ordkm.solve_ordered(inst, w, 1.0)
    _, opt = ordkm.brute_force_ordered(inst, w)
    assert sol.cost >= opt - 1e-9 * (1.0 + opt)
    assert len(sol.centers) <= 2
    assert diag.guess_count > 0
    assert math.isfinite(diag.cost) and diag.cost == sol.cost

    with pytest.raises(ordkm.ResourceCapError):
        ordkm.solve_ordered(inst, w, 1.0, guess_cap=1)


def test_kmedian_lp_value():
    pts = [[0.0], [1.0], [10.0]]
    inst = ordkm.metric_from_points(pts, 2)
    assert ordkm.lp_value(inst) == pytest.approx(1.0, abs=1e-7)


def test_bench_report():
    text, violations = ordkm.run_bench("claims", 200, seed=5)
    assert violations == 0
    assert "suite=claims" in text
