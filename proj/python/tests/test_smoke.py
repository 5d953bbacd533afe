"""Smoke tests for the owgame python module (built via CMake/pybind11)."""

import math
import sys

import owgame


def approx(a, b, tol=1e-12):
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def test_solve_basics():
    res = owgame.solve(n=2, rho=1.0, T=1.0, theta=0.1, x=[1.0, 1.0], N=16)
    assert len(res["v"]) == 17
    assert approx(sum(res["v"]), 1.0)
    assert approx(sum(res["w"]), 1.0)
    assert res["residual_nu"] <= 1e-10
    # liquidation per agent
    for row, x in zip(res["xi"], [1.0, 1.0]):
        assert approx(sum(row), x)


def test_methods_agree():
    a = owgame.solve(n=3, rho=1.0, T=1.0, theta=0.2, x=[1.0, 0.0, 2.0], N=40, method="closed")
    b = owgame.solve(n=3, rho=1.0, T=1.0, theta=0.2, x=[1.0, 0.0, 2.0], N=40, method="dense")
    gap = max(abs(u - v) for u, v in zip(a["nu"], b["nu"]))
    assert gap <= 1e-9


def test_continuous_reference():
    assert owgame.f(0.0, n=2, rho=1.0, T=1.0) == 1.0
    assert owgame.f(1.0, n=2, rho=1.0, T=1.0) == 0.0
    assert approx(owgame.f(0.5, n=2, rho=1.0, T=1.0), 0.75)
    assert owgame.g(1.0, n=10, rho=1.0, T=1.0) == 0.0
    assert owgame.g(0.0, n=10, rho=1.0, T=1.0, left_limit=True) == 1.0

    cost = owgame.continuous_cost(0, n=2, rho=1.0, T=1.0, x=[2.0, -2.0])
    assert cost["impact"] == 0.0
    assert cost["block0"] == 0.0
    assert approx(cost["total"], 4.0 / 16.0)


def test_terminal_w_limit():
    assert approx(owgame.terminal_w_limit(0.25, rho=1.0, T=1.0), 0.5)


def test_cluster_points():
    cp = owgame.cluster_points(1.0, n=10, rho=1.0, T=1.0)
    assert abs(cp["beta_minus"]) <= 1e-12
    assert cp["d1"] > 0 and cp["d2"] > 0


def test_theta_zero_cost_limits():
    lim = owgame.theta_zero_cost_limits(0, n=2, rho=1.0, T=1.0, x=[1.0, -1.0])
    assert lim["even_limit"] == 0.0 and lim["odd_limit"] == 0.0


def test_audit_passes():
    rep = owgame.audit(n=3, rho=1.0, T=1.0, theta=0.1, x=[2.0, 0.0, 1.0], N=30)
    assert rep["pass"]
    assert rep["kkt_spread"] <= 1e-9
    assert rep["margin"] >= -1e-10


def test_validation_errors():
    try:
        owgame.solve(n=1, rho=1.0, T=1.0, theta=0.0, x=[1.0], N=4)
    except ValueError as e:
        assert "n >= 2" in str(e)
    else:
        raise AssertionError("expected ValueError for n=1")


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    failed = 0
    for test in tests:
        try:
            test()
            print(f"ok    {test.__name__}")
        except Exception as exc:  # noqa: BLE001
            failed += 1
            print(f"FAIL  {test.__name__}: {exc}")
    if failed:
        sys.exit(1)
    print(f"{len(tests)} python smoke tests passed")


if __name__ == "__main__":
    main()
