# Copyright 2026 The posglab Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Smoke tests for the Python bindings."""

import math

import pytest

import posglab

P1 = posglab.Side.PLAYER1
P2 = posglab.Side.PLAYER2


def test_canonical_models_validate():
    names = posglab.canonical_model_names()
    assert "CANON2" in names
    for name in names:
        report = posglab.validate(posglab.canonical_model(name))
        assert report["ok"], name


def test_model_round_trip():
    m = posglab.canonical_model("INSPECT2")
    back = posglab.parse_model(posglab.serialize_model(m))
    assert back == m
    assert back.dims.nx == 2
    assert back.has_lyapunov()


def test_parse_error_is_a_posglab_error():
    with pytest.raises(posglab.ParseError):
        posglab.parse_model("{}")
    assert issubclass(posglab.ParseError, posglab.Error)


def test_matrix_game():
    value, row, col = posglab.solve_matrix_game([[3, 1], [0, 2]])
    assert value == pytest.approx(1.5)
    assert row == pytest.approx([0.5, 0.5])
    assert col == pytest.approx([0.25, 0.75])


def test_filter_update():
    m = posglab.canonical_model("CANON2")
    post = posglab.filter_update(m, [0.5, 0.5], 0, 0, 0)
    a, b = 0.55 * 0.9, 0.45 * 0.2
    assert post == pytest.approx([a / (a + b), b / (a + b)])
    with pytest.raises(posglab.ZeroProbabilityObservation):
        posglab.filter_update(posglab.canonical_model("FULLOBS3"), [1, 0, 0], 0, 0, 2)


def test_discounted_solution_on_separable_cost():
    m = posglab.canonical_model("SEPARABLE2")
    sol = posglab.solve_discounted(m, m=8, alpha=0.5)
    assert sol.grid_size == 9
    assert all(v == pytest.approx(3.0, abs=1e-5) for v in sol.values)
    row, col = sol.strategies_at([0.3, 0.7])
    assert row == pytest.approx([0.5, 0.5], abs=1e-9)
    assert col == pytest.approx([0.25, 0.75], abs=1e-9)


def test_vanishing_discount():
    run = posglab.run_vanishing_discount(posglab.canonical_model("SEPARABLE2"), m=16)
    assert len(run["gammas"]) == 7
    assert run["gamma_estimate"] == pytest.approx(1.5, abs=1e-4)


def test_simulation_and_saddle():
    m = posglab.canonical_model("UNCTRL2")
    r = posglab.simulate(m, posglab.Strategy.uniform_random(P1, 1),
                         posglab.Strategy.uniform_random(P2, 1), episodes=20, horizon=5000)
    assert abs(r.mean_avg_payoff - 1.0) <= 3 * r.std_error + 0.01
    sep = posglab.canonical_model("SEPARABLE2")
    sol = posglab.solve_discounted(sep, m=8, alpha=0.9)
    ok, rows = posglab.saddle_test(sep, sol, 1.5, episodes=10, horizon=1000)
    assert ok
    assert len(rows) == 9


def test_payoff_equivalence():
    m = posglab.canonical_model("CANON2")
    report = posglab.payoff_equivalence_test(m, posglab.Strategy.uniform_random(P1, 2),
                                             posglab.Strategy.uniform_random(P2, 2),
                                             episodes=20, horizon=1000)
    assert report["pass"]


def test_coupling():
    m = posglab.canonical_model("CANON2")
    assert posglab.compute_delta(m, [0, 1]) == pytest.approx(0.08, abs=1e-15)
    est = posglab.estimate_coupling_time(m, [0, 1], [1, 0], [0, 1],
                                         posglab.Strategy.uniform_random(P1, 2),
                                         posglab.Strategy.uniform_random(P2, 2),
                                         n_samples=2000, seed=3)
    assert est["censored"] == 0
    assert math.isclose(est["mean"], 11.5, abs_tol=1.5)
    with pytest.raises(posglab.NoMinorization):
        posglab.compute_delta(posglab.canonical_model("FULLOBS3"), [0, 1, 2])


def test_lyapunov():
    m = posglab.canonical_model("INSPECT2")
    assert posglab.validate_lyapunov(m, [0, 0], [1, 1], [0, 1], 1.0) == (True, 0.0)
    assert posglab.validate_lyapunov(m, [0, 0], [2, 2], [0, 1], 1.0) == (False, 1.0)
