"""Smoke tests for the python module built from the C++ core."""

import math

import onthefly as otf


def test_objective_values():
    assert otf.evaluate("bohachevsky", [0.0, 0.0]) == 0.0
    assert otf.evaluate("booth", [1.0, 3.0]) == 0.0
    assert otf.evaluate("booth", [0.0, 0.0]) == 74.0
    g = otf.gradient("bohachevsky", [0.0, 0.0])
    assert g == [0.0, 0.0]


def test_log_density_anchor():
    v = otf.log_density("mh_density", [0.0, math.pi])
    assert abs(v - (-0.01 * (math.pi**2 - math.e))) < 1e-12


def test_domains_and_grid():
    lower, upper = otf.domain("mh_density")
    assert lower == [-3.0, 2.0]
    assert upper == [3.0, 4.0]
    resolution, values = otf.grid_eval("booth", 5)
    assert resolution == 5
    assert len(values) == 25
    assert all(v >= 0.0 for v in values)


def test_sa_schedule_and_acceptance():
    assert abs(otf.sa_temperature(15, 1.0, 0.95) - 0.46329) < 1e-4
    assert otf.acceptance_probability(0.0, -math.log(2.0), 1.0) == 0.5
    assert otf.acceptance_probability(0.0, 1.0) == 1.0


def test_run_experiment_gd():
    record = otf.run_experiment(
        "gd", "bohachevsky", {"alpha": 0.001, "iterations": 100}, seed=42
    )
    assert record["run_id"] == "gd-bohachevsky-s42"
    traces = [e for e in record["events"] if e["kind"] == "trace"]
    assert len(traces) == 101
    losses = [e["payload"]["loss"] for e in traces]
    assert record["summary"]["best_loss"] == min(losses)

    again = otf.run_experiment(
        "gd", "bohachevsky", {"alpha": 0.001, "iterations": 100}, seed=42
    )
    again["summary"].pop("wall_time_ms")
    record["summary"].pop("wall_time_ms")
    assert again == record


def test_run_experiment_chain_bookkeeping():
    record = otf.run_experiment("mh", "mh_density", {"n_iterations": 500}, seed=7)
    traces = [e for e in record["events"] if e["kind"] == "trace"]
    accepted = sum(1 for e in traces if e["payload"]["accepted"])
    assert accepted == record["summary"]["accepted"]
    assert accepted + record["summary"]["rejected"] == 500
    for e in traces:
        assert e["payload"]["accepted"] == (e["payload"]["u"] < e["payload"]["alpha"])


def test_repressilator():
    ref = [1.0, 2.0, 5.0, 1000.0]
    assert otf.repressilator_fitness(ref) == 0.0
    assert otf.repressilator_fitness([1.0, 2.0, 5.0, 1500.0]) > 0.0
    times, states = otf.repressilator_trajectory(ref, [0, 0, 0, 1, 2, 3], 0.05, 1.0)
    assert len(times) == 21
    assert len(states) == 21
    assert all(math.isfinite(v) for row in states for v in row)


def test_ea_step_interface():
    ea = otf.EA(seed=5, mutation_std=1.0)
    x, f = ea.init(pop_size=30)
    assert len(x) == 30 and len(f) == 30
    best0 = min(f)
    for _ in range(5):
        x, f = ea.step(x, f, 1, 1)
    assert len(x) == 30
    assert min(f) <= best0  # worst-only replacement keeps the best

    x2, f2 = ea.step(x, f, 0, 0)
    assert x2 == x and f2 == f  # both flags off is an identity


def test_tune_rows():
    table = otf.tune("gd", "bohachevsky", reps=5, seed=11)
    assert len(table["rows"]) == 5
    assert table["rows"][0]["alpha"] == 0.001
    assert table["rows"][0]["iterations"] == 10
    verdicts = {row["verdict"] for row in table["rows"]}
    assert verdicts <= {"diverged", "plateau", "improving", "converged"}


def test_summarize():
    s = otf.summarize([1.0, 3.0])
    assert s["mean"] == 2.0
    assert s["std"] == 1.0  # population convention
