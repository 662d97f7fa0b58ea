import math

import pytest

import lwrnet as lwr


def test_flux_model_basics():
    f = lwr.FluxModel.smooth(1.0)
    assert f.sigma == 0.5
    assert f(0.0) == 0.0
    assert f(1.0) == 0.0
    assert f(0.5) == pytest.approx(1.0)
    assert f.tau(0.2) == pytest.approx(0.8)
    assert f.demand(0.7) == pytest.approx(1.0)
    assert f.supply(0.7) == pytest.approx(f(0.7))
    rho = f.invert(0.5, lwr.Branch.ascending)
    assert f(rho) == pytest.approx(0.5)
    assert rho < 0.5
    with pytest.raises(lwr.DomainError):
        f(1.5)


def test_kinked_flux_has_speed_floor():
    base = lwr.FluxModel.smooth(1.0)
    f = lwr.FluxModel.kinked(base, 0.1)
    assert f.c_lo == pytest.approx(0.2)
    assert abs(f.char_speed(0.5 - 1e-9)) >= f.c_lo - 1e-6


def test_network_round_trip():
    spec = lwr.build_scenario("appendix_b")
    text = lwr.serialize_network(spec)
    again = lwr.parse_network(text)
    assert [r.id for r in again.roads] == [r.id for r in spec.roads]
    assert lwr.serialize_network(again) == text


def test_invalid_network_rejected():
    road = lwr.RoadSpec()
    road.id = "r"
    road.a = 1.0
    road.b = 0.0
    road.values = [0.5]
    spec = lwr.NetworkSpec()
    spec.roads = [road]
    with pytest.raises(lwr.ConfigError):
        spec.validate()


def test_junction_riemann_conserves_flux():
    f = lwr.FluxModel.smooth(1.0)
    A = lwr.DistributionMatrix()
    A.m, A.n = 2, 2
    A.entries = [0.3, 0.6, 0.7, 0.4]
    sol = lwr.solve_junction_riemann([0.4, 0.7], [0.2, 0.6], A, f, 0.05)
    assert sum(sol.gamma_in) == pytest.approx(sum(sol.gamma_out))
    for j in range(2):
        want = sum(A.at(j, i) * sol.gamma_in[i] for i in range(2))
        assert sol.gamma_out[j] == pytest.approx(want)


def test_simulation_run_and_functionals():
    spec = lwr.build_scenario("appendix_a")
    sim = lwr.Simulation(spec)
    sim.initialize()
    times = []
    sim.run_until(1.0, lambda s, ev: times.append(ev.time) if ev else None)
    assert times and times[0] == pytest.approx(0.5 / math.sqrt(2.0))
    log = sim.event_log()
    assert log[0].kind == lwr.EventKind.junction_arrival
    snap = sim.snapshot()
    assert snap.time == pytest.approx(1.0)
    assert lwr.total_mass(snap) > 0.0
    assert lwr.total_variation(snap) >= 0.0
    assert lwr.big_wave_count(snap, sim.spec, sim.flux) >= 0


def test_outputs_written(tmp_path):
    spec = lwr.build_scenario("appendix_b")
    sim = lwr.Simulation(spec)
    sim.initialize()
    events = lwr.run_with_outputs(sim, 1.0, str(tmp_path), [0.3])
    assert events > 0
    for name in ["telemetry.csv", "events.csv", "spec_normalized.json",
                 "snapshot_0p3.csv", "snapshot_1.csv"]:
        assert (tmp_path / name).exists()
