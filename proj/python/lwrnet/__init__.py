"""Exact wave-front tracking for the LWR traffic model on road networks."""

from ._lwr import (
    Branch,
    ConfigError,
    DistributionMatrix,
    DomainError,
    EngineError,
    Event,
    EventKind,
    EventRecord,
    FanFront,
    FeasibleRegion,
    FluxModel,
    FluxParams,
    JunctionSolution,
    JunctionSpec,
    NetworkSpec,
    RoadProfile,
    RoadSpec,
    RunawayError,
    ScenarioParams,
    ScheduleEntry,
    Simulation,
    Snapshot,
    TrackingParams,
    big_wave_count,
    build_feasible_region,
    build_scenario,
    effective_matrix,
    flux_total_variation,
    l1_distance,
    maximize_through_flux,
    parse_network,
    rankine_hugoniot_speed,
    run_with_outputs,
    serialize_network,
    solve_junction_riemann,
    solve_road_riemann,
    total_mass,
    total_variation,
)

__all__ = [name for name in dir() if not name.startswith("_")]
