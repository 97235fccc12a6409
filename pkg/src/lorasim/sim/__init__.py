"""実験ハーネス: シナリオ・試行・スイープ・Monte Carlo."""

from lorasim.sim.loader import ScenarioLoader, load_scenario
from lorasim.sim.montecarlo import (
    SerEstimate,
    calibrate_thresholds,
    monte_carlo_ser,
    ser_curve,
    wilson_interval,
)
from lorasim.sim.runner import (
    LinkSample,
    Outcome,
    PacketRecord,
    SweepRow,
    TrialStats,
    run_point_to_point,
    sweep_distance,
    transmit_over_channel,
)
from lorasim.sim.scenario import Fidelity, Scenario

__all__ = [
    "Fidelity",
    "LinkSample",
    "Outcome",
    "PacketRecord",
    "Scenario",
    "ScenarioLoader",
    "SerEstimate",
    "SweepRow",
    "TrialStats",
    "calibrate_thresholds",
    "load_scenario",
    "monte_carlo_ser",
    "run_point_to_point",
    "ser_curve",
    "sweep_distance",
    "transmit_over_channel",
    "wilson_interval",
]
