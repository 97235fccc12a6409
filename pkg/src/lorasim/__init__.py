"""lorasim: desk-scale LoRa point-to-point messaging simulator."""

from lorasim.channel import (
    LinkBudget,
    PathLossModel,
    SnrThresholdTable,
    apply_awgn,
    path_loss_db,
    received_power_dbm,
    sensitivity_dbm,
    snr_db,
    symbol_error_rate,
)
from lorasim.exceptions import (
    CalibrationError,
    ConfigError,
    CrcMismatch,
    DomainError,
    FecFailure,
    FrameDecodeError,
    FramingError,
    HeaderCorrupt,
    LoraSimError,
    MissingEvent,
    OversizePayload,
    ScenarioNotFoundError,
    TransportError,
)
from lorasim.link import decode_frame, encode_frame, parse_frame
from lorasim.node import (
    EventKind,
    NodeEvent,
    RxNodeState,
    TxNodeState,
    end_to_end_latency,
    render_lcd,
    rx_step,
    tx_step,
)
from lorasim.phy import (
    IqBuffer,
    RadioConfig,
    SymbolBlock,
    demodulate,
    modulate,
    payload_symbol_count,
    time_on_air,
)
from lorasim.sim import (
    Fidelity,
    Scenario,
    ScenarioLoader,
    TrialStats,
    calibrate_thresholds,
    monte_carlo_ser,
    run_point_to_point,
    sweep_distance,
)
from lorasim.telemetry import MockServer, TelemetryChannel, upload

__all__ = [
    "CalibrationError",
    "ConfigError",
    "CrcMismatch",
    "DomainError",
    "EventKind",
    "FecFailure",
    "Fidelity",
    "FrameDecodeError",
    "FramingError",
    "HeaderCorrupt",
    "IqBuffer",
    "LinkBudget",
    "LoraSimError",
    "MissingEvent",
    "MockServer",
    "NodeEvent",
    "OversizePayload",
    "PathLossModel",
    "RadioConfig",
    "RxNodeState",
    "Scenario",
    "ScenarioLoader",
    "ScenarioNotFoundError",
    "SnrThresholdTable",
    "SymbolBlock",
    "TelemetryChannel",
    "TransportError",
    "TrialStats",
    "TxNodeState",
    "apply_awgn",
    "calibrate_thresholds",
    "decode_frame",
    "demodulate",
    "encode_frame",
    "end_to_end_latency",
    "modulate",
    "monte_carlo_ser",
    "path_loss_db",
    "payload_symbol_count",
    "received_power_dbm",
    "render_lcd",
    "run_point_to_point",
    "rx_step",
    "sensitivity_dbm",
    "snr_db",
    "sweep_distance",
    "symbol_error_rate",
    "time_on_air",
    "tx_step",
    "upload",
]
