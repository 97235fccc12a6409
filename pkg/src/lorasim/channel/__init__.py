"""統計的無線チャネル: パスロス・雑音・SNR・感度."""

from lorasim.channel.awgn import add_noise, apply_awgn, symbol_error_rate
from lorasim.channel.propagation import (
    DEFAULT_SNR_THRESHOLDS,
    LinkBudget,
    PathLossModel,
    SnrThresholdTable,
    free_space_path_loss_db,
    noise_floor_dbm,
    path_loss_db,
    received_power_dbm,
    sensitivity_dbm,
    snr_db,
)

__all__ = [
    "DEFAULT_SNR_THRESHOLDS",
    "LinkBudget",
    "PathLossModel",
    "SnrThresholdTable",
    "add_noise",
    "apply_awgn",
    "free_space_path_loss_db",
    "noise_floor_dbm",
    "path_loss_db",
    "received_power_dbm",
    "sensitivity_dbm",
    "snr_db",
    "symbol_error_rate",
]
