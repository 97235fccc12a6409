"""対数距離パスロスとリンクバジェット."""

from __future__ import annotations

import math
from collections.abc import Mapping
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any

import numpy as np

from lorasim._messages import format_error
from lorasim.exceptions import ConfigError, DomainError
from lorasim.phy.radio import RadioConfig

# 熱雑音電力密度 kT（290 K）
THERMAL_NOISE_DBM_PER_HZ = -174.0

SPEED_OF_LIGHT_M_S = 299_792_458.0

# SER 10% となる SNR (dB) の見積もり。`lorasim calibrate` で再計算できる
DEFAULT_SNR_THRESHOLDS: Mapping[int, float] = MappingProxyType(
    {7: -10.3, 8: -13.0, 9: -15.7, 10: -18.4, 11: -21.2, 12: -24.0}
)


@dataclass(frozen=True)
class PathLossModel:
    """対数距離パスロスモデル."""

    pl0_db: float
    """基準距離 d0 での損失 (dB)."""

    d0_m: float = 1.0
    """基準距離 (m)."""

    exponent_n: float = 2.0
    """パスロス指数（自由空間は 2）."""

    shadowing_sigma_db: float = 0.0
    """対数正規シャドウイングの標準偏差 (dB)."""

    def __post_init__(self) -> None:
        if self.d0_m <= 0:
            raise ConfigError(format_error("value_out_of_range", d0_m=self.d0_m))
        if self.exponent_n <= 0:
            raise ConfigError(format_error("value_out_of_range", exponent_n=self.exponent_n))
        if self.shadowing_sigma_db < 0:
            raise ConfigError(
                format_error("value_out_of_range", shadowing_sigma_db=self.shadowing_sigma_db)
            )


@dataclass(frozen=True)
class LinkBudget:
    """送受信のリンクバジェット."""

    tx_power_dbm: float = 17.0
    tx_gain_dbi: float = 0.0
    rx_gain_dbi: float = 0.0
    noise_figure_db: float = 6.0

    def __post_init__(self) -> None:
        if self.noise_figure_db < 0:
            raise ConfigError(
                format_error("value_out_of_range", noise_figure_db=self.noise_figure_db)
            )

    def thermal_noise_floor_dbm(self, bw_hz: float) -> float:
        """受信帯域の雑音電力 -174 + 10log10(BW) + NF を返す."""
        return THERMAL_NOISE_DBM_PER_HZ + 10.0 * math.log10(bw_hz) + self.noise_figure_db

    def link_margin_db(
        self,
        loss_db: float,
        cfg: RadioConfig,
        table: SnrThresholdTable,
    ) -> float:
        """受信電力と感度の差（正なら復調可能域）を返す."""
        return received_power_dbm(self, loss_db) - sensitivity_dbm(cfg, self, table)


@dataclass(frozen=True)
class SnrThresholdTable:
    """SF ごとの最小復調 SNR (dB)."""

    thresholds: Mapping[int, float] = field(default_factory=lambda: DEFAULT_SNR_THRESHOLDS)

    def __post_init__(self) -> None:
        items = sorted(self.thresholds.items())
        for (sf_a, snr_a), (sf_b, snr_b) in zip(items, items[1:]):
            if snr_b >= snr_a:
                raise ConfigError(
                    format_error("not_monotone", sf=(sf_a, sf_b), snr_db=(snr_a, snr_b))
                )
        object.__setattr__(self, "thresholds", MappingProxyType(dict(items)))

    def __reduce__(self) -> tuple[Any, ...]:
        # mappingproxy は pickle できないので dict で渡し直す
        return (type(self), (dict(self.thresholds),))

    def threshold(self, sf: int) -> float:
        """SF のしきい値を返す.

        Raises:
            ConfigError: 表に SF がない場合

        """
        try:
            return self.thresholds[sf]
        except KeyError:
            raise ConfigError(
                format_error("sf_not_in_table", sf=sf, available=sorted(self.thresholds))
            ) from None


def path_loss_db(
    model: PathLossModel,
    distance_m: float,
    rng: np.random.Generator | None = None,
) -> float:
    """距離 distance_m でのパスロス (dB) を返す.

    ``pl0 + 10 n log10(d / d0)`` に、rng があれば N(0, σ²) のシャドウイングを加える。

    Raises:
        DomainError: distance_m が d0 未満の場合

    Examples:
        >>> round(path_loss_db(PathLossModel(pl0_db=40.0, exponent_n=1.97), 100.0), 6)
        79.4

    """
    if distance_m < model.d0_m:
        raise DomainError(
            format_error("distance_below_d0", distance_m=distance_m, d0_m=model.d0_m)
        )
    loss = model.pl0_db + 10.0 * model.exponent_n * math.log10(distance_m / model.d0_m)
    if rng is not None and model.shadowing_sigma_db > 0:
        loss += float(rng.normal(0.0, model.shadowing_sigma_db))
    return loss


def free_space_path_loss_db(distance_m: float, frequency_hz: float) -> float:
    """Friis の自由空間損失 20log10(4πdf/c) を返す."""
    if distance_m <= 0:
        raise DomainError(format_error("value_out_of_range", distance_m=distance_m))
    return 20.0 * math.log10(4.0 * math.pi * distance_m * frequency_hz / SPEED_OF_LIGHT_M_S)


def received_power_dbm(budget: LinkBudget, loss_db: float) -> float:
    """受信電力 = 送信電力 + 送受信アンテナ利得 - 損失."""
    return budget.tx_power_dbm + budget.tx_gain_dbi + budget.rx_gain_dbi - loss_db


def noise_floor_dbm(budget: LinkBudget, bw_hz: float) -> float:
    return budget.thermal_noise_floor_dbm(bw_hz)


def snr_db(prx_dbm: float, budget: LinkBudget, bw_hz: float) -> float:
    """受信電力から帯域内 SNR (dB) を返す."""
    return prx_dbm - budget.thermal_noise_floor_dbm(bw_hz)


def sensitivity_dbm(cfg: RadioConfig, budget: LinkBudget, table: SnrThresholdTable) -> float:
    """受信感度 = 雑音電力 + SF のしきい値 SNR.

    Raises:
        ConfigError: 表に cfg.sf がない場合

    """
    return budget.thermal_noise_floor_dbm(cfg.bw_hz) + table.threshold(cfg.sf)
