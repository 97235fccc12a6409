"""実験シナリオ."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from lorasim import config
from lorasim._messages import format_error
from lorasim.channel.propagation import LinkBudget, PathLossModel, SnrThresholdTable
from lorasim.exceptions import ConfigError
from lorasim.node.latency import LatencyEndpoint
from lorasim.node.tx import ProcessingDelays
from lorasim.phy.radio import MAX_PAYLOAD_BYTES, RadioConfig


class Fidelity(Enum):
    """受信シンボルの生成方法."""

    SAMPLE = "sample"
    """IQ サンプルに AWGN を加えて実際に復調する."""

    ANALYTIC = "analytic"
    """感度判定と SER 曲線からシンボル誤りを抽選する."""


@dataclass(frozen=True)
class Scenario:
    """1 地点・1 リンクの実験設定."""

    name: str
    radio: RadioConfig = field(default_factory=RadioConfig)
    path_loss: PathLossModel = field(default_factory=lambda: PathLossModel(pl0_db=40.0))
    budget: LinkBudget = field(default_factory=LinkBudget)
    thresholds: SnrThresholdTable = field(default_factory=SnrThresholdTable)
    distance_m: float = 5.0
    n_packets: int = 200
    message: str = config.REFERENCE_MESSAGE
    delays: ProcessingDelays = field(default_factory=ProcessingDelays)
    fidelity: Fidelity = Fidelity.ANALYTIC
    seed: int = 0
    inter_send_delay_s: float = 5.0
    latency_endpoint: LatencyEndpoint = LatencyEndpoint.UPLOAD
    oversample: int = config.DEFAULT_OVERSAMPLE
    snr_override_db: float | None = None
    """指定時はリンクバジェットの代わりにこの SNR を使う（``inf`` で雑音なし）."""

    description: str = ""

    def __post_init__(self) -> None:
        problems: dict[str, Any] = {}
        if self.n_packets < 1:
            problems["n_packets"] = self.n_packets
        if self.distance_m < self.path_loss.d0_m:
            problems["distance_m"] = self.distance_m
        if self.inter_send_delay_s < 0:
            problems["inter_send_delay_s"] = self.inter_send_delay_s
        if self.oversample < 1:
            problems["oversample"] = self.oversample
        if len(self.message.encode("utf-8")) > MAX_PAYLOAD_BYTES:
            problems["message_bytes"] = len(self.message.encode("utf-8"))
        if self.budget.tx_power_dbm != self.radio.tx_power_dbm:
            problems["tx_power_dbm"] = (self.budget.tx_power_dbm, self.radio.tx_power_dbm)
        if problems:
            raise ConfigError(format_error("scenario_invalid", name=self.name, **problems))

    def with_overrides(self, **changes: Any) -> Scenario:
        """一部の項目を差し替えたシナリオを返す.

        ``tx_power_dbm`` を渡すと無線設定とリンクバジェットの両方を更新する。

        Raises:
            ConfigError: 未知の項目名または不整合な値の場合

        """
        if "tx_power_dbm" in changes:
            power = changes.pop("tx_power_dbm")
            changes["radio"] = dataclasses.replace(
                changes.get("radio", self.radio), tx_power_dbm=power
            )
            changes["budget"] = dataclasses.replace(
                changes.get("budget", self.budget), tx_power_dbm=power
            )
        try:
            return dataclasses.replace(self, **changes)
        except TypeError as exc:
            raise ConfigError(format_error("scenario_invalid", name=self.name)) from exc

    def describe(self) -> dict[str, Any]:
        """再現用ヘッダに出す設定一覧を返す."""
        return {
            "scenario": self.name,
            "sf": self.radio.sf,
            "bw_hz": self.radio.bw_hz,
            "cr": self.radio.coding_rate.label,
            "tx_power_dbm": self.radio.tx_power_dbm,
            "ldro": self.radio.ldro,
            "pl0_db": self.path_loss.pl0_db,
            "d0_m": self.path_loss.d0_m,
            "exponent_n": self.path_loss.exponent_n,
            "shadowing_sigma_db": self.path_loss.shadowing_sigma_db,
            "noise_figure_db": self.budget.noise_figure_db,
            "n_packets": self.n_packets,
            "message": self.message,
            "fidelity": self.fidelity.value,
            "seed": self.seed,
            "latency_endpoint": self.latency_endpoint.value,
        }
