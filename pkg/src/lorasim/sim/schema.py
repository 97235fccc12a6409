"""シナリオファイルのスキーマ（Pydantic）."""

from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from lorasim import config
from lorasim._messages import format_error
from lorasim.channel.propagation import (
    DEFAULT_SNR_THRESHOLDS,
    LinkBudget,
    PathLossModel,
    SnrThresholdTable,
)
from lorasim.exceptions import ConfigError
from lorasim.node.latency import LatencyEndpoint
from lorasim.node.tx import ProcessingDelays
from lorasim.phy.radio import RadioConfig
from lorasim.sim.scenario import Fidelity, Scenario


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class RadioSection(_Section):
    frequency_hz: float = 433_000_000.0
    sf: int = 12
    bw_hz: int = 125_000
    cr_num: int = 1
    tx_power_dbm: float = 17.0
    preamble_symbols: int = 8
    explicit_header: bool = True
    crc_enabled: bool = True
    ldro: Literal["auto"] | bool = "auto"
    gray_mapping: bool = True

    def to_config(self) -> RadioConfig:
        values = self.model_dump()
        if values["ldro"] == "auto":
            values["ldro"] = None
        return RadioConfig(**values)


class ChannelSection(_Section):
    pl0_db: float
    d0_m: float = Field(default=1.0, gt=0)
    exponent_n: float = Field(default=2.0, gt=0)
    shadowing_sigma_db: float = Field(default=0.0, ge=0)
    noise_figure_db: float = Field(default=6.0, ge=0)
    tx_gain_dbi: float = 0.0
    rx_gain_dbi: float = 0.0
    snr_thresholds: dict[int, float] = Field(default_factory=lambda: dict(DEFAULT_SNR_THRESHOLDS))


class ExperimentSection(_Section):
    distance_m: float = Field(default=5.0, gt=0)
    n_packets: int = Field(default=200, ge=1)
    message: str = config.REFERENCE_MESSAGE
    fidelity: Fidelity = Fidelity.ANALYTIC
    seed: int = 0
    inter_send_delay_s: float = Field(default=5.0, ge=0)
    latency_endpoint: LatencyEndpoint = LatencyEndpoint.UPLOAD
    oversample: int = Field(default=1, ge=1)


class DelaysSection(_Section):
    build_s: float = Field(default=0.0, ge=0)
    decode_s: float = Field(default=0.0, ge=0)
    display_s: float = Field(default=0.0, ge=0)
    upload_s: float = Field(default=0.0, ge=0)


class ScenarioFile(_Section):
    """シナリオ YAML のトップレベル."""

    name: str
    description: str = ""
    radio: RadioSection = Field(default_factory=RadioSection)
    channel: ChannelSection
    experiment: ExperimentSection = Field(default_factory=ExperimentSection)
    delays: DelaysSection = Field(default_factory=DelaysSection)

    def to_scenario(self) -> Scenario:
        """検証済みの値からドメインオブジェクトを組み立てる."""
        radio = self.radio.to_config()
        ch = self.channel
        exp = self.experiment
        return Scenario(
            name=self.name,
            description=self.description.strip(),
            radio=radio,
            path_loss=PathLossModel(
                pl0_db=ch.pl0_db,
                d0_m=ch.d0_m,
                exponent_n=ch.exponent_n,
                shadowing_sigma_db=ch.shadowing_sigma_db,
            ),
            budget=LinkBudget(
                tx_power_dbm=radio.tx_power_dbm,
                tx_gain_dbi=ch.tx_gain_dbi,
                rx_gain_dbi=ch.rx_gain_dbi,
                noise_figure_db=ch.noise_figure_db,
            ),
            thresholds=SnrThresholdTable(ch.snr_thresholds),
            distance_m=exp.distance_m,
            n_packets=exp.n_packets,
            message=exp.message,
            delays=ProcessingDelays(**self.delays.model_dump()),
            fidelity=exp.fidelity,
            seed=exp.seed,
            inter_send_delay_s=exp.inter_send_delay_s,
            latency_endpoint=exp.latency_endpoint,
            oversample=exp.oversample,
        )


def parse_scenario(data: Any, *, source: str = "<memory>") -> Scenario:
    """YAML から読んだ辞書を検証して Scenario に変換する.

    Raises:
        ConfigError: スキーマ違反または値の不整合

    """
    try:
        model = ScenarioFile.model_validate(data)
    except ValidationError as exc:
        errors = "; ".join(
            f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in exc.errors()
        )
        raise ConfigError(format_error("scenario_invalid", source=source, errors=errors)) from exc
    return model.to_scenario()
