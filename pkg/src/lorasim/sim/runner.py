"""送信ノード → チャネル → 受信ノードを結ぶ実験ハーネス."""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np

from lorasim import config
from lorasim._messages import format_error
from lorasim._random import derive_rng
from lorasim.channel.awgn import apply_awgn, symbol_error_rate
from lorasim.channel.propagation import path_loss_db, received_power_dbm, snr_db
from lorasim.exceptions import ConfigError
from lorasim.node.events import EventKind, NodeEvent
from lorasim.node.latency import end_to_end_latency
from lorasim.node.rx import Arrival, RxNodeState, Uploader, rx_step
from lorasim.node.tx import TxNodeState, transmit_next
from lorasim.phy.css import SymbolBlock, demodulate, modulate
from lorasim.sim.scenario import Fidelity, Scenario

logger = logging.getLogger(__name__)

EventSink = Callable[[NodeEvent], None]


class Outcome(Enum):
    """1 パケットの結末."""

    DELIVERED = "delivered"
    HEADER = "header"
    FEC = "fec"
    CRC = "crc"
    CHANNEL_LOST = "channel_lost"
    """受信機が前のパケットを処理中で取りこぼした."""

    MISDELIVERED = "misdelivered"
    """CRC をすり抜けた誤配送."""


@dataclass(frozen=True)
class LinkSample:
    """1 パケットが経験したリンク状態."""

    path_loss_db: float
    prx_dbm: float
    snr_db: float


@dataclass(frozen=True)
class PacketRecord:
    """パケット単位の記録."""

    seq: int
    distance_m: float
    path_loss_db: float
    prx_dbm: float
    snr_db: float
    outcome: Outcome
    latency_s: float | None
    tx_start_s: float


@dataclass(frozen=True)
class TrialStats:
    """1 地点の試行結果.

    ``sent = delivered + header + fec + crc + channel_lost + misdelivered`` が常に成り立つ。
    """

    sent: int
    delivered: int
    header_failures: int
    fec_failures: int
    crc_failures: int
    channel_lost: int
    misdelivered: int
    latency_mean_s: float | None
    latency_p95_s: float | None
    records: tuple[PacketRecord, ...] = ()

    @property
    def pdr(self) -> float:
        """パケット到達率 delivered / sent."""
        return self.delivered / self.sent if self.sent else 0.0

    @classmethod
    def from_records(cls, records: Sequence[PacketRecord]) -> TrialStats:
        counts = dict.fromkeys(Outcome, 0)
        for record in records:
            counts[record.outcome] += 1
        latencies = [r.latency_s for r in records if r.latency_s is not None]
        return cls(
            sent=len(records),
            delivered=counts[Outcome.DELIVERED],
            header_failures=counts[Outcome.HEADER],
            fec_failures=counts[Outcome.FEC],
            crc_failures=counts[Outcome.CRC],
            channel_lost=counts[Outcome.CHANNEL_LOST],
            misdelivered=counts[Outcome.MISDELIVERED],
            latency_mean_s=float(np.mean(latencies)) if latencies else None,
            latency_p95_s=float(np.percentile(latencies, 95)) if latencies else None,
            records=tuple(records),
        )


@dataclass(frozen=True)
class SweepRow:
    """距離スイープの 1 行."""

    distance_m: float
    pdr: float
    delivered: bool
    """PDR がしきい値以上なら True（YES）."""

    latency_mean_s: float | None
    latency_p95_s: float | None
    sent: int
    delivered_packets: int
    header_failures: int
    fec_failures: int
    crc_failures: int
    channel_lost: int
    misdelivered: int

    @classmethod
    def from_stats(cls, distance_m: float, stats: TrialStats) -> SweepRow:
        return cls(
            distance_m=distance_m,
            pdr=stats.pdr,
            delivered=stats.pdr >= config.DELIVERED_PDR_THRESHOLD,
            latency_mean_s=stats.latency_mean_s,
            latency_p95_s=stats.latency_p95_s,
            sent=stats.sent,
            delivered_packets=stats.delivered,
            header_failures=stats.header_failures,
            fec_failures=stats.fec_failures,
            crc_failures=stats.crc_failures,
            channel_lost=stats.channel_lost,
            misdelivered=stats.misdelivered,
        )


def _analytic_symbols(block: SymbolBlock, snr: float, rng: np.random.Generator) -> SymbolBlock:
    # 誤ったシンボルは正解以外のビンに一様に散る。感度より十分低い SNR では
    # SER が 1 - 1/M に近づき、全シンボルが一様乱数になるのと同じになる
    sf = block.sf
    m = 1 << sf
    symbols = np.asarray(block.symbols, dtype=np.int64)
    hit = rng.random(symbols.size) < symbol_error_rate(sf, snr)
    offsets = rng.integers(1, m, symbols.size)
    received = np.where(hit, (symbols + offsets) % m, symbols)
    return SymbolBlock(symbols=tuple(int(s) for s in received), sf=sf)


def transmit_over_channel(
    block: SymbolBlock,
    scenario: Scenario,
    rng: np.random.Generator,
) -> tuple[SymbolBlock, LinkSample]:
    """送信シンボル列をチャネルに通し、受信シンボル列とリンク状態を返す.

    乱数はシャドウイング、シンボル誤り（または AWGN）の順に消費する。
    """
    loss = path_loss_db(scenario.path_loss, scenario.distance_m, rng)
    prx = received_power_dbm(scenario.budget, loss)
    snr = snr_db(prx, scenario.budget, scenario.radio.bw_hz)
    if scenario.snr_override_db is not None:
        snr = scenario.snr_override_db
    link = LinkSample(path_loss_db=loss, prx_dbm=prx, snr_db=snr)
    if math.isinf(snr) and snr > 0:
        return block, link
    if scenario.fidelity is Fidelity.ANALYTIC:
        return _analytic_symbols(block, snr, rng), link
    iq = modulate(block, scenario.radio, scenario.oversample)
    return demodulate(apply_awgn(iq, snr, rng), scenario.radio), link


def _classify(rx_events: Sequence[NodeEvent], message: str) -> Outcome:
    for event in rx_events:
        if event.kind is EventKind.RX_DECODE_FAIL:
            return Outcome(event.detail)
        if event.kind is EventKind.RX_DECODE_OK:
            return Outcome.DELIVERED if event.detail == message else Outcome.MISDELIVERED
    return Outcome.CHANNEL_LOST


def run_point_to_point(
    scenario: Scenario,
    *,
    uploader: Uploader | None = None,
    on_event: EventSink | None = None,
) -> TrialStats:
    """シナリオの 1 地点について n_packets 個のパケットを送受信する.

    パケット k の乱数は ``(seed, distance_m, k)`` から導出するため、結果は
    シードだけで決まり、他の地点や並列実行の有無に影響されない。

    Args:
        scenario: 実験シナリオ
        uploader: 受信ノードのアップロード関数（None なら模擬）
        on_event: 発行されたイベントを順に受け取るコールバック

    Returns:
        集計結果とパケット単位の記録

    Raises:
        ConfigError: シナリオが不整合な場合

    """
    radio = scenario.radio
    tx = TxNodeState(
        config=radio,
        message=scenario.message,
        inter_send_delay=scenario.inter_send_delay_s,
        build_delay=scenario.delays.build_s,
    )
    rx = RxNodeState(config=radio, delays=scenario.delays)
    payload_len = None if radio.explicit_header else len(scenario.message.encode("utf-8"))
    records: list[PacketRecord] = []

    for seq in range(scenario.n_packets):
        tx, block, tx_events = transmit_next(tx, tx.next_wake)
        if block is None:
            raise ConfigError(format_error("scenario_invalid", name=scenario.name, seq=seq))
        tx_start = next(e.timestamp for e in tx_events if e.kind is EventKind.TX_START)
        tx_end = next(e.timestamp for e in tx_events if e.kind is EventKind.TX_END)

        rng = derive_rng(scenario.seed, "packet", scenario.distance_m, seq)
        received, link = transmit_over_channel(block, scenario, rng)
        rx, rx_events = rx_step(
            rx, Arrival(received, link.snr_db, payload_len), tx_end, uploader=uploader
        )
        if on_event is not None:
            for event in sorted([*tx_events, *rx_events], key=lambda e: e.timestamp):
                on_event(event)

        outcome = _classify(rx_events, scenario.message)
        latency = (
            end_to_end_latency([*tx_events, *rx_events], scenario.latency_endpoint)
            if outcome is Outcome.DELIVERED
            else None
        )
        logger.debug(
            "packet %d at %.1f m: snr=%.2f dB outcome=%s",
            seq,
            scenario.distance_m,
            link.snr_db,
            outcome.value,
        )
        records.append(
            PacketRecord(
                seq=seq,
                distance_m=scenario.distance_m,
                path_loss_db=link.path_loss_db,
                prx_dbm=link.prx_dbm,
                snr_db=link.snr_db,
                outcome=outcome,
                latency_s=latency,
                tx_start_s=tx_start,
            )
        )

    stats = TrialStats.from_records(records)
    logger.info(
        "%s at %.1f m: pdr=%.3f (%d/%d)",
        scenario.name,
        scenario.distance_m,
        stats.pdr,
        stats.delivered,
        stats.sent,
    )
    return stats


def sweep_distance(
    scenario: Scenario,
    distances: Sequence[float],
    *,
    workers: int = 1,
) -> list[SweepRow]:
    """距離ごとに run_point_to_point を実行する.

    ``workers > 1`` ではプロセスプールに分散するが、結果は直列実行と一致する。

    Raises:
        ConfigError: distances が空、または距離が不正な場合

    """
    if not distances:
        raise ConfigError(format_error("scenario_invalid", name=scenario.name, distances=[]))
    points = [scenario.with_overrides(distance_m=float(d)) for d in distances]
    if workers > 1 and len(points) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_point_to_point, points))
    else:
        results = [run_point_to_point(point) for point in points]
    return [SweepRow.from_stats(p.distance_m, s) for p, s in zip(points, results)]
