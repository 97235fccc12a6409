"""1 地点試行のテスト."""

from __future__ import annotations

import math
from dataclasses import replace

import numpy as np
import pytest

from lorasim.link import encode_frame
from lorasim.node import EventKind, LatencyEndpoint, NodeEvent
from lorasim.phy import RadioConfig
from lorasim.sim import (
    Fidelity,
    Outcome,
    Scenario,
    TrialStats,
    load_scenario,
    run_point_to_point,
    transmit_over_channel,
)


@pytest.fixture
def urban() -> Scenario:
    """都市シナリオ（少数パケット）."""
    return load_scenario("paper-urban-2024").with_overrides(n_packets=20)


def _no_shadowing(scenario: Scenario) -> Scenario:
    return scenario.with_overrides(path_loss=replace(scenario.path_loss, shadowing_sigma_db=0.0))


def _conserved(stats: TrialStats) -> bool:
    return stats.sent == (
        stats.delivered
        + stats.header_failures
        + stats.fec_failures
        + stats.crc_failures
        + stats.channel_lost
        + stats.misdelivered
    )


class TestRunPointToPoint:
    """run_point_to_point."""

    def test_near_delivers_all(self, urban: Scenario) -> None:
        """5 m では全数届き遅延は 3.198912 s."""
        stats = run_point_to_point(_no_shadowing(urban).with_overrides(distance_m=5.0))
        assert stats.sent == 20
        assert stats.pdr == 1.0
        assert stats.latency_mean_s == pytest.approx(3.198912)
        assert stats.latency_p95_s == pytest.approx(3.198912)

    def test_far_fails(self, urban: Scenario) -> None:
        """50 m ではほぼ届かない."""
        stats = run_point_to_point(_no_shadowing(urban).with_overrides(distance_m=50.0))
        assert stats.pdr < 0.05
        assert _conserved(stats)

    def test_noiseless_override(self, urban: Scenario) -> None:
        """SNR=inf ならどの距離でも全数到達する."""
        scenario = urban.with_overrides(distance_m=500.0, snr_override_db=math.inf)
        assert run_point_to_point(scenario).pdr == 1.0

    def test_analytic_delivers_just_below_sensitivity(self, urban: Scenario) -> None:
        """SF7 のしきい値直下でも一部のパケットは届く（IQ レベルと同じ振る舞い）."""
        scenario = urban.with_overrides(
            radio=RadioConfig(sf=7), snr_override_db=-10.5, n_packets=200
        )
        stats = run_point_to_point(scenario)
        assert 0.0 < stats.pdr < 0.5

    def test_lcd_endpoint(self, urban: Scenario) -> None:
        """LCD 終点の遅延."""
        scenario = _no_shadowing(urban).with_overrides(latency_endpoint=LatencyEndpoint.LCD)
        stats = run_point_to_point(scenario)
        assert stats.latency_mean_s == pytest.approx(0.1 + 1.318912 + 0.15 + 0.05)

    def test_deterministic(self, urban: Scenario) -> None:
        """同じシナリオなら同じ結果."""
        scenario = urban.with_overrides(distance_m=30.0)
        assert run_point_to_point(scenario) == run_point_to_point(scenario)

    def test_seed_changes_outcome(self, urban: Scenario) -> None:
        """シードを変えると SNR 系列が変わる."""
        scenario = urban.with_overrides(distance_m=40.0, n_packets=60)
        a = run_point_to_point(scenario)
        b = run_point_to_point(scenario.with_overrides(seed=1))
        assert [r.snr_db for r in a.records] != [r.snr_db for r in b.records]

    def test_conservation(self, urban: Scenario) -> None:
        """送信数は結果の合計と一致する."""
        for distance in (5.0, 35.0, 45.0, 80.0):
            stats = run_point_to_point(urban.with_overrides(distance_m=distance))
            assert _conserved(stats)

    def test_records(self, urban: Scenario) -> None:
        """パケットごとの記録が送信順に並ぶ."""
        stats = run_point_to_point(_no_shadowing(urban))
        assert [r.seq for r in stats.records] == list(range(20))
        assert all(r.outcome is Outcome.DELIVERED for r in stats.records)
        starts = [r.tx_start_s for r in stats.records]
        assert starts == sorted(starts)
        assert stats.records[0].tx_start_s == pytest.approx(0.1)

    def test_event_sink(self, urban: Scenario) -> None:
        """イベントが on_event に流れる."""
        seen: list[NodeEvent] = []
        run_point_to_point(urban.with_overrides(n_packets=2), on_event=seen.append)
        kinds = [e.kind for e in seen]
        assert kinds.count(EventKind.TX_START) == 2
        stamps = [e.timestamp for e in seen]
        assert stamps == sorted(stamps)

    def test_uploader_called(self, urban: Scenario) -> None:
        """受信成功ごとに uploader が呼ばれる."""
        texts: list[str] = []

        def uploader(text: str) -> int:
            texts.append(text)
            return len(texts)

        run_point_to_point(_no_shadowing(urban).with_overrides(n_packets=3), uploader=uploader)
        assert texts == ["HELLO LORA 0001!"] * 3

    def test_sample_fidelity(self) -> None:
        """IQ レベルでも近距離は全数到達する."""
        scenario = Scenario(
            name="sample",
            fidelity=Fidelity.SAMPLE,
            n_packets=3,
            distance_m=10.0,
        )
        assert run_point_to_point(scenario).pdr == 1.0


class TestTransmitOverChannel:
    """transmit_over_channel."""

    def test_far_below_sensitivity_scrambles(self, urban: Scenario) -> None:
        """感度を大きく下回るとほぼ全シンボルが誤る."""
        scenario = _no_shadowing(urban).with_overrides(distance_m=80.0)
        block = encode_frame(scenario.message, scenario.radio)
        received, link = transmit_over_channel(block, scenario, np.random.default_rng(0))
        assert link.snr_db < scenario.thresholds.threshold(12)
        wrong = sum(a != b for a, b in zip(received.symbols, block.symbols))
        assert wrong > len(block) // 2
        assert len(received) == len(block)

    def test_just_below_sensitivity_keeps_most_symbols(self, urban: Scenario) -> None:
        """しきい値直下でも解析モデルはシンボルを一律には壊さない."""
        scenario = urban.with_overrides(radio=RadioConfig(sf=7), snr_override_db=-10.5)
        block = encode_frame(scenario.message, scenario.radio)
        received, link = transmit_over_channel(block, scenario, np.random.default_rng(1))
        assert link.snr_db < scenario.thresholds.threshold(7)
        kept = sum(a == b for a, b in zip(received.symbols, block.symbols))
        assert kept > len(block) // 2

    def test_link_sample(self, urban: Scenario) -> None:
        """25 m の受信電力は -134.54 dBm."""
        scenario = _no_shadowing(urban).with_overrides(distance_m=25.0)
        block = encode_frame(scenario.message, scenario.radio)
        received, link = transmit_over_channel(block, scenario, np.random.default_rng(0))
        assert link.prx_dbm == pytest.approx(-134.54, abs=0.01)
        assert link.snr_db == pytest.approx(-17.51, abs=0.01)
        assert received == block
