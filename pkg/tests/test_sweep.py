"""距離スイープのテスト."""

from __future__ import annotations

import pytest

from lorasim.exceptions import ConfigError
from lorasim.sim import Scenario, load_scenario, sweep_distance


@pytest.fixture
def urban() -> Scenario:
    return load_scenario("paper-urban-2024").with_overrides(n_packets=40)


class TestSweepDistance:
    """sweep_distance."""

    def test_rows_in_order(self, urban: Scenario) -> None:
        """行は指定した距離の順に並ぶ."""
        rows = sweep_distance(urban, [5, 10, 20])
        assert [r.distance_m for r in rows] == [5.0, 10.0, 20.0]
        assert all(r.sent == 40 for r in rows)

    def test_delivered_column(self, urban: Scenario) -> None:
        """25 m までは YES、50 m は No."""
        rows = sweep_distance(urban, [5, 10, 20, 25, 50])
        assert [r.delivered for r in rows] == [True, True, True, True, False]

    def test_workers_identical(self, urban: Scenario) -> None:
        """並列実行でも結果は直列実行と一致する."""
        distances = [10.0, 30.0, 45.0]
        assert sweep_distance(urban, distances, workers=2) == sweep_distance(urban, distances)

    def test_point_independent_of_sweep(self, urban: Scenario) -> None:
        """ある地点の結果は一緒に走らせる地点に依存しない."""
        alone = sweep_distance(urban, [40.0])[0]
        together = sweep_distance(urban, [5.0, 40.0, 60.0])[1]
        assert alone == together

    def test_pdr_trend(self, urban: Scenario) -> None:
        """距離が延びると PDR は下がる."""
        rows = sweep_distance(urban, [5, 40, 100])
        assert rows[0].pdr >= rows[1].pdr >= rows[2].pdr

    def test_empty(self, urban: Scenario) -> None:
        """距離リストが空なら ConfigError."""
        with pytest.raises(ConfigError):
            sweep_distance(urban, [])

    def test_distance_below_d0(self, urban: Scenario) -> None:
        """基準距離未満は ConfigError."""
        with pytest.raises(ConfigError):
            sweep_distance(urban, [0.5])
