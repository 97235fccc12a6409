"""パスロス・リンクバジェットのテスト."""

from __future__ import annotations

import math
import pickle

import numpy as np
import pytest

from lorasim.channel import (
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
from lorasim.exceptions import ConfigError, DomainError
from lorasim.phy import RadioConfig


class TestPathLoss:
    """path_loss_db."""

    def test_underground_reference(self) -> None:
        """pl0=40, n=1.97 の 100 m は 79.4 dB."""
        model = PathLossModel(pl0_db=40.0, exponent_n=1.97)
        assert path_loss_db(model, 100.0) == pytest.approx(79.4)

    def test_at_reference_distance(self) -> None:
        """基準距離では PL0 そのもの."""
        model = PathLossModel(pl0_db=111.0, exponent_n=2.9)
        assert path_loss_db(model, 1.0) == pytest.approx(111.0)

    def test_monotone_in_distance(self) -> None:
        """経路損失は距離に対して狭義単調増加."""
        model = PathLossModel(pl0_db=111.0, exponent_n=2.9)
        losses = [path_loss_db(model, d) for d in (1.0, 2.0, 5.0, 25.0, 50.0, 1000.0)]
        assert losses == sorted(losses)
        assert len(set(losses)) == len(losses)

    def test_below_reference_distance(self) -> None:
        """基準距離未満は DomainError."""
        model = PathLossModel(pl0_db=40.0, d0_m=1.0)
        with pytest.raises(DomainError):
            path_loss_db(model, 0.5)

    def test_shadowing_reproducible(self) -> None:
        """同じシードならシャドウイングも同じ."""
        model = PathLossModel(pl0_db=111.0, exponent_n=2.9, shadowing_sigma_db=3.0)
        a = path_loss_db(model, 25.0, np.random.default_rng(3))
        b = path_loss_db(model, 25.0, np.random.default_rng(3))
        assert a == b
        assert a != path_loss_db(model, 25.0)

    def test_shadowing_statistics(self) -> None:
        """シャドウイングは平均 0・標準偏差 σ."""
        model = PathLossModel(pl0_db=111.0, exponent_n=2.9, shadowing_sigma_db=3.0)
        rng = np.random.default_rng(11)
        mean = path_loss_db(model, 25.0)
        draws = np.array([path_loss_db(model, 25.0, rng) for _ in range(20_000)]) - mean
        assert abs(draws.mean()) < 0.1
        assert draws.std() == pytest.approx(3.0, rel=0.03)

    def test_zero_sigma_ignores_rng(self) -> None:
        """σ=0 では乱数に依らない."""
        model = PathLossModel(pl0_db=40.0, exponent_n=1.97)
        assert path_loss_db(model, 100.0, np.random.default_rng(0)) == pytest.approx(79.4)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"pl0_db": 40.0, "d0_m": 0.0},
            {"pl0_db": 40.0, "exponent_n": 0.0},
            {"pl0_db": 40.0, "shadowing_sigma_db": -1.0},
        ],
    )
    def test_invalid_model(self, kwargs: dict[str, float]) -> None:
        """不正なモデル値は ConfigError."""
        with pytest.raises(ConfigError):
            PathLossModel(**kwargs)


class TestFreeSpace:
    """自由空間損失."""

    def test_doubling_distance(self) -> None:
        """距離 2 倍で約 6.02 dB 増える."""
        near = free_space_path_loss_db(50.0, 433e6)
        far = free_space_path_loss_db(100.0, 433e6)
        assert far - near == pytest.approx(20 * math.log10(2))

    def test_matches_log_distance_with_n2(self) -> None:
        """n=2・pl0=FSPL(1 m) の対数距離モデルは自由空間と一致する."""
        model = PathLossModel(pl0_db=free_space_path_loss_db(1.0, 433e6), exponent_n=2.0)
        for distance in (3.0, 40.0, 700.0):
            assert path_loss_db(model, distance) == pytest.approx(
                free_space_path_loss_db(distance, 433e6)
            )

    def test_underground_exponent_below_free_space(self) -> None:
        """n=1.97 は遠方で自由空間より損失が小さい."""
        pl0 = free_space_path_loss_db(1.0, 433e6)
        model = PathLossModel(pl0_db=pl0, exponent_n=1.97)
        assert path_loss_db(model, 100.0) < free_space_path_loss_db(100.0, 433e6)

    def test_non_positive_distance(self) -> None:
        """距離 0 は DomainError."""
        with pytest.raises(DomainError):
            free_space_path_loss_db(0.0, 433e6)


class TestLinkBudget:
    """リンクバジェット."""

    def test_noise_floor(self) -> None:
        """125 kHz・NF 6 dB で約 -117.03 dBm."""
        assert noise_floor_dbm(LinkBudget(), 125e3) == pytest.approx(-117.03, abs=0.01)

    def test_received_power(self) -> None:
        """送信電力とアンテナ利得から受信電力を出す."""
        budget = LinkBudget(tx_power_dbm=17.0, tx_gain_dbi=2.0, rx_gain_dbi=1.0)
        assert received_power_dbm(budget, 100.0) == pytest.approx(-80.0)

    def test_snr(self) -> None:
        """雑音床ちょうどの受信電力は SNR 0 dB."""
        budget = LinkBudget()
        assert snr_db(-117.03, budget, 125e3) == pytest.approx(0.0, abs=0.01)

    def test_sensitivity_sf12(self) -> None:
        """SF12 の感度は -141.03 dBm."""
        cfg = RadioConfig()
        assert sensitivity_dbm(cfg, LinkBudget(), SnrThresholdTable()) == pytest.approx(
            -141.03, abs=0.01
        )

    def test_sensitivity_improves_with_sf(self) -> None:
        """感度は SF とともに良くなる."""
        budget = LinkBudget()
        table = SnrThresholdTable()
        values = [sensitivity_dbm(RadioConfig(sf=sf), budget, table) for sf in range(7, 13)]
        assert values == sorted(values, reverse=True)

    def test_link_margin(self) -> None:
        """都市環境 25 m は正、50 m は負のマージン."""
        model = PathLossModel(pl0_db=111.0, exponent_n=2.9)
        budget = LinkBudget()
        cfg = RadioConfig()
        table = SnrThresholdTable()
        near = budget.link_margin_db(path_loss_db(model, 25.0), cfg, table)
        far = budget.link_margin_db(path_loss_db(model, 50.0), cfg, table)
        assert near == pytest.approx(6.49, abs=0.01)
        assert far == pytest.approx(-2.24, abs=0.01)

    def test_negative_noise_figure(self) -> None:
        """負の雑音指数は ConfigError."""
        with pytest.raises(ConfigError):
            LinkBudget(noise_figure_db=-1.0)


class TestSnrThresholdTable:
    """SF しきい値表."""

    def test_default_monotone(self) -> None:
        """既定しきい値は SF とともに下がる."""
        values = [DEFAULT_SNR_THRESHOLDS[sf] for sf in range(7, 13)]
        assert values == sorted(values, reverse=True)

    def test_rejects_non_monotone(self) -> None:
        """単調でない表は ConfigError."""
        with pytest.raises(ConfigError):
            SnrThresholdTable({7: -10.0, 8: -9.0})

    def test_missing_sf(self) -> None:
        """表にない SF は ConfigError."""
        table = SnrThresholdTable({7: -7.5, 8: -10.0})
        with pytest.raises(ConfigError):
            table.threshold(12)
        with pytest.raises(ConfigError):
            sensitivity_dbm(RadioConfig(), LinkBudget(), table)

    def test_read_only(self) -> None:
        """しきい値表は書き換えられない."""
        table = SnrThresholdTable()
        with pytest.raises(TypeError):
            table.thresholds[7] = 0.0  # type: ignore[index]

    def test_picklable(self) -> None:
        """プロセスプールへ渡せる."""
        table = SnrThresholdTable({7: -7.5, 8: -10.0})
        assert pickle.loads(pickle.dumps(table)) == table
