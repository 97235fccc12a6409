"""CSS 変調・復調のテスト."""

from __future__ import annotations

import numpy as np
import pytest

from lorasim.exceptions import DomainError, FramingError
from lorasim.phy import (
    IqBuffer,
    RadioConfig,
    SymbolBlock,
    chirp_waveforms,
    demodulate,
    gray_decode,
    gray_encode,
    modulate,
)


class TestGray:
    """グレイ符号."""

    def test_first_values(self) -> None:
        """Gray 符号の先頭 8 値."""
        assert [gray_encode(v, 7) for v in range(8)] == [0, 1, 3, 2, 6, 7, 5, 4]

    @pytest.mark.parametrize("sf", [7, 12])
    def test_inverse(self, sf: int) -> None:
        """gray_decode は gray_encode の逆写像."""
        values = range(1 << sf)
        assert [gray_decode(gray_encode(v, sf), sf) for v in values] == list(values)

    def test_adjacent_differ_by_one_bit(self) -> None:
        """隣接値の符号は 1 ビットだけ異なる."""
        codes = [gray_encode(v, 8) for v in range(256)]
        assert all(bin(a ^ b).count("1") == 1 for a, b in zip(codes, codes[1:]))

    @pytest.mark.parametrize("value", [-1, 128])
    def test_out_of_range(self, value: int) -> None:
        """範囲外の値は DomainError."""
        with pytest.raises(DomainError):
            gray_encode(value, 7)
        with pytest.raises(DomainError):
            gray_decode(value, 7)


class TestSymbolBlock:
    """SymbolBlock の検証."""

    def test_rejects_out_of_range_symbol(self) -> None:
        """2^SF 以上のシンボルは DomainError."""
        with pytest.raises(DomainError):
            SymbolBlock(symbols=(0, 128), sf=7)

    def test_len(self) -> None:
        """長さはシンボル数."""
        assert len(SymbolBlock(symbols=(1, 2, 3), sf=7)) == 3

    def test_metrics_ignored_in_equality(self) -> None:
        """ピーク振幅は比較に含めない."""
        a = SymbolBlock(symbols=(5,), sf=7, metrics=(128.0,))
        b = SymbolBlock(symbols=(5,), sf=7)
        assert a == b


class TestChirp:
    """チャープ波形."""

    def test_unit_envelope(self) -> None:
        """振幅は常に 1."""
        waves = chirp_waveforms(np.array([0, 17, 127]), 7, oversample=4)
        assert np.allclose(np.abs(waves), 1.0)

    def test_shape(self) -> None:
        """チャープ波形の形はシンボル数 × M × オーバーサンプル."""
        waves = chirp_waveforms(np.array([0, 1]), 8, oversample=2)
        assert waves.shape == (2, 512)


class TestModulate:
    """modulate / demodulate."""

    @pytest.mark.parametrize("sf", [7, 9, 12])
    def test_noiseless_identity(self, sf: int) -> None:
        """雑音なしでは全シンボル値が復元される."""
        cfg = RadioConfig(sf=sf)
        rng = np.random.default_rng(sf)
        symbols = tuple(int(s) for s in rng.integers(0, 1 << sf, 64))
        block = SymbolBlock(symbols=symbols, sf=sf)
        assert demodulate(modulate(block, cfg), cfg).symbols == symbols

    def test_extreme_symbols(self) -> None:
        """端の値 0 と 2^SF-1."""
        cfg = RadioConfig(sf=7)
        block = SymbolBlock(symbols=(0, 127, 0, 127), sf=7)
        assert demodulate(modulate(block, cfg), cfg).symbols == block.symbols

    def test_oversampled(self) -> None:
        """オーバーサンプルしても復調結果は同じ."""
        cfg = RadioConfig(sf=8)
        block = SymbolBlock(symbols=(3, 200, 255, 0), sf=8)
        iq = modulate(block, cfg, oversample=4)
        assert iq.samples.size == 4 * 256 * 4
        assert iq.sample_rate_hz == 4 * 125_000
        assert demodulate(iq, cfg).symbols == block.symbols

    def test_peak_metric(self) -> None:
        """雑音なしのピーク振幅は 2^SF."""
        cfg = RadioConfig(sf=7)
        result = demodulate(modulate(SymbolBlock(symbols=(9,), sf=7), cfg), cfg)
        assert result.metrics == pytest.approx((128.0,))

    def test_empty_block(self) -> None:
        """空ブロックは空 IQ になり空に戻る."""
        cfg = RadioConfig(sf=7)
        iq = modulate(SymbolBlock(symbols=(), sf=7), cfg)
        assert iq.samples.size == 0
        assert demodulate(iq, cfg).symbols == ()

    def test_sf_mismatch(self) -> None:
        """SF 不一致は FramingError."""
        with pytest.raises(FramingError):
            modulate(SymbolBlock(symbols=(1,), sf=8), RadioConfig(sf=7))

    def test_invalid_oversample(self) -> None:
        """オーバーサンプル 0 は DomainError."""
        with pytest.raises(DomainError):
            modulate(SymbolBlock(symbols=(1,), sf=7), RadioConfig(sf=7), oversample=0)

    def test_ragged_buffer(self) -> None:
        """シンボル長の整数倍でないバッファ."""
        iq = IqBuffer(samples=np.ones(100, dtype=complex), sample_rate_hz=125e3)
        with pytest.raises(FramingError):
            demodulate(iq, RadioConfig(sf=7))
