"""チャープスペクトラム拡散 (CSS) の変調・復調."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from lorasim._messages import format_error
from lorasim.exceptions import DomainError, FramingError
from lorasim.phy.radio import RadioConfig


@dataclass(frozen=True)
class SymbolBlock:
    """CSS シンボル列."""

    symbols: tuple[int, ...]
    """シンボル値（各値は 0 <= v < 2^sf）."""

    sf: int
    """シンボルを生成した SF."""

    metrics: tuple[float, ...] | None = field(default=None, compare=False)
    """復調時のピーク振幅（復調結果のみ）."""

    def __post_init__(self) -> None:
        limit = 1 << self.sf
        for value in self.symbols:
            if not 0 <= value < limit:
                raise DomainError(format_error("value_out_of_range", symbol=value, sf=self.sf))

    def __len__(self) -> int:
        return len(self.symbols)


@dataclass(frozen=True, eq=False)
class IqBuffer:
    """複素ベースバンドサンプル列."""

    samples: np.ndarray
    sample_rate_hz: float
    oversample: int = 1


def gray_encode(value: int, sf: int) -> int:
    """2 進値をグレイ符号に変換する.

    Raises:
        DomainError: value が [0, 2^sf) の範囲外の場合

    Examples:
        >>> [gray_encode(v, 7) for v in range(4)]
        [0, 1, 3, 2]

    """
    if not 0 <= value < (1 << sf):
        raise DomainError(format_error("value_out_of_range", value=value, sf=sf))
    return value ^ (value >> 1)


def gray_decode(value: int, sf: int) -> int:
    """グレイ符号を 2 進値に戻す（gray_encode の逆写像）."""
    if not 0 <= value < (1 << sf):
        raise DomainError(format_error("value_out_of_range", value=value, sf=sf))
    result = value
    shift = value >> 1
    while shift:
        result ^= shift
        shift >>= 1
    return result


def chirp_waveforms(symbols: np.ndarray, sf: int, oversample: int = 1) -> np.ndarray:
    """シンボルごとのアップチャープを (シンボル数, 2^sf * oversample) で返す.

    瞬時周波数は ``s * BW / 2^sf`` から始まり、帯域上端で下端へ折り返す。
    位相は連続で、振幅は常に 1。
    """
    n_chips = 1 << sf
    t = np.arange(n_chips * oversample, dtype=np.float64) / oversample
    s = np.asarray(symbols, dtype=np.float64).reshape(-1, 1)
    cycles = t * t / (2 * n_chips) + (s / n_chips - 0.5) * t
    wrap_at = n_chips - s
    cycles -= np.where(t >= wrap_at, t - wrap_at, 0.0)
    return np.exp(2j * np.pi * cycles)


def _base_downchirp(sf: int) -> np.ndarray:
    return np.conj(chirp_waveforms(np.zeros(1), sf)[0])


def demodulate_samples(
    samples: np.ndarray,
    sf: int,
    oversample: int = 1,
) -> tuple[np.ndarray, np.ndarray]:
    """サンプル列をデチャープ + FFT で復調し、(ビン番号, ピーク振幅) を返す.

    オーバーサンプル入力は oversample 間隔で間引いてから 2^sf 点 FFT をとる。
    最大値が複数ある場合は最小のビンを選ぶ。

    Raises:
        FramingError: サンプル数がシンボル長の整数倍でない場合

    """
    n_chips = 1 << sf
    span = n_chips * oversample
    if samples.size % span != 0:
        raise FramingError(format_error("ragged_buffer", samples=samples.size, span=span))
    frames = samples.reshape(-1, span)[:, ::oversample]
    spectrum = np.abs(np.fft.fft(frames * _base_downchirp(sf), axis=1))
    bins = np.argmax(spectrum, axis=1)
    peaks = spectrum[np.arange(bins.size), bins]
    return bins, peaks


def modulate(symbols: SymbolBlock, cfg: RadioConfig, oversample: int = 1) -> IqBuffer:
    """SymbolBlock を CSS 波形に変調する.

    Raises:
        DomainError: oversample が 1 未満の場合
        FramingError: SymbolBlock の SF が cfg と異なる場合

    """
    if oversample < 1:
        raise DomainError(format_error("value_out_of_range", oversample=oversample))
    if symbols.sf != cfg.sf:
        raise FramingError(format_error("sf_mismatch", block_sf=symbols.sf, cfg_sf=cfg.sf))
    waves = chirp_waveforms(np.asarray(symbols.symbols, dtype=np.int64), cfg.sf, oversample)
    return IqBuffer(
        samples=waves.reshape(-1),
        sample_rate_hz=float(cfg.bw_hz * oversample),
        oversample=oversample,
    )


def demodulate(iq: IqBuffer, cfg: RadioConfig) -> SymbolBlock:
    """IqBuffer を復調してシンボル列とピーク振幅を返す."""
    bins, peaks = demodulate_samples(np.asarray(iq.samples), cfg.sf, iq.oversample)
    return SymbolBlock(
        symbols=tuple(int(b) for b in bins),
        sf=cfg.sf,
        metrics=tuple(float(p) for p in peaks),
    )
