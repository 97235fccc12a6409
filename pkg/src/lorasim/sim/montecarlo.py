"""Monte Carlo によるシンボル誤り率の推定としきい値校正."""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np
from scipy import stats

from lorasim import config
from lorasim._messages import format_error
from lorasim._random import derive_rng
from lorasim.channel.awgn import add_noise, symbol_error_rate
from lorasim.channel.propagation import SnrThresholdTable
from lorasim.exceptions import CalibrationError, DomainError
from lorasim.phy.css import chirp_waveforms, demodulate_samples
from lorasim.sim.scenario import Fidelity

logger = logging.getLogger(__name__)

MIN_TRIALS = 1000
TARGET_SER = 0.1


@dataclass(frozen=True)
class SerEstimate:
    """SER の推定値と 95% 信頼区間."""

    sf: int
    snr_db: float
    trials: int
    errors: int
    ci_low: float
    ci_high: float
    fidelity: Fidelity

    @property
    def ser(self) -> float:
        return self.errors / self.trials


def wilson_interval(errors: int, trials: int, confidence: float = 0.95) -> tuple[float, float]:
    """二項比率の Wilson スコア区間を返す."""
    z = float(stats.norm.ppf(1.0 - (1.0 - confidence) / 2.0))
    p = errors / trials
    denom = 1.0 + z * z / trials
    center = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1.0 - p) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, center - half), min(1.0, center + half)


def _default_fidelity(sf: int) -> Fidelity:
    return Fidelity.ANALYTIC if sf >= config.ANALYTIC_SF_THRESHOLD else Fidelity.SAMPLE


def _count_sample_errors(
    sf: int,
    snr_db: float,
    trials: int,
    rng: np.random.Generator,
    oversample: int,
) -> int:
    m = 1 << sf
    symbols = rng.integers(0, m, trials)
    batch = max(1, config.MONTE_CARLO_BATCH_SAMPLES // (m * oversample))
    errors = 0
    for start in range(0, trials, batch):
        chunk = symbols[start : start + batch]
        waves = add_noise(chirp_waveforms(chunk, sf, oversample), snr_db, rng)
        bins, _ = demodulate_samples(waves.reshape(-1), sf, oversample)
        errors += int(np.count_nonzero(bins != chunk))
    return errors


def monte_carlo_ser(
    sf: int,
    snr_db: float,
    trials: int,
    seed: int,
    *,
    fidelity: Fidelity | None = None,
    oversample: int = 1,
) -> SerEstimate:
    """ランダムシンボルを変調・AWGN・復調して SER を数える.

    analytic 忠実度では解析 SER 曲線から誤り数を二項分布で抽選する。
    SF が ``config.ANALYTIC_SF_THRESHOLD`` 以上のときの既定は analytic。

    Args:
        sf: 拡散率 7〜12
        snr_db: 1 サンプルあたりの SNR (dB)
        trials: シンボル数（1000 以上）
        seed: マスターシード
        fidelity: 忠実度。None なら SF から決める
        oversample: sample 忠実度でのオーバーサンプル倍率

    Raises:
        DomainError: trials が 1000 未満、または sf が範囲外の場合

    """
    if trials < MIN_TRIALS:
        raise DomainError(format_error("trials_too_few", trials=trials))
    if not 7 <= sf <= 12:
        raise DomainError(format_error("sf_out_of_range", sf=sf))
    mode = fidelity or _default_fidelity(sf)
    rng = derive_rng(seed, "ser", sf, float(snr_db))
    if mode is Fidelity.ANALYTIC:
        errors = int(rng.binomial(trials, symbol_error_rate(sf, snr_db)))
    else:
        errors = _count_sample_errors(sf, snr_db, trials, rng, oversample)
    low, high = wilson_interval(errors, trials)
    return SerEstimate(
        sf=sf,
        snr_db=snr_db,
        trials=trials,
        errors=errors,
        ci_low=low,
        ci_high=high,
        fidelity=mode,
    )


def ser_curve(
    sf: int,
    snr_grid: Iterable[float],
    trials: int,
    seed: int,
    *,
    fidelity: Fidelity | None = None,
) -> list[SerEstimate]:
    """SNR グリッド上の SER を順に推定する."""
    return [monte_carlo_ser(sf, snr, trials, seed, fidelity=fidelity) for snr in snr_grid]


def calibrate_thresholds(
    sfs: Iterable[int],
    trials: int,
    seed: int,
    *,
    fidelity: Fidelity | None = None,
    low_db: float = -40.0,
    high_db: float = 0.0,
    resolution_db: float = 0.5,
) -> SnrThresholdTable:
    """SF ごとに SER が 10% を横切る SNR を二分探索で求める.

    区間幅が resolution_db 以下になるまで狭め、中点をしきい値とする。

    Raises:
        CalibrationError: 結果が SF に対して狭義単調減少でない場合

    """
    found: dict[int, float] = {}
    for sf in sorted(set(sfs)):
        low, high = low_db, high_db
        while high - low > resolution_db:
            mid = (low + high) / 2.0
            estimate = monte_carlo_ser(sf, mid, trials, seed, fidelity=fidelity)
            logger.debug("calibrate sf=%d snr=%.3f ser=%.4f", sf, mid, estimate.ser)
            if estimate.ser > TARGET_SER:
                low = mid
            else:
                high = mid
        found[sf] = round((low + high) / 2.0, 3)
        logger.info("sf=%d threshold=%.3f dB", sf, found[sf])

    items = sorted(found.items())
    for (sf_a, snr_a), (sf_b, snr_b) in zip(items, items[1:]):
        if snr_b >= snr_a:
            raise CalibrationError(
                format_error("not_monotone", sf=(sf_a, sf_b), snr_db=(snr_a, snr_b))
            )
    return SnrThresholdTable(found)
