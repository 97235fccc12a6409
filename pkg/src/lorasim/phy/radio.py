"""無線設定と airtime / データレート計算.

計算式は Semtech AN1200.22 の time-on-air 式をそのまま用いる。
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from lorasim._messages import format_error
from lorasim.exceptions import ConfigError, OversizePayload

SUPPORTED_BANDWIDTHS_HZ: frozenset[int] = frozenset({125_000, 250_000, 500_000})

MAX_PAYLOAD_BYTES = 255

# シンボル長がこれを超えると LDRO 必須（SX1278 の運用に合わせる）
LDRO_SYMBOL_LIMIT_S = 0.016

# 同期ワードと SFD の固定オーバーヘッド（シンボル）
SYNC_OVERHEAD_SYMBOLS = 4.25

# SX1278 の +17 dBm 送信時電流（データシート値）
SX1278_TX_CURRENT_MA_17DBM = 87.0


class CodingRate(Enum):
    """LoRa の符号化率 4/(4+k).

    ``RadioConfig.cr_num`` はこの列挙の ``index`` と同じ値を持つ。
    """

    CR_4_5 = (1, "4/5")
    CR_4_6 = (2, "4/6")
    CR_4_7 = (3, "4/7")
    CR_4_8 = (4, "4/8")

    def __init__(self, index: int, label: str) -> None:
        self._index = index
        self._label = label

    @property
    def index(self) -> int:
        """CR インデックス（1〜4）を返す."""
        return self._index

    @property
    def label(self) -> str:
        """``"4/5"`` 形式の表記を返す."""
        return self._label

    @property
    def codeword_bits(self) -> int:
        """1 ニブルあたりの符号語ビット数を返す."""
        return 4 + self._index

    @property
    def corrects(self) -> bool:
        """1 ビット誤りを訂正できるか.

        4/8 (Hamming(8,4)) のみ訂正可能で、他は検出のみ。
        """
        match self:
            case CodingRate.CR_4_8:
                return True
            case _:
                return False

    @classmethod
    def from_index(cls, index: int) -> CodingRate:
        """CR インデックスから列挙値を得る."""
        for member in cls:
            if member.index == index:
                return member
        raise ConfigError(format_error("cr_out_of_range", cr_num=index))

    @classmethod
    def parse(cls, text: str) -> CodingRate:
        """``"1"`` または ``"4/5"`` 形式の文字列を解釈する."""
        text = text.strip()
        for member in cls:
            if text == member.label:
                return member
        try:
            return cls.from_index(int(text))
        except ValueError:
            raise ConfigError(format_error("cr_out_of_range", cr=text)) from None


@dataclass(frozen=True)
class RadioConfig:
    """LoRa 無線設定.

    既定値は送受信ノードで使った設定（433 MHz, SF12, 125 kHz, CR 4/5, 17 dBm）。
    ``ldro`` に None を渡すとシンボル長から自動決定する。
    """

    frequency_hz: float = 433_000_000.0
    sf: int = 12
    bw_hz: int = 125_000
    cr_num: int = 1
    tx_power_dbm: float = 17.0
    preamble_symbols: int = 8
    explicit_header: bool = True
    crc_enabled: bool = True
    ldro: bool | None = None
    gray_mapping: bool = True

    def __post_init__(self) -> None:
        if not 7 <= self.sf <= 12:
            raise ConfigError(format_error("sf_out_of_range", sf=self.sf))
        if not 1 <= self.cr_num <= 4:
            raise ConfigError(format_error("cr_out_of_range", cr_num=self.cr_num))
        if self.bw_hz not in SUPPORTED_BANDWIDTHS_HZ:
            raise ConfigError(format_error("bw_unsupported", bw_hz=self.bw_hz))
        if self.preamble_symbols < 4:
            raise ConfigError(
                format_error("preamble_too_short", preamble_symbols=self.preamble_symbols)
            )
        required = (1 << self.sf) / self.bw_hz > LDRO_SYMBOL_LIMIT_S
        if self.ldro is None:
            object.__setattr__(self, "ldro", required)
        elif required and not self.ldro:
            raise ConfigError(format_error("ldro_required", sf=self.sf, bw_hz=self.bw_hz))

    @property
    def coding_rate(self) -> CodingRate:
        """符号化率の列挙値を返す."""
        return CodingRate.from_index(self.cr_num)

    @property
    def chips_per_symbol(self) -> int:
        """1 シンボルのチップ数 2^SF を返す."""
        return 1 << self.sf


def symbol_duration(cfg: RadioConfig) -> float:
    """シンボル長 T_sym = 2^SF / BW（秒）を返す."""
    return (1 << cfg.sf) / cfg.bw_hz


def payload_symbol_count(cfg: RadioConfig, payload_len: int) -> int:
    """ヘッダ・ペイロード・CRC 部のシンボル数を返す.

    ``8 + max(ceil((8PL - 4SF + 28 + 16CRC - 20IH) / (4(SF - 2DE))) * (CR + 4), 0)``

    Raises:
        OversizePayload: payload_len が 255 を超える場合

    Examples:
        >>> payload_symbol_count(RadioConfig(), 16)
        28

    """
    if payload_len > MAX_PAYLOAD_BYTES:
        raise OversizePayload(format_error("payload_too_large", payload_len=payload_len))
    if payload_len < 0:
        raise OversizePayload(format_error("value_out_of_range", payload_len=payload_len))
    crc = 1 if cfg.crc_enabled else 0
    ih = 0 if cfg.explicit_header else 1
    de = 1 if cfg.ldro else 0
    numerator = 8 * payload_len - 4 * cfg.sf + 28 + 16 * crc - 20 * ih
    denominator = 4 * (cfg.sf - 2 * de)
    blocks = -(-numerator // denominator)
    return 8 + max(blocks * (cfg.cr_num + 4), 0)


def time_on_air(cfg: RadioConfig, payload_len: int) -> float:
    """パケット全体の送信時間（秒）を返す.

    Examples:
        >>> round(time_on_air(RadioConfig(), 16) * 1000, 6)
        1318.912

    """
    n_payload = payload_symbol_count(cfg, payload_len)
    return (cfg.preamble_symbols + SYNC_OVERHEAD_SYMBOLS + n_payload) * symbol_duration(cfg)


def bit_rate(cfg: RadioConfig) -> float:
    """実効ビットレート SF * (BW / 2^SF) * 4 / (4 + CR) を返す."""
    return cfg.sf * (cfg.bw_hz / (1 << cfg.sf)) * (4 / (4 + cfg.cr_num))


def tx_energy_mj(
    cfg: RadioConfig,
    payload_len: int,
    *,
    supply_v: float = 3.3,
    tx_current_ma: float = SX1278_TX_CURRENT_MA_17DBM,
) -> float:
    """1 パケット送信に要するエネルギー（mJ）を見積もる.

    送信中の電流が一定であると仮定し、ToA × 電圧 × 電流で求める。
    """
    return time_on_air(cfg, payload_len) * supply_v * tx_current_ma
