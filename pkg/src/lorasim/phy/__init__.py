"""物理層: CSS 変調と airtime 計算."""

from lorasim.phy.css import (
    IqBuffer,
    SymbolBlock,
    chirp_waveforms,
    demodulate,
    demodulate_samples,
    gray_decode,
    gray_encode,
    modulate,
)
from lorasim.phy.radio import (
    CodingRate,
    RadioConfig,
    bit_rate,
    payload_symbol_count,
    symbol_duration,
    time_on_air,
    tx_energy_mj,
)

__all__ = [
    "CodingRate",
    "IqBuffer",
    "RadioConfig",
    "SymbolBlock",
    "bit_rate",
    "chirp_waveforms",
    "demodulate",
    "demodulate_samples",
    "gray_decode",
    "gray_encode",
    "modulate",
    "payload_symbol_count",
    "symbol_duration",
    "time_on_air",
    "tx_energy_mj",
]
