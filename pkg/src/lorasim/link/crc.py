"""CRC-16/CCITT-FALSE."""

from __future__ import annotations

POLYNOMIAL = 0x1021
PRESET = 0xFFFF


def _initial(c: int) -> int:
    crc = 0
    c <<= 8
    for _ in range(8):
        if (crc ^ c) & 0x8000:
            crc = (crc << 1) ^ POLYNOMIAL
        else:
            crc <<= 1
        c <<= 1
    return crc & 0xFFFF


_TABLE = tuple(_initial(i) for i in range(256))


def crc16(payload: bytes) -> int:
    """CRC-16/CCITT-FALSE（多項式 0x1021, 初期値 0xFFFF, 反転なし, 最終 XOR なし）を返す.

    Examples:
        >>> hex(crc16(b"123456789"))
        '0x29b1'
        >>> hex(crc16(b""))
        '0xffff'

    """
    crc = PRESET
    for byte in payload:
        crc = ((crc << 8) ^ _TABLE[((crc >> 8) ^ byte) & 0xFF]) & 0xFFFF
    return crc


def crc4(value: int, width: int) -> int:
    """``width`` ビットの値に対する CRC-4（x^4 + x + 1, 初期値 0）を返す.

    ヘッダチェックサムに使う。
    """
    reg = 0
    for i in reversed(range(width)):
        bit = (value >> i) & 1
        top = (reg >> 3) & 1
        reg = (reg << 1) & 0xF
        if top ^ bit:
            reg ^= 0x3
    return reg
