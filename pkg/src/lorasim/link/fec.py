"""ニブル単位の前方誤り訂正.

符号語はデータニブル（MSB 先頭）の後ろにパリティビットを並べた ``4 + cr`` ビット。

- cr=1: 偶数パリティ 1 ビット（検出のみ）
- cr=2, 3: Hamming パリティの部分集合（検出のみ）
- cr=4: 拡大 Hamming(8,4)（1 ビット訂正・2 ビット検出）
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from lorasim._messages import format_error
from lorasim.exceptions import DomainError, FecFailure


def _bit(value: int, i: int) -> int:
    return (value >> i) & 1


def _hamming_parities(nibble: int) -> tuple[int, int, int, int]:
    d0, d1, d2, d3 = (_bit(nibble, i) for i in range(4))
    return (
        d0 ^ d1 ^ d2,
        d1 ^ d2 ^ d3,
        d0 ^ d1 ^ d3,
        d0 ^ d2 ^ d3,
    )


def encode_nibble(nibble: int, cr_num: int) -> int:
    """1 ニブルを ``4 + cr_num`` ビットの符号語に符号化する."""
    if not 0 <= nibble < 16:
        raise DomainError(format_error("value_out_of_range", nibble=nibble))
    if not 1 <= cr_num <= 4:
        raise DomainError(format_error("cr_out_of_range", cr_num=cr_num))
    if cr_num == 1:
        parities: tuple[int, ...] = (bin(nibble).count("1") & 1,)
    else:
        parities = _hamming_parities(nibble)[:cr_num]
    word = nibble
    for p in parities:
        word = (word << 1) | p
    return word


def _build_decode_table(cr_num: int) -> dict[int, tuple[int, int]]:
    table: dict[int, tuple[int, int]] = {}
    width = 4 + cr_num
    for nibble in range(16):
        word = encode_nibble(nibble, cr_num)
        table[word] = (nibble, 0)
        if cr_num == 4:
            for i in range(width):
                table[word ^ (1 << i)] = (nibble, 1)
    return table


_DECODE_TABLES: dict[int, dict[int, tuple[int, int]]] = {
    cr: _build_decode_table(cr) for cr in range(1, 5)
}


def decode_codeword(word: int, cr_num: int, *, index: int = -1) -> tuple[int, int]:
    """符号語を復号し、(ニブル, 訂正ビット数) を返す.

    Raises:
        FecFailure: 訂正不能（cr=4）またはパリティ不一致（cr=1〜3）の場合

    """
    entry = _DECODE_TABLES[cr_num].get(word)
    if entry is None:
        key = "fec_uncorrectable" if cr_num == 4 else "fec_parity"
        raise FecFailure(format_error(key, index=index, cr_num=cr_num), index=index)
    return entry


@dataclass(frozen=True)
class CodedBits:
    """FEC 後のビット列."""

    bits: tuple[int, ...]
    cr_num: int

    def __post_init__(self) -> None:
        if len(self.bits) % (4 + self.cr_num) != 0:
            raise DomainError(
                format_error("value_out_of_range", bits=len(self.bits), cr_num=self.cr_num)
            )


@dataclass(frozen=True)
class FecResult:
    """FEC 復号結果."""

    nibbles: tuple[int, ...]
    corrected: int


def word_to_bits(word: int, width: int) -> list[int]:
    """整数を MSB 先頭のビット列に展開する."""
    return [(word >> i) & 1 for i in reversed(range(width))]


def bits_to_word(bits: Iterable[int]) -> int:
    """MSB 先頭のビット列を整数に戻す."""
    word = 0
    for b in bits:
        word = (word << 1) | b
    return word


def fec_encode(nibbles: Sequence[int], cr_num: int) -> CodedBits:
    """ニブル列を符号化する."""
    width = 4 + cr_num
    bits: list[int] = []
    for nibble in nibbles:
        bits.extend(word_to_bits(encode_nibble(nibble, cr_num), width))
    return CodedBits(bits=tuple(bits), cr_num=cr_num)


def fec_decode(coded: CodedBits, *, first_index: int = 0) -> FecResult:
    """符号化ビット列を復号する.

    Args:
        coded: 符号化ビット列
        first_index: 先頭符号語のフレーム内通し番号

    Raises:
        FecFailure: 復号できない符号語がある場合（``index`` に符号語位置を持つ）

    """
    width = 4 + coded.cr_num
    nibbles: list[int] = []
    corrected = 0
    for index, start in enumerate(range(0, len(coded.bits), width)):
        word = bits_to_word(coded.bits[start : start + width])
        nibble, fixed = decode_codeword(word, coded.cr_num, index=first_index + index)
        nibbles.append(nibble)
        corrected += fixed
    return FecResult(nibbles=tuple(nibbles), corrected=corrected)
