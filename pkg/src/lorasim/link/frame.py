"""テキスト ⇔ フレーム ⇔ シンボル列の変換.

フレームは LoRa のブロック構造に合わせて配置する（インタリーブ・ホワイトニングなし）。

- 先頭ブロック: 8 シンボル、各 ``SF-2`` ビット、符号化率 4/8 固定。
  明示ヘッダ 5 ニブル ``[len:8][cr:3][crc:1][chk:4][rsv:4]`` とペイロード先頭を運ぶ。
- 後続ブロック: ``4+CR`` シンボル、各 ``SF-2*LDRO`` ビット、ヘッダが示す符号化率。

この配置により、フレームのシンボル数は :func:`payload_symbol_count` と一致する。
詳細は ``docs/FRAME_FORMAT.md`` を参照。
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, replace

from lorasim._messages import format_error
from lorasim.exceptions import (
    CrcMismatch,
    FecFailure,
    FramingError,
    HeaderCorrupt,
    OversizePayload,
)
from lorasim.link.crc import crc4, crc16
from lorasim.link.fec import CodedBits, bits_to_word, fec_decode, fec_encode, word_to_bits
from lorasim.phy.css import SymbolBlock, gray_decode, gray_encode
from lorasim.phy.radio import MAX_PAYLOAD_BYTES, RadioConfig

HEADER_NIBBLES = 5
FIRST_BLOCK_SYMBOLS = 8
HEADER_CR = 4
# 先頭ブロックは SF-2 ビット/シンボル（下位 2 ビットを捨てる低レートモード）
FIRST_BLOCK_DROP_BITS = 2


def header_checksum(payload_len: int, cr_num: int, crc_enabled: bool) -> int:
    """ヘッダ先頭 12 ビットに対する 4 ビットチェックサムを返す."""
    return crc4((payload_len << 4) | (cr_num << 1) | int(crc_enabled), 12)


@dataclass(frozen=True)
class FrameHeader:
    """明示ヘッダ."""

    payload_len: int
    cr_num: int
    crc_enabled: bool

    def nibbles(self) -> tuple[int, ...]:
        """ヘッダを 5 ニブルに展開する."""
        return (
            self.payload_len >> 4,
            self.payload_len & 0xF,
            (self.cr_num << 1) | int(self.crc_enabled),
            header_checksum(self.payload_len, self.cr_num, self.crc_enabled),
            0,
        )

    @classmethod
    def from_nibbles(cls, nibbles: Sequence[int]) -> FrameHeader:
        """5 ニブルからヘッダを復元する.

        Raises:
            HeaderCorrupt: チェックサム不一致・予約ニブル非 0・CR 範囲外の場合

        """
        payload_len = (nibbles[0] << 4) | nibbles[1]
        cr_num = nibbles[2] >> 1
        crc_enabled = bool(nibbles[2] & 1)
        if nibbles[3] != header_checksum(payload_len, cr_num, crc_enabled):
            raise HeaderCorrupt(format_error("header_checksum", nibbles=tuple(nibbles)))
        if nibbles[4] != 0 or not 1 <= cr_num <= 4:
            raise HeaderCorrupt(format_error("header_field", cr_num=cr_num, reserved=nibbles[4]))
        return cls(payload_len=payload_len, cr_num=cr_num, crc_enabled=crc_enabled)


@dataclass(frozen=True)
class Frame:
    """空中を伝送する 1 フレーム."""

    payload: bytes
    header: FrameHeader
    crc16: int

    def __post_init__(self) -> None:
        if self.header.payload_len != len(self.payload):
            raise FramingError(
                format_error(
                    "header_field",
                    payload_len=self.header.payload_len,
                    actual=len(self.payload),
                )
            )
        if crc16(self.payload) != self.crc16:
            raise FramingError(format_error("crc_mismatch", crc16=self.crc16))

    @property
    def text(self) -> str:
        """ペイロードを UTF-8 として解釈する（不正バイトは置換文字）."""
        return self.payload.decode("utf-8", errors="replace")

    def data_nibbles(self) -> list[int]:
        """ペイロードと（有効なら）CRC をニブル列にする."""
        nibbles: list[int] = []
        for byte in self.payload:
            nibbles.extend((byte >> 4, byte & 0xF))
        if self.header.crc_enabled:
            nibbles.extend((self.crc16 >> shift) & 0xF for shift in (12, 8, 4, 0))
        return nibbles


@dataclass(frozen=True)
class DecodedFrame:
    """復号結果."""

    frame: Frame
    corrected_bits: int


def build_frame(text: str, cfg: RadioConfig) -> Frame:
    """テキストからフレームを組み立てる.

    Raises:
        OversizePayload: UTF-8 で 255 バイトを超える場合

    """
    payload = text.encode("utf-8")
    if len(payload) > MAX_PAYLOAD_BYTES:
        raise OversizePayload(format_error("payload_too_large", payload_len=len(payload)))
    header = FrameHeader(
        payload_len=len(payload), cr_num=cfg.cr_num, crc_enabled=cfg.crc_enabled
    )
    return Frame(payload=payload, header=header, crc16=crc16(payload))


def _block_bits(cfg: RadioConfig) -> int:
    return cfg.sf - 2 if cfg.ldro else cfg.sf


def _pack_symbols(bits: list[int], width: int, cfg: RadioConfig) -> list[int]:
    shift = cfg.sf - width
    symbols: list[int] = []
    for start in range(0, len(bits), width):
        value = bits_to_word(bits[start : start + width])
        if cfg.gray_mapping:
            value = gray_decode(value, width)
        symbols.append(value << shift)
    return symbols


def _unpack_symbols(symbols: Sequence[int], width: int, cfg: RadioConfig) -> list[int]:
    shift = cfg.sf - width
    half = (1 << shift) >> 1
    mask = (1 << width) - 1
    bits: list[int] = []
    for symbol in symbols:
        value = ((symbol + half) >> shift) & mask
        if cfg.gray_mapping:
            value = gray_encode(value, width)
        bits.extend(word_to_bits(value, width))
    return bits


def _encode_block(nibbles: list[int], cr_num: int, width: int, cfg: RadioConfig) -> list[int]:
    return _pack_symbols(list(fec_encode(nibbles, cr_num).bits), width, cfg)


def _decode_block(
    symbols: Sequence[int], cr_num: int, width: int, cfg: RadioConfig
) -> CodedBits:
    return CodedBits(bits=tuple(_unpack_symbols(symbols, width, cfg)), cr_num=cr_num)


def _codewords(coded: CodedBits, start: int, count: int) -> CodedBits:
    """符号語 start から count 個を切り出す（ブロック末尾の詰め物を除くため）."""
    size = 4 + coded.cr_num
    return replace(coded, bits=coded.bits[start * size : (start + count) * size])


def frame_to_symbols(frame: Frame, cfg: RadioConfig) -> SymbolBlock:
    """フレームをシンボル列に配置する."""
    first_width = cfg.sf - FIRST_BLOCK_DROP_BITS
    data = frame.data_nibbles()
    head = list(frame.header.nibbles()) if cfg.explicit_header else []
    take = first_width - len(head)
    first = head + data[:take]
    first += [0] * (first_width - len(first))
    symbols = _encode_block(first, HEADER_CR, first_width, cfg)

    rest = data[take:]
    width = _block_bits(cfg)
    cr_num = frame.header.cr_num
    for start in range(0, len(rest), width):
        chunk = rest[start : start + width]
        chunk += [0] * (width - len(chunk))
        symbols.extend(_encode_block(chunk, cr_num, width, cfg))
    return SymbolBlock(symbols=tuple(symbols), sf=cfg.sf)


def encode_frame(text: str, cfg: RadioConfig) -> SymbolBlock:
    """テキストを送信用シンボル列に符号化する.

    Examples:
        >>> from lorasim.phy import RadioConfig, payload_symbol_count
        >>> cfg = RadioConfig()
        >>> len(encode_frame("HELLO LORA", cfg)) == payload_symbol_count(cfg, 10)
        True

    """
    return frame_to_symbols(build_frame(text, cfg), cfg)


def parse_frame(
    symbols: SymbolBlock,
    cfg: RadioConfig,
    *,
    payload_len: int | None = None,
) -> DecodedFrame:
    """シンボル列からフレームを復元する.

    Args:
        symbols: 受信シンボル列
        cfg: 受信側の無線設定
        payload_len: 暗黙ヘッダモード時のペイロード長

    Returns:
        復号したフレームと訂正ビット数

    Raises:
        HeaderCorrupt: ヘッダが読めない・壊れている・長さが合わない場合
        FecFailure: ペイロード符号語を復号できない場合
        CrcMismatch: ペイロード CRC が一致しない場合
        FramingError: SF 不一致、または暗黙ヘッダで payload_len がない場合

    """
    if symbols.sf != cfg.sf:
        raise FramingError(format_error("sf_mismatch", block_sf=symbols.sf, cfg_sf=cfg.sf))
    syms = symbols.symbols
    if len(syms) < FIRST_BLOCK_SYMBOLS:
        raise HeaderCorrupt(format_error("header_missing", symbols=len(syms)))

    first_width = cfg.sf - FIRST_BLOCK_DROP_BITS
    first = _decode_block(syms[:FIRST_BLOCK_SYMBOLS], HEADER_CR, first_width, cfg)
    offset = 0
    corrected = 0

    if cfg.explicit_header:
        try:
            head = fec_decode(_codewords(first, 0, HEADER_NIBBLES))
        except FecFailure as exc:
            raise HeaderCorrupt(format_error("header_fec", index=exc.index)) from exc
        header = FrameHeader.from_nibbles(list(head.nibbles))
        corrected += head.corrected
        offset = HEADER_NIBBLES
    else:
        if payload_len is None:
            raise FramingError(format_error("implicit_length"))
        header = FrameHeader(
            payload_len=payload_len, cr_num=cfg.cr_num, crc_enabled=cfg.crc_enabled
        )

    n_data = 2 * header.payload_len + (4 if header.crc_enabled else 0)
    width = _block_bits(cfg)
    in_first = min(n_data, first_width - offset)
    remaining = n_data - in_first
    n_blocks = -(-remaining // width)
    block_symbols = 4 + header.cr_num
    needed = FIRST_BLOCK_SYMBOLS + n_blocks * block_symbols
    if len(syms) < needed:
        message = format_error("header_truncated", needed=needed, received=len(syms))
        if cfg.explicit_header:
            raise HeaderCorrupt(message)
        raise FramingError(message)

    segments = [_codewords(first, offset, in_first)]
    for block in range(n_blocks):
        start = FIRST_BLOCK_SYMBOLS + block * block_symbols
        coded = _decode_block(syms[start : start + block_symbols], header.cr_num, width, cfg)
        segments.append(_codewords(coded, 0, min(width, remaining - block * width)))

    nibbles: list[int] = []
    for segment in segments:
        result = fec_decode(segment, first_index=len(nibbles))
        nibbles.extend(result.nibbles)
        corrected += result.corrected

    payload = bytes(
        (nibbles[2 * i] << 4) | nibbles[2 * i + 1] for i in range(header.payload_len)
    )
    actual = crc16(payload)
    if header.crc_enabled:
        crc_nibbles = nibbles[2 * header.payload_len :]
        expected = (
            (crc_nibbles[0] << 12) | (crc_nibbles[1] << 8) | (crc_nibbles[2] << 4) | crc_nibbles[3]
        )
        if expected != actual:
            raise CrcMismatch(
                format_error("crc_mismatch", expected=hex(expected), actual=hex(actual)),
                payload=payload,
                expected=expected,
                actual=actual,
            )
    return DecodedFrame(
        frame=Frame(payload=payload, header=header, crc16=actual),
        corrected_bits=corrected,
    )


def decode_frame(
    symbols: SymbolBlock,
    cfg: RadioConfig,
    *,
    payload_len: int | None = None,
) -> str:
    """シンボル列をテキストに復号する.

    不正な UTF-8 は例外にせず置換文字として返す（LCD 表示を止めないため）。

    Raises:
        HeaderCorrupt: ヘッダ破損
        FecFailure: FEC 復号失敗
        CrcMismatch: CRC 不一致（壊れたペイロードを ``payload`` に保持）

    """
    return parse_frame(symbols, cfg, payload_len=payload_len).frame.text
