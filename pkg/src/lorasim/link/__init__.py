"""リンク層: フレーム化・FEC・CRC."""

from lorasim.link.crc import crc4, crc16
from lorasim.link.fec import CodedBits, FecResult, fec_decode, fec_encode
from lorasim.link.frame import (
    DecodedFrame,
    Frame,
    FrameHeader,
    build_frame,
    decode_frame,
    encode_frame,
    frame_to_symbols,
    parse_frame,
)

__all__ = [
    "CodedBits",
    "DecodedFrame",
    "FecResult",
    "Frame",
    "FrameHeader",
    "build_frame",
    "crc4",
    "crc16",
    "decode_frame",
    "encode_frame",
    "fec_decode",
    "fec_encode",
    "frame_to_symbols",
    "parse_frame",
]
