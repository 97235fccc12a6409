"""lorasim 例外クラス."""

from __future__ import annotations


class LoraSimError(Exception):
    """lorasim の基底例外."""


class DomainError(LoraSimError):
    """引数が定義域外."""


class ConfigError(LoraSimError):
    """無線設定・シナリオ設定の不整合."""


class ScenarioNotFoundError(ConfigError):
    """シナリオが見つからない."""

    def __init__(self, message: str, available: list[str] | None = None) -> None:
        super().__init__(message)
        self.available = available or []


class OversizePayload(LoraSimError):
    """ペイロードが 255 バイトを超える."""


class FramingError(LoraSimError):
    """シンボル列・IQ バッファの区切りが不正."""


class FrameDecodeError(LoraSimError):
    """受信フレームの復号失敗（受信側で計数される失敗の基底）."""


class HeaderCorrupt(FrameDecodeError):
    """ヘッダが壊れている."""


class FecFailure(FrameDecodeError):
    """FEC で訂正できない符号語を検出した."""

    def __init__(self, message: str, index: int = -1) -> None:
        super().__init__(message)
        self.index = index


class CrcMismatch(FrameDecodeError):
    """ペイロード CRC の不一致.

    診断用に壊れたペイロードを保持する。
    """

    def __init__(self, message: str, payload: bytes, expected: int, actual: int) -> None:
        super().__init__(message)
        self.payload = payload
        self.expected = expected
        self.actual = actual


class MissingEvent(LoraSimError):
    """レイテンシ計算用のイベント対が揃っていない."""


class CalibrationError(LoraSimError):
    """しきい値校正の結果が SF に対して単調でない."""


class TransportError(LoraSimError):
    """テレメトリ送信の通信失敗（拒否応答 0 とは区別する）."""
