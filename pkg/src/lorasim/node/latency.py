"""エンドツーエンドレイテンシ."""

from __future__ import annotations

from collections.abc import Sequence
from enum import Enum

from lorasim._messages import format_error
from lorasim.exceptions import MissingEvent
from lorasim.node.events import EventKind, NodeEvent


class LatencyEndpoint(Enum):
    """レイテンシの終点."""

    LCD = "lcd"
    UPLOAD = "upload"

    @property
    def kind(self) -> EventKind:
        """終点となるイベント種別."""
        match self:
            case LatencyEndpoint.LCD:
                return EventKind.LCD_UPDATE
            case LatencyEndpoint.UPLOAD:
                return EventKind.UPLOAD_DONE


_START_KINDS = (EventKind.TX_BUILD, EventKind.TX_START)


def end_to_end_latency(
    events: Sequence[NodeEvent],
    endpoint: LatencyEndpoint = LatencyEndpoint.UPLOAD,
    *,
    start: EventKind = EventKind.TX_BUILD,
) -> float:
    """1 パケット分のイベント列から始点〜終点の経過時間（秒）を返す.

    Args:
        events: 送信側と受信側を合わせた 1 パケット分のイベント
        endpoint: 終点（LCD 表示またはアップロード完了）
        start: 始点（TxBuild または TxStart）

    Raises:
        MissingEvent: 始点・終点がない、始点種別が不正、または時刻が逆転している場合

    """
    if start not in _START_KINDS:
        raise MissingEvent(format_error("latency_kind", start=start.value))
    begin = next((e for e in events if e.kind is start), None)
    end = next((e for e in events if e.kind is endpoint.kind), None)
    if begin is None or end is None:
        missing = start if begin is None else endpoint.kind
        raise MissingEvent(format_error("latency_missing", kind=missing.value))
    latency = end.timestamp - begin.timestamp
    if latency < 0:
        raise MissingEvent(
            format_error("latency_negative", start=begin.timestamp, end=end.timestamp)
        )
    return latency
