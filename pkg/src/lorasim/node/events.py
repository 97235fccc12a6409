"""ノードイベントと JSON Lines イベントログ."""

from __future__ import annotations

import json
from collections.abc import Iterable
from dataclasses import dataclass
from enum import Enum
from typing import Any, TextIO


class EventKind(Enum):
    """ノードが発行するイベント種別."""

    TX_BUILD = "TxBuild"
    TX_START = "TxStart"
    TX_END = "TxEnd"
    TX_ERROR = "TxError"
    RX_DETECT = "RxDetect"
    RX_DECODE_OK = "RxDecodeOk"
    RX_DECODE_FAIL = "RxDecodeFail"
    LCD_UPDATE = "LcdUpdate"
    UPLOAD_START = "UploadStart"
    UPLOAD_DONE = "UploadDone"


@dataclass(frozen=True)
class NodeEvent:
    """1 件のノードイベント."""

    timestamp: float
    """シミュレーション時刻（秒）."""

    node_id: str
    kind: EventKind
    detail: str = ""

    def to_record(self) -> dict[str, Any]:
        """JSON 化できる辞書に変換する."""
        return {
            "timestamp": self.timestamp,
            "node_id": self.node_id,
            "kind": self.kind.value,
            "detail": self.detail,
        }

    @classmethod
    def from_record(cls, record: dict[str, Any]) -> NodeEvent:
        return cls(
            timestamp=float(record["timestamp"]),
            node_id=str(record["node_id"]),
            kind=EventKind(record["kind"]),
            detail=str(record.get("detail", "")),
        )


def write_event_log(events: Iterable[NodeEvent], stream: TextIO) -> int:
    """イベントを 1 行 1 レコードの JSON で書き出し、書いた件数を返す."""
    count = 0
    for event in events:
        stream.write(json.dumps(event.to_record(), ensure_ascii=False) + "\n")
        count += 1
    return count


def read_event_log(stream: TextIO) -> list[NodeEvent]:
    """write_event_log の出力を読み戻す（空行は無視）."""
    return [NodeEvent.from_record(json.loads(line)) for line in stream if line.strip()]
