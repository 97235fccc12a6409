"""ノードイベントとイベントログのテスト."""

from __future__ import annotations

import io
import json

import pytest

from lorasim.node import EventKind, NodeEvent, read_event_log, write_event_log


class TestNodeEvent:
    """NodeEvent."""

    def test_record(self) -> None:
        """イベントをレコードに変換する."""
        event = NodeEvent(1.5, "tx", EventKind.TX_START, "symbols=28")
        assert event.to_record() == {
            "timestamp": 1.5,
            "node_id": "tx",
            "kind": "TxStart",
            "detail": "symbols=28",
        }

    def test_from_record_default_detail(self) -> None:
        """detail がなければ空文字になる."""
        event = NodeEvent.from_record({"timestamp": 2, "node_id": "rx", "kind": "RxDetect"})
        assert event == NodeEvent(2.0, "rx", EventKind.RX_DETECT)

    def test_unknown_kind(self) -> None:
        """未知の種別は ValueError."""
        with pytest.raises(ValueError):
            NodeEvent.from_record({"timestamp": 0, "node_id": "rx", "kind": "Nope"})


class TestEventLog:
    """JSON Lines イベントログ."""

    def test_write_and_read(self) -> None:
        """書いたイベントログを読み戻せる."""
        events = [
            NodeEvent(0.0, "tx", EventKind.TX_BUILD, "HELLO"),
            NodeEvent(0.1, "tx", EventKind.TX_START),
            NodeEvent(1.2, "rx", EventKind.LCD_UPDATE, "HELLO\n"),
        ]
        stream = io.StringIO()
        assert write_event_log(events, stream) == 3
        lines = stream.getvalue().splitlines()
        assert len(lines) == 3
        assert json.loads(lines[0])["kind"] == "TxBuild"
        stream.seek(0)
        assert read_event_log(stream) == events

    def test_blank_lines_ignored(self) -> None:
        """空行は読み飛ばす."""
        stream = io.StringIO(
            '\n{"timestamp": 0.5, "node_id": "rx", "kind": "UploadDone", "detail": "ok"}\n\n'
        )
        assert read_event_log(stream) == [NodeEvent(0.5, "rx", EventKind.UPLOAD_DONE, "ok")]

    def test_non_ascii_kept(self) -> None:
        """非 ASCII 文字はエスケープせずに書く."""
        stream = io.StringIO()
        write_event_log([NodeEvent(0.0, "rx", EventKind.RX_DECODE_OK, "ñ")], stream)
        assert "ñ" in stream.getvalue()
