"""テレメトリチャネルのテスト."""

from __future__ import annotations

import threading

import pytest

from lorasim.exceptions import DomainError
from lorasim.telemetry import TelemetryChannel
from lorasim.telemetry.channel import FeedEntry, validate_write_key

KEY = "ABCDEFGH12345678"


def _channel() -> TelemetryChannel:
    return TelemetryChannel(1, KEY, name="desk", clock=lambda: "2024-06-01T00:00:00Z")


class TestValidateWriteKey:
    """validate_write_key."""

    def test_valid(self) -> None:
        """16 文字の英大文字と数字は有効."""
        assert validate_write_key(KEY) == KEY

    @pytest.mark.parametrize("key", ["", "SHORT", "ABCDEFGH1234567!", "ABCDEFGH123456789"])
    def test_invalid(self, key: str) -> None:
        """形式違いのキーは DomainError."""
        with pytest.raises(DomainError):
            validate_write_key(key)


class TestTelemetryChannel:
    """TelemetryChannel."""

    def test_entry_ids_increase(self) -> None:
        """エントリ ID は 1 から増える."""
        channel = _channel()
        assert channel.update(KEY, {1: "a"}) == 1
        assert channel.update(KEY, {1: "b"}) == 2
        assert channel.last_entry_id == 2
        assert channel.fields == {1: "b"}

    def test_wrong_key(self) -> None:
        """キー違いは 0 で何も記録しない."""
        channel = _channel()
        assert channel.update("ZZZZZZZZZZZZZZZZ", {1: "a"}) == 0
        assert channel.update(None, {1: "a"}) == 0
        assert channel.feed() == []

    def test_no_fields(self) -> None:
        """フィールドなしは 0."""
        assert _channel().update(KEY, {}) == 0

    def test_field_index_out_of_range(self) -> None:
        """フィールド番号 9 は 0."""
        assert _channel().update(KEY, {9: "x"}) == 0

    def test_field_too_long(self) -> None:
        """255 文字までは受け付ける."""
        channel = _channel()
        assert channel.update(KEY, {1: "x" * 256}) == 0
        assert channel.update(KEY, {1: "x" * 255}) == 1

    def test_feed_order(self) -> None:
        """フィードは書き込み順."""
        channel = _channel()
        for text in ("one", "two", "three"):
            channel.update(KEY, {1: text})
        assert [e.fields[1] for e in channel.feed()] == ["one", "two", "three"]
        assert channel.feed()[0] == FeedEntry(1, "2024-06-01T00:00:00Z", {1: "one"})

    def test_latest_per_field(self) -> None:
        """フィールドごとに最新値を持つ."""
        channel = _channel()
        channel.update(KEY, {1: "a", 2: "b"})
        channel.update(KEY, {2: "c"})
        assert channel.fields == {1: "a", 2: "c"}

    def test_concurrent_updates(self) -> None:
        """並行更新でも entry_id は重複も欠番もない."""
        channel = _channel()
        ids: list[int] = []
        lock = threading.Lock()

        def worker() -> None:
            for _ in range(50):
                entry_id = channel.update(KEY, {1: "x"})
                with lock:
                    ids.append(entry_id)

        threads = [threading.Thread(target=worker) for _ in range(8)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert sorted(ids) == list(range(1, 401))

    def test_records(self) -> None:
        """チャネルとエントリをレコードに変換する."""
        channel = _channel()
        channel.update(KEY, {1: "hi"})
        assert channel.to_record() == {"id": 1, "name": "desk", "last_entry_id": 1}
        assert channel.feed()[0].to_record() == {
            "created_at": "2024-06-01T00:00:00Z",
            "entry_id": 1,
            "field1": "hi",
        }

    def test_invalid_key_on_create(self) -> None:
        """不正なキーではチャネルを作れない."""
        with pytest.raises(DomainError):
            TelemetryChannel(1, "bad")
