"""ThingSpeak 互換のチャネル（フィード）状態."""

from __future__ import annotations

import re
import threading
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any

from lorasim._messages import format_error
from lorasim.exceptions import DomainError

WRITE_KEY_PATTERN = re.compile(r"[A-Za-z0-9]{16}")
FIELD_COUNT = 8
MAX_FIELD_LENGTH = 255


def _utc_now() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def validate_write_key(write_key: str) -> str:
    """write key が 16 文字の英数字であることを確認する.

    Raises:
        DomainError: 形式が不正な場合

    """
    if not WRITE_KEY_PATTERN.fullmatch(write_key or ""):
        raise DomainError(format_error("write_key_invalid", length=len(write_key or "")))
    return write_key


@dataclass(frozen=True)
class FeedEntry:
    """フィードの 1 エントリ."""

    entry_id: int
    created_at: str
    fields: Mapping[int, str] = field(default_factory=dict)

    def to_record(self) -> dict[str, Any]:
        record: dict[str, Any] = {"created_at": self.created_at, "entry_id": self.entry_id}
        for index in range(1, FIELD_COUNT + 1):
            if index in self.fields:
                record[f"field{index}"] = self.fields[index]
        return record


class TelemetryChannel:
    """書き込みキーで保護された追記専用フィード.

    entry_id は 1 から始まり、受理した更新ごとに 1 ずつ増える。
    更新はチャネルごとのロックで直列化する。
    """

    def __init__(
        self,
        channel_id: int,
        write_key: str,
        *,
        name: str = "",
        clock: Callable[[], str] = _utc_now,
    ) -> None:
        self.channel_id = channel_id
        self.write_key = validate_write_key(write_key)
        self.name = name
        self._clock = clock
        self._lock = threading.Lock()
        self._feed: list[FeedEntry] = []
        self._latest: dict[int, str] = {}

    def update(self, api_key: str | None, fields: Mapping[int, str]) -> int:
        """フィールド値を追記し、entry_id を返す.

        キー不一致・フィールドなし・範囲外のフィールド番号・255 文字超の値は
        拒否して 0 を返す。
        """
        if api_key != self.write_key or not fields:
            return 0
        if any(not 1 <= i <= FIELD_COUNT for i in fields):
            return 0
        if any(len(v) > MAX_FIELD_LENGTH for v in fields.values()):
            return 0
        with self._lock:
            entry = FeedEntry(
                entry_id=len(self._feed) + 1,
                created_at=self._clock(),
                fields=dict(fields),
            )
            self._feed.append(entry)
            self._latest.update(fields)
            return entry.entry_id

    @property
    def fields(self) -> dict[int, str]:
        """フィールドごとの最新値."""
        with self._lock:
            return dict(self._latest)

    @property
    def last_entry_id(self) -> int:
        with self._lock:
            return len(self._feed)

    def feed(self) -> list[FeedEntry]:
        """挿入順のフィードを返す."""
        with self._lock:
            return list(self._feed)

    def to_record(self) -> dict[str, Any]:
        return {
            "id": self.channel_id,
            "name": self.name,
            "last_entry_id": self.last_entry_id,
        }
