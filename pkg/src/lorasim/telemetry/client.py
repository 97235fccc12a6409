"""ThingSpeak 互換 API へのアップロード."""

from __future__ import annotations

import logging
import os
from collections.abc import Callable, Mapping
from dataclasses import dataclass

import requests

from lorasim import config
from lorasim._messages import format_error
from lorasim.exceptions import DomainError, TransportError
from lorasim.telemetry.channel import MAX_FIELD_LENGTH

logger = logging.getLogger(__name__)


def upload(
    endpoint: str,
    write_key: str,
    field1: str,
    *,
    session: requests.Session | None = None,
    timeout: float | None = None,
) -> int:
    """``GET <endpoint>/update`` で field1 を書き込む.

    再送はしない。

    Args:
        endpoint: ベース URL（例: ``http://127.0.0.1:8080``）
        write_key: チャネルの write key
        field1: 書き込む値（255 文字以内）
        session: 使い回す requests セッション
        timeout: タイムアウト秒。None なら ``config.TELEMETRY_TIMEOUT_S``

    Returns:
        受理されれば正の entry_id、拒否されれば 0

    Raises:
        DomainError: field1 が 255 文字を超える場合
        TransportError: 接続失敗、200 以外の応答、または本文が 10 進数でない場合

    """
    if len(field1) > MAX_FIELD_LENGTH:
        raise DomainError(format_error("field_too_long", length=len(field1)))
    url = endpoint.rstrip("/") + "/update"
    params = {"api_key": write_key, "field1": field1}
    getter = session.get if session is not None else requests.get
    try:
        response = getter(
            url,
            params=params,
            timeout=config.TELEMETRY_TIMEOUT_S if timeout is None else timeout,
        )
    except requests.RequestException as exc:
        raise TransportError(format_error("transport_failed", url=url, error=str(exc))) from exc
    body = response.text.strip()
    if response.status_code != 200 or not body.isdecimal():
        raise TransportError(
            format_error("transport_failed", url=url, status=response.status_code, body=body[:40])
        )
    entry_id = int(body)
    logger.debug("uploaded to %s: entry_id=%d", url, entry_id)
    return entry_id


@dataclass(frozen=True)
class TelemetryTarget:
    """アップロード先."""

    endpoint: str
    write_key: str

    @classmethod
    def from_env(cls, environ: Mapping[str, str] | None = None) -> TelemetryTarget | None:
        """環境変数 TELEMETRY_ENDPOINT / TELEMETRY_WRITE_KEY から作る（どちらか欠ければ None）."""
        env = os.environ if environ is None else environ
        endpoint = env.get(config.TELEMETRY_ENDPOINT_ENV, "")
        write_key = env.get(config.TELEMETRY_WRITE_KEY_ENV, "")
        if not endpoint or not write_key:
            return None
        return cls(endpoint=endpoint, write_key=write_key)

    def uploader(self, session: requests.Session | None = None) -> Callable[[str], int]:
        """受信ノードに渡すアップロード関数を返す."""

        def _upload(text: str) -> int:
            return upload(self.endpoint, self.write_key, text, session=session)

        return _upload
