"""ThingSpeak 互換のモック受信サーバ."""

from __future__ import annotations

import json
import logging
import re
import threading
from http import HTTPStatus
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from types import TracebackType
from typing import Any
from urllib.parse import parse_qs, urlsplit

from lorasim.telemetry.channel import FIELD_COUNT, TelemetryChannel

logger = logging.getLogger(__name__)

_FEED_PATH = re.compile(r"/channels/(\d+)/(?:feed|feeds\.json)")


class ChannelRegistry:
    """チャネルの登録簿（write key と channel id の両方で引ける）."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._by_id: dict[int, TelemetryChannel] = {}
        self._by_key: dict[str, TelemetryChannel] = {}

    def add(self, write_key: str, *, name: str = "") -> TelemetryChannel:
        """新しいチャネルを作って登録する."""
        with self._lock:
            channel = TelemetryChannel(len(self._by_id) + 1, write_key, name=name)
            self._by_id[channel.channel_id] = channel
            self._by_key[write_key] = channel
            return channel

    def by_key(self, write_key: str | None) -> TelemetryChannel | None:
        with self._lock:
            return self._by_key.get(write_key or "")

    def by_id(self, channel_id: int) -> TelemetryChannel | None:
        with self._lock:
            return self._by_id.get(channel_id)


class MockThingSpeakHandler(BaseHTTPRequestHandler):
    """``/update`` と ``/channels/<id>/feed`` を処理するハンドラ.

    - ``GET /update?api_key=<key>&field1=<value>``: entry_id を 10 進文字列で返す（拒否は ``0``）
    - ``GET /channels/<id>/feed``（別名 ``feeds.json``）: フィードを JSON で返す
    - それ以外のパスは 404、クエリの構文エラーは 400
    """

    registry: ChannelRegistry = ChannelRegistry()
    server_version = "lorasim-mock/0.1"

    def do_GET(self) -> None:  # noqa: N802
        parts = urlsplit(self.path)
        try:
            query = (
                parse_qs(parts.query, keep_blank_values=True, strict_parsing=True)
                if parts.query
                else {}
            )
        except ValueError:
            self._send(HTTPStatus.BAD_REQUEST, "text/plain", "bad request")
            return

        if parts.path == "/update":
            self._update(query)
            return
        match = _FEED_PATH.fullmatch(parts.path)
        if match is None:
            self._send(HTTPStatus.NOT_FOUND, "text/plain", "not found")
            return
        channel = self.registry.by_id(int(match.group(1)))
        if channel is None:
            self._send(HTTPStatus.NOT_FOUND, "text/plain", "not found")
            return
        body = {
            "channel": channel.to_record(),
            "feeds": [entry.to_record() for entry in channel.feed()],
        }
        self._send(HTTPStatus.OK, "application/json", json.dumps(body, ensure_ascii=False))

    def _update(self, query: dict[str, list[str]]) -> None:
        api_key = query.get("api_key", [None])[0]
        fields = {
            index: query[f"field{index}"][0]
            for index in range(1, FIELD_COUNT + 1)
            if f"field{index}" in query
        }
        channel = self.registry.by_key(api_key)
        entry_id = channel.update(api_key, fields) if channel is not None else 0
        if entry_id == 0:
            logger.warning("update rejected (fields=%s)", sorted(fields))
        self._send(HTTPStatus.OK, "text/plain", str(entry_id))

    def _send(self, status: HTTPStatus, content_type: str, body: str) -> None:
        data = body.encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", f"{content_type}; charset=utf-8")
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)

    def log_message(self, format: str, *args: Any) -> None:  # noqa: A002
        logger.debug("%s - %s", self.address_string(), format % args)


class MockServer:
    """バックグラウンドスレッドで動くモックサーバ.

    Examples:
        >>> with MockServer() as server:
        ...     channel = server.add_channel("ABCDEFGHIJKLMNOP")
        ...     url = server.url

    """

    def __init__(
        self,
        registry: ChannelRegistry | None = None,
        *,
        host: str = "127.0.0.1",
        port: int = 0,
    ) -> None:
        self.registry = registry or ChannelRegistry()
        handler = type("BoundHandler", (MockThingSpeakHandler,), {"registry": self.registry})
        self._httpd = ThreadingHTTPServer((host, port), handler)
        self._thread: threading.Thread | None = None

    @property
    def url(self) -> str:
        host, port = self._httpd.server_address[:2]
        return f"http://{host}:{port}"

    def add_channel(self, write_key: str, *, name: str = "") -> TelemetryChannel:
        return self.registry.add(write_key, name=name)

    def start(self) -> MockServer:
        self._thread = threading.Thread(target=self._httpd.serve_forever, daemon=True)
        self._thread.start()
        logger.info("mock telemetry server listening on %s", self.url)
        return self

    def serve_forever(self) -> None:
        """呼び出しスレッドで処理を続ける（CLI の serve 用）."""
        logger.info("mock telemetry server listening on %s", self.url)
        self._httpd.serve_forever()

    def stop(self) -> None:
        if self._thread is not None:
            self._httpd.shutdown()
            self._thread.join()
            self._thread = None
        self._httpd.server_close()
        logger.info("mock telemetry server stopped")

    def __enter__(self) -> MockServer:
        return self.start()

    def __exit__(
        self,
        exc_type: type[BaseException] | None,
        exc: BaseException | None,
        tb: TracebackType | None,
    ) -> None:
        self.stop()
