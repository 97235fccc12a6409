"""pytest 共通設定: 無線設定・テレメトリサーバの fixture."""

from __future__ import annotations

import socket
from collections.abc import Generator

import pytest

from lorasim.phy import RadioConfig
from lorasim.telemetry import MockServer, TelemetryChannel

WRITE_KEY = "TESTKEY000000001"


def _can_bind_localhost() -> bool:
    """localhost にソケットを bind できるか判定する."""
    try:
        with socket.socket(socket.AF_INET, socket.SOCK_STREAM) as sock:
            sock.bind(("127.0.0.1", 0))
    except OSError:
        return False
    return True


# --- 可否キャッシュ ---
_network_available: bool | None = None


def _is_network_available() -> bool:
    global _network_available
    if _network_available is None:
        _network_available = _can_bind_localhost()
    return _network_available


# --- マーカーによる自動スキップ ---
def pytest_collection_modifyitems(config: pytest.Config, items: list[pytest.Item]) -> None:
    """network マーカー付きテストを bind 不可時に自動スキップする."""
    for item in items:
        if "network" in item.keywords and not _is_network_available():
            item.add_marker(pytest.mark.skip(reason="localhost sockets are not available"))


@pytest.fixture
def table1_cfg() -> RadioConfig:
    """送受信ノードの設定（SF12, 125 kHz, CR 4/5, 17 dBm, 明示ヘッダ, CRC, LDRO 自動）."""
    return RadioConfig()


@pytest.fixture
def mock_server() -> Generator[MockServer, None, None]:
    """バックグラウンドで動くモックサーバ."""
    with MockServer() as server:
        yield server


@pytest.fixture
def telemetry_channel(mock_server: MockServer) -> TelemetryChannel:
    """モックサーバに登録済みのチャネル."""
    return mock_server.add_channel(WRITE_KEY, name="test")
