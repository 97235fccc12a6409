"""受信ノードの状態機械.

パケット到着ごとに Listening → Decoding → Displaying → Uploading → Listening と
一巡する。処理時間は :class:`ProcessingDelays` に従ってイベント時刻へ反映する。
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, field, replace
from enum import Enum

from lorasim._messages import format_error
from lorasim.exceptions import (
    CrcMismatch,
    DomainError,
    FecFailure,
    FramingError,
    HeaderCorrupt,
    LoraSimError,
)
from lorasim.link.frame import parse_frame
from lorasim.node.events import EventKind, NodeEvent
from lorasim.node.lcd import render_lcd
from lorasim.node.tx import ProcessingDelays
from lorasim.phy.css import SymbolBlock
from lorasim.phy.radio import RadioConfig

logger = logging.getLogger(__name__)

Uploader = Callable[[str], int]
"""復号テキストを受け取り entry_id を返すアップロード関数."""


class RxState(Enum):
    """受信ノードの状態."""

    INIT = "Init"
    LISTENING = "Listening"
    DECODING = "Decoding"
    DISPLAYING = "Displaying"
    UPLOADING = "Uploading"


@dataclass(frozen=True)
class RxStats:
    """受信カウンタ."""

    received: int = 0
    decoded: int = 0
    header_failures: int = 0
    fec_failures: int = 0
    crc_failures: int = 0
    dropped_busy: int = 0
    uploads_ok: int = 0
    uploads_failed: int = 0


@dataclass(frozen=True)
class Arrival:
    """受信機に届いたフレーム."""

    symbols: SymbolBlock
    snr_db: float
    payload_len: int | None = None
    """暗黙ヘッダモードでのペイロード長."""


@dataclass(frozen=True)
class RxNodeState:
    """受信ノードの状態."""

    config: RadioConfig
    delays: ProcessingDelays = field(default_factory=ProcessingDelays)
    node_id: str = "rx"
    state: RxState = RxState.INIT
    last_message: str | None = None
    lcd: tuple[str, str] = field(default_factory=lambda: render_lcd(""))
    stats: RxStats = field(default_factory=RxStats)
    busy_until: float = -math.inf
    """直前のパケット処理が終わる時刻."""

    last_time: float = -math.inf


def _failure_kind(exc: LoraSimError) -> str:
    match exc:
        case CrcMismatch():
            return "crc"
        case FecFailure():
            return "fec"
        case HeaderCorrupt() | FramingError():
            return "header"
    return "header"


def _count_failure(stats: RxStats, kind: str) -> RxStats:
    match kind:
        case "crc":
            return replace(stats, crc_failures=stats.crc_failures + 1)
        case "fec":
            return replace(stats, fec_failures=stats.fec_failures + 1)
    return replace(stats, header_failures=stats.header_failures + 1)


def _upload(
    state: RxNodeState, text: str, uploader: Uploader | None
) -> tuple[RxStats, str]:
    stats = state.stats
    if uploader is None:
        return replace(stats, uploads_ok=stats.uploads_ok + 1), "simulated"
    try:
        entry_id = uploader(text)
    except LoraSimError as exc:
        logger.warning("upload failed on %s: %s", state.node_id, exc)
        return replace(stats, uploads_failed=stats.uploads_failed + 1), f"failed: {exc}"
    if entry_id == 0:
        logger.warning("upload rejected on %s", state.node_id)
        return replace(stats, uploads_failed=stats.uploads_failed + 1), "rejected"
    return replace(stats, uploads_ok=stats.uploads_ok + 1), f"entry_id={entry_id}"


def rx_step(
    state: RxNodeState,
    arrival: Arrival | None,
    now: float,
    *,
    uploader: Uploader | None = None,
) -> tuple[RxNodeState, list[NodeEvent]]:
    """受信ノードを 1 段進める.

    復号の失敗は例外にせず ``RxDecodeFail`` イベントとカウンタに変換する。
    前のパケットを処理中（``now < busy_until``）に届いたフレームは取りこぼす。
    アップロードは結果を待たず、失敗してもログに残すだけで Listening に戻る。

    Args:
        state: 現在の状態
        arrival: 到着フレーム（なければ None）
        now: 到着時刻（単調非減少）
        uploader: 実アップロード関数。None なら送信を模擬するだけ

    Returns:
        (新しい状態, 発行イベント)

    Raises:
        DomainError: now が前回より戻った場合

    """
    if now < state.last_time:
        raise DomainError(format_error("time_reversed", now=now, last=state.last_time))
    state = replace(state, last_time=now, state=RxState.LISTENING)
    if arrival is None:
        return state, []
    if now < state.busy_until:
        logger.warning(
            "%s busy until %.6f, dropped frame at %.6f", state.node_id, state.busy_until, now
        )
        stats = replace(state.stats, dropped_busy=state.stats.dropped_busy + 1)
        return replace(state, stats=stats), []

    delays = state.delays
    stats = replace(state.stats, received=state.stats.received + 1)
    detect = NodeEvent(now, state.node_id, EventKind.RX_DETECT, f"snr_db={arrival.snr_db:.2f}")
    decoded_at = now + delays.decode_s
    try:
        result = parse_frame(arrival.symbols, state.config, payload_len=arrival.payload_len)
    except (FramingError, HeaderCorrupt, FecFailure, CrcMismatch) as exc:
        kind = _failure_kind(exc)
        logger.debug("%s decode failed (%s): %s", state.node_id, kind, exc)
        fail = NodeEvent(decoded_at, state.node_id, EventKind.RX_DECODE_FAIL, kind)
        return (
            replace(state, stats=_count_failure(stats, kind), busy_until=decoded_at),
            [detect, fail],
        )

    text = result.frame.text
    stats = replace(stats, decoded=stats.decoded + 1)
    lcd = render_lcd(text)
    shown_at = decoded_at + delays.display_s
    done_at = shown_at + delays.upload_s
    stats_after, upload_detail = _upload(replace(state, stats=stats), text, uploader)
    events = [
        detect,
        NodeEvent(decoded_at, state.node_id, EventKind.RX_DECODE_OK, text),
        NodeEvent(shown_at, state.node_id, EventKind.LCD_UPDATE, "\n".join(lcd)),
        NodeEvent(shown_at, state.node_id, EventKind.UPLOAD_START, text),
        NodeEvent(done_at, state.node_id, EventKind.UPLOAD_DONE, upload_detail),
    ]
    new_state = replace(
        state,
        last_message=text,
        lcd=lcd,
        stats=stats_after,
        busy_until=done_at,
    )
    return new_state, events
