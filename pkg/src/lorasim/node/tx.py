"""送信ノードの状態機械.

Init → Building → Transmitting → Waiting → Building ... の順にだけ遷移する。
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from enum import Enum

from lorasim._messages import format_error
from lorasim.exceptions import DomainError, LoraSimError
from lorasim.link.frame import encode_frame
from lorasim.node.events import EventKind, NodeEvent
from lorasim.phy.css import SymbolBlock
from lorasim.phy.radio import RadioConfig, time_on_air

logger = logging.getLogger(__name__)


class TxState(Enum):
    """送信ノードの状態."""

    INIT = "Init"
    BUILDING = "Building"
    TRANSMITTING = "Transmitting"
    WAITING = "Waiting"


@dataclass(frozen=True)
class ProcessingDelays:
    """ノード内処理の所要時間（秒）."""

    build_s: float = 0.0
    """メッセージ生成から送信開始まで."""

    decode_s: float = 0.0
    """受信検出から復号完了まで."""

    display_s: float = 0.0
    """復号完了から LCD 表示まで."""

    upload_s: float = 0.0
    """アップロード開始から完了まで."""

    def __post_init__(self) -> None:
        for name in ("build_s", "decode_s", "display_s", "upload_s"):
            value = getattr(self, name)
            if value < 0:
                raise DomainError(format_error("value_out_of_range", **{name: value}))


@dataclass(frozen=True)
class TxNodeState:
    """送信ノードの状態."""

    config: RadioConfig
    message: str
    inter_send_delay: float = 0.0
    build_delay: float = 0.0
    node_id: str = "tx"
    state: TxState = TxState.INIT
    sent_count: int = 0
    next_wake: float = 0.0
    """次に状態が進む時刻."""

    pending: SymbolBlock | None = None
    """送信中（または送信待ち）のフレーム."""

    tx_started_at: float | None = None
    last_time: float = -math.inf


def _event(state: TxNodeState, timestamp: float, kind: EventKind, detail: str = "") -> NodeEvent:
    return NodeEvent(timestamp=timestamp, node_id=state.node_id, kind=kind, detail=detail)


def _build(state: TxNodeState, now: float) -> tuple[TxNodeState, list[NodeEvent]]:
    events = [_event(state, now, EventKind.TX_BUILD, state.message)]
    try:
        block = encode_frame(state.message, state.config)
    except LoraSimError as exc:
        logger.warning("encode failed on %s: %s", state.node_id, exc)
        events.append(_event(state, now, EventKind.TX_ERROR, str(exc)))
        return (
            replace(
                state,
                state=TxState.WAITING,
                next_wake=now + state.inter_send_delay,
                pending=None,
            ),
            events,
        )
    return (
        replace(
            state,
            state=TxState.TRANSMITTING,
            next_wake=now + state.build_delay,
            pending=block,
            tx_started_at=None,
        ),
        events,
    )


def tx_step(
    state: TxNodeState,
    now: float,
) -> tuple[TxNodeState, SymbolBlock | None, list[NodeEvent]]:
    """送信ノードを時刻 now まで 1 段進める.

    ``now`` が次の起床時刻より前なら何もしない。送信開始の段でだけ
    SymbolBlock を返す。

    Args:
        state: 現在の状態
        now: シミュレーション時刻（単調非減少）

    Returns:
        (新しい状態, 送信したシンボル列または None, 発行イベント)

    Raises:
        DomainError: now が前回より戻った場合

    """
    if now < state.last_time:
        raise DomainError(format_error("time_reversed", now=now, last=state.last_time))
    state = replace(state, last_time=now)
    if now < state.next_wake:
        return state, None, []

    match state.state:
        case TxState.INIT | TxState.WAITING:
            new_state, events = _build(replace(state, state=TxState.BUILDING), now)
            return new_state, None, events
        case TxState.BUILDING:
            new_state, events = _build(state, now)
            return new_state, None, events
        case TxState.TRANSMITTING if state.tx_started_at is None:
            block = state.pending
            if block is None:
                raise DomainError(format_error("value_out_of_range", pending=None))
            toa = time_on_air(state.config, len(state.message.encode("utf-8")))
            start = _event(state, now, EventKind.TX_START, f"symbols={len(block)}")
            return replace(state, tx_started_at=now, next_wake=now + toa), block, [start]
        case TxState.TRANSMITTING:
            # TxEnd は TxStart + ToA として 1 回の加算で決まる
            end_at = state.next_wake
            toa = time_on_air(state.config, len(state.message.encode("utf-8")))
            detail = f"seq={state.sent_count + 1} toa_s={toa!r}"
            end = _event(state, end_at, EventKind.TX_END, detail)
            return (
                replace(
                    state,
                    state=TxState.WAITING,
                    sent_count=state.sent_count + 1,
                    next_wake=end_at + state.inter_send_delay,
                    pending=None,
                    tx_started_at=None,
                ),
                None,
                [end],
            )
    return state, None, []


def transmit_next(
    state: TxNodeState,
    now: float = 0.0,
) -> tuple[TxNodeState, SymbolBlock | None, list[NodeEvent]]:
    """次の 1 パケットを生成から送信完了まで進める.

    各段を起床時刻どおりに実行し、TxEnd（または TxError）で止まる。
    """
    events: list[NodeEvent] = []
    sent: SymbolBlock | None = None
    t = max(now, state.last_time)
    while True:
        t = max(t, state.next_wake)
        state, block, step_events = tx_step(state, t)
        events.extend(step_events)
        if block is not None:
            sent = block
        kinds = {e.kind for e in step_events}
        if EventKind.TX_END in kinds or EventKind.TX_ERROR in kinds:
            return state, sent, events
