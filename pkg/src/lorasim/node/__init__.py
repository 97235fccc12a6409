"""送信・受信ノードの状態機械と LCD 描画."""

from lorasim.node.events import EventKind, NodeEvent, read_event_log, write_event_log
from lorasim.node.latency import LatencyEndpoint, end_to_end_latency
from lorasim.node.lcd import format_lcd, render_lcd
from lorasim.node.rx import Arrival, RxNodeState, RxState, RxStats, Uploader, rx_step
from lorasim.node.tx import ProcessingDelays, TxNodeState, TxState, transmit_next, tx_step

__all__ = [
    "Arrival",
    "EventKind",
    "LatencyEndpoint",
    "NodeEvent",
    "ProcessingDelays",
    "RxNodeState",
    "RxState",
    "RxStats",
    "TxNodeState",
    "TxState",
    "Uploader",
    "end_to_end_latency",
    "format_lcd",
    "read_event_log",
    "render_lcd",
    "rx_step",
    "transmit_next",
    "tx_step",
    "write_event_log",
]
