"""テレメトリ: ThingSpeak 互換クライアントとモックサーバ."""

from lorasim.telemetry.channel import FeedEntry, TelemetryChannel, validate_write_key
from lorasim.telemetry.client import TelemetryTarget, upload
from lorasim.telemetry.server import ChannelRegistry, MockServer, MockThingSpeakHandler

__all__ = [
    "ChannelRegistry",
    "FeedEntry",
    "MockServer",
    "MockThingSpeakHandler",
    "TelemetryChannel",
    "TelemetryTarget",
    "upload",
    "validate_write_key",
]
