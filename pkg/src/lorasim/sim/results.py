"""結果の CSV / JSON Lines 入出力.

CSV の先頭には ``# key: value`` 形式の再現用ヘッダを置き、読み込み時は読み飛ばす。
浮動小数は ``repr`` で書くため、読み戻した値は元の値と一致する。
"""

from __future__ import annotations

import csv
import json
from collections.abc import Iterable, Mapping
from dataclasses import asdict
from typing import Any, TextIO

from lorasim.sim.montecarlo import SerEstimate
from lorasim.sim.runner import SweepRow
from lorasim.sim.scenario import Fidelity

SWEEP_COLUMNS = (
    "distance_m",
    "pdr",
    "delivered",
    "latency_mean_s",
    "latency_p95_s",
    "sent",
    "delivered_packets",
    "header_failures",
    "fec_failures",
    "crc_failures",
    "channel_lost",
    "misdelivered",
)

SER_COLUMNS = ("sf", "snr_db", "trials", "errors", "ser", "ci_low", "ci_high", "fidelity")


def _cell(value: Any) -> str:
    match value:
        case None:
            return ""
        case bool():
            return "YES" if value else "No"
        case float():
            return repr(value)
        case Fidelity():
            return value.value
    return str(value)


def _optional_float(text: str) -> float | None:
    return float(text) if text else None


def write_header(meta: Mapping[str, Any], stream: TextIO) -> None:
    """再現用ヘッダを ``# key: value`` 行で書く."""
    for key, value in meta.items():
        stream.write(f"# {key}: {value}\n")


def _data_lines(stream: TextIO) -> Iterable[str]:
    return (line for line in stream if line.strip() and not line.startswith("#"))


def sweep_row_cells(row: SweepRow) -> dict[str, str]:
    return {name: _cell(getattr(row, name)) for name in SWEEP_COLUMNS}


def write_sweep_csv(
    rows: Iterable[SweepRow],
    stream: TextIO,
    meta: Mapping[str, Any] | None = None,
) -> None:
    """距離スイープ結果を CSV で書く."""
    if meta:
        write_header(meta, stream)
    writer = csv.DictWriter(stream, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(sweep_row_cells(row))


def read_sweep_csv(stream: TextIO) -> list[SweepRow]:
    """write_sweep_csv の出力を SweepRow に読み戻す."""
    rows = []
    for rec in csv.DictReader(_data_lines(stream)):
        rows.append(
            SweepRow(
                distance_m=float(rec["distance_m"]),
                pdr=float(rec["pdr"]),
                delivered=rec["delivered"] == "YES",
                latency_mean_s=_optional_float(rec["latency_mean_s"]),
                latency_p95_s=_optional_float(rec["latency_p95_s"]),
                sent=int(rec["sent"]),
                delivered_packets=int(rec["delivered_packets"]),
                header_failures=int(rec["header_failures"]),
                fec_failures=int(rec["fec_failures"]),
                crc_failures=int(rec["crc_failures"]),
                channel_lost=int(rec["channel_lost"]),
                misdelivered=int(rec["misdelivered"]),
            )
        )
    return rows


def ser_cells(estimate: SerEstimate) -> dict[str, str]:
    return {name: _cell(getattr(estimate, name)) for name in SER_COLUMNS}


def write_ser_csv(
    estimates: Iterable[SerEstimate],
    stream: TextIO,
    meta: Mapping[str, Any] | None = None,
) -> None:
    """SER 推定結果を CSV で書く."""
    if meta:
        write_header(meta, stream)
    writer = csv.DictWriter(stream, fieldnames=SER_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for estimate in estimates:
        writer.writerow(ser_cells(estimate))


def read_ser_csv(stream: TextIO) -> list[SerEstimate]:
    return [
        SerEstimate(
            sf=int(rec["sf"]),
            snr_db=float(rec["snr_db"]),
            trials=int(rec["trials"]),
            errors=int(rec["errors"]),
            ci_low=float(rec["ci_low"]),
            ci_high=float(rec["ci_high"]),
            fidelity=Fidelity(rec["fidelity"]),
        )
        for rec in csv.DictReader(_data_lines(stream))
    ]


def to_record(item: SweepRow | SerEstimate) -> dict[str, Any]:
    """JSON Lines 用の辞書に変換する."""
    record = asdict(item)
    if isinstance(item, SerEstimate):
        record["fidelity"] = item.fidelity.value
        record["ser"] = item.ser
    return record


def write_jsonl(items: Iterable[SweepRow | SerEstimate], stream: TextIO) -> int:
    """1 行 1 レコードの JSON で書き、件数を返す."""
    count = 0
    for item in items:
        stream.write(json.dumps(to_record(item), ensure_ascii=False) + "\n")
        count += 1
    return count
