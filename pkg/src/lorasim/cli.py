"""lorasim コマンドライン.

終了コード: 0 成功 / 2 使い方の誤り / 3 シナリオ・設定の誤り / 4 テレメトリ通信失敗
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import logging
import sys
import time
from collections.abc import Callable, Mapping, Sequence
from pathlib import Path
from typing import Any, TextIO

from lorasim import config
from lorasim.channel.propagation import (
    path_loss_db,
    received_power_dbm,
    sensitivity_dbm,
    snr_db,
)
from lorasim.exceptions import (
    ConfigError,
    DomainError,
    LoraSimError,
    OversizePayload,
    ScenarioNotFoundError,
    TransportError,
)
from lorasim.node.events import EventKind, NodeEvent, write_event_log
from lorasim.node.lcd import format_lcd, render_lcd
from lorasim.phy.radio import (
    CodingRate,
    RadioConfig,
    bit_rate,
    payload_symbol_count,
    symbol_duration,
    time_on_air,
    tx_energy_mj,
)
from lorasim.sim.loader import ScenarioLoader
from lorasim.sim.montecarlo import calibrate_thresholds, ser_curve
from lorasim.sim.results import (
    write_header,
    write_jsonl,
    write_ser_csv,
    write_sweep_csv,
)
from lorasim.sim.runner import run_point_to_point, sweep_distance
from lorasim.sim.scenario import Fidelity, Scenario
from lorasim.telemetry.channel import TelemetryChannel
from lorasim.telemetry.client import TelemetryTarget, upload
from lorasim.telemetry.server import MockServer

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CONFIG = 3
EXIT_TRANSPORT = 4

DEMO_WRITE_KEY = "LORASIMDEMOKEY01"
DEFAULT_DISTANCES = "5,10,20,25,50"
DEFAULT_SNR_GRID = "-20,-15,-10,-5,0"


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma separated number list: {text!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma separated integer list: {text!r}") from None


def _format_cell(value: Any) -> str:
    match value:
        case None:
            return ""
        case bool():
            return "YES" if value else "No"
        case float():
            return repr(value)
    return str(value)


def _table_cell(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.6f}".rstrip("0").rstrip(".")
    return _format_cell(value)


def _emit(
    args: argparse.Namespace,
    meta: Mapping[str, Any],
    rows: Sequence[Mapping[str, Any]],
    out: TextIO,
) -> None:
    """表形式の結果を --format に従って書く."""
    fmt = args.format
    if fmt == "jsonl":
        out.write(json.dumps({"config": dict(meta)}, ensure_ascii=False, default=str) + "\n")
        for row in rows:
            out.write(json.dumps(dict(row), ensure_ascii=False, default=str) + "\n")
        return
    write_header(meta, out)
    if not rows:
        return
    columns = list(rows[0])
    if fmt == "csv":
        writer = csv.DictWriter(out, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _format_cell(v) for k, v in row.items()})
        return
    cells = [[_table_cell(row[c]) for c in columns] for row in rows]
    widths = [max(len(c), *(len(r[i]) for r in cells)) for i, c in enumerate(columns)]
    out.write("  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip() + "\n")
    for r in cells:
        out.write("  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() + "\n")


def _load_scenario(args: argparse.Namespace) -> Scenario:
    scenario = ScenarioLoader().load(args.scenario)
    overrides: dict[str, Any] = {}
    if getattr(args, "seed", None) is not None:
        overrides["seed"] = args.seed
    if getattr(args, "packets", None) is not None:
        overrides["n_packets"] = args.packets
    if getattr(args, "fidelity", None) is not None:
        overrides["fidelity"] = Fidelity(args.fidelity)
    if getattr(args, "shadowing_sigma", None) is not None:
        overrides["path_loss"] = dataclasses.replace(
            scenario.path_loss, shadowing_sigma_db=args.shadowing_sigma
        )
    return scenario.with_overrides(**overrides) if overrides else scenario


# --- airtime ---
def _cmd_airtime(args: argparse.Namespace, out: TextIO) -> int:
    ldro = {"auto": None, "on": True, "off": False}[args.ldro]
    try:
        cfg = RadioConfig(
            sf=args.sf,
            bw_hz=args.bw,
            cr_num=CodingRate.parse(args.cr).index,
            preamble_symbols=args.preamble,
            explicit_header=not args.implicit_header,
            crc_enabled=not args.no_crc,
            ldro=ldro,
        )
        n_payload = payload_symbol_count(cfg, args.payload)
    except (ConfigError, OversizePayload) as exc:
        args.parser.error(str(exc))
    toa = time_on_air(cfg, args.payload)
    meta = {
        "command": "airtime",
        "sf": cfg.sf,
        "bw_hz": cfg.bw_hz,
        "cr": cfg.coding_rate.label,
        "preamble_symbols": cfg.preamble_symbols,
        "explicit_header": cfg.explicit_header,
        "crc_enabled": cfg.crc_enabled,
        "ldro": cfg.ldro,
        "payload_bytes": args.payload,
    }
    row = {
        "t_sym_ms": symbol_duration(cfg) * 1000,
        "n_payload": n_payload,
        "toa_ms": round(toa * 1000, 6),
        "bit_rate_bps": bit_rate(cfg),
        "energy_mj": tx_energy_mj(cfg, args.payload),
    }
    _emit(args, meta, [row], out)
    return EXIT_OK


# --- budget ---
def _cmd_budget(args: argparse.Namespace, out: TextIO) -> int:
    scenario = _load_scenario(args)
    distances = args.distances or [scenario.distance_m]
    cfg, budget = scenario.radio, scenario.budget
    floor = budget.thermal_noise_floor_dbm(cfg.bw_hz)
    sensitivity = sensitivity_dbm(cfg, budget, scenario.thresholds)
    rows = []
    for d in distances:
        loss = path_loss_db(scenario.path_loss, d)
        prx = received_power_dbm(budget, loss)
        rows.append(
            {
                "distance_m": d,
                "path_loss_db": round(loss, 3),
                "prx_dbm": round(prx, 3),
                "noise_floor_dbm": round(floor, 3),
                "snr_db": round(snr_db(prx, budget, cfg.bw_hz), 3),
                "sensitivity_dbm": round(sensitivity, 3),
                "margin_db": round(prx - sensitivity, 3),
            }
        )
    _emit(args, {"command": "budget", **scenario.describe()}, rows, out)
    return EXIT_OK


# --- sweep ---
def _cmd_sweep(args: argparse.Namespace, out: TextIO) -> int:
    scenario = _load_scenario(args)
    rows = sweep_distance(scenario, args.distances, workers=args.workers)
    meta = {
        "command": "sweep",
        **scenario.describe(),
        "distances": ",".join(repr(d) for d in args.distances),
        "workers": args.workers,
    }
    if args.format == "csv":
        write_sweep_csv(rows, out, meta)
    elif args.format == "jsonl":
        out.write(json.dumps({"config": meta}, ensure_ascii=False) + "\n")
        write_jsonl(rows, out)
    else:
        _emit(args, meta, [dataclasses.asdict(r) for r in rows], out)
    return EXIT_OK


# --- ser ---
def _cmd_ser(args: argparse.Namespace, out: TextIO) -> int:
    fidelity = Fidelity(args.fidelity) if args.fidelity else None
    estimates = [
        e
        for sf in args.sf
        for e in ser_curve(sf, args.snr, args.trials, args.seed, fidelity=fidelity)
    ]
    meta = {
        "command": "ser",
        "sf": ",".join(str(s) for s in args.sf),
        "snr_db": ",".join(repr(s) for s in args.snr),
        "trials": args.trials,
        "seed": args.seed,
        "fidelity": args.fidelity or "auto",
    }
    if args.format == "csv":
        write_ser_csv(estimates, out, meta)
    elif args.format == "jsonl":
        out.write(json.dumps({"config": meta}, ensure_ascii=False) + "\n")
        write_jsonl(estimates, out)
    else:
        rows = [
            {
                "sf": e.sf,
                "snr_db": e.snr_db,
                "ser": e.ser,
                "ci_low": e.ci_low,
                "ci_high": e.ci_high,
                "fidelity": e.fidelity.value,
            }
            for e in estimates
        ]
        _emit(args, meta, rows, out)
    return EXIT_OK


# --- calibrate ---
def _cmd_calibrate(args: argparse.Namespace, out: TextIO) -> int:
    fidelity = Fidelity(args.fidelity) if args.fidelity else None
    table = calibrate_thresholds(args.sf, args.trials, args.seed, fidelity=fidelity)
    meta = {
        "command": "calibrate",
        "sf": ",".join(str(s) for s in args.sf),
        "trials": args.trials,
        "seed": args.seed,
        "fidelity": args.fidelity or "auto",
        "target_ser": 0.1,
    }
    rows = [{"sf": sf, "threshold_db": snr} for sf, snr in table.thresholds.items()]
    _emit(args, meta, rows, out)
    return EXIT_OK


# --- demo ---
class _DemoPrinter:
    """イベントを時刻どおり（time_scale 倍）に表示する."""

    def __init__(self, out: TextIO, time_scale: float, sleep: Callable[[float], None]) -> None:
        self.out = out
        self.time_scale = time_scale
        self.sleep = sleep
        self.last_ts: float | None = None
        self.lcd = render_lcd("")

    def __call__(self, event: NodeEvent) -> None:
        if self.last_ts is not None and self.time_scale > 0:
            self.sleep(max(0.0, event.timestamp - self.last_ts) * self.time_scale)
        self.last_ts = event.timestamp
        detail = event.detail.replace("\n", " | ")
        stamp = f"[{event.timestamp:10.6f}]"
        self.out.write(f"{stamp} {event.node_id:<2} {event.kind.value:<12} {detail}\n")
        if event.kind is EventKind.LCD_UPDATE:
            rows = event.detail.split("\n")
            self.lcd = (rows[0], rows[1])
            self.out.write(format_lcd(self.lcd) + "\n")
        self.out.flush()


def _cmd_demo(args: argparse.Namespace, out: TextIO) -> int:
    scenario = _load_scenario(args)
    overrides: dict[str, Any] = {"n_packets": args.count}
    if args.message is not None:
        overrides["message"] = args.message
    if args.distance is not None:
        overrides["distance_m"] = args.distance
    scenario = scenario.with_overrides(**overrides)

    server: MockServer | None = None
    channel: TelemetryChannel | None = None
    target = TelemetryTarget.from_env()
    if args.endpoint:
        key = args.write_key or (target.write_key if target else DEMO_WRITE_KEY)
        target = TelemetryTarget(endpoint=args.endpoint, write_key=key)
    else:
        server = MockServer().start()
        channel = server.add_channel(DEMO_WRITE_KEY, name="lorasim demo")
        target = TelemetryTarget(endpoint=server.url, write_key=DEMO_WRITE_KEY)

    meta = {
        "command": "demo",
        **scenario.describe(),
        "distance_m": scenario.distance_m,
        "endpoint": target.endpoint,
        "time_scale": args.time_scale,
    }
    if args.event_log:
        meta["event_log"] = str(args.event_log)
    write_header(meta, out)
    printer = _DemoPrinter(out, args.time_scale, time.sleep)
    event_log: TextIO | None = None

    def on_event(event: NodeEvent) -> None:
        printer(event)
        if event_log is not None:
            write_event_log([event], event_log)

    try:
        if args.event_log:
            event_log = args.event_log.open("w", encoding="utf-8")
        stats = run_point_to_point(scenario, uploader=target.uploader(), on_event=on_event)
        out.write(format_lcd(printer.lcd) + "\n")
        out.write(f"delivered {stats.delivered}/{stats.sent} (pdr={stats.pdr:.3f})\n")
        if channel is not None:
            entries = [e.entry_id for e in channel.feed()]
            out.write(f"telemetry entries: {entries}\n")
    finally:
        if server is not None:
            server.stop()
        if event_log is not None:
            event_log.close()
    return EXIT_OK


# --- upload ---
def _cmd_upload(args: argparse.Namespace, out: TextIO) -> int:
    env = TelemetryTarget.from_env()
    endpoint = args.endpoint or (env.endpoint if env else None)
    key = args.write_key or (env.write_key if env else None)
    if not endpoint or not key:
        args.parser.error(
            f"--endpoint/--write-key or {config.TELEMETRY_ENDPOINT_ENV}/"
            f"{config.TELEMETRY_WRITE_KEY_ENV} are required"
        )
    entry_id = upload(endpoint, key, args.field1)
    if entry_id == 0:
        logger.warning("update rejected by %s", endpoint)
    out.write(f"{entry_id}\n")
    return EXIT_OK


# --- serve ---
def _cmd_serve(args: argparse.Namespace, out: TextIO) -> int:
    server = MockServer(host=args.host, port=args.port)
    for key in args.write_key or [DEMO_WRITE_KEY]:
        channel = server.add_channel(key)
        out.write(f"# channel {channel.channel_id}: write_key={key}\n")
    out.write(f"# listening on {server.url}\n")
    out.flush()
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.stop()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    """引数パーサを組み立てる."""
    parser = argparse.ArgumentParser(prog="lorasim", description="LoRa point-to-point simulator")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v INFO, -vv DEBUG")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler: Callable[..., int], help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler, parser=p)
        return p

    def add_format(p: argparse.ArgumentParser, default: str = "table") -> None:
        p.add_argument("--format", choices=("table", "csv", "jsonl"), default=default)

    def add_scenario(p: argparse.ArgumentParser) -> None:
        p.add_argument("--scenario", default=config.DEFAULT_SCENARIO, help="name or YAML path")

    p = add("airtime", _cmd_airtime, "time on air")
    p.add_argument("--sf", type=int, default=12)
    p.add_argument("--bw", type=int, default=125_000)
    p.add_argument("--cr", default="4/5", help="4/5..4/8 or 1..4")
    p.add_argument("--payload", type=int, default=16)
    p.add_argument("--preamble", type=int, default=8)
    p.add_argument("--ldro", choices=("auto", "on", "off"), default="auto")
    p.add_argument("--no-crc", action="store_true")
    p.add_argument("--implicit-header", action="store_true")
    add_format(p)

    p = add("budget", _cmd_budget, "link budget per distance")
    add_scenario(p)
    p.add_argument("--distances", type=_float_list)
    add_format(p)

    p = add("sweep", _cmd_sweep, "PDR versus distance")
    add_scenario(p)
    p.add_argument("--distances", type=_float_list, default=_float_list(DEFAULT_DISTANCES))
    p.add_argument("--packets", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--fidelity", choices=[f.value for f in Fidelity])
    p.add_argument("--shadowing-sigma", type=float)
    p.add_argument("--workers", type=int, default=1)
    add_format(p, default="csv")

    p = add("ser", _cmd_ser, "Monte Carlo symbol error rate")
    p.add_argument("--sf", type=_int_list, default=[7])
    p.add_argument("--snr", type=_float_list, default=_float_list(DEFAULT_SNR_GRID))
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--fidelity", choices=[f.value for f in Fidelity])
    add_format(p)

    p = add("calibrate", _cmd_calibrate, "SNR thresholds at 10%% SER")
    p.add_argument("--sf", type=_int_list, default=[7, 8, 9, 10, 11, 12])
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--fidelity", choices=[f.value for f in Fidelity])
    add_format(p)

    p = add("demo", _cmd_demo, "two-node loopback with LCD and telemetry")
    add_scenario(p)
    p.add_argument("--message")
    p.add_argument("--distance", type=float)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int)
    p.add_argument("--endpoint")
    p.add_argument("--write-key")
    p.add_argument("--event-log", type=Path, help="write node events as JSON Lines to this file")
    p.add_argument("--time-scale", type=float, default=1.0, help="0 disables sleeping")

    p = add("upload", _cmd_upload, "single telemetry update")
    p.add_argument("--endpoint")
    p.add_argument("--write-key")
    p.add_argument("--field1", required=True)

    p = add("serve", _cmd_serve, "run the mock ThingSpeak server")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8080)
    p.add_argument("--write-key", action="append")
    return parser


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    """エントリポイント."""
    parser = build_parser()
    args = parser.parse_args(argv)
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    stream = out or sys.stdout
    try:
        return args.handler(args, stream)
    except ScenarioNotFoundError as exc:
        print(f"lorasim: {exc}", file=sys.stderr)
        print(f"available scenarios: {', '.join(exc.available)}", file=sys.stderr)
        return EXIT_CONFIG
    except ConfigError as exc:
        print(f"lorasim: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DomainError as exc:
        print(f"lorasim: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TransportError as exc:
        print(f"lorasim: {exc}", file=sys.stderr)
        return EXIT_TRANSPORT
    except LoraSimError as exc:
        print(f"lorasim: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
