"""Command-line front end.

    gestureproxy replay --trace F --config F --screen WxH --out F
    gestureproxy replay --agent F --config F --out F [--trace-out F]
    gestureproxy stats --trace F --base-days A..B --period-days C..D [--apps id,...]
    gestureproxy timeline --trace F --day D --out F
    gestureproxy serve --port N [--config F]

Exit code 0 on success; nonzero with a line-numbered diagnostic on malformed
input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import analytics
from .agents import AgentScript, ScriptError, run_agent
from .budget import BudgetError
from .events import Screen, TraceError, dumps_canonical, write_trace
from .replay import load_log, replay_stream
from .session import SessionConfig


def _parse_screen(text: str) -> Screen:
    try:
        w, h = text.lower().split("x")
        return Screen(float(w), float(h))
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"screen must look like 400x800, got {text!r}") from e


def _parse_day_range(text: str) -> tuple[int, int]:
    try:
        a, b = text.split("..")
        first, last = int(a), int(b)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"day range must look like 0..6, got {text!r}") from e
    if last < first:
        raise argparse.ArgumentTypeError(f"empty day range {text!r}")
    return first, last


def _load_config(path: str | None, screen: Screen | None) -> SessionConfig:
    if path is None:
        config = SessionConfig()
    else:
        with open(path, encoding="utf-8") as fp:
            config = SessionConfig.from_json_obj(json.load(fp))
    if screen is not None:
        config = SessionConfig(
            intervention=config.intervention,
            scheduler=config.scheduler,
            recognizer=config.recognizer,
            budget=config.budget,
            screen=screen,
        )
    return config


def cmd_replay(args: argparse.Namespace) -> int:
    config = _load_config(args.config, args.screen)
    out_path = Path(args.out)
    if args.agent:
        with open(args.agent, encoding="utf-8") as fp:
            script = AgentScript.from_json(fp.read())
        result = run_agent(script, config)
        with out_path.open("w", encoding="utf-8", newline="\n") as out_fp:
            for record in result.output:
                out_fp.write(dumps_canonical(record) + "\n")
        if args.trace_out:
            with open(args.trace_out, "w", encoding="utf-8", newline="\n") as fp:
                write_trace(fp, result.trace)
        print(f"{len(result.output)} records -> {out_path}")
        return 0
    with open(args.trace, encoding="utf-8") as fp, out_path.open(
        "w", encoding="utf-8", newline="\n"
    ) as out_fp:
        count = replay_stream(fp, config, out_fp)
    print(f"{count} records -> {out_path}")
    return 0


def cmd_stats(args: argparse.Namespace) -> int:
    with open(args.trace, encoding="utf-8") as fp:
        log = load_log(fp)
    apps = args.apps.split(",") if args.apps else None
    stats = analytics.summarize(log.events, apps, args.base_days, args.period_days)
    print(json.dumps(stats.to_json_obj(), sort_keys=True, indent=2))
    return 0


def cmd_timeline(args: argparse.Namespace) -> int:
    with open(args.trace, encoding="utf-8") as fp:
        log = load_log(fp)
    doc = analytics.timeline_export(log.events, args.day)
    html = analytics.render_timeline_html(doc)
    Path(args.out).write_text(html, encoding="utf-8")
    print(f"day {args.day}: {len(doc.spans)} spans, {len(doc.markers)} markers -> {args.out}")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    from .server import serve_forever

    config = _load_config(args.config, args.screen)
    serve_forever(config, host=args.host, port=args.port, static_dir=args.static)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gestureproxy", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_replay = sub.add_parser("replay", help="replay a trace (or run an agent) through the engine")
    p_replay.add_argument("--trace", help="input trace file (JSONL)")
    p_replay.add_argument("--agent", help="agent script file (JSON) instead of a trace")
    p_replay.add_argument("--config", help="session config file (JSON)")
    p_replay.add_argument("--screen", type=_parse_screen, help="screen size, e.g. 400x800")
    p_replay.add_argument("--out", required=True, help="output log file (JSONL)")
    p_replay.add_argument("--trace-out", help="with --agent: also write the generated trace")
    p_replay.set_defaults(func=cmd_replay)

    p_stats = sub.add_parser("stats", help="usage metrics from a session log")
    p_stats.add_argument("--trace", required=True, help="trace or replay-output file")
    p_stats.add_argument("--base-days", type=_parse_day_range, required=True, metavar="A..B")
    p_stats.add_argument("--period-days", type=_parse_day_range, required=True, metavar="C..D")
    p_stats.add_argument("--apps", help="comma-separated app ids (default: all)")
    p_stats.set_defaults(func=cmd_stats)

    p_timeline = sub.add_parser("timeline", help="export one day's activity timeline")
    p_timeline.add_argument("--trace", required=True)
    p_timeline.add_argument("--day", type=int, required=True)
    p_timeline.add_argument("--out", required=True)
    p_timeline.set_defaults(func=cmd_timeline)

    p_serve = sub.add_parser("serve", help="serve the live session protocol (playground)")
    p_serve.add_argument("--port", type=int, required=True)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--config", help="session config file (JSON)")
    p_serve.add_argument("--screen", type=_parse_screen)
    p_serve.add_argument("--static", help="directory of playground assets to serve over HTTP")
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "replay" and bool(args.trace) == bool(args.agent):
        parser.error("replay needs exactly one of --trace / --agent")
    try:
        return args.func(args)
    except (TraceError, BudgetError, ScriptError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
