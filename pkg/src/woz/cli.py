"""`woz` command-line entry point.

Subcommands: serve, bridge, validate, generate-env,
analyze {coverage,frequency,pacing}, replay.  Reports default to
human-readable text; every report supports `--format json`.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import logging
import os
import sys
from pathlib import Path

from . import analytics, bridge as bridge_mod, replay as replay_mod
from .envmap import entity_inventory_fragment, load_environment
from .errors import InvalidMap, WozError
from .inventory import collect_issues, load_inventory
from .router import SessionStore, read_transcript

log = logging.getLogger("woz")


def _emit(args, text_lines: list[str], payload: dict):
    out = "\n".join(text_lines) + "\n" if args.format == "text" else \
        json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
    if getattr(args, "out", None):
        Path(args.out).write_text(out, encoding="utf-8")
    sys.stdout.write(out)


def _addr(value: str) -> tuple[str, int]:
    host, _, port = value.rpartition(":")
    return host or "127.0.0.1", int(port)


def cmd_validate(args) -> int:
    doc = json.loads(Path(args.inventory).read_text(encoding="utf-8"))
    env = None
    if args.env_map:
        try:
            env = load_environment(args.env_map)
        except (InvalidMap, KeyError) as exc:
            _emit(args, [f"FAIL environment: {exc}"],
                  {"ok": False, "issues": [{"code": "InvalidMap",
                                            "message": str(exc)}]})
            return 1
    issues = collect_issues(doc, env=env)
    if issues:
        lines = [f"FAIL {code}: {message}" for code, message in issues]
        _emit(args, lines, {"ok": False, "issues": [
            {"code": c, "message": m} for c, m in issues]})
        return 1
    registry = load_inventory(doc, env=env)
    _emit(args, [f"OK {registry.button_count} buttons, "
                 f"{registry.tab_count} tabs, hash {registry.source_hash[:12]}"],
          {"ok": True, "buttons": registry.button_count,
           "tabs": registry.tab_count, "source_hash": registry.source_hash})
    return 0


def cmd_generate_env(args) -> int:
    env = load_environment(args.env_map)
    fragment = entity_inventory_fragment(env)
    sys.stdout.write(json.dumps(fragment, indent=2, ensure_ascii=False) + "\n")
    return 0


def cmd_analyze(args) -> int:
    if args.what == "frequency":
        report = analytics.frequency(analytics.Corpus.from_file(args.corpus))
        pct = 100 * report.repeated_fraction
        _emit(args, [
            f"total messages:    {report.total}",
            f"repeated total:    {report.repeated_total} ({pct:.1f}%)",
            f"repeated unique:   {report.repeated_unique}",
            f"singletons:        {len(report.singletons)}",
        ], {
            "total": report.total,
            "repeated_total": report.repeated_total,
            "repeated_unique": report.repeated_unique,
            "repeated_fraction": report.repeated_fraction,
            "singletons": list(report.singletons),
        })
    elif args.what == "coverage":
        registry = load_inventory(Path(args.inventory))
        corpus = analytics.Corpus.from_file(args.corpus)
        report = analytics.coverage(corpus, registry,
                                    partial_threshold=args.partial_threshold)
        e, p, n = report.percentages()
        _emit(args, [
            f"total:   {report.total}",
            f"exact:   {report.exact} ({e}%)",
            f"partial: {report.partial} ({p}%)",
            f"none:    {report.none} ({n}%)",
        ], {
            "total": report.total, "exact": report.exact,
            "partial": report.partial, "none": report.none,
            "percentages": {"exact": e, "partial": p, "none": n},
            "classifications": [
                {"message": c.message, "count": c.count, "class": c.klass,
                 "button_id": c.button_id, "similarity": c.similarity}
                for c in report.classifications],
        })
    else:  # pacing
        events = read_transcript(Path(args.log))
        report = analytics.pacing(events)
        _emit(args, [
            f"completion feedback: {report.completion_count}",
            f"  done: {report.breakdown['done']}",
            f"  sent: {report.breakdown['sent']}",
        ], {"completion_count": report.completion_count,
            "breakdown": report.breakdown})
    return 0


def cmd_replay(args) -> int:
    registry = load_inventory(Path(args.inventory))
    report = replay_mod.replay(Path(args.transcript), registry)
    lines = [f"events: {report.events_total}, "
             f"button presses replayed: {report.button_events}, "
             f"mismatches: {len(report.mismatches)}"]
    for m in report.mismatches:
        lines.append(f"MISMATCH seq={m.seq} button={m.button_id}: "
                     f"logged {m.logged_text!r} != regenerated {m.regenerated_text!r}")
    _emit(args, lines, {
        "events_total": report.events_total,
        "button_events": report.button_events,
        "mismatches": [
            {"seq": m.seq, "button_id": m.button_id,
             "logged_text": m.logged_text,
             "regenerated_text": m.regenerated_text}
            for m in report.mismatches],
    })
    return 0 if report.ok else 1


def cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    env = load_environment(args.env_map) if args.env_map else None
    registry = load_inventory(Path(args.inventory), env=env)
    store = SessionStore(registry=registry, log_dir=args.log_dir)
    host, port = _addr(args.listen)
    log.info("serving on %s:%d with %d buttons", host, port,
             registry.button_count)
    uvicorn.run(create_app(store, registry), host=host, port=port)
    return 0


def cmd_bridge(args) -> int:
    table = bridge_mod.MappingTable.load(args.table)
    handle = bridge_mod.run_bridge(table, _addr(args.wizard), _addr(args.robot))
    try:
        asyncio.run(handle.run_forever())
    except KeyboardInterrupt:
        pass
    stats = handle.stats.snapshot()
    log.info("bridge stats: %s", stats)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="woz")
    parser.add_argument("--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_report_flags(p):
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--out", default=None)

    p = sub.add_parser("serve", help="run the session server")
    p.add_argument("--listen", default=os.environ.get("WOZ_LISTEN", "127.0.0.1:8750"))
    p.add_argument("--inventory", required=True)
    p.add_argument("--env-map", default=None)
    p.add_argument("--log-dir", default=os.environ.get("WOZ_LOG_DIR"))
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("bridge", help="run the wizard/robot protocol bridge")
    p.add_argument("--table", required=True)
    p.add_argument("--wizard", required=True)
    p.add_argument("--robot", required=True)
    p.set_defaults(func=cmd_bridge)

    p = sub.add_parser("validate", help="check an inventory document")
    p.add_argument("--inventory", required=True)
    p.add_argument("--env-map", default=None)
    add_report_flags(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("generate-env",
                       help="emit entity buttons as an inventory fragment")
    p.add_argument("--env-map", required=True)
    p.set_defaults(func=cmd_generate_env)

    p = sub.add_parser("analyze", help="corpus and transcript analytics")
    asub = p.add_subparsers(dest="what", required=True)
    pc = asub.add_parser("coverage")
    pc.add_argument("--corpus", required=True)
    pc.add_argument("--inventory", required=True)
    pc.add_argument("--partial-threshold", type=float,
                    default=analytics.DEFAULT_PARTIAL_THRESHOLD)
    add_report_flags(pc)
    pc.set_defaults(func=cmd_analyze, what="coverage")
    pf = asub.add_parser("frequency")
    pf.add_argument("--corpus", required=True)
    add_report_flags(pf)
    pf.set_defaults(func=cmd_analyze, what="frequency")
    pp = asub.add_parser("pacing")
    pp.add_argument("--log", required=True)
    add_report_flags(pp)
    pp.set_defaults(func=cmd_analyze, what="pacing")

    p = sub.add_parser("replay", help="re-drive a transcript against an inventory")
    p.add_argument("--transcript", required=True)
    p.add_argument("--inventory", required=True)
    add_report_flags(p)
    p.set_defaults(func=cmd_replay)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except WozError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 1
    except FileNotFoundError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
