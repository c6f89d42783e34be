"""Command line entry point: ``sharpeval verify`` and ``sharpeval presets``."""
from __future__ import annotations

import argparse
import json
import logging
import sys
import warnings

from . import presets
from .config import ConfigError, load_config
from .runner import EXIT_CONFIG, run, to_csv, to_json

log = logging.getLogger("sharpeval")


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sharpeval", description="Numerical checks of sharp pointwise estimates.")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the checks in a config file or preset")
    src = v.add_mutually_exclusive_group(required=True)
    src.add_argument("--config", help="path to a JSON config")
    src.add_argument("--preset", help="name of a built-in preset")
    v.add_argument("--seed", type=int, help="override the config seed")
    v.add_argument("--out", help="report path (default: stdout, or output.path in the config)")
    v.add_argument("--format", choices=("csv", "json"), help="report format (default: output.format or json)")
    v.add_argument("--no-timestamp", action="store_true", help="omit timestamp and wall time from JSON reports")
    v.add_argument("-v", "--verbose", action="store_true")

    p = sub.add_parser("presets", help="list or show built-in presets")
    psub = p.add_subparsers(dest="action", required=True)
    psub.add_parser("list")
    show = psub.add_parser("show")
    show.add_argument("name")
    return ap


def _load(args):
    if args.preset:
        try:
            raw = presets.get(args.preset)
        except KeyError as exc:
            raise ConfigError("--preset", exc.args[0]) from exc
    else:
        try:
            with open(args.config) as fh:
                raw = json.load(fh)
        except OSError as exc:
            raise ConfigError(args.config, f"cannot read config: {exc.strerror}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(args.config, f"invalid JSON: {exc}") from exc
    return load_config(raw, args.seed)


def _verify(args) -> int:
    try:
        cfg = _load(args)
        summary, reports = run(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    fmt = args.format or cfg.out_format
    text = to_csv(summary, reports) if fmt == "csv" else to_json(summary, reports, not args.no_timestamp) + "\n"
    out = args.out or cfg.out_path
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    c = summary.counts
    print(
        f"{summary.total} checks: {c['pass']} pass, {c['fail']} fail, {c['inconclusive']} inconclusive "
        f"[{summary.config_digest}, {summary.wall_time:.1f}s]",
        file=sys.stderr,
    )
    for k, sp in summary.diagnostics["spaces"].items():
        print(f"  space {k}: {sp['geometry']} n={sp['n']} p={sp['p']} N={sp['N']!r}", file=sys.stderr)
    return summary.exit_status


def _presets(args) -> int:
    if args.action == "list":
        for name in presets.names():
            print(f"{name:20s} {presets.describe(name)['description']}")
        return 0
    try:
        d = presets.describe(args.name)
    except KeyError as exc:
        print(exc.args[0], file=sys.stderr)
        return EXIT_CONFIG
    print(json.dumps(d, indent=2, sort_keys=True))
    return 0


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if not getattr(args, "verbose", False):
        warnings.simplefilter("ignore", UserWarning)
    if args.command == "verify":
        return _verify(args)
    return _presets(args)


if __name__ == "__main__":
    sys.exit(main())
