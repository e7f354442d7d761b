"""Command line driver: ``k3verify [SUITE ...]`` and ``k3verify export KIND [PATH]``."""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import __version__, checks, exports

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _check_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="k3verify",
        description="Run exact verification suites. Use 'k3verify export -h' for data export.")
    p.add_argument("suites", nargs="*", default=["all"], metavar="SUITE",
                   help="one or more of: " + ", ".join(checks.SUITES + ("all",)))
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--out", metavar="FILE", help="write the report here instead of stdout")
    p.add_argument("--ext-degree", type=int, choices=(1, 2, 3), default=3,
                   help="field extension depth for the characteristic 2 scans")
    p.add_argument("--jobs", type=int, default=1, help="run suites in N processes")
    p.add_argument("--cache", metavar="DIR", help="minimal vector cache (default: $K3V_CACHE)")
    p.add_argument("--timings", action="store_true",
                   help="record elapsed seconds per check (breaks byte-identical output)")
    p.add_argument("-v", "--verbose", action="store_true")
    p.add_argument("--version", action="version", version=f"k3verify {__version__}")
    return p


def _export_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="k3verify export", description="Write canonical data files.")
    p.add_argument("kind", choices=exports.KINDS)
    p.add_argument("path", nargs="?", help="output file (stdout if omitted; required for bin)")
    p.add_argument("--format", choices=("json", "csv", "bin"), default="json")
    p.add_argument("--cache", metavar="DIR")
    return p


def format_text(reports) -> str:
    lines = []
    for r in reports:
        lines.append(f"{r.status.upper():5} {r.id}")
        for m in r.messages:
            lines.append(f"      {m}")
    s = checks.summarize(reports)
    lines.append(f"{s['total']} checks: {s['pass']} pass, {s['fail']} fail, "
                 f"{s['warn']} warn, {s['info']} info")
    return "\n".join(lines) + "\n"


def format_json(reports) -> str:
    return json.dumps(checks.report_document(reports), indent=2, sort_keys=True) + "\n"


def _write(text_or_bytes, path: str | None) -> None:
    if path is None:
        if isinstance(text_or_bytes, bytes):
            sys.stdout.buffer.write(text_or_bytes)
        else:
            sys.stdout.write(text_or_bytes)
        return
    mode = "wb" if isinstance(text_or_bytes, bytes) else "w"
    with open(path, mode) as fh:
        fh.write(text_or_bytes)


def _run_export(argv) -> int:
    args = _export_parser().parse_intermixed_args(argv)
    try:
        data = exports.export_data(args.kind, args.format, cache_dir=args.cache)
    except exports.UnsupportedExport as e:
        print(f"k3verify export: {e}", file=sys.stderr)
        return EXIT_USAGE
    if isinstance(data, bytes) and args.path is None:
        print("k3verify export: binary output needs a PATH", file=sys.stderr)
        return EXIT_USAGE
    try:
        _write(data, args.path)
    except OSError as e:
        print(f"k3verify export: {e}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and argv[0] == "export":
        return _run_export(argv[1:])
    parser = _check_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        suites = checks.resolve_suites(args.suites)
    except checks.UnknownSuite as e:
        parser.print_usage(sys.stderr)
        print(f"k3verify: {e}", file=sys.stderr)
        return EXIT_USAGE
    if args.jobs < 1:
        parser.error("--jobs must be at least 1")
    reports = checks.run_checks(suites, cache_dir=args.cache, ext_degree=args.ext_degree,
                                jobs=args.jobs, timings=args.timings)
    text = format_json(reports) if args.format == "json" else format_text(reports)
    try:
        _write(text, args.out)
    except OSError as e:
        print(f"k3verify: {e}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_FAIL if any(r.status == "fail" for r in reports) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
