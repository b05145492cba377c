"""Command-line entry point.

    storygem --input text.txt --vectors model.vec --out map.svg
    storygem report --layout map.json --out-dir report/
    storygem serve --vectors model.vec --port 8080

Config precedence: CLI flags > --config JSON file > built-in defaults.
Exit codes: 0 success, 1 pipeline error (machine-readable JSON on stderr),
2 invalid configuration.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import fields as dataclass_fields
from pathlib import Path

from .pipeline import (
    ConfigError,
    PipelineError,
    RunConfig,
    config_from_dict,
    render_outputs,
    run_pipeline,
)

SUBCOMMANDS = ("run", "report", "serve")


def _add_run_flags(parser: argparse.ArgumentParser, *, for_serve: bool = False) -> None:
    parser.add_argument("--config", metavar="PATH", help="JSON config file")
    parser.add_argument("--vectors", dest="embedding_path", metavar="PATH",
                        help="pretrained .vec word-vector file")
    parser.add_argument("--stopwords", dest="stopword_path", metavar="PATH",
                        help="stop-word list (default: bundled English)")
    parser.add_argument("--keep-lexicon", dest="keep_lexicon_path", metavar="PATH",
                        help="only lay out words from this list")
    parser.add_argument("--language", help="input language tag (default en)")
    parser.add_argument("--max-words", type=int, help="vocabulary cap (default 150)")
    parser.add_argument("--k", type=int, help="k of the k-NN word graph (default 3)")
    parser.add_argument("--weighting", choices=("linear", "sqrt"),
                        help="frequency-to-area rule (default linear)")
    parser.add_argument("--container", help="circle, square, or polygon JSON path")
    parser.add_argument("--font", help="bundled metrics id or metrics JSON path")
    parser.add_argument("--optimize-font", dest="optimize_font",
                        action=argparse.BooleanOptionalAction,
                        help="LP-maximize each word (default on)")
    parser.add_argument("--rotation-step", type=float,
                        help="rotation sweep step in degrees (default 3)")
    parser.add_argument("--hyphenate", dest="hyphenate",
                        action=argparse.BooleanOptionalAction,
                        help="try hyphenation patterns (default on)")
    parser.add_argument("--seed", type=int, help="random seed (default 42)")
    parser.add_argument("--threads", type=int,
                        help="font-fit worker count (default: machine parallelism, "
                             "or STORYGEM_THREADS)")
    if not for_serve:
        parser.add_argument("--input", dest="input_path", metavar="PATH",
                            help="input plain-text file")
        parser.add_argument("--out", dest="output_path", metavar="PATH",
                            help="output file path")
        parser.add_argument("--format", choices=("svg", "json", "both"),
                            help="output format (default svg)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="storygem",
        description="Gapless word maps: frequency is area, labels are LP-maximized.",
    )
    sub = parser.add_subparsers(dest="command")

    run = sub.add_parser("run", help="lay out a text file (default command)")
    _add_run_flags(run)

    report = sub.add_parser("report", help="diagnostic figures + CSV from a layout JSON")
    report.add_argument("--layout", required=True, metavar="PATH",
                        help="layout JSON produced by --format json")
    report.add_argument("--out-dir", required=True, metavar="DIR",
                        help="directory for words.csv and figures")

    serve = sub.add_parser("serve", help="HTTP API + web UI")
    _add_run_flags(serve, for_serve=True)
    serve.add_argument("--port", type=int, default=8080)
    serve.add_argument("--host", default="127.0.0.1")
    return parser


def _merge_config(args: argparse.Namespace) -> RunConfig:
    config = RunConfig()
    if args.config:
        path = Path(args.config)
        if not path.is_file():
            raise ConfigError(f"--config: file not found: {path}")
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"--config: invalid JSON: {exc}") from exc
        config = config_from_dict(data, config)

    overrides = {}
    for f in dataclass_fields(RunConfig):
        value = getattr(args, f.name, None)
        if value is not None:
            overrides[f.name] = value
    return config_from_dict(overrides, config)


def _cmd_run(args: argparse.Namespace) -> int:
    try:
        config = _merge_config(args).validated()
    except ConfigError as exc:
        print(f"storygem: {exc}", file=sys.stderr)
        return 2

    started = time.perf_counter()
    try:
        text = Path(config.input_path).read_text(encoding="utf-8")
        result = run_pipeline(text, config)
        artifacts = render_outputs(result, config)
        for path, blob in artifacts.items():
            Path(path).parent.mkdir(parents=True, exist_ok=True)
            Path(path).write_bytes(blob)
    except PipelineError as exc:
        print(
            json.dumps(
                {"error": type(exc.cause).__name__, "stage": exc.stage,
                 "detail": str(exc.cause)}
            ),
            file=sys.stderr,
        )
        return 1
    except OSError as exc:
        print(json.dumps({"error": "OSError", "stage": "io", "detail": str(exc)}),
              file=sys.stderr)
        return 1

    elapsed = time.perf_counter() - started
    stats = result.doc.stats
    print(
        f"{len(result.doc.leaves())} words in {result.cluster_count} clusters | "
        f"max area error {stats['max_rel_area_error'] * 100:.2f}% | "
        f"{elapsed:.1f}s | wrote {', '.join(sorted(artifacts))}"
    )
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    from .report import write_report

    layout = Path(args.layout)
    if not layout.is_file():
        print(f"storygem: --layout: file not found: {layout}", file=sys.stderr)
        return 2
    try:
        written = write_report(layout, Path(args.out_dir))
    except Exception as exc:  # report inputs are user-supplied JSON
        print(json.dumps({"error": type(exc).__name__, "stage": "report",
                          "detail": str(exc)}), file=sys.stderr)
        return 1
    print(f"report: wrote {', '.join(str(p) for p in written)}")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    from .service import serve

    try:
        config = _merge_config(args).validated(need_input=False, need_output=False)
    except ConfigError as exc:
        print(f"storygem: {exc}", file=sys.stderr)
        return 2
    return serve(config, host=args.host, port=args.port)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and argv[0] not in SUBCOMMANDS and argv[0] not in ("-h", "--help"):
        argv.insert(0, "run")
    args = build_parser().parse_args(argv)
    if args.command in (None, "run"):
        return _cmd_run(args)
    if args.command == "report":
        return _cmd_report(args)
    return _cmd_serve(args)


if __name__ == "__main__":
    sys.exit(main())
