"""Command-line entry point.

Usage:
    cardiodyn [--log-level L] [--json-logs] [--workers N] <command> [options]

Commands:
    featurize       manifest -> features.csv (+ rejects.csv)
    evaluate        features.csv -> cross-validated report tables
    synth           JSON corpus spec -> WFDB records + manifest
    compare-spline  one lead -> ODE reconstruction vs cubic spline
    fetch           download one file over HTTP(S)

Errors leave a nonzero exit code and exactly one JSON line on stderr.
"""

import argparse
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any, NoReturn

from pydantic import ValidationError

from core.config import PipelineConfig, Settings, get_settings, load_pipeline_config
from core.errors import CardiodynError, ConfigError
from core.logging import bind_run_context, clear_run_context, configure_logging, get_logger
from core.models.common import ErrorResponse
from core.tracing import configure_tracing
from services.pipeline.commands import (
    cmd_compare_spline,
    cmd_evaluate,
    cmd_featurize,
    cmd_fetch,
    cmd_synth,
)

logger = get_logger(__name__)


class CliParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors surface as ConfigError."""

    def error(self, message: str) -> NoReturn:
        raise ConfigError(f"{self.prog}: {message}")


def build_parser() -> CliParser:
    parser = CliParser(prog="cardiodyn", description="ECG ODE-coefficient features and SVM evaluation")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")
    parser.add_argument("--json-logs", action="store_true", help="Emit JSON log lines")
    parser.add_argument("--workers", type=int, default=None, help="Worker processes (env CARDIODYN_WORKERS)")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=CliParser)

    featurize = commands.add_parser("featurize", help="Estimate max-coefficient features per record")
    featurize.add_argument("--manifest", type=Path, default=None)
    featurize.add_argument("--config", type=Path, default=None)
    featurize.add_argument("--leads", default=None, help="all12, all, or a comma list of leads")
    featurize.add_argument("--out", type=Path, default=None)

    evaluate = commands.add_parser("evaluate", help="Cross-validate SVMs per lead set")
    evaluate.add_argument("--features", type=Path, required=True)
    evaluate.add_argument("--config", type=Path, default=None)
    evaluate.add_argument("--task", choices=("auto", "binary", "multiclass"), default=None)
    evaluate.add_argument("--leads", default=None, help="table, all12, a lead, or a comma list")
    evaluate.add_argument("--manifest", type=Path, default=None, help="Supplies subject ids")
    evaluate.add_argument("--folds", type=int, default=None)
    evaluate.add_argument("--seed", type=int, default=None)
    evaluate.add_argument("--out", type=Path, default=None)

    synth = commands.add_parser("synth", help="Generate a synthetic WFDB corpus")
    synth.add_argument("--spec", type=Path, required=True)
    synth.add_argument("--out", type=Path, required=True)

    compare = commands.add_parser("compare-spline", help="Compare ODE reconstruction with a cubic spline")
    compare.add_argument("--record", type=Path, required=True)
    compare.add_argument("--lead", required=True)
    compare.add_argument("--config", type=Path, default=None)
    compare.add_argument("--knot-stride", type=int, default=None)
    compare.add_argument("--anchor", choices=("grid", "start"), default=None)
    compare.add_argument("--out", type=Path, default=None)

    fetch = commands.add_parser("fetch", help="Download a single file")
    fetch.add_argument("--url", required=True)
    fetch.add_argument("--sha256", default=None)
    fetch.add_argument("--out", type=Path, required=True)
    return parser


def _output_dir(args: argparse.Namespace, config: PipelineConfig) -> Path:
    out = args.out or config.output_dir
    if out is None:
        raise ConfigError("an output directory is required (--out or output_dir)")
    return Path(out)


def _require_file(path: Path, what: str) -> None:
    if not path.exists() and not path.with_name(f"{path.name}.hea").exists():
        raise ConfigError(f"{what} not found: {path}", path=str(path))


def _run(args: argparse.Namespace, settings: Settings) -> int:
    workers = args.workers if args.workers is not None else settings.workers
    if workers < 1:
        raise ConfigError(f"--workers must be at least 1, got {workers}")

    if args.command == "synth":
        _require_file(args.spec, "synth spec")
        print(cmd_synth(args.spec, args.out))
        return 0
    if args.command == "fetch":
        print(cmd_fetch(args.url, args.out, args.sha256, settings))
        return 0

    overrides: dict[str, Any] = {}
    if args.command == "featurize":
        overrides = {"manifest": args.manifest, "leads": args.leads}
    elif args.command == "evaluate":
        _require_file(args.features, "features file")
        overrides = {
            "task": args.task,
            "lead_sets": args.leads,
            "cv_folds": args.folds,
            "cv_seed": args.seed,
            "manifest": args.manifest,
        }
    elif args.command == "compare-spline":
        _require_file(args.record, "record")
        overrides = {"spline_knot_stride": args.knot_stride, "compare_anchor": args.anchor}
    config = load_pipeline_config(args.config, overrides)
    config.check_paths()
    out_dir = _output_dir(args, config)
    bind_run_context(seed=config.cv_seed, out=str(out_dir))

    if args.command == "featurize":
        if config.manifest is None:
            raise ConfigError("featurize needs a manifest (--manifest or manifest)")
        result = cmd_featurize(
            config.manifest, config, out_dir, workers=workers, metrics_enabled=settings.metrics_enabled
        )
        print(result.features_path)
    elif args.command == "evaluate":
        for path in cmd_evaluate(
            args.features, config, out_dir, workers=workers, metrics_enabled=settings.metrics_enabled
        ):
            print(path)
    else:
        result = cmd_compare_spline(args.record, args.lead, config, out_dir)
        print(result.summary_path.read_text(encoding="utf-8"), end="")
    return 0


def _report(code: str, message: str, exit_code: int, details: dict[str, Any] | None = None) -> int:
    response = ErrorResponse(error=code, message=message, exit_code=exit_code, details=details or {})
    print(response.model_dump_json(), file=sys.stderr)
    return exit_code


def _validation_message(exc: ValidationError) -> str:
    return "; ".join(
        f"{'.'.join(str(part) for part in error['loc']) or exc.title}: {error['msg']}"
        for error in exc.errors()
    )


def main(argv: Sequence[str] | None = None) -> int:
    """Run one command; returns the process exit code."""
    try:
        args = build_parser().parse_args(argv)
        settings = get_settings()
        configure_logging(
            log_level=args.log_level or settings.log_level,
            json_output=args.json_logs or settings.log_json,
            service_name=settings.otel_service_name,
        )
        configure_tracing(
            settings.otel_service_name,
            settings.otel_exporter_otlp_endpoint,
            settings.environment,
            enabled=settings.tracing_enabled,
        )
        bind_run_context(command=args.command)
        return _run(args, settings)
    except CardiodynError as exc:
        return _report(exc.code, exc.message, exc.exit_code, exc.context)
    except ValidationError as exc:
        return _report(ConfigError.__name__, _validation_message(exc), ConfigError.exit_code)
    except Exception as exc:
        logger.debug("command_crashed", exc_info=True)
        return _report(type(exc).__name__, str(exc).replace("\n", " "), 1)
    finally:
        clear_run_context()


if __name__ == "__main__":
    sys.exit(main())
