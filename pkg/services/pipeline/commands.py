"""Pipeline commands: featurize, evaluate, synth, compare-spline, fetch.

Each command reads its declared inputs, writes its declared outputs into an
output directory and returns a small result object; the CLI layer only
parses arguments and maps errors to exit codes.
"""

import math
import time
from collections.abc import Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass
from itertools import pairwise
from pathlib import Path

import numpy as np

from core.config import PipelineConfig, Settings
from core.errors import CardiodynError, ConfigError, EmptyAfterTrim, EmptyOutput, SingleClass
from core.logging import get_logger
from core.models.common import format_float, order_classes, render_csv
from core.models.dynamics import CoefficientTrack, FeatureVector, OdeInitialState, SmoothedState
from core.models.signal import SignalRecord
from core.tracing import create_span
from services.coeff_estimator import (
    EstimatorConfig,
    featurize_record,
    fit_lead,
    read_features_csv,
    trim_count,
    write_features_csv,
)
from services.evaluation import run_cv, write_reports
from services.ingest import (
    ManifestEntry,
    RetryConfig,
    fetch_file,
    load_record,
    parse_csv,
    read_manifest,
    read_record,
    write_manifest,
    write_record,
)
from services.ode_core import sample_count, solve_ode, synth_record
from services.pipeline.lead_sets import feature_matrix, parse_lead_selection, resolve_lead_sets
from services.pipeline.prometheus import PipelineMetrics
from services.pipeline.schemas import SynthSpec
from services.smoother import SmootherConfig, cubic_spline_fit

logger = get_logger(__name__)


@contextmanager
def _stage(metrics: PipelineMetrics, name: str) -> Iterator[None]:
    started = time.perf_counter()
    with create_span(name):
        yield
    metrics.observe_stage(name, time.perf_counter() - started)


def _finish(out_dir: Path, config: PipelineConfig, metrics: PipelineMetrics | None) -> None:
    (out_dir / "config.env").write_text(config.dump_env(), encoding="utf-8")
    if metrics is not None:
        metrics.write(out_dir / "metrics.prom")


# ============================================================================
# featurize
# ============================================================================


@dataclass(frozen=True)
class FeaturizeResult:
    features_path: Path
    rejects_path: Path
    featurized: int
    rejected: int


@dataclass(frozen=True)
class _Rejected:
    record_id: str
    code: str
    reason: str


def _featurize_entry(args) -> FeatureVector | _Rejected:
    entry, leads, smoother_cfg, estimator_cfg, csv_fs = args
    try:
        record = load_record(entry, csv_fs)
        return featurize_record(record, leads, smoother_cfg, estimator_cfg)
    except CardiodynError as exc:
        return _Rejected(entry.record_id, exc.code, f"{exc.code}: {exc.message}")
    except OSError as exc:
        return _Rejected(entry.record_id, type(exc).__name__, f"{type(exc).__name__}: {exc}")


def cmd_featurize(
    manifest: Path,
    config: PipelineConfig,
    out_dir: Path,
    *,
    workers: int = 1,
    metrics_enabled: bool = True,
) -> FeaturizeResult:
    """
    Featurize every manifest record; unreadable or unfittable records are
    listed in ``rejects.csv`` and never abort the batch.

    Raises:
        EmptyOutput: No record produced features
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    metrics = PipelineMetrics()
    entries = read_manifest(manifest)
    leads = parse_lead_selection(config.leads)
    smoother_cfg, estimator_cfg = config.smoother_config(), config.estimator_config()
    jobs = [(entry, leads, smoother_cfg, estimator_cfg, config.csv_fs) for entry in entries]

    with _stage(metrics, "featurize"):
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                outcomes = list(pool.map(_featurize_entry, jobs))
        else:
            outcomes = [_featurize_entry(job) for job in jobs]

    vectors: list[FeatureVector] = []
    rejects: list[_Rejected] = []
    for outcome in outcomes:
        if isinstance(outcome, _Rejected):
            rejects.append(outcome)
            metrics.record_rejected(outcome.code)
            logger.warning("record_rejected", record_id=outcome.record_id, reason=outcome.reason)
        else:
            vectors.append(outcome)
            metrics.record_featurized(len(outcome.leads))

    features_path = write_features_csv(vectors, out_dir / "features.csv")
    rejects_path = out_dir / "rejects.csv"
    rejects_path.write_text(
        render_csv(("record_id", "reason"), [(r.record_id, r.reason) for r in rejects]),
        encoding="utf-8",
    )
    _finish(out_dir, config, metrics if metrics_enabled else None)
    logger.info("featurize_finished", featurized=len(vectors), rejected=len(rejects))

    if not vectors:
        raise EmptyOutput(f"no record of {len(entries)} produced features", rejected=len(rejects))
    return FeaturizeResult(features_path, rejects_path, len(vectors), len(rejects))


# ============================================================================
# evaluate
# ============================================================================


def _binary_classes(labels: Sequence[str], positive: str) -> tuple[str, ...]:
    classes = order_classes(labels)
    if positive in classes:
        return (positive, *[c for c in classes if c != positive])
    logger.warning("positive_label_absent", positive=positive, classes=list(classes))
    return classes


def _subjects(manifest: Path | None, record_ids: Sequence[str]) -> list[str]:
    if manifest is None:
        raise ConfigError("cv_group_by_subject needs a manifest with a subject column")
    by_record = {entry.record_id: entry.subject for entry in read_manifest(manifest)}
    return [by_record.get(record_id) or record_id for record_id in record_ids]


def cmd_evaluate(
    features: Path,
    config: PipelineConfig,
    out_dir: Path,
    *,
    manifest: Path | None = None,
    workers: int = 1,
    metrics_enabled: bool = True,
) -> list[Path]:
    """
    Cross-validate one SVM per configured lead set and write the report tables.

    Raises:
        SingleClass: The features hold a single class
        UnknownLeadSet: A lead set needs leads absent from the features
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    metrics = PipelineMetrics()
    vectors = read_features_csv(features)
    labels = [vector.label for vector in vectors]
    if len(set(labels)) < 2:
        raise SingleClass(f"features hold a single class {sorted(set(labels))}")

    task = config.task
    if task == "auto":
        task = "binary" if len(set(labels)) == 2 else "multiclass"
    classes = _binary_classes(labels, config.positive_label) if task == "binary" else order_classes(labels)

    available = sorted({lead for vector in vectors for lead in vector.lead_names})
    lead_sets = resolve_lead_sets(config.lead_sets, available)
    manifest = manifest or config.manifest
    grid = config.svm_grid()

    reports = []
    with _stage(metrics, "evaluate"):
        for lead_set in lead_sets:
            x, set_labels, record_ids = feature_matrix(vectors, lead_set)
            groups = _subjects(manifest, record_ids) if config.cv_group_by_subject else None
            with create_span("lead_set", {"lead_set": lead_set.name, "rows": len(set_labels)}):
                report = run_cv(
                    x,
                    set_labels,
                    config.cv_folds,
                    grid,
                    config.cv_seed,
                    task=task,
                    classes=classes,
                    groups=groups,
                    inner_folds=config.cv_inner_folds,
                    workers=workers,
                )
            reports.append((lead_set.name, report))
            metrics.set_test_accuracy(lead_set.name, report.mean_metrics("test").accuracy)
            logger.info("lead_set_evaluated", lead_set=lead_set.name, rows=len(set_labels))

    written = write_reports(reports, out_dir)
    _finish(out_dir, config, metrics if metrics_enabled else None)
    return written


# ============================================================================
# synth
# ============================================================================


def cmd_synth(spec_path: Path, out_dir: Path) -> Path:
    """
    Generate a labelled WFDB corpus from a JSON SynthSpec.

    Record ``k`` (1-based) of class ``L`` is named ``<l>kkk``; each record draws
    its per-lead b0 jitter and noise from its own child of the master seed.
    The generating track of every lead is written to ``tracks/<id>_<lead>.csv``.

    Returns:
        Path of the written ``manifest.csv``
    """
    spec = SynthSpec.model_validate_json(Path(spec_path).read_text(encoding="utf-8"))
    out_dir = Path(out_dir)
    tracks_dir = out_dir / "tracks"
    tracks_dir.mkdir(parents=True, exist_ok=True)

    n = max(sample_count(spec.fs, spec.duration), 1)
    grid = np.linspace(0.0, spec.duration, n + 1)
    total = sum(class_spec.count for class_spec in spec.classes)
    children = iter(np.random.SeedSequence(spec.seed).spawn(total))

    entries: list[ManifestEntry] = []
    for class_spec in spec.classes:
        for index in range(1, class_spec.count + 1):
            record_id = f"{class_spec.label.lower()}{index:03d}"
            jitter_seed, noise_seed = next(children).spawn(2)
            offsets = np.random.default_rng(jitter_seed).normal(
                0.0, class_spec.b0_jitter, len(spec.leads)
            )
            tracks = [
                CoefficientTrack(grid, class_spec.b0.evaluate(grid, offset), class_spec.b1.evaluate(grid))
                for offset in offsets
            ]
            inits = [OdeInitialState(0.0, class_spec.x0, class_spec.v0)] * len(tracks)
            record = synth_record(
                tracks,
                inits,
                spec.fs,
                spec.duration,
                spec.noise_sd,
                noise_seed,
                lead_names=spec.leads,
                record_id=record_id,
                label=class_spec.label,
                gain=spec.gain,
            )
            base = write_record(record, out_dir)
            for lead, track in zip(spec.leads, tracks, strict=True):
                (tracks_dir / f"{record_id}_{lead}.csv").write_text(track.to_csv(), encoding="utf-8")
            entries.append(ManifestEntry(record_id, class_spec.label, base))

    manifest_path = write_manifest(entries, out_dir / "manifest.csv")
    featurize_config = corpus_featurize_config(spec)
    (out_dir / "featurize.env").write_text(
        f"smoother_bandwidth={featurize_config.smoother_bandwidth!r}\n"
        f"estimator_window={featurize_config.estimator_window!r}\n",
        encoding="utf-8",
    )
    logger.info(
        "corpus_synthesized",
        records=len(entries),
        out=str(out_dir),
        estimator_window=featurize_config.estimator_window,
    )
    return manifest_path


WINDOWS_PER_PERIOD = 6
WINDOW_STEP = 0.05


def corpus_featurize_config(spec: SynthSpec) -> PipelineConfig:
    """
    Featurize settings matched to the time scale of a synthetic corpus.

    The estimation window is a sixth of the shortest oscillation period any
    class reaches, rounded up to a multiple of 50 ms and never below the
    default; the smoother bandwidth is half the window. ECG-scale corpora keep
    the defaults. Slow corpora get windows wide enough that ADC quantization
    in the second-derivative estimate does not swamp the fit.
    """
    defaults = PipelineConfig()
    n = max(sample_count(spec.fs, spec.duration), 1)
    grid = np.linspace(0.0, spec.duration, n + 1)
    peak = max(float(np.max(class_spec.b0.evaluate(grid))) for class_spec in spec.classes)
    if not peak > 0:
        return defaults
    period = 2.0 * np.pi / math.sqrt(peak)
    window = round(WINDOW_STEP * math.ceil(round(period / WINDOWS_PER_PERIOD / WINDOW_STEP, 9)), 6)
    if window <= defaults.estimator_window:
        return defaults
    return defaults.model_copy(
        update={"estimator_window": window, "smoother_bandwidth": window / 2.0}
    )


# ============================================================================
# compare-spline
# ============================================================================


@dataclass(frozen=True)
class CompareResult:
    compare_path: Path
    summary_path: Path
    rmse_ode: float
    rmse_spline: float


def read_any_record(path: Path, csv_fs: float) -> SignalRecord:
    """Read a CSV record (``.csv``) or a WFDB record (with or without ``.hea``)."""
    path = Path(path)
    if path.suffix.lower() == ".csv":
        return parse_csv(path.read_text(encoding="utf-8"), csv_fs, record_id=path.stem)
    if path.suffix.lower() in (".hea", ".dat"):
        path = path.with_suffix("")
    return read_record(path)


def _rmse(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.sqrt(np.mean((a - b) ** 2)))


def ode_reconstruction(
    state: SmoothedState,
    track: CoefficientTrack,
    trim: int,
    fs: float,
    anchor: str = "grid",
) -> tuple[float, np.ndarray]:
    """
    Re-solve the fitted ODE over the grid points kept after trimming ``trim``
    points from each end.

    With ``anchor="grid"`` every grid interval is solved from the smoothed
    state at its left end, so smoother bias in b0 cannot accumulate into a
    phase drift. With ``anchor="start"`` one forward solve runs from the first
    kept grid point.

    Returns:
        Start time and the reconstructed samples from it, up to (not
        including) the last kept grid point

    Raises:
        EmptyAfterTrim: Fewer than two grid points are kept
    """
    stop = len(track) - trim
    if stop - trim < 2:
        raise EmptyAfterTrim(f"trimming {trim} points per side leaves no grid interval")
    interior = CoefficientTrack(track.grid[trim:stop], track.b0[trim:stop], track.b1[trim:stop])
    anchors = range(trim, stop) if anchor == "grid" else (trim, stop - 1)
    pieces = [
        solve_ode(
            interior,
            OdeInitialState(float(state.grid[a]), float(state.x[a]), float(state.dx[a])),
            fs,
            float(state.grid[b] - state.grid[a]),
        ).x
        for a, b in pairwise(anchors)
    ]
    return float(state.grid[trim]), np.concatenate(pieces)


def cmd_compare_spline(
    record_path: Path,
    lead: str,
    config: PipelineConfig,
    out_dir: Path,
) -> CompareResult:
    """
    Reconstruct one lead by re-solving the fitted ODE and by a natural cubic
    spline, and score both against the raw samples.

    The ODE starts from the smoothed state at the first grid point kept after
    edge trimming and runs to the last kept grid point, re-anchored at every
    grid point unless ``compare_anchor=start``. Rows cover the samples both
    reconstructions span. ``compare.csv`` ends with a ``# rmse_ode=...``
    summary line; ``summary.txt`` repeats it alone.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    record = read_any_record(record_path, config.csv_fs)
    signal = record.lead(lead.strip().lower())
    smoother_cfg: SmootherConfig = config.smoother_config()
    estimator_cfg: EstimatorConfig = config.estimator_config()
    fs = record.fs

    with create_span("compare_spline", {"record_id": record.record_id, "lead": signal.name}):
        state, track = fit_lead(record, signal.name, smoother_cfg, estimator_cfg)
        k = trim_count(len(track), estimator_cfg.edge_trim)
        start, recon = ode_reconstruction(state, track, k, fs, config.compare_anchor)
        spline = cubic_spline_fit(signal, fs, config.spline_knot_stride)

    first = int(round(start * fs))
    last = min(first + len(recon), len(spline.x))
    count = last - first
    t = np.arange(first, last) / fs
    y = signal.samples[first:last]
    x_ode = recon[:count]
    x_spline = spline.x[first:last]
    rmse_ode, rmse_spline = _rmse(y, x_ode), _rmse(y, x_spline)
    summary = f"rmse_ode={format_float(rmse_ode)} rmse_spline={format_float(rmse_spline)}\n"

    compare_path = out_dir / "compare.csv"
    compare_path.write_text(
        render_csv(
            ("t", "y", "x_ode_recon", "x_spline"),
            (
                tuple(format_float(v) for v in values)
                for values in zip(t, y, x_ode, x_spline, strict=True)
            ),
        )
        + f"# {summary}",
        encoding="utf-8",
    )
    summary_path = out_dir / "summary.txt"
    summary_path.write_text(summary, encoding="utf-8")
    (out_dir / "config.env").write_text(config.dump_env(), encoding="utf-8")
    logger.info("spline_compared", rmse_ode=rmse_ode, rmse_spline=rmse_spline, rows=count)
    return CompareResult(compare_path, summary_path, rmse_ode, rmse_spline)


# ============================================================================
# fetch
# ============================================================================


def cmd_fetch(url: str, dest: Path, sha256: str | None, settings: Settings) -> Path:
    retry_config = RetryConfig(max_retries=settings.fetch_max_retries)
    with create_span("fetch", {"url": url}):
        return fetch_file(
            url, Path(dest), sha256, timeout=settings.fetch_timeout, retry_config=retry_config
        )
