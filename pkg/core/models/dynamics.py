"""Models for ODE coefficient tracks, smoothed states and extracted features."""

import csv
import io
from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np

from core.errors import EmptyAfterTrim, InvalidTrack, MissingLead
from core.models.common import format_float, render_csv


def _readonly(values) -> np.ndarray:
    array = np.array(values, dtype=np.float64)
    array.setflags(write=False)
    return array


def _check_grid(grid: np.ndarray, what: str) -> None:
    if grid.ndim != 1 or grid.size == 0:
        raise InvalidTrack(f"{what}: grid must be a non-empty 1-d array")
    if grid.size > 1 and not np.all(np.diff(grid) > 0):
        raise InvalidTrack(f"{what}: grid must be strictly increasing")


def _parse_numeric_csv(text: str, columns: Sequence[str]) -> dict[str, np.ndarray]:
    reader = csv.reader(io.StringIO(text))
    try:
        header = [cell.strip() for cell in next(reader)]
    except StopIteration as e:
        raise InvalidTrack("empty CSV") from e
    if header != list(columns):
        raise InvalidTrack(f"expected columns {list(columns)}, got {header}")
    rows = [row for row in reader if row]
    try:
        data = np.array([[float(cell) for cell in row] for row in rows], dtype=np.float64)
    except ValueError as e:
        raise InvalidTrack(f"non-numeric value in CSV: {e}") from e
    data = data.reshape(len(rows), len(columns))
    return {name: data[:, k] for k, name in enumerate(columns)}


@dataclass(frozen=True, eq=False)
class CoefficientTrack:
    """Time-varying coefficients of x'' + b1(t) x' + b0(t) x = 0 sampled on a grid."""

    grid: np.ndarray
    b0: np.ndarray
    b1: np.ndarray

    def __post_init__(self) -> None:
        grid, b0, b1 = _readonly(self.grid), _readonly(self.b0), _readonly(self.b1)
        _check_grid(grid, "CoefficientTrack")
        if b0.shape != grid.shape or b1.shape != grid.shape:
            raise InvalidTrack("CoefficientTrack: b0 and b1 must match the grid length")
        if not (np.all(np.isfinite(grid)) and np.all(np.isfinite(b0)) and np.all(np.isfinite(b1))):
            raise InvalidTrack("CoefficientTrack: values must be finite")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "b0", b0)
        object.__setattr__(self, "b1", b1)

    def __len__(self) -> int:
        return int(self.grid.size)

    @classmethod
    def constant(
        cls, b0: float, b1: float, start: float, stop: float, step: float = 0.01
    ) -> "CoefficientTrack":
        n = int(round((stop - start) / step)) + 1
        grid = start + step * np.arange(n)
        return cls(grid, np.full(n, float(b0)), np.full(n, float(b1)))

    @classmethod
    def from_functions(
        cls,
        b0_fn: Callable[[np.ndarray], np.ndarray],
        b1_fn: Callable[[np.ndarray], np.ndarray],
        grid: np.ndarray,
    ) -> "CoefficientTrack":
        grid = np.asarray(grid, dtype=np.float64)
        return cls(
            grid,
            np.broadcast_to(b0_fn(grid), grid.shape),
            np.broadcast_to(b1_fn(grid), grid.shape),
        )

    def at(self, times) -> tuple[np.ndarray, np.ndarray]:
        """Linearly interpolated (b0, b1) at ``times``; constant beyond the ends."""
        times = np.asarray(times, dtype=np.float64)
        return np.interp(times, self.grid, self.b0), np.interp(times, self.grid, self.b1)

    def slice(self, start: float, stop: float) -> "CoefficientTrack":
        keep = (self.grid >= start) & (self.grid <= stop)
        if not np.any(keep):
            raise EmptyAfterTrim(f"no grid points in [{start}, {stop}]")
        return CoefficientTrack(self.grid[keep], self.b0[keep], self.b1[keep])

    def to_csv(self, digits: int | None = 10) -> str:
        rows = (
            (format_float(t, digits), format_float(b0, digits), format_float(b1, digits))
            for t, b0, b1 in zip(self.grid, self.b0, self.b1, strict=True)
        )
        return render_csv(("t", "b0", "b1"), rows)

    @classmethod
    def from_csv(cls, text: str) -> "CoefficientTrack":
        columns = _parse_numeric_csv(text, ("t", "b0", "b1"))
        return cls(columns["t"], columns["b0"], columns["b1"])


@dataclass(frozen=True)
class OdeInitialState:
    """Initial value problem data at time t0."""

    t0: float
    x0: float
    v0: float

    def __post_init__(self) -> None:
        if not all(np.isfinite([self.t0, self.x0, self.v0])):
            raise InvalidTrack("OdeInitialState: values must be finite")

    def scaled(self, factor: float) -> "OdeInitialState":
        return OdeInitialState(self.t0, self.x0 * factor, self.v0 * factor)


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Forward solution x(t), x'(t) on a uniform grid."""

    t: np.ndarray
    x: np.ndarray
    dx: np.ndarray

    def to_csv(self, digits: int | None = 10) -> str:
        rows = (
            (format_float(t, digits), format_float(x, digits), format_float(v, digits))
            for t, x, v in zip(self.t, self.x, self.dx, strict=True)
        )
        return render_csv(("t", "x", "dx"), rows)


@dataclass(frozen=True, eq=False)
class SmoothedState:
    """Estimated state and derivatives on an evaluation grid."""

    grid: np.ndarray
    x: np.ndarray
    dx: np.ndarray
    d2x: np.ndarray
    residual_variance: float

    def __post_init__(self) -> None:
        arrays = [_readonly(a) for a in (self.grid, self.x, self.dx, self.d2x)]
        _check_grid(arrays[0], "SmoothedState")
        if any(a.shape != arrays[0].shape for a in arrays[1:]):
            raise InvalidTrack("SmoothedState: arrays must have equal length")
        if not all(np.all(np.isfinite(a)) for a in arrays):
            raise InvalidTrack("SmoothedState: values must be finite")
        if not self.residual_variance >= 0:
            raise InvalidTrack("SmoothedState: residual_variance must be non-negative")
        for name, array in zip(("grid", "x", "dx", "d2x"), arrays, strict=True):
            object.__setattr__(self, name, array)
        object.__setattr__(self, "residual_variance", float(self.residual_variance))

    def __len__(self) -> int:
        return int(self.grid.size)

    def scaled(self, factor: float) -> "SmoothedState":
        return SmoothedState(
            self.grid,
            self.x * factor,
            self.dx * factor,
            self.d2x * factor,
            self.residual_variance * factor**2,
        )

    def trim(self, fraction: float) -> "SmoothedState":
        """Drop ``floor(fraction * n)`` grid points from each end."""
        if not 0 <= fraction < 0.5:
            raise InvalidTrack(f"trim fraction must be in [0, 0.5), got {fraction}")
        k = int(np.floor(fraction * len(self)))
        if len(self) - 2 * k < 1:
            raise EmptyAfterTrim(f"trimming {k} points per side leaves nothing")
        keep = slice(k, len(self) - k)
        return SmoothedState(
            self.grid[keep], self.x[keep], self.dx[keep], self.d2x[keep], self.residual_variance
        )

    def to_csv(self, digits: int | None = 10) -> str:
        rows = (
            tuple(format_float(v, digits) for v in values)
            for values in zip(self.grid, self.x, self.dx, self.d2x, strict=True)
        )
        return render_csv(("t", "x", "dx", "d2x"), rows)

    @classmethod
    def from_csv(cls, text: str, residual_variance: float = 0.0) -> "SmoothedState":
        columns = _parse_numeric_csv(text, ("t", "x", "dx", "d2x"))
        return cls(columns["t"], columns["x"], columns["dx"], columns["d2x"], residual_variance)


FEATURE_COLUMNS: tuple[str, ...] = (
    "record_id", "label", "lead", "max_b0", "argmax_b0_t", "max_b1", "argmax_b1_t",
)


@dataclass(frozen=True)
class LeadFeatures:
    """Max-coefficient feature pair of one lead."""

    lead: str
    max_b0: float
    argmax_b0_t: float
    max_b1: float
    argmax_b1_t: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "lead", self.lead.strip().lower())


@dataclass(frozen=True)
class FeatureVector:
    """Per-lead feature pairs of one record."""

    record_id: str
    label: str
    leads: tuple[LeadFeatures, ...]

    @property
    def lead_names(self) -> tuple[str, ...]:
        return tuple(item.lead for item in self.leads)

    def as_array(self, leads: Sequence[str] | None = None) -> np.ndarray:
        """
        Concatenate (max_b0, max_b1) over ``leads`` in the given order; lead
        names match case-insensitively.

        Raises:
            MissingLead: A requested lead has no features in this vector
        """
        by_name = {item.lead: item for item in self.leads}
        order = [name.strip().lower() for name in leads] if leads is not None else list(by_name)
        missing = [name for name in order if name not in by_name]
        if missing:
            raise MissingLead(
                f"record {self.record_id!r} has no features for {missing}", leads=missing
            )
        return np.array(
            [v for name in order for v in (by_name[name].max_b0, by_name[name].max_b1)],
            dtype=np.float64,
        )

    def to_rows(self, digits: int | None = 10) -> list[tuple[str, ...]]:
        return [
            (
                self.record_id,
                self.label,
                item.lead,
                format_float(item.max_b0, digits),
                format_float(item.argmax_b0_t, digits),
                format_float(item.max_b1, digits),
                format_float(item.argmax_b1_t, digits),
            )
            for item in self.leads
        ]
