"""Waveform record models.

Samples are stored as read-only float64 arrays in physical units (mV), so a
record can be shared freely between threads and worker processes.
"""

from dataclasses import dataclass, field

import numpy as np

from core.errors import InvalidRecord, MissingLead
from core.models.common import UNLABELED


def _frozen_array(values) -> np.ndarray:
    array = np.array(values, dtype=np.float64)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class LeadSignal:
    """One sampled lead.

    Attributes:
        name: Lead name, lower case (e.g. "i", "avr", "v6")
        samples: Amplitudes in mV
        gain: ADC units per mV used at decode time
        baseline: ADC value that maps to 0 mV
    """

    name: str
    samples: np.ndarray
    gain: float = 1.0
    baseline: int = 0

    def __post_init__(self) -> None:
        samples = _frozen_array(self.samples)
        if samples.ndim != 1:
            raise InvalidRecord(f"lead {self.name!r}: samples must be one-dimensional")
        if not np.all(np.isfinite(samples)):
            raise InvalidRecord(f"lead {self.name!r}: samples must be finite")
        if not self.gain > 0:
            raise InvalidRecord(f"lead {self.name!r}: gain must be positive, got {self.gain}")
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "baseline", int(self.baseline))

    def __len__(self) -> int:
        return int(self.samples.shape[0])

    def scaled(self, factor: float) -> "LeadSignal":
        """Copy with samples multiplied by ``factor``."""
        return LeadSignal(self.name, self.samples * factor, self.gain, self.baseline)


@dataclass(frozen=True, eq=False)
class SignalRecord:
    """Multi-lead record sampled at a common rate."""

    record_id: str
    fs: float
    leads: tuple[LeadSignal, ...]
    label: str = UNLABELED
    duration_samples: int = field(init=False)

    def __post_init__(self) -> None:
        leads = tuple(self.leads)
        if not self.fs > 0:
            raise InvalidRecord(f"record {self.record_id!r}: fs must be positive")
        if not leads:
            raise InvalidRecord(f"record {self.record_id!r}: no leads")
        names = [lead.name for lead in leads]
        if len(set(names)) != len(names):
            raise InvalidRecord(f"record {self.record_id!r}: duplicate lead names {names}")
        lengths = {len(lead) for lead in leads}
        if len(lengths) != 1:
            raise InvalidRecord(f"record {self.record_id!r}: leads differ in length {sorted(lengths)}")
        n = lengths.pop()
        if n < 2:
            raise InvalidRecord(
                f"record {self.record_id!r}: need at least 2 samples, got {n}"
            )
        object.__setattr__(self, "leads", leads)
        object.__setattr__(self, "fs", float(self.fs))
        object.__setattr__(self, "duration_samples", n)

    @property
    def lead_names(self) -> tuple[str, ...]:
        return tuple(lead.name for lead in self.leads)

    @property
    def times(self) -> np.ndarray:
        """Sample times in seconds, starting at 0."""
        return np.arange(self.duration_samples) / self.fs

    def lead(self, name: str) -> LeadSignal:
        """Look up a lead by case-insensitive name."""
        wanted = name.lower()
        for lead in self.leads:
            if lead.name.lower() == wanted:
                return lead
        raise MissingLead(f"record {self.record_id!r} has no lead {name!r}", lead=name)

    def with_label(self, label: str) -> "SignalRecord":
        return SignalRecord(self.record_id, self.fs, self.leads, label)
