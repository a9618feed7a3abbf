"""Synthetic records: ODE trajectories plus seeded Gaussian measurement noise."""

from collections.abc import Sequence

import numpy as np

from core.errors import OdeError
from core.logging import get_logger
from core.models.common import STANDARD_LEADS, UNLABELED
from core.models.dynamics import CoefficientTrack, OdeInitialState
from core.models.signal import LeadSignal, SignalRecord
from services.ode_core.solver import solve_ode

logger = get_logger(__name__)

# ADC units per mV of the PTB recordings (32768 / 16.384 mV)
PTB_GAIN = 2000.0


def default_lead_names(count: int) -> tuple[str, ...]:
    return tuple(STANDARD_LEADS[k] if k < len(STANDARD_LEADS) else f"sig{k}" for k in range(count))


def synth_record(
    tracks: Sequence[CoefficientTrack],
    inits: Sequence[OdeInitialState],
    fs: float,
    duration: float,
    noise_sd: float = 0.0,
    seed: int | np.random.SeedSequence = 0,
    *,
    lead_names: Sequence[str] | None = None,
    record_id: str = "synth",
    label: str = UNLABELED,
    gain: float = PTB_GAIN,
) -> SignalRecord:
    """
    Build a record whose lead k is the solution for ``tracks[k]`` from
    ``inits[k]`` plus i.i.d. N(0, noise_sd^2) noise.

    Noise for all leads comes from one generator seeded by ``seed``, drawn
    lead by lead, so the record is a pure function of its arguments.
    """
    if len(tracks) != len(inits) or not tracks:
        raise OdeError("need one initial state per coefficient track")
    if noise_sd < 0:
        raise OdeError(f"noise_sd must be non-negative, got {noise_sd}")
    names = tuple(lead_names) if lead_names is not None else default_lead_names(len(tracks))
    if len(names) != len(tracks):
        raise OdeError("need one lead name per coefficient track")

    rng = np.random.default_rng(seed)
    leads = []
    for name, track, init in zip(names, tracks, inits, strict=True):
        samples = solve_ode(track, init, fs, duration).x
        if noise_sd > 0:
            samples = samples + rng.normal(0.0, noise_sd, samples.shape)
        leads.append(LeadSignal(name, samples, gain=gain, baseline=0))

    logger.debug("record_synthesized", record_id=record_id, leads=len(leads), noise_sd=noise_sd)
    return SignalRecord(record_id, fs, tuple(leads), label)
