"""Lead selections for featurization and lead sets for report rows."""

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from core.errors import UnknownLeadSet
from core.logging import get_logger
from core.models.common import STANDARD_LEADS
from core.models.dynamics import FeatureVector

logger = get_logger(__name__)

DISPLAY_NAMES = {
    "i": "I", "ii": "II", "iii": "III", "avr": "aVR", "avl": "aVL", "avf": "aVF",
    "v1": "V1", "v2": "V2", "v3": "V3", "v4": "V4", "v5": "V5", "v6": "V6",
    "vx": "Vx", "vy": "Vy", "vz": "Vz",
}
LIMB_LEADS = ("i", "ii", "iii")
ALL_TWELVE = "12 leads combined"


@dataclass(frozen=True)
class LeadSet:
    """A report row: features of ``leads`` concatenated in order."""

    name: str
    leads: tuple[str, ...]


def display_name(lead: str) -> str:
    return DISPLAY_NAMES.get(lead, lead.upper())


def combined_name(leads: Sequence[str]) -> str:
    if tuple(leads) == STANDARD_LEADS:
        return ALL_TWELVE
    return ", ".join(display_name(lead) for lead in leads) + " combined"


def parse_lead_selection(selection: str) -> tuple[str, ...] | None:
    """Leads to featurize: ``all12``/``table`` -> the 12 standard leads,
    ``all`` -> every lead of each record (None), otherwise a comma list."""
    selection = selection.strip().lower()
    if selection in ("all12", "table"):
        return STANDARD_LEADS
    if selection == "all":
        return None
    return tuple(token.strip() for token in selection.split(",") if token.strip())


def resolve_lead_sets(selection: str, available: Sequence[str]) -> list[LeadSet]:
    """
    Expand a lead-set selection against the leads present in a features file.

    ``table`` gives each standard lead alone, then I, II, III combined, then
    all 12 combined. ``all12`` gives only the 12-lead row; a single lead gives
    its own row; a comma list gives one combined row.

    Raises:
        UnknownLeadSet: A requested lead is not in ``available``
    """
    selection = selection.strip().lower()
    if selection == "table":
        sets = [LeadSet(display_name(lead), (lead,)) for lead in STANDARD_LEADS]
        sets += [LeadSet(combined_name(LIMB_LEADS), LIMB_LEADS), LeadSet(ALL_TWELVE, STANDARD_LEADS)]
    elif selection == "all12":
        sets = [LeadSet(ALL_TWELVE, STANDARD_LEADS)]
    else:
        leads = tuple(token.strip() for token in selection.split(",") if token.strip())
        if not leads:
            raise UnknownLeadSet(f"empty lead set {selection!r}")
        name = display_name(leads[0]) if len(leads) == 1 else combined_name(leads)
        sets = [LeadSet(name, leads)]

    missing = sorted({lead for s in sets for lead in s.leads}.difference(available))
    if missing:
        raise UnknownLeadSet(
            f"lead set {selection!r} needs leads absent from the features: {missing}",
            missing=missing,
        )
    return sets


def feature_matrix(
    vectors: Sequence[FeatureVector], lead_set: LeadSet
) -> tuple[np.ndarray, list[str], list[str]]:
    """Rows (max_b0, max_b1 per lead, concatenated) of records holding every lead of the set."""
    rows, labels, record_ids = [], [], []
    for vector in vectors:
        if not set(lead_set.leads).issubset(vector.lead_names):
            logger.info("record_excluded", record_id=vector.record_id, lead_set=lead_set.name)
            continue
        rows.append(vector.as_array(lead_set.leads))
        labels.append(vector.label)
        record_ids.append(vector.record_id)
    width = 2 * len(lead_set.leads)
    matrix = np.array(rows, dtype=np.float64).reshape(len(rows), width)
    return matrix, labels, record_ids
