"""Severity parameter schedules for the seven corruption kinds.

Each kind has four rows indexed by severity 1..4; the distortion-controlling
scalar of every kind is strictly monotone across rows.  Override files (JSON
mapping kind name to a 4-row list) are validated against the same invariant.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

from ..core.types import ALL_KINDS, CorruptionKind, Severity
from ..errors import IoFailure, ScheduleError

Schedule = dict[CorruptionKind, list[dict[str, float]]]

DEFAULT_SCHEDULE: Schedule = {
    CorruptionKind.FOG: [
        {"intensity": 1.5, "decay": 0.70},
        {"intensity": 2.0, "decay": 0.62},
        {"intensity": 2.5, "decay": 0.55},
        {"intensity": 3.0, "decay": 0.48},
    ],
    CorruptionKind.RAIN: [
        {"density": 120.0, "length": 18.0, "opacity": 0.25, "contrast_scale": 0.95},
        {"density": 240.0, "length": 24.0, "opacity": 0.35, "contrast_scale": 0.90},
        {"density": 480.0, "length": 30.0, "opacity": 0.45, "contrast_scale": 0.85},
        {"density": 800.0, "length": 38.0, "opacity": 0.55, "contrast_scale": 0.80},
    ],
    CorruptionKind.LOW_LIGHT: [
        {"scale": 0.60, "photons": 60.0, "read_sigma": 0.02},
        {"scale": 0.45, "photons": 40.0, "read_sigma": 0.03},
        {"scale": 0.32, "photons": 25.0, "read_sigma": 0.04},
        {"scale": 0.22, "photons": 15.0, "read_sigma": 0.06},
    ],
    CorruptionKind.COLOR_QUANT: [
        {"bits": 5},
        {"bits": 4},
        {"bits": 3},
        {"bits": 2},
    ],
    CorruptionKind.ISO_NOISE: [
        {"photons": 200.0, "read_sigma": 0.02},
        {"photons": 100.0, "read_sigma": 0.04},
        {"photons": 50.0, "read_sigma": 0.06},
        {"photons": 25.0, "read_sigma": 0.08},
    ],
    CorruptionKind.FAR_FOCUS: [
        {"radius": 1.5},
        {"radius": 2.5},
        {"radius": 3.5},
        {"radius": 4.5},
    ],
    CorruptionKind.NEAR_FOCUS: [
        {"radius": 3.0},
        {"radius": 5.0},
        {"radius": 7.0},
        {"radius": 9.0},
    ],
}

# (controlling scalar, direction): +1 grows with severity, -1 shrinks
MONOTONE_SCALAR: dict[CorruptionKind, tuple[str, int]] = {
    CorruptionKind.FOG: ("intensity", +1),
    CorruptionKind.RAIN: ("density", +1),
    CorruptionKind.LOW_LIGHT: ("scale", -1),
    CorruptionKind.COLOR_QUANT: ("bits", -1),
    CorruptionKind.ISO_NOISE: ("photons", -1),
    CorruptionKind.FAR_FOCUS: ("radius", +1),
    CorruptionKind.NEAR_FOCUS: ("radius", +1),
}


@dataclass(frozen=True)
class CorruptionSpec:
    """A fully resolved transform: kind, severity and parameter record."""

    kind: CorruptionKind
    severity: Severity
    params: Mapping[str, float]
    overridden: bool = False


def resolve_spec(kind, severity, schedule: Schedule | None = None) -> CorruptionSpec:
    """Look up the parameter row for (kind, severity).

    `schedule` replaces the default rows for the kinds it lists; specs built
    from replaced rows are flagged as overridden.
    """
    k = kind if isinstance(kind, CorruptionKind) else CorruptionKind.from_name(kind)
    sev = severity if isinstance(severity, Severity) else Severity(severity)
    overridden = schedule is not None and k in schedule
    rows = schedule[k] if overridden else DEFAULT_SCHEDULE[k]
    return CorruptionSpec(k, sev, dict(rows[sev.level - 1]), overridden=overridden)


def validate_schedule(schedule: Schedule) -> Schedule:
    for kind, rows in schedule.items():
        if len(rows) != 4:
            raise ScheduleError(f"{kind.value}: schedule needs exactly 4 rows, got {len(rows)}")
        expected = set(DEFAULT_SCHEDULE[kind][0])
        for i, row in enumerate(rows):
            if set(row) != expected:
                raise ScheduleError(
                    f"{kind.value} row {i + 1}: fields {sorted(row)} != {sorted(expected)}"
                )
        key, direction = MONOTONE_SCALAR[kind]
        values = [row[key] for row in rows]
        deltas = [b - a for a, b in zip(values, values[1:])]
        if not all(direction * d > 0 for d in deltas):
            raise ScheduleError(
                f"{kind.value}: {key} must be strictly "
                f"{'increasing' if direction > 0 else 'decreasing'} across severities, "
                f"got {values}"
            )
    return schedule


def load_schedule_override(path: str | Path) -> Schedule:
    """Read a schedule override file and validate it."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise IoFailure(f"cannot read schedule {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ScheduleError(f"schedule {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ScheduleError("schedule root must be a JSON object keyed by kind")
    schedule: Schedule = {}
    for name, rows in raw.items():
        try:
            kind = CorruptionKind.from_name(name)
        except ValueError as exc:
            raise ScheduleError(str(exc)) from exc
        if not isinstance(rows, list):
            raise ScheduleError(f"{name}: rows must be a list")
        schedule[kind] = [{k: float(v) for k, v in row.items()} for row in rows]
    return validate_schedule(schedule)


def schedule_to_dict(schedule: Schedule | None = None) -> dict:
    """Resolved schedule in the override-file JSON shape."""
    merged = dict(DEFAULT_SCHEDULE)
    if schedule:
        merged.update(schedule)
    return {kind.value: [dict(row) for row in merged[kind]] for kind in ALL_KINDS}
