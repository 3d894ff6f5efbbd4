"""Corruption-as-augmentation sampling for finetuning runs.

A plan assigns each training image either "clean" or one (kind, severity)
spec, drawn from a weighted policy.  Decisions are seeded per image id, so a
plan is reproducible and independent of id order, while a fresh epoch_seed
gives every epoch new noise realizations.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .core.seeding import derive_seed
from .core.types import ALL_KINDS, ALL_SEVERITIES, CorruptionKind, Rgb8Image
from .engine.corruptions import apply_corruption
from .engine.schedule import Schedule, resolve_spec
from .errors import IoFailure, MalformedManifest
from .rng import Stream

AUGMENT_STREAM_LABEL = "augment"


@dataclass(frozen=True)
class AugmentPolicy:
    p_clean: float = 0.5
    kind_weights: dict[CorruptionKind, float] = field(
        default_factory=lambda: {k: 1.0 for k in ALL_KINDS}
    )
    severity_weights: dict[int, float] = field(
        default_factory=lambda: {s: 1.0 for s in ALL_SEVERITIES}
    )

    def __post_init__(self):
        if not 0.0 <= self.p_clean <= 1.0:
            raise ValueError("p_clean must be in [0, 1]")
        for name, weights in (("kind", self.kind_weights), ("severity", self.severity_weights)):
            if any(w < 0 for w in weights.values()):
                raise ValueError(f"{name} weights must be non-negative")
            if sum(weights.values()) <= 0:
                raise ValueError(f"{name} weights must have positive sum")

    def to_dict(self) -> dict:
        return {
            "p_clean": self.p_clean,
            "kind_weights": {k.value: w for k, w in self.kind_weights.items()},
            "severity_weights": {str(s): w for s, w in self.severity_weights.items()},
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "AugmentPolicy":
        kwargs = {}
        if "p_clean" in raw:
            kwargs["p_clean"] = float(raw["p_clean"])
        if "kind_weights" in raw:
            kwargs["kind_weights"] = {
                CorruptionKind.from_name(k): float(w) for k, w in raw["kind_weights"].items()
            }
        if "severity_weights" in raw:
            kwargs["severity_weights"] = {
                int(s): float(w) for s, w in raw["severity_weights"].items()
            }
        return cls(**kwargs)


@dataclass(frozen=True)
class PlanEntry:
    image_id: int
    kind: CorruptionKind | None  # None means the image stays clean
    severity: int | None

    @property
    def is_clean(self) -> bool:
        return self.kind is None


@dataclass
class AugmentPlan:
    epoch_seed: int
    policy: AugmentPolicy
    entries: list[PlanEntry]


def _pick(weights: list[float], u: float) -> int:
    total = sum(weights)
    r = u * total
    acc = 0.0
    for i, w in enumerate(weights):
        acc += w
        if r < acc:
            return i
    return len(weights) - 1


def sample_decision(image_id: int, policy: AugmentPolicy, epoch_seed: int) -> PlanEntry:
    """Decision for a single image id; identical to its plan-file entry."""
    stream = Stream(derive_seed(epoch_seed, image_id, AUGMENT_STREAM_LABEL, 1))
    u = stream.uniforms(1)[0]
    if u < policy.p_clean:
        return PlanEntry(image_id, None, None)
    u_kind, u_sev = stream.uniforms(2)
    kinds = list(ALL_KINDS)
    kind = kinds[_pick([policy.kind_weights.get(k, 0.0) for k in kinds], u_kind)]
    severities = list(ALL_SEVERITIES)
    severity = severities[_pick([policy.severity_weights.get(s, 0.0) for s in severities], u_sev)]
    return PlanEntry(image_id, kind, severity)


def sample_plan(image_ids: list[int], policy: AugmentPolicy, epoch_seed: int) -> AugmentPlan:
    """One decision per image id, independent across ids."""
    entries = [sample_decision(i, policy, epoch_seed) for i in image_ids]
    return AugmentPlan(epoch_seed=epoch_seed, policy=policy, entries=entries)


def apply_plan_entry(
    img: Rgb8Image,
    entry: PlanEntry,
    epoch_seed: int,
    schedule: Schedule | None = None,
) -> Rgb8Image:
    """Materialize one plan decision; boxes never need updating."""
    if entry.is_clean:
        return img
    spec = resolve_spec(entry.kind, entry.severity, schedule)
    seed = derive_seed(epoch_seed, entry.image_id, entry.kind, entry.severity)
    return apply_corruption(img, spec, seed)


def plan_to_dict(plan: AugmentPlan) -> dict:
    entries = []
    for e in plan.entries:
        if e.is_clean:
            entries.append({"image_id": e.image_id, "kind": "clean"})
        else:
            entries.append({"image_id": e.image_id, "kind": e.kind.value, "severity": e.severity})
    return {
        "epoch_seed": plan.epoch_seed,
        "policy": plan.policy.to_dict(),
        "entries": entries,
    }


def save_plan(plan: AugmentPlan, path: str | Path) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(plan_to_dict(plan), fh, indent=1)
            fh.write("\n")
    except OSError as exc:
        raise IoFailure(f"cannot write plan {path}: {exc}") from exc


def load_plan(path: str | Path) -> AugmentPlan:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise IoFailure(f"cannot read plan {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise MalformedManifest(f"plan {path} is not valid JSON: {exc}") from exc
    try:
        policy = AugmentPolicy.from_dict(raw["policy"])
        entries = []
        for e in raw["entries"]:
            if e["kind"] == "clean":
                entries.append(PlanEntry(int(e["image_id"]), None, None))
            else:
                entries.append(
                    PlanEntry(
                        int(e["image_id"]),
                        CorruptionKind.from_name(e["kind"]),
                        int(e["severity"]),
                    )
                )
        return AugmentPlan(int(raw["epoch_seed"]), policy, entries)
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedManifest(f"bad plan record: {exc!r}") from exc
