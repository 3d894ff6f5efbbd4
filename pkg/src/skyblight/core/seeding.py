"""Deterministic per-image seed derivation.

Seeds are the 64-bit FNV-1a hash of a canonical ASCII string built from the
global seed, image id, corruption kind and severity level.  The string form
keeps the derivation trivially portable and stable forever.
"""

from __future__ import annotations

from dataclasses import dataclass

from .types import CorruptionKind, Severity

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK64 = 0xFFFFFFFFFFFFFFFF


def fnv1a_64(data: bytes) -> int:
    """64-bit FNV-1a hash."""
    h = _FNV_OFFSET
    for b in data:
        h ^= b
        h = (h * _FNV_PRIME) & _MASK64
    return h


@dataclass(frozen=True)
class SeedContext:
    global_seed: int
    image_id: int
    kind: CorruptionKind
    severity: Severity

    def derive(self) -> int:
        return derive_seed(self.global_seed, self.image_id, self.kind, self.severity.level)


def derive_seed(global_seed: int, image_id: int, kind, severity: int) -> int:
    """Per-image stream seed: FNV-1a-64 of "g=<G>|img=<id>|c=<kind>|s=<level>".

    `kind` may be a CorruptionKind or a bare stream label such as "augment".
    """
    name = kind.value if isinstance(kind, CorruptionKind) else str(kind)
    canon = f"g={global_seed}|img={image_id}|c={name}|s={severity}"
    return fnv1a_64(canon.encode("ascii"))
