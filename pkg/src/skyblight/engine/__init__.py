"""Corruption generators, severity schedules and the visibility guard."""

from .colorspace import linear_luminance, linear_to_srgb, srgb_to_linear
from .corruptions import (
    FOG_AIRLIGHT,
    FOG_MIN_TRANSMITTANCE,
    apply_corruption,
    color_quant_corrupt,
    color_quant_lut,
    defocus_corrupt,
    disk_kernel,
    fog_corrupt,
    iso_noise_corrupt,
    low_light_corrupt,
    rain_corrupt,
)
from .plasma import plasma_fractal
from .schedule import (
    DEFAULT_SCHEDULE,
    MONOTONE_SCALAR,
    CorruptionSpec,
    load_schedule_override,
    resolve_spec,
    schedule_to_dict,
    validate_schedule,
)
from .visibility import (
    DEFAULT_VISIBILITY_THRESHOLD,
    VisibilityReport,
    rms_contrast,
    visibility_check,
)

__all__ = [
    "DEFAULT_SCHEDULE",
    "DEFAULT_VISIBILITY_THRESHOLD",
    "FOG_AIRLIGHT",
    "FOG_MIN_TRANSMITTANCE",
    "MONOTONE_SCALAR",
    "CorruptionSpec",
    "VisibilityReport",
    "apply_corruption",
    "color_quant_corrupt",
    "color_quant_lut",
    "defocus_corrupt",
    "disk_kernel",
    "fog_corrupt",
    "iso_noise_corrupt",
    "linear_luminance",
    "linear_to_srgb",
    "load_schedule_override",
    "low_light_corrupt",
    "plasma_fractal",
    "rain_corrupt",
    "resolve_spec",
    "rms_contrast",
    "schedule_to_dict",
    "srgb_to_linear",
    "validate_schedule",
    "visibility_check",
]
