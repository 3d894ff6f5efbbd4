"""Exception hierarchy shared across the toolkit."""


class SkyblightError(Exception):
    """Base class for all toolkit errors."""


class MalformedManifest(SkyblightError):
    """Manifest file does not match the expected JSON schema."""


class DanglingReference(SkyblightError):
    """Annotation points at an image or category that does not exist."""


class UnsupportedFormat(SkyblightError):
    """Raster file is not an 8-bit PNG or baseline JPEG."""


class IoFailure(SkyblightError):
    """File could not be read or written."""


class ScheduleError(SkyblightError):
    """Severity parameter schedule is malformed or non-monotone."""


class DegenerateBox(SkyblightError):
    """Ground-truth box too small for a contrast statistic."""


class UnknownImage(SkyblightError):
    """Requested image id is not in the manifest."""


class UnknownImageId(SkyblightError):
    """Detection references an image id missing from the ground truth."""


class IncompleteTable(SkyblightError):
    """Evaluation table is missing a (corruption, severity) cell."""
