"""Exception types shared across the package."""


class DiffCechError(Exception):
    """Base class for all package errors."""


class TagError(DiffCechError):
    """Group elements with mismatched group tags were combined."""


class ClassError(DiffCechError):
    """A function fell outside its declared function class."""


class DegreeError(DiffCechError):
    """A cochain degree is not supported by the presentation."""


class CompatibilityError(DiffCechError):
    """Presentations are not compatible (e.g. for common refinement)."""


class CocycleError(DiffCechError):
    """A cochain expected to be a cocycle is not one."""


class FiberError(DiffCechError):
    """Two bundle points do not lie in the same fiber."""


class FreenessError(DiffCechError):
    """An operation requiring a free group action was called on a non-free one."""


class ParseError(DiffCechError):
    """A file or expression could not be parsed."""
