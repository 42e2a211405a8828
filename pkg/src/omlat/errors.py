"""Exception hierarchy shared by every module."""

import os

DEFAULT_MAX_ELEMENTS = 4096


class OmlatError(Exception):
    """Base class for all errors raised by the package."""


class NotAPoset(OmlatError):
    pass


class NotALattice(OmlatError):
    pass


class BadBounds(OmlatError):
    pass


class NotAnOrtholattice(OmlatError):
    pass


class SizeLimit(OmlatError):
    pass


class BlockMismatch(OmlatError):
    pass


class BlockCount(OmlatError):
    pass


class BadBlock(OmlatError):
    """A designated block is not a Boolean subalgebra of its carrier."""


class CoconeMismatch(OmlatError):
    pass


class BadSpec(OmlatError):
    """Malformed inline spec, JSON document or scenario."""


def max_elements():
    """Element cap for any constructed lattice; OMLAT_MAX_ELEMENTS overrides."""
    raw = os.environ.get("OMLAT_MAX_ELEMENTS")
    if raw is None:
        return DEFAULT_MAX_ELEMENTS
    try:
        value = int(raw)
    except ValueError:
        raise BadSpec(f"OMLAT_MAX_ELEMENTS must be an integer, got {raw!r}")
    if value < 2:
        raise BadSpec("OMLAT_MAX_ELEMENTS must be at least 2")
    return value


def check_size(count, what="lattice"):
    cap = max_elements()
    if count > cap:
        raise SizeLimit(f"{what} would have {count} elements (limit {cap})")
