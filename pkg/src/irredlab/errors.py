"""Error taxonomy shared by the library and the CLI exit-code contract."""


class IrredlabError(Exception):
    """Base class for all library errors."""


class DomainError(IrredlabError):
    """Input is structurally valid but mathematically out of domain."""


class ResourceError(IrredlabError):
    """A configured bound (order cap, lattice cap, factor bound) was exceeded."""


class UsageError(IrredlabError):
    """Malformed descriptor, unknown predicate or theorem id, bad arguments."""


class ConsistencyError(IrredlabError):
    """An internal cross-check failed; indicates a bug, never user error."""
