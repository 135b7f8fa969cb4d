"""Exception hierarchy.

Analysis-level degeneracies get their own types so callers can distinguish
"this quantity is undefined on this input" from programming errors. An
undefined measure must never be silently reported as 0.
"""


class AssortnetError(Exception):
    """Base class for all library-specific errors."""


class AllZeroWeights(AssortnetError):
    """Every edge weight is zero: the network is empty and cannot be
    normalized into an edge distribution."""


class DegenerateAttribute(AssortnetError):
    """The attribute has no variation under the edge distribution, so the
    assortativity measure is undefined (not zero)."""


class NumericalFailure(AssortnetError):
    """A quantity that is non-negative in exact arithmetic came out more
    negative than rounding alone can explain."""


class UnknownEducationCode(AssortnetError):
    """An education code was not covered by the recode map."""

    def __init__(self, code: str):
        super().__init__(f"education code {code!r} is not in the recode map")
        self.code = code


class EmptyOccupation(AssortnetError):
    """An occupation has no records to build a distribution from."""


class TooFewOccupations(AssortnetError):
    """Fewer than two occupations survive filtering; no network exists."""


class ZeroWorkforceGroup(AssortnetError):
    """A declared group has zero weighted presence in the workforce, so
    representation ratios against it are undefined."""


class ConfigError(AssortnetError):
    """A configuration file or schema declaration is invalid."""
