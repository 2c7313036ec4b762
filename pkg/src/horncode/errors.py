"""Exception types raised across the package."""


class HorncodeError(Exception):
    """Base class for all package-specific errors."""


class OutOfRangeExponent(HorncodeError):
    """An end exponent exceeded 1 or a horn exponent fell below 1."""


class NoRationalNearby(HorncodeError):
    """No fraction with a small enough denominator lies within tolerance."""


class EmptyIncidence(HorncodeError):
    """A singular label has no incident component."""


class InvalidProfile(HorncodeError):
    """A strip profile violates positivity or the exponent bound."""


class EmptyChain(HorncodeError):
    """A strip chain to glue was empty."""


class EmptyCycle(HorncodeError):
    """A strip cycle to glue was empty."""


class ParseError(HorncodeError):
    """Malformed curve text. Carries a 1-based input position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (position {position})")
        self.position = position


class UnboundedCheckFailed(HorncodeError):
    """The parsed curve does not escape to infinity."""


class EmptyAnnulus(HorncodeError):
    """A curve has no points with norm inside the requested annulus."""


class GridTooSmall(HorncodeError):
    """The radius grid is too small or too narrow for a slope estimate."""


class BadParams(HorncodeError):
    """Surface-family parameters out of range."""


class Disconnected(HorncodeError):
    """Two mesh vertices are not joined by any path."""


class NonManifold(HorncodeError):
    """An edge of the mesh belongs to more than two triangles."""


class LevelSetEmpty(HorncodeError):
    """The requested distance level set misses the mesh."""


class TooFewFarSamples(HorncodeError):
    """Not enough samples beyond the requested radius for a direction verdict."""


class PunctureTooClose(HorncodeError):
    """Two puncture points are closer than the removal radius allows."""
