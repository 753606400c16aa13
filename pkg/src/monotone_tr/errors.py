"""Exception types shared across the package."""


class MonotoneTRError(Exception):
    pass


class ZeroDivisor(MonotoneTRError, ZeroDivisionError):
    """An element of the critical-point ring is not invertible."""


RingInversionFailure = ZeroDivisor


class ValuationError(MonotoneTRError, ValueError):
    pass


class CutoffExceeded(MonotoneTRError, ValueError):
    """A coefficient beyond the guaranteed-valid cutoff was requested."""


class SizeGuard(MonotoneTRError):
    """Brute-force enumeration refused: the instance exceeds the size guard."""


class SizeMismatch(MonotoneTRError, ValueError):
    pass


class UnstableInput(MonotoneTRError, ValueError):
    """(g, n) is (0, 1) or (0, 2) where a stable pair is required."""


class SpectatorAtPole(MonotoneTRError, ValueError):
    pass


class OrderGuard(MonotoneTRError):
    """Laurent working order insufficient even after the retry budget."""
