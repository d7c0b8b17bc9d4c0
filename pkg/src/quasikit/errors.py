"""Exception types raised across the toolkit.

Class names double as the diagnostic codes printed by the CLI, so they are
nouns without an ``Error`` suffix (like ``StopIteration``).
"""


class QuasikitError(Exception):
    """Base class for all domain errors."""


class NotLatin(QuasikitError):
    """A grid is not a Latin square; names the first violated line."""

    def __init__(self, kind: str, index: int):
        self.kind = kind  # "row" or "column"
        self.index = index
        super().__init__(f"{kind} {index} is not a permutation")


class SizeMismatch(QuasikitError):
    pass


class ShapeMismatch(QuasikitError):
    pass


class SymbolOutOfRange(QuasikitError):
    """A message symbol is >= the quasigroup order; reports its position."""

    def __init__(self, position: int, symbol: int, order: int):
        self.position = position
        self.symbol = symbol
        self.order = order
        super().__init__(
            f"symbol {symbol} at position {position} not in [0, {order})"
        )


class NotAGroup(QuasikitError):
    pass


class NotPrime(QuasikitError):
    pass


class SingularMatrix(QuasikitError):
    pass


class TooLarge(QuasikitError):
    pass


class BlockLengthMismatch(QuasikitError):
    pass


class NotCoprime(QuasikitError):
    pass


class InvalidCI(QuasikitError):
    pass


class InvalidRst(QuasikitError):
    pass


class NotIsotopic(QuasikitError):
    pass


class OrderMismatch(QuasikitError):
    pass


class NotPrimitive(QuasikitError):
    """Feedback polynomial failed the maximal-period check."""

    def __init__(self, message: str, period: int | None = None):
        self.period = period
        super().__init__(message)


class ZeroState(QuasikitError):
    pass


class NotPowerOfTwo(QuasikitError):
    pass


class Exhausted(QuasikitError):
    """Randomized search hit its attempt budget."""

    def __init__(self, attempts: int):
        self.attempts = attempts
        super().__init__(f"no admissible sample within {attempts} attempts")


class Inconsistent(QuasikitError):
    pass


class NotSubset(QuasikitError):
    pass


class Insufficient(QuasikitError):
    pass
