"""Exception types shared across the toolkit.

Every error that carries a witness stores it in a structured attribute so
callers (and the CLI) can serialize it instead of parsing messages.
"""


class IncidenceLabError(Exception):
    """Base class for all toolkit errors."""


class UnknownLabel(IncidenceLabError):
    def __init__(self, label):
        super().__init__(f"unknown element label: {label!r}")
        self.label = label


class NotAPreorder(IncidenceLabError):
    """Raised when a relation fails reflexivity or transitivity.

    ``witness`` is ``(x,)`` for a missing self-loop or ``(x, y, z)`` for a
    transitivity failure (x <= y and y <= z but not x <= z).
    """

    def __init__(self, reason, witness):
        super().__init__(f"not a preorder ({reason}; witness {witness})")
        self.reason = reason
        self.witness = witness


class TooLarge(IncidenceLabError):
    pass


class ParseError(IncidenceLabError):
    pass


class ZeroDenominator(ParseError):
    pass


class CharTwoRejected(IncidenceLabError):
    """Characteristic 2 violates the standing 2-torsion-free hypothesis."""


class DivisionByNonUnit(IncidenceLabError):
    pass


class NotComparable(IncidenceLabError):
    def __init__(self, x, y):
        super().__init__(f"elements not comparable: {x!r} <= {y!r} does not hold")
        self.pair = (x, y)


class PreorderMismatch(IncidenceLabError):
    pass


class RingMismatch(IncidenceLabError):
    pass


class NotInvertible(IncidenceLabError):
    def __init__(self, witness, message=None):
        super().__init__(message or f"element not invertible (witness {witness!r})")
        self.witness = witness


class IndexMismatch(IncidenceLabError):
    pass


class NotLTD(IncidenceLabError):
    """The map is not a Lie triple derivation; ``witness`` is the first
    failing basis triple in scan order, as label pairs."""

    def __init__(self, witness):
        super().__init__(f"not a Lie triple derivation (witness triple {witness})")
        self.witness = witness


class NotApplicable(IncidenceLabError):
    pass


class VerificationFailed(IncidenceLabError):
    """A decomposition invariant that the theorems guarantee did not hold.

    This must never be swallowed: it flags either a bug or a genuine
    counterexample candidate and is surfaced to the caller untouched.
    """

    def __init__(self, what, witness):
        super().__init__(f"post-verification failed: {what} (witness {witness})")
        self.what = what
        self.witness = witness


class Improper(IncidenceLabError):
    """No derivation + central-map split exists; carries a certificate dict."""

    def __init__(self, certificate):
        super().__init__("improper Lie triple derivation certificate")
        self.certificate = certificate


class SingleComponent(IncidenceLabError):
    pass


class CapExceeded(IncidenceLabError):
    def __init__(self, size, cap):
        super().__init__(f"interval of size {size} exceeds materialization cap {cap}")
        self.size = size
        self.cap = cap


class RuleNotDerivation(IncidenceLabError):
    def __init__(self, interval, witness):
        super().__init__(
            f"rule is not a derivation on interval {interval} (witness {witness})"
        )
        self.interval = interval
        self.witness = witness


class DiagonalNeedsDerivation(IncidenceLabError):
    pass
