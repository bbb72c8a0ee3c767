"""Exception types shared across the package."""


class MeadowError(Exception):
    """Base class for all errors raised by meadowenum."""


class AxiomViolation(MeadowError):
    """A table fails a named law; ``witness`` holds the offending elements."""

    def __init__(self, axiom, witness=()):
        self.axiom = axiom
        self.witness = tuple(int(w) for w in witness)
        super().__init__(f"{axiom} fails at {self.witness}")


class CapExceeded(MeadowError):
    """Requested size lies beyond the configured enumeration cap."""


class DomainError(MeadowError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class UnsupportedFactorization(MeadowError, ValueError):
    pass


class CompositionError(MeadowError):
    """Edge homomorphisms of a directed lattice do not commute."""


class NotCommon(MeadowError):
    """Some J-set has more than one maximal element."""


class FormatError(MeadowError, ValueError):
    """Catalog file is malformed or carries an unknown format version."""
