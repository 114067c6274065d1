"""Exception types raised by the engine."""

from __future__ import annotations


class TPHopfError(Exception):
    """Base class for all engine errors."""


class ShapeError(TPHopfError, ValueError):
    """Structure tensors with inconsistent dimensions."""


class AxiomError(TPHopfError):
    """An upstream structure failed verification; the report is attached."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class BijectivityError(AxiomError):
    """The antipode is singular."""


class DerivationError(TPHopfError):
    def __init__(self, message: str, witness: tuple):
        super().__init__(message)
        self.witness = witness


class HypothesisError(TPHopfError):
    """A theorem hypothesis needed by a construction does not hold."""

    def __init__(self, message: str, failed: list[str] | tuple[str, ...] = ()):
        super().__init__(message)
        self.failed = list(failed)


class WellDefinednessError(TPHopfError):
    """A structure map does not descend to a quotient."""

    def __init__(self, message: str, structure_map: str, relation):
        super().__init__(message)
        self.structure_map = structure_map
        self.relation = relation


class TheoremViolation(TPHopfError, AssertionError):
    """A conclusion that must follow from verified hypotheses failed on concrete data."""


class InputError(TPHopfError):
    """Malformed input file; ``location`` points into the document."""

    def __init__(self, message: str, location: str = ""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location
