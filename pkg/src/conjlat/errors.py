"""Exception hierarchy.

Errors that reject an input structure derive from ValidationError so the
CLI can map them to a single exit code.
"""


class LatticeError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(LatticeError):
    """The input does not describe a valid structure."""


class AxiomViolation(ValidationError):
    def __init__(self, axiom, witness):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"{axiom} fails at {witness}")


class RangeError(ValidationError):
    pass


class NotUnionClosed(ValidationError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"family is not closed under union: {witness}")


class SizeMismatch(ValidationError):
    pass


class NotACongruence(ValidationError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"partition is not join-compatible: {witness}")


class NotAMorphism(ValidationError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"map is not a 1-join-morphism: {witness}")


class NotATopology(ValidationError):
    pass


class NotABase(ValidationError):
    pass


class SizeGuard(LatticeError):
    """A configured size bound was exceeded."""


class PreconditionFailed(LatticeError):
    def __init__(self, hypothesis, detail=""):
        self.hypothesis = hypothesis
        msg = f"precondition failed: {hypothesis}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class Degenerate(PreconditionFailed):
    def __init__(self, detail=""):
        super().__init__("at least two elements", detail)


class NotDistributive(PreconditionFailed):
    def __init__(self, witness):
        self.witness = witness
        super().__init__("distributive", f"refinement fails at {witness}")


class NotAFilter(PreconditionFailed):
    def __init__(self, detail=""):
        super().__init__("filter", detail)


class NotConjunctive(PreconditionFailed):
    def __init__(self, detail=""):
        super().__init__("conjunctive", detail)


class InternalInconsistency(LatticeError):
    """Equivalent formulations disagreed. Always an implementation bug."""


class GuaranteeViolated(LatticeError):
    """A proven guarantee failed to materialise. Always an implementation bug."""


class VerificationFailed(LatticeError):
    pass


class UnknownPredicate(LatticeError):
    pass


class UnknownSuite(LatticeError):
    pass


class ParseError(LatticeError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} at {position}"
        super().__init__(message)
