"""Exception types.

Validation errors double as report entries: validators return lists of
them, and ``raise_first`` turns a non-empty list into an exception.
"""


class DerlabError(Exception):
    pass


class ValidationError(DerlabError):
    """A law violation carrying the data that exhibits it."""

    def __init__(self, witness=None, message=None):
        self.witness = witness
        self.message = message or f"{type(self).__name__}: {witness!r}"
        super().__init__(self.message)

    def __eq__(self, other):
        return type(self) is type(other) and self.witness == other.witness

    def __hash__(self):
        return hash((type(self).__name__, repr(self.witness)))

    def as_dict(self):
        return {"type": type(self).__name__, "witness": self.witness, "message": self.message}


# core-cat
class MissingComposite(ValidationError):
    pass


class IllTypedComposite(ValidationError):
    pass


class AssociativityViolation(ValidationError):
    pass


class IdentityViolation(ValidationError):
    pass


class MalformedCategory(ValidationError):
    pass


class FunctorViolation(ValidationError):
    pass


class NaturalityViolation(ValidationError):
    pass


class BoundaryMismatch(DerlabError):
    pass


class CodomainMismatch(DerlabError):
    pass


# finset / kan
class DiagramViolation(ValidationError):
    pass


class TriangleFailure(ValidationError):
    pass


class MissingWitness(DerlabError):
    pass


class AxiomFailure(ValidationError):
    def __init__(self, axiom, witness=None, message=None):
        self.axiom = axiom
        super().__init__(witness, message or f"{axiom} fails at {witness!r}")


# twocat
class InterchangeViolation(ValidationError):
    pass


class CoherenceViolation(ValidationError):
    pass


class NonInvertibleNaturality2Cell(ValidationError):
    pass


class NotPointwiseEquivalence(DerlabError):
    def __init__(self, obj):
        self.obj = obj
        super().__init__(f"component at {obj!r} is not an equivalence")


# simplicial
class SimplicialIdentityViolation(ValidationError):
    pass


class DimensionOutOfRange(DerlabError):
    pass


class NotQuasiCategoryInput(DerlabError):
    pass


# cli
class ParseError(DerlabError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


class SchemaError(DerlabError):
    def __init__(self, message, path=()):
        self.path = tuple(path)
        loc = "".join(f"[{p}]" if isinstance(p, int) else f".{p}" for p in self.path)
        super().__init__(f"{loc.lstrip('.') or '<root>'}: {message}")


class UnknownCommand(DerlabError):
    pass


def raise_first(report):
    if report:
        raise report[0]
