"""Exception hierarchy shared by every nilpo module."""


class NilpoError(Exception):
    """Base class for all errors raised by nilpo."""


class FieldMismatchError(NilpoError, ValueError):
    pass


class DimensionError(NilpoError, ValueError):
    pass


class NotLieError(NilpoError, ValueError):
    pass


class NotNilpotentError(NilpoError, ValueError):
    pass


class PreconditionError(NilpoError, ValueError):
    pass


class ExpError(NilpoError, ValueError):
    """exp of a derivation is undefined or fails to be an automorphism."""


class DegenerateConstruction(NilpoError):
    """A construction is impossible for the given field (not an input mistake)."""


class DegenerateInChar2(DegenerateConstruction):
    def __init__(self, msg="degenerate in characteristic 2"):
        super().__init__(msg)


class NoSuitableScalar(DegenerateConstruction):
    pass


class ParseError(NilpoError, ValueError):
    """Input could not be parsed.

    ``line``/``col`` are 1-based; 0 means unknown.  JSON schema errors locate
    themselves by ``path`` (e.g. ``$.products[2].rhs[0].c``) instead.
    """

    kind = "parse error"

    def __init__(self, message, line=0, col=0, path=None):
        self.message = message
        self.line = line
        self.col = col
        self.path = path
        super().__init__(self.__str__())

    @property
    def location(self) -> str:
        if self.path and not self.line:
            return self.path
        return f"{self.line}:{self.col}"

    def __str__(self):
        return f"{self.location}: {self.kind}: {self.message}"


class DSLSyntaxError(ParseError):
    kind = "syntax error"


class IndexRangeError(ParseError):
    kind = "index out of range"


class DuplicateProductError(ParseError):
    kind = "duplicate product"


class ScalarFieldError(ParseError):
    kind = "scalar not in field"


class StructureError(ParseError):
    kind = "structure violation"


class SchemaError(ParseError):
    kind = "schema violation"
