"""
Exception classes raised by the pynambugraphs API
"""
from abc import ABCMeta, abstractmethod


class _NGAbstractException(Exception, metaclass=ABCMeta):

    @abstractmethod
    def __init__(self, msg):
        super().__init__(msg)


class NGMaxOrderExceededException(_NGAbstractException):
    """
    A total derivative would leave the jet ring it was taken in.

    This signals a jet ring sized too small for the computation, not a
    mathematical error. Size rings with ring_for_graphs() or pass a larger
    max_order.
    """
    MSG = "Jet derivative order exceeds ring bound"

    def __init__(self, variable_name, max_order):
        msg = f"{self.MSG}: {variable_name} needs order > {max_order}"
        super().__init__(msg)
        self.variable_name = variable_name
        self.max_order = max_order


class NGDimensionMismatchException(_NGAbstractException):
    MSG = "Operands live in different dimensions"

    def __init__(self, dim_a, dim_b):
        super().__init__(f"{self.MSG}: {dim_a} vs {dim_b}")
        self.dimensions = (dim_a, dim_b)


class NGUnsupportedDimensionException(_NGAbstractException):
    MSG = "Unsupported dimension"

    def __init__(self, dimension, supported=(2, 3, 4)):
        super().__init__(
            f"{self.MSG}: {dimension}, expected one of {list(supported)}")
        self.dimension = dimension
        self.supported = tuple(supported)


class NGGraphEncodingException(_NGAbstractException):
    MSG = "Invalid graph encoding"

    def __init__(self, detail, text=None):
        msg = f"{self.MSG}: {detail}"
        super().__init__(msg)
        self.detail = detail
        self.text = text


class NGParseException(NGGraphEncodingException):
    """
    Malformed encoding text. Carries the offending position so callers can
    print a caret under it.
    """
    MSG = "Malformed graph encoding"

    def __init__(self, detail, text=None, position=None):
        super().__init__(detail, text=text)
        self.position = position

    def diagnostic(self) -> str:
        if self.text is None or self.position is None:
            return str(self)
        pointer = " " * self.position + "^"
        return f"{self}\n  {self.text}\n  {pointer}"


class NGStructureException(NGGraphEncodingException):
    MSG = "Graph violates micro-graph structure"

    def __init__(self, detail, text=None):
        super().__init__(detail, text=text)


class NGUnindexedMonomialException(_NGAbstractException):
    MSG = "Monomial missing from index"

    def __init__(self, component, monomial):
        super().__init__(f"{self.MSG}: {component} {monomial}")
        self.component = component
        self.monomial = monomial


class NGShapeMismatchException(_NGAbstractException):
    MSG = "Matrix and vector shapes disagree"

    def __init__(self, detail):
        super().__init__(f"{self.MSG}: {detail}")


class NGNotASubspaceException(_NGAbstractException):
    MSG = "Subspace is not contained in the ambient space"

    def __init__(self, small_rank, combined_rank, big_rank):
        super().__init__(
            f"{self.MSG}: rank(small + big) = {combined_rank} != rank(big) = {big_rank}")
        self.small_rank = small_rank
        self.combined_rank = combined_rank
        self.big_rank = big_rank


class NGCalibrationException(_NGAbstractException):
    MSG = "Tetrahedral flow does not match the reference up to a constant"

    def __init__(self, detail):
        super().__init__(f"{self.MSG}: {detail}")


class NGCacheException(_NGAbstractException):
    MSG = "Evaluation cache failure"

    def __init__(self, detail, path=None):
        super().__init__(f"{self.MSG}: {detail}")
        self.path = path

    @classmethod
    def from_exception(cls, detail, path, exc):
        return cls(f"{detail}: {exc}", path=path)


class NGCacheCorruptionException(NGCacheException):
    MSG = "Corrupt evaluation cache entry"

    def __init__(self, detail, path=None):
        super().__init__(detail, path=path)


class NGConfigException(_NGAbstractException):
    MSG = "Invalid run configuration"

    def __init__(self, detail):
        super().__init__(f"{self.MSG}: {detail}")


class NGBudgetExceededException(_NGAbstractException):
    MSG = "Time budget exceeded"

    def __init__(self, what, budget):
        super().__init__(f"{self.MSG}: {what} after {budget} s")
        self.what = what
        self.budget = budget


class NGFixtureNotFoundException(_NGAbstractException):
    MSG = "No such fixture"

    def __init__(self, table, name):
        super().__init__(f"{self.MSG}: {table} {name}")
        self.table = table
        self.name = name


class NGUnknownFamilyException(_NGAbstractException):
    MSG = "Unknown graph family"

    def __init__(self, family, known=()):
        super().__init__(f"{self.MSG}: '{family}', expected one of {sorted(known)}")
        self.family = family


class NGJacobiException(_NGAbstractException):
    MSG = "Bivector fails the Jacobi identity"

    def __init__(self, dimension):
        super().__init__(f"{self.MSG}: [[P,P]] != 0 in dimension {dimension}")
        self.dimension = dimension


class NGSolutionCheckException(_NGAbstractException):
    """
    A coefficient vector returned by the solver does not reproduce its
    right-hand side when the combination is re-evaluated.
    """
    MSG = "Solution fails re-evaluation"

    def __init__(self, what):
        super().__init__(f"{self.MSG}: {what}")
        self.what = what
