"""
Exact sparse linear algebra over QQ for evaluation matrices: one row per
(xi component, monomial), one column per graph.

Row reduction is sympy's sparse DomainMatrix rref over QQ.
"""
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .ng_jetring import Monomial, to_rational
from .ng_multivector import Multivector
from .py_ng_exceptions import (
    NGNotASubspaceException,
    NGShapeMismatchException,
    NGUnindexedMonomialException
)

# A column: sparse row -> nonzero rational
Column = Dict[int, object]


class NoSolution:
    """
    Returned by solve_particular when b is not in the column space
    """
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __bool__(self):
        return False

    def __repr__(self):
        return "NoSolution"


NO_SOLUTION = NoSolution()


class MonomialIndex:
    """
    Row numbering for (xi key, monomial) pairs: keys in sorted order, and
    monomials within a key in canonical order
    """

    def __init__(self, basis: Dict[tuple, List[Monomial]]):
        self._rows: List[Tuple[tuple, Monomial]] = []
        self._lookup: Dict[Tuple[tuple, Monomial], int] = {}
        for key in sorted(basis):
            for monomial in sorted(basis[key]):
                self._lookup[(key, monomial)] = len(self._rows)
                self._rows.append((key, monomial))

    def __len__(self):
        return len(self._rows)

    def row(self, key: tuple, monomial: Monomial) -> int:
        try:
            return self._lookup[(key, monomial)]
        except KeyError as e:
            raise NGUnindexedMonomialException(key, monomial.display()) from e

    def __contains__(self, pair):
        return pair in self._lookup

    def label(self, row: int) -> Tuple[tuple, Monomial]:
        return self._rows[row]

    def keys(self) -> List[tuple]:
        return sorted({key for key, _ in self._rows})


def build_index(vectors: Iterable[Multivector]) -> MonomialIndex:
    """
    Index over the union of all monomials of every xi component

    Raises
    ------
    ValueError
        If the nonzero inputs are not all of one xi-degree
    """
    basis: Dict[tuple, set] = {}
    degrees = set()
    for vector in vectors:
        degree = vector.degree()
        if degree is None:
            continue
        degrees.add(degree)
        for key, poly in vector.components().items():
            basis.setdefault(key, set()).update(poly.monomials())
    if len(degrees) > 1:
        raise ValueError(f"Mixed xi-degrees {sorted(degrees)} in one index")
    return MonomialIndex({key: list(monomials) for key, monomials in basis.items()})


def vectorize(vector: Multivector, index: MonomialIndex) -> Column:
    column = {}
    for key, poly in vector.components().items():
        for monomial, coeff in poly.terms():
            column[index.row(key, monomial)] = coeff
    return column


class SparseRationalMatrix:
    """
    rows x cols matrix stored as {(row, col): nonzero QQ}
    """

    def __init__(self, rows: int, cols: int, entries: Dict[Tuple[int, int], object] = None):
        self.rows = rows
        self.cols = cols
        self._entries: Dict[Tuple[int, int], object] = {}
        for (r, c), value in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise NGShapeMismatchException(f"entry ({r}, {c}) outside {rows}x{cols}")
            value = to_rational(value)
            if value:
                self._entries[(r, c)] = value

    @classmethod
    def from_columns(cls, columns: Sequence[Column], rows: int) -> "SparseRationalMatrix":
        entries = {}
        for c, column in enumerate(columns):
            for r, value in column.items():
                entries[(r, c)] = value
        return cls(rows, len(columns), entries)

    @classmethod
    def identity(cls, size: int) -> "SparseRationalMatrix":
        return cls(size, size, {(i, i): QQ(1) for i in range(size)})

    def entries(self) -> Dict[Tuple[int, int], object]:
        return dict(self._entries)

    def entry(self, row: int, col: int):
        return self._entries.get((row, col), QQ(0))

    def column(self, col: int) -> Column:
        return {r: v for (r, c), v in self._entries.items() if c == col}

    def nnz(self) -> int:
        return len(self._entries)

    def to_domain_matrix(self) -> DomainMatrix:
        rows: Dict[int, Dict[int, object]] = {}
        for (r, c), value in self._entries.items():
            rows.setdefault(r, {})[c] = value
        return DomainMatrix(rows, (self.rows, self.cols), QQ)

    def apply(self, x: Column) -> Column:
        """
        M * x for a sparse column x over the column indices
        """
        result: Column = {}
        for (r, c), value in self._entries.items():
            xc = x.get(c)
            if xc:
                total = result.get(r, QQ(0)) + value * xc
                if total:
                    result[r] = total
                else:
                    result.pop(r, None)
        return result

    def hstack(self, other: "SparseRationalMatrix") -> "SparseRationalMatrix":
        if self.rows != other.rows:
            raise NGShapeMismatchException(f"{self.rows} rows vs {other.rows} rows")
        entries = dict(self._entries)
        for (r, c), value in other._entries.items():
            entries[(r, c + self.cols)] = value
        return SparseRationalMatrix(self.rows, self.cols + other.cols, entries)

    def to_triplets(self) -> str:
        """
        "rows cols" header, then one "row col p/q" line per entry, sorted
        """
        lines = [f"{self.rows} {self.cols}"]
        for (r, c) in sorted(self._entries):
            lines.append(f"{r} {c} {_format_rational(self._entries[(r, c)])}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_triplets(cls, text: str) -> "SparseRationalMatrix":
        lines = [line.split() for line in text.splitlines() if line.strip()]
        if not lines or len(lines[0]) != 2:
            raise NGShapeMismatchException("triplet text needs a 'rows cols' header")
        rows, cols = int(lines[0][0]), int(lines[0][1])
        entries = {}
        for fields in lines[1:]:
            if len(fields) != 3:
                raise NGShapeMismatchException(f"bad triplet line: {' '.join(fields)}")
            entries[(int(fields[0]), int(fields[1]))] = to_rational(fields[2])
        return cls(rows, cols, entries)

    def __eq__(self, other):
        if not isinstance(other, SparseRationalMatrix):
            return NotImplemented
        return (self.rows, self.cols, self._entries) == (other.rows, other.cols, other._entries)

    __hash__ = None


def _format_rational(value) -> str:
    value = to_rational(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def evaluation_matrix(vectors: Sequence[Multivector],
                      index: MonomialIndex = None) -> Tuple[SparseRationalMatrix, MonomialIndex]:
    vectors = list(vectors)
    if index is None:
        index = build_index(vectors)
    columns = [vectorize(v, index) for v in vectors]
    return SparseRationalMatrix.from_columns(columns, len(index)), index


def _rref(matrix: SparseRationalMatrix) -> Tuple[Dict[int, Dict[int, object]], Tuple[int, ...]]:
    """
    Reduced row echelon form as {row: {col: value}} and the pivot columns
    """
    if not matrix.nnz():
        return {}, ()
    reduced, pivots = matrix.to_domain_matrix().rref()
    sparse = reduced.to_sparse().rep
    return {r: dict(row) for r, row in sparse.items()}, tuple(pivots)


def rank(matrix: SparseRationalMatrix) -> int:
    return len(_rref(matrix)[1])


def independent_columns(matrix: SparseRationalMatrix) -> List[int]:
    """
    Pivot columns of the reduced row echelon form: the first maximal
    independent subset in column order
    """
    return list(_rref(matrix)[1])


def kernel_basis(matrix: SparseRationalMatrix) -> List[Column]:
    """
    One kernel vector per free column f: e_f minus the reduced entries of
    column f placed at the pivot columns
    """
    reduced, pivots = _rref(matrix)
    pivot_rows = {pivot: r for r, pivot in enumerate(pivots)}
    basis = []
    for free in range(matrix.cols):
        if free in pivot_rows:
            continue
        vector = {free: QQ(1)}
        for pivot, r in pivot_rows.items():
            value = reduced.get(r, {}).get(free)
            if value:
                vector[pivot] = -value
        basis.append(vector)
    return basis


def nullity(matrix: SparseRationalMatrix) -> int:
    return matrix.cols - rank(matrix)


def solve_particular(matrix: SparseRationalMatrix, b: Column):
    """
    Some x with M x = b, with free variables set to zero, or NO_SOLUTION

    Raises
    ------
    NGShapeMismatchException
        If b has a row outside the matrix
    """
    for r in b:
        if not 0 <= r < matrix.rows:
            raise NGShapeMismatchException(f"right-hand side row {r} outside {matrix.rows} rows")
    rhs = SparseRationalMatrix.from_columns([b], matrix.rows)
    augmented = matrix.hstack(rhs)
    reduced, pivots = _rref(augmented)
    if matrix.cols in pivots:
        return NO_SOLUTION
    solution: Column = {}
    for r, pivot in enumerate(pivots):
        value = reduced.get(r, {}).get(matrix.cols)
        if value:
            solution[pivot] = value
    return solution


def _columns_matrix(vectors: Sequence[Column], size: int) -> SparseRationalMatrix:
    return SparseRationalMatrix.from_columns(list(vectors), size)


def quotient_basis(big: Sequence[Column], small: Sequence[Column], size: int) -> List[Column]:
    """
    Vectors of `big` whose classes form a basis of span(big) / span(small)

    Parameters
    ----------
    big, small : Sequence[Column]
        Spanning sets in a space of dimension `size`, span(small) inside span(big)

    Raises
    ------
    NGNotASubspaceException
        If span(small) is not contained in span(big)
    """
    big = list(big)
    small = list(small)
    big_rank = rank(_columns_matrix(big, size))
    combined = _columns_matrix(small + big, size)
    combined_rank = rank(combined)
    if combined_rank != big_rank:
        raise NGNotASubspaceException(rank(_columns_matrix(small, size)), combined_rank, big_rank)
    pivots = independent_columns(combined)
    return [big[p - len(small)] for p in pivots if p >= len(small)]


def in_span(vectors: Sequence[Column], b: Column, size: int) -> bool:
    if not b:
        return True
    return solve_particular(_columns_matrix(vectors, size), b) is not NO_SOLUTION


def same_span(first: Sequence[Column], second: Sequence[Column], size: int) -> bool:
    first = list(first)
    second = list(second)
    r1 = rank(_columns_matrix(first, size))
    r2 = rank(_columns_matrix(second, size))
    return r1 == r2 == rank(_columns_matrix(first + second, size))


def column_from_coefficients(coefficients: Dict[str, object], names: Sequence[str]) -> Column:
    positions = {name: i for i, name in enumerate(names)}
    column = {}
    for name, value in coefficients.items():
        value = to_rational(value)
        if value:
            column[positions[name]] = value
    return column


def coefficients_from_column(column: Column, names: Sequence[str]) -> Dict[str, object]:
    return {names[i]: column[i] for i in sorted(column) if column[i]}
