import random

from sympy import QQ

from pynambugraphs import (
    NO_SOLUTION,
    JetRing,
    Multivector,
    SparseRationalMatrix,
    evaluation_matrix,
    kernel_basis,
    quotient_basis,
    rank,
    solve_particular
)
from pynambugraphs.ng_linsolve import (
    build_index,
    coefficients_from_column,
    column_from_coefficients,
    in_span,
    independent_columns,
    nullity,
    same_span,
    vectorize
)
from pynambugraphs.py_ng_exceptions import (
    NGNotASubspaceException,
    NGShapeMismatchException,
    NGUnindexedMonomialException
)


def _dense(rows):
    entries = {(r, c): v for r, row in enumerate(rows) for c, v in enumerate(row) if v}
    return SparseRationalMatrix(len(rows), len(rows[0]), entries)


def test_kernel_basis_01():
    # one kernel vector per free column
    matrix = _dense([[1, 2, 3], [2, 4, 6]])
    assert rank(matrix) == 1
    basis = kernel_basis(matrix)
    assert basis == [{1: QQ(1), 0: QQ(-2)}, {2: QQ(1), 0: QQ(-3)}]
    for vector in basis:
        assert matrix.apply(vector) == {}


def test_kernel_basis_02():
    # rank plus nullity is the number of columns
    matrix = _dense([[1, 0, 2, -1], [0, 1, 1, 1], [1, 1, 3, 0]])
    assert rank(matrix) + nullity(matrix) == matrix.cols
    assert len(kernel_basis(matrix)) == nullity(matrix) == 2


def test_kernel_basis_03():
    # the zero matrix
    matrix = SparseRationalMatrix(3, 2)
    assert rank(matrix) == 0
    assert kernel_basis(matrix) == [{0: QQ(1)}, {1: QQ(1)}]


def test_solve_particular_01():
    matrix = _dense([[1, 0], [0, 1], [1, 1]])
    solution = solve_particular(matrix, {0: QQ(1), 1: QQ(2), 2: QQ(3)})
    assert solution == {0: QQ(1), 1: QQ(2)}


def test_solve_particular_02():
    # inconsistent system
    matrix = _dense([[1, 0], [0, 1], [1, 1]])
    solution = solve_particular(matrix, {0: QQ(1), 1: QQ(2), 2: QQ(4)})
    assert solution is NO_SOLUTION
    assert not solution


def test_solve_particular_03():
    # free variables are set to zero
    matrix = _dense([[2, 4, 1]])
    solution = solve_particular(matrix, {0: QQ(1)})
    assert matrix.apply(solution) == {0: QQ(1)}
    assert set(solution) == {0}


def test_solve_particular_04():
    matrix = _dense([[1, 0], [0, 1]])
    try:
        solve_particular(matrix, {5: QQ(1)})
        assert False, "We should have caught an exception"
    except NGShapeMismatchException as e:
        print(e)


def test_quotient_basis_01():
    quotient = quotient_basis([{0: QQ(1)}, {1: QQ(1)}], [{0: QQ(1)}], 2)
    assert quotient == [{1: QQ(1)}]


def test_quotient_basis_02():
    # the small space must lie inside the big one
    try:
        quotient_basis([{0: QQ(1)}], [{0: QQ(1)}, {1: QQ(1)}], 2)
        assert False, "We should have caught an exception"
    except NGNotASubspaceException as e:
        assert e.combined_rank == 2
        assert e.big_rank == 1


def test_independent_columns_01():
    matrix = _dense([[1, 2, 0], [0, 0, 1]])
    assert independent_columns(matrix) == [0, 2]


def test_spans_01():
    first = [{0: QQ(1), 1: QQ(1)}, {0: QQ(1), 1: QQ(-1)}]
    second = [{0: QQ(1)}, {1: QQ(1)}]
    assert same_span(first, second, 2)
    assert in_span(first, {1: QQ(5)}, 2)
    assert not in_span([{0: QQ(1)}], {1: QQ(5)}, 2)
    assert in_span([], {}, 2)


def test_triplets_01():
    # exact text form of a matrix
    matrix = _dense([[QQ(1, 2), 0], [0, -3]])
    text = matrix.to_triplets()
    assert text == "2 2\n0 0 1/2\n1 1 -3\n"
    assert SparseRationalMatrix.from_triplets(text) == matrix


def test_triplets_02():
    try:
        SparseRationalMatrix.from_triplets("2 2\n0 0\n")
        assert False, "We should have caught an exception"
    except NGShapeMismatchException as e:
        print(e)


def test_sparse_matrix_01():
    try:
        SparseRationalMatrix(2, 2, {(2, 0): 1})
        assert False, "We should have caught an exception"
    except NGShapeMismatchException as e:
        print(e)


def test_evaluation_matrix_01():
    # rows index (xi component, monomial) pairs, columns index vectors
    ring = JetRing(2)
    first = Multivector.xi(2, 0) * ring.rho([1, 0])
    second = Multivector.xi(2, 1) * ring.rho([1, 0]) + first.scale(2)
    matrix, index = evaluation_matrix([first, second])
    assert matrix.rows == len(index) == 2
    assert rank(matrix) == 2
    target = vectorize(first.scale(3) - second, index)
    assert solve_particular(matrix, target) == {0: QQ(3), 1: QQ(-1)}


def test_evaluation_matrix_02():
    # vectorizing against an index without the monomial
    ring = JetRing(2)
    index = build_index([Multivector.xi(2, 0) * ring.rho()])
    try:
        vectorize(Multivector.xi(2, 1) * ring.rho(), index)
        assert False, "We should have caught an exception"
    except NGUnindexedMonomialException as e:
        print(e)


def test_named_columns_01():
    names = ["3", "11", "12"]
    column = column_from_coefficients({"11": "1", "12": QQ(2), "3": 0}, names)
    assert column == {1: QQ(1), 2: QQ(2)}
    assert coefficients_from_column(column, names) == {"11": QQ(1), "12": QQ(2)}


def _random_matrix(rng: random.Random, rows: int, cols: int) -> SparseRationalMatrix:
    # the last two rows depend on the others
    dense = [[rng.choice([0, 0, 1, -1, 2, QQ(1, 3)]) for _ in range(cols)] for _ in range(rows - 2)]
    dense.append([a + b for a, b in zip(dense[0], dense[1])])
    dense.append([2 * a for a in dense[2]])
    return _dense(dense)


def _permuted(rng: random.Random, matrix: SparseRationalMatrix, permutation):
    entries = list(matrix.entries().items())
    rng.shuffle(entries)
    return SparseRationalMatrix(matrix.rows, matrix.cols,
                                {(permutation[r], c): v for (r, c), v in entries})


def test_row_order_01():
    # shuffling rows and entry order changes no reduced result
    rng = random.Random(30)
    for _ in range(10):
        matrix = _random_matrix(rng, 6, 5)
        permutation = list(range(matrix.rows))
        rng.shuffle(permutation)
        shuffled = _permuted(rng, matrix, permutation)
        assert rank(shuffled) == rank(matrix)
        assert independent_columns(shuffled) == independent_columns(matrix)
        assert kernel_basis(shuffled) == kernel_basis(matrix)
        x = {c: QQ(rng.randint(-2, 2)) for c in range(matrix.cols)}
        b = matrix.apply(x)
        solution = solve_particular(matrix, b)
        assert solution is not NO_SOLUTION
        assert solve_particular(shuffled, {permutation[r]: v for r, v in b.items()}) == solution
        assert matrix.apply(solution) == b


def test_row_order_02():
    # an inconsistent system stays inconsistent in any row order
    rng = random.Random(31)
    matrix = _dense([[1, 1, 0], [0, 1, 1], [1, 2, 1]])
    permutation = [2, 0, 1]
    shuffled = _permuted(rng, matrix, permutation)
    b = {0: QQ(1), 1: QQ(1), 2: QQ(3)}
    assert solve_particular(matrix, b) is NO_SOLUTION
    assert solve_particular(shuffled, {permutation[r]: v for r, v in b.items()}) is NO_SOLUTION
