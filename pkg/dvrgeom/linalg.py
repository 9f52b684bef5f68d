"""Dense linear algebra on raw values: fields, and DVRs with unit pivots."""

from dvrgeom.exceptions import ArityMismatchException, NonUnitException


def row_reduce(rows, ring):
    """
    Reduced row echelon form using unit pivots only.

    :param rows: list of equal-length lists of raw values.
    :param ring: coefficient ring; over a DVR a column without a unit entry
        below the current row is skipped.
    :return: ``(reduced_rows, pivot_columns)``.
    """
    matrix = [list(row) for row in rows]
    if not matrix:
        return [], []
    ncols = len(matrix[0])
    if any(len(row) != ncols for row in matrix):
        raise ArityMismatchException(details="Matrix rows have different lengths")
    zero = ring.zero
    pivots = []
    current = 0
    for column in range(ncols):
        if current == len(matrix):
            break
        found = next(
            (i for i in range(current, len(matrix)) if ring.is_unit(matrix[i][column])),
            None,
        )
        if found is None:
            continue
        matrix[current], matrix[found] = matrix[found], matrix[current]
        scale = ring.inv(matrix[current][column])
        matrix[current] = [ring.mul(value, scale) for value in matrix[current]]
        for i, row in enumerate(matrix):
            factor = row[column]
            if i == current or factor == zero:
                continue
            matrix[i] = [
                ring.sub(value, ring.mul(factor, pivot_value))
                for value, pivot_value in zip(row, matrix[current])
            ]
        pivots.append(column)
        current += 1
    return matrix, pivots


def rank(rows, field):
    return len(row_reduce(rows, field)[1])


def identity(size, ring):
    return [[ring.one if i == j else ring.zero for j in range(size)] for i in range(size)]


def inverse(matrix, ring):
    """
    Inverse of a square matrix whose determinant is a unit.

    :raises NonUnitException: the matrix is singular (modulo pi over a DVR).
    """
    size = len(matrix)
    augmented = [list(row) + extra for row, extra in zip(matrix, identity(size, ring))]
    reduced, pivots = row_reduce(augmented, ring)
    if pivots[:size] != list(range(size)):
        raise NonUnitException(details="Matrix is not invertible")
    return [row[size:] for row in reduced]


def mat_vec(matrix, vector, ring):
    result = []
    for row in matrix:
        total = ring.zero
        for value, entry in zip(row, vector):
            if value != ring.zero and entry != ring.zero:
                total = ring.add(total, ring.mul(value, entry))
        result.append(total)
    return result


def solve(matrix, rhs, ring):
    """Unique solution of ``matrix * v = rhs`` for an invertible matrix."""
    return mat_vec(inverse(matrix, ring), rhs, ring)


def kernel(rows, field, ncols=None):
    """Basis of the right kernel over a field, one vector per free column."""
    if not rows:
        return [[field.one if i == j else field.zero for i in range(ncols)] for j in range(ncols)]
    ncols = len(rows[0])
    reduced, pivots = row_reduce(rows, field)
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        vector = [field.zero] * ncols
        vector[free] = field.one
        for row_index, pivot in enumerate(pivots):
            vector[pivot] = field.neg(reduced[row_index][free])
        basis.append(vector)
    return basis
