from fractions import Fraction
from typing import Sequence, Iterable

from teachcore.errors import DimensionMismatch

__all__ = ["Vector", "dot", "add", "sub", "scale", "combine", "squared_norm", "solve", "nullspace_vector"]

Vector = tuple[Fraction, ...]
ZERO = Fraction(0)


def _check(a: Sequence, b: Sequence):
    if len(a) != len(b):
        raise DimensionMismatch(len(a), len(b))


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    _check(a, b)
    return sum((x * y for x, y in zip(a, b)), ZERO)


def add(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vector:
    _check(a, b)
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vector:
    _check(a, b)
    return tuple(x - y for x, y in zip(a, b))


def scale(k: Fraction, a: Sequence[Fraction]) -> Vector:
    return tuple(k * x for x in a)


def squared_norm(a: Sequence[Fraction]) -> Fraction:
    return dot(a, a)


def combine(coefficients: Iterable[Fraction], vectors: Sequence[Sequence[Fraction]], dimension: int) -> Vector:
    """Σ c_k v_k"""
    total = [ZERO] * dimension
    for c, v in zip(coefficients, vectors):
        if len(v) != dimension:
            raise DimensionMismatch(dimension, len(v))
        if c:
            for i, x in enumerate(v):
                total[i] += c * x
    return tuple(total)


def _reduce(matrix: list[list[Fraction]], columns: int) -> list[int]:
    """
    行列をその場で既約行階段形にし、ピボット列の一覧を返す
    """
    pivots = []
    row = 0
    for col in range(columns):
        pivot = next((r for r in range(row, len(matrix)) if matrix[r][col] != 0), None)
        if pivot is None:
            continue
        matrix[row], matrix[pivot] = matrix[pivot], matrix[row]
        head = matrix[row][col]
        matrix[row] = [x / head for x in matrix[row]]
        for r in range(len(matrix)):
            if r != row and matrix[r][col] != 0:
                factor = matrix[r][col]
                matrix[r] = [x - factor * y for x, y in zip(matrix[r], matrix[row])]
        pivots.append(col)
        row += 1
        if row == len(matrix):
            break
    return pivots


def solve(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Vector | None:
    """
    正方行列の連立一次方程式を厳密に解く。特異なら None
    """
    size = len(matrix)
    if len(rhs) != size:
        raise DimensionMismatch(size, len(rhs))
    augmented = []
    for row, value in zip(matrix, rhs):
        if len(row) != size:
            raise DimensionMismatch(size, len(row))
        augmented.append([Fraction(x) for x in row] + [Fraction(value)])

    pivots = _reduce(augmented, size)
    if len(pivots) != size:
        return None
    return tuple(augmented[i][size] for i in range(size))


def nullspace_vector(columns: Sequence[Sequence[Fraction]]) -> Vector | None:
    """
    Σ β_k columns[k] = 0 となる非零の β を一つ返す。列が一次独立なら None
    """
    if not columns:
        return None
    height = len(columns[0])
    for column in columns:
        if len(column) != height:
            raise DimensionMismatch(height, len(column))

    width = len(columns)
    matrix = [[Fraction(columns[k][i]) for k in range(width)] for i in range(height)]
    pivots = _reduce(matrix, width)
    free = next((k for k in range(width) if k not in pivots), None)
    if free is None:
        return None

    beta = [ZERO] * width
    beta[free] = Fraction(1)
    for row, col in enumerate(pivots):
        beta[col] = -matrix[row][free]
    return tuple(beta)
