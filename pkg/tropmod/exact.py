"""
Exact integer and rational linear algebra on small dense matrices.

Matrices travel as lists of rows of ints or Fractions; sympy does the
elimination work and results come back as plain Python numbers.
"""

from fractions import Fraction
from typing import Optional, Sequence

import sympy

Rows = Sequence[Sequence]


def to_sympy(rows: Rows, cols: Optional[int] = None) -> sympy.Matrix:
    if not rows:
        return sympy.zeros(0, cols or 0)
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) if isinstance(x, Fraction) else x
                          for x in row] for row in rows])


def to_fraction(value) -> Fraction:
    if isinstance(value, sympy.Rational):
        return Fraction(int(value.p), int(value.q))
    return Fraction(value)


def to_int(value) -> int:
    fraction = to_fraction(value)
    if fraction.denominator != 1:
        raise ValueError(f'{value} is not an integer')
    return fraction.numerator


def int_rows(matrix: sympy.Matrix) -> list[list[int]]:
    return [[to_int(matrix[i, j]) for j in range(matrix.cols)] for i in range(matrix.rows)]


def fraction_rows(matrix: sympy.Matrix) -> list[list[Fraction]]:
    return [[to_fraction(matrix[i, j]) for j in range(matrix.cols)] for i in range(matrix.rows)]


def det(rows: Rows) -> Fraction:
    if not rows:
        return Fraction(1)
    return to_fraction(to_sympy(rows).det(method='bareiss'))


def rank(rows: Rows) -> int:
    if not rows or not rows[0]:
        return 0
    return to_sympy(rows).rank()


def inverse(rows: Rows) -> list[list[Fraction]]:
    return fraction_rows(to_sympy(rows).inv())


def integer_inverse(rows: Rows) -> list[list[int]]:
    """Inverse of a unimodular integer matrix"""
    return int_rows(to_sympy(rows).inv())


def matmul(left: Rows, right: Rows) -> list[list]:
    inner = len(right)
    cols = len(right[0]) if right else 0
    return [[sum(row[k] * right[k][j] for k in range(inner)) for j in range(cols)] for row in left]


def transpose(rows: Rows) -> list[list]:
    return [list(column) for column in zip(*rows)]


def mat_vec(rows: Rows, vector: Sequence) -> tuple:
    return tuple(sum(a * b for a, b in zip(row, vector)) for row in rows)


def column(rows: Rows, index: int) -> tuple:
    return tuple(row[index] for row in rows)


def identity(size: int) -> list[list[int]]:
    return [[int(i == j) for j in range(size)] for i in range(size)]


def outer(vector: Sequence) -> tuple[tuple, ...]:
    return tuple(tuple(a * b for b in vector) for a in vector)


def solve_rational(rows: Rows, rhs: Sequence) -> Optional[list[Fraction]]:
    """One solution of rows·x = rhs with free parameters set to 0, or None"""
    matrix = to_sympy(rows)
    vector = to_sympy([[value] for value in rhs])
    try:
        solution, params = matrix.gauss_jordan_solve(vector)
    except ValueError:
        return None
    if params.rows:
        solution = solution.subs({symbol: 0 for symbol in params})
    return [to_fraction(solution[i, 0]) for i in range(solution.rows)]
