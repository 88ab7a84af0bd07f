"""Small exact matrices and determinant kernels.

Entries are any exact scalar supporting ring arithmetic (Fraction or
LaurentPolynomial); plain ints are promoted to Fraction on construction.
Three independent determinant routines are provided:

* cofactor expansion -- the brute-force oracle, any size;
* Bareiss fraction-free elimination -- interior divisions are exact in the
  entry ring by Sylvester's identity;
* Dodgson condensation -- repeated 2x2 condensation divided by the interior
  of the grandparent stage; fails when an interior entry vanishes.

``matrix_det`` is the production entry point: cofactor for size <= 3, then
Dodgson condensation with automatic fallback to Bareiss on a zero interior
minor (exactness over speed: the matrix is never perturbed).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .laurent import LaurentPolynomial


class ZeroMinorError(Exception):
    """Dodgson condensation hit a zero interior minor; use another algorithm."""


def _promote(value):
    return Fraction(value) if isinstance(value, int) else value


@dataclass(frozen=True)
class Matrix:
    """Immutable row-major matrix of exact scalars."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows <= 0 or self.cols <= 0:
            raise ValueError("matrix dimensions must be positive")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length must equal rows*cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Matrix":
        nrows = len(rows)
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(nrows, ncols, tuple(_promote(v) for r in rows for v in r))

    def at(self, i: int, j: int):
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list]:
        return [[self.at(i, j) for j in range(self.cols)] for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols


def _require_square(m: Matrix) -> int:
    if not m.is_square:
        raise ValueError(f"determinant of a non-square {m.rows}x{m.cols} matrix")
    return m.rows


def det_cofactor(m: Matrix):
    """Determinant by cofactor expansion along the first row (oracle)."""
    n = _require_square(m)
    rows = m.to_rows()

    def rec(rs):
        size = len(rs)
        if size == 1:
            return rs[0][0]
        if size == 2:
            return rs[0][0] * rs[1][1] - rs[0][1] * rs[1][0]
        total = None
        for j in range(size):
            minor = [[row[c] for c in range(size) if c != j] for row in rs[1:]]
            term = rs[0][j] * rec(minor)
            if j % 2:
                term = -term
            total = term if total is None else total + term
        return total

    return rec(rows)


def _exact_div(a, b):
    if isinstance(a, LaurentPolynomial):
        return a.exact_div(b)
    return a / b


def det_bareiss(m: Matrix):
    """Fraction-free Gaussian elimination; divisions are exact in the ring."""
    n = _require_square(m)
    if n == 1:
        return m.at(0, 0)
    a = m.to_rows()
    sign = 1
    prev = None  # pivot of the previous stage
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                zero = m.at(0, 0) - m.at(0, 0)
                return zero
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                elt = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                if prev is not None:
                    elt = _exact_div(elt, prev)
                a[i][j] = elt
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return -det if sign < 0 else det


def det_dodgson(m: Matrix):
    """Determinant by condensation; raises ZeroMinorError on a zero interior."""
    n = _require_square(m)
    if n == 1:
        return m.at(0, 0)
    outer = m.to_rows()
    inner = _condense(outer, None)
    while len(inner) > 1:
        interior = [row[1:-1] for row in outer[1:-1]]
        nxt = _condense(inner, interior)
        outer, inner = inner, nxt
    return inner[0][0]


def _condense(a, divisors):
    size = len(a) - 1
    out = []
    for i in range(size):
        row = []
        for j in range(size):
            v = a[i][j] * a[i + 1][j + 1] - a[i][j + 1] * a[i + 1][j]
            if divisors is not None:
                d = divisors[i][j]
                if not d:
                    raise ZeroMinorError(f"zero interior minor at ({i}, {j})")
                v = _exact_div(v, d)
            row.append(v)
        out.append(row)
    return out


def matrix_det(m: Matrix):
    """Exact determinant; algorithm choice never changes the result."""
    n = _require_square(m)
    if n <= 3:
        return det_cofactor(m)
    try:
        return det_dodgson(m)
    except ZeroMinorError:
        return det_bareiss(m)


def solve_exact(a_rows: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> list[Fraction] | None:
    """One exact solution of A x = b (free variables set to 0), or None.

    Plain Gauss-Jordan over Fraction with partial structure only -- the
    systems here are tiny.  Returns None when the system is inconsistent.
    """
    nrows = len(a_rows)
    if nrows == 0:
        return []
    ncols = len(a_rows[0])
    aug = [[Fraction(v) for v in row] + [Fraction(b[i])] for i, row in enumerate(a_rows)]
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, nrows) if aug[i][c] != 0), None)
        if pivot_row is None:
            continue
        aug[r], aug[pivot_row] = aug[pivot_row], aug[r]
        pv = aug[r][c]
        aug[r] = [v / pv for v in aug[r]]
        for i in range(nrows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [vi - f * vr for vi, vr in zip(aug[i], aug[r])]
        pivots.append((r, c))
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if aug[i][ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for row, col in pivots:
        x[col] = aug[row][ncols]
    return x
