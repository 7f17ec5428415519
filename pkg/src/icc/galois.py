"""GF(2^8) arithmetic and MDS generator matrices for the partial-clique codec.

Field elements are plain ints in 0..255 under the reduction polynomial 0x11D
(the conventional Reed-Solomon choice); 2 is a primitive element, so log/exp
tables drive multiplication and inversion.  Messages are processed bytewise:
a t-byte message is t parallel field symbols.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

REDUCING_POLY = 0x11D
ORDER = 255


class SingularMatrixError(ValueError):
    """Linear system has no unique solution."""


def _build_tables() -> tuple[tuple[int, ...], tuple[int, ...]]:
    exp = [0] * (2 * ORDER)
    log = [0] * 256
    x = 1
    for i in range(ORDER):
        exp[i] = x
        log[x] = i
        x <<= 1
        if x & 0x100:
            x ^= REDUCING_POLY
    for i in range(ORDER, 2 * ORDER):
        exp[i] = exp[i - ORDER]
    return tuple(exp), tuple(log)


_EXP, _LOG = _build_tables()


def field_mul(a: int, b: int) -> int:
    """Product in GF(2^8)."""
    if a == 0 or b == 0:
        return 0
    return _EXP[_LOG[a] + _LOG[b]]


def field_inv(a: int) -> int:
    """Multiplicative inverse; zero has none."""
    if a == 0:
        raise ZeroDivisionError("0 has no inverse in GF(2^8)")
    return _EXP[ORDER - _LOG[a]]


def field_pow(a: int, e: int) -> int:
    """a**e for e >= 0."""
    if e == 0:
        return 1
    if a == 0:
        return 0
    return _EXP[(_LOG[a] * e) % ORDER]


@dataclass(frozen=True)
class MdsMatrix:
    """k x n generator whose every k x k submatrix is invertible."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def row(self, r: int) -> tuple[int, ...]:
        return self.entries[r]


def vandermonde_mds(k: int, n: int) -> MdsMatrix:
    """Vandermonde generator on evaluation points 1..n: entry (r, c) = c**r.

    Distinct nonzero points make every k x k submatrix invertible, which is
    exactly the MDS property the partial-clique codec relies on.
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    if n > ORDER:
        raise ValueError(f"GF(2^8) supports at most {ORDER} evaluation points, got n={n}")
    entries = tuple(
        tuple(field_pow(c, r) for c in range(1, n + 1)) for r in range(k)
    )
    return MdsMatrix(k, n, entries)


def solve_linear(
    matrix: Sequence[Sequence[int]], rhs: Sequence[Sequence[int]]
) -> list[list[int]]:
    """Solve M @ X = RHS over GF(2^8) for square M by Gaussian elimination.

    RHS holds one row per equation; multiple right-hand-side columns are
    solved simultaneously (the codec feeds one column per message byte).
    """
    m = [list(row) for row in matrix]
    r = [list(row) for row in rhs]
    size = len(m)
    if any(len(row) != size for row in m):
        raise ValueError("matrix must be square")
    if len(r) != size:
        raise ValueError("rhs must have one row per matrix row")
    for col in range(size):
        pivot = next((i for i in range(col, size) if m[i][col]), None)
        if pivot is None:
            raise SingularMatrixError(f"no pivot in column {col}")
        m[col], m[pivot] = m[pivot], m[col]
        r[col], r[pivot] = r[pivot], r[col]
        inv = field_inv(m[col][col])
        m[col] = [field_mul(inv, x) for x in m[col]]
        r[col] = [field_mul(inv, x) for x in r[col]]
        for i in range(size):
            if i != col and m[i][col]:
                f = m[i][col]
                m[i] = [x ^ field_mul(f, y) for x, y in zip(m[i], m[col])]
                r[i] = [x ^ field_mul(f, y) for x, y in zip(r[i], r[col])]
    return r


def solve_tall(
    matrix: Sequence[Sequence[int]], rhs: Sequence[Sequence[int]]
) -> list[list[int]]:
    """Solve a consistent overdetermined system (rows >= cols, full column rank).

    Eliminates to pick independent pivot rows; raises SingularMatrixError when
    the columns are dependent, ValueError when the system is inconsistent.
    """
    m = [list(row) for row in matrix]
    r = [list(row) for row in rhs]
    n_rows = len(m)
    n_cols = len(m[0]) if m else 0
    if any(len(row) != n_cols for row in m):
        raise ValueError("ragged matrix")
    row = 0
    for col in range(n_cols):
        pivot = next((i for i in range(row, n_rows) if m[i][col]), None)
        if pivot is None:
            raise SingularMatrixError(f"dependent column {col}")
        m[row], m[pivot] = m[pivot], m[row]
        r[row], r[pivot] = r[pivot], r[row]
        inv = field_inv(m[row][col])
        m[row] = [field_mul(inv, x) for x in m[row]]
        r[row] = [field_mul(inv, x) for x in r[row]]
        for i in range(n_rows):
            if i != row and m[i][col]:
                f = m[i][col]
                m[i] = [x ^ field_mul(f, y) for x, y in zip(m[i], m[row])]
                r[i] = [x ^ field_mul(f, y) for x, y in zip(r[i], r[row])]
        row += 1
    for i in range(row, n_rows):
        if any(r[i]):
            raise ValueError("inconsistent system")
    return r[:n_cols]
