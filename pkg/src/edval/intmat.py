"""Exact integer matrices, determinantal rank and Smith normal form.

Everything here works on Python ints, so entries never overflow.  Matrices
are immutable; the algorithms copy into nested lists, work in place and wrap
the result again.
"""

from __future__ import annotations

import operator
import re
from dataclasses import dataclass
from typing import Iterable, Sequence


class ShapeError(ValueError):
    pass


class MatrixParseError(ValueError):
    """Malformed matrix text.  Carries 1-based ``line`` and ``column``."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class IntMatrix:
    """Dense immutable matrix of arbitrary-precision integers.

    >>> a = IntMatrix([[2, 0], [1, 1], [0, 2]])
    >>> a.shape
    (3, 2)
    >>> (a.T @ a).tolist()
    [[5, 1], [1, 5]]

    Matrices with zero rows or zero columns are allowed; pass ``cols`` to fix
    the width of a matrix with no rows.
    """

    __slots__ = ("_rows", "_ncols")

    def __init__(self, rows: Iterable[Iterable[int]] = (), cols: int | None = None):
        data = tuple(tuple(operator.index(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise ShapeError("ragged rows")
            if cols is not None and cols != width:
                raise ShapeError(f"rows have {width} entries, expected {cols}")
        else:
            width = 0 if cols is None else cols
        if width < 0:
            raise ShapeError("negative column count")
        self._rows = data
        self._ncols = width

    # construction helpers

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def diag(cls, values: Sequence[int], rows: int | None = None, cols: int | None = None) -> IntMatrix:
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        if len(values) > min(rows, cols):
            raise ShapeError("too many diagonal entries for the requested shape")
        out = [[0] * cols for _ in range(rows)]
        for i, v in enumerate(values):
            out[i][i] = v
        return cls(out, cols=cols)

    @classmethod
    def parse(cls, text: str) -> IntMatrix:
        return parse_matrix(text)

    # basic accessors

    @property
    def rows(self) -> int:
        return len(self._rows)

    @property
    def cols(self) -> int:
        return self._ncols

    @property
    def shape(self) -> tuple[int, int]:
        return len(self._rows), self._ncols

    @property
    def entries(self) -> tuple[int, ...]:
        """Row-major flat tuple of the entries."""
        return tuple(x for row in self._rows for x in row)

    def row(self, i: int) -> tuple[int, ...]:
        return self._rows[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self._rows)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._rows]

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        return self._rows[i][j]

    def __iter__(self):
        return iter(self._rows)

    def __len__(self) -> int:
        return len(self._rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.shape, self._rows))

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()!r}, cols={self._ncols})"

    def __str__(self) -> str:
        if not self._rows:
            return f"[] (0x{self._ncols})"
        strs = [[str(x) for x in r] for r in self._rows]
        w = max((len(s) for r in strs for s in r), default=1)
        return "\n".join("[" + " ".join(s.rjust(w) for s in r) + "]" for r in strs)

    # arithmetic

    def __add__(self, other: IntMatrix) -> IntMatrix:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return IntMatrix(
            [[x + y for x, y in zip(r, s)] for r, s in zip(self._rows, other._rows)],
            cols=self._ncols,
        )

    def __neg__(self) -> IntMatrix:
        return IntMatrix([[-x for x in r] for r in self._rows], cols=self._ncols)

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self + (-other)

    def __mul__(self, k: int) -> IntMatrix:
        try:
            k = operator.index(k)
        except TypeError:
            return NotImplemented
        return IntMatrix([[k * x for x in r] for r in self._rows], cols=self._ncols)

    __rmul__ = __mul__

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return matmul(self, other)

    def transpose(self) -> IntMatrix:
        return IntMatrix([[r[j] for r in self._rows] for j in range(self._ncols)], cols=self.rows)

    @property
    def T(self) -> IntMatrix:
        return self.transpose()

    def hstack(self, other: IntMatrix) -> IntMatrix:
        if self.rows != other.rows:
            raise ShapeError("row counts differ")
        return IntMatrix([r + s for r, s in zip(self._rows, other._rows)], cols=self.cols + other.cols)

    def vstack(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.cols:
            raise ShapeError("column counts differ")
        return IntMatrix(self._rows + other._rows, cols=self.cols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> IntMatrix:
        return IntMatrix([[self._rows[i][j] for j in cols] for i in rows], cols=len(cols))

    def reduce_mod(self, m: int) -> IntMatrix:
        return IntMatrix([[x % m for x in r] for r in self._rows], cols=self._ncols)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._rows for x in r)

    def det(self) -> int:
        return det(self)


def as_intmatrix(a) -> IntMatrix:
    """Accept an IntMatrix or any nested sequence of ints."""
    if isinstance(a, IntMatrix):
        return a
    return IntMatrix(a)


def identity(n: int) -> IntMatrix:
    return IntMatrix.identity(n)


def transpose(a: IntMatrix) -> IntMatrix:
    return as_intmatrix(a).transpose()


def add(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    return as_intmatrix(a) + as_intmatrix(b)


def matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    a, b = as_intmatrix(a), as_intmatrix(b)
    if a.cols != b.rows:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    bcols = [b.col(j) for j in range(b.cols)]
    return IntMatrix(
        [[sum(x * y for x, y in zip(r, c)) for c in bcols] for r in a],
        cols=b.cols,
    )


# ---------------------------------------------------------------------------
# fraction-free elimination


def _bareiss_echelon(m: list[list[int]]) -> tuple[int, list[int], int]:
    """Fraction-free row echelon form, in place.

    Returns ``(rank, pivot_columns, sign)`` where ``sign`` tracks row swaps.
    After the call the last pivot entry equals +-det of the leading minor on
    the pivot rows/columns.
    """
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    r = 0
    prev = 1
    sign = 1
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
            sign = -sign
        prow = m[r]
        p = prow[c]
        for i in range(r + 1, nrows):
            row = m[i]
            x = row[c]
            for j in range(c + 1, ncols):
                row[j] = (p * row[j] - x * prow[j]) // prev
            row[c] = 0
        # rows above r never change, so untouched entries keep their minors
        prev = p
        pivots.append(c)
        r += 1
    return r, pivots, sign


def rank_rational(a) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination.

    >>> rank_rational([[2, 0], [1, 1], [0, 2]])
    2
    """
    rows = [list(r) for r in (a if not isinstance(a, IntMatrix) else a.tolist())]
    if not rows or not rows[0]:
        return 0
    return _bareiss_echelon(rows)[0]


def det(a) -> int:
    a = as_intmatrix(a)
    n, m = a.shape
    if n != m:
        raise ShapeError(f"determinant of non-square {a.shape} matrix")
    if n == 0:
        return 1
    rows = a.tolist()
    rank, _, sign = _bareiss_echelon(rows)
    if rank < n:
        return 0
    return sign * rows[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithDecomposition:
    """``p @ a @ q == d`` with ``p``, ``q`` unimodular and ``d`` in Smith form."""

    p: IntMatrix
    d: IntMatrix
    q: IntMatrix
    divisors: tuple[int, ...]
    ones_count: int

    @property
    def rank(self) -> int:
        return len(self.divisors)


def _min_pivot(d: list[list[int]], t: int) -> tuple[int, int] | None:
    best = None
    best_abs = 0
    for i in range(t, len(d)):
        row = d[i]
        for j in range(t, len(row)):
            x = row[j]
            if x and (best is None or abs(x) < best_abs):
                best, best_abs = (i, j), abs(x)
                if best_abs == 1:
                    return best
    return best


def smith_normal_form(a) -> SmithDecomposition:
    """Smith normal form with transformation matrices.

    Pivoting always picks the nonzero entry of least absolute value in the
    working submatrix (first in row-major order on ties).  Once row and
    column ``t`` are cleared, any entry of the trailing block not divisible by
    the pivot is pulled into row ``t`` and the step is repeated, so the
    diagonal comes out as a divisibility chain.  Divisors are made positive
    by negating rows, which is folded into ``p``.

    >>> smith_normal_form([[-2, 1], [3, 1]]).divisors
    (1, 5)
    """
    a = as_intmatrix(a)
    n, m = a.shape
    d = a.tolist()
    p = IntMatrix.identity(n).tolist()
    q = IntMatrix.identity(m).tolist()

    def swap_rows(i, k):
        d[i], d[k] = d[k], d[i]
        p[i], p[k] = p[k], p[i]

    def swap_cols(j, k):
        for row in d:
            row[j], row[k] = row[k], row[j]
        for row in q:
            row[j], row[k] = row[k], row[j]

    def add_row(dst, src, k):
        # row[dst] += k * row[src]
        rd, rs = d[dst], d[src]
        for j in range(m):
            rd[j] += k * rs[j]
        pd, ps = p[dst], p[src]
        for j in range(n):
            pd[j] += k * ps[j]

    def add_col(dst, src, k):
        for row in d:
            row[dst] += k * row[src]
        for row in q:
            row[dst] += k * row[src]

    t = 0
    while t < min(n, m):
        pos = _min_pivot(d, t)
        if pos is None:
            break
        while True:
            i0, j0 = pos
            if i0 != t:
                swap_rows(t, i0)
            if j0 != t:
                swap_cols(t, j0)
            piv = d[t][t]
            clean = True
            for i in range(t + 1, n):
                if d[i][t]:
                    add_row(i, t, -(d[i][t] // piv))
                    clean = clean and d[i][t] == 0
            for j in range(t + 1, m):
                if d[t][j]:
                    add_col(j, t, -(d[t][j] // piv))
                    clean = clean and d[t][j] == 0
            if not clean:
                pos = _min_pivot(d, t)
                continue
            bad = next(
                (i for i in range(t + 1, n) for j in range(t + 1, m) if d[i][j] % piv),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
            pos = (t, t)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            p[t] = [-x for x in p[t]]
        t += 1

    divisors = tuple(d[i][i] for i in range(t))
    return SmithDecomposition(
        p=IntMatrix(p, cols=n),
        d=IntMatrix(d, cols=m),
        q=IntMatrix(q, cols=m),
        divisors=divisors,
        ones_count=sum(1 for x in divisors if x == 1),
    )


def elementary_divisors(a) -> tuple[int, ...]:
    """Nonzero diagonal of the Smith form, ``d1 | d2 | ... | dr``."""
    return smith_normal_form(a).divisors


def rank_mod(a, m: int) -> int:
    """Determinantal rank of ``a`` modulo ``m``.

    The largest ``k`` such that some ``k x k`` minor is nonzero mod ``m``.
    Since the gcd of the ``k x k`` minors is ``d1 * ... * dk``, this is the
    largest ``k`` with ``m`` not dividing that product.
    """
    m = operator.index(m)
    if abs(m) < 2:
        raise ValueError(f"modulus must satisfy |m| >= 2, got {m}")
    k = 0
    prod = 1
    for x in elementary_divisors(a):
        prod *= x
        if prod % m == 0:
            break
        k += 1
    return k


def left_kernel_basis(a) -> IntMatrix:
    """Integer rows spanning ``{z : z @ a == 0}`` over the rationals."""
    a = as_intmatrix(a)
    snf = smith_normal_form(a)
    return IntMatrix(snf.p.tolist()[snf.rank:], cols=a.rows)


# ---------------------------------------------------------------------------
# text format

_ROW_SPLIT = re.compile(r"[;\n]")
_TOKEN = re.compile(r"[^\s,]+")


def parse_matrix(text: str) -> IntMatrix:
    """Parse ``"2 0; 1 1; 0 2"``-style text.

    Rows are separated by ``;`` or newlines, entries by whitespace (commas
    are tolerated).  One pair of surrounding brackets is ignored.  Blank rows
    are skipped; an input without rows is the 0x0 matrix.
    """
    body = text
    offset = 0
    stripped = body.strip()
    if stripped.startswith("[") and stripped.endswith("]"):
        offset = body.index("[") + 1
        body = body[offset:body.rindex("]")]

    def locate(pos):
        before = text[:pos]
        line = before.count("\n") + 1
        return line, pos - (before.rfind("\n") + 1) + 1

    rows = []
    start = 0
    pieces = []
    for mt in _ROW_SPLIT.finditer(body):
        pieces.append((start, body[start:mt.start()]))
        start = mt.end()
    pieces.append((start, body[start:]))

    width = None
    for pstart, piece in pieces:
        toks = list(_TOKEN.finditer(piece))
        if not toks:
            continue
        row = []
        for tok in toks:
            s = tok.group()
            try:
                row.append(int(s))
            except ValueError:
                raise MatrixParseError(f"not an integer: {s!r}", *locate(offset + pstart + tok.start())) from None
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise MatrixParseError(
                f"row has {len(row)} entries, expected {width}",
                *locate(offset + pstart + toks[0].start()),
            )
        rows.append(row)
    return IntMatrix(rows)


def format_matrix(a: IntMatrix) -> str:
    """Inverse of :func:`parse_matrix` (single-line form)."""
    return "; ".join(" ".join(str(x) for x in r) for r in a)
