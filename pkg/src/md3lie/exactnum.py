"""Exact rational scalars and dense exact matrices over Q.

Scalars are ``fractions.Fraction``: denominators are always positive and
fractions are kept reduced, so equality is exact and there are no tolerances
anywhere in the package.  Rank, kernel and solve run fraction-free (Bareiss)
elimination on denominator-cleared integer rows; intermediate entries are
minors of the input, which bounds their growth.  Back-substitution is done in
exact rational arithmetic on the integer echelon form.

All values are immutable after construction and every operation is a pure
function, so concurrent use on shared inputs is safe.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

from .errors import InputError

Scalar = Fraction

Vector = tuple[Fraction, ...]


def scal(value) -> Fraction:
    """Coerce an int, an exact string like ``-3/4``, or a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise InputError(f"not an exact scalar: {value!r}")


def vec(values: Iterable) -> Vector:
    return tuple(scal(v) for v in values)


def vec_zero(n: int) -> Vector:
    return (Fraction(0),) * n


def unit(n: int, i: int) -> Vector:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def vec_add(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vec_sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vec_neg(u: Sequence[Fraction]) -> Vector:
    return tuple(-a for a in u)


def vec_scale(s: Fraction, u: Sequence[Fraction]) -> Vector:
    return tuple(s * a for a in u)


def vec_is_zero(u: Sequence[Fraction]) -> bool:
    return all(not a for a in u)


class Matrix:
    """Dense exact matrix, row-major, immutable after construction."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        entries = tuple(scal(e) for e in entries)
        if rows < 0 or cols < 0 or len(entries) != rows * cols:
            raise InputError(
                f"entry count {len(entries)} does not match shape {rows}x{cols}"
            )
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def _raw(cls, rows: int, cols: int, entries) -> "Matrix":
        # Internal fast path: entries are already Fractions.
        m = object.__new__(cls)
        m.rows = rows
        m.cols = cols
        m.entries = tuple(entries)
        return m

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Matrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        flat = []
        for row in rows:
            if len(row) != ncols:
                raise InputError("ragged rows")
            flat.extend(row)
        return cls(nrows, ncols, flat)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Fraction]], rows: int) -> "Matrix":
        cols = len(columns)
        flat = []
        for i in range(rows):
            for c in columns:
                if len(c) != rows:
                    raise InputError("column length mismatch")
                flat.append(c[i])
        return cls(rows, cols, flat)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls._raw(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        e = [Fraction(0)] * (n * n)
        for i in range(n):
            e[i * n + i] = Fraction(1)
        return cls._raw(n, n, e)

    @classmethod
    def diagonal(cls, diag: Sequence) -> "Matrix":
        n = len(diag)
        e = [Fraction(0)] * (n * n)
        for i, d in enumerate(diag):
            e[i * n + i] = scal(d)
        return cls._raw(n, n, e)

    def __getitem__(self, key) -> Fraction:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise InputError(f"index {key} out of range for {self.rows}x{self.cols}")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(
            " ".join(str(x) for x in self.row(i)) for i in range(self.rows)
        )
        return f"Matrix({self.rows}x{self.cols}: {body})"

    def _same_shape(self, other: "Matrix"):
        if self.rows != other.rows or self.cols != other.cols:
            raise InputError(
                f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix._raw(
            self.rows, self.cols,
            (a + b for a, b in zip(self.entries, other.entries)),
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix._raw(
            self.rows, self.cols,
            (a - b for a, b in zip(self.entries, other.entries)),
        )

    def __neg__(self) -> "Matrix":
        return Matrix._raw(self.rows, self.cols, (-a for a in self.entries))

    def scale(self, s) -> "Matrix":
        s = scal(s)
        return Matrix._raw(self.rows, self.cols, (s * a for a in self.entries))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise InputError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        oc = other.cols
        out = [Fraction(0)] * (self.rows * oc)
        for i in range(self.rows):
            rbase = i * self.cols
            obase = i * oc
            for k in range(self.cols):
                a = self.entries[rbase + k]
                if not a:
                    continue
                kbase = k * oc
                for j in range(oc):
                    b = other.entries[kbase + j]
                    if b:
                        out[obase + j] += a * b
        return Matrix._raw(self.rows, oc, out)

    def apply(self, v: Sequence[Fraction]) -> Vector:
        """Matrix-vector product (column convention)."""
        if len(v) != self.cols:
            raise InputError(f"vector length {len(v)} != cols {self.cols}")
        out = [Fraction(0)] * self.rows
        for j, x in enumerate(v):
            if not x:
                continue
            for i in range(self.rows):
                a = self.entries[i * self.cols + j]
                if a:
                    out[i] += a * x
        return tuple(out)

    def transpose(self) -> "Matrix":
        return Matrix._raw(
            self.cols, self.rows,
            (self.entries[i * self.cols + j]
             for j in range(self.cols) for i in range(self.rows)),
        )

    @property
    def is_zero(self) -> bool:
        return all(not a for a in self.entries)

    @property
    def is_symmetric(self) -> bool:
        return self.rows == self.cols and self == self.transpose()

    @classmethod
    def hstack(cls, parts: Sequence["Matrix"]) -> "Matrix":
        rows = parts[0].rows
        if any(p.rows != rows for p in parts):
            raise InputError("hstack: row count mismatch")
        flat = []
        for i in range(rows):
            for p in parts:
                flat.extend(p.row(i))
        return cls._raw(rows, sum(p.cols for p in parts), flat)

    @classmethod
    def vstack(cls, parts: Sequence["Matrix"]) -> "Matrix":
        cols = parts[0].cols
        if any(p.cols != cols for p in parts):
            raise InputError("vstack: column count mismatch")
        flat = []
        for p in parts:
            flat.extend(p.entries)
        return cls._raw(sum(p.rows for p in parts), cols, flat)

    @classmethod
    def block(cls, grid: Sequence[Sequence["Matrix"]]) -> "Matrix":
        return cls.vstack([cls.hstack(row) for row in grid])

    # ---- fraction-free elimination -------------------------------------

    def _denominator_cleared(self, extra: Optional[Sequence[Fraction]] = None):
        """Integer rows, each scaled by the lcm of its denominators.

        ``extra`` appends one augmented column (used by the solver)."""
        out = []
        for i in range(self.rows):
            row = list(self.row(i))
            if extra is not None:
                row.append(extra[i])
            scale = lcm(*(e.denominator for e in row)) if row else 1
            out.append([int(e * scale) for e in row])
        return out

    def _echelon(self, extra: Optional[Sequence[Fraction]] = None):
        rows = self._denominator_cleared(extra)
        ncols = self.cols + (1 if extra is not None else 0)
        pivots = _bareiss(rows, ncols)
        return rows, pivots

    def rank(self) -> int:
        """Exact rank over the rationals."""
        return len(self._echelon()[1])

    def pivot_columns(self) -> list[int]:
        """Pivot columns of the echelon form (leftmost independent columns)."""
        return self._echelon()[1]

    def kernel_basis(self) -> list[Vector]:
        """Basis of the right null space; every v satisfies self @ v = 0.

        One basis vector per free column, normalized to a primitive integer
        vector with positive entry at its free column."""
        rows, pivots = self._echelon()
        ncols = self.cols
        pivot_set = set(pivots)
        free = [c for c in range(ncols) if c not in pivot_set]
        basis = []
        for fc in free:
            x = [Fraction(0)] * ncols
            x[fc] = Fraction(1)
            for r in range(len(pivots) - 1, -1, -1):
                pc = pivots[r]
                s = Fraction(0)
                row = rows[r]
                for j in range(pc + 1, ncols):
                    if row[j] and x[j]:
                        s += row[j] * x[j]
                x[pc] = -s / row[pc]
            basis.append(_primitive(x))
        return basis

    def solve_in_image(self, b: Sequence[Fraction]) -> Optional[Vector]:
        """Some x with self @ x = b when b is in the image, else None."""
        if len(b) != self.rows:
            raise InputError(f"rhs length {len(b)} != rows {self.rows}")
        b = vec(b)
        rows, pivots = self._echelon(extra=b)
        if pivots and pivots[-1] == self.cols:
            return None  # pivot in the augmented column: inconsistent
        x = [Fraction(0)] * self.cols
        for r in range(len(pivots) - 1, -1, -1):
            pc = pivots[r]
            row = rows[r]
            s = Fraction(row[self.cols])
            for j in range(pc + 1, self.cols):
                if row[j] and x[j]:
                    s -= row[j] * x[j]
            x[pc] = s / row[pc]
        return tuple(x)

    def inverse(self) -> "Matrix":
        """Exact inverse; raises InputError on non-square or singular input."""
        if self.rows != self.cols:
            raise InputError("inverse of a non-square matrix")
        n = self.rows
        work = [list(self.row(i)) + list(unit(n, i)) for i in range(n)]
        for col in range(n):
            piv = next((r for r in range(col, n) if work[r][col]), None)
            if piv is None:
                raise InputError("matrix is singular")
            work[col], work[piv] = work[piv], work[col]
            inv = 1 / work[col][col]
            work[col] = [e * inv for e in work[col]]
            for r in range(n):
                if r != col and work[r][col]:
                    f = work[r][col]
                    work[r] = [a - f * b for a, b in zip(work[r], work[col])]
        return Matrix._raw(n, n, (work[i][n + j] for i in range(n) for j in range(n)))


def _bareiss(rows: list[list[int]], ncols: int) -> list[int]:
    """In-place fraction-free row echelon; returns the pivot columns.

    One-step Bareiss: every update divides by the previous pivot, and the
    division is exact by Sylvester's identity."""
    nrows = len(rows)
    pivots: list[int] = []
    denom = 1
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        pv = prow[c]
        for i in range(r + 1, nrows):
            ri = rows[i]
            h = ri[c]
            for j in range(c + 1, ncols):
                ri[j] = (pv * ri[j] - h * prow[j]) // denom
            ri[c] = 0
        denom = pv
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def _primitive(x: list[Fraction]) -> Vector:
    """Scale a rational vector to a primitive integer vector (same line)."""
    scale = lcm(*(e.denominator for e in x)) if x else 1
    ints = [int(e * scale) for e in x]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(Fraction(v) for v in ints)


def rank(m: Matrix) -> int:
    return m.rank()


def kernel_basis(m: Matrix) -> list[Vector]:
    return m.kernel_basis()


def solve_in_image(m: Matrix, b: Sequence[Fraction]) -> Optional[Vector]:
    return m.solve_in_image(b)
