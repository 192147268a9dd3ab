"""Exact integer linear algebra: Smith normal form, integer solves, kernels.

Everything runs on Python's arbitrary-precision integers.  Matrices and
vectors are immutable; every operation returns a fresh value, so the whole
module is safe for concurrent use.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional


class DimensionMismatch(ValueError):
    """Operands have incompatible shapes."""


@dataclass(frozen=True)
class IntVector:
    """Immutable integer vector."""

    entries: tuple[int, ...]

    def __init__(self, entries: Iterable[int]):
        object.__setattr__(self, "entries", tuple(int(e) for e in entries))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    def __add__(self, other: "IntVector") -> "IntVector":
        if len(self) != len(other):
            raise DimensionMismatch(f"vector lengths {len(self)} != {len(other)}")
        return IntVector(a + b for a, b in zip(self.entries, other.entries))

    def __sub__(self, other: "IntVector") -> "IntVector":
        if len(self) != len(other):
            raise DimensionMismatch(f"vector lengths {len(self)} != {len(other)}")
        return IntVector(a - b for a, b in zip(self.entries, other.entries))

    def __neg__(self) -> "IntVector":
        return IntVector(-a for a in self.entries)

    def __rmul__(self, scalar: int) -> "IntVector":
        return IntVector(scalar * a for a in self.entries)

    def dot(self, other: "IntVector") -> int:
        if len(self) != len(other):
            raise DimensionMismatch(f"vector lengths {len(self)} != {len(other)}")
        return sum(a * b for a, b in zip(self.entries, other.entries))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)

    @staticmethod
    def zeros(n: int) -> "IntVector":
        return IntVector([0] * n)

    @staticmethod
    def unit(n: int, i: int) -> "IntVector":
        return IntVector([1 if k == i else 0 for k in range(n)])

    def to_list(self) -> list[int]:
        return list(self.entries)


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix with explicit shape (zero dimensions allowed)."""

    entries: tuple[tuple[int, ...], ...]
    rows: int
    cols: int

    def __init__(self, rows_data: Iterable[Iterable[int]], *, cols: Optional[int] = None):
        data = tuple(tuple(int(e) for e in row) for row in rows_data)
        if data:
            ncols = len(data[0])
            if any(len(row) != ncols for row in data):
                raise DimensionMismatch("ragged rows")
            if cols is not None and cols != ncols:
                raise DimensionMismatch(f"declared cols {cols} != row length {ncols}")
        else:
            ncols = 0 if cols is None else cols
        object.__setattr__(self, "entries", data)
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", ncols)

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(([1 if i == j else 0 for j in range(n)] for i in range(n)), cols=n)

    @staticmethod
    def zeros(rows: int, cols: int) -> "IntMatrix":
        return IntMatrix(([0] * cols for _ in range(rows)), cols=cols)

    @staticmethod
    def from_columns(columns: Iterable[IntVector], rows: int) -> "IntMatrix":
        cols = list(columns)
        for c in cols:
            if len(c) != rows:
                raise DimensionMismatch(f"column length {len(c)} != {rows}")
        return IntMatrix(
            ([c[i] for c in cols] for i in range(rows)),
            cols=len(cols),
        )

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> IntVector:
        return IntVector(self.entries[i])

    def column(self, j: int) -> IntVector:
        return IntVector(row[j] for row in self.entries)

    def columns(self) -> list[IntVector]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            ((self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)),
            cols=self.rows,
        )

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix shapes differ")
        return IntMatrix(
            ((a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)),
            cols=self.cols,
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix shapes differ")
        return IntMatrix(
            ((a - b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)),
            cols=self.cols,
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(((-a for a in row) for row in self.entries), cols=self.cols)

    def __rmul__(self, scalar: int) -> "IntMatrix":
        return IntMatrix(((scalar * a for a in row) for row in self.entries), cols=self.cols)

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        ot = other.transpose().entries
        return IntMatrix(
            ((sum(a * b for a, b in zip(row, col)) for col in ot) for row in self.entries),
            cols=other.cols,
        )

    def apply(self, v: IntVector) -> IntVector:
        """Matrix-vector product."""
        if self.cols != len(v):
            raise DimensionMismatch(f"cannot apply {self.rows}x{self.cols} to length-{len(v)} vector")
        return IntVector(sum(a * b for a, b in zip(row, v.entries)) for row in self.entries)

    def is_zero(self) -> bool:
        return all(a == 0 for row in self.entries for a in row)

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]


def outer(u: IntVector, v: IntVector) -> IntMatrix:
    """Outer product u vᵗ."""
    return IntMatrix(((a * b for b in v.entries) for a in u.entries), cols=len(v))


@dataclass(frozen=True)
class SNFResult:
    """Smith decomposition U·A·V = D with U, V unimodular and D diagonal,
    nonnegative, each diagonal entry dividing the next."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    def diagonal(self) -> list[int]:
        return [self.D[i, i] for i in range(min(self.D.rows, self.D.cols))]

    def rank(self) -> int:
        return sum(1 for d in self.diagonal() if d != 0)


def _swap_rows(a: list[list[int]], u: list[list[int]], i: int, k: int) -> None:
    a[i], a[k] = a[k], a[i]
    u[i], u[k] = u[k], u[i]


def _swap_cols(a: list[list[int]], v: list[list[int]], j: int, k: int) -> None:
    for row in a:
        row[j], row[k] = row[k], row[j]
    for row in v:
        row[j], row[k] = row[k], row[j]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) = x*a + y*b."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def smith_normal_form(A: IntMatrix) -> SNFResult:
    """Compute the Smith normal form of A.

    Standard pivot-and-clear elimination with Bezout row/column rotations;
    the divisibility chain is enforced afterwards by folding offending
    entries into the pivot.  All transforms have determinant ±1.
    """
    m, n = A.rows, A.cols
    a = [list(row) for row in A.entries]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def clear_pivot(t: int) -> None:
        # Repeat until column t and row t are zero off the pivot.
        while True:
            for i in range(t + 1, m):
                if a[i][t]:
                    p, q = a[t][t], a[i][t]
                    if q % p == 0:
                        f = q // p
                        for j in range(t, n):
                            a[i][j] -= f * a[t][j]
                        for j in range(m):
                            u[i][j] -= f * u[t][j]
                    else:
                        g, x, y = _xgcd(p, q)
                        pg, qg = p // g, q // g
                        for j in range(t, n):
                            at, ai = a[t][j], a[i][j]
                            a[t][j] = x * at + y * ai
                            a[i][j] = -qg * at + pg * ai
                        for j in range(m):
                            ut, ui = u[t][j], u[i][j]
                            u[t][j] = x * ut + y * ui
                            u[i][j] = -qg * ut + pg * ui
            if any(a[i][t] for i in range(t + 1, m)):
                continue
            for j in range(t + 1, n):
                if a[t][j]:
                    p, q = a[t][t], a[t][j]
                    if q % p == 0:
                        f = q // p
                        for i in range(t, m):
                            a[i][j] -= f * a[i][t]
                        for i in range(n):
                            v[i][j] -= f * v[i][t]
                    else:
                        g, x, y = _xgcd(p, q)
                        pg, qg = p // g, q // g
                        for i in range(t, m):
                            at, aj = a[i][t], a[i][j]
                            a[i][t] = x * at + y * aj
                            a[i][j] = -qg * at + pg * aj
                        for i in range(n):
                            vt, vj = v[i][t], v[i][j]
                            v[i][t] = x * vt + y * vj
                            v[i][j] = -qg * vt + pg * vj
            if not any(a[i][t] for i in range(t + 1, m)) and not any(
                a[t][j] for j in range(t + 1, n)
            ):
                return

    t = 0
    while t < min(m, n):
        pivot = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                e = a[i][j]
                if e and (best is None or abs(e) < best):
                    pivot, best = (i, j), abs(e)
        if pivot is None:
            break
        _swap_rows(a, u, t, pivot[0])
        _swap_cols(a, v, t, pivot[1])
        clear_pivot(t)
        # Enforce divisibility: the pivot must divide every remaining entry.
        retry = True
        while retry:
            retry = False
            p = a[t][t]
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % p != 0:
                        for jj in range(t, n):
                            a[t][jj] += a[i][jj]
                        for jj in range(m):
                            u[t][jj] += u[i][jj]
                        clear_pivot(t)
                        retry = True
                        break
                if retry:
                    break
        if a[t][t] < 0:
            for j in range(t, n):
                a[t][j] = -a[t][j]
            for j in range(m):
                u[t][j] = -u[t][j]
        t += 1

    return SNFResult(
        U=IntMatrix(u, cols=m),
        D=IntMatrix(a, cols=n),
        V=IntMatrix(v, cols=n),
    )


def determinant(A: IntMatrix) -> int:
    """Exact determinant via fraction-free (Bareiss) elimination."""
    if A.rows != A.cols:
        raise DimensionMismatch("determinant needs a square matrix")
    n = A.rows
    if n == 0:
        return 1
    a = [list(row) for row in A.entries]
    sign = 1
    prev = 1
    for t in range(n - 1):
        if a[t][t] == 0:
            for i in range(t + 1, n):
                if a[i][t]:
                    a[t], a[i] = a[i], a[t]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(t + 1, n):
            for j in range(t + 1, n):
                a[i][j] = (a[i][j] * a[t][t] - a[i][t] * a[t][j]) // prev
            a[i][t] = 0
        prev = a[t][t]
    return sign * a[n - 1][n - 1]


def solve_integer(A: IntMatrix, b: IntVector) -> Optional[IntVector]:
    """Find an integer x with A·x = b, or None when no integer solution exists.

    Reduces through the Smith form: with U·A·V = D the system becomes
    D·y = U·b, which is solvable iff each pivot divides its right-hand side
    and the zero rows have zero right-hand side.
    """
    if A.rows != len(b):
        raise DimensionMismatch(f"matrix has {A.rows} rows, vector has length {len(b)}")
    if A.cols == 0:
        return IntVector(()) if b.is_zero() else None
    snf = smith_normal_form(A)
    rhs = snf.U.apply(b)
    y = [0] * A.cols
    k = min(A.rows, A.cols)
    for i in range(A.rows):
        d = snf.D[i, i] if i < k else 0
        if d == 0:
            if rhs[i] != 0:
                return None
        else:
            if rhs[i] % d != 0:
                return None
            y[i] = rhs[i] // d
    return snf.V.apply(IntVector(y))


def kernel_basis(A: IntMatrix) -> IntMatrix:
    """Basis of the integer kernel lattice {x : A·x = 0}, as matrix columns.

    The columns are taken from the unimodular V of the Smith form, so the
    basis is primitive (saturated): the kernel lattice is a direct summand
    spanned exactly by these columns.
    """
    if A.cols == 0:
        return IntMatrix.zeros(0, 0)
    snf = smith_normal_form(A)
    rank = snf.rank()
    cols = [snf.V.column(j) for j in range(rank, A.cols)]
    return IntMatrix.from_columns(cols, rows=A.cols)


def lattice_membership(basis: IntMatrix, v: IntVector) -> bool:
    """Is v an integer combination of the basis columns?"""
    if basis.rows != len(v):
        raise DimensionMismatch(f"basis has {basis.rows} rows, vector has length {len(v)}")
    return solve_integer(basis, v) is not None


def lattices_equal(A: IntMatrix, B: IntMatrix) -> bool:
    """Do the columns of A and B span the same integer lattice?"""
    if A.rows != B.rows:
        raise DimensionMismatch("ambient dimensions differ")
    return all(lattice_membership(B, c) for c in A.columns()) and all(
        lattice_membership(A, c) for c in B.columns()
    )
