"""Exact integer and rational matrix kernel.

Everything downstream (lattices, embeddings, cohomology, the involution
extension) reduces to a handful of operations implemented here with
arbitrary-precision integers and `fractions.Fraction`. No floating point
is used anywhere.

Provided operations:

* `snf`: Smith normal form with unimodular transforms, U * A * V = D.
* `integer_kernel`: saturated kernel basis (a direct summand of Z^cols).
* `solve_integer`: certified integer linear solving via the SNF.
* `det`: fraction-free (Bareiss) determinant.
* `signature`: exact signature of a symmetric matrix by congruence
  diagonalization over Q.

Conventions, pinned so outputs are reproducible:

* SNF pivoting picks the nonzero entry of minimal absolute value, ties
  broken in reading order (left to right inside a row, rows top to bottom).
* SNF diagonal entries are normalized nonnegative and each divides the next.
* `integer_kernel` returns the unique column Hermite basis of the kernel.
* When the signature diagonalization meets a zero diagonal entry it first
  looks for a nonzero diagonal entry to swap in; failing that it adds row j
  and column j to row i and column i, where g[i][j] is the first nonzero
  off-diagonal entry.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import DimensionMismatch, NonSquare, NotSymmetric

IntVector = tuple[int, ...]


def _as_int(x) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise TypeError(f"integer entry expected, got {x!r}")
    return x


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix, entries in row-major order.

    >>> m = IntMatrix.from_rows([[0, 1], [1, 0]])
    >>> m.entry(0, 1)
    1
    >>> (m @ m) == IntMatrix.identity(2)
    True
    """

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionMismatch("negative matrix dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} "
                f"entries, got {len(self.entries)}"
            )
        object.__setattr__(self, "entries", tuple(_as_int(x) for x in self.entries))

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]]) -> "IntMatrix":
        rows = [list(r) for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch("ragged rows")
        return cls(nrows, ncols, tuple(x for r in rows for x in r))

    @classmethod
    def from_cols(cls, cols: Iterable[Sequence[int]]) -> "IntMatrix":
        cols = [list(c) for c in cols]
        if not cols:
            return cls(0, 0, ())
        return cls.from_rows(list(map(list, zip(*cols))))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def diagonal(cls, diag: Sequence[int]) -> "IntMatrix":
        n = len(diag)
        return cls(n, n, tuple(diag[i] if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def block_diag(cls, blocks: Sequence["IntMatrix"]) -> "IntMatrix":
        nrows = sum(b.rows for b in blocks)
        ncols = sum(b.cols for b in blocks)
        out = [[0] * ncols for _ in range(nrows)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    out[r0 + i][c0 + j] = b.entry(i, j)
            r0 += b.rows
            c0 += b.cols
        return cls.from_rows(out)

    # -- access ---------------------------------------------------------

    def entry(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> IntVector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> IntVector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> tuple[IntVector, ...]:
        return tuple(self.row(i) for i in range(self.rows))

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def is_symmetric(self) -> bool:
        return self.is_square and all(
            self.entry(i, j) == self.entry(j, i)
            for i in range(self.rows)
            for j in range(i + 1, self.cols)
        )

    # -- arithmetic -----------------------------------------------------

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        ocols = other.cols
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(ocols):
                out.append(sum(ri[k] * other.entries[k * ocols + j] for k in range(self.cols)))
        return IntMatrix(self.rows, ocols, tuple(out))

    def mul_vec(self, v: Sequence[int]) -> IntVector:
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector length {len(v)} != cols {self.cols}")
        return tuple(sum(self.row(i)[k] * v[k] for k in range(self.cols)) for i in range(self.rows))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch in addition")
        return IntMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(k * a for a in self.entries))

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, tuple(
            self.entry(i, j) for j in range(self.cols) for i in range(self.rows)
        ))

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise DimensionMismatch("row counts differ in hstack")
        out = []
        for i in range(self.rows):
            out.extend(self.row(i))
            out.extend(other.row(i))
        return IntMatrix(self.rows, self.cols + other.cols, tuple(out))

    def submatrix(self, row_indices: Sequence[int], col_indices: Sequence[int]) -> "IntMatrix":
        return IntMatrix.from_rows(
            [[self.entry(i, j) for j in col_indices] for i in row_indices]
        )

    def to_rat(self) -> "RatMatrix":
        return RatMatrix(self.rows, self.cols, tuple(Fraction(x) for x in self.entries))


@dataclass(frozen=True)
class RatMatrix:
    """Immutable matrix of `fractions.Fraction` entries (always canonical)."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch("entry count does not match shape")
        object.__setattr__(self, "entries", tuple(Fraction(x) for x in self.entries))

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence]) -> "RatMatrix":
        rows = [list(r) for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch("ragged rows")
        return cls(nrows, ncols, tuple(Fraction(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return IntMatrix.identity(n).to_rat()

    def entry(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(self.row(i) for i in range(self.rows))

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch("shape mismatch in multiplication")
        ocols = other.cols
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(ocols):
                out.append(sum((ri[k] * other.entries[k * ocols + j] for k in range(self.cols)),
                               Fraction(0)))
        return RatMatrix(self.rows, ocols, tuple(out))

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch in subtraction")
        return RatMatrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def mul_vec(self, v: Sequence) -> tuple[Fraction, ...]:
        if len(v) != self.cols:
            raise DimensionMismatch("vector length mismatch")
        return tuple(sum((self.row(i)[k] * Fraction(v[k]) for k in range(self.cols)), Fraction(0))
                     for i in range(self.rows))

    def transpose(self) -> "RatMatrix":
        return RatMatrix(
            self.cols, self.rows,
            tuple(self.entry(i, j) for j in range(self.cols) for i in range(self.rows)),
        )

    @property
    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.entries)

    def to_int(self) -> IntMatrix:
        if not self.is_integral:
            raise ValueError("matrix has non-integer entries")
        return IntMatrix(self.rows, self.cols, tuple(int(x) for x in self.entries))

    def inverse(self) -> "RatMatrix":
        """Gauss-Jordan inverse. Raises NonSquare / ValueError (singular)."""
        if self.rows != self.cols:
            raise NonSquare("only square matrices have inverses")
        n = self.rows
        aug = [list(self.row(i)) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        for k in range(n):
            piv = next((i for i in range(k, n) if aug[i][k] != 0), None)
            if piv is None:
                raise ValueError("matrix is singular")
            aug[k], aug[piv] = aug[piv], aug[k]
            p = aug[k][k]
            aug[k] = [x / p for x in aug[k]]
            for i in range(n):
                if i != k and aug[i][k] != 0:
                    c = aug[i][k]
                    aug[i] = [a - c * b for a, b in zip(aug[i], aug[k])]
        return RatMatrix.from_rows([r[n:] for r in aug])


@dataclass(frozen=True)
class SNFResult:
    """Smith normal form data: U * A * V = D with U, V unimodular."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> IntVector:
        n = min(self.D.rows, self.D.cols)
        return tuple(self.D.entry(i, i) for i in range(n))

    @property
    def invariant_factors(self) -> IntVector:
        return tuple(d for d in self.diagonal if d != 0)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def _pick_pivot(d: list[list[int]], t: int, nrows: int, ncols: int) -> Optional[tuple[int, int]]:
    """Nonzero entry of minimal absolute value in the trailing block,
    ties broken in reading order."""
    best = None
    best_abs = None
    for i in range(t, nrows):
        di = d[i]
        for j in range(t, ncols):
            x = di[j]
            if x != 0:
                a = -x if x < 0 else x
                if best_abs is None or a < best_abs:
                    best, best_abs = (i, j), a
                    if a == 1:
                        return best
    return best


def snf(a: IntMatrix) -> SNFResult:
    """Smith normal form with transforms.

    Returns SNFResult(U, D, V) with U * a * V = D, U and V unimodular,
    D diagonal with nonnegative entries in a divisibility chain.

    >>> r = snf(IntMatrix.from_rows([[2, 4], [6, 8]]))
    >>> r.diagonal
    (2, 4)
    """
    nrows, ncols = a.rows, a.cols
    d = [list(a.row(i)) for i in range(nrows)]
    u = [[1 if i == j else 0 for j in range(nrows)] for i in range(nrows)]
    v = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def row_sub(i: int, k: int, q: int) -> None:
        if q:
            d[i] = [x - q * y for x, y in zip(d[i], d[k])]
            u[i] = [x - q * y for x, y in zip(u[i], u[k])]

    def row_add(i: int, k: int) -> None:
        d[i] = [x + y for x, y in zip(d[i], d[k])]
        u[i] = [x + y for x, y in zip(u[i], u[k])]

    def col_sub(j: int, k: int, q: int) -> None:
        if q:
            for r in d:
                r[j] -= q * r[k]
            for r in v:
                r[j] -= q * r[k]

    def swap_rows(i: int, k: int) -> None:
        if i != k:
            d[i], d[k] = d[k], d[i]
            u[i], u[k] = u[k], u[i]

    def swap_cols(j: int, k: int) -> None:
        if j != k:
            for r in d:
                r[j], r[k] = r[k], r[j]
            for r in v:
                r[j], r[k] = r[k], r[j]

    for t in range(min(nrows, ncols)):
        pos = _pick_pivot(d, t, nrows, ncols)
        if pos is None:
            break
        while True:
            swap_rows(t, pos[0])
            swap_cols(t, pos[1])
            # clear below and to the right of the pivot
            for i in range(t + 1, nrows):
                if d[i][t] != 0:
                    row_sub(i, t, d[i][t] // d[t][t])
            for j in range(t + 1, ncols):
                if d[t][j] != 0:
                    col_sub(j, t, d[t][j] // d[t][t])
            if any(d[i][t] for i in range(t + 1, nrows)) or any(
                d[t][j] for j in range(t + 1, ncols)
            ):
                # remainders survive; re-pick a (smaller) pivot and repeat
                pos = _pick_pivot(d, t, nrows, ncols)
                continue
            # divisibility: the pivot must divide the whole trailing block
            p = d[t][t]
            offender = None
            for i in range(t + 1, nrows):
                di = d[i]
                for j in range(t + 1, ncols):
                    if di[j] % p:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_add(t, offender)
            pos = _pick_pivot(d, t, nrows, ncols)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]

    return SNFResult(
        U=IntMatrix.from_rows(u) if nrows else IntMatrix(0, 0, ()),
        D=IntMatrix.from_rows(d) if nrows else IntMatrix(0, ncols, ()),
        V=IntMatrix.from_rows(v) if ncols else IntMatrix(0, 0, ()),
    )


def hermite_row_basis(m: IntMatrix) -> IntMatrix:
    """Canonical row basis (row Hermite form) of the lattice spanned by
    the rows of `m`. Zero rows are dropped; pivots are positive; entries
    above a pivot are reduced into [0, pivot)."""
    rows = [list(r) for r in m.to_rows()]
    nrows = len(rows)
    ncols = m.cols
    top = 0
    for j in range(ncols):
        while True:
            cands = [i for i in range(top, nrows) if rows[i][j] != 0]
            if not cands:
                break
            i0 = min(cands, key=lambda i: (abs(rows[i][j]), i))
            rows[top], rows[i0] = rows[i0], rows[top]
            p = rows[top][j]
            done = True
            for i in range(top + 1, nrows):
                if rows[i][j] != 0:
                    q = rows[i][j] // p
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[top])]
                    if rows[i][j] != 0:
                        done = False
            if done:
                break
        if any(rows[i][j] for i in range(top, nrows)):
            if rows[top][j] < 0:
                rows[top] = [-x for x in rows[top]]
            p = rows[top][j]
            for i in range(top):
                q = rows[i][j] // p
                if q:
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[top])]
            top += 1
            if top == nrows:
                break
    return IntMatrix.from_rows(rows[:top]) if top else IntMatrix(0, ncols, ())


def integer_kernel(a: IntMatrix) -> IntMatrix:
    """Basis of {x in Z^cols : a.x = 0} as matrix columns.

    The kernel of an integer matrix is always saturated (a direct summand
    of Z^cols); the basis returned is the unique column Hermite basis, so
    equal kernels give equal matrices.

    >>> integer_kernel(IntMatrix.from_rows([[1, 1]])).col(0)
    (1, -1)
    """
    res = snf(a)
    r = res.rank
    cols = [res.V.col(j) for j in range(r, a.cols)]
    if not cols:
        return IntMatrix(a.cols, 0, ())
    canon = hermite_row_basis(IntMatrix.from_rows(cols))
    return canon.transpose()


def solve_integer(a: IntMatrix, b: Sequence[int]) -> Optional[IntVector]:
    """One integer solution x of a.x = b, or None when none exists.

    The SNF certifies the NoSolution answer: after the unimodular change
    of coordinates the system is diagonal, where solvability is a
    divisibility check per row.
    """
    if len(b) != a.rows:
        raise DimensionMismatch(f"vector length {len(b)} != rows {a.rows}")
    res = snf(a)
    c = res.U.mul_vec(tuple(b))
    y = [0] * a.cols
    n = min(a.rows, a.cols)
    for i in range(a.rows):
        di = res.D.entry(i, i) if i < n else 0
        if di == 0:
            if c[i] != 0:
                return None
        else:
            q, rem = divmod(c[i], di)
            if rem:
                return None
            y[i] = q
    return res.V.mul_vec(tuple(y))


def det(a: IntMatrix) -> int:
    """Fraction-free (Bareiss) determinant.

    >>> det(IntMatrix.from_rows([[0, 1], [1, 0]]))
    -1
    """
    if not a.is_square:
        raise NonSquare(f"determinant of a {a.rows}x{a.cols} matrix")
    n = a.rows
    if n == 0:
        return 1
    m = [list(a.row(i)) for i in range(n)]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def signature(g: IntMatrix) -> tuple[int, int, int]:
    """Counts (positive, negative, zero) after exact congruence
    diagonalization of the symmetric matrix `g` over Q.

    >>> signature(IntMatrix.from_rows([[0, 1], [1, 0]]))
    (1, 1, 0)
    """
    if not g.is_square:
        raise NonSquare("signature needs a square matrix")
    if not g.is_symmetric:
        raise NotSymmetric("signature needs a symmetric matrix")
    n = g.rows
    m = [[Fraction(g.entry(i, j)) for j in range(n)] for i in range(n)]
    pos = neg = zero = 0

    def add_row_col(i: int, j: int) -> None:
        m[i] = [x + y for x, y in zip(m[i], m[j])]
        for r in m:
            r[i] += r[j]

    def swap_row_col(i: int, j: int) -> None:
        m[i], m[j] = m[j], m[i]
        for r in m:
            r[i], r[j] = r[j], r[i]

    for k in range(n):
        if m[k][k] == 0:
            swap_target = next((i for i in range(k + 1, n) if m[i][i] != 0), None)
            if swap_target is not None:
                swap_row_col(k, swap_target)
            else:
                j = next((j for j in range(k + 1, n) if m[k][j] != 0), None)
                if j is None:
                    zero += 1
                    continue
                # all remaining diagonal entries vanish, so this bumps
                # m[k][k] to 2 * m[k][j] != 0
                add_row_col(k, j)
        p = m[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            if m[i][k] != 0:
                c = m[i][k] / p
                m[i] = [x - c * y for x, y in zip(m[i], m[k])]
                for r in m:
                    r[i] -= c * r[k]
    return pos, neg, zero
