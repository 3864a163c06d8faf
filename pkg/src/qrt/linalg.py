"""Dense exact linear algebra over :mod:`qrt.exactfield` fields."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .exactfield import QQ, FieldError, FieldSpec


class ShapeError(ValueError):
    pass


class Matrix:
    """Row-major dense matrix.  Treat instances as immutable."""

    __slots__ = ("nrows", "ncols", "rows", "field")

    def __init__(self, rows, field: FieldSpec, nrows: int | None = None, ncols: int | None = None):
        rows = [[field(x) for x in r] for r in rows]
        if nrows is None:
            nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if len(rows) != nrows or any(len(r) != ncols for r in rows):
            raise ShapeError(f"ragged or mis-shaped matrix, expected {nrows}x{ncols}")
        self.nrows, self.ncols, self.rows, self.field = nrows, ncols, rows, field

    @classmethod
    def _raw(cls, rows, field, nrows, ncols) -> "Matrix":
        m = object.__new__(cls)
        m.nrows, m.ncols, m.rows, m.field = nrows, ncols, rows, field
        return m

    @classmethod
    def zeros(cls, nrows: int, ncols: int, field: FieldSpec) -> "Matrix":
        z = field.zero
        return cls._raw([[z] * ncols for _ in range(nrows)], field, nrows, ncols)

    @classmethod
    def identity(cls, n: int, field: FieldSpec) -> "Matrix":
        z, o = field.zero, field.one
        return cls._raw([[o if i == j else z for j in range(n)] for i in range(n)], field, n, n)

    @classmethod
    def from_columns(cls, cols, nrows: int, field: FieldSpec) -> "Matrix":
        cols = list(cols)
        rows = [[field(c[i]) for c in cols] for i in range(nrows)]
        return cls._raw(rows, field, nrows, len(cols))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def columns(self) -> list[list]:
        return [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)]

    def column(self, j: int) -> list:
        return [self.rows[i][j] for i in range(self.nrows)]

    @property
    def T(self) -> "Matrix":
        return Matrix._raw([list(c) for c in zip(*self.rows)] if self.nrows else [[] for _ in range(self.ncols)],
                           self.field, self.ncols, self.nrows)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        z = self.field.zero
        ocols = other.columns()
        out = []
        for r in self.rows:
            row = []
            for c in ocols:
                s = z
                for a, b in zip(r, c):
                    if a and b:
                        s = s + a * b
                row.append(s)
            out.append(row)
        return Matrix._raw(out, self.field, self.nrows, other.ncols)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return Matrix._raw([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                           self.field, self.nrows, self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ShapeError(f"cannot subtract {self.shape} and {other.shape}")
        return Matrix._raw([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                           self.field, self.nrows, self.ncols)

    def __neg__(self) -> "Matrix":
        return Matrix._raw([[-a for a in r] for r in self.rows], self.field, self.nrows, self.ncols)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        return Matrix._raw([[c * a for a in r] for r in self.rows], self.field, self.nrows, self.ncols)

    def apply(self, v) -> list:
        if len(v) != self.ncols:
            raise ShapeError("vector length mismatch")
        z = self.field.zero
        out = []
        for r in self.rows:
            s = z
            for a, b in zip(r, v):
                if a and b:
                    s = s + a * b
            out.append(s)
        return out

    def is_zero(self) -> bool:
        return all(not a for r in self.rows for a in r)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Matrix) and self.shape == other.shape
                and all(a == b for r, s in zip(self.rows, other.rows) for a, b in zip(r, s)))

    def __hash__(self):
        return hash((self.shape, tuple(tuple(r) for r in self.rows)))

    def __repr__(self):
        return f"Matrix({[[str(a) for a in r] for r in self.rows]}, {self.field}, {self.nrows}x{self.ncols})"

    def to_lists(self) -> list[list]:
        return [list(r) for r in self.rows]


def hstack(blocks: list[Matrix], nrows: int, field: FieldSpec) -> Matrix:
    rows = [[] for _ in range(nrows)]
    ncols = 0
    for b in blocks:
        if b.nrows != nrows:
            raise ShapeError("hstack row mismatch")
        for r, br in zip(rows, b.rows):
            r.extend(br)
        ncols += b.ncols
    return Matrix._raw(rows, field, nrows, ncols)


def vstack(blocks: list[Matrix], ncols: int, field: FieldSpec) -> Matrix:
    rows = []
    for b in blocks:
        if b.ncols != ncols:
            raise ShapeError("vstack column mismatch")
        rows.extend(list(r) for r in b.rows)
    return Matrix._raw(rows, field, len(rows), ncols)


def block_matrix(blocks: list[list[Matrix]], row_sizes: list[int], col_sizes: list[int],
                 field: FieldSpec) -> Matrix:
    """Assemble a block matrix; ``None`` entries mean zero blocks."""
    nrows, ncols = sum(row_sizes), sum(col_sizes)
    out = Matrix.zeros(nrows, ncols, field).rows
    r0 = 0
    for bi, rs in enumerate(row_sizes):
        c0 = 0
        for bj, cs in enumerate(col_sizes):
            b = blocks[bi][bj]
            if b is not None:
                if b.shape != (rs, cs):
                    raise ShapeError(f"block ({bi},{bj}) has shape {b.shape}, expected {(rs, cs)}")
                for i in range(rs):
                    out[r0 + i][c0:c0 + cs] = b.rows[i]
            c0 += cs
        r0 += rs
    return Matrix._raw(out, field, nrows, ncols)


def direct_sum_matrix(a: Matrix, b: Matrix) -> Matrix:
    return block_matrix([[a, None], [None, b]], [a.nrows, b.nrows], [a.ncols, b.ncols], a.field)


# elimination


def _rref_rows(rows: list[list], ncols: int) -> tuple[list[list], list[int]]:
    """In-place Gauss-Jordan on a list of rows; returns (rows, pivots)."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        inv = 1 / pr[c]
        if inv != 1:
            pr[:] = [x * inv for x in pr]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    ri = rows[i]
                    for j in range(c, ncols):
                        if pr[j]:
                            ri[j] = ri[j] - f * pr[j]
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    rows, pivots = _rref_rows([list(r) for r in m.rows], m.ncols)
    return Matrix._raw(rows, m.field, m.nrows, m.ncols), pivots


def rank(m: Matrix) -> int:
    return len(_rref_rows([list(r) for r in m.rows], m.ncols)[1])


def kernel_basis(m: Matrix) -> Matrix:
    """Columns span the null space; free variables are unit vectors in column order."""
    rows, pivots = _rref_rows([list(r) for r in m.rows], m.ncols)
    F = m.field
    z, o = F.zero, F.one
    pivset = set(pivots)
    free = [c for c in range(m.ncols) if c not in pivset]
    cols = []
    for f in free:
        v = [z] * m.ncols
        v[f] = o
        for r, pc in enumerate(pivots):
            if rows[r][f]:
                v[pc] = -rows[r][f]
        cols.append(v)
    return Matrix.from_columns(cols, m.ncols, F)


def kernel_vectors(m: Matrix) -> list[list]:
    return kernel_basis(m).columns()


def row_space_basis(vectors: list[list], dim: int, field: FieldSpec) -> list[list]:
    """Reduced basis (RREF rows) of the span of ``vectors``."""
    if not vectors:
        return []
    rows, pivots = _rref_rows([list(v) for v in vectors], dim)
    return rows[:len(pivots)]


def column_space_basis(m: Matrix) -> Matrix:
    """A basis of the image, as the pivot columns of ``m``."""
    _, pivots = _rref_rows([list(r) for r in m.rows], m.ncols)
    cols = m.columns()
    return Matrix.from_columns([cols[j] for j in pivots], m.nrows, m.field)


def solve(a: Matrix, b: Matrix) -> Matrix | None:
    """Some X with a @ X == b, or None if inconsistent."""
    if a.nrows != b.nrows:
        raise ShapeError("solve: row mismatch")
    n = a.ncols
    aug = [list(ra) + list(rb) for ra, rb in zip(a.rows, b.rows)]
    rows, pivots = _rref_rows(aug, n + b.ncols)
    F = a.field
    z = F.zero
    sol = [[z] * b.ncols for _ in range(n)]
    for r, pc in enumerate(pivots):
        if pc >= n:
            return None
        sol[pc] = rows[r][n:]
    return Matrix._raw(sol, F, n, b.ncols)


def inverse(m: Matrix) -> Matrix:
    if m.nrows != m.ncols:
        raise ShapeError("inverse of non-square matrix")
    x = solve(m, Matrix.identity(m.nrows, m.field))
    if x is None or rank(m) < m.nrows:
        raise ZeroDivisionError("singular matrix")
    return x


def in_span(basis_cols: list[list], v: list, field: FieldSpec) -> bool:
    if not basis_cols:
        return all(not x for x in v)
    a = Matrix.from_columns(basis_cols, len(v), field)
    return solve(a, Matrix.from_columns([v], len(v), field)) is not None


def _bareiss_int(a: list[list[int]]) -> int:
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ri, rk = a[i], a[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * akk - aik * rk[j]) // prev
            ri[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def det(m: Matrix):
    if m.nrows != m.ncols:
        raise ShapeError(f"determinant of non-square {m.shape} matrix")
    F = m.field
    n = m.nrows
    if n == 0:
        return F.one
    if F.kind == "Q":
        scale = 1
        rows = []
        for r in m.rows:
            den = lcm(*(x.denominator for x in r)) if r else 1
            scale *= den
            rows.append([int(x * den) for x in r])
        return Fraction(_bareiss_int(rows), scale)
    rows = [list(r) for r in m.rows]
    d = F.one
    for c in range(n):
        piv = None
        for i in range(c, n):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            return F.zero
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            d = -d
        pc = rows[c][c]
        d = d * pc
        inv = 1 / pc
        for i in range(c + 1, n):
            f = rows[i][c] * inv
            if f:
                ri, rc = rows[i], rows[c]
                for j in range(c, n):
                    ri[j] = ri[j] - f * rc[j]
    return d


def cofactor_det(m: Matrix):
    """Laplace expansion; exponential, used only as an independent check."""
    if m.nrows != m.ncols:
        raise ShapeError("determinant of non-square matrix")
    F = m.field

    def rec(rows):
        n = len(rows)
        if n == 0:
            return F.one
        total = F.zero
        for j in range(n):
            if rows[0][j]:
                minor = [r[:j] + r[j + 1:] for r in rows[1:]]
                term = rows[0][j] * rec(minor)
                total = total + term if j % 2 == 0 else total - term
        return total

    return rec([list(r) for r in m.rows])


# polynomials


@dataclass(frozen=True)
class Poly:
    """Univariate polynomial, coefficients lowest degree first, no trailing zeros."""

    coefficients: tuple

    @classmethod
    def of(cls, coeffs) -> "Poly":
        coeffs = list(coeffs)
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        return cls(tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def coefficient(self, k: int):
        return self.coefficients[k] if k < len(self.coefficients) else 0

    def __call__(self, t):
        acc = 0 * t
        for c in reversed(self.coefficients):
            acc = acc * t + c
        return acc


def interpolate(points: list[tuple], field: FieldSpec) -> Poly:
    """Lagrange interpolation through ``points``; degree < len(points)."""
    if not points:
        raise ValueError("need at least one point")
    xs = [field(x) for x, _ in points]
    ys = [field(y) for _, y in points]
    if len(set(xs)) != len(xs):
        raise ValueError("repeated abscissa")
    if field.size is not None and len(xs) > field.size:
        raise FieldError("field too small for this many interpolation points")
    n = len(xs)
    z = field.zero
    coeffs = [z] * n
    for i in range(n):
        # basis polynomial prod_{j != i} (t - x_j) / (x_i - x_j)
        basis = [field.one]
        denom = field.one
        for j in range(n):
            if j == i:
                continue
            nb = [z] * (len(basis) + 1)
            for k, b in enumerate(basis):
                nb[k] = nb[k] - b * xs[j]
                nb[k + 1] = nb[k + 1] + b
            basis = nb
            denom = denom * (xs[i] - xs[j])
        f = ys[i] / denom
        for k, b in enumerate(basis):
            coeffs[k] = coeffs[k] + f * b
    return Poly.of(coeffs)


def sample_points(count: int, field: FieldSpec) -> list:
    """``count`` distinct abscissae 0, 1, 2, ... in the field."""
    if field.size is not None and count > field.size:
        raise FieldError(f"{field} has fewer than {count} elements")
    return [field(k) for k in range(count)]


def matrix_from_json(rows, field: FieldSpec, nrows: int, ncols: int) -> Matrix:
    from .exactfield import parse_scalar

    return Matrix([[parse_scalar(str(x), field) for x in r] for r in rows], field, nrows, ncols)


def matrix_to_json(m: Matrix) -> list[list[str]]:
    from .exactfield import render_scalar

    return [[render_scalar(x) for x in r] for r in m.rows]


def as_matrix(rows, field: FieldSpec = QQ) -> Matrix:
    return Matrix(rows, field)
