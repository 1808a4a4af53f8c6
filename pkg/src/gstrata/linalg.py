"""Exact dense linear algebra over Q and prime fields F_p.

Scalars are ``fractions.Fraction`` over the rationals and plain ints in
``[0, p)`` over F_p; there is no floating point anywhere. Matrices are
immutable after construction, so every value is safe to share between
threads. Row reduction is the workhorse: rank, reduced row-echelon form,
kernels, span arithmetic and the integer Smith normal form all sit on top
of the same elimination loop.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import MixedAmbient, MixedField, RankDeficient, ShapeMismatch

Scalar = Union[int, Fraction]


def is_prime(p: int) -> bool:
    """Deterministic trial-division primality test (intended for p < 2^31)."""
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Base field tag: the rationals (``p is None``) or the prime field F_p.

    Carries the scalar arithmetic so that elimination code is written once.
    """

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not (2 <= self.p < 2**31):
                raise ValueError(f"prime modulus must lie in [2, 2^31), got {self.p}")
            if not is_prime(self.p):
                raise ValueError(f"{self.p} is not prime")

    @staticmethod
    def rational() -> "FieldSpec":
        return FieldSpec(None)

    @staticmethod
    def prime(p: int) -> "FieldSpec":
        return FieldSpec(p)

    @property
    def is_rational(self) -> bool:
        return self.p is None

    def coerce(self, x) -> Scalar:
        """Normalize ``x`` (int, Fraction, or decimal/fraction string) into the field."""
        if self.p is None:
            return x if isinstance(x, Fraction) else Fraction(x)
        if isinstance(x, str):
            x = int(x, 10)
        elif isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"non-integral scalar {x} in F_{self.p}")
            x = x.numerator
        return x % self.p

    @property
    def zero(self) -> Scalar:
        return Fraction(0) if self.p is None else 0

    @property
    def one(self) -> Scalar:
        return Fraction(1) if self.p is None else 1

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return a * b if self.p is None else (a * b) % self.p

    def neg(self, a: Scalar) -> Scalar:
        return -a if self.p is None else (-a) % self.p

    def inv(self, a: Scalar) -> Scalar:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a if self.p is None else pow(a, self.p - 2, self.p)

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    def to_json(self) -> dict:
        if self.p is None:
            return {"kind": "rational"}
        return {"kind": "prime", "p": self.p}

    @staticmethod
    def from_json(d: dict) -> "FieldSpec":
        kind = d.get("kind")
        if kind == "rational":
            return FieldSpec(None)
        if kind == "prime":
            return FieldSpec(int(d["p"]))
        raise ValueError(f"unknown field kind {kind!r}")

    def __str__(self) -> str:
        return "Q" if self.p is None else f"F_{self.p}"


QQ = FieldSpec.rational()


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix with exact entries over a declared field.

    Zero-dimension shapes (0 rows and/or 0 columns) are legal and behave
    as rank 0.
    """

    rows: int
    cols: int
    entries: tuple[tuple[Scalar, ...], ...]
    field: FieldSpec

    @staticmethod
    def from_rows(rows: Iterable[Iterable], field: FieldSpec,
                  cols: int | None = None) -> "Matrix":
        """Build a matrix from an iterable of rows, coercing entries.

        ``cols`` is required only when there are zero rows.
        """
        data = tuple(tuple(field.coerce(x) for x in row) for row in rows)
        if data:
            ncols = len(data[0])
            if any(len(row) != ncols for row in data):
                raise ShapeMismatch("ragged rows")
            if cols is not None and cols != ncols:
                raise ShapeMismatch(f"expected {cols} columns, got {ncols}")
        else:
            if cols is None:
                raise ShapeMismatch("zero-row matrix needs an explicit column count")
            ncols = cols
        return Matrix(len(data), ncols, data, field)

    @staticmethod
    def zeros(rows: int, cols: int, field: FieldSpec) -> "Matrix":
        z = field.zero
        return Matrix(rows, cols, tuple((z,) * cols for _ in range(rows)), field)

    @staticmethod
    def identity(n: int, field: FieldSpec) -> "Matrix":
        z, o = field.zero, field.one
        return Matrix(n, n, tuple(tuple(o if i == j else z for j in range(n))
                                  for i in range(n)), field)

    def __getitem__(self, idx: tuple[int, int]) -> Scalar:
        i, j = idx
        return self.entries[i][j]

    def row(self, i: int) -> tuple[Scalar, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[Scalar, ...]:
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      tuple(zip(*self.entries)) if self.entries else
                      tuple(() for _ in range(self.cols)), self.field)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.field != other.field:
            raise MixedField(f"{self.field} vs {other.field}")
        if self.cols != other.rows:
            raise ShapeMismatch(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        f = self.field
        ot = other.transpose().entries
        data = tuple(
            tuple(f.coerce(sum(a * b for a, b in zip(r, c))) for c in ot)
            for r in self.entries)
        return Matrix(self.rows, other.cols, data, f)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        f = self.field
        return Matrix(self.rows, self.cols,
                      tuple(tuple(f.add(a, b) for a, b in zip(r1, r2))
                            for r1, r2 in zip(self.entries, other.entries)), f)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        f = self.field
        return Matrix(self.rows, self.cols,
                      tuple(tuple(f.sub(a, b) for a, b in zip(r1, r2))
                            for r1, r2 in zip(self.entries, other.entries)), f)

    def _check_same_shape(self, other: "Matrix") -> None:
        if self.field != other.field:
            raise MixedField(f"{self.field} vs {other.field}")
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeMismatch(f"{self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def __str__(self) -> str:
        if not self.entries:
            return f"<{self.rows}x{self.cols} over {self.field}>"
        body = "\n".join("[" + " ".join(str(x) for x in row) + "]" for row in self.entries)
        return body


def hstack(ms: Sequence[Matrix]) -> Matrix:
    """Concatenate matrices left to right; all must share rows and field."""
    if not ms:
        raise ShapeMismatch("hstack of nothing")
    first = ms[0]
    for m in ms[1:]:
        if m.field != first.field:
            raise MixedField(f"{first.field} vs {m.field}")
        if m.rows != first.rows:
            raise MixedAmbient(f"{first.rows} rows vs {m.rows} rows")
    data = tuple(sum((m.entries[i] for m in ms), ()) for i in range(first.rows))
    return Matrix(first.rows, sum(m.cols for m in ms), data, first.field)


def vstack(ms: Sequence[Matrix]) -> Matrix:
    """Concatenate matrices top to bottom; all must share columns and field."""
    if not ms:
        raise ShapeMismatch("vstack of nothing")
    first = ms[0]
    for m in ms[1:]:
        if m.field != first.field:
            raise MixedField(f"{first.field} vs {m.field}")
        if m.cols != first.cols:
            raise ShapeMismatch(f"{first.cols} cols vs {m.cols} cols")
    data = sum((m.entries for m in ms), ())
    return Matrix(sum(m.rows for m in ms), first.cols, data, first.field)


def _eliminate(rows: list[list[Scalar]], field: FieldSpec, reduced: bool) -> list[int]:
    """In-place Gaussian elimination; returns the pivot column list.

    With ``reduced`` the result is the unique RREF (pivots scaled to 1,
    cleared above and below); otherwise only forward elimination is done,
    which is all that rank needs.
    """
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    pivots: list[int] = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        src = next((i for i in range(r, nr) if rows[i][c] != 0), None)
        if src is None:
            continue
        if src != r:
            rows[r], rows[src] = rows[src], rows[r]
        pivot = rows[r][c]
        if reduced and pivot != field.one:
            pinv = field.inv(pivot)
            rows[r] = [field.mul(pinv, x) for x in rows[r]]
            pivot = field.one
        targets = range(nr) if reduced else range(r + 1, nr)
        for i in targets:
            if i == r:
                continue
            factor = rows[i][c]
            if factor == 0:
                continue
            factor = field.div(factor, pivot)
            rows[i] = [field.sub(a, field.mul(factor, b))
                       for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return pivots


def rank(m: Matrix) -> int:
    """Exact rank via Gaussian elimination."""
    work = [list(row) for row in m.entries]
    return len(_eliminate(work, m.field, reduced=False))


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form and its pivot columns.

    The result is the unique RREF of the row space, so equal row spaces
    give entry-wise equal matrices.
    """
    work = [list(row) for row in m.entries]
    pivots = _eliminate(work, m.field, reduced=True)
    return Matrix(m.rows, m.cols, tuple(tuple(row) for row in work), m.field), pivots


def kernel(m: Matrix) -> Matrix:
    """Basis of the right null space, one column per free variable.

    Column count is ``cols - rank`` and ``m @ kernel(m)`` is exactly zero.
    """
    r, pivots = rref(m)
    field = m.field
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    cols = []
    for fcol in free:
        v = [field.zero] * m.cols
        v[fcol] = field.one
        for ridx, pcol in enumerate(pivots):
            v[pcol] = field.neg(r.entries[ridx][fcol])
        cols.append(v)
    data = tuple(tuple(col[i] for col in cols) for i in range(m.cols))
    return Matrix(m.cols, len(cols), data, field)


def column_echelon_basis(m: Matrix) -> Matrix:
    """Canonical basis of the column span: transpose of the RREF of the transpose.

    Unique per column space, so subspace equality reduces to entry-wise
    matrix equality. Zero columns (and the zero space) give a matrix with
    zero columns.
    """
    r, pivots = rref(m.transpose())
    kept = tuple(r.entries[i] for i in range(len(pivots)))
    data = tuple(zip(*kept)) if kept else tuple(() for _ in range(m.rows))
    return Matrix(m.rows, len(kept), data, m.field)


def column_span_sum(ms: Sequence[Matrix]) -> Matrix:
    """Canonical basis of the sum of the column spans."""
    return column_echelon_basis(hstack(ms))


def _pair_intersection(a: Matrix, b: Matrix) -> Matrix:
    # Solve a*u + b*v = 0; the u-parts push forward to a basis of span(a) & span(b).
    if a.cols == 0 or b.cols == 0:
        return Matrix.zeros(a.rows, 0, a.field)
    k = kernel(hstack([a, b]))
    top = Matrix(a.cols, k.cols, k.entries[:a.cols], a.field)
    return column_echelon_basis(a @ top)


def column_span_intersection(ms: Sequence[Matrix]) -> Matrix:
    """Canonical basis of the intersection of the column spans."""
    if not ms:
        raise ShapeMismatch("intersection of nothing")
    first = ms[0]
    for m in ms[1:]:
        if m.field != first.field:
            raise MixedField(f"{first.field} vs {m.field}")
        if m.rows != first.rows:
            raise MixedAmbient(f"{first.rows} rows vs {m.rows} rows")
    acc = column_echelon_basis(first)
    for m in ms[1:]:
        acc = _pair_intersection(acc, m)
    return acc


def invert(m: Matrix) -> Matrix:
    """Inverse of a square matrix; raises RankDeficient when singular."""
    if m.rows != m.cols:
        raise ShapeMismatch(f"{m.rows}x{m.cols} is not square")
    n = m.rows
    field = m.field
    aug = hstack([m, Matrix.identity(n, field)])
    r, pivots = rref(aug)
    if pivots != list(range(n)):
        raise RankDeficient("matrix is singular")
    data = tuple(row[n:] for row in r.entries)
    return Matrix(n, n, data, field)


def smith_normal_form(m) -> tuple[list[int], int]:
    """Smith normal form data of an integer relation matrix.

    Rows are relations, columns are generators. Returns the elementary
    divisors greater than 1 (in divisibility order) and the free rank of
    the cokernel Z^cols / rowspace. Accepts a Matrix over Q with integral
    entries or any nested sequence of ints.
    """
    if isinstance(m, Matrix):
        if not m.field.is_rational:
            raise ValueError("Smith normal form needs integer entries, not F_p")
        a = []
        for row in m.entries:
            out = []
            for x in row:
                fx = Fraction(x)
                if fx.denominator != 1:
                    raise ValueError(f"non-integer entry {x}")
                out.append(fx.numerator)
            a.append(out)
        ncols = m.cols
    else:
        a = [[int(x) for x in row] for row in m]
        ncols = len(a[0]) if a else 0
        if any(len(row) != ncols for row in a):
            raise ShapeMismatch("ragged rows")
    nrows = len(a)

    t = 0
    while True:
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                v = a[i][j]
                if v != 0 and (best is None or abs(v) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i0, j0 = best
        a[t], a[i0] = a[i0], a[t]
        for row in a:
            row[t], row[j0] = row[j0], row[t]
        while True:
            clean = True
            for i in range(t + 1, nrows):
                if a[i][t] == 0:
                    continue
                q = a[i][t] // a[t][t]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t] != 0:
                    a[t], a[i] = a[i], a[t]  # smaller remainder becomes the pivot
                    clean = False
            for j in range(t + 1, ncols):
                if a[t][j] == 0:
                    continue
                q = a[t][j] // a[t][t]
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j] != 0:
                    for row in a:
                        row[t], row[j] = row[j], row[t]
                    clean = False
            if clean:
                break
        # divisibility: the pivot must divide every remaining entry
        d = a[t][t]
        bad = next((i for i in range(t + 1, nrows)
                    if any(a[i][j] % d for j in range(t + 1, ncols))), None)
        if bad is not None:
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
            continue
        t += 1

    diag = [abs(a[s][s]) for s in range(t)]
    divisors = [d for d in diag if d > 1]
    return divisors, ncols - t
