"""Exact dense linear algebra over the rationals.

Entries are :class:`fractions.Fraction`.  Heavy loops (products, elimination)
run on integer-scaled copies of the rows so that the inner arithmetic is plain
``int`` arithmetic; elimination is fraction-free (Bareiss), which keeps every
intermediate entry a minor of the input and avoids gcd work until the end.
"""
from __future__ import annotations

import re
from fractions import Fraction
from math import lcm
from operator import mul
from typing import Iterable, Sequence

from .errors import DimensionError, NoSolution, NotUnique, ParseError

_RATIONAL_RE = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")

ZERO = Fraction(0)
ONE = Fraction(1)


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL_RE.match(text.strip())
    if not m:
        raise ParseError(f"malformed rational {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ParseError(f"malformed rational {text!r}: zero denominator")
    return Fraction(num, den)


def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, float):
        raise TypeError("floating-point values are not accepted; use int, str or Fraction")
    return Fraction(x)


def _int_row(row: Sequence[Fraction]) -> tuple[list[int], int]:
    """Scale a rational row to integers; returns (ints, denominator)."""
    d = 1
    for x in row:
        if x.denominator != 1:
            d = lcm(d, x.denominator)
    if d == 1:
        return [x.numerator for x in row], 1
    return [x.numerator * (d // x.denominator) for x in row], d


class Matrix:
    """Immutable dense matrix of rationals; 0-row and 0-column shapes are allowed."""

    __slots__ = ("nrows", "ncols", "_rows", "_intform", "_intcols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(as_fraction(x) for x in r) for r in rows)
        if ncols is None:
            if not data:
                raise DimensionError("column count required for a matrix with no rows")
            ncols = len(data[0])
        for r in data:
            if len(r) != ncols:
                raise DimensionError("ragged rows")
        self.nrows = len(data)
        self.ncols = ncols
        self._rows = data
        self._intform = None
        self._intcols = None

    @classmethod
    def _trusted(cls, data: tuple, ncols: int) -> "Matrix":
        m = object.__new__(cls)
        m.nrows = len(data)
        m.ncols = ncols
        m._rows = data
        m._intform = None
        m._intcols = None
        return m

    # -- constructors -------------------------------------------------------

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        row = (ZERO,) * ncols
        return cls._trusted((row,) * nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._trusted(
            tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)), n
        )

    @classmethod
    def row_vector(cls, values: Iterable) -> "Matrix":
        vals = tuple(as_fraction(x) for x in values)
        return cls._trusted((vals,), len(vals))

    @classmethod
    def column_vector(cls, values: Iterable) -> "Matrix":
        return cls._trusted(tuple((as_fraction(x),) for x in values), 1)

    @classmethod
    def from_flat(cls, nrows: int, ncols: int, entries: Sequence) -> "Matrix":
        if len(entries) != nrows * ncols:
            raise DimensionError("entry count does not match shape")
        vals = [as_fraction(x) for x in entries]
        return cls._trusted(
            tuple(tuple(vals[i * ncols:(i + 1) * ncols]) for i in range(nrows)), ncols
        )

    @classmethod
    def diag(cls, values: Sequence) -> "Matrix":
        n = len(values)
        vals = [as_fraction(v) for v in values]
        return cls._trusted(
            tuple(tuple(vals[i] if i == j else ZERO for j in range(n)) for i in range(n)), n
        )

    @classmethod
    def vstack(cls, blocks: Sequence["Matrix"], ncols: int | None = None) -> "Matrix":
        if ncols is None:
            if not blocks:
                raise DimensionError("column count required to stack nothing")
            ncols = blocks[0].ncols
        data = []
        for b in blocks:
            if b.ncols != ncols:
                raise DimensionError("column counts differ")
            data.extend(b._rows)
        return cls._trusted(tuple(data), ncols)

    @classmethod
    def hstack(cls, blocks: Sequence["Matrix"], nrows: int | None = None) -> "Matrix":
        return cls.vstack([b.T for b in blocks], nrows).T

    # -- accessors ----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def entries(self) -> tuple[Fraction, ...]:
        return tuple(x for r in self._rows for x in r)

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._rows[i]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self._rows)

    @property
    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    def __getitem__(self, idx):
        i, j = idx
        return self._rows[i][j]

    def to_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self._rows]

    def take_rows(self, indices: Iterable[int]) -> "Matrix":
        return Matrix._trusted(tuple(self._rows[i] for i in indices), self.ncols)

    def take_cols(self, indices: Iterable[int]) -> "Matrix":
        idx = list(indices)
        return Matrix._trusted(tuple(tuple(r[j] for j in idx) for r in self._rows), len(idx))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._rows for x in r)

    # -- arithmetic ---------------------------------------------------------

    @property
    def T(self) -> "Matrix":
        if self.nrows == 0:
            return Matrix._trusted(((),) * self.ncols, 0)
        return Matrix._trusted(tuple(zip(*self._rows)), self.nrows)

    def _ints(self) -> tuple[list[list[int]], int]:
        if self._intform is None:
            d = 1
            for r in self._rows:
                for x in r:
                    if x.denominator != 1:
                        d = lcm(d, x.denominator)
            ints = [[x.numerator * (d // x.denominator) for x in r] for r in self._rows]
            self._intform = (ints, d)
        return self._intform

    def _int_columns(self) -> tuple[list[tuple[int, ...]], int]:
        if self._intcols is None:
            ints, d = self._ints()
            cols = list(zip(*ints)) if ints else [()] * self.ncols
            self._intcols = (cols, d)
        return self._intcols

    def rmul_vector(self, vec: Sequence) -> tuple[Fraction, ...]:
        """Row vector ``vec`` times this matrix, as a tuple of fractions."""
        if len(vec) != self.nrows:
            raise DimensionError(f"vector of length {len(vec)} times {self.shape} matrix")
        vi, dv = _int_row([as_fraction(x) for x in vec])
        cols, dm = self._int_columns()
        den = dv * dm
        if den == 1:
            return tuple(Fraction(sum(map(mul, vi, c))) for c in cols)
        return tuple(Fraction(sum(map(mul, vi, c)), den) for c in cols)

    def mul_vector(self, vec: Sequence) -> tuple[Fraction, ...]:
        """This matrix times column vector ``vec``, as a tuple of fractions."""
        if len(vec) != self.ncols:
            raise DimensionError(f"{self.shape} matrix times vector of length {len(vec)}")
        vi, dv = _int_row([as_fraction(x) for x in vec])
        rows, dm = self._ints()
        den = dv * dm
        if den == 1:
            return tuple(Fraction(sum(map(mul, r, vi))) for r in rows)
        return tuple(Fraction(sum(map(mul, r, vi)), den) for r in rows)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        a, da = self._ints()
        bcols, db = other._int_columns()
        den = da * db
        out = []
        for arow in a:
            if any(arow):
                out.append(tuple(Fraction(sum(map(mul, arow, c)), den) for c in bcols))
            else:
                out.append((ZERO,) * other.ncols)
        return Matrix._trusted(tuple(out), other.ncols)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return Matrix._trusted(
            tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self._rows, other._rows)),
            self.ncols,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionError(f"cannot subtract {other.shape} from {self.shape}")
        return Matrix._trusted(
            tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(self._rows, other._rows)),
            self.ncols,
        )

    def __neg__(self) -> "Matrix":
        return Matrix._trusted(tuple(tuple(-x for x in r) for r in self._rows), self.ncols)

    def scale(self, c) -> "Matrix":
        c = as_fraction(c)
        return Matrix._trusted(tuple(tuple(c * x for x in r) for r in self._rows), self.ncols)

    def trace(self) -> Fraction:
        if self.nrows != self.ncols:
            raise DimensionError("trace of a non-square matrix")
        return sum((self._rows[i][i] for i in range(self.nrows)), ZERO)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.nrows, self.ncols, self._rows))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_rational(x) for x in r) for r in self._rows)
        return f"Matrix({self.nrows}x{self.ncols}: [{body}])"


# ---------------------------------------------------------------------------
# Kronecker products
# ---------------------------------------------------------------------------

def kron(a: Matrix, b: Matrix) -> Matrix:
    rows = []
    for ra in a.rows:
        for rb in b.rows:
            rows.append(tuple(x * y for x in ra for y in rb))
    return Matrix._trusted(tuple(rows), a.ncols * b.ncols)


def kron_all(mats: Sequence[Matrix]) -> Matrix:
    out = Matrix.identity(1)
    for m in mats:
        out = kron(out, m)
    return out


def kron_power(a: Matrix, k: int) -> Matrix:
    if k < 0:
        raise ValueError("negative Kronecker power")
    return kron_all([a] * k)


def kron_vectors(vectors: Sequence[Sequence]) -> list:
    """Kronecker product of plain row vectors (lists of numbers of any ring)."""
    out = [1]
    for v in vectors:
        out = [x * y for x in out for y in v]
    return out


# ---------------------------------------------------------------------------
# Elimination
# ---------------------------------------------------------------------------

def _pick_pivot(rows: list[list[int]], start: int, col: int) -> int | None:
    best = None
    best_bits = 0
    for i in range(start, len(rows)):
        v = rows[i][col]
        if v:
            bits = abs(v).bit_length()
            if best is None or bits < best_bits:
                best, best_bits = i, bits
                if bits == 1:
                    break
    return best


def _echelon(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free forward elimination (Bareiss).  Mutates and returns rows."""
    prev = 1
    r = 0
    pivots = []
    nr = len(rows)
    for c in range(ncols):
        if r == nr:
            break
        p = _pick_pivot(rows, r, c)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        prow = rows[r]
        piv = prow[c]
        for i in range(r + 1, nr):
            row = rows[i]
            f = row[c]
            if f:
                rows[i] = [(piv * x - f * y) // prev for x, y in zip(row, prow)]
            elif piv != prev:
                rows[i] = [piv * x // prev for x in row]
        prev = piv
        pivots.append(c)
        r += 1
    return rows, pivots


def _gauss_jordan(rows: list[list[int]], pivot_limit: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free Gauss-Jordan elimination over the first ``pivot_limit`` columns.

    Every pivot row ends with the same pivot value (the running determinant);
    all other entries of each pivot column are zero.
    """
    prev = 1
    r = 0
    pivots = []
    nr = len(rows)
    for c in range(pivot_limit):
        if r == nr:
            break
        p = _pick_pivot(rows, r, c)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        prow = rows[r]
        piv = prow[c]
        for i in range(nr):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if f:
                rows[i] = [(piv * x - f * y) // prev for x, y in zip(row, prow)]
            elif piv != prev:
                rows[i] = [piv * x // prev for x in row]
        prev = piv
        pivots.append(c)
        r += 1
    return rows, pivots


def rank(a: Matrix) -> int:
    if a.nrows == 0 or a.ncols == 0:
        return 0
    rows = [_int_row(r)[0] for r in a.rows if any(r)]
    _, pivots = _echelon(rows, a.ncols)
    return len(pivots)


def det(a: Matrix) -> Fraction:
    if a.nrows != a.ncols:
        raise DimensionError("determinant of a non-square matrix")
    n = a.nrows
    if n == 0:
        return ONE
    scale = 1
    rows = []
    for r in a.rows:
        ints, d = _int_row(r)
        scale *= d
        rows.append(ints)
    # track row swaps for the sign
    prev = 1
    sign = 1
    for c in range(n):
        p = _pick_pivot(rows, c, c)
        if p is None:
            return ZERO
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            sign = -sign
        prow = rows[c]
        piv = prow[c]
        for i in range(c + 1, n):
            row = rows[i]
            f = row[c]
            rows[i] = [(piv * x - f * y) // prev for x, y in zip(row, prow)]
        prev = piv
    return Fraction(sign * rows[n - 1][n - 1], scale)


def rref(a: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    rows = [_int_row(r)[0] for r in a.rows if any(r)]
    rows, pivots = _gauss_jordan(rows, a.ncols)
    out = []
    for i, c in enumerate(pivots):
        piv = rows[i][c]
        out.append(tuple(Fraction(x, piv) for x in rows[i]))
    return Matrix._trusted(tuple(out), a.ncols), pivots


def kernel(a: Matrix) -> Matrix:
    """Basis of the right kernel {x : a x = 0}, returned as the rows of a matrix."""
    red, pivots = rref(a)
    pivset = set(pivots)
    basis = []
    for free in range(a.ncols):
        if free in pivset:
            continue
        v = [ZERO] * a.ncols
        v[free] = ONE
        for i, c in enumerate(pivots):
            v[c] = -red[i, free]
        basis.append(tuple(v))
    return Matrix._trusted(tuple(basis), a.ncols)


def row_space_contains(a: Matrix, b: Matrix) -> bool:
    """True iff every row of ``b`` lies in RS(a)."""
    builder = BasisBuilder(a.ncols)
    for r in a.rows:
        builder.insert(r)
    return all(builder.contains(r) for r in b.rows)


def same_row_space(a: Matrix, b: Matrix) -> bool:
    return row_space_contains(a, b) and row_space_contains(b, a)


def solve_right(m: Matrix, n: Matrix) -> Matrix:
    """Return the unique X with X @ m == n."""
    if m.ncols != n.ncols:
        raise DimensionError(f"solve_right: {m.shape} and {n.shape} have different column counts")
    r, c, k = m.nrows, m.ncols, n.nrows
    if r == 0:
        if not n.is_zero():
            raise NoSolution("right-hand side is nonzero but the coefficient matrix is empty")
        return Matrix.zeros(k, 0)
    # one equation per column j: sum_i x_i m[i][j] = n[t][j] for every rhs t
    aug = []
    for j in range(c):
        aug.append(_int_row([m[i, j] for i in range(r)] + [n[t, j] for t in range(k)])[0])
    aug, pivots = _gauss_jordan(aug, r)
    rk = len(pivots)
    for row in aug[rk:]:
        if any(row[r:]):
            raise NoSolution("a row of the right-hand side is outside the row space")
    if rk < r:
        raise NotUnique("coefficient rows are linearly dependent")
    sol = [[ZERO] * r for _ in range(k)]
    for i, var in enumerate(pivots):
        piv = aug[i][var]
        row = aug[i]
        for t in range(k):
            sol[t][var] = Fraction(row[r + t], piv)
    return Matrix._trusted(tuple(tuple(s) for s in sol), r)


def inverse(a: Matrix) -> Matrix:
    if a.nrows != a.ncols:
        raise DimensionError("inverse of a non-square matrix")
    return solve_right(a, Matrix.identity(a.nrows))


def char_poly_coeffs(a: Matrix) -> list[Fraction]:
    """Coefficients c_0..c_n of det(lambda*I - a), lowest order first (Faddeev-LeVerrier)."""
    if a.nrows != a.ncols:
        raise DimensionError("characteristic polynomial of a non-square matrix")
    n = a.nrows
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    m = Matrix.zeros(n, n)
    ident = Matrix.identity(n)
    for k in range(1, n + 1):
        m = a @ m + ident.scale(coeffs[n - k + 1])
        coeffs[n - k] = -(a @ m).trace() / k
    return coeffs


# ---------------------------------------------------------------------------
# Incremental triangular bases
# ---------------------------------------------------------------------------

FILTER_PRIME = (1 << 31) - 1


class BasisBuilder:
    """Incrementally maintained basis of a row space.

    Stored rows are integer rows in fraction-free echelon form: row ``k`` has a
    nonzero entry at ``pivot_cols[k]`` and zeros at every earlier pivot column.
    Reducing a new vector against them is one Bareiss step per stored row, so
    all intermediate values are exact integers bounded by minors of the input.

    Inserts first run a cheap elimination modulo a large prime.  A vector that
    is independent modulo ``p`` is independent over the rationals, so it is
    accepted without exact work and queued; the exact echelon form is only
    built when some vector looks dependent modulo ``p`` or when the stored rows
    are requested.  A vector that is dependent modulo ``p`` but not over the
    rationals switches the filter off for good.
    """

    def __init__(self, ambient_dim: int, modulus: int | None = FILTER_PRIME):
        self.ambient_dim = ambient_dim
        self._rows: list[list[int]] = []
        self._pivot_cols: list[int] = []
        self._pivots: list[int] = []   # pivot values, i.e. running determinants
        self._pending: list[list[int]] = []
        self._p = modulus
        # modular rows are packed into one int, one slot of _width bits per
        # entry, so a row operation is a single big-integer multiply-add
        self._width = 2 * modulus.bit_length() + (ambient_dim + 1).bit_length() + 1 if modulus else 0
        self._mod: list[tuple[int, int]] = []   # (pivot column, packed row with pivot 1)

    def __len__(self) -> int:
        return len(self._rows) + len(self._pending)

    @property
    def rank(self) -> int:
        return len(self)

    @property
    def pivot_cols(self) -> list[int]:
        self._materialize()
        return self._pivot_cols

    @property
    def basis_rows(self) -> tuple[tuple[Fraction, ...], ...]:
        self._materialize()
        return tuple(tuple(Fraction(x) for x in r) for r in self._rows)

    def as_matrix(self) -> Matrix:
        return Matrix._trusted(self.basis_rows, self.ambient_dim)

    def copy(self) -> "BasisBuilder":
        b = BasisBuilder(self.ambient_dim, self._p)
        b._rows = list(self._rows)
        b._pivot_cols = list(self._pivot_cols)
        b._pivots = list(self._pivots)
        b._pending = list(self._pending)
        b._mod = list(self._mod)
        return b

    def _check(self, v) -> list[int]:
        if len(v) != self.ambient_dim:
            raise DimensionError(
                f"vector of length {len(v)} inserted into a basis of ambient dimension {self.ambient_dim}"
            )
        if v and isinstance(v[0], int) and all(type(x) is int for x in v):
            return list(v)
        return _int_row([as_fraction(x) for x in v])[0]

    def _pack(self, entries: Sequence[int]) -> int:
        width = self._width
        packed = 0
        for x in reversed(entries):
            packed = (packed << width) | x
        return packed

    def _mod_insert(self, ints: list[int]) -> bool:
        p, width = self._p, self._width
        mask = (1 << width) - 1
        w = self._pack([x % p for x in ints])
        # slots stay nonnegative (adding (p - f) * row) and below p + n p^2,
        # so they never overflow; only the slot at the pivot is reduced
        for c, row in self._mod:
            f = ((w >> (c * width)) & mask) % p
            if f:
                w += (p - f) * row
        entries = []
        for _ in range(self.ambient_dim):
            entries.append((w & mask) % p)
            w >>= width
        for c, x in enumerate(entries):
            if x:
                inv = pow(x, -1, p)
                self._mod.append((c, self._pack([y * inv % p for y in entries])))
                return True
        return False

    def _materialize(self) -> None:
        pending, self._pending = self._pending, []
        for ints in pending:
            self._exact_insert(ints)

    def _reduce_ints(self, v: list[int]) -> list[int]:
        self._materialize()
        prev = 1
        for row, c, piv in zip(self._rows, self._pivot_cols, self._pivots):
            f = v[c]
            if f:
                v = [(piv * x - f * y) // prev for x, y in zip(v, row)]
            elif piv != prev:
                v = [piv * x // prev for x in v]
            prev = piv
        return v

    def _exact_insert(self, ints: list[int]) -> bool:
        res = self._reduce_ints(ints)
        best = None
        best_bits = 0
        for j, x in enumerate(res):
            if x:
                bits = abs(x).bit_length()
                if best is None or bits < best_bits:
                    best, best_bits = j, bits
        if best is None:
            return False
        self._rows.append(res)
        self._pivot_cols.append(best)
        self._pivots.append(res[best])
        return True

    def reduce(self, v) -> tuple[Fraction, ...]:
        """Residual of ``v`` (up to a nonzero scalar) after elimination; zero iff v is in the span."""
        return tuple(Fraction(x) for x in self._reduce_ints(self._check(v)))

    def contains(self, v) -> bool:
        ints = self._check(v)
        if len(self) == self.ambient_dim:
            return True
        return not any(self._reduce_ints(ints))

    def insert(self, v) -> bool:
        """Add ``v`` if it is independent of the stored rows; report whether it was."""
        ints = self._check(v)
        if len(self) == self.ambient_dim:
            return False
        if self._p is not None:
            if self._mod_insert(ints):
                self._pending.append(ints)
                return True
            if self._exact_insert(ints):
                self._p = None   # unlucky prime; the modular rows no longer certify anything
                self._mod = []
                return True
            return False
        return self._exact_insert(ints)


def basis_insert(b: BasisBuilder, v) -> tuple[BasisBuilder, bool]:
    flag = b.insert(v)
    return b, flag


# ---------------------------------------------------------------------------
# Text form
# ---------------------------------------------------------------------------

def format_matrix(m: Matrix) -> str:
    lines = [f"{m.nrows} {m.ncols}"]
    if m.ncols == 0:
        return lines[0]   # rows of width 0 are implicit
    for r in m.rows:
        lines.append(" ".join(format_rational(x) for x in r))
    return "\n".join(lines)


def parse_matrix_lines(lines: Sequence[str], first_line_no: int = 1,
                       line_numbers: Sequence[int] | None = None) -> tuple[Matrix, int]:
    """Parse a matrix from ``lines``; returns the matrix and the number of lines consumed.

    Errors cite ``line_numbers[i]`` for ``lines[i]`` when given, else ``first_line_no + i``.
    """
    def where(i: int) -> int:
        return line_numbers[i] if line_numbers is not None and i < len(line_numbers) else first_line_no + i

    if not lines:
        raise ParseError("expected matrix header 'rows cols'", where(0))
    head = lines[0].split()
    if len(head) != 2 or not all(h.isdigit() for h in head):
        raise ParseError(f"expected matrix header 'rows cols', got {lines[0].strip()!r}", where(0))
    nr, nc = int(head[0]), int(head[1])
    if nc == 0:
        return Matrix.zeros(nr, 0), 1
    data = []
    for i in range(nr):
        if 1 + i >= len(lines):
            raise ParseError(f"matrix declares {nr} rows but only {i} follow", where(0))
        line_no = where(1 + i)
        text = lines[1 + i]
        toks = text.split()
        if len(toks) != nc:
            raise ParseError(f"expected {nc} entries, found {len(toks)}", line_no)
        row = []
        col = 0
        for tok in toks:
            col = text.index(tok, col)
            try:
                row.append(parse_rational(tok))
            except ParseError as e:
                raise ParseError(e.message, line_no, col + 1) from None
            col += len(tok)
        data.append(tuple(row))
    return Matrix._trusted(tuple(data), nc), 1 + nr


def parse_matrix(text: str) -> Matrix:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    m, used = parse_matrix_lines(lines)
    if used != len(lines):
        raise ParseError("trailing content after matrix", used + 1)
    return m
