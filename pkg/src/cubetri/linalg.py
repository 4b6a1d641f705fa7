"""Exact sparse linear algebra over Q(i).

Matrices are immutable maps (row, col) -> nonzero GaussianRational.  Large
products route through a packed-integer path: rows are encoded as big
integers in a base wide enough that digit arithmetic cannot carry, so one
CPython bigint multiply does a whole row-times-row-of-blocks step exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .exactnum import ZERO, GaussianRational

# Above this many scalar multiplies the dict-walk product loses to packing.
_PACK_CUTOFF = 1 << 16


def _as_scalar(value) -> GaussianRational:
    return GaussianRational.coerce(value)


class ExactMatrix:
    """Sparse exact matrix over Q(i); no stored zeros, immutable."""

    __slots__ = ("nrows", "ncols", "entries")

    def __init__(self, nrows: int, ncols: int, entries=None):
        if nrows < 0 or ncols < 0:
            raise ValueError("negative matrix dimension")
        clean = {}
        if entries:
            for (r, c), v in entries.items():
                if not (0 <= r < nrows and 0 <= c < ncols):
                    raise ValueError(f"entry index ({r},{c}) out of bounds for {nrows}x{ncols}")
                v = _as_scalar(v)
                if v:
                    clean[(r, c)] = v
        object.__setattr__(self, "nrows", nrows)
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "entries", clean)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @classmethod
    def _make(cls, nrows, ncols, entries) -> "ExactMatrix":
        # internal: entries already clean (bounded, nonzero GaussianRational)
        m = object.__new__(cls)
        object.__setattr__(m, "nrows", nrows)
        object.__setattr__(m, "ncols", ncols)
        object.__setattr__(m, "entries", entries)
        return m

    # -- constructors ------------------------------------------------------

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "ExactMatrix":
        return cls._make(nrows, ncols, {})

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        one = GaussianRational(1)
        return cls._make(n, n, {(i, i): one for i in range(n)})

    @classmethod
    def from_rows(cls, rows) -> "ExactMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                v = _as_scalar(v)
                if v:
                    entries[(i, j)] = v
        return cls._make(nrows, ncols, entries)

    @classmethod
    def diagonal(cls, values) -> "ExactMatrix":
        entries = {}
        values = list(values)
        for i, v in enumerate(values):
            v = _as_scalar(v)
            if v:
                entries[(i, i)] = v
        n = len(values)
        return cls._make(n, n, entries)

    @classmethod
    def column_vector(cls, values) -> "ExactMatrix":
        values = list(values)
        entries = {}
        for i, v in enumerate(values):
            v = _as_scalar(v)
            if v:
                entries[(i, 0)] = v
        return cls._make(len(values), 1, entries)

    # -- access ------------------------------------------------------------

    def get(self, r: int, c: int) -> GaussianRational:
        return self.entries.get((r, c), ZERO)

    def nnz(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def column(self, j: int) -> dict:
        return {r: v for (r, c), v in self.entries.items() if c == j}

    def to_rows(self):
        rows = [[ZERO] * self.ncols for _ in range(self.nrows)]
        for (r, c), v in self.entries.items():
            rows[r][c] = v
        return rows

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (
            self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.nrows, self.ncols, frozenset(self.entries.items())))

    def __repr__(self):
        return f"<ExactMatrix {self.nrows}x{self.ncols}, {self.nnz()} nonzero>"

    # -- ring operations -----------------------------------------------------

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._same_shape(other)
        entries = dict(self.entries)
        for key, v in other.entries.items():
            s = entries.get(key)
            t = v if s is None else s + v
            if t:
                entries[key] = t
            elif s is not None:
                del entries[key]
        return ExactMatrix._make(self.nrows, self.ncols, entries)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._same_shape(other)
        entries = dict(self.entries)
        for key, v in other.entries.items():
            s = entries.get(key)
            t = -v if s is None else s - v
            if t:
                entries[key] = t
            elif s is not None:
                del entries[key]
        return ExactMatrix._make(self.nrows, self.ncols, entries)

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix._make(
            self.nrows, self.ncols, {k: -v for k, v in self.entries.items()}
        )

    def __mul__(self, scalar) -> "ExactMatrix":
        s = _as_scalar(scalar)
        if not s:
            return ExactMatrix.zeros(self.nrows, self.ncols)
        return ExactMatrix._make(
            self.nrows, self.ncols, {k: v * s for k, v in self.entries.items()}
        )

    __rmul__ = __mul__

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        return matmul(self, other)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix._make(
            self.ncols, self.nrows, {(c, r): v for (r, c), v in self.entries.items()}
        )

    def trace(self) -> GaussianRational:
        t = ZERO
        for (r, c), v in self.entries.items():
            if r == c:
                t = t + v
        return t

    def _same_shape(self, other):
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise ValueError(
                f"shape mismatch: {self.nrows}x{self.ncols} vs {other.nrows}x{other.ncols}"
            )


# -- products ----------------------------------------------------------------


def matmul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Exact product; dispatches between dict-walk and packed-integer paths."""
    if a.ncols != b.nrows:
        raise ValueError(f"cannot multiply {a.nrows}x{a.ncols} by {b.nrows}x{b.ncols}")
    if not a.entries or not b.entries:
        return ExactMatrix.zeros(a.nrows, b.ncols)
    b_rows: dict; a_by_k: dict
    b_row_count = {}
    for (k, _j) in b.entries:
        b_row_count[k] = b_row_count.get(k, 0) + 1
    cost = 0
    for (_i, k) in a.entries:
        cost += b_row_count.get(k, 0)
        if cost > _PACK_CUTOFF:
            return _matmul_packed(a, b)
    return _matmul_sparse(a, b)


def _matmul_sparse(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    b_rows: dict = {}
    for (k, j), v in b.entries.items():
        b_rows.setdefault(k, []).append((j, v))
    acc: dict = {}
    for (i, k), av in a.entries.items():
        hits = b_rows.get(k)
        if hits is None:
            continue
        for j, bv in hits:
            key = (i, j)
            cur = acc.get(key)
            acc[key] = av * bv if cur is None else cur + av * bv
    return ExactMatrix._make(a.nrows, b.ncols, {k: v for k, v in acc.items() if v})


def _scaled_int_parts(m: ExactMatrix):
    """(den, re_rows, im_rows) with m = (re + i*im)/den, integer dense rows."""
    den = 1
    for v in m.entries.values():
        den = lcm(den, v.re.denominator, v.im.denominator)
    re_rows = [[0] * m.ncols for _ in range(m.nrows)]
    im_rows = None
    for (r, c), v in m.entries.items():
        if v.re:
            re_rows[r][c] = v.re.numerator * (den // v.re.denominator)
        if v.im:
            if im_rows is None:
                im_rows = [[0] * m.ncols for _ in range(m.nrows)]
            im_rows[r][c] = v.im.numerator * (den // v.im.denominator)
    return den, re_rows, im_rows


def _pack_rows(rows, p, width, shift):
    buf_rows = []
    for row in rows:
        buf = b"".join((x + shift).to_bytes(width, "little") for x in row)
        buf_rows.append(int.from_bytes(buf, "little"))
    return buf_rows


def _int_matmul_packed(a_rows, b_rows, n, k, p):
    """Exact integer matrix product via carry-free bigint packing."""
    if k == 0 or n == 0 or p == 0:
        return [[0] * p for _ in range(n)]
    amin = min(min(r) for r in a_rows)
    amax = max(max(r) for r in a_rows)
    bmin = min(min(r) for r in b_rows)
    bmax = max(max(r) for r in b_rows)
    sa = -amin if amin < 0 else 0
    sb = -bmin if bmin < 0 else 0
    digit_bound = k * (amax + sa) * (bmax + sb) + 1
    width = (digit_bound.bit_length() + 7) // 8
    packed_b = _pack_rows(b_rows, p, width, sb)
    row_sum_a = [sum(r) for r in a_rows]
    col_sum_b = [0] * p
    for row in b_rows:
        for j, x in enumerate(row):
            if x:
                col_sum_b[j] += x
    corr_const = k * sa * sb
    c_rows = []
    for i in range(n):
        arow = a_rows[i]
        acc = 0
        for j in range(k):
            acc += (arow[j] + sa) * packed_b[j]
        buf = acc.to_bytes(width * p + width, "little")
        corr_i = sb * row_sum_a[i] + corr_const
        crow = [
            int.from_bytes(buf[width * j : width * j + width], "little")
            - sa * col_sum_b[j]
            - corr_i
            for j in range(p)
        ]
        c_rows.append(crow)
    return c_rows


def _matmul_packed(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    n, k, p = a.nrows, a.ncols, b.ncols
    da, a_re, a_im = _scaled_int_parts(a)
    db, b_re, b_im = _scaled_int_parts(b)
    zero_block = None
    re_part = _int_matmul_packed(a_re, b_re, n, k, p)
    if a_im is not None and b_im is not None:
        tmp = _int_matmul_packed(a_im, b_im, n, k, p)
        for i in range(n):
            ri, ti = re_part[i], tmp[i]
            for j in range(p):
                ri[j] -= ti[j]
    im_part = None
    if b_im is not None:
        im_part = _int_matmul_packed(a_re, b_im, n, k, p)
    if a_im is not None:
        tmp = _int_matmul_packed(a_im, b_re, n, k, p)
        if im_part is None:
            im_part = tmp
        else:
            for i in range(n):
                ri, ti = im_part[i], tmp[i]
                for j in range(p):
                    ri[j] += ti[j]
    den = da * db
    entries = {}
    cache: dict = {}
    for i in range(n):
        re_row = re_part[i]
        im_row = im_part[i] if im_part is not None else None
        for j in range(p):
            x = re_row[j]
            y = im_row[j] if im_row is not None else 0
            if x or y:
                key = (x, y)
                v = cache.get(key)
                if v is None:
                    v = GaussianRational(Fraction(x, den), Fraction(y, den))
                    cache[key] = v
                entries[(i, j)] = v
    return ExactMatrix._make(n, p, entries)


# -- vector bases --------------------------------------------------------------


@dataclass(frozen=True)
class VectorBasis:
    """Ordered list of vectors, stored as the columns of one matrix.

    Columns are normalized so the first nonzero coordinate is 1;
    independence is checked on demand via rank.
    """

    matrix: ExactMatrix

    @property
    def ambient_dim(self) -> int:
        return self.matrix.nrows

    @property
    def size(self) -> int:
        return self.matrix.ncols

    def column(self, j: int) -> ExactMatrix:
        col = {(r, 0): v for (r, c), v in self.matrix.entries.items() if c == j}
        return ExactMatrix._make(self.ambient_dim, 1, col)

    def verify_independent(self) -> bool:
        return rank(self.matrix) == self.size

    @staticmethod
    def from_columns(ambient_dim: int, columns, normalize: bool = True) -> "VectorBasis":
        """Assemble columns into a basis; by default each column is scaled so
        its first nonzero coordinate is 1.  Pass normalize=False for chain
        bases whose relative scaling carries meaning."""
        entries = {}
        ncols = 0
        for j, col in enumerate(columns):
            ncols = j + 1
            items = sorted(col.items()) if isinstance(col, dict) else list(enumerate(col))
            lead = None
            for r, v in items:
                v = _as_scalar(v)
                if v:
                    lead = v
                    break
            if lead is None:
                raise ValueError(f"basis vector {j} is zero")
            inv = lead.inverse() if normalize else None
            for r, v in items:
                v = _as_scalar(v)
                if v:
                    entries[(r, j)] = v * inv if normalize else v
        return VectorBasis(ExactMatrix._make(ambient_dim, ncols, entries))

    @staticmethod
    def concat(bases) -> "VectorBasis":
        bases = list(bases)
        ambient = bases[0].ambient_dim
        entries = {}
        offset = 0
        for b in bases:
            if b.ambient_dim != ambient:
                raise ValueError("ambient dimension mismatch")
            for (r, c), v in b.matrix.entries.items():
                entries[(r, c + offset)] = v
            offset += b.size
        return VectorBasis(ExactMatrix._make(ambient, offset, entries))


# -- elimination: echelon form, rank, kernels ----------------------------------


def _echelon(rows, ncols, reduce_up=True):
    """In-place row echelon over Q(i); returns pivot (row, col) list.

    Pivot choice is the first row with a nonzero entry in column order,
    which keeps every output deterministic.
    """
    pivots = []
    pivot_row = 0
    nrows = len(rows)
    for col in range(ncols):
        sel = None
        for r in range(pivot_row, nrows):
            if rows[r][col]:
                sel = r
                break
        if sel is None:
            continue
        rows[pivot_row], rows[sel] = rows[sel], rows[pivot_row]
        prow = rows[pivot_row]
        inv = prow[col].inverse()
        for j in range(col, ncols):
            if prow[j]:
                prow[j] = prow[j] * inv
        sweep = range(nrows) if reduce_up else range(pivot_row + 1, nrows)
        for r in sweep:
            if r == pivot_row:
                continue
            factor = rows[r][col]
            if factor:
                row = rows[r]
                for j in range(col, ncols):
                    if prow[j]:
                        row[j] = row[j] - factor * prow[j]
        pivots.append((pivot_row, col))
        pivot_row += 1
        if pivot_row == nrows:
            break
    return pivots


def rank(m: ExactMatrix) -> int:
    rows = m.to_rows()
    return len(_echelon(rows, m.ncols, reduce_up=False))


def kernel_basis(m: ExactMatrix) -> VectorBasis:
    """Basis of the right null space, reduced and normalized; empty if injective."""
    rows = m.to_rows()
    pivots = _echelon(rows, m.ncols)
    pivot_cols = [c for (_r, c) in pivots]
    pivot_of_col = {c: r for (r, c) in pivots}
    free_cols = [c for c in range(m.ncols) if c not in pivot_of_col]
    columns = []
    one = GaussianRational(1)
    for f in free_cols:
        vec = {f: one}
        for c in pivot_cols:
            coeff = rows[pivot_of_col[c]][f]
            if coeff:
                vec[c] = -coeff
        columns.append(vec)
    if not columns:
        return VectorBasis(ExactMatrix.zeros(m.ncols, 0))
    return VectorBasis.from_columns(m.ncols, columns)


def invert(m: ExactMatrix) -> ExactMatrix:
    if not m.is_square():
        raise ValueError("inverse of a non-square matrix")
    n = m.nrows
    one = GaussianRational(1)
    aug = [
        row + [one if j == i else ZERO for j in range(n)]
        for i, row in enumerate(m.to_rows())
    ]
    pivots = _echelon(aug, 2 * n)
    if len(pivots) < n or any(c >= n for (_r, c) in pivots[:n]):
        raise ValueError("matrix is singular")
    entries = {}
    for i in range(n):
        for j in range(n):
            v = aug[i][n + j]
            if v:
                entries[(i, j)] = v
    return ExactMatrix._make(n, n, entries)


# -- restriction to an invariant subspace --------------------------------------


class BasisSolver:
    """Solves S*c = w repeatedly for a fixed full-column-rank S."""

    def __init__(self, basis: VectorBasis):
        s = basis.matrix
        k = s.ncols
        row_data: dict = {}
        for (r, c), v in s.entries.items():
            row_data.setdefault(r, [ZERO] * k)[c] = v
        picked_rows = []
        reduced = []
        pivot_pos = []
        for r in sorted(row_data):
            vec = list(row_data[r])
            for pos, red in zip(pivot_pos, reduced):
                f = vec[pos]
                if f:
                    for j in range(k):
                        if red[j]:
                            vec[j] = vec[j] - f * red[j]
            lead = next((j for j in range(k) if vec[j]), None)
            if lead is None:
                continue
            inv = vec[lead].inverse()
            vec = [x * inv for x in vec]
            reduced.append(vec)
            pivot_pos.append(lead)
            picked_rows.append(r)
            if len(picked_rows) == k:
                break
        if len(picked_rows) < k:
            raise ValueError("basis columns are linearly dependent")
        square = ExactMatrix.from_rows(
            [[s.get(r, c) for c in range(k)] for r in picked_rows]
        )
        self.basis = basis
        self.picked_rows = picked_rows
        self.inverse = invert(square)

    def solve(self, w: ExactMatrix) -> ExactMatrix | None:
        """Coordinates of column vector w in the basis, or None if outside span."""
        sub = ExactMatrix.column_vector([w.get(r, 0) for r in self.picked_rows])
        c = self.inverse @ sub
        if (self.basis.matrix @ c) != w:
            return None
        return c


def restrict(m: ExactMatrix, basis: VectorBasis) -> ExactMatrix:
    """Matrix of m in basis coordinates; fails loudly if span is not invariant."""
    if m.ncols != basis.ambient_dim:
        raise ValueError("matrix and basis ambient dimensions differ")
    solver = BasisSolver(basis)
    k = basis.size
    entries = {}
    for j in range(k):
        w = m @ basis.column(j)
        c = solver.solve(w)
        if c is None:
            raise ValueError(f"subspace not invariant: image of basis vector {j} leaves the span")
        for (r, _), v in c.entries.items():
            entries[(r, j)] = v
    return ExactMatrix._make(k, k, entries)


# -- nilpotent exponentials ------------------------------------------------------


def exp_nilpotent(n: ExactMatrix, nilpotency_bound: int) -> ExactMatrix:
    """Sum_{j<k} n^j/j! for nilpotent n with n^k = 0, k <= nilpotency_bound."""
    if not n.is_square():
        raise ValueError("exponential of a non-square matrix")
    total = ExactMatrix.identity(n.nrows)
    term = total
    for j in range(1, nilpotency_bound + 1):
        term = (term @ n) * Fraction(1, j)
        if term.is_zero():
            return total
        total = total + term
    raise ValueError(
        f"power series did not terminate within {nilpotency_bound} terms; input is not nilpotent there"
    )


# -- exchange format --------------------------------------------------------------


def format_matrix(m: ExactMatrix) -> str:
    """Line-oriented text form: 'dims r c' then 'row col value' per nonzero."""
    lines = [f"dims {m.nrows} {m.ncols}"]
    for (r, c) in sorted(m.entries):
        lines.append(f"{r} {c} {m.entries[(r, c)]}")
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> ExactMatrix:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("dims "):
        raise ValueError("matrix text must start with a 'dims <nrows> <ncols>' line")
    _, nr, nc = lines[0].split()
    entries = {}
    for ln in lines[1:]:
        r, c, val = ln.split(maxsplit=2)
        key = (int(r), int(c))
        if key in entries:
            raise ValueError(f"duplicate entry at {key}")
        entries[key] = GaussianRational.parse(val)
    return ExactMatrix(int(nr), int(nc), entries)


def write_matrix(m: ExactMatrix, path) -> None:
    with open(path, "w") as fp:
        fp.write(format_matrix(m))


def read_matrix(path) -> ExactMatrix:
    with open(path) as fp:
        return parse_matrix(fp.read())
