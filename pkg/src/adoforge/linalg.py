"""Exact sparse linear algebra over the rationals.

Matrices are stored as sparse row maps of ``fractions.Fraction`` entries and
treated as immutable after construction.  Every reduction pivots on the
leftmost column / first nonzero row, so all outputs are canonical and two
runs on equal inputs are bit-identical.  No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import DimensionMismatch, KernelNotContained, NotNilpotent

F0 = Fraction(0)
F1 = Fraction(1)

Vector = tuple[Fraction, ...]


def frac(x) -> Fraction:
    """Coerce ints, strings like ``"p/q"``, and Fractions to Fraction."""
    return x if isinstance(x, Fraction) else Fraction(x)


def vector(values: Iterable) -> Vector:
    return tuple(frac(v) for v in values)


def unit_vector(n: int, i: int) -> Vector:
    return tuple(F1 if j == i else F0 for j in range(n))


def zero_vector(n: int) -> Vector:
    return (F0,) * n


def vec_add(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c: Fraction, v: Sequence[Fraction]) -> Vector:
    return tuple(c * a for a in v)


def vec_is_zero(v: Sequence[Fraction]) -> bool:
    return all(a == 0 for a in v)


class RationalMatrix:
    """Sparse exact-rational matrix in row-major coordinate form.

    Internal storage is ``{row: {col: Fraction}}`` with no zero values and no
    empty rows, so equality of the maps is equality of matrices.
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, data: dict[int, dict[int, Fraction]]):
        # Takes ownership of `data`; callers go through the classmethods.
        self.rows = rows
        self.cols = cols
        self._data = data

    @classmethod
    def zero(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, {})

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, {i: {i: F1} for i in range(n)})

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Iterable[tuple[int, int, object]]) -> "RationalMatrix":
        data: dict[int, dict[int, Fraction]] = {}
        for r, c, v in entries:
            if not (0 <= r < rows and 0 <= c < cols):
                raise DimensionMismatch(f"entry ({r},{c}) outside {rows}x{cols}")
            fv = frac(v)
            if fv == 0:
                continue
            row = data.setdefault(r, {})
            nv = row.get(c, F0) + fv
            if nv:
                row[c] = nv
            else:
                del row[c]
                if not row:
                    del data[r]
        return cls(rows, cols, data)

    @classmethod
    def from_rows(cls, dense: Sequence[Sequence]) -> "RationalMatrix":
        rows = len(dense)
        cols = len(dense[0]) if rows else 0
        return cls.from_entries(
            rows, cols, ((r, c, v) for r, rowvals in enumerate(dense) for c, v in enumerate(rowvals))
        )

    @classmethod
    def from_columns(cls, ambient: int, columns: Sequence[Sequence]) -> "RationalMatrix":
        return cls.from_entries(
            ambient, len(columns), ((r, j, v) for j, col in enumerate(columns) for r, v in enumerate(col))
        )

    def entry(self, r: int, c: int) -> Fraction:
        return self._data.get(r, {}).get(c, F0)

    def entries(self) -> Iterator[tuple[int, int, Fraction]]:
        """Sorted row-major stream of the nonzero entries."""
        for r in sorted(self._data):
            row = self._data[r]
            for c in sorted(row):
                yield r, c, row[c]

    def nnz(self) -> int:
        return sum(len(row) for row in self._data.values())

    def is_zero(self) -> bool:
        return not self._data

    def row_map(self, r: int) -> dict[int, Fraction]:
        return self._data.get(r, {})

    def column(self, j: int) -> Vector:
        return tuple(self._data.get(r, {}).get(j, F0) for r in range(self.rows))

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def to_dense(self) -> list[list[Fraction]]:
        return [[self.entry(r, c) for c in range(self.cols)] for r in range(self.rows)]

    def transpose(self) -> "RationalMatrix":
        data: dict[int, dict[int, Fraction]] = {}
        for r, row in self._data.items():
            for c, v in row.items():
                data.setdefault(c, {})[r] = v
        return RationalMatrix(self.cols, self.rows, data)

    def scale(self, factor) -> "RationalMatrix":
        f = frac(factor)
        if f == 0:
            return RationalMatrix.zero(self.rows, self.cols)
        data = {r: {c: f * v for c, v in row.items()} for r, row in self._data.items()}
        return RationalMatrix(self.rows, self.cols, data)

    def __neg__(self) -> "RationalMatrix":
        return self.scale(-1)

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix addition shape mismatch")
        data = {r: dict(row) for r, row in self._data.items()}
        for r, row in other._data.items():
            target = data.setdefault(r, {})
            for c, v in row.items():
                nv = target.get(c, F0) + v
                if nv:
                    target[c] = nv
                else:
                    del target[c]
            if not target:
                del data[r]
        return RationalMatrix(self.rows, self.cols, data)

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return self + (-other)

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        data: dict[int, dict[int, Fraction]] = {}
        odata = other._data
        for r, row in self._data.items():
            accum: dict[int, Fraction] = {}
            for k, a in row.items():
                brow = odata.get(k)
                if not brow:
                    continue
                for c, b in brow.items():
                    nv = accum.get(c, F0) + a * b
                    if nv:
                        accum[c] = nv
                    else:
                        del accum[c]
            if accum:
                data[r] = accum
        return RationalMatrix(self.rows, other.cols, data)

    def apply(self, vec: Sequence[Fraction]) -> Vector:
        """Matrix-vector product as a dense tuple."""
        if len(vec) != self.cols:
            raise DimensionMismatch("vector length does not match column count")
        out = [F0] * self.rows
        for r, row in self._data.items():
            s = F0
            for c, v in row.items():
                x = vec[c]
                if x:
                    s += v * x
            out[r] = s
        return tuple(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and self._data == other._data

    __hash__ = None  # mutable-looking container semantics; use entries() if needed

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"


def hstack(blocks: Sequence[RationalMatrix]) -> RationalMatrix:
    rows = blocks[0].rows
    if any(b.rows != rows for b in blocks):
        raise DimensionMismatch("hstack row mismatch")
    data: dict[int, dict[int, Fraction]] = {}
    offset = 0
    for b in blocks:
        for r, row in b._data.items():
            target = data.setdefault(r, {})
            for c, v in row.items():
                target[c + offset] = v
        offset += b.cols
    return RationalMatrix(rows, offset, data)


def vstack(blocks: Sequence[RationalMatrix]) -> RationalMatrix:
    cols = blocks[0].cols
    if any(b.cols != cols for b in blocks):
        raise DimensionMismatch("vstack column mismatch")
    data: dict[int, dict[int, Fraction]] = {}
    offset = 0
    for b in blocks:
        for r, row in b._data.items():
            data[r + offset] = dict(row)
        offset += b.rows
    return RationalMatrix(offset, cols, data)


def block_diag(blocks: Sequence[RationalMatrix]) -> RationalMatrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    data: dict[int, dict[int, Fraction]] = {}
    ro = co = 0
    for b in blocks:
        for r, row in b._data.items():
            data[r + ro] = {c + co: v for c, v in row.items()}
        ro += b.rows
        co += b.cols
    return RationalMatrix(rows, cols, data)


def kronecker(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    """Kronecker product: entry ((i*rB+k),(j*cB+l)) = A[i,j]*B[k,l]."""
    data: dict[int, dict[int, Fraction]] = {}
    for i, arow in a._data.items():
        for k, brow in b._data.items():
            target: dict[int, Fraction] = {}
            for j, av in arow.items():
                base = j * b.cols
                for l, bv in brow.items():
                    target[base + l] = av * bv
            data[i * b.rows + k] = target
    return RationalMatrix(a.rows * b.rows, a.cols * b.cols, data)


# --- row reduction -------------------------------------------------------

def _rref_rowdicts(rowdicts: list[dict[int, Fraction]], cols: int) -> tuple[list[dict[int, Fraction]], list[int]]:
    """Reduced row echelon form of sparse row dicts, in place on copies.

    Pivoting is leftmost column, first nonzero row; output is the canonical
    RREF of the row space.
    """
    rows = [dict(r) for r in rowdicts]
    nrows = len(rows)
    pivots: list[int] = []
    pr = 0
    for c in range(cols):
        pivot = -1
        for i in range(pr, nrows):
            if c in rows[i]:
                pivot = i
                break
        if pivot < 0:
            continue
        rows[pr], rows[pivot] = rows[pivot], rows[pr]
        prow = rows[pr]
        pv = prow[c]
        if pv != 1:
            inv = F1 / pv
            prow = {k: v * inv for k, v in prow.items()}
            rows[pr] = prow
        for i in range(nrows):
            if i == pr:
                continue
            row = rows[i]
            f = row.get(c)
            if f is None:
                continue
            for k, v in prow.items():
                nv = row.get(k, F0) - f * v
                if nv:
                    row[k] = nv
                else:
                    del row[k]
        pivots.append(c)
        pr += 1
        if pr == nrows:
            break
    return rows, pivots


def _matrix_rowdicts(m: RationalMatrix) -> list[dict[int, Fraction]]:
    return [dict(m._data.get(r, {})) for r in range(m.rows)]


def rref(m: RationalMatrix) -> tuple[RationalMatrix, list[int], int]:
    """Reduced row echelon form, pivot columns, and rank."""
    rows, pivots = _rref_rowdicts(_matrix_rowdicts(m), m.cols)
    data = {r: row for r, row in enumerate(rows) if row}
    return RationalMatrix(m.rows, m.cols, data), pivots, len(pivots)


def rank(m: RationalMatrix) -> int:
    return rref(m)[2]


class Subspace:
    """A subspace of Q^n in canonical column-reduced echelon form.

    The stored basis columns are the nonzero rows of the RREF of any spanning
    set, so equal subspaces always compare equal.  ``_rows``/``_pivots`` keep
    the echelon rows for fast membership reduction.
    """

    __slots__ = ("ambient_dim", "_rows", "_pivots")

    def __init__(self, ambient_dim: int, rows: list[dict[int, Fraction]], pivots: list[int]):
        self.ambient_dim = ambient_dim
        self._rows = rows
        self._pivots = pivots

    @classmethod
    def from_vectors(cls, ambient_dim: int, vectors: Iterable[Sequence[Fraction]]) -> "Subspace":
        rowdicts = []
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionMismatch("spanning vector has wrong length")
            row = {i: frac(x) for i, x in enumerate(v) if x}
            if row:
                rowdicts.append(row)
        rows, pivots = _rref_rowdicts(rowdicts, ambient_dim)
        return cls(ambient_dim, rows[: len(pivots)], pivots)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, [], [])

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, [{i: F1} for i in range(ambient_dim)], list(range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self._pivots)

    @property
    def basis(self) -> RationalMatrix:
        """Basis matrix; column j is the j-th canonical basis vector."""
        data: dict[int, dict[int, Fraction]] = {}
        for j, row in enumerate(self._rows):
            for i, v in row.items():
                data.setdefault(i, {})[j] = v
        return RationalMatrix(self.ambient_dim, self.dim, data)

    def basis_vectors(self) -> list[Vector]:
        return [tuple(row.get(i, F0) for i in range(self.ambient_dim)) for row in self._rows]

    def coordinates_of(self, v: Sequence[Fraction]) -> Vector | None:
        """Coefficients of v in the canonical basis, or None if v is outside."""
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector length does not match ambient dimension")
        residual = {i: frac(x) for i, x in enumerate(v) if x}
        coords = []
        for p, row in zip(self._pivots, self._rows):
            c = residual.get(p, F0)
            coords.append(c)
            if c:
                for k, w in row.items():
                    nv = residual.get(k, F0) - c * w
                    if nv:
                        residual[k] = nv
                    else:
                        residual.pop(k, None)
        if residual:
            return None
        return tuple(coords)

    def contains_vector(self, v: Sequence[Fraction]) -> bool:
        return self.coordinates_of(v) is not None

    def contains(self, other: "Subspace") -> bool:
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatch("ambient dimension mismatch")
        return all(self.contains_vector(v) for v in other.basis_vectors())

    def add(self, other: "Subspace") -> "Subspace":
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatch("ambient dimension mismatch")
        return Subspace.from_vectors(self.ambient_dim, self.basis_vectors() + other.basis_vectors())

    def intersect(self, other: "Subspace") -> "Subspace":
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatch("ambient dimension mismatch")
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim)
        a, b = self.basis, other.basis
        combined = hstack([a, -b])
        null = kernel_basis(combined)
        vectors = []
        for w in null.basis_vectors():
            vectors.append(a.apply(w[: a.cols]))
        return Subspace.from_vectors(self.ambient_dim, vectors)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self._pivots == other._pivots
            and self._rows == other._rows
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim} of Q^{self.ambient_dim})"


def kernel_basis(m: RationalMatrix) -> Subspace:
    """Null space of m as a canonical Subspace of Q^cols."""
    rows, pivots = _rref_rowdicts(_matrix_rowdicts(m), m.cols)
    pivot_set = set(pivots)
    vectors = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        vec = [F0] * m.cols
        vec[free] = F1
        for j, p in enumerate(pivots):
            coeff = rows[j].get(free)
            if coeff:
                vec[p] = -coeff
        vectors.append(vec)
    return Subspace.from_vectors(m.cols, vectors)


def image_basis(m: RationalMatrix) -> Subspace:
    """Column space of m as a canonical Subspace of Q^rows."""
    return Subspace.from_vectors(m.rows, m.columns())


def solve_multi(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix | None:
    """One X with A @ X = B, or None if inconsistent.

    Free variables are set to zero, so the solution is canonical.
    """
    if a.rows != b.rows:
        raise DimensionMismatch("solve: row counts differ")
    aug = hstack([a, b])
    rows, pivots = _rref_rowdicts(_matrix_rowdicts(aug), aug.cols)
    n = a.cols
    data: dict[int, dict[int, Fraction]] = {}
    for j, p in enumerate(pivots):
        if p >= n:
            return None  # pivot in the right-hand block: inconsistent
        row = {c - n: v for c, v in rows[j].items() if c >= n}
        if row:
            data[p] = row
    return RationalMatrix(n, b.cols, data)


def solve(a: RationalMatrix, b: Sequence[Fraction]) -> Vector | None:
    """One x with A @ x = b, or None; free variables set to zero."""
    if len(b) != a.rows:
        raise DimensionMismatch("solve: right-hand side has wrong length")
    bm = RationalMatrix.from_entries(a.rows, 1, ((i, 0, v) for i, v in enumerate(b)))
    x = solve_multi(a, bm)
    if x is None:
        return None
    return x.column(0)


def factor_through(f: RationalMatrix, g: RationalMatrix) -> RationalMatrix:
    """The canonical h with h @ f = g, assuming Ker f is contained in Ker g.

    h sends f(e_p) to g(e_p) on the pivot columns p of f and kills a fixed
    complement of Im f (the standard basis vectors at the non-pivot
    coordinates of the column space).  Raises KernelNotContained when the
    kernel inclusion fails.
    """
    if f.rows != f.cols or g.rows != g.cols or f.rows != g.rows:
        raise DimensionMismatch("factor_through expects equal-size square matrices")
    n = f.rows
    for v in kernel_basis(f).basis_vectors():
        if not vec_is_zero(g.apply(v)):
            raise KernelNotContained("Ker f is not contained in Ker g")
    _, pivot_cols, _ = rref(f)
    image = image_basis(f)
    complement = [i for i in range(n) if i not in set(image._pivots)]
    lhs_cols = [f.column(p) for p in pivot_cols] + [unit_vector(n, i) for i in complement]
    rhs_cols = [g.column(p) for p in pivot_cols] + [zero_vector(n) for _ in complement]
    lhs = RationalMatrix.from_columns(n, lhs_cols)
    rhs = RationalMatrix.from_columns(n, rhs_cols)
    ht = solve_multi(lhs.transpose(), rhs.transpose())
    assert ht is not None, "factorization system must be consistent"
    h = ht.transpose()
    assert h @ f == g, "factor_through must reproduce g exactly"
    return h


def nilpotency_index(m: RationalMatrix) -> int:
    """Smallest n >= 1 with m**n = 0; NotNilpotent if no such n <= size."""
    if m.rows != m.cols:
        raise DimensionMismatch("nilpotency_index expects a square matrix")
    if m.is_zero():
        return 1
    power = m
    for n in range(2, m.rows + 1):
        power = power @ m
        if power.is_zero():
            return n
    raise NotNilpotent(f"matrix of size {m.rows} is not nilpotent")


class SpanBasis:
    """Incremental echelon basis of sparse vectors, for span closures."""

    __slots__ = ("_rows",)

    def __init__(self):
        self._rows: dict[int, dict[int, Fraction]] = {}  # pivot -> normalized row

    def reduce(self, vec: dict[int, Fraction]) -> dict[int, Fraction]:
        vec = dict(vec)
        while vec:
            lead = min(vec)
            row = self._rows.get(lead)
            if row is None:
                return vec
            f = vec[lead]
            for k, v in row.items():
                nv = vec.get(k, F0) - f * v
                if nv:
                    vec[k] = nv
                else:
                    del vec[k]
        return vec

    def add(self, vec: dict[int, Fraction]) -> bool:
        """Add a vector; True if it enlarged the span."""
        residual = self.reduce(vec)
        if not residual:
            return False
        lead = min(residual)
        inv = F1 / residual[lead]
        self._rows[lead] = {k: v * inv for k, v in residual.items()}
        return True

    @property
    def dim(self) -> int:
        return len(self._rows)
