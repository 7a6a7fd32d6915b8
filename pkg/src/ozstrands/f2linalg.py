"""Linear algebra over GF(2) with rows packed into Python ints.

A matrix with shape (rows, cols) acts on column vectors of length cols.
Vectors are ints whose bit j is the j-th coordinate.
"""

from __future__ import annotations

from .errors import ConsistencyError


class F2Matrix:
    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, entries=()):
        self.nrows = nrows
        self.ncols = ncols
        rows = [0] * nrows
        for r, c in entries:
            if not (0 <= r < nrows and 0 <= c < ncols):
                raise IndexError(f"entry {(r, c)} outside {nrows}x{ncols}")
            rows[r] ^= 1 << c
        self.rows = rows

    @classmethod
    def from_rows(cls, rows, ncols):
        m = cls(0, ncols)
        m.rows = list(rows)
        m.nrows = len(m.rows)
        return m

    @classmethod
    def from_columns(cls, columns, nrows):
        """Build from a list of column vectors (ints with bit r = row r)."""
        m = cls(nrows, len(columns))
        for c, col in enumerate(columns):
            while col:
                low = col & -col
                m.rows[low.bit_length() - 1] |= 1 << c
                col ^= low
        return m

    @property
    def entries(self) -> frozenset:
        return frozenset((r, c) for r, row in enumerate(self.rows)
                         for c in range(self.ncols) if row >> c & 1)

    def columns(self) -> list[int]:
        cols = [0] * self.ncols
        for r, row in enumerate(self.rows):
            while row:
                low = row & -row
                cols[low.bit_length() - 1] |= 1 << r
                row ^= low
        return cols

    def apply(self, vec: int) -> int:
        out = 0
        for r, row in enumerate(self.rows):
            if (row & vec).bit_count() & 1:
                out |= 1 << r
        return out

    def __matmul__(self, other: "F2Matrix") -> "F2Matrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        return F2Matrix.from_columns([self.apply(c) for c in other.columns()], self.nrows)

    def is_zero(self) -> bool:
        return not any(self.rows)

    def __eq__(self, other):
        return (isinstance(other, F2Matrix) and self.shape == other.shape
                and self.rows == other.rows)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __repr__(self):
        return f"F2Matrix({self.nrows}x{self.ncols}, {sorted(self.entries)})"


def reduce_basis(vectors) -> dict[int, int]:
    """Fully reduced echelon basis keyed by pivot bit (lowest set bit)."""
    basis: dict[int, int] = {}
    for v in vectors:
        v = reduce_vector(v, basis)
        if not v:
            continue
        pivot = (v & -v).bit_length() - 1
        for p, b in basis.items():
            if b >> pivot & 1:
                basis[p] = b ^ v
        basis[pivot] = v
    return basis


def reduce_vector(v: int, basis: dict[int, int]) -> int:
    for p, b in basis.items():
        if v >> p & 1:
            v ^= b
    return v


def rank(m: F2Matrix) -> int:
    return len(reduce_basis(m.rows))


def kernel_basis(m: F2Matrix) -> list[int]:
    """Basis of the null space as int vectors of length m.ncols."""
    basis = reduce_basis(m.rows)
    out = []
    for f in range(m.ncols):
        if f in basis:
            continue
        vec = 1 << f
        for p, row in basis.items():
            if row >> f & 1:
                vec |= 1 << p
        out.append(vec)
    return out


def homology_dim(d_out: F2Matrix, d_in: F2Matrix) -> int:
    """dim ker(d_out) - rank(d_in) for C_upper --d_in--> C --d_out--> C_lower."""
    check_composable(d_out, d_in)
    return d_out.ncols - rank(d_out) - rank(d_in)


def check_composable(d_out: F2Matrix, d_in: F2Matrix):
    if d_out.ncols != d_in.nrows:
        raise ConsistencyError(f"cannot compose {d_out.shape} after {d_in.shape}")
    if not (d_out @ d_in).is_zero():
        raise ConsistencyError("boundary composition is nonzero")


def homology_representatives(d_out: F2Matrix, d_in: F2Matrix) -> list[int]:
    """Cycles whose classes form a basis of ker(d_out)/im(d_in)."""
    check_composable(d_out, d_in)
    boundaries = reduce_basis(d_in.columns())
    reps = []
    for z in kernel_basis(d_out):
        r = reduce_vector(z, boundaries)
        if r:
            pivot = (r & -r).bit_length() - 1
            for p, b in boundaries.items():
                if b >> pivot & 1:
                    boundaries[p] = b ^ r
            boundaries[pivot] = r
            reps.append(z)
    return reps


def independent_modulo(vectors, subspace) -> bool:
    """True iff the vectors are linearly independent modulo span(subspace)."""
    base = reduce_basis(subspace)
    full = reduce_basis(list(subspace) + list(vectors))
    return len(full) == len(base) + len(vectors)


__all__ = [
    "F2Matrix", "rank", "kernel_basis", "homology_dim", "homology_representatives",
    "independent_modulo", "reduce_basis", "reduce_vector", "check_composable",
]
