"""
Exact matrices over the rationals.

Rows are kept as sparse ``{col: Fraction}`` maps unless the fill ratio reaches
``DENSE_THRESHOLD``, in which case a dense row-major table is stored. Elimination
is fraction-free: rows are scaled to integers, reduced with Bareiss' update
(pivot = first nonzero entry in column order) and only the final back
substitution works with Fractions.
"""

from fractions import Fraction
from math import lcm
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from ncpoisson.config import DENSE_THRESHOLD
from ncpoisson.exceptions import DimensionError
from ncpoisson.utils.logger import get_logger

logger = get_logger(__name__)

Vector = List[Fraction]
SparseRow = Dict[int, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


class MatrixQ:
    """Immutable rational matrix"""

    __slots__ = ("_rows", "_cols", "_sparse", "_dense")

    def __init__(self, rows: int, cols: int, entries: Optional[Mapping[Tuple[int, int], object]] = None):
        if rows < 0 or cols < 0:
            raise DimensionError(f"negative shape ({rows}, {cols})")
        self._rows = rows
        self._cols = cols
        sparse: List[SparseRow] = [dict() for _ in range(rows)]
        for (i, j), value in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise DimensionError(f"entry ({i}, {j}) outside a {rows}x{cols} matrix")
            value = Fraction(value)
            if value:
                sparse[i][j] = value
        nnz = sum(len(r) for r in sparse)
        if rows and cols and Fraction(nnz, rows * cols) >= DENSE_THRESHOLD:
            self._dense: Optional[List[List[Fraction]]] = [
                [r.get(j, ZERO) for j in range(cols)] for r in sparse
            ]
            self._sparse: Optional[List[SparseRow]] = None
        else:
            self._dense = None
            self._sparse = sparse

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[object]]) -> "MatrixQ":
        n_rows = len(rows)
        n_cols = len(rows[0]) if n_rows else 0
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != n_cols:
                raise DimensionError("ragged rows")
            for j, value in enumerate(row):
                if value:
                    entries[(i, j)] = value
        return cls(n_rows, n_cols, entries)

    @classmethod
    def from_sparse_rows(cls, rows: Sequence[Mapping[int, object]], cols: int) -> "MatrixQ":
        entries = {(i, j): v for i, row in enumerate(rows) for j, v in row.items()}
        return cls(len(rows), cols, entries)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[object]], rows: int) -> "MatrixQ":
        entries = {}
        for j, column in enumerate(columns):
            if len(column) != rows:
                raise DimensionError("column length does not match row count")
            for i, value in enumerate(column):
                if value:
                    entries[(i, j)] = value
        return cls(rows, len(columns), entries)

    @classmethod
    def from_sparse_columns(cls, columns: Sequence[Mapping[int, object]], rows: int) -> "MatrixQ":
        entries = {(i, j): v for j, column in enumerate(columns) for i, v in column.items()}
        return cls(rows, len(columns), entries)

    @classmethod
    def identity(cls, n: int) -> "MatrixQ":
        return cls(n, n, {(i, i): ONE for i in range(n)})

    @classmethod
    def zero(cls, rows: int, cols: int) -> "MatrixQ":
        return cls(rows, cols)

    # -- access ---------------------------------------------------------------

    @property
    def rows(self) -> int:
        return self._rows

    @property
    def cols(self) -> int:
        return self._cols

    @property
    def shape(self) -> Tuple[int, int]:
        return (self._rows, self._cols)

    @property
    def is_square(self) -> bool:
        return self._rows == self._cols

    @property
    def storage(self) -> str:
        return "dense" if self._dense is not None else "sparse"

    def row(self, i: int) -> SparseRow:
        if self._sparse is not None:
            return dict(self._sparse[i])
        return {j: v for j, v in enumerate(self._dense[i]) if v}

    def sparse_rows(self) -> List[SparseRow]:
        return [self.row(i) for i in range(self._rows)]

    def entries(self) -> Dict[Tuple[int, int], Fraction]:
        return {(i, j): v for i in range(self._rows) for j, v in self.row(i).items()}

    def nnz(self) -> int:
        return sum(len(self.row(i)) for i in range(self._rows))

    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        i, j = index
        if self._sparse is not None:
            return self._sparse[i].get(j, ZERO)
        return self._dense[i][j]

    def to_lists(self) -> List[List[Fraction]]:
        if self._dense is not None:
            return [list(r) for r in self._dense]
        return [[r.get(j, ZERO) for j in range(self._cols)] for r in self._sparse]

    def is_zero(self) -> bool:
        return all(not self.row(i) for i in range(self._rows))

    # -- arithmetic -----------------------------------------------------------

    def apply(self, vector: Sequence[object]) -> Vector:
        """Matrix-vector product"""
        if len(vector) != self._cols:
            raise DimensionError(f"vector of length {len(vector)} for {self._cols} columns")
        out = []
        for i in range(self._rows):
            out.append(sum((v * vector[j] for j, v in self.row(i).items()), ZERO))
        return out

    def __matmul__(self, other: "MatrixQ") -> "MatrixQ":
        if self._cols != other._rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        other_rows = other.sparse_rows()
        entries: Dict[Tuple[int, int], Fraction] = {}
        for i in range(self._rows):
            acc: SparseRow = {}
            for k, a in self.row(i).items():
                for j, b in other_rows[k].items():
                    acc[j] = acc.get(j, ZERO) + a * b
            for j, v in acc.items():
                if v:
                    entries[(i, j)] = v
        return MatrixQ(self._rows, other._cols, entries)

    def __add__(self, other: "MatrixQ") -> "MatrixQ":
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        entries = self.entries()
        for key, v in other.entries().items():
            entries[key] = entries.get(key, ZERO) + v
        return MatrixQ(self._rows, self._cols, entries)

    def __neg__(self) -> "MatrixQ":
        return MatrixQ(self._rows, self._cols, {k: -v for k, v in self.entries().items()})

    def __sub__(self, other: "MatrixQ") -> "MatrixQ":
        return self + (-other)

    def scaled(self, factor: object) -> "MatrixQ":
        factor = Fraction(factor)
        return MatrixQ(self._rows, self._cols, {k: v * factor for k, v in self.entries().items()})

    def shifted(self, eigenvalue: object) -> "MatrixQ":
        """self - eigenvalue * I"""
        self._require_square("shift")
        eigenvalue = Fraction(eigenvalue)
        entries = self.entries()
        for i in range(self._rows):
            entries[(i, i)] = entries.get((i, i), ZERO) - eigenvalue
        return MatrixQ(self._rows, self._cols, entries)

    def __pow__(self, exponent: int) -> "MatrixQ":
        self._require_square("power")
        if exponent < 0:
            raise DimensionError("negative matrix power")
        result = MatrixQ.identity(self._rows)
        base = self
        while exponent:
            if exponent & 1:
                result = result @ base
            exponent >>= 1
            if exponent:
                base = base @ base
        return result

    def transpose(self) -> "MatrixQ":
        return MatrixQ(self._cols, self._rows, {(j, i): v for (i, j), v in self.entries().items()})

    def submatrix(self, row_indices: Sequence[int], col_indices: Sequence[int]) -> "MatrixQ":
        col_pos = {c: k for k, c in enumerate(col_indices)}
        entries = {}
        for a, i in enumerate(row_indices):
            for j, v in self.row(i).items():
                if j in col_pos:
                    entries[(a, col_pos[j])] = v
        return MatrixQ(len(row_indices), len(col_indices), entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatrixQ):
            return NotImplemented
        return self.shape == other.shape and self.entries() == other.entries()

    def __hash__(self) -> int:
        return hash((self.shape, frozenset(self.entries().items())))

    def __repr__(self) -> str:
        return f"MatrixQ({self._rows}x{self._cols}, nnz={self.nnz()}, {self.storage})"

    def _require_square(self, what: str) -> None:
        if not self.is_square:
            raise DimensionError(f"{what} needs a square matrix, got {self.shape}")


# -- fraction-free elimination -------------------------------------------------

def _integer_row(row: Mapping[int, Fraction]) -> Dict[int, int]:
    """Scale a rational row to a primitive-free integer row (kernel unchanged)"""
    if not row:
        return {}
    scale = lcm(*(Fraction(v).denominator for v in row.values()))
    return {j: int(Fraction(v) * scale) for j, v in row.items()}


def _bareiss_echelon(rows: List[Dict[int, int]], ncols: int) -> Tuple[List[Dict[int, int]], List[int]]:
    """Row echelon form by Bareiss' fraction-free update; returns (rows, pivot columns)"""
    work = [r for r in rows if r]
    pivots: List[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r >= len(work):
            break
        sel = next((i for i in range(r, len(work)) if work[i].get(c)), None)
        if sel is None:
            continue
        work[r], work[sel] = work[sel], work[r]
        pivot_row = work[r]
        pk = pivot_row[c]
        for i in range(r + 1, len(work)):
            row = work[i]
            a = row.get(c, 0)
            if not a:
                if pk != prev:
                    work[i] = {j: (pk * v) // prev for j, v in row.items()}
                continue
            new: Dict[int, int] = {}
            for j, v in row.items():
                new[j] = pk * v
            for j, v in pivot_row.items():
                new[j] = new.get(j, 0) - a * v
            work[i] = {j: v // prev for j, v in new.items() if v}
        prev = pk
        pivots.append(c)
        r += 1
    return work[:r], pivots


def _reduced_rows(m: MatrixQ, extra: Optional[Sequence[object]] = None) -> Tuple[List[SparseRow], List[int]]:
    """Reduced row echelon rows (pivot entries 1) of m, optionally augmented"""
    ncols = m.cols + (1 if extra is not None else 0)
    int_rows = []
    for i in range(m.rows):
        row = m.row(i)
        if extra is not None and extra[i]:
            row[m.cols] = Fraction(extra[i])
        int_rows.append(_integer_row(row))
    echelon, pivots = _bareiss_echelon(int_rows, ncols)
    reduced: List[SparseRow] = []
    for row, c in zip(echelon, pivots):
        pv = row[c]
        reduced.append({j: Fraction(v, pv) for j, v in row.items()})
    # back substitution, bottom pivot first
    for k in range(len(reduced) - 1, -1, -1):
        c = pivots[k]
        pivot_row = reduced[k]
        for above in range(k):
            target = reduced[above]
            factor = target.get(c)
            if not factor:
                continue
            for j, v in pivot_row.items():
                value = target.get(j, ZERO) - factor * v
                if value:
                    target[j] = value
                else:
                    target.pop(j, None)
    return reduced, pivots


def rank(m: MatrixQ) -> int:
    """Rank over the rationals"""
    _, pivots = _bareiss_echelon([_integer_row(m.row(i)) for i in range(m.rows)], m.cols)
    return len(pivots)


def kernel_basis(m: MatrixQ) -> List[Vector]:
    """Basis of the null space, one vector per free column (ascending)"""
    reduced, pivots = _reduced_rows(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis: List[Vector] = []
    for f in free:
        vec = [ZERO] * m.cols
        vec[f] = ONE
        for row, c in zip(reduced, pivots):
            coeff = row.get(f)
            if coeff:
                vec[c] = -coeff
        basis.append(vec)
    logger.debug("kernel of %dx%d matrix: rank %d, nullity %d", m.rows, m.cols, len(pivots), len(basis))
    return basis


def solve(m: MatrixQ, rhs: Sequence[object]) -> Optional[Vector]:
    """One solution of m x = rhs (free variables set to 0), or None"""
    if len(rhs) != m.rows:
        raise DimensionError(f"right-hand side of length {len(rhs)} for {m.rows} rows")
    reduced, pivots = _reduced_rows(m, extra=rhs)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [ZERO] * m.cols
    for row, c in zip(reduced, pivots):
        x[c] = row.get(m.cols, ZERO)
    return x


def generalized_eigenspace(m: MatrixQ, eigenvalue: object, k: int) -> List[Vector]:
    """Basis of ker (m - eigenvalue I)^k"""
    if not m.is_square:
        raise DimensionError(f"generalized eigenspace needs a square matrix, got {m.shape}")
    if k < 1:
        raise DimensionError("k must be at least 1")
    return kernel_basis(m.shifted(eigenvalue) ** k)


def span_rank(vectors: Iterable[Sequence[object]], length: int) -> int:
    """Dimension of the span of coordinate vectors"""
    rows = [{j: Fraction(v) for j, v in enumerate(vec) if v} for vec in vectors]
    return rank(MatrixQ.from_sparse_rows(rows, length)) if rows else 0


def reduced_basis(vectors: Iterable[Sequence[object]], length: int) -> Tuple[List[Vector], List[int]]:
    """
    Reduced echelon basis of a span together with its pivot positions.

    Coordinates of any v in the span with respect to the returned basis are
    simply ``[v[p] for p in pivots]``.
    """
    rows = [{j: Fraction(v) for j, v in enumerate(vec) if v} for vec in vectors]
    if not rows:
        return [], []
    reduced, pivots = _reduced_rows(MatrixQ.from_sparse_rows(rows, length))
    basis = []
    for row in reduced:
        vec = [ZERO] * length
        for j, v in row.items():
            vec[j] = v
        basis.append(vec)
    return basis, pivots
