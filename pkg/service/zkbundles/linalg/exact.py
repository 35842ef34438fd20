"""
Exact rational linear algebra used by the cohomology engines.

Every dimension computed by the engines is the rank of a matrix whose entries are
polynomial in rational input coefficients, so ranks over Q agree with ranks over C.
Elimination is delegated to sympy's DomainMatrix over QQ in its sparse (SDM) format.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from zkbundles.errors import ZkBundlesError

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]
Vector = Tuple[Fraction, ...]


class DimensionMismatchError(ZkBundlesError, ValueError):
    pass


def to_fraction(value: Scalar) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"Only exact values are accepted, got {type(value).__name__}")
    return Fraction(value)


def _from_domain(element) -> Fraction:
    # works for both the pure-python and the gmpy flavours of QQ elements
    return Fraction(int(element.numerator), int(element.denominator))


def _to_domain(value: Fraction):
    return QQ(value.numerator, value.denominator)


@dataclass(frozen=True)
class SparseMatrix:
    """
    Immutable sparse matrix over Q, entries keyed by (row, col). Zero entries are never stored.
    """

    rows: int
    cols: int
    entries: Mapping[Tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionMismatchError(f"Invalid shape {self.rows}x{self.cols}")
        cleaned: Dict[Tuple[int, int], Fraction] = {}
        for (i, j), value in self.entries.items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise DimensionMismatchError(
                    f"Entry ({i}, {j}) outside {self.rows}x{self.cols} matrix"
                )
            value = to_fraction(value)
            if value != 0:
                cleaned[(i, j)] = value
        object.__setattr__(self, "entries", cleaned)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[Scalar]]) -> "SparseMatrix":
        row_count = len(rows)
        col_count = len(rows[0]) if rows else 0
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != col_count:
                raise DimensionMismatchError("Ragged rows in dense matrix")
            for j, value in enumerate(row):
                if value != 0:
                    entries[(i, j)] = to_fraction(value)
        return cls(row_count, col_count, entries)

    @classmethod
    def from_columns(
        cls, rows: int, columns: Sequence[Mapping[int, Fraction]]
    ) -> "SparseMatrix":
        entries = {}
        for j, column in enumerate(columns):
            for i, value in column.items():
                entries[(i, j)] = value
        return cls(rows, len(columns), entries)

    @classmethod
    def identity(cls, size: int) -> "SparseMatrix":
        return cls(size, size, {(i, i): Fraction(1) for i in range(size)})

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(
            self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()}
        )

    def stack(self, other: "SparseMatrix") -> "SparseMatrix":
        """Rows of `self` followed by rows of `other`."""
        if self.cols != other.cols:
            raise DimensionMismatchError(
                f"Cannot stack {self.rows}x{self.cols} on {other.rows}x{other.cols}"
            )
        entries = dict(self.entries)
        for (i, j), value in other.entries.items():
            entries[(self.rows + i, j)] = value
        return SparseMatrix(self.rows + other.rows, self.cols, entries)

    def to_domain_matrix(self) -> DomainMatrix:
        sdm: Dict[int, Dict[int, object]] = {}
        for (i, j), value in self.entries.items():
            sdm.setdefault(i, {})[j] = _to_domain(value)
        return DomainMatrix(sdm, (self.rows, self.cols), QQ)


def rank(m: SparseMatrix) -> int:
    if m.rows == 0 or m.cols == 0 or not m.entries:
        return 0
    return int(m.to_domain_matrix().rank())


def _rref(m: SparseMatrix) -> Tuple[Dict[int, Dict[int, Fraction]], List[int]]:
    reduced, pivots = m.to_domain_matrix().rref()
    rows: Dict[int, Dict[int, Fraction]] = {}
    for i, row in reduced.to_sparse().rep.items():
        rows[i] = {j: _from_domain(v) for j, v in row.items()}
    return rows, list(pivots)


def nullspace_basis(m: SparseMatrix) -> List[Vector]:
    """
    Exact basis of the right kernel, one vector per free column of the reduced row echelon
    form; the free column carries a 1 and pivot columns carry the negated rref entries.
    """
    if m.cols == 0:
        return []
    if m.rows == 0 or not m.entries:
        return [_unit(m.cols, j) for j in range(m.cols)]

    reduced, pivots = _rref(m)
    pivot_set = set(pivots)
    basis: List[Vector] = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        vector = [Fraction(0)] * m.cols
        vector[free] = Fraction(1)
        for row_index, pivot in enumerate(pivots):
            value = reduced.get(row_index, {}).get(free)
            if value:
                vector[pivot] = -value
        basis.append(tuple(vector))
    return basis


def _unit(size: int, index: int) -> Vector:
    return tuple(Fraction(1) if i == index else Fraction(0) for i in range(size))


def quotient_dim(ambient_dim: int, spanning_vectors: Iterable[Sequence[Scalar]]) -> int:
    """
    Dimension of Q^ambient_dim modulo the span of the given vectors.
    """
    columns = []
    for vector in spanning_vectors:
        if len(vector) != ambient_dim:
            raise DimensionMismatchError(
                f"Vector of length {len(vector)} in ambient space of dimension {ambient_dim}"
            )
        columns.append({i: to_fraction(v) for i, v in enumerate(vector) if v != 0})
    if not columns:
        return ambient_dim
    return ambient_dim - rank(SparseMatrix.from_columns(ambient_dim, columns))


def projected_kernel_dim(constraints: SparseMatrix, projection: SparseMatrix) -> int:
    """
    dim P(ker C) for a constraint matrix C and a projection P on the same unknowns,
    computed as rank([C; P]) - rank(C).
    """
    return rank(constraints.stack(projection)) - rank(constraints)


def pivot_columns(m: SparseMatrix) -> List[int]:
    """Columns not in the span of the columns before them."""
    if m.rows == 0 or not m.entries:
        return []
    _, pivots = _rref(m)
    return pivots


def echelon_rows(m: SparseMatrix) -> List[Tuple[int, Dict[int, Fraction]]]:
    """Nonzero rows of the reduced row echelon form as (pivot column, sparse row) pairs."""
    if m.rows == 0 or not m.entries:
        return []
    reduced, pivots = _rref(m)
    return [(pivot, reduced.get(index, {})) for index, pivot in enumerate(pivots)]
