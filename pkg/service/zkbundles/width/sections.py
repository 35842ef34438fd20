"""
Sections of a frame on the neighbourhood l_D, optionally allowing poles along l.

A section is a tuple of components a_c = sum z^s u^r with s >= 0 that turns holomorphic on V,
i.e. (z^t1 a_0 + p a_1, z^t2 a_1) only has monomials z^s u^r with s <= k*r. Unknowns are the
coefficients (c, r, s) inside ranges wide enough to contain every monomial a section can carry;
the V-conditions that are not automatic become rows of a constraint matrix.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from zkbundles.bundle.bundle_spec import BundleSpec
from zkbundles.bundle.frame import Frame
from zkbundles.errors import UsageError
from zkbundles.linalg.exact import SparseMatrix, echelon_rows, nullspace_basis
from zkbundles.surface.laurent import LaurentPoly2

logger = logging.getLogger(__name__)

# (component, u-degree, z-exponent)
CoordinateKey = Tuple[int, int, int]
SparseVector = Dict[CoordinateKey, Fraction]


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def lowest_pole_degree(frame: Frame) -> int:
    """Smallest u-degree a section over Z_k minus l can reach."""
    k = frame.k
    last = _ceil_div(frame.diagonal[-1], k)
    if frame.rank == 1:
        return last
    first = _ceil_div(frame.diagonal[0], k)
    return min(first, last)


@dataclass
class SectionSpace:
    frame: Frame
    lowest_degree: int
    top_degree: int
    keys: List[CoordinateKey] = field(default_factory=list)
    index: Dict[CoordinateKey, int] = field(default_factory=dict)
    constraints: Optional[SparseMatrix] = None

    @classmethod
    def build(cls, frame: Frame, top_degree: int, with_poles: bool = False) -> "SectionSpace":
        lowest = min(0, lowest_pole_degree(frame)) if with_poles else 0
        space = cls(frame, lowest, top_degree)
        space._layout()
        space._constrain()
        return space

    def _last_top(self, r: int) -> int:
        return self.frame.k * r - self.frame.diagonal[-1]

    def _first_top(self, r: int) -> int:
        k = self.frame.k
        t1 = self.frame.diagonal[0]
        top = k * r - t1
        for m, _ in self.frame.off_diagonal.items():
            lower = r - m.r
            if lower >= self.lowest_degree and self._last_top(lower) >= 0:
                top = max(top, m.s + self._last_top(lower) - t1)
        return top

    def _layout(self):
        keys: List[CoordinateKey] = []
        last = self.frame.rank - 1
        for r in range(self.lowest_degree, self.top_degree + 1):
            for component in range(self.frame.rank):
                top = self._last_top(r) if component == last else self._first_top(r)
                keys.extend((component, r, s) for s in range(top + 1))
        # ties inside a degree are broken by z-exponent, then component
        keys.sort(key=lambda key: (key[1], key[2], key[0]))
        self.keys = keys
        self.index = {key: i for i, key in enumerate(keys)}

    def _constrain(self):
        rows: Dict[Tuple[int, int], int] = {}
        entries: Dict[Tuple[int, int], Fraction] = {}

        def add(r: int, s: int, column: int, value: Fraction):
            if r > self.top_degree or s <= self.frame.k * r:
                return
            row = rows.setdefault((r, s), len(rows))
            entries[(row, column)] = entries.get((row, column), Fraction(0)) + value

        if self.frame.rank == 2:
            t1 = self.frame.diagonal[0]
            for column, (component, r, s) in enumerate(self.keys):
                if component == 0:
                    add(r, s + t1, column, Fraction(1))
                else:
                    for m, c in self.frame.off_diagonal.items():
                        add(r + m.r, s + m.s, column, c)
        self.constraints = SparseMatrix(len(rows), len(self.keys), entries)

    @property
    def unknowns(self) -> int:
        return len(self.keys)

    def principal_projection(self) -> SparseMatrix:
        """Selects the coordinates of negative u-degree."""
        poles = [i for i, key in enumerate(self.keys) if key[1] < 0]
        return SparseMatrix(
            len(poles), self.unknowns, {(row, col): Fraction(1) for row, col in enumerate(poles)}
        )


def to_components(frame: Frame, vector: SparseVector) -> Tuple[LaurentPoly2, ...]:
    return tuple(
        LaurentPoly2.from_terms(
            (r, s, c) for (component, r, s), c in vector.items() if component == index
        )
        for index in range(frame.rank)
    )


@dataclass
class SectionBasis:
    """
    Basis of H^0(l_D, E) in echelon form with respect to u-degree: the vectors listed under d
    have lowest u-degree d and, together with all later degrees, span the sections vanishing to
    order d along l.
    """

    frame: Frame
    top_degree: int
    by_degree: Dict[int, List[SparseVector]]
    # u-degree offset of the second component; nonzero only for graded non-split frames
    shift: int = 0

    def dimension(self, d: int) -> int:
        return len(self.by_degree.get(d, []))

    def total_dimension(self) -> int:
        return sum(len(vectors) for vectors in self.by_degree.values())

    def vectors(self) -> List[SparseVector]:
        return [v for d in sorted(self.by_degree) for v in self.by_degree[d]]

    def sections(self, d: int) -> List[Tuple[LaurentPoly2, ...]]:
        return [to_components(self.frame, v) for v in self.by_degree.get(d, [])]

    def graded_dimensions(self) -> Dict[int, int]:
        return {d: self.dimension(d) for d in range(self.top_degree + 1)}


def as_frame(target: Union[BundleSpec, Frame]) -> Frame:
    return target if isinstance(target, Frame) else Frame.of_bundle(target)


def section_basis(target: Union[BundleSpec, Frame], top_degree: int) -> SectionBasis:
    frame = as_frame(target)
    if top_degree < 0:
        raise UsageError(f"Degree bound must be nonnegative, got {top_degree}")
    space = SectionSpace.build(frame, top_degree)
    assert space.constraints is not None
    kernel = nullspace_basis(space.constraints)
    by_degree: Dict[int, List[SparseVector]] = {}
    if kernel:
        rows = SparseMatrix.from_dense([list(v) for v in kernel])
        for pivot, row in echelon_rows(rows):
            vector = {space.keys[col]: value for col, value in row.items()}
            by_degree.setdefault(space.keys[pivot][1], []).append(vector)
    dimensions = {d: len(v) for d, v in sorted(by_degree.items())}
    logger.debug(
        f"Section basis of {frame.label or frame.diagonal} on l_{top_degree}: {dimensions}"
    )
    return SectionBasis(frame, top_degree, by_degree)


def grading_shift(frame: Frame) -> Optional[int]:
    """
    Offset that makes the section module graded by u-degree: the second component of a section
    counts rho higher than the first when every term of p has u-degree rho. None when the terms
    of p have different u-degrees.
    """
    if frame.rank == 1 or frame.off_diagonal.is_zero():
        return 0
    degrees = {m.r for m, _ in frame.off_diagonal.items()}
    return degrees.pop() if len(degrees) == 1 else None


def key_weight(key: CoordinateKey, shift: int) -> int:
    component, r, _ = key
    return r + shift if component == 1 else r


def graded_section_basis(target: Union[BundleSpec, Frame], top_degree: int) -> SectionBasis:
    """
    Homogeneous basis of the section module in weights 0..top_degree, where a coordinate
    (component, r, s) has weight r, shifted by `grading_shift` on the second component.
    """
    frame = as_frame(target)
    shift = grading_shift(frame)
    if shift is None:
        raise UsageError(
            f"Section module of {frame.label or frame.diagonal} is not graded: "
            f"the terms of p have different u-degrees"
        )
    if shift == 0:
        return section_basis(frame, top_degree)
    if top_degree < 0:
        raise UsageError(f"Degree bound must be nonnegative, got {top_degree}")

    # every coordinate of weight <= top_degree and all of its V-conditions fit below this order
    space = SectionSpace.build(frame, top_degree + shift)
    assert space.constraints is not None
    rows_of: Dict[int, Dict[int, Fraction]] = {}
    for (row, column), value in space.constraints.entries.items():
        rows_of.setdefault(column, {})[row] = value
    columns_of: Dict[int, List[int]] = {}
    for column, key in enumerate(space.keys):
        columns_of.setdefault(key_weight(key, shift), []).append(column)

    by_degree: Dict[int, List[SparseVector]] = {}
    for weight in range(top_degree + 1):
        columns = columns_of.get(weight, [])
        if not columns:
            continue
        # V-conditions are homogeneous, so a weight block only meets its own rows
        row_ids = sorted({row for column in columns for row in rows_of.get(column, {})})
        position = {row: n for n, row in enumerate(row_ids)}
        entries = {
            (position[row], n): value
            for n, column in enumerate(columns)
            for row, value in rows_of.get(column, {}).items()
        }
        kernel = nullspace_basis(SparseMatrix(len(row_ids), len(columns), entries))
        vectors = [
            {space.keys[columns[n]]: value for n, value in enumerate(vector) if value != 0}
            for vector in kernel
        ]
        if vectors:
            by_degree[weight] = vectors
    logger.debug(
        f"Graded section basis of {frame.label or frame.diagonal} up to weight {top_degree} "
        f"(shift {shift}): { {d: len(v) for d, v in by_degree.items()} }"
    )
    return SectionBasis(frame, top_degree, by_degree, shift)
