"""
Height h_k(E) = dim H^1(l_N, E|l_N) as a finite Cech quotient for the cover {U, V}.

1-cochains are pairs of Laurent polynomials on U n V written in the U-frame; coboundaries are
x - T^-1 y with x holomorphic on U and y holomorphic on V. In each component the monomials that
are neither U-holomorphic nor z^-t times V-holomorphic form the cocycle window, and every class
has a representative supported on the windows. Generators x and first-component y's reduce to
zero on the windows; a second-component y = z^s u^r reaches the first component through the
off-diagonal entry, and only combinations whose second component is again window-supported
(or U-holomorphic) count. Those combinations are enumerated inside a z-window that is doubled
until the quotient dimension stops changing.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from zkbundles.bundle.bundle_spec import BundleSpec
from zkbundles.bundle.frame import Frame
from zkbundles.errors import StabilisationError, UsageError
from zkbundles.linalg.exact import SparseMatrix, rank
from zkbundles.surface.charts import Monomial2
from zkbundles.surface.laurent import LaurentPoly2

logger = logging.getLogger(__name__)

_DEFAULT_MAX_DOUBLINGS = 6

# (component index, u-degree r, z-exponent s)
CochainKey = Tuple[int, int, int]


@dataclass(frozen=True)
class CocycleWindow:
    k: int
    j: int
    basis: List[Tuple[int, int]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.basis)


def _component_window(k: int, t: int, order: int) -> List[Tuple[int, int]]:
    return [(r, s) for r in range(order + 1) for s in range(k * r - t + 1, 0)]


def canonical_cocycle_basis(k: int, j: int) -> CocycleWindow:
    """Representatives a_rs z^s u^r of H^1(O(-j)): 0 <= r <= floor((j-2)/k), kr-j+1 <= s <= -1."""
    if j < 0:
        raise UsageError(f"j must be nonnegative, got {j}")
    if j <= 1:
        return CocycleWindow(k, j, [])
    n1 = (j - 2) // k
    return CocycleWindow(k, j, _component_window(k, j, n1))


@dataclass
class CoboundarySpan:
    """
    Nontrivial coboundary generators: V-side second-component monomials y = z^s u^r, each
    stored with its reduction onto the window rows and onto the rows that must cancel.
    """

    generators: List[Monomial2]
    window_rows: Dict[CochainKey, int]
    outside_rows: Dict[CochainKey, int]
    columns: List[Dict[CochainKey, Fraction]]

    def window_matrix(self) -> SparseMatrix:
        index = dict(self.window_rows)
        offset = len(index)
        for key, row in self.outside_rows.items():
            index[key] = offset + row
        return SparseMatrix.from_columns(
            len(index), [{index[key]: c for key, c in col.items()} for col in self.columns]
        )

    def outside_matrix(self) -> SparseMatrix:
        return SparseMatrix.from_columns(
            len(self.outside_rows),
            [
                {self.outside_rows[key]: c for key, c in col.items() if key in self.outside_rows}
                for col in self.columns
            ],
        )

    def reduced_rank(self) -> int:
        """Dimension of the window-supported part of the coboundary span."""
        if not self.columns:
            return 0
        return rank(self.window_matrix()) - rank(self.outside_matrix())


def _windows(frame: Frame, order: int) -> Dict[CochainKey, int]:
    rows: Dict[CochainKey, int] = {}
    for component, t in enumerate(frame.diagonal):
        for r, s in _component_window(frame.k, t, order):
            rows[(component, r, s)] = len(rows)
    return rows


def build_coboundary_span(frame: Frame, order: int, z_window: int) -> CoboundarySpan:
    window_rows = _windows(frame, order)
    outside_rows: Dict[CochainKey, int] = {}
    generators: List[Monomial2] = []
    columns: List[Dict[CochainKey, Fraction]] = []
    if frame.rank == 1 or frame.off_diagonal.is_zero():
        return CoboundarySpan(generators, window_rows, outside_rows, columns)

    k = frame.k
    t1, t2 = frame.diagonal
    # T^-1 = [[z^-t1, -p z^-(t1+t2)], [0, z^-t2]]
    coupling = frame.off_diagonal.shift(-(t1 + t2)).scale(-1)
    for r in range(order + 1):
        for s in range(-z_window, k * r + 1):
            y = LaurentPoly2.monomial(s, r)
            column: Dict[CochainKey, Fraction] = {}
            for m, c in (coupling * y).truncate(order).items():
                key = (0, m.r, m.s)
                if key in window_rows:
                    column[key] = column.get(key, Fraction(0)) + c
            second = Monomial2(r=r, s=s - t2)
            second_key = (1, second.r, second.s)
            if second.s < 0:
                if second_key not in window_rows:
                    outside_rows.setdefault(second_key, len(outside_rows))
                column[second_key] = Fraction(1)
            if column:
                generators.append(Monomial2(r=r, s=s))
                columns.append(column)
    return CoboundarySpan(generators, window_rows, outside_rows, columns)


def initial_z_window(frame: Frame, order: int) -> int:
    top = max(abs(t) for t in frame.diagonal)
    return 2 * top + frame.k * order + frame.off_diagonal.max_abs_z_exponent()


def height_of_frame(
    frame: Frame,
    order: Optional[int] = None,
    window_scale: int = 1,
    max_doublings: int = _DEFAULT_MAX_DOUBLINGS,
) -> int:
    if window_scale < 1:
        raise UsageError(f"Window scale must be positive, got {window_scale}")
    if order is None:
        order = frame.height_order()

    z_window = initial_z_window(frame, order) * window_scale
    previous = None
    for doubling in range(max_doublings + 1):
        span = build_coboundary_span(frame, order, z_window)
        value = len(span.window_rows) - span.reduced_rank()
        logger.debug(
            f"Height of {frame.label or frame.diagonal} on l_{order}: window={z_window}, value={value}"
        )
        if value == previous:
            return value
        previous = value
        z_window *= 2
    raise StabilisationError(
        f"Height of {frame.label or frame.diagonal} did not stabilise after {max_doublings} doublings"
    )


def height(
    b: BundleSpec,
    order: Optional[int] = None,
    window_scale: int = 1,
    max_doublings: int = _DEFAULT_MAX_DOUBLINGS,
) -> int:
    if b.j <= 1:
        return 0
    return height_of_frame(
        Frame.of_bundle(b),
        order=b.order if order is None else order,
        window_scale=window_scale,
        max_doublings=max_doublings,
    )
