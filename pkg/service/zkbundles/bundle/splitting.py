import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from dataclasses_json import DataClassJsonMixin

from zkbundles.errors import StabilisationError, UsageError
from zkbundles.linalg.exact import SparseMatrix, rank
from zkbundles.surface.laurent import LaurentPoly2

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SplittingType(DataClassJsonMixin):
    degrees: Tuple[int, ...]

    def __post_init__(self):
        if list(self.degrees) != sorted(self.degrees, reverse=True):
            raise UsageError(f"Splitting type must be nonincreasing, got {self.degrees}")


def _h0_twisted(j: int, q: LaurentPoly2, t: int) -> int:
    """
    h^0 on P^1 of E(t), E glued by [[z^j, q], [0, z^-j]]. Unknowns are the coefficients of
    polynomial sections (a, b) on U; every positive z-power on V must vanish.
    """
    b_top = j + t
    if b_top < 0:
        b_unknowns: List[int] = []
    else:
        b_unknowns = list(range(b_top + 1))
    q_top = max((m.s for m, _ in q.items()), default=0)
    a_top = max(t - j, q_top + t)
    a_unknowns = list(range(a_top + 1)) if a_top >= 0 else []

    columns: List[Dict[int, Fraction]] = []
    rows: Dict[int, int] = {}

    def row(exponent: int) -> int:
        return rows.setdefault(exponent, len(rows))

    for s in a_unknowns:
        exponent = j - t + s
        columns.append({row(exponent): Fraction(1)} if exponent > 0 else {})
    for s in b_unknowns:
        column: Dict[int, Fraction] = {}
        for m, c in q.items():
            exponent = m.s + s - t
            if exponent > 0:
                index = row(exponent)
                column[index] = column.get(index, Fraction(0)) + c
        columns.append(column)
    unknowns = len(columns)
    if unknowns == 0:
        return 0
    return unknowns - rank(SparseMatrix.from_columns(len(rows), columns))


def h0_profile(j: int, q: LaurentPoly2) -> Dict[int, int]:
    return {t: _h0_twisted(j, q, t) for t in range(-j, j + 1)}


def splitting_type_on_ell(k: int, j: int, q: LaurentPoly2) -> SplittingType:
    """
    Splitting type (a, -a) of the restriction to the zero section of the bundle with transition
    [[z^j, q], [0, z^-j]]; a is the largest twist with h^0(E(-a)) > 0.
    """
    if j < 0:
        raise UsageError(f"j must be nonnegative, got {j}")
    if any(m.r != 0 for m, _ in q.items()):
        raise UsageError("q must be a Laurent polynomial in z only (restrict p to u = 0)")

    profile = h0_profile(j, q)
    a = max((twist for twist in range(0, j + 1) if profile[-twist] > 0), default=0)
    for t, dim in profile.items():
        expected = max(0, a + t + 1) + max(0, -a + t + 1)
        if dim != expected:
            raise StabilisationError(
                f"h0 profile {profile} for k={k}, j={j} is not that of O({a}) + O({-a})"
            )
    logger.debug(f"Splitting type on ell for j={j}: ({a}, {-a}), profile={profile}")
    return SplittingType((a, -a))
