"""
Extension classes of 0 -> O(-j) -> E -> O(j) -> 0 on Z_k in canonical form.

A class is the off-diagonal entry p of the transition matrix, a Laurent polynomial whose
coefficients p_rs live in the window 1 <= r <= N, k*r - j + 1 <= s <= j - 1 with
N = floor((2j - 2) / k). Coefficients outside the window are reported, never reduced.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Tuple

from zkbundles.errors import UsageError
from zkbundles.linalg.exact import Scalar, to_fraction
from zkbundles.surface.laurent import LaurentPoly2

logger = logging.getLogger(__name__)

WindowKey = Tuple[int, int]


def finite_neighborhood_order(k: int, j: int) -> int:
    """N(k, j) = floor((2j - 2) / k), clamped at 0 for j = 0."""
    if k < 1 or j < 0:
        raise UsageError(f"Need k >= 1 and j >= 0, got k={k}, j={j}")
    return max(0, (2 * j - 2) // k)


def in_window(k: int, j: int, r: int, s: int) -> bool:
    n = (2 * j - 2) // k if j > 0 else 0
    return 1 <= r <= n and k * r - j + 1 <= s <= j - 1


def extension_window(k: int, j: int) -> List[WindowKey]:
    """All (r, s) coordinates of the canonical form, ordered by r then s."""
    n = finite_neighborhood_order(k, j)
    return [(r, s) for r in range(1, n + 1) for s in range(k * r - j + 1, j)]


def moduli_coordinate_count(k: int, j: int) -> int:
    n = finite_neighborhood_order(k, j)
    if n <= 0:
        return 0
    return n * (2 * j - 1) - k * n * (n + 1) // 2


def first_neighbourhood_dimension(k: int, j: int) -> int:
    """
    Projective dimension of the space of u-linear coefficients p_1s, i.e. 2j - k - 2.
    Returns -1 when the window has no r = 1 entries.
    """
    count = sum(1 for r, _ in extension_window(k, j) if r == 1)
    return count - 1


@dataclass(frozen=True)
class ExtensionClass:
    j: int
    coeffs: Mapping[WindowKey, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if not isinstance(self.j, int) or self.j < 0:
            raise UsageError(f"Splitting type j must be a nonnegative integer, got {self.j!r}")
        cleaned: Dict[WindowKey, Fraction] = {}
        for (r, s), value in self.coeffs.items():
            value = to_fraction(value)
            if value != 0:
                cleaned[(r, s)] = value
        object.__setattr__(self, "coeffs", cleaned)

    @classmethod
    def from_poly(cls, j: int, p: LaurentPoly2) -> "ExtensionClass":
        return cls(j, {(m.r, m.s): c for m, c in p.items()})

    @property
    def poly(self) -> LaurentPoly2:
        return LaurentPoly2.from_terms((r, s, c) for (r, s), c in self.coeffs.items())

    def is_zero(self) -> bool:
        return not self.coeffs

    def keys(self) -> List[WindowKey]:
        return sorted(self.coeffs)

    def min_u_degree(self) -> int:
        if not self.coeffs:
            raise UsageError("The zero class has no smallest u-exponent")
        return min(r for r, _ in self.coeffs)


def validate_canonical(k: int, p: ExtensionClass) -> List[WindowKey]:
    """Returns the offending (r, s) keys; an empty list means the class is canonical."""
    violations = [(r, s) for r, s in p.keys() if not in_window(k, p.j, r, s)]
    if violations:
        logger.debug(f"Window violations for k={k}, j={p.j}: {violations}")
    return violations


def scale(p: ExtensionClass, factor: Scalar) -> ExtensionClass:
    factor = to_fraction(factor)
    if factor == 0:
        raise UsageError("Scaling factor must be nonzero")
    return ExtensionClass(p.j, {key: c * factor for key, c in p.coeffs.items()})


def splits_on_first_neighbourhood(p: ExtensionClass) -> bool:
    """True when u^2 divides p, so E is split on the first infinitesimal neighbourhood."""
    return all(r >= 2 for r, _ in p.coeffs)


def is_nongeneric_candidate(k: int, p: ExtensionClass) -> bool:
    """
    True when p lies on the closed set p_{1,0} = ... = p_{1,k} = 0 outside which the generic
    bundles of M_j(k) live. When j = k only the split bundle is non-generic.
    """
    if p.j == k:
        return p.is_zero()
    return all(p.coeffs.get((1, s), 0) == 0 for s in range(0, k + 1))
