"""
The two canonical charts of Z_k = Tot(O(-k)).

U has coordinates (z, u) and V has (zeta, v) = (1/z, z^k u). A Laurent monomial z^s u^r is
a polynomial on U when s >= 0 and a polynomial in zeta and v when s <= k*r. Monomials that
are holomorphic on both charts are the global functions: the cone ring k_0 of the contracted
surface X_k, generated by x_i = z^i u for 0 <= i <= k.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Mapping, Tuple

from zkbundles.errors import UsageError


@dataclass(frozen=True)
class SurfaceConfig:
    k: int

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 1:
            raise UsageError(f"k must be a positive integer, got {self.k!r}")


@dataclass(frozen=True, order=True)
class Monomial2:
    """z^s u^r; ordering is by u-degree first, then z-exponent."""

    r: int
    s: int

    def __post_init__(self):
        if self.r < 0:
            raise UsageError(f"u-exponent must be nonnegative, got {self.r}")

    def times(self, other: "Monomial2") -> "Monomial2":
        return Monomial2(r=self.r + other.r, s=self.s + other.s)


def is_holomorphic_U(m: Monomial2) -> bool:
    return m.s >= 0


def is_holomorphic_V(k: int, m: Monomial2) -> bool:
    return m.s <= k * m.r


def cone_ring_basis(k: int, d: int) -> List[Monomial2]:
    if d < 0:
        raise UsageError(f"Degree must be nonnegative, got {d}")
    return [Monomial2(r=d, s=a) for a in range(k * d + 1)]


@dataclass(frozen=True)
class ConeRingElement:
    """
    Element of k_0 stored in the monomial model: coefficient of z^a u^d keyed by (d, a),
    with 0 <= a <= k*d.
    """

    k: int
    coefficients: Mapping[Tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        cleaned: Dict[Tuple[int, int], Fraction] = {}
        for (d, a), value in self.coefficients.items():
            if d < 0 or not 0 <= a <= self.k * d:
                raise UsageError(f"z^{a} u^{d} is not in the cone ring for k={self.k}")
            if value != 0:
                cleaned[(d, a)] = Fraction(value)
        object.__setattr__(self, "coefficients", cleaned)

    @classmethod
    def monomial(cls, k: int, m: Monomial2, c: Fraction = Fraction(1)) -> "ConeRingElement":
        return cls(k, {(m.r, m.s): c})

    def graded_piece(self, d: int) -> Dict[int, Fraction]:
        return {a: c for (deg, a), c in self.coefficients.items() if deg == d}

    def degrees(self) -> List[int]:
        return sorted({d for d, _ in self.coefficients})

    def items(self) -> Iterator[Tuple[Monomial2, Fraction]]:
        for (d, a), c in sorted(self.coefficients.items()):
            yield Monomial2(r=d, s=a), c

    def is_zero(self) -> bool:
        return not self.coefficients
