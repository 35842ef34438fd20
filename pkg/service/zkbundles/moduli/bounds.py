"""
Sharp bounds for height, width and their sum on rank-2 bundles of splitting type (j, -j) on Z_k.
"""

from dataclasses import dataclass
from typing import Sequence, Tuple

from dataclasses_json import DataClassJsonMixin

from zkbundles.errors import UsageError

Interval = Tuple[int, int]


def _check(k: int, j: int):
    if k < 1 or j < 1:
        raise UsageError(f"Bounds need k >= 1 and j >= 1, got k={k}, j={j}")


def bounds_height(k: int, j: int) -> Interval:
    _check(k, j)
    n1 = (j - 2) // k
    return j - 1, (j - 1) * (n1 + 1) - k * n1 * (n1 + 1) // 2


def bounds_width(k: int, j: int) -> Interval:
    _check(k, j)
    n2 = j // k
    return (1 if k == 1 else 0), (j + 1) * n2 - k * n2 * (n2 + 1) // 2


def bounds_chi(k: int, j: int) -> Interval:
    _check(k, j)
    if k == 1:
        return j, j * j
    n, b = divmod(j, k)
    if b == 0:
        return j - 1, n * n * k
    return j - 1, n * n * k + 2 * n * b + b - 1


def charge_gap_ranges(k: int) -> Tuple[range, range]:
    """Charges that no bundle on Z_k attains: [1, k-2] and [k+1, 2k-2], either possibly empty."""
    if k < 1:
        raise UsageError(f"k must be a positive integer, got {k}")
    return range(1, k - 1), range(k + 1, 2 * k - 1)


def in_charge_gap(k: int, chi: int) -> bool:
    return any(chi in gap for gap in charge_gap_ranges(k))


def griffiths_splits(splitting_type: Sequence[int], k: int) -> bool:
    """A bundle with this splitting type on l splits on the formal neighbourhood when j_1 - j_r <= k + 1."""
    if not splitting_type:
        raise UsageError("Splitting type must not be empty")
    return max(splitting_type) - min(splitting_type) <= k + 1


@dataclass
class Bounds(DataClassJsonMixin):
    height_lo: int
    height_hi: int
    width_lo: int
    width_hi: int
    chi_lo: int
    chi_hi: int

    @classmethod
    def of(cls, k: int, j: int) -> "Bounds":
        if j == 0:
            return cls(0, 0, 0, 0, 0, 0)
        h_lo, h_hi = bounds_height(k, j)
        w_lo, w_hi = bounds_width(k, j)
        c_lo, c_hi = bounds_chi(k, j)
        return cls(h_lo, h_hi, w_lo, w_hi, c_lo, c_hi)

    def as_tuple(self) -> Tuple[int, int, int, int, int, int]:
        return (
            self.height_lo,
            self.height_hi,
            self.width_lo,
            self.width_hi,
            self.chi_lo,
            self.chi_hi,
        )
