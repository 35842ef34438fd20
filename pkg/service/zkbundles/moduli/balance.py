"""
Balancing splitting types by elementary transformations.

Each step replaces the smallest entry j_r by j_r + k and re-sorts, which is the splitting type
of O(j_r + k) + O(j_1) + ... + O(j_{r-1}). The sum grows by k per step while the largest entry
never grows, so the loop stops once j_1 <= j_r + k - 1.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from dataclasses_json import DataClassJsonMixin

from zkbundles.errors import UsageError
from zkbundles.moduli.bounds import griffiths_splits

logger = logging.getLogger(__name__)


@dataclass
class AdmissibleSequence(DataClassJsonMixin):
    k: int
    rows: List[List[int]]
    splits_formally: List[bool] = field(default_factory=list)

    @property
    def t(self) -> int:
        return len(self.rows)

    @property
    def r(self) -> int:
        return len(self.rows[0]) if self.rows else 0


def _is_balanced(k: int, row: Sequence[int]) -> bool:
    return row[0] <= row[-1] + k - 1


def _validate_type(k: int, splitting_type: Sequence[int]):
    if k < 1:
        raise UsageError(f"k must be a positive integer, got {k}")
    if len(splitting_type) < 2:
        raise UsageError(f"Balancing needs rank >= 2, got {list(splitting_type)}")
    if any(a < b for a, b in zip(splitting_type, splitting_type[1:])):
        raise UsageError(f"Splitting type must be nonincreasing, got {list(splitting_type)}")


def balance(k: int, splitting_type: Sequence[int]) -> AdmissibleSequence:
    _validate_type(k, splitting_type)
    row = list(splitting_type)
    rows = [row]
    while not _is_balanced(k, row):
        row = sorted(row[:-1] + [row[-1] + k], reverse=True)
        rows.append(row)
    logger.debug(f"Balanced {list(splitting_type)} on Z_{k} in {len(rows)} steps: {row}")
    return AdmissibleSequence(
        k=k, rows=rows, splits_formally=[griffiths_splits(r, k) for r in rows]
    )


def validate_admissible(
    seq: AdmissibleSequence, k: int, splitting_type: Optional[Sequence[int]] = None
) -> List[str]:
    """Returns the violated conditions; an empty list means the sequence is admissible."""
    if not seq.rows:
        return ["empty sequence"]
    violations = []
    first = seq.rows[0]
    if splitting_type is not None and list(splitting_type) != list(first):
        violations.append(f"(i) first row {first} differs from splitting type {list(splitting_type)}")
    for i, row in enumerate(seq.rows, start=1):
        if len(row) != len(first):
            violations.append(f"row {i} has rank {len(row)}, expected {len(first)}")
            continue
        if any(a < b for a, b in zip(row, row[1:])):
            violations.append(f"row {i} is not nonincreasing: {row}")
        expected = sum(first) + k * i - k
        if i >= 2 and sum(row) != expected:
            violations.append(f"(ii) row {i} sums to {sum(row)}, expected {expected}")
    last = seq.rows[-1]
    if last and not _is_balanced(k, last):
        violations.append(f"(iii) last row {last} has j_1 > j_r + k - 1")
    return violations
