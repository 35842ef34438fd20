"""
Exhaustive scans of extension classes over a finite coefficient grid, grouped into strata by
(height, width).
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from dataclasses_json import DataClassJsonMixin

from zkbundles.bundle.bundle_spec import BundleSpec
from zkbundles.bundle.extension import ExtensionClass, extension_window
from zkbundles.errors import UsageError, ZkBundlesError
from zkbundles.linalg.exact import Scalar, to_fraction
from zkbundles.moduli.invariants import EngineSettings, invariants
from zkbundles.moduli.scan_runner import ScanRunner
from zkbundles.surface.charts import SurfaceConfig
from zkbundles.surface.grammar import format_coefficient, format_poly

logger = logging.getLogger(__name__)

_GENERIC_CAVEAT = (
    "generic stratum is the one covering most grid points; genericity over a finite grid is heuristic"
)
_BOUND_VIOLATION = "BoundViolation"

Stratum = Tuple[int, int]


@dataclass
class ScanRow(DataClassJsonMixin):
    k: int
    j: int
    p: str
    height: int
    width: int
    chi: int
    instanton: bool
    in_bounds: bool


@dataclass
class ScanFailure(DataClassJsonMixin):
    p: str
    error_type: str
    error: str


@dataclass
class ScanResult:
    row: Optional[ScanRow] = None
    failure: Optional[ScanFailure] = None


@dataclass
class StratumRecord(DataClassJsonMixin):
    height: int
    width: int
    chi: int
    count: int
    representative: str
    classes: List[str]


@dataclass
class StratumTable(DataClassJsonMixin):
    k: int
    j: int
    grid: str
    rows: List[ScanRow] = field(default_factory=list)
    failures: List[ScanFailure] = field(default_factory=list)
    generic_height: Optional[int] = None
    generic_width: Optional[int] = None
    caveat: str = _GENERIC_CAVEAT

    def strata(self) -> Dict[Stratum, List[str]]:
        grouped: Dict[Stratum, List[str]] = {}
        for row in self.rows:
            grouped.setdefault((row.height, row.width), []).append(row.p)
        return dict(sorted(grouped.items()))

    def stratum_records(self) -> List[StratumRecord]:
        return [
            StratumRecord(
                height=h,
                width=w,
                chi=h + w,
                count=len(classes),
                representative=classes[0],
                classes=classes,
            )
            for (h, w), classes in self.strata().items()
        ]

    def chis(self) -> List[int]:
        return sorted({row.chi for row in self.rows})

    @property
    def ok(self) -> bool:
        return not self.failures


@dataclass(frozen=True)
class ScanGrid:
    k: int
    j: int
    coefficients: Tuple[Fraction, ...]
    max_terms: Optional[int] = None

    def __post_init__(self):
        SurfaceConfig(self.k)
        if self.j < 0:
            raise UsageError(f"j must be nonnegative, got {self.j}")
        if not self.coefficients:
            raise UsageError("Coefficient set must not be empty")
        if self.max_terms is not None and self.max_terms < 0:
            raise UsageError(f"max_terms must be nonnegative, got {self.max_terms}")
        values = tuple(sorted({to_fraction(c) for c in self.coefficients}))
        object.__setattr__(self, "coefficients", values)

    @property
    def window(self) -> List[Tuple[int, int]]:
        return extension_window(self.k, self.j)

    @property
    def nonzero(self) -> Tuple[Fraction, ...]:
        return tuple(c for c in self.coefficients if c != 0)

    def _support_sizes(self) -> range:
        n = len(self.window)
        top = n if self.max_terms is None else min(n, self.max_terms)
        if 0 in self.coefficients:
            return range(0, top + 1)
        # without 0 every coordinate carries a nonzero value
        return range(n, n + 1) if n <= top else range(0)

    def size(self) -> int:
        n = len(self.window)
        return sum(math.comb(n, t) * len(self.nonzero) ** t for t in self._support_sizes())

    def points(self) -> Iterator[ExtensionClass]:
        window = self.window
        for t in self._support_sizes():
            for support in itertools.combinations(window, t):
                for values in itertools.product(self.nonzero, repeat=t):
                    yield ExtensionClass(self.j, dict(zip(support, values)))

    def describe(self) -> str:
        coefficients = ",".join(format_coefficient(c) for c in self.coefficients)
        terms = "all" if self.max_terms is None else str(self.max_terms)
        return (
            f"coefficients={{{coefficients}}}, max_terms={terms}, "
            f"window={len(self.window)}, points={self.size()}"
        )


def evaluate_point(k: int, settings: EngineSettings, p: ExtensionClass) -> ScanResult:
    label = format_poly(p.poly)
    try:
        report = invariants(BundleSpec(SurfaceConfig(k), p), settings)
    except ZkBundlesError as exc:
        logger.warning(f"Scan point k={k}, j={p.j}, p={label} failed: {exc}")
        return ScanResult(failure=ScanFailure(label, type(exc).__name__, str(exc)))
    except Exception as exc:
        logger.exception(f"Unexpected failure on scan point k={k}, j={p.j}, p={label}")
        return ScanResult(failure=ScanFailure(label, type(exc).__name__, str(exc)))
    row = ScanRow(
        k=report.k,
        j=report.j,
        p=report.p,
        height=report.height,
        width=report.width,
        chi=report.chi,
        instanton=report.instanton,
        in_bounds=report.in_bounds,
    )
    failure = None
    if not report.in_bounds:
        failure = ScanFailure(
            label,
            _BOUND_VIOLATION,
            f"(h, w, chi) = ({report.height}, {report.width}, {report.chi}) outside {report.bounds.as_tuple()}",
        )
    return ScanResult(row=row, failure=failure)


def generic_stratum(table: StratumTable) -> Optional[Stratum]:
    """Stratum with the most grid points; ties go to the smaller chi, then the smaller height."""
    strata = table.strata()
    if not strata:
        return None
    return min(strata, key=lambda hw: (-len(strata[hw]), hw[0] + hw[1], hw[0]))


def scan_strata(
    k: int,
    j: int,
    coefficients: Sequence[Scalar],
    max_terms: Optional[int] = None,
    settings: Optional[EngineSettings] = None,
    max_points: Optional[int] = None,
) -> StratumTable:
    settings = settings or EngineSettings()
    grid = ScanGrid(k, j, tuple(to_fraction(c) for c in coefficients), max_terms)
    limit = settings.scan_max_points if max_points is None else max_points
    size = grid.size()
    if size > limit:
        raise UsageError(f"Grid has {size} points, more than the limit of {limit}")

    points = sorted(grid.points(), key=lambda p: format_poly(p.poly))
    runner = ScanRunner(partial(evaluate_point, k, settings), settings.scan_worker_count)
    table = StratumTable(k=k, j=j, grid=grid.describe())
    for result in runner.run(points):
        if result.row is not None:
            table.rows.append(result.row)
        if result.failure is not None:
            table.failures.append(result.failure)

    generic = generic_stratum(table)
    if generic is not None:
        table.generic_height, table.generic_width = generic
    logger.info(
        f"Scan k={k}, j={j}: {len(table.rows)} points in {len(table.strata())} strata, "
        f"{len(table.failures)} failures"
    )
    return table
