import logging
from dataclasses import dataclass
from typing import Optional

from dataclasses_json import DataClassJsonMixin

from zkbundles.bundle.bundle_spec import BundleSpec
from zkbundles.bundle.extension import (
    is_nongeneric_candidate,
    moduli_coordinate_count,
    splits_on_first_neighbourhood,
)
from zkbundles.config.config_keys import (
    CONFIG_HEIGHT_WINDOW_MAX_DOUBLINGS,
    CONFIG_HEIGHT_WINDOW_SCALE,
    CONFIG_SCAN_MAX_POINTS,
    CONFIG_SCAN_WORKER_COUNT,
    CONFIG_WIDTH_DEGREE_MARGIN,
    CONFIG_WIDTH_MAX_EXTENSIONS,
    DEFAULT_HEIGHT_WINDOW_MAX_DOUBLINGS,
    DEFAULT_HEIGHT_WINDOW_SCALE,
    DEFAULT_SCAN_MAX_POINTS,
    DEFAULT_SCAN_WORKER_COUNT,
    DEFAULT_WIDTH_MAX_EXTENSIONS,
)
from zkbundles.config.env_config import EnvConfig
from zkbundles.errors import UsageError
from zkbundles.height.cech import height
from zkbundles.moduli.bounds import Bounds
from zkbundles.surface.grammar import format_poly
from zkbundles.width.hull import width

logger = logging.getLogger(__name__)

_INSTANTON_WARNING = (
    "Splitting type is not a multiple of k: height and width are only known to stratify "
    "the moduli into Hausdorff pieces for instantons"
)


@dataclass(frozen=True)
class EngineSettings:
    window_scale: int = DEFAULT_HEIGHT_WINDOW_SCALE
    max_doublings: int = DEFAULT_HEIGHT_WINDOW_MAX_DOUBLINGS
    width_margin: Optional[int] = None
    width_max_extensions: int = DEFAULT_WIDTH_MAX_EXTENSIONS
    scan_worker_count: int = DEFAULT_SCAN_WORKER_COUNT
    scan_max_points: int = DEFAULT_SCAN_MAX_POINTS

    def __post_init__(self):
        if self.window_scale < 1:
            raise UsageError(f"Window scale must be positive, got {self.window_scale}")
        if self.scan_worker_count < 1:
            raise UsageError(f"Worker count must be positive, got {self.scan_worker_count}")
        if self.width_margin is not None and self.width_margin < 0:
            raise UsageError(f"Width degree margin must be nonnegative, got {self.width_margin}")

    @classmethod
    def from_config(cls, config: EnvConfig) -> "EngineSettings":
        return cls(
            window_scale=config.get_int_value(
                CONFIG_HEIGHT_WINDOW_SCALE, DEFAULT_HEIGHT_WINDOW_SCALE
            ),
            max_doublings=config.get_int_value(
                CONFIG_HEIGHT_WINDOW_MAX_DOUBLINGS, DEFAULT_HEIGHT_WINDOW_MAX_DOUBLINGS
            ),
            width_margin=config.get_optional_int_value(CONFIG_WIDTH_DEGREE_MARGIN),
            width_max_extensions=config.get_int_value(
                CONFIG_WIDTH_MAX_EXTENSIONS, DEFAULT_WIDTH_MAX_EXTENSIONS
            ),
            scan_worker_count=config.get_int_value(
                CONFIG_SCAN_WORKER_COUNT, DEFAULT_SCAN_WORKER_COUNT
            ),
            scan_max_points=config.get_int_value(CONFIG_SCAN_MAX_POINTS, DEFAULT_SCAN_MAX_POINTS),
        )


@dataclass
class InvariantReport(DataClassJsonMixin):
    k: int
    j: int
    p: str
    height: int
    width: int
    chi: int
    bounds: Bounds
    height_in_bounds: bool
    width_in_bounds: bool
    chi_in_bounds: bool
    instanton: bool
    moduli_coordinates: int
    first_neighbourhood_split: bool
    nongeneric_candidate: bool
    instanton_warning: Optional[str] = None

    @property
    def in_bounds(self) -> bool:
        return self.height_in_bounds and self.width_in_bounds and self.chi_in_bounds


def invariants(b: BundleSpec, settings: Optional[EngineSettings] = None) -> InvariantReport:
    settings = settings or EngineSettings()
    h = height(b, window_scale=settings.window_scale, max_doublings=settings.max_doublings)
    w = width(b, margin=settings.width_margin, max_extensions=settings.width_max_extensions)
    bounds = Bounds.of(b.k, b.j)
    instanton = b.j % b.k == 0
    report = InvariantReport(
        k=b.k,
        j=b.j,
        p=format_poly(b.p),
        height=h,
        width=w,
        chi=h + w,
        bounds=bounds,
        height_in_bounds=bounds.height_lo <= h <= bounds.height_hi,
        width_in_bounds=bounds.width_lo <= w <= bounds.width_hi,
        chi_in_bounds=bounds.chi_lo <= h + w <= bounds.chi_hi,
        instanton=instanton,
        moduli_coordinates=moduli_coordinate_count(b.k, b.j),
        first_neighbourhood_split=splits_on_first_neighbourhood(b.ext),
        nongeneric_candidate=is_nongeneric_candidate(b.k, b.ext),
        instanton_warning=None if instanton else _INSTANTON_WARNING,
    )
    if not report.in_bounds:
        logger.warning(f"Invariants of {b.describe()} outside the sharp bounds: {report.to_dict()}")
    logger.info(f"Invariants of {b.describe()}: h={h}, w={w}, chi={h + w}")
    return report
