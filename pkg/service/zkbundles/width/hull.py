"""
Width as the cokernel of M -> M^vv, with the reflexive hull realised geometrically.

X_k is a normal surface singularity and Z_k minus l is its punctured neighbourhood, so the
double dual of the torsion-free section module M = H^0(Z_k, E) is the module of sections of E
over Z_k minus l: sections that may have poles along l. The cokernel of the inclusion is then
the space of principal parts (negative u-degree coordinates) of such sections. Truncating the
V-conditions at u-degree D only loses conditions that the first component can always absorb
once D is past floor((t1-1)/k), so the count stabilises and is checked at D+1.
"""

import logging
from typing import Optional, Union

from zkbundles.bundle.bundle_spec import BundleSpec
from zkbundles.bundle.frame import Frame
from zkbundles.errors import StabilisationError
from zkbundles.linalg.exact import projected_kernel_dim, rank
from zkbundles.width.sections import SectionSpace, as_frame, section_basis

logger = logging.getLogger(__name__)

_DEFAULT_MAX_EXTENSIONS = 4


def default_truncation(frame: Frame, margin: Optional[int] = None) -> int:
    return frame.height_order() + (frame.k + 2 if margin is None else margin)


def hull_cokernel_dim(frame: Frame, top_degree: int, check_injective: bool = True) -> int:
    space = SectionSpace.build(frame, top_degree, with_poles=True)
    assert space.constraints is not None
    projection = space.principal_projection()
    value = projected_kernel_dim(space.constraints, projection)
    if check_injective:
        # sections without poles must be exactly the section module on l_D
        pole_free = space.unknowns - rank(space.constraints.stack(projection))
        expected = section_basis(frame, top_degree).total_dimension()
        if pole_free != expected:
            raise StabilisationError(
                f"Section module of {frame.label or frame.diagonal} on l_{top_degree} has "
                f"dimension {expected} but {pole_free} pole-free hull sections were found"
            )
    return value


def reflexive_hull_width(
    target: Union[BundleSpec, Frame],
    top_degree: Optional[int] = None,
    margin: Optional[int] = None,
    max_extensions: int = _DEFAULT_MAX_EXTENSIONS,
    check_injective: bool = True,
) -> int:
    frame = as_frame(target)
    degree = default_truncation(frame, margin) if top_degree is None else top_degree
    previous = hull_cokernel_dim(frame, degree, check_injective)
    for _ in range(max_extensions):
        degree += 1
        value = hull_cokernel_dim(frame, degree, check_injective=False)
        logger.debug(
            f"Width of {frame.label or frame.diagonal}: D={degree - 1} -> {previous}, D={degree} -> {value}"
        )
        if value == previous:
            return value
        previous = value
    raise StabilisationError(
        f"Width of {frame.label or frame.diagonal} did not stabilise after {max_extensions} extensions"
    )


def width(
    b: BundleSpec,
    margin: Optional[int] = None,
    max_extensions: int = _DEFAULT_MAX_EXTENSIONS,
) -> int:
    value = reflexive_hull_width(b, margin=margin, max_extensions=max_extensions)
    logger.debug(f"w_{b.k}({b.describe()}) = {value}")
    return value
