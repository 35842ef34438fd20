"""
Hom_{k0}(M, k0) from a presentation of M, and the double dual built by dualising twice.

A hom of degree e is fixed by its values phi(g_i), a cone-ring element of degree deg(g_i) + e,
subject to phi(relation) = 0 for every relation of the source presentation. Homs are stored
with keys (generator index, target degree, z-exponent), so multiplying by x_l maps
(i, d, a) to (i, d + 1, a + l).
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from dataclasses_json import DataClassJsonMixin

from zkbundles.bundle.bundle_spec import BundleSpec
from zkbundles.bundle.frame import Frame
from zkbundles.linalg.exact import SparseMatrix, nullspace_basis
from zkbundles.width.hull import default_truncation
from zkbundles.width.presentation import (
    GeneratorRecord,
    ModuleModel,
    ModulePresentation,
    ModuleVector,
    RelationRecord,
    SectionModuleModel,
    presentation,
)
from zkbundles.width.sections import as_frame, graded_section_basis, grading_shift

logger = logging.getLogger(__name__)


class HomModel(ModuleModel):
    def __init__(self, source: ModulePresentation, top_degree: Optional[int] = None):
        degrees = source.generator_degrees()
        lowest = -max(degrees) if degrees else 0
        super().__init__(source.k, lowest, source.top_degree if top_degree is None else top_degree)
        self.source = source
        self._bases: Dict[int, List[ModuleVector]] = {}

    def _unknowns(self, degree: int) -> List[Tuple[int, int, int]]:
        keys = []
        for index, g in enumerate(self.source.generators):
            target = g.degree + degree
            if target >= 0:
                keys.extend((index, target, a) for a in range(self.k * target + 1))
        return keys

    def basis(self, degree: int) -> List[ModuleVector]:
        if degree not in self._bases:
            self._bases[degree] = self._solve(degree)
        return self._bases[degree]

    def _solve(self, degree: int) -> List[ModuleVector]:
        keys = self._unknowns(degree)
        if not keys:
            return []
        column_of = {key: n for n, key in enumerate(keys)}
        rows: Dict[Tuple[int, int], int] = {}
        entries: Dict[Tuple[int, int], Fraction] = {}
        for number, relation in enumerate(self.source.relations):
            for index, coefficient in relation.terms.items():
                target = self.source.generators[index].degree + degree
                if target < 0:
                    continue
                for m, c in coefficient.items():
                    for a in range(self.k * target + 1):
                        row = rows.setdefault((number, m.s + a), len(rows))
                        column = column_of[(index, target, a)]
                        entries[(row, column)] = entries.get((row, column), Fraction(0)) + c
        kernel = nullspace_basis(SparseMatrix(len(rows), len(keys), entries))
        return [{keys[n]: c for n, c in enumerate(v) if c != 0} for v in kernel]

    def multiply(self, i: int, vector: ModuleVector) -> ModuleVector:
        result: ModuleVector = {}
        for (index, d, a), c in vector.items():  # type: ignore[misc]
            if d + 1 - self.source.generators[index].degree <= self.top_degree:
                result[(index, d + 1, a + i)] = c
        return result


@dataclass
class DualPresentation:
    """Presentation of Hom(M, k0) together with the model it was computed from."""

    model: HomModel
    presentation: ModulePresentation = field(init=False)

    def __post_init__(self):
        self.presentation = presentation(self.model)

    @property
    def graded_dimensions(self) -> Dict[int, int]:
        return self.presentation.graded_dimensions


def dual_module(source: ModulePresentation, top_degree: Optional[int] = None) -> DualPresentation:
    dual = DualPresentation(HomModel(source, top_degree))
    logger.debug(
        f"Dual module generated in degrees {dual.presentation.generator_degrees()} "
        f"with {len(dual.presentation.relations)} relations"
    )
    return dual


def graded_double_dual_width(source: ModulePresentation, top_degree: Optional[int] = None) -> int:
    """
    sum over f < D of dim (M^vv)_f - dim M_f. The top degree is left out since homs of
    degree D only see relations up to D.
    """
    top = source.top_degree if top_degree is None else top_degree
    double_dual = dual_module(dual_module(source, top).presentation, top)
    lowest = min(double_dual.model.lowest_degree, 0)
    total = 0
    for f in range(lowest, top):
        total += double_dual.model.dimension(f) - source.graded_dimensions.get(f, 0)
    return total


def section_presentation(target: Union[BundleSpec, Frame], top_degree: Optional[int] = None) -> ModulePresentation:
    frame = as_frame(target)
    degree = default_truncation(frame) if top_degree is None else top_degree
    return presentation(SectionModuleModel(graded_section_basis(frame, degree)))


@dataclass
class PresentationDump(DataClassJsonMixin):
    label: str
    k: int
    top_degree: int
    grading_shift: int
    generators: List[GeneratorRecord]
    relations: List[RelationRecord]
    dual_generator_degrees: List[int]
    module_dimensions: Dict[int, int]
    dual_dimensions: Dict[int, int]
    double_dual_dimensions: Dict[int, int]


def presentation_dump(target: Union[BundleSpec, Frame], top_degree: Optional[int] = None) -> PresentationDump:
    frame = as_frame(target)
    module = section_presentation(frame, top_degree)
    dual = dual_module(module)
    double_dual = dual_module(dual.presentation)
    return PresentationDump(
        label=frame.label or str(frame.diagonal),
        k=frame.k,
        top_degree=module.top_degree,
        grading_shift=grading_shift(frame) or 0,
        generators=module.generator_records(),
        relations=module.relation_records(),
        dual_generator_degrees=dual.presentation.generator_degrees(),
        module_dimensions=module.graded_dimensions,
        dual_dimensions=dual.graded_dimensions,
        double_dual_dimensions=double_dual.graded_dimensions,
    )
