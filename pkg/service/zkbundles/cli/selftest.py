"""
Regression suite of known values, run by `selftest`. Every check returns (expected, actual).
"""

import logging
from dataclasses import dataclass
from typing import Any, Callable, List, Optional, Tuple

from dataclasses_json import DataClassJsonMixin

from zkbundles.bundle.bundle_spec import BundleSpec, embed_phi
from zkbundles.bundle.extension import validate_canonical
from zkbundles.bundle.frame import Frame
from zkbundles.bundle.splitting import splitting_type_on_ell
from zkbundles.height.cech import height, height_of_frame
from zkbundles.height.closed_forms import height_line_bundle
from zkbundles.moduli.balance import balance, validate_admissible
from zkbundles.moduli.bounds import (
    bounds_chi,
    bounds_height,
    bounds_width,
    charge_gap_ranges,
    in_charge_gap,
)
from zkbundles.moduli.invariants import EngineSettings, invariants
from zkbundles.moduli.scan import scan_strata
from zkbundles.surface.grammar import parse_poly
from zkbundles.surface.laurent import LaurentPoly2
from zkbundles.width.closed_forms import width_line_bundle
from zkbundles.width.duals import dual_module, section_presentation
from zkbundles.width.hull import reflexive_hull_width, width

logger = logging.getLogger(__name__)

Check = Callable[[Optional[EngineSettings]], Tuple[Any, Any]]


@dataclass
class SelftestResult(DataClassJsonMixin):
    name: str
    passed: bool
    expected: str
    actual: str


def _hw(k: int, j: int, p: str, expected: Tuple[int, int]) -> Check:
    def check(settings: Optional[EngineSettings]):
        report = invariants(BundleSpec.parse(k, j, p), settings)
        return expected, (report.height, report.width)

    return check


def _value(expected: Any, compute: Callable[[], Any]) -> Check:
    return lambda settings: (expected, compute())


def _o_minus_3_generators(settings: Optional[EngineSettings]):
    module = section_presentation(Frame.line_bundle(2, -3))
    keys = sorted(sorted(g.vector) for g in module.generators)
    return [[(0, 2, 0)], [(0, 2, 1)]], keys


def _o_minus_3_relations(settings: Optional[EngineSettings]):
    module = section_presentation(Frame.line_bundle(2, -3))
    found = [
        {index: sorted((m.r, m.s, str(c)) for m, c in coeff.items()) for index, coeff in rel.terms.items()}
        for rel in module.relations
    ]
    expected = [
        {0: [(1, 1, "1")], 1: [(1, 0, "-1")]},
        {0: [(1, 2, "1")], 1: [(1, 1, "-1")]},
    ]
    return expected, found


def _split_oracles(settings: Optional[EngineSettings]):
    mismatches = []
    for k in (1, 2, 3):
        for j in range(0, 5):
            b = BundleSpec.create(k, j, LaurentPoly2.zero())
            expected_h = height_line_bundle(k, j) + height_line_bundle(k, -j)
            expected_w = width_line_bundle(k, j) + width_line_bundle(k, -j)
            actual = (height(b), width(b))
            if actual != (expected_h, expected_w):
                mismatches.append((k, j, (expected_h, expected_w), actual))
    return [], mismatches


def _line_bundle_oracles(settings: Optional[EngineSettings]):
    mismatches = []
    for k in (1, 2, 3):
        for d in range(-5, 6):
            frame = Frame.line_bundle(k, d)
            expected = (height_line_bundle(k, d), width_line_bundle(k, d))
            actual = (height_of_frame(frame), reflexive_hull_width(frame))
            if actual != expected:
                mismatches.append((k, d, expected, actual))
    return [], mismatches


def _balance_run(settings: Optional[EngineSettings]):
    seq = balance(2, [3, -3])
    return ([[3, -3], [3, -1], [3, 1], [3, 3]], []), (seq.rows, validate_admissible(seq, 2, [3, -3]))


def _nonhausdorff_strata(settings: Optional[EngineSettings]):
    strata = set(scan_strata(1, 3, [0, 1], settings=settings).strata())
    return ([(2, 1)], True), (
        sorted(hw for hw in strata if sum(hw) == 3),
        {(2, 3), (3, 2)} <= strata,
    )


def _charge_gaps_on_z3(settings: Optional[EngineSettings]):
    tables = [
        scan_strata(3, 3, [0, 1, -1], settings=settings),
        scan_strata(3, 6, [0, 1, -1], max_terms=1, settings=settings),
    ]
    return [], sorted({chi for t in tables for chi in t.chis() if in_charge_gap(3, chi)})


def _o_minus_3_self_dual(settings: Optional[EngineSettings]):
    module = section_presentation(Frame.line_bundle(2, -3))
    dual = dual_module(module).presentation
    return (
        (module.generator_degrees(), [rel.degree for rel in module.relations]),
        ([d + 3 for d in dual.generator_degrees()], [rel.degree + 3 for rel in dual.relations]),
    )


def _o_3_dual_generators(settings: Optional[EngineSettings]):
    dual = dual_module(section_presentation(Frame.line_bundle(2, 3)))
    return 2, len(dual.presentation.generators)


def _embedding(settings: Optional[EngineSettings]):
    image = embed_phi(BundleSpec.parse(2, 3, "z*u + z^2*u^2"))
    return ([], True), (
        validate_canonical(image.k, image.ext),
        all(r >= 2 for r, _ in image.ext.coeffs),
    )


_CASES: List[Tuple[str, Check]] = [
    ("k=2 j=3 p=z*u has (h, w) = (2, 0)", _hw(2, 3, "z*u", (2, 0))),
    ("k=2 j=3 p=u has (h, w) = (2, 1)", _hw(2, 3, "u", (2, 1))),
    ("k=2 j=3 p=z^2*u has (h, w) = (2, 1)", _hw(2, 3, "z^2*u", (2, 1))),
    ("k=2 j=3 p=z^2*u^2 has (h, w) = (2, 2)", _hw(2, 3, "z^2*u^2", (2, 2))),
    ("k=2 j=3 split has (h, w) = (2, 2)", _hw(2, 3, "0", (2, 2))),
    ("charge 7 on Z_3", _hw(3, 6, "z^-1*u + z^4*u^2", (5, 2))),
    ("w_2(O(-3)) = 0", _value(0, lambda: reflexive_hull_width(Frame.line_bundle(2, -3)))),
    ("O(-3) on Z_2 is generated by u^2, z*u^2", _o_minus_3_generators),
    ("O(-3) on Z_2 relations", _o_minus_3_relations),
    ("O(-3) on Z_2 is self-dual up to shift", _o_minus_3_self_dual),
    ("dual of O(3) on Z_2 has 2 generators", _o_3_dual_generators),
    ("generic class z*u on Z_2 has width 0", _value(0, lambda: width(BundleSpec.parse(2, 3, "z*u")))),
    (
        "splitting type of [[z^2, z], [0, z^-2]] is 1",
        _value((1, -1), lambda: splitting_type_on_ell(1, 2, parse_poly("z")).degrees),
    ),
    ("height bounds k=1 j=3", _value((2, 3), lambda: bounds_height(1, 3))),
    ("width bounds k=5 j=3", _value((0, 0), lambda: bounds_width(5, 3))),
    ("chi bounds k=3 j=6", _value((5, 12), lambda: bounds_chi(3, 6))),
    ("charge gaps k=3", _value(([1], [4]), lambda: tuple(list(g) for g in charge_gap_ranges(3)))),
    ("split bundles match closed forms", _split_oracles),
    ("line bundles match closed forms", _line_bundle_oracles),
    ("balance k=2 (3, -3)", _balance_run),
    ("k=1 j=3 strata: chi=3 only as (2, 1), chi=5 as (3, 2) and (2, 3)", _nonhausdorff_strata),
    ("no charge in the gaps of Z_3", _charge_gaps_on_z3),
    ("embedding stays canonical and splits on l_1", _embedding),
]


def run_selftest(settings: Optional[EngineSettings] = None) -> List[SelftestResult]:
    results = []
    for name, check in _CASES:
        try:
            expected, actual = check(settings)
            passed = expected == actual
        except Exception as exc:
            logger.exception(f"Selftest {name!r} raised")
            expected, actual, passed = "", f"{type(exc).__name__}: {exc}", False
        results.append(SelftestResult(name, passed, str(expected), str(actual)))
        logger.info(f"Selftest {name!r}: {'ok' if passed else 'FAILED'}")
    return results
