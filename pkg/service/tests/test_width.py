from fractions import Fraction
from unittest import TestCase

from zkbundles.bundle.bundle_spec import BundleSpec
from zkbundles.bundle.frame import Frame
from zkbundles.errors import StabilisationError, UsageError
from zkbundles.moduli.scan import ScanGrid
from zkbundles.surface.charts import SurfaceConfig
from zkbundles.surface.laurent import LaurentPoly2
from zkbundles.width.closed_forms import width_line_bundle
from zkbundles.width.duals import (
    dual_module,
    graded_double_dual_width,
    presentation_dump,
    section_presentation,
)
from zkbundles.width.hull import default_truncation, reflexive_hull_width, width
from zkbundles.width.presentation import SectionModuleModel, evaluate_relation
from zkbundles.width.sections import (
    graded_section_basis,
    grading_shift,
    key_weight,
    lowest_pole_degree,
    section_basis,
)


class WidthClosedFormTests(TestCase):
    def test_width_line_bundle(self):
        cases = [((2, 3), 2), ((1, 3), 6), ((5, -7), 0), ((3, 2), 0), ((1, 2), 3), ((3, 6), 5)]
        for (k, d), expected in cases:
            with self.subTest(k=k, d=d):
                self.assertEqual(expected, width_line_bundle(k, d))


class SectionBasisTests(TestCase):
    def test_trivial_bundle_has_constant_sections(self):
        sb = section_basis(BundleSpec.parse(2, 0, "0"), 0)
        self.assertEqual(2, sb.dimension(0))

    def test_split_bundle_degree_zero(self):
        sb = section_basis(BundleSpec.parse(2, 3, "0"), 0)
        self.assertEqual(4, sb.dimension(0))
        for first, second in sb.sections(0):
            self.assertTrue(first.is_zero())
            self.assertEqual(0, second.min_u_degree())

    def test_o_minus_3(self):
        sb = section_basis(Frame.line_bundle(2, -3), 3)
        self.assertEqual({0: 0, 1: 0, 2: 2, 3: 4}, sb.graded_dimensions())

    def test_negative_degree_bound(self):
        with self.assertRaises(UsageError):
            section_basis(Frame.line_bundle(2, 0), -1)

    def test_lowest_pole_degree(self):
        self.assertEqual(-1, lowest_pole_degree(Frame.line_bundle(2, 3)))
        self.assertEqual(2, lowest_pole_degree(Frame.line_bundle(2, -3)))
        for p in ("u", "z*u", "z^2*u^2"):
            with self.subTest(p=p):
                self.assertEqual(-1, lowest_pole_degree(Frame.of_bundle(BundleSpec.parse(2, 3, p))))


class HullWidthTests(TestCase):
    def test_known_values(self):
        cases = [
            ((2, 3, "z*u"), 0),
            ((2, 3, "u"), 1),
            ((2, 3, "z^2*u"), 1),
            ((2, 3, "z^2*u^2"), 2),
            ((2, 3, "0"), 2),
            ((3, 6, "z^-1*u + z^4*u^2"), 2),
        ]
        for (k, j, p), expected in cases:
            with self.subTest(k=k, j=j, p=p):
                self.assertEqual(expected, width(BundleSpec.parse(k, j, p)))

    def test_line_bundles_match_closed_form(self):
        for k in (1, 2, 3):
            for d in range(-5, 6):
                with self.subTest(k=k, d=d):
                    self.assertEqual(width_line_bundle(k, d), reflexive_hull_width(Frame.line_bundle(k, d)))

    def test_split_bundles_match_closed_form(self):
        for k in (1, 2, 3):
            for j in range(0, 6):
                with self.subTest(k=k, j=j):
                    b = BundleSpec.create(k, j, LaurentPoly2.zero())
                    self.assertEqual(width_line_bundle(k, j) + width_line_bundle(k, -j), width(b))

    def test_vanishes_below_k(self):
        for k, j in [(3, 1), (3, 2), (4, 3)]:
            with self.subTest(k=k, j=j):
                self.assertEqual(0, width(BundleSpec.parse(k, j, "0")))

    def test_stable_under_larger_truncation(self):
        b = BundleSpec.parse(2, 3, "u")
        self.assertEqual(1, reflexive_hull_width(b, top_degree=9))
        self.assertEqual(1, width(b, margin=6))

    def test_stable_one_order_up_on_grid_classes(self):
        for k, j in [(1, 2), (2, 3)]:
            for p in ScanGrid(k, j, (0, 1), max_terms=1).points():
                b = BundleSpec(SurfaceConfig(k), p)
                with self.subTest(k=k, j=j, p=b.describe()):
                    top = default_truncation(Frame.of_bundle(b)) + 1
                    self.assertEqual(width(b), reflexive_hull_width(b, top_degree=top))

    def test_no_extensions_allowed(self):
        with self.assertRaises(StabilisationError):
            reflexive_hull_width(Frame.line_bundle(2, 3), max_extensions=0)


class PresentationTests(TestCase):
    def test_o_minus_3_generators_and_relations(self):
        module = section_presentation(Frame.line_bundle(2, -3))
        self.assertEqual([2, 2], module.generator_degrees())
        self.assertEqual(
            [{(0, 2, 0): Fraction(1)}, {(0, 2, 1): Fraction(1)}],
            [g.vector for g in module.generators],
        )
        self.assertEqual([3, 3], [rel.degree for rel in module.relations])
        first, second = module.relations
        self.assertEqual({(1, 1): Fraction(1)}, dict(first.terms[0].coefficients))
        self.assertEqual({(1, 0): Fraction(-1)}, dict(first.terms[1].coefficients))
        self.assertEqual({(1, 2): Fraction(1)}, dict(second.terms[0].coefficients))
        self.assertEqual({(1, 1): Fraction(-1)}, dict(second.terms[1].coefficients))

    def test_relations_evaluate_to_zero(self):
        for frame in [Frame.line_bundle(2, -3), Frame.line_bundle(2, 3), Frame.line_bundle(1, 2)]:
            with self.subTest(frame=frame.label):
                sb = section_basis(frame, 4)
                model = SectionModuleModel(sb)
                module = section_presentation(frame, 4)
                for relation in module.relations:
                    self.assertEqual({}, evaluate_relation(model, module.generators, relation))

    def test_generator_counts(self):
        cases = [((2, 0), [0]), ((2, 3), [0, 0, 0, 0]), ((2, -5), [3, 3]), ((2, -4), [2])]
        for (k, d), expected in cases:
            with self.subTest(k=k, d=d):
                self.assertEqual(expected, section_presentation(Frame.line_bundle(k, d)).generator_degrees())

    def test_free_module_has_no_relations(self):
        self.assertEqual([], section_presentation(Frame.line_bundle(2, 0)).relations)
        self.assertEqual([], section_presentation(BundleSpec.parse(3, 0, "0")).relations)

    def test_duals(self):
        cases = [((2, 3), [2, 2]), ((2, -3), [-1, -1]), ((2, 0), [0])]
        for (k, d), expected in cases:
            with self.subTest(k=k, d=d):
                dual = dual_module(section_presentation(Frame.line_bundle(k, d)))
                self.assertEqual(expected, dual.presentation.generator_degrees())

    def test_graded_double_dual_width_matches_hull(self):
        for k in (1, 2):
            for d in range(-3, 4):
                with self.subTest(k=k, d=d):
                    frame = Frame.line_bundle(k, d)
                    self.assertEqual(
                        width_line_bundle(k, d),
                        graded_double_dual_width(section_presentation(frame)),
                    )
        split = BundleSpec.parse(2, 3, "0")
        self.assertEqual(width(split), graded_double_dual_width(section_presentation(split)))

    def test_graded_double_dual_width_on_nonsplit_classes(self):
        cases = [(2, 3, "z*u"), (2, 3, "u"), (2, 3, "z^2*u"), (2, 3, "z^2*u^2"), (1, 2, "z*u")]
        for k, j, p in cases:
            with self.subTest(k=k, j=j, p=p):
                b = BundleSpec.parse(k, j, p)
                self.assertEqual(width(b), graded_double_dual_width(section_presentation(b)))

    def test_mixed_u_degrees_have_no_grading(self):
        b = BundleSpec.parse(3, 6, "z^-1*u + z^4*u^2")
        self.assertIsNone(grading_shift(Frame.of_bundle(b)))
        with self.assertRaises(UsageError):
            section_presentation(b)
        with self.assertRaises(UsageError):
            presentation_dump(b)

    def test_graded_sections_are_homogeneous(self):
        b = BundleSpec.parse(2, 3, "z*u + z^2*u")
        sb = graded_section_basis(b, 4)
        self.assertEqual(1, sb.shift)
        for weight, vectors in sb.by_degree.items():
            for vector in vectors:
                self.assertEqual({weight}, {key_weight(key, 1) for key in vector})

    def test_o_minus_3_is_self_dual(self):
        module = section_presentation(Frame.line_bundle(2, -3))
        dual = dual_module(module).presentation
        self.assertEqual(module.generator_degrees(), [d + 3 for d in dual.generator_degrees()])
        self.assertEqual(
            [rel.degree for rel in module.relations], [rel.degree + 3 for rel in dual.relations]
        )

    def test_dual_of_o_3_generator_count(self):
        dual = dual_module(section_presentation(Frame.line_bundle(2, 3)))
        self.assertEqual(2, len(dual.presentation.generators))

    def test_presentation_dump(self):
        dump = presentation_dump(Frame.line_bundle(2, 3))
        self.assertEqual(0, dump.grading_shift)
        self.assertEqual(4, len(dump.generators))
        self.assertEqual([2, 2], dump.dual_generator_degrees)
        self.assertEqual(2, dump.double_dual_dimensions[-1])
        self.assertIn('"label": "O(3)"', dump.to_json())

    def test_presentation_dump_of_nonsplit_class(self):
        dump = presentation_dump(BundleSpec.parse(2, 3, "z*u"))
        self.assertEqual(1, dump.grading_shift)
        self.assertTrue(all(dim >= 0 for dim in dump.double_dual_dimensions.values()))
