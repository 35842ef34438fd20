from fractions import Fraction
from unittest import TestCase

from zkbundles.errors import PolynomialParseError, UsageError
from zkbundles.surface.charts import (
    ConeRingElement,
    Monomial2,
    SurfaceConfig,
    cone_ring_basis,
    is_holomorphic_U,
    is_holomorphic_V,
)
from zkbundles.surface.grammar import format_poly, parse_poly
from zkbundles.surface.laurent import LaurentPoly2


class ChartsTests(TestCase):
    def test_holomorphy(self):
        self.assertTrue(is_holomorphic_U(Monomial2(r=0, s=0)))
        self.assertFalse(is_holomorphic_U(Monomial2(r=1, s=-1)))
        self.assertTrue(is_holomorphic_V(2, Monomial2(r=1, s=2)))
        self.assertFalse(is_holomorphic_V(2, Monomial2(r=1, s=3)))

    def test_cone_ring_basis(self):
        self.assertEqual(
            [Monomial2(r=1, s=0), Monomial2(r=1, s=1), Monomial2(r=1, s=2)],
            cone_ring_basis(2, 1),
        )
        self.assertEqual([Monomial2(r=0, s=0)], cone_ring_basis(5, 0))

    def test_invalid_inputs(self):
        with self.assertRaises(UsageError):
            SurfaceConfig(0)
        with self.assertRaises(UsageError):
            Monomial2(r=-1, s=0)
        with self.assertRaises(UsageError):
            ConeRingElement(2, {(1, 3): Fraction(1)})

    def test_cone_ring_element_drops_zeros(self):
        element = ConeRingElement(2, {(1, 0): Fraction(0), (1, 1): Fraction(2)})
        self.assertEqual([(Monomial2(r=1, s=1), Fraction(2))], list(element.items()))
        self.assertEqual([1], element.degrees())


class LaurentPolyTests(TestCase):
    def test_arithmetic(self):
        a = LaurentPoly2.from_terms([(1, -1, 1), (0, 2, 3)])
        b = LaurentPoly2.monomial(1, 1)
        self.assertEqual(LaurentPoly2.from_terms([(2, 0, 1), (1, 3, 3)]), a * b)
        self.assertTrue((a - a).is_zero())
        self.assertEqual(a.scale(2), a + a)

    def test_shift_and_truncate(self):
        p = LaurentPoly2.from_terms([(0, 1, 1), (1, 0, 1), (2, 2, 5)])
        self.assertEqual(LaurentPoly2.from_terms([(2, 3, 1), (3, 2, 1), (4, 4, 5)]), p.shift(2, 2))
        self.assertEqual(LaurentPoly2.from_terms([(0, 1, 1), (1, 0, 1)]), p.truncate(1))
        self.assertEqual(LaurentPoly2.monomial(1, 0), p.restrict_to_ell())
        self.assertEqual(0, p.min_u_degree())
        self.assertIsNone(LaurentPoly2.zero().min_u_degree())

    def test_equal_polynomials_hash_alike(self):
        self.assertEqual(
            hash(LaurentPoly2.from_terms([(1, 0, 1), (1, 0, 1)])),
            hash(LaurentPoly2.monomial(0, 1, 2)),
        )


class GrammarTests(TestCase):
    def test_parse(self):
        cases = {
            "z^-1*u + z^4*u^2": LaurentPoly2.from_terms([(1, -1, 1), (2, 4, 1)]),
            "-2/5*z*u": LaurentPoly2.monomial(1, 1, Fraction(-2, 5)),
            " 3 ": LaurentPoly2.monomial(0, 0, 3),
            "0": LaurentPoly2.zero(),
            "u - u": LaurentPoly2.zero(),
            "u*z^2": LaurentPoly2.monomial(2, 1),
        }
        for text, expected in cases.items():
            with self.subTest(text=text):
                self.assertEqual(expected, parse_poly(text))

    def test_format(self):
        cases = {
            "z^4*u^2 + z^-1*u": "z^-1*u + z^4*u^2",
            "-2/5*z*u": "-2/5*z*u",
            "0": "0",
            "u - 3*z*u": "u - 3*z*u",
        }
        for text, expected in cases.items():
            with self.subTest(text=text):
                self.assertEqual(expected, format_poly(parse_poly(text)))

    def test_parse_errors(self):
        for text in ["", "z^", "u^-1", "x", "z*z", "2/0*z", "u +", "z**u", "1.5*u"]:
            with self.subTest(text=text):
                with self.assertRaises(PolynomialParseError):
                    parse_poly(text)
