"""
Text form of bivariate Laurent polynomials, shared by the CLI, the HTTP API and reports.

Terms look like `c*z^s*u^r` and are joined with `+` / `-`. The coefficient is an integer or
a fraction (`3`, `-2/5`), `s` may be negative (`z^-1`), `r` must be nonnegative, factors may
be omitted (`z*u`, `u^2`, `7`) and whitespace is ignored. `0` is the zero polynomial.
"""

import re
from fractions import Fraction
from typing import Dict, List, Tuple

from zkbundles.errors import PolynomialParseError
from zkbundles.surface.charts import Monomial2
from zkbundles.surface.laurent import LaurentPoly2

_COEFFICIENT_RE = re.compile(r"^\d+(/\d+)?$")
_VARIABLE_RE = re.compile(r"^([zu])(\^(-?\d+))?$")


def _split_terms(text: str) -> List[Tuple[int, str]]:
    terms: List[Tuple[int, str]] = []
    sign = 1
    current = ""
    for index, char in enumerate(text):
        # a sign right after '^' belongs to the exponent
        if char in "+-" and not (index > 0 and text[index - 1] == "^"):
            if current:
                terms.append((sign, current))
            elif index > 0:
                raise PolynomialParseError(f"Empty term before position {index} in {text!r}")
            sign = -1 if char == "-" else 1
            current = ""
        else:
            current += char
    if not current:
        raise PolynomialParseError(f"Polynomial {text!r} ends without a term")
    terms.append((sign, current))
    return terms


def _parse_term(sign: int, term: str, original: str) -> Tuple[Monomial2, Fraction]:
    coefficient = Fraction(sign)
    exponents = {"z": 0, "u": 0}
    seen = set()
    for factor in term.split("*"):
        if not factor:
            raise PolynomialParseError(f"Empty factor in term {term!r} of {original!r}")
        if _COEFFICIENT_RE.match(factor):
            try:
                coefficient *= Fraction(factor)
            except ZeroDivisionError:
                raise PolynomialParseError(f"Zero denominator in {factor!r} of {original!r}")
            continue
        match = _VARIABLE_RE.match(factor)
        if not match:
            raise PolynomialParseError(f"Cannot parse factor {factor!r} in {original!r}")
        variable = match.group(1)
        if variable in seen:
            raise PolynomialParseError(f"Variable {variable} repeated in term {term!r}")
        seen.add(variable)
        exponents[variable] = int(match.group(3)) if match.group(3) is not None else 1
    if exponents["u"] < 0:
        raise PolynomialParseError(
            f"Negative u-exponent {exponents['u']} in term {term!r} of {original!r}"
        )
    return Monomial2(r=exponents["u"], s=exponents["z"]), coefficient


def parse_poly(text: str) -> LaurentPoly2:
    if text is None:
        raise PolynomialParseError("No polynomial given")
    compact = re.sub(r"\s+", "", text)
    if not compact:
        raise PolynomialParseError("Empty polynomial")
    terms: Dict[Monomial2, Fraction] = {}
    for sign, term in _split_terms(compact):
        monomial, coefficient = _parse_term(sign, term, text)
        terms[monomial] = terms.get(monomial, Fraction(0)) + coefficient
    return LaurentPoly2(terms)


def format_coefficient(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _format_monomial(m: Monomial2) -> str:
    factors = []
    if m.s == 1:
        factors.append("z")
    elif m.s != 0:
        factors.append(f"z^{m.s}")
    if m.r == 1:
        factors.append("u")
    elif m.r != 0:
        factors.append(f"u^{m.r}")
    return "*".join(factors)


def format_poly(p: LaurentPoly2) -> str:
    """Canonical text form, terms ordered by (r, s); parse_poly(format_poly(p)) == p."""
    if p.is_zero():
        return "0"
    pieces = []
    for m, c in p.items():
        monomial = _format_monomial(m)
        magnitude = abs(c)
        if not monomial:
            body = format_coefficient(magnitude)
        elif magnitude == 1:
            body = monomial
        else:
            body = f"{format_coefficient(magnitude)}*{monomial}"
        if not pieces:
            pieces.append(f"-{body}" if c < 0 else body)
        else:
            pieces.append(f"- {body}" if c < 0 else f"+ {body}")
    return " ".join(pieces)
