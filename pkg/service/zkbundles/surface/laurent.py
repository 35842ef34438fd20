from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

from zkbundles.linalg.exact import to_fraction
from zkbundles.surface.charts import Monomial2

Coefficient = Union[int, Fraction]


class LaurentPoly2:
    """
    Finite bivariate Laurent polynomial sum c * z^s u^r with rational coefficients, Laurent in z
    and polynomial in u. Immutable; zero coefficients are never stored.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[Monomial2, Coefficient]] = None):
        cleaned: Dict[Monomial2, Fraction] = {}
        for monomial, value in (terms or {}).items():
            value = to_fraction(value)
            if value != 0:
                cleaned[monomial] = cleaned.get(monomial, Fraction(0)) + value
        self._terms = {m: c for m, c in cleaned.items() if c != 0}

    @classmethod
    def zero(cls) -> "LaurentPoly2":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly2":
        return cls.monomial(0, 0)

    @classmethod
    def monomial(cls, s: int, r: int, c: Coefficient = 1) -> "LaurentPoly2":
        return cls({Monomial2(r=r, s=s): c})

    @classmethod
    def from_terms(cls, terms: Iterable[Tuple[int, int, Coefficient]]) -> "LaurentPoly2":
        """Build from (r, s, c) triples; repeated monomials are summed."""
        result: Dict[Monomial2, Fraction] = {}
        for r, s, c in terms:
            m = Monomial2(r=r, s=s)
            result[m] = result.get(m, Fraction(0)) + to_fraction(c)
        return cls(result)

    def items(self) -> Iterator[Tuple[Monomial2, Fraction]]:
        return iter(sorted(self._terms.items()))

    def monomials(self) -> List[Monomial2]:
        return sorted(self._terms)

    def coefficient(self, s: int, r: int) -> Fraction:
        return self._terms.get(Monomial2(r=r, s=s), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly2):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "LaurentPoly2") -> "LaurentPoly2":
        terms = dict(self._terms)
        for m, c in other._terms.items():
            terms[m] = terms.get(m, Fraction(0)) + c
        return LaurentPoly2(terms)

    def __neg__(self) -> "LaurentPoly2":
        return self.scale(-1)

    def __sub__(self, other: "LaurentPoly2") -> "LaurentPoly2":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly2") -> "LaurentPoly2":
        return multiply(self, other)

    def scale(self, c: Coefficient) -> "LaurentPoly2":
        c = to_fraction(c)
        return LaurentPoly2({m: v * c for m, v in self._terms.items()})

    def shift(self, s: int, r: int = 0) -> "LaurentPoly2":
        """Multiplication by z^s u^r."""
        return LaurentPoly2({Monomial2(r=m.r + r, s=m.s + s): c for m, c in self._terms.items()})

    def truncate(self, max_r: int) -> "LaurentPoly2":
        """Drops every term of u-degree above max_r (restriction to the max_r-th neighbourhood)."""
        return LaurentPoly2({m: c for m, c in self._terms.items() if m.r <= max_r})

    def restrict_to_ell(self) -> "LaurentPoly2":
        return self.truncate(0)

    def min_u_degree(self) -> Optional[int]:
        return min((m.r for m in self._terms), default=None)

    def max_abs_z_exponent(self) -> int:
        return max((abs(m.s) for m in self._terms), default=0)

    def __repr__(self) -> str:
        from zkbundles.surface.grammar import format_poly

        return f"LaurentPoly2({format_poly(self)!r})"


def multiply(a: LaurentPoly2, b: LaurentPoly2) -> LaurentPoly2:
    terms: Dict[Monomial2, Fraction] = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = m1.times(m2)
            terms[m] = terms.get(m, Fraction(0)) + c1 * c2
    return LaurentPoly2(terms)
