"""
Minimal generators and relations of modules over the cone ring k_0.

The module algorithms only need a basis in each degree and the action of the ring generators
x_0..x_k, so they work the same way for the section module M and for Hom modules. Generators are
chosen greedily in degree order: a basis vector is kept when it is independent of x_i*M and of
the generators already kept. Relations in degree e are the kernel of the evaluation map on the
products m * g_i (m a cone monomial), minimised modulo x_l times the relations of degree e-1.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from dataclasses_json import DataClassJsonMixin

from zkbundles.linalg.exact import SparseMatrix, nullspace_basis, pivot_columns
from zkbundles.surface.charts import ConeRingElement, Monomial2, cone_ring_basis
from zkbundles.surface.grammar import format_coefficient
from zkbundles.width.sections import SectionBasis, SparseVector, key_weight

logger = logging.getLogger(__name__)

ModuleVector = Dict[Hashable, Fraction]


class ModuleModel(ABC):
    """A module over k_0 given degreewise, truncated above `top_degree`."""

    def __init__(self, k: int, lowest_degree: int, top_degree: int):
        self.k = k
        self.lowest_degree = lowest_degree
        self.top_degree = top_degree

    @abstractmethod
    def basis(self, degree: int) -> List[ModuleVector]:
        pass

    @abstractmethod
    def multiply(self, i: int, vector: ModuleVector) -> ModuleVector:
        """Action of x_i = z^i u."""
        pass

    def degrees(self) -> range:
        return range(self.lowest_degree, self.top_degree + 1)

    def dimension(self, degree: int) -> int:
        return len(self.basis(degree))

    def graded_dimensions(self) -> Dict[int, int]:
        return {d: self.dimension(d) for d in self.degrees()}

    def multiply_monomial(self, m: Monomial2, vector: ModuleVector) -> ModuleVector:
        """Action of z^a u^n, written as a product of n generators x_i."""
        remaining = m.s
        for _ in range(m.r):
            i = min(self.k, remaining)
            vector = self.multiply(i, vector)
            remaining -= i
            if not vector:
                break
        return vector


class SectionModuleModel(ModuleModel):
    def __init__(self, sb: SectionBasis):
        super().__init__(sb.frame.k, 0, sb.top_degree)
        self.section_basis = sb

    def basis(self, degree: int) -> List[ModuleVector]:
        return list(self.section_basis.by_degree.get(degree, []))

    def multiply(self, i: int, vector: ModuleVector) -> ModuleVector:
        result: SparseVector = {}
        shift = self.section_basis.shift
        for (component, r, s), c in vector.items():  # type: ignore[misc]
            if key_weight((component, r, s), shift) + 1 <= self.top_degree:
                result[(component, r + 1, s + i)] = c
        return result  # type: ignore[return-value]


@dataclass
class Generator:
    degree: int
    vector: ModuleVector


@dataclass
class Relation:
    """sum over generators g of terms[g] * g = 0, with homogeneous cone-ring coefficients."""

    degree: int
    terms: Dict[int, ConeRingElement]

    def describe(self) -> str:
        pieces = []
        for index in sorted(self.terms):
            for m, c in self.terms[index].items():
                pieces.append(f"{format_coefficient(c)}*g{index}*z^{m.s}u^{m.r}")
        return " + ".join(pieces)


@dataclass
class GeneratorRecord(DataClassJsonMixin):
    degree: int
    vector: List[Tuple[str, str]]


@dataclass
class RelationRecord(DataClassJsonMixin):
    degree: int
    terms: List[Tuple[int, int, int, str]]


@dataclass
class ModulePresentation:
    k: int
    top_degree: int
    generators: List[Generator]
    relations: List[Relation]
    graded_dimensions: Dict[int, int] = field(default_factory=dict)

    def generator_degrees(self) -> List[int]:
        return [g.degree for g in self.generators]

    def generator_records(self) -> List[GeneratorRecord]:
        return [
            GeneratorRecord(
                degree=g.degree,
                vector=[(str(key), format_coefficient(c)) for key, c in sorted(g.vector.items(), key=lambda kv: str(kv[0]))],
            )
            for g in self.generators
        ]

    def relation_records(self) -> List[RelationRecord]:
        return [
            RelationRecord(
                degree=rel.degree,
                terms=[
                    (index, m.r, m.s, format_coefficient(c))
                    for index in sorted(rel.terms)
                    for m, c in rel.terms[index].items()
                ],
            )
            for rel in self.relations
        ]


def _to_columns(
    vectors: Sequence[ModuleVector], rows: Optional[Dict[Hashable, int]] = None
) -> Tuple[Dict[Hashable, int], List[Dict[int, Fraction]]]:
    rows = {} if rows is None else rows
    columns = []
    for vector in vectors:
        column = {}
        for key, value in vector.items():
            column[rows.setdefault(key, len(rows))] = value
        columns.append(column)
    return rows, columns


def _independent_tail(base: Sequence[ModuleVector], candidates: Sequence[ModuleVector]) -> List[int]:
    """Indices of candidates independent of `base` and of the candidates before them."""
    if not candidates:
        return []
    rows, columns = _to_columns(list(base) + list(candidates))
    pivots = pivot_columns(SparseMatrix.from_columns(len(rows), columns))
    return [p - len(base) for p in pivots if p >= len(base)]


def minimal_generators(model: ModuleModel) -> List[Generator]:
    candidates: List[Generator] = []
    for degree in model.degrees():
        candidates.extend(Generator(degree, v) for v in model.basis(degree))
    multiples = []
    for g in candidates:
        for i in range(model.k + 1):
            product = model.multiply(i, g.vector)
            if product:
                multiples.append(product)
    chosen = _independent_tail(multiples, [g.vector for g in candidates])
    generators = [candidates[i] for i in chosen]
    logger.debug(f"Minimal generators in degrees {[g.degree for g in generators]}")
    return generators


def _normalise(vector: Sequence[Fraction]) -> List[Fraction]:
    lead = next((v for v in vector if v != 0), Fraction(1))
    return [v / lead for v in vector]


def relations(
    model: ModuleModel, generators: Sequence[Generator], top_degree: Optional[int] = None
) -> List[Relation]:
    top = model.top_degree if top_degree is None else top_degree
    if not generators:
        return []
    found: List[Relation] = []
    previous_products: List[Tuple[int, Monomial2]] = []
    previous_syzygies: List[Sequence[Fraction]] = []
    cache: Dict[Tuple[int, Monomial2], ModuleVector] = {}

    def product(index: int, m: Monomial2) -> ModuleVector:
        key = (index, m)
        if key not in cache:
            cache[key] = model.multiply_monomial(m, generators[index].vector)
        return cache[key]

    start = min(g.degree for g in generators)
    for degree in range(start, top + 1):
        products = [
            (index, m)
            for index, g in enumerate(generators)
            if g.degree <= degree
            for m in cone_ring_basis(model.k, degree - g.degree)
        ]
        position = {p: n for n, p in enumerate(products)}
        rows, columns = _to_columns([product(index, m) for index, m in products])
        syzygies = nullspace_basis(SparseMatrix.from_columns(len(rows), columns))

        lifted: List[ModuleVector] = []
        for syzygy in previous_syzygies:
            for i in range(model.k + 1):
                shifted: ModuleVector = {}
                for (index, m), c in zip(previous_products, syzygy):
                    if c != 0:
                        shifted[position[(index, m.times(Monomial2(r=1, s=i)))]] = c
                lifted.append(shifted)
        new_vectors = [{n: c for n, c in enumerate(s) if c != 0} for s in syzygies]
        for n in _independent_tail(lifted, new_vectors):
            coefficients = _normalise(syzygies[n])
            terms: Dict[int, Dict[Tuple[int, int], Fraction]] = {}
            for (index, m), c in zip(products, coefficients):
                if c != 0:
                    terms.setdefault(index, {})[(m.r, m.s)] = c
            found.append(
                Relation(
                    degree,
                    {index: ConeRingElement(model.k, coeffs) for index, coeffs in terms.items()},
                )
            )
        previous_products = products
        previous_syzygies = syzygies
    logger.debug(f"Found {len(found)} minimal relations up to degree {top}")
    return found


def evaluate_relation(
    model: ModuleModel, generators: Sequence[Generator], relation: Relation
) -> ModuleVector:
    total: ModuleVector = {}
    for index, coefficient in relation.terms.items():
        for m, c in coefficient.items():
            for key, value in model.multiply_monomial(m, generators[index].vector).items():
                total[key] = total.get(key, Fraction(0)) + c * value
    return {key: value for key, value in total.items() if value != 0}


def presentation(model: ModuleModel) -> ModulePresentation:
    generators = minimal_generators(model)
    return ModulePresentation(
        k=model.k,
        top_degree=model.top_degree,
        generators=generators,
        relations=relations(model, generators),
        graded_dimensions=model.graded_dimensions(),
    )
