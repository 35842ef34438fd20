from dataclasses import dataclass, field
from typing import Tuple

from zkbundles.bundle.bundle_spec import BundleSpec
from zkbundles.errors import UsageError
from zkbundles.surface.laurent import LaurentPoly2


@dataclass(frozen=True)
class Frame:
    """
    Upper-triangular transition data shared by the cohomology engines.

    A section given on U by components (a_1, a_2) reads on V as
    (z^t1 a_1 + p a_2, z^t2 a_2). A rank-1 frame (t,) is the line bundle O(-t); the rank-2
    frame of a BundleSpec is (j, -j) with off-diagonal p.
    """

    k: int
    diagonal: Tuple[int, ...]
    off_diagonal: LaurentPoly2 = field(default_factory=LaurentPoly2.zero)
    label: str = ""

    def __post_init__(self):
        if len(self.diagonal) not in (1, 2):
            raise UsageError(f"Only rank 1 and rank 2 frames are supported, got {self.diagonal}")
        if len(self.diagonal) == 1 and not self.off_diagonal.is_zero():
            raise UsageError("A rank-1 frame has no off-diagonal entry")
        if self.off_diagonal.min_u_degree() == 0:
            raise UsageError("The off-diagonal entry must be divisible by u")

    @classmethod
    def line_bundle(cls, k: int, degree: int) -> "Frame":
        return cls(k, (-degree,), label=f"O({degree})")

    @classmethod
    def of_bundle(cls, b: BundleSpec) -> "Frame":
        return cls(b.k, (b.j, -b.j), b.p, label=b.describe())

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    def p_terms(self):
        return list(self.off_diagonal.items())

    def max_p_z_exponent(self) -> int:
        return max((m.s for m, _ in self.off_diagonal.items()), default=0)

    def height_order(self) -> int:
        """Neighbourhood order on which H^1 is already determined."""
        top = max(self.diagonal)
        if top <= 1:
            return 0
        return max(0, (2 * top - 2) // self.k)
