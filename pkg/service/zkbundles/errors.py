from typing import List, Tuple


class ZkBundlesError(Exception):
    pass


class PolynomialParseError(ZkBundlesError, ValueError):
    pass


class UsageError(ZkBundlesError, ValueError):
    pass


class CanonicalWindowError(ZkBundlesError):
    """
    Raised when an extension class has coefficients outside the canonical window.
    `violations` lists the offending (r, s) keys.
    """

    def __init__(self, k: int, j: int, violations: List[Tuple[int, int]]):
        self.k = k
        self.j = j
        self.violations = violations
        keys = ", ".join(f"(r={r}, s={s})" for r, s in violations)
        super().__init__(f"Extension class outside canonical window for k={k}, j={j}: {keys}")


class StabilisationError(ZkBundlesError):
    pass
