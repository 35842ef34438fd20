from zkbundles.errors import UsageError


def _n1(k: int, j: int) -> int:
    return (j - 2) // k


def height_line_bundle(k: int, d: int) -> int:
    """h_k(O(d)) = sum over n >= 0 of (-d - 1 - n*k)^+, zero for d >= -1."""
    if d >= -1:
        return 0
    j = -d
    n1 = _n1(k, j)
    return (j - 1) * (n1 + 1) - k * n1 * (n1 + 1) // 2


def height_nonsplit_closed_form(k: int, j: int, m: int) -> int:
    """
    Height of a bundle whose extension class is holomorphic on Z_k with smallest u-exponent m.

    The count runs over the rows r = 0 .. mu' - 1 of the cocycle window, with
    mu' = min(m, floor((j-2)/k) + 1).
    """
    if m < 1 or j < 1:
        raise UsageError(f"Need m >= 1 and j >= 1, got m={m}, j={j}")
    mu = max(0, min(m, _n1(k, j) + 1))
    return mu * (j - 1) - k * mu * (mu - 1) // 2
