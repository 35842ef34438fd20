def width_line_bundle(k: int, d: int) -> int:
    """w_k(O(d)): (d+1)*n - k*n*(n+1)/2 with n = floor(d/k) for d >= 0, zero otherwise."""
    if d < 0:
        return 0
    n = d // k
    return (d + 1) * n - k * n * (n + 1) // 2
