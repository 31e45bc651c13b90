import numpy as np
import pytest

# mixed-tolerance policy used by every cross-route comparison
ATOL = 1e-12
RTOL = 1e-9

# weight-exponent sample used throughout the suite
ALPHA_BETA = (-0.9, -0.5, 0.0, 0.5, 3.7)


def mixed_excess(a, b, atol=ATOL, rtol=RTOL):
    """Largest violation of |a-b| <= atol + rtol*max(|a|,|b|); <= 0 passes."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return float(np.max(np.abs(a - b) - (atol + rtol * np.maximum(np.abs(a), np.abs(b)))))


def assert_mixed_close(a, b, atol=ATOL, rtol=RTOL, label=""):
    excess = mixed_excess(a, b, atol, rtol)
    assert excess <= 0.0, f"{label} mixed-tolerance violation by {excess:.3e}"


def hahn_series_scale(n: int, x: float, alpha: float, beta: float, N: int) -> float:
    """Sum of absolute terms of the Hahn series: its cancellation scale.

    The direct terminating sum is ill-conditioned for large n and x
    simultaneously (terms reach ~1e12 at N=20 while values are O(1)), so
    value-relative identity checks are only meaningful against this scale
    outside the small-N range.
    """
    if n < 0:
        return 0.0
    total = term = 1.0
    for j in range(n):
        term *= abs((j - n) * (n + alpha + beta + 1.0 + j) * (j - x)) / abs(
            (j + 1.0) * (alpha + 1.0 + j) * (j - N))
        total += term
    return total


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)
