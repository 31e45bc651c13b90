"""Scalar special-function kernel.

Rising factorials, log-gamma, generalized binomial coefficients, the Beta
function, and Hahn / dual Hahn polynomial evaluation.  The recurrence-based
matrix builders in the transform modules never touch the gamma function;
everything gamma-flavoured here exists for the cubic-cost reference formulas
and the exact Gram-matrix oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


def pochhammer(h: float, i: int) -> float:
    """Rising factorial (h)_i = h(h+1)...(h+i-1), as a direct product.

    The empty product (i = 0) is 1.  Left-to-right evaluation keeps each
    partial result exact up to one rounding per factor and never round-trips
    through the gamma function.
    """
    if i < 0:
        raise ValueError("pochhammer order must be a nonnegative integer")
    out = 1.0
    for j in range(i):
        out *= h + j
    return out


def log_gamma(x: float) -> float:
    """Natural logarithm of Gamma(x) for x > 0."""
    if x <= 0.0:
        raise ValueError(f"log_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def gen_binomial(y: float, t: float) -> float:
    """Binomial coefficient generalized to real arguments via the gamma function.

    Requires y+1 > 0, t+1 > 0 and y-t+1 > 0, which is the domain the
    closed-form connection-coefficient formulas actually exercise.  Results
    beyond double range saturate to inf instead of raising.
    """
    if y + 1.0 <= 0.0 or t + 1.0 <= 0.0 or y - t + 1.0 <= 0.0:
        raise ValueError(f"gen_binomial arguments out of domain: y={y}, t={t}")
    v = math.lgamma(y + 1.0) - math.lgamma(t + 1.0) - math.lgamma(y - t + 1.0)
    return math.exp(v) if v < 709.0 else math.inf


def beta_fn(a: float, b: float) -> float:
    """Euler Beta function B(a, b) = Gamma(a)Gamma(b)/Gamma(a+b), for a, b > 0."""
    if a <= 0.0 or b <= 0.0:
        raise ValueError(f"beta_fn requires positive arguments, got ({a}, {b})")
    return math.exp(math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b))


@dataclass(frozen=True)
class HahnParams:
    """Parameter triple (alpha, beta, N) of a Hahn / dual Hahn family."""

    alpha: float
    beta: float
    N: int

    def __post_init__(self):
        if self.alpha <= -1.0 or self.beta <= -1.0:
            raise ValueError("Hahn parameters require alpha > -1 and beta > -1")
        if not isinstance(self.N, int) or self.N < 0:
            raise ValueError("Hahn parameter N must be a nonnegative integer")


def hahn_eval(n: int, x: float, p: HahnParams) -> float:
    """Hahn polynomial Q_n(x; alpha, beta, N) by its terminating series.

    The series has n+1 terms; successive terms are generated by a running
    ratio so each costs O(1).
    """
    if not 0 <= n <= p.N:
        raise ValueError(f"Hahn degree must satisfy 0 <= n <= N, got n={n}, N={p.N}")
    a, b, N = p.alpha, p.beta, p.N
    total = 0.0
    term = 1.0
    for j in range(n):
        total += term
        term *= (j - n) * (n + a + b + 1.0 + j) * (j - x) / ((j + 1.0) * (a + 1.0 + j) * (j - N))
    return total + term


def _hahn_rec_coeffs(n: int, a: float, b: float, N: int) -> tuple[float, float]:
    # A_0 carries a removable (a+b+1) factor shared with its denominator;
    # the cancelled form stays finite when a+b+1 == 0.
    if n == 0:
        return (a + 1.0) * N / (a + b + 2.0), 0.0
    A = (n + a + b + 1.0) * (n + a + 1.0) * (N - n) / ((2.0 * n + a + b + 1.0) * (2.0 * n + a + b + 2.0))
    C = n * (n + a + b + N + 1.0) * (n + b) / ((2.0 * n + a + b) * (2.0 * n + a + b + 1.0))
    return A, C


def hahn_recurrence_step(n: int, x: float, p: HahnParams, q_n: float, q_prev: float) -> float:
    """Advance the Hahn three-term recurrence one degree.

    Given Q_n(x) and Q_{n-1}(x), returns Q_{n+1}(x); q_prev is ignored for
    n = 0.
    """
    if not 0 <= n < p.N:
        raise ValueError(f"recurrence step requires 0 <= n < N, got n={n}, N={p.N}")
    A, C = _hahn_rec_coeffs(n, p.alpha, p.beta, p.N)
    assert A != 0.0, "Hahn recurrence coefficient A_n vanished inside its valid domain"
    if n == 0:
        return (A + C - x) * q_n / A
    return ((A + C - x) * q_n - C * q_prev) / A


def dual_hahn_eval(n: int, x: int, p: HahnParams) -> float:
    """Dual Hahn polynomial R_n(lambda(x); alpha, beta, N), lambda(x) = x(x+alpha+beta+1)."""
    if not 0 <= n <= p.N:
        raise ValueError(f"dual Hahn degree must satisfy 0 <= n <= N, got n={n}, N={p.N}")
    if not 0 <= x <= p.N:
        raise ValueError(f"dual Hahn node must satisfy 0 <= x <= N, got x={x}, N={p.N}")
    a, b, N = p.alpha, p.beta, p.N
    total = 0.0
    term = 1.0
    for j in range(n):
        total += term
        term *= (j - n) * (x + a + b + 1.0 + j) * (j - x) / ((j + 1.0) * (a + 1.0 + j) * (j - N))
    return total + term


def _float_binomials(n: int) -> list[float]:
    """C(n, 0..n) as floats, built by the adjacent-ratio product."""
    out = [1.0] * (n + 1)
    for h in range(n):
        out[h + 1] = out[h] * (n - h) / (h + 1.0)
    return out


def _poch_ratio(num: list[tuple[float, int]], den: list[tuple[float, int]]) -> float:
    """Product of rising factorials over product of rising factorials.

    Factors from the two sides are consumed alternately so intermediate
    values stay scaled even when the individual pochhammers would overflow.
    """
    nf = [s + j for s, c in num for j in range(c)]
    df = [s + j for s, c in den for j in range(c)]
    out = 1.0
    for j in range(max(len(nf), len(df))):
        if j < len(nf):
            out *= nf[j]
        if j < len(df):
            out /= df[j]
    return out
