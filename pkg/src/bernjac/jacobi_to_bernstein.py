"""Connection coefficients c[i][h] expressing each modified Jacobi polynomial
in the constrained Bernstein basis.

Four independent construction routes with one output contract:

* ``c_direct``   -- Hahn-series evaluation per entry, O(n^3), mid-trust.
* ``c_theorem1`` -- row recurrence (fixed i, descending h), O(n^2).
* ``c_theorem2`` -- column recurrence (fixed h, ascending i), O(n^2); the
  production route, fastest in practice.
* ``c_oracle``   -- the corrected closed-form literature formula with
  gamma-based generalized binomials, O(n^3), highest-trust reference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bases import TransformParams
from .specialfn import HahnParams, _float_binomials, gen_binomial, hahn_eval


@dataclass(frozen=True)
class CoeffMatrixC:
    """Jacobi-to-Bernstein matrix; row i holds the Bernstein coefficients of
    the i-th modified Jacobi polynomial.

    ``values`` is dense with rows i = k+l..n and columns h = k..n-l; use
    ``at`` for index-safe access by the mathematical indices.
    ``recurrence_steps`` counts executed three-term steps (recurrence routes
    only).
    """

    params: TransformParams
    values: np.ndarray
    recurrence_steps: int | None = None

    def at(self, i: int, h: int) -> float:
        p = self.params
        if not p.k + p.l <= i <= p.n:
            raise IndexError(f"row index i must lie in [{p.k + p.l}, {p.n}], got {i}")
        if not p.k <= h <= p.n - p.l:
            raise IndexError(f"column index h must lie in [{p.k}, {p.n - p.l}], got {h}")
        return float(self.values[i - p.k - p.l, h - p.k])


def _direct_row_chunk(p: TransformParams, lo: int, hi: int) -> list[list[float]]:
    """Rows lo..hi-1 (indexing i = k+l+lo..) of the direct construction."""
    n, k, l, a, b = p.n, p.k, p.l, p.alpha, p.beta
    m = n - k - l
    hp = HahnParams(a + 2.0 * l, b + 2.0 * k, m)
    binom_n = _float_binomials(n)
    binom_m = _float_binomials(m)
    scale = [binom_m[s] / binom_n[k + s] for s in range(m + 1)]
    rows = []
    pre = 1.0
    for r in range(lo):
        pre *= (a + 2.0 * l + r + 1.0) / (r + 1.0)
    for r in range(lo, hi):
        if r > lo:
            pre *= (a + 2.0 * l + r) / r
        rows.append([pre * scale[s] * hahn_eval(r, m - s, hp) for s in range(m + 1)])
    return rows


def c_direct(p: TransformParams) -> CoeffMatrixC:
    """Entrywise Hahn-series construction (cubic-cost reference)."""
    return CoeffMatrixC(p, np.array(_direct_row_chunk(p, 0, p.dim)))


def _theorem1_row_chunk(p: TransformParams, lo: int, hi: int) -> tuple[list[list[float]], int]:
    """Rows lo..hi-1 of the row-recurrence construction, with the number of
    three-term steps they executed."""
    n, k, l, a, b = p.n, p.k, p.l, p.alpha, p.beta
    m = n - k - l
    sig = p.sigma
    # h-dependent pieces shared across rows; index s = h - k for h <= n-l-2
    ratio = [0.0] * max(0, m - 1)
    hcoef = [0.0] * max(0, m - 1)
    gcoef = [0.0] * max(0, m - 1)
    invden = [0.0] * max(0, m - 1)
    for s in range(m - 1):
        h = k + s
        den = (n + l + a - h) * (k - h - 1.0)
        hval = (n - l - h - 1.0) * (h + k + b + 2.0) / den
        hcoef[s] = hval
        invden[s] = 1.0 / den
        ratio[s] = (n - h) * (h + 1.0 - k) / ((n - l - h) * (h + 1.0))
        gcoef[s] = (n - h - 1.0) * (n - h) * (h + 1.0 - k) * (h + 2.0 - k) / (
            (n - l - h - 1.0) * (n - l - h) * (h + 1.0) * (h + 2.0)) * hval
    inv_binom_nl = 1.0 / float(math.comb(n, l))
    second = m * (l + 1.0) / (n - l) if m >= 1 else 0.0
    rows = []
    steps = 0
    pre = 1.0
    for r in range(lo):
        pre *= (a + 2.0 * l + r + 1.0) / (r + 1.0)
    for r in range(lo, hi):
        if r > lo:
            pre *= (a + 2.0 * l + r) / r
        i = k + l + r
        wfac = (k + l - i) * (i + k + l + sig)
        row = [0.0] * (m + 1)
        row[m] = pre * inv_binom_nl
        if m >= 1:
            row[m - 1] = row[m] * second * (1.0 - wfac / ((k + l - n) * (a + 2.0 * l + 1.0)))
        for s in range(m - 2, -1, -1):
            f = ratio[s] * (1.0 - hcoef[s] - wfac * invden[s])
            row[s] = f * row[s + 1] + gcoef[s] * row[s + 2]
        steps += max(0, m - 1)
        rows.append(row)
    return rows, steps


def c_theorem1(p: TransformParams) -> CoeffMatrixC:
    """Row recurrence: two seeds at h = n-l, n-l-1, then the three-term
    relation down to h = k, independently for every i."""
    rows, steps = _theorem1_row_chunk(p, 0, p.dim)
    return CoeffMatrixC(p, np.array(rows), recurrence_steps=steps)


def _theorem2_col_chunk(p: TransformParams, lo: int, hi: int) -> tuple[list[list[float]], int]:
    """Columns lo..hi-1 (indexing h = k+lo..) of the column-recurrence
    construction, as full-height rows of width hi-lo, plus the step count."""
    n, k, l, a, b = p.n, p.k, p.l, p.alpha, p.beta
    m = n - k - l
    sig = p.sigma
    width = hi - lo
    rows = []
    steps = 0
    # seed row i = k+l: C(m, h-k)/C(n, h), advanced by the adjacent-h ratio
    # from h = k so chunked builds reproduce the serial bits exactly
    seed = 1.0 / float(math.comb(n, k))
    for s in range(lo):
        h = k + s
        seed = seed * (h + 1.0) * (n - l - h) / ((n - h) * (h + 1.0 - k))
    row0 = [0.0] * width
    row0[0] = seed
    for s in range(lo, lo + width - 1):
        h = k + s
        row0[s - lo + 1] = row0[s - lo] * (h + 1.0) * (n - l - h) / ((n - h) * (h + 1.0 - k))
    rows.append(row0)
    if m >= 1:
        cfac = (sig + 2.0 * k + 2.0 * l + 1.0) / (k + l - n)
        row1 = [row0[s - lo] * (a + 2.0 * l + 1.0 - cfac * (l + k + s - n))
                for s in range(lo, hi)]
        rows.append(row1)
    for i in range(k + l + 2, n + 1):
        M = (i - k - l - 1.0) * (n + i + a + b) * (i + k + b - l - 1.0) * (2.0 * i + a + b) / (
            (2.0 * i + a + b - 2.0) * (i + k + l + a + b) * (i + l + a - k) * (i - n - 1.0))
        L = (a + l + i - k - 1.0) * (a + l + i - k) / ((i - k - l - 1.0) * (i - k - l)) * M
        kbase = (a + l + i - k) * (1.0 - M) / (i - k - l)
        kslope = (2.0 * i + a + b - 1.0) * (2.0 * i + a + b) / (
            (i - k - l) * (i + k + l + a + b) * (i - n - 1.0))
        prev1 = rows[-1]
        prev2 = rows[-2]
        row = [(kbase - (s - m) * kslope) * prev1[s - lo] + L * prev2[s - lo]
               for s in range(lo, hi)]
        steps += width
        rows.append(row)
    return rows, steps


def c_theorem2(p: TransformParams) -> CoeffMatrixC:
    """Column recurrence: seeds at i = k+l, k+l+1, then the three-term
    relation up to i = n, independently for every h.  Production route."""
    rows, steps = _theorem2_col_chunk(p, 0, p.dim)
    return CoeffMatrixC(p, np.array(rows), recurrence_steps=steps)


def _oracle_row_chunk(p: TransformParams, lo: int, hi: int) -> list[list[float]]:
    """Rows lo..hi-1 of the closed-form construction."""
    n, k, l, a, b = p.n, p.k, p.l, p.alpha, p.beta
    m = n - k - l
    binom_n = _float_binomials(n)
    inv_binom = [1.0 / binom_n[k + s] for s in range(m + 1)]
    rows = []
    for i in range(k + l + lo, k + l + hi):
        mi = i - l - k
        b1 = [gen_binomial(i + a + l - k, r) for r in range(mi + 1)]
        b2 = [gen_binomial(i + b - l + k, mi - r) for r in range(mi + 1)]
        t = _float_binomials(n - i)
        row = [0.0] * (m + 1)
        for s in range(m + 1):
            h = k + s
            r_lo = max(0, h + i - n - k)
            r_hi = min(h - k, mi)
            sign = -1.0 if (mi - r_lo) & 1 else 1.0
            acc = 0.0
            for r in range(r_lo, r_hi + 1):
                acc += sign * b1[r] * b2[r] * t[s - r]
                sign = -sign
            row[s] = inv_binom[s] * acc
        rows.append(row)
    return rows


def c_oracle(p: TransformParams) -> CoeffMatrixC:
    """Corrected closed-form evaluation with gamma-based binomials (cubic cost).

    Gamma domain violations, impossible inside the valid parameter region,
    propagate as ValueError.
    """
    return CoeffMatrixC(p, np.array(_oracle_row_chunk(p, 0, p.dim)))
