"""Connection coefficients d[h][i] expressing each constrained Bernstein
polynomial in the modified Jacobi basis.

Every entry factors as d = z * w, where z is a pure product of parameter
ratios and w a Hahn polynomial value.  The recurrence routes advance z by a
one-term ratio and w by a three-term relation, keeping only the previous
lane values, so memory beyond the output stays O(n):

* ``d_direct``   -- z by its product formula, w by the Hahn series; O(n^3).
* ``d_theorem3`` -- lanes of fixed h, advancing over i; O(n^2).
* ``d_theorem4`` -- lanes of fixed i, advancing over h; O(n^2); the
  production route, fastest in practice.
* ``d_oracle``   -- closed-form literature formula, gamma-based; O(n^3),
  highest-trust reference.

``u_factors`` builds the elementwise bridge u with c[i][h] = u[i][h]*d[h][i].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bases import TransformParams
from .specialfn import HahnParams, _float_binomials, _poch_ratio, gen_binomial, hahn_eval


@dataclass(frozen=True)
class CoeffMatrixD:
    """Bernstein-to-Jacobi matrix; row h holds the modified Jacobi
    coefficients of B_h^n.

    ``values`` is dense with rows h = k..n-l and columns i = k+l..n.
    """

    params: TransformParams
    values: np.ndarray
    recurrence_steps: int | None = None

    def at(self, h: int, i: int) -> float:
        p = self.params
        if not p.k <= h <= p.n - p.l:
            raise IndexError(f"row index h must lie in [{p.k}, {p.n - p.l}], got {h}")
        if not p.k + p.l <= i <= p.n:
            raise IndexError(f"column index i must lie in [{p.k + p.l}, {p.n}], got {i}")
        return float(self.values[h - p.k, i - p.k - p.l])


@dataclass(frozen=True)
class UFactorMatrix:
    """Elementwise bridge factors, same row/column convention as the
    Jacobi-to-Bernstein matrix (rows i = k+l..n, columns h = k..n-l)."""

    params: TransformParams
    values: np.ndarray

    def at(self, i: int, h: int) -> float:
        p = self.params
        if not p.k + p.l <= i <= p.n:
            raise IndexError(f"row index i must lie in [{p.k + p.l}, {p.n}], got {i}")
        if not p.k <= h <= p.n - p.l:
            raise IndexError(f"column index h must lie in [{p.k}, {p.n - p.l}], got {h}")
        return float(self.values[i - p.k - p.l, h - p.k])


def _z_entry(p: TransformParams, h: int, i: int) -> float:
    """Product-formula value of the z factor for one (h, i) pair.

    The (2i+sigma) numerator cancels the leading denominator pochhammer
    factor exactly at i = k+l, which keeps the expression finite when
    sigma = 0 (possible only for k = l = 0).
    """
    n, k, l = p.n, p.k, p.l
    a, b, sig = p.alpha, p.beta, p.sigma
    m = n - k - l
    ratio0 = 1.0 if i == k + l else (2.0 * i + sig) / (i + k + l + sig)
    body = _poch_ratio(
        [(k + l - n, i - k - l), (a + 2.0 * l + 1.0, n - l - h), (b + 2.0 * k + 1.0, h - k)],
        [(a + 2.0 * l + 1.0, i - k - l), (i + k + l + sig + 1.0, m)],
    )
    return float(math.comb(n, h)) * ratio0 * body


def _z_lane_ratio(p: TransformParams, i: int) -> float:
    """Ratio z[h][i] / z[h][i-1]; independent of h.

    At i = k+l+1 the bracketed factors (i+k+l+alpha+beta) and
    (2i+alpha+beta-1) coincide and are cancelled symbolically.
    """
    n, k, l = p.n, p.k, p.l
    a, b, sig = p.alpha, p.beta, p.sigma
    if i == k + l + 1:
        return (2.0 * i + sig) * (i - n - 1.0) / ((a + l + i - k) * (i + n + sig))
    return (2.0 * i + sig) * (i + k + l + a + b) * (i - n - 1.0) / (
        (a + l + i - k) * (i + n + sig) * (2.0 * i + a + b - 1.0))


def _z_first_column(p: TransformParams) -> list[float]:
    """z[h][k+l] for all h, i.e. the i-seed of every h-lane."""
    n, k, l, a, b = p.n, p.k, p.l, p.alpha, p.beta
    m = n - k - l
    z = float(math.comb(n, k)) * _poch_ratio(
        [(a + 2.0 * l + 1.0, n - l - k)],
        [(2.0 * k + 2.0 * l + p.sigma + 1.0, m)],
    )
    out = [z]
    for h in range(k, n - l):
        z *= (n - h) * (b + k + h + 1.0) / ((h + 1.0) * (a + l + n - h))
        out.append(z)
    return out


def _direct_row_chunk(p: TransformParams, lo: int, hi: int) -> list[list[float]]:
    """Rows lo..hi-1 (indexing h = k+lo..) of the direct construction."""
    n, k, l = p.n, p.k, p.l
    m = n - k - l
    hp = HahnParams(p.beta + 2.0 * k, p.alpha + 2.0 * l, m)
    rows = []
    for h in range(k + lo, k + hi):
        rows.append([_z_entry(p, h, i) * hahn_eval(i - k - l, h - k, hp)
                     for i in range(k + l, n + 1)])
    return rows


def d_direct(p: TransformParams) -> CoeffMatrixD:
    """Entrywise z-product times Hahn-series w (cubic-cost reference)."""
    return CoeffMatrixD(p, np.array(_direct_row_chunk(p, 0, p.dim)))


def _theorem3_row_chunk(p: TransformParams, lo: int, hi: int) -> tuple[list[list[float]], int]:
    """Rows lo..hi-1 (fixed-h lanes) of the Theorem-3 construction, plus the
    number of three-term steps they executed."""
    n, k, l = p.n, p.k, p.l
    a, b, sig = p.alpha, p.beta, p.sigma
    m = n - k - l
    zseed = _z_first_column(p)[lo:hi]
    width = hi - lo
    rows = [[0.0] * (m + 1) for _ in range(width)]
    w2 = [1.0] * width
    for s in range(width):
        rows[s][0] = zseed[s]
    steps = 0
    zprod = 1.0
    if m >= 1:
        zprod = _z_lane_ratio(p, k + l + 1)
        cw = (2.0 * k + 2.0 * l + sig + 1.0) / ((k + l - n) * (b + 2.0 * k + 1.0))
        w1 = [1.0 + (lo + s) * cw for s in range(width)]
        for s in range(width):
            rows[s][1] = zseed[s] * zprod * w1[s]
    for i in range(k + l + 2, n + 1):
        zprod *= _z_lane_ratio(p, i)
        S = (i - k - l - 1.0) * (i + b + a + n) * (i + l + a - k - 1.0) * (2.0 * i + b + a) / (
            (2.0 * i + b + a - 2.0) * (i + k + l + b + a) * (i + k + b - l) * (i - n - 1.0))
        pslope = (2.0 * i + a + b - 1.0) * (2.0 * i + a + b) / (
            (i + k + l + a + b) * (i + k + b - l) * (i - n - 1.0))
        col = i - k - l
        w0 = [0.0] * width
        for s in range(width):
            wv = (1.0 - S + (lo + s) * pslope) * w1[s] + S * w2[s]
            w0[s] = wv
            rows[s][col] = zseed[s] * zprod * wv
        steps += width
        w2, w1 = w1, w0
    return rows, steps


def d_theorem3(p: TransformParams) -> CoeffMatrixD:
    """Fixed-h lanes advanced over i: w by the three-term relation seeded at
    i = k+l, k+l+1, z by the one-term ratio from its first-column value."""
    rows, steps = _theorem3_row_chunk(p, 0, p.dim)
    return CoeffMatrixD(p, np.array(rows), recurrence_steps=steps)


def _theorem4_col_chunk(p: TransformParams, lo: int, hi: int) -> tuple[list[list[float]], int]:
    """Columns lo..hi-1 (fixed-i lanes) of the Theorem-4 construction, as
    full-height rows of width hi-lo, plus the step count."""
    n, k, l = p.n, p.k, p.l
    a, b, sig = p.alpha, p.beta, p.sigma
    m = n - k - l
    width = hi - lo
    # h-dependent pieces shared across lanes; index s = h - k
    zcol = [1.0] * (m + 1)
    for s in range(1, m + 1):
        h = k + s
        zcol[s] = zcol[s - 1] * (n + 1.0 - h) * (b + k + h) / (h * (a + l + n + 1.0 - h))
    vcoef = [0.0] * (m + 1)
    invden = [0.0] * (m + 1)
    for s in range(2, m + 1):
        h = k + s
        den = (h + k + b) * (h + l - n - 1.0)
        vcoef[s] = (h - k - 1.0) * (l + n + a + 2.0 - h) / den
        invden[s] = 1.0 / den
    zrow = _z_first_column(p)[0]
    for i in range(k + l + 1, k + l + lo + 1):
        zrow *= _z_lane_ratio(p, i)
    rows = [[0.0] * width for _ in range(m + 1)]
    steps = 0
    for col, i in enumerate(range(k + l + lo, k + l + hi)):
        if col:
            zrow *= _z_lane_ratio(p, i)
        wfac = (i - k - l) * (i + k + l + sig)
        w2 = 1.0
        rows[0][col] = zrow
        if m >= 1:
            w1 = 1.0 + wfac / ((b + 2.0 * k + 1.0) * (k + l - n))
            rows[1][col] = zrow * zcol[1] * w1
            for s in range(2, m + 1):
                w0 = (1.0 - vcoef[s] + wfac * invden[s]) * w1 + vcoef[s] * w2
                rows[s][col] = zrow * zcol[s] * w0
                w2, w1 = w1, w0
            steps += max(0, m - 1)
    return rows, steps


def d_theorem4(p: TransformParams) -> CoeffMatrixD:
    """Fixed-i lanes advanced over h: the production route."""
    rows, steps = _theorem4_col_chunk(p, 0, p.dim)
    return CoeffMatrixD(p, np.array(rows), recurrence_steps=steps)


def _oracle_col_chunk(p: TransformParams, lo: int, hi: int) -> list[list[float]]:
    """Columns lo..hi-1 (indexing i = k+l+lo..) of the closed-form
    construction, returned column-major."""
    n, k, l = p.n, p.k, p.l
    a, b, sig = p.alpha, p.beta, p.sigma
    m = n - k - l
    binom_n = _float_binomials(n)
    cols = []
    for i in range(k + l + lo, k + l + hi):
        mi = i - l - k
        # (2i+alpha+beta+1) * Gamma(i+k+l+alpha+beta+1) == Gamma(i+k+l+sigma+1)
        # at i = k+l; elsewhere both factors are safely positive
        if i == k + l:
            core = math.lgamma(i + k + l + sig + 1.0)
        else:
            core = math.log(2.0 * i + a + b + 1.0) + math.lgamma(i + k + l + sig)
        log_g0 = (math.lgamma(mi + 1.0) + core - math.log(n + i + a + b + 1.0)
                  - math.lgamma(i + l - k + a + 1.0) - math.lgamma(i - l + k + b + 1.0))
        g0 = math.exp(log_g0) if log_g0 < 709.0 else math.inf
        b1 = [gen_binomial(i + a + l - k, r) for r in range(mi + 1)]
        b2 = [gen_binomial(i + b - l + k, mi - r) for r in range(mi + 1)]
        inv = [1.0 / gen_binomial(n + i + a + b, u + b + k) for u in range(k, n - l + mi + 1)]
        sign0 = -1.0 if mi & 1 else 1.0
        col = [0.0] * (m + 1)
        for s in range(m + 1):
            acc = 0.0
            sign = sign0
            for r in range(mi + 1):
                acc += sign * b1[r] * b2[r] * inv[s + r]
                sign = -sign
            col[s] = binom_n[k + s] * g0 * acc
        cols.append(col)
    return cols


def d_oracle(p: TransformParams) -> CoeffMatrixD:
    """Closed-form literature evaluation with gamma-based binomials (cubic cost)."""
    return CoeffMatrixD(p, np.array(_oracle_col_chunk(p, 0, p.dim)).T)


def u_factors(p: TransformParams, by: str = "h") -> UFactorMatrix:
    """Bridge factors u with c[i][h] = u[i][h] * d[h][i].

    ``by="h"`` seeds the first row (i = k+l) and advances each column over i;
    ``by="i"`` seeds the first column (h = k) and advances each row over h.
    The two routes agree to rounding.
    """
    n, k, l = p.n, p.k, p.l
    a, b, sig = p.alpha, p.beta, p.sigma
    m = n - k - l
    vals = np.empty((m + 1, m + 1))
    binom_n = _float_binomials(n)
    if by == "h":
        binom_m = _float_binomials(m)
        for s in range(m + 1):
            h = k + s
            u = binom_m[s] / binom_n[h] ** 2 * _poch_ratio(
                [(2.0 * k + 2.0 * l + sig + 1.0, m)],
                [(a + 2.0 * l + 1.0, n - l - h), (b + 2.0 * k + 1.0, s)],
            )
            vals[0, s] = u
            for r, i in enumerate(range(k + l + 1, n + 1), start=1):
                if i == k + l + 1:
                    u *= -(i + l + a - k) * (n + i + sig) * (i + k + b - l) / (
                        (2.0 * i + sig) * (i - k - l) * (i - n - 1.0))
                else:
                    u *= -(i + l + a - k) * (2.0 * i + a + b - 1.0) * (n + i + sig) * (i + k + b - l) / (
                        (2.0 * i + sig) * (i - k - l) * (i - n - 1.0) * (i + k + l + a + b))
                vals[r, s] = u
    elif by == "i":
        for r, i in enumerate(range(k + l, n + 1)):
            # the (2i+sigma) divisor cancels the leading pochhammer factor at i = k+l
            if i == k + l:
                top = [(i + k + l + sig + 1.0, m)]
                div = 1.0
            else:
                top = [(i + k + l + sig, n + 1 - k - l)]
                div = 2.0 * i + sig
            sign = -1.0 if (i - k - l) & 1 else 1.0
            u = sign / (binom_n[k] ** 2 * div) * _poch_ratio(
                top + [(b + 2.0 * k + 1.0, i - k - l)],
                [(1.0, i - k - l), (k + l - n, i - k - l), (a + l + i + 1.0 - k, n - i)],
            )
            vals[r, 0] = u
            for s, h in enumerate(range(k + 1, n - l + 1), start=1):
                u *= -h * h * (l + h - n - 1.0) * (n + l + a + 1.0 - h) / (
                    (h - n - 1.0) ** 2 * (h - k) * (h + k + b))
                vals[r, s] = u
    else:
        raise ValueError(f"route must be 'h' or 'i', got {by!r}")
    return UFactorMatrix(p, vals)
