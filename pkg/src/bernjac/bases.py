"""Polynomial containers and evaluation in the Bernstein and modified Jacobi
bases of the endpoint-constrained space, plus the exact Beta-function Gram
matrix that serves as the independent oracle for all orthogonality and
least-squares claims.

The constrained space of degree <= n holds polynomials whose derivatives of
order < k vanish at 0 and of order < l vanish at 1; its dimension is
n-k-l+1.  Public containers are addressed by the mathematical indices
(h = k..n-l for Bernstein, i = k+l..n for modified Jacobi); storage offsets
never leak.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .specialfn import beta_fn


@dataclass(frozen=True)
class TransformParams:
    """Parameter bundle (n, k, l, alpha, beta) for one constrained space."""

    n: int
    k: int
    l: int
    alpha: float = 0.0
    beta: float = 0.0

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise ValueError(f"degree n must be a nonnegative integer, got {self.n}")
        if not isinstance(self.k, int) or self.k < 0 or not isinstance(self.l, int) or self.l < 0:
            raise ValueError(f"constraint orders must be nonnegative integers, got k={self.k}, l={self.l}")
        if self.k + self.l > self.n:
            raise ValueError(f"constraint orders must satisfy k + l <= n, got k={self.k}, l={self.l}, n={self.n}")
        if self.alpha <= -1.0 or self.beta <= -1.0:
            raise ValueError(f"weight exponents must satisfy alpha > -1 and beta > -1, got alpha={self.alpha}, beta={self.beta}")

    @property
    def sigma(self) -> float:
        return self.alpha + self.beta + 1.0

    @property
    def dim(self) -> int:
        return self.n - self.k - self.l + 1

    def h_indices(self) -> range:
        """Bernstein indices h = k..n-l of the constrained basis."""
        return range(self.k, self.n - self.l + 1)

    def i_indices(self) -> range:
        """Modified Jacobi indices i = k+l..n of the constrained basis."""
        return range(self.k + self.l, self.n + 1)


def _coerce_coeffs(coeffs, dim: int) -> np.ndarray:
    c = np.asarray(coeffs, dtype=float)
    if c.ndim not in (1, 2) or c.shape[0] != dim:
        raise ValueError(f"coefficient array must have {dim} rows, got shape {c.shape}")
    return c


@dataclass(frozen=True)
class BernsteinPoly:
    """Coefficients relative to B_k^n, ..., B_{n-l}^n.

    ``coeffs[h - k]`` is the coefficient of B_h^n; entries may be scalars or
    d-vectors (control values of a curve component), in which case all
    operations apply componentwise.
    """

    params: TransformParams
    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _coerce_coeffs(self.coeffs, self.params.dim))

    def coeff(self, h: int):
        p = self.params
        if not p.k <= h <= p.n - p.l:
            raise IndexError(f"Bernstein index h must lie in [{p.k}, {p.n - p.l}], got {h}")
        return self.coeffs[h - p.k]

    def full_coeffs(self) -> np.ndarray:
        """Zero-padded coefficient vector over all indices 0..n."""
        p = self.params
        shape = (p.n + 1,) + self.coeffs.shape[1:]
        full = np.zeros(shape)
        full[p.k:p.n - p.l + 1] = self.coeffs
        return full


@dataclass(frozen=True)
class ModJacobiCoeffs:
    """Coefficients relative to the modified Jacobi basis J_{k+l}, ..., J_n."""

    params: TransformParams
    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _coerce_coeffs(self.coeffs, self.params.dim))

    def coeff(self, i: int):
        p = self.params
        if not p.k + p.l <= i <= p.n:
            raise IndexError(f"modified Jacobi index i must lie in [{p.k + p.l}, {p.n}], got {i}")
        return self.coeffs[i - p.k - p.l]

    def evaluate(self, x: float):
        """Pointwise value of the represented polynomial."""
        p = self.params
        acc = None
        for i in p.i_indices():
            v = self.coeffs[i - p.k - p.l] * eval_mod_jacobi(i, p, x)
            acc = v if acc is None else acc + v
        return acc


@dataclass(frozen=True)
class BezierCurve:
    """Degree-n Bezier curve with control points stored as an (n+1, d) array.

    One-dimensional input is accepted and treated as a scalar-valued curve.
    """

    control_points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.control_points, dtype=float)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] < 1:
            raise ValueError(f"control points must form an (n+1, d) array, got shape {pts.shape}")
        object.__setattr__(self, "control_points", pts)

    @property
    def degree(self) -> int:
        return self.control_points.shape[0] - 1

    @property
    def dimension(self) -> int:
        return self.control_points.shape[1]

    def point(self, x: float) -> np.ndarray:
        return de_casteljau(self.control_points, x)


def de_casteljau(coeffs: np.ndarray, x: float):
    """Evaluate a polynomial from its full Bernstein coefficient vector.

    Repeated convex combinations; backward stable on [0, 1] and still exact
    (as a polynomial) for arguments slightly outside.
    """
    b = np.array(coeffs, dtype=float)
    n = b.shape[0] - 1
    for r in range(n):
        b = (1.0 - x) * b[:n - r] + x * b[1:n - r + 1]
    return b[0]


def eval_bernstein(p: BernsteinPoly, x: float):
    """Value of a constrained Bernstein expansion at x (scalar or d-vector)."""
    return de_casteljau(p.full_coeffs(), x)


def eval_shifted_jacobi(i: int, alpha: float, beta: float, x: float) -> float:
    """Shifted Jacobi polynomial on [0,1], weight (1-x)^alpha x^beta.

    Evaluated by its terminating series in powers of (1-x); adequate for the
    moderate degrees this library targets.
    """
    if alpha <= -1.0 or beta <= -1.0:
        raise ValueError("shifted Jacobi parameters must satisfy alpha > -1 and beta > -1")
    if i < 0:
        raise ValueError("shifted Jacobi degree must be nonnegative")
    pre = 1.0
    for j in range(i):
        pre *= (alpha + 1.0 + j) / (j + 1.0)
    u = 1.0 - x
    total = 0.0
    term = 1.0
    for j in range(i):
        total += term
        term *= (j - i) * (i + alpha + beta + 1.0 + j) * u / ((j + 1.0) * (alpha + 1.0 + j))
    return pre * (total + term)


def eval_mod_jacobi(i: int, p: TransformParams, x: float) -> float:
    """Modified Jacobi basis polynomial: (1-x)^l x^k times a shifted Jacobi
    polynomial of degree i-k-l with lifted parameters."""
    if not p.k + p.l <= i <= p.n:
        raise ValueError(f"index i must lie in [{p.k + p.l}, {p.n}], got {i}")
    return (1.0 - x) ** p.l * x ** p.k * eval_shifted_jacobi(
        i - p.k - p.l, p.alpha + 2.0 * p.l, p.beta + 2.0 * p.k, x)


def bernstein_gram(p: TransformParams) -> np.ndarray:
    """Gram matrix of the constrained Bernstein basis under (1-x)^alpha x^beta.

    Entries are exact up to rounding:
        <B_h, B_h'> = C(n,h) C(n,h') B(beta+h+h'+1, 2n-h-h'+alpha+1).
    Symmetric positive definite; this is the verification oracle for every
    orthogonality and least-squares statement in the package.
    """
    hs = list(p.h_indices())
    binom = [float(math.comb(p.n, h)) for h in hs]
    G = np.empty((p.dim, p.dim))
    for r, h in enumerate(hs):
        for s in range(r, p.dim):
            h2 = hs[s]
            v = binom[r] * binom[s] * beta_fn(p.beta + h + h2 + 1.0, 2.0 * p.n - h - h2 + p.alpha + 1.0)
            G[r, s] = v
            G[s, r] = v
    return G


def inner_product(f: BernsteinPoly, g: BernsteinPoly) -> float:
    """Weighted L2 inner product of two expansions sharing one parameter set.

    Vector-valued coefficients are contracted componentwise and summed, i.e.
    the usual inner product of curves.
    """
    if f.params != g.params:
        raise ValueError("inner_product requires operands with identical parameters")
    G = bernstein_gram(f.params)
    return float(np.sum(f.coeffs * (G @ g.coeffs)))


def curve_to_json(curve: BezierCurve) -> dict:
    """Plain-dict form of a curve: degree, dimension, control_points."""
    return {
        "degree": curve.degree,
        "dimension": curve.dimension,
        "control_points": [[float(v) for v in row] for row in curve.control_points],
    }


def curve_from_json(obj: dict) -> BezierCurve:
    """Parse and validate the curve interchange format."""
    try:
        degree = obj["degree"]
        dimension = obj["dimension"]
        pts = obj["control_points"]
    except (TypeError, KeyError) as exc:
        raise ValueError(f"curve object is missing field {exc}") from exc
    if not isinstance(degree, int) or degree < 0:
        raise ValueError(f"curve degree must be a nonnegative integer, got {degree!r}")
    if not isinstance(dimension, int) or dimension < 1:
        raise ValueError(f"curve dimension must be a positive integer, got {dimension!r}")
    if len(pts) != degree + 1:
        raise ValueError(f"expected {degree + 1} control points, got {len(pts)}")
    arr = np.asarray(pts, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != dimension:
        raise ValueError("control points must be rows of 'dimension' numbers each")
    return BezierCurve(arr)
