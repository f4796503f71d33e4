"""Torus quadrature for the Hermitian form.

The form is (1/(n! m!)) times the integral of Delta_{n,m} P Q* over
T_xi^n x T_xi'^m against dx/(2 pi i x) dy/(2 pi i y), which in angle
variables is the plain mean over the torus.  We use the tensor trapezoid rule.
Each variable gets its own fractional offset of the angle grid so that no two
coordinates ever coincide at a node; that keeps the operator coefficients
(which have x_i - x_j denominators) finite and changes nothing else.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable, Iterator, Sequence

import numpy as np

from ..polynomial import BiSymPoly
from ..scalars import DEFAULT_TRUNCATION, ParamSet
from .weights import InvalidRadii, radii_ok, weight_Delta_nm

BLOCK = 1 << 15

X_OFFSETS = (0.6180339887498949, 0.2360679774997898, 0.8541019662496847, 0.4721359549995796)
Y_OFFSETS = (0.4142135623730951, 0.8284271247461903, 0.2426406871192854, 0.6568542494923806)


@dataclass(frozen=True)
class QuadratureSpec:
    xi: float = 2.0
    xip: float = 1.0
    N: int = 64
    K: int = DEFAULT_TRUNCATION

    def __post_init__(self):
        if self.N < 8:
            raise ValueError("grid size N must be >= 8")
        if self.K < 10:
            raise ValueError("truncation K must be >= 10")
        if self.xi <= 0 or self.xip <= 0:
            raise InvalidRadii("radii must be positive")

    def validate(self, params: ParamSet) -> None:
        if not radii_ok(self.xi, self.xip, params):
            raise InvalidRadii(
                f"radii xi={self.xi}, xi'={self.xip} violate |log(xi/xi')| > |log(q/t)|/2 "
                f"(need xi/xi' > {params.M:.6g} or < {1 / params.M:.6g})")

    def with_(self, **kw) -> "QuadratureSpec":
        d = asdict(self)
        d.update(kw)
        return QuadratureSpec(**d)

    def inverted(self) -> "QuadratureSpec":
        return self.with_(xi=1 / self.xi, xip=1 / self.xip)

    def as_dict(self) -> dict:
        return asdict(self)


def _angles(N: int, offset: float) -> np.ndarray:
    return 2 * np.pi * (np.arange(N) + offset) / N


def grid_blocks(n: int, m: int, spec: QuadratureSpec, block: int = BLOCK) -> Iterator[tuple]:
    """Yield (X, Y) blocks of grid nodes, shapes (b, n) and (b, m), in a fixed order."""
    if n > len(X_OFFSETS) or m > len(Y_OFFSETS):
        raise ValueError("too many variables for the built-in grid offsets")
    N = spec.N
    ex = [spec.xi * np.exp(1j * _angles(N, X_OFFSETS[i])) for i in range(n)]
    ey = [spec.xip * np.exp(1j * _angles(N, Y_OFFSETS[j])) for j in range(m)]
    axes = ex + ey
    total = N ** (n + m)
    for start in range(0, total, block):
        idx = np.arange(start, min(start + block, total))
        cols = []
        for ax in reversed(axes):
            cols.append(ax[idx % N])
            idx = idx // N
        cols.reverse()
        Z = np.stack(cols, axis=-1) if cols else np.ones((len(idx), 0), dtype=np.complex128)
        yield Z[:, :n], Z[:, n:]


def node_count(n: int, m: int, spec: QuadratureSpec) -> int:
    return spec.N ** (n + m)


def torus_mean(fn: Callable, n: int, m: int, spec: QuadratureSpec, block: int = BLOCK):
    """Mean of fn(X, Y) over the grid; fn may return shape (b,) or (b, ...).

    Blocks are reduced in a fixed order, so results are reproducible.
    """
    total = None
    for X, Y in grid_blocks(n, m, spec, block):
        part = np.sum(fn(X, Y), axis=0)
        total = part if total is None else total + part
    return total / node_count(n, m, spec)


def star_conjugate(Q, conjugate: bool = True) -> Callable:
    """Evaluator for Q*(x, y) = conj(Q(1/conj(x), 1/conj(y))).

    With ``conjugate=False`` it is Q(1/x, 1/y) instead.
    """
    ev = _evaluator(Q)

    def f(X, Y):
        X = np.asarray(X, dtype=np.complex128)
        Y = np.asarray(Y, dtype=np.complex128)
        if np.any(X == 0) or np.any(Y == 0):
            raise ZeroDivisionError("Q* needs nonzero coordinates")
        if conjugate:
            return np.conj(ev(1 / np.conj(X), 1 / np.conj(Y)))
        return ev(1 / X, 1 / Y)

    return f


def _evaluator(P) -> Callable:
    if isinstance(P, BiSymPoly):
        return P.evaluate_grid
    return P


def evaluate_many(polys: Sequence[BiSymPoly], X, Y) -> np.ndarray:
    """Values of several polynomials on the same nodes, shape (len(polys), b).

    The power tables are built once and shared.
    """
    X = np.asarray(X, dtype=np.complex128)
    Y = np.asarray(Y, dtype=np.complex128)
    Z = np.concatenate([X, Y], axis=-1)
    b, nv = Z.shape
    out = np.zeros((len(polys), b), dtype=np.complex128)
    maxdeg = max((p.degree() for p in polys), default=0)
    powers = np.ones((nv, maxdeg + 1, b), dtype=np.complex128)
    for k in range(1, maxdeg + 1):
        powers[:, k] = powers[:, k - 1] * Z.T
    for r, p in enumerate(polys):
        exps, coeffs = p._numpy() if p.terms else (None, ())
        for e, c in zip(exps if exps is not None else (), coeffs):
            term = np.full(b, c)
            for v, k in enumerate(e):
                if k:
                    term = term * powers[v, k]
            out[r] += term
    return out


def hermitian_form(P, Q, spec: QuadratureSpec, params: ParamSet, n: int | None = None,
                   m: int | None = None, check_radii: bool = True, conjugate: bool = True):
    """<P, Q>' by trapezoid quadrature.  P, Q are BiSymPoly or vectorised f(X, Y)."""
    if n is None or m is None:
        ref = P if isinstance(P, BiSymPoly) else Q
        n, m = ref.n, ref.m
    if check_radii:
        spec.validate(params)
    fP = _evaluator(P)
    fQ = star_conjugate(Q, conjugate)

    def integrand(X, Y):
        return weight_Delta_nm(X, Y, params, spec.K) * fP(X, Y) * fQ(X, Y)

    return complex(torus_mean(integrand, n, m, spec)) / (math.factorial(n) * math.factorial(m))


def gram_matrix(left: Sequence[BiSymPoly], right: Sequence[BiSymPoly] | None, spec: QuadratureSpec,
                params: ParamSet, check_radii: bool = True) -> np.ndarray:
    """G[i, j] = <left_i, right_j>' for polynomials sharing one (n, m)."""
    right = left if right is None else right
    ref = (list(left) + list(right))[0]
    n, m = ref.n, ref.m
    if check_radii:
        spec.validate(params)
    G = np.zeros((len(left), len(right)), dtype=np.complex128)
    for X, Y in grid_blocks(n, m, spec):
        w = weight_Delta_nm(X, Y, params, spec.K)
        A = evaluate_many(left, X, Y) * w
        B = np.conj(evaluate_many(right, 1 / np.conj(X), 1 / np.conj(Y)))
        G += A @ B.T
    return G / (node_count(n, m, spec) * math.factorial(n) * math.factorial(m))
