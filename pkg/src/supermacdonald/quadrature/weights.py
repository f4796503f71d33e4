"""Weight functions on tori: the n-particle Macdonald weight and the
deformed (n, m) weight with its cross factors."""

from __future__ import annotations

import numpy as np

from ..scalars import DEFAULT_TRUNCATION, ParamSet

POLE_TOL = 1e-8


class PoleError(ArithmeticError):
    """The integrand is evaluated too close to one of its poles."""


class CoincidentPoints(ValueError):
    """Two coordinates of one block coincide; the weight degenerates there."""


class InvalidRadii(ValueError):
    """Integration radii fall in the excluded region."""


def radii_ok(xi: float, xip: float, params: ParamSet) -> bool:
    """|log(xi/xi')| > |log(q/t)|/2."""
    return bool(abs(np.log(xi / xip)) > 0.5 * abs(np.log(float(params.q) / float(params.t))))


def _pochhammer_ratio(z, q: float, t: float, K: int, tol: float):
    """(z; q)_K / (t z; q)_K elementwise, with a pole-proximity guard."""
    num = np.ones_like(z)
    den = np.ones_like(z)
    qk = 1.0
    for _ in range(K):
        num = num * (1 - z * qk)
        d = 1 - t * z * qk
        if tol and np.min(np.abs(d), initial=np.inf) < tol:
            raise PoleError("weight evaluated within %.0e of a pole t q^k x_i = x_j" % tol)
        den = den * d
        qk *= q
    return num / den


def weight_Delta_n(X, q: float, t: float, K: int = DEFAULT_TRUNCATION, tol: float = POLE_TOL):
    """prod_{i != j} (x_i/x_j; q)_inf / (t x_i/x_j; q)_inf, truncated at K factors.

    X has shape (..., n); the result has shape (...).
    """
    X = np.asarray(X, dtype=np.complex128)
    n = X.shape[-1]
    out = np.ones(X.shape[:-1], dtype=np.complex128)
    for i in range(n):
        for j in range(i + 1, n):
            if tol and np.min(np.abs(X[..., i] - X[..., j]) / np.abs(X[..., j]), initial=np.inf) < tol:
                raise CoincidentPoints(f"x_{i + 1} and x_{j + 1} coincide")
    for i in range(n):
        for j in range(n):
            if i != j:
                out = out * _pochhammer_ratio(X[..., i] / X[..., j], float(q), float(t), K, tol)
    return out


def cross_factor(X, Y, params: ParamSet, tol: float = POLE_TOL):
    """prod_{i,j} 1/((1 - c x_i/y_j)(1 - c y_j/x_i)) with c = q^(-1/2) t^(1/2)."""
    c = float(params.b) / float(params.a)
    X = np.asarray(X, dtype=np.complex128)
    Y = np.asarray(Y, dtype=np.complex128)
    out = np.ones(np.broadcast_shapes(X.shape[:-1], Y.shape[:-1]), dtype=np.complex128)
    for i in range(X.shape[-1]):
        for j in range(Y.shape[-1]):
            d = (1 - c * X[..., i] / Y[..., j]) * (1 - c * Y[..., j] / X[..., i])
            if tol and np.min(np.abs(d), initial=np.inf) < tol:
                raise PoleError("weight evaluated near a hyperplane x_i = (q/t)^(+-1/2) y_j; "
                                "choose radii with |log(xi/xi')| > |log(q/t)|/2")
            out = out / d
    return out


def weight_Delta_nm(X, Y, params: ParamSet, K: int = DEFAULT_TRUNCATION, tol: float = POLE_TOL):
    """Delta_n(x; q, t) Delta_m(y; t, q) times the cross factor."""
    q, t = float(params.q), float(params.t)
    X = np.asarray(X, dtype=np.complex128)
    Y = np.asarray(Y, dtype=np.complex128)
    w = weight_Delta_n(X, q, t, K, tol) * weight_Delta_n(Y, t, q, K, tol)
    if X.shape[-1] and Y.shape[-1]:
        w = w * cross_factor(X, Y, params, tol)
    return w
