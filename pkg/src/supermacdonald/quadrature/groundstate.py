"""Additive variables and the groundstate factorisation of the weight.

With x = exp(2 pi i u / L), q = exp(-2 pi beta / L), t = exp(-2 pi gamma / L),
the weight Delta_{n,m} equals exp(n m pi (gamma - beta) / L) Psi0 Psi0bar,
where Psi0 is built from the trigonometric Gamma function G(r, a; z).
"""

from __future__ import annotations

import cmath
import math
import random

import numpy as np

from ..scalars import DEFAULT_TRUNCATION, ParamSet
from .weights import PoleError, weight_Delta_nm

POLE_TOL = 1e-8


def _inv_trig_gamma(r: float, a: float, z, K: int):
    z = np.asarray(z, dtype=np.complex128)
    out = np.ones_like(z)
    for k in range(K):
        out = out * (1 - np.exp(2j * r * (z + 1j * a * k + 0.5j * a)))
    return out


def trig_gamma(r: float, a: float, z, K: int = DEFAULT_TRUNCATION, tol: float = POLE_TOL):
    """G(r, a; z) = prod_{k >= 0} (1 - exp(2 i r (z + i a k + i a / 2)))^(-1), K factors."""
    inv = _inv_trig_gamma(r, a, z, K)
    if np.min(np.abs(inv), initial=np.inf) < tol:
        raise PoleError("trigonometric Gamma evaluated near a pole")
    out = 1 / inv
    return out if out.ndim else complex(out)


def ruijsenaars_w(r: float, a: float, b: float, z, K: int = DEFAULT_TRUNCATION, tol: float = POLE_TOL):
    """w(r, a, b; z) = G(z + ib - ia/2) G(-z + ib - ia/2) / (G(z - ia/2) G(-z - ia/2)).

    Computed from reciprocal products, so the zeros at z in (pi/r)Z (where w
    vanishes, like the weight at x_i = x_j) are harmless.
    """
    z = np.asarray(z, dtype=np.complex128)
    den = _inv_trig_gamma(r, a, z + 1j * b - 0.5j * a, K) * _inv_trig_gamma(r, a, -z + 1j * b - 0.5j * a, K)
    if np.min(np.abs(den), initial=np.inf) < tol:
        raise PoleError("w evaluated near a pole")
    out = _inv_trig_gamma(r, a, z - 0.5j * a, K) * _inv_trig_gamma(r, a, -z - 0.5j * a, K) / den
    return out if out.ndim else complex(out)


def beta_gamma(params: ParamSet, L: float) -> tuple[float, float]:
    """beta = -L log q / (2 pi), gamma = -L log t / (2 pi)."""
    return (-L * math.log(float(params.q)) / (2 * math.pi),
            -L * math.log(float(params.t)) / (2 * math.pi))


def to_additive(z, L: float):
    """u with z = exp(2 pi i u / L), principal branch."""
    return L * np.log(np.asarray(z, dtype=np.complex128)) / (2j * math.pi)


def psi0(u, v, L: float, beta: float, gamma: float, K: int = DEFAULT_TRUNCATION) -> complex:
    """Groundstate Psi0(u, v; beta, gamma).

    Each square root is taken on its own factor w(u_i - u_j) with the
    principal branch, which is the positive root wherever w is real positive.
    """
    u = list(np.asarray(u, dtype=np.complex128))
    v = list(np.asarray(v, dtype=np.complex128))
    r = math.pi / L
    num = 1 + 0j
    for i in range(len(u)):
        for j in range(i + 1, len(u)):
            num *= cmath.sqrt(complex(ruijsenaars_w(r, beta, gamma, u[i] - u[j], K)))
    for i in range(len(v)):
        for j in range(i + 1, len(v)):
            num *= cmath.sqrt(complex(ruijsenaars_w(r, gamma, beta, v[i] - v[j], K)))
    den = 1 + 0j
    for ui in u:
        for vj in v:
            den *= 2 * cmath.sin(math.pi * (ui - vj + 0.5j * gamma - 0.5j * beta) / L)
    return num / den


def psi0_bar(u, v, L: float, beta: float, gamma: float, K: int = DEFAULT_TRUNCATION) -> complex:
    """conj(Psi0(conj u, conj v))."""
    return psi0(np.conj(u), np.conj(v), L, beta, gamma, K).conjugate()


def factorization_residual(x, y, params: ParamSet, L: float = 1.0, K: int = DEFAULT_TRUNCATION) -> dict:
    """Relative gap between Delta_{n,m}(x, y) and exp(nm pi (gamma - beta)/L) Psi0 Psi0bar."""
    x = np.asarray(x, dtype=np.complex128)
    y = np.asarray(y, dtype=np.complex128)
    beta, gamma = beta_gamma(params, L)
    u, v = to_additive(x, L), to_additive(y, L)
    lhs = complex(weight_Delta_nm(x[None, :], y[None, :], params, K)[0])
    p, pb = psi0(u, v, L, beta, gamma, K), psi0_bar(u, v, L, beta, gamma, K)
    rhs = math.exp(len(x) * len(y) * math.pi * (gamma - beta) / L) * p * pb
    return {"lhs": [lhs.real, lhs.imag], "rhs": [rhs.real, rhs.imag],
            "residual": abs(lhs - rhs) / max(abs(lhs), 1e-300)}


def torus_points(n: int, m: int, xi: float, xip: float, count: int, seed: int):
    rng = random.Random(seed)
    pts = []
    for _ in range(count):
        x = [xi * cmath.exp(1j * rng.uniform(-math.pi, math.pi)) for _ in range(n)]
        y = [xip * cmath.exp(1j * rng.uniform(-math.pi, math.pi)) for _ in range(m)]
        pts.append((x, y))
    return pts


def factorization_check(n: int, m: int, params: ParamSet, xi: float = 2.0, xip: float = 1.0,
                        L: float = 1.0, points: int = 10, seed: int = 0, K: int = DEFAULT_TRUNCATION,
                        tol: float = 1e-8) -> dict:
    res = []
    for x, y in torus_points(n, m, xi, xip, points, seed):
        res.append(factorization_residual(x, y, params, L, K)["residual"])
    worst = max(res, default=0.0)
    return {"check": f"factorization n={n} m={m}", "points": points, "seed": seed, "L": L,
            "xi": xi, "xip": xip, "max_residual": worst, "tolerance": tol, "passed": worst <= tol}
