"""Deformed Macdonald-Ruijsenaars difference operators, evaluated pointwise.

The operator acts on a function f(x, y) by

    (t^(1-n)/(1-q)) sum_i A_i (T_{q,x_i} - 1) f + (q^(m-1)/(1-1/t)) sum_j B_j (T_{1/t,y_j} - 1) f,

where T_{q,x_i} rescales x_i by q and T_{1/t,y_j} rescales y_j by 1/t.  The
shift-only variant drops the "-1" parts, which sum to a constant.
"""

from __future__ import annotations

import cmath
import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .partitions import Partition
from .polynomial import BiSymPoly
from .scalars import ParamSet
from .supermac import labels, super_P

DEFAULT_POLE_TOL = 1e-6


class PoleError(ArithmeticError):
    """A coefficient denominator vanishes (or nearly vanishes) at the point."""


@dataclass(frozen=True)
class PointConfig:
    x: tuple
    y: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(self.x))
        object.__setattr__(self, "y", tuple(self.y))
        if any(v == 0 for v in self.x + self.y):
            raise ValueError("coordinates must be nonzero")

    @property
    def n(self):
        return len(self.x)

    @property
    def m(self):
        return len(self.y)

    def shift_x(self, i: int, s) -> "PointConfig":
        x = list(self.x)
        x[i] = x[i] * s
        return PointConfig(x, self.y)

    def shift_y(self, j: int, s) -> "PointConfig":
        y = list(self.y)
        y[j] = y[j] * s
        return PointConfig(self.x, y)


def resolve(params: ParamSet, variant: str) -> ParamSet:
    if variant == "qt":
        return params
    if variant == "inverse":
        return params.inverted()
    raise ValueError(f"variant must be 'qt' or 'inverse', got {variant!r}")


def _check(den, what: str, tol: float):
    if den == 0 or (tol and abs(den) < tol):
        raise PoleError(f"pole: {what} = {den}")


def coeff_A(i: int, point: PointConfig, params: ParamSet, pole_tol: float = 0.0):
    a, b = params.a, params.b
    t = params.t
    x, y = point.x, point.y
    val = 1
    for k, xk in enumerate(x):
        if k != i:
            den = x[i] - xk
            _check(den, f"x_{i + 1} - x_{k + 1}", pole_tol)
            val = val * (t * x[i] - xk) / den
    for j, yj in enumerate(y):
        den = b * x[i] - yj / a
        _check(den, f"t^(1/2) x_{i + 1} - q^(-1/2) y_{j + 1}", pole_tol)
        val = val * (b * x[i] - a * yj) / den
    return val


def coeff_B(j: int, point: PointConfig, params: ParamSet, pole_tol: float = 0.0):
    a, b = params.a, params.b
    q = params.q
    x, y = point.x, point.y
    val = 1
    for k, yk in enumerate(y):
        if k != j:
            den = y[j] - yk
            _check(den, f"y_{j + 1} - y_{k + 1}", pole_tol)
            val = val * (y[j] / q - yk) / den
    for i, xi in enumerate(x):
        den = y[j] / a - b * xi
        _check(den, f"q^(-1/2) y_{j + 1} - t^(1/2) x_{i + 1}", pole_tol)
        val = val * (y[j] / a - xi / b) / den
    return val


def prefactors(n: int, m: int, params: ParamSet):
    q, t = params.q, params.t
    return t ** (1 - n) / (1 - q), q ** (m - 1) / (1 - 1 / t)


def _as_function(P) -> Callable:
    if isinstance(P, BiSymPoly):
        return lambda pt: P.evaluate(pt.x, pt.y)
    return P


def apply_M(P, point: PointConfig, params: ParamSet, variant: str = "qt",
            shift_only: bool = False, pole_tol: float = 0.0):
    """(M P)(point) for a polynomial or any function f(PointConfig).

    ``shift_only=False`` is the operator with (T - 1) terms, whose
    eigenvalues are d_lambda; ``shift_only=True`` drops the constant part.
    """
    pr = resolve(params, variant)
    f = _as_function(P)
    n, m = point.n, point.m
    cx, cy = prefactors(n, m, pr)
    base = 0 if shift_only else f(point)
    total = 0
    for i in range(n):
        A = coeff_A(i, point, pr, pole_tol)
        total = total + cx * A * (f(point.shift_x(i, pr.q)) - base)
    for j in range(m):
        B = coeff_B(j, point, pr, pole_tol)
        total = total + cy * B * (f(point.shift_y(j, 1 / pr.t)) - base)
    return total


def operator_function(params: ParamSet, variant: str = "qt", shift_only: bool = True,
                      pole_tol: float = 0.0) -> Callable:
    """The operator as a higher-order function f -> (M f), for nesting."""

    def op(P):
        f = _as_function(P)
        return lambda pt: apply_M(f, pt, params, variant, shift_only, pole_tol)

    return op


def eigenvalue_d(lam, params: ParamSet, variant: str = "qt"):
    """d_lambda = sum_i t^(1-i) (q^lambda_i - 1)/(1 - q)."""
    pr = resolve(params, variant)
    q, t = pr.q, pr.t
    return sum((t ** (-i) * (q**p - 1) / (1 - q) for i, p in enumerate(Partition(lam))), 0 * q)


def constant_term(n: int, m: int, params: ParamSet, variant: str = "qt"):
    """(1 - t^-n q^m) / ((1 - 1/t)(1 - q)): the sum of all non-shift terms."""
    pr = resolve(params, variant)
    q, t = pr.q, pr.t
    return (1 - t ** (-n) * q**m) / ((1 - 1 / t) * (1 - q))


def identity_Id_check(point: PointConfig, params: ParamSet):
    """|sum of the A/B coefficient terms - the closed-form constant|; 0 exactly in exact mode."""
    n, m = point.n, point.m
    cx, cy = prefactors(n, m, params)
    lhs = sum((cx * coeff_A(i, point, params) for i in range(n)), 0)
    lhs = lhs + sum((cy * coeff_B(j, point, params) for j in range(m)), 0)
    diff = lhs - constant_term(n, m, params)
    return diff if params.exact and not isinstance(diff, complex) and diff == 0 else abs(diff)


# ---------------------------------------------------------------------------
# sampling


def random_point(n: int, m: int, rng: random.Random, exact: bool = False) -> PointConfig:
    """A point with all coordinates in 1/2 <= |z| <= 2, away from the negative real axis."""
    from fractions import Fraction

    if exact:
        def coord():
            return Fraction(rng.randint(5, 20), 10) * rng.choice((1, -1))
    else:
        def coord():
            return cmath.rect(rng.uniform(0.5, 2.0), rng.uniform(-2.8, 2.8))
    return PointConfig([coord() for _ in range(n)], [coord() for _ in range(m)])


def sample_points(n: int, m: int, count: int, seed: int, params: ParamSet,
                  pole_tol: float = DEFAULT_POLE_TOL, exact: bool = False,
                  depth: int = 1) -> list[PointConfig]:
    """Seeded points whose coefficients, and those at ``depth`` levels of shifts
    in both variants, stay at least ``pole_tol`` away from every pole."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        pt = random_point(n, m, rng, exact)
        try:
            _probe(pt, params, pole_tol, depth)
        except (PoleError, ValueError, ZeroDivisionError):
            continue
        out.append(pt)
    return out


def _probe(pt: PointConfig, params: ParamSet, tol: float, depth: int):
    for pr in (params, params.inverted()):
        for i in range(pt.n):
            coeff_A(i, pt, pr, tol)
        for j in range(pt.m):
            coeff_B(j, pt, pr, tol)
    if depth > 0:
        for pr in (params, params.inverted()):
            for i in range(pt.n):
                _probe(pt.shift_x(i, pr.q), params, tol, depth - 1)
            for j in range(pt.m):
                _probe(pt.shift_y(j, 1 / pr.t), params, tol, depth - 1)


# ---------------------------------------------------------------------------
# verification suites


@dataclass
class CheckReport:
    check: str
    points: int
    max_residual: float
    tolerance: float
    seed: int
    details: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tolerance

    def as_dict(self) -> dict:
        return {"check": self.check, "points": self.points, "max_residual": self.max_residual,
                "tolerance": self.tolerance, "seed": self.seed, "passed": self.passed,
                "details": self.details}


def eigen_residuals(lam, n: int, m: int, params: ParamSet, points: int = 20, seed: int = 0,
                    variant: str = "qt") -> list[float]:
    """Relative residuals |M SP - d SP| / (1 + |SP|) at seeded float points."""
    fp = params.to_float()
    P = super_P(Partition(lam), n, m, params).to_complex()
    d = complex(eigenvalue_d(lam, fp, variant))
    out = []
    for pt in sample_points(n, m, points, seed, fp, depth=0):
        val = P.evaluate(pt.x, pt.y)
        lhs = apply_M(P, pt, fp, variant)
        out.append(abs(lhs - d * val) / (1 + abs(val)))
    return out


def eigen_check(lam, n: int, m: int, params: ParamSet, points: int = 20, seed: int = 0,
                tol: float = 1e-10) -> CheckReport:
    details = []
    worst = 0.0
    for variant in ("qt", "inverse"):
        res = eigen_residuals(lam, n, m, params, points, seed, variant)
        details.append({"variant": variant, "max_residual": max(res, default=0.0)})
        worst = max(worst, max(res, default=0.0))
    return CheckReport(f"eigen {Partition(lam)} n={n} m={m}", points, worst, tol, seed, details)


def log_boost(pt: PointConfig, params: ParamSet) -> complex:
    """B = i sum log(x_i)/log(q) - i sum log(y_j)/log(t), principal branch."""
    lq, lt = np.log(float(params.q)), np.log(float(params.t))
    return (1j * sum(cmath.log(complex(v)) for v in pt.x) / lq
            - 1j * sum(cmath.log(complex(v)) for v in pt.y) / lt)


def commutator_checks(n: int, m: int, params: ParamSet, degree: int = 4, points: int = 10,
                      seed: int = 0, tol: float = 1e-9) -> dict:
    """Poincare-algebra relations for the shift operators on the SP basis.

    With M+ = M_{q,t}, M- = M_{1/q,1/t} (shift-only), H = (M+ + M-)/2,
    P = (M+ - M-)/2 and the boost B, checks [H, P] = 0, [M+-, B] = +-i M+-,
    [H, B] = iP and [P, B] = iH pointwise on every SP_lambda, |lambda| <= degree.
    """
    fp = params.to_float()
    Mp = operator_function(fp, "qt")
    Mm = operator_function(fp, "inverse")

    def B(f):
        return lambda pt: log_boost(pt, fp) * f(pt)

    def comm(X, Y, f):
        a, b = X(Y(f)), Y(X(f))
        return lambda pt: a(pt) - b(pt)

    def H(f):
        a, b = Mp(f), Mm(f)
        return lambda pt: 0.5 * (a(pt) + b(pt))

    def Pm(f):
        a, b = Mp(f), Mm(f)
        return lambda pt: 0.5 * (a(pt) - b(pt))

    pts = sample_points(n, m, points, seed, fp, depth=1)
    relations = {
        "[H,P]": lambda f: (comm(H, Pm, f), lambda pt: 0),
        "[M+,B]-iM+": lambda f: (comm(Mp, B, f), lambda pt, g=Mp(f): 1j * g(pt)),
        "[M-,B]+iM-": lambda f: (comm(Mm, B, f), lambda pt, g=Mm(f): -1j * g(pt)),
        "[H,B]-iP": lambda f: (comm(H, B, f), lambda pt, g=Pm(f): 1j * g(pt)),
        "[P,B]-iH": lambda f: (comm(Pm, B, f), lambda pt, g=H(f): 1j * g(pt)),
        "[M+,M-]": lambda f: (comm(Mp, Mm, f), lambda pt: 0),
    }
    worst = {k: 0.0 for k in relations}
    rows = []
    for lam in labels(n, m, degree):
        P = super_P(lam, n, m, params).to_complex()
        if P.is_zero():
            continue
        f = lambda pt, P=P: P.evaluate(pt.x, pt.y)
        for name, build in relations.items():
            lhs, rhs = build(f)
            res = 0.0
            for pt in pts:
                scale = 1 + abs(f(pt))
                res = max(res, abs(lhs(pt) - rhs(pt)) / scale)
            worst[name] = max(worst[name], res)
            rows.append({"lambda": str(lam), "relation": name, "max_residual": res})
    return {
        "check": f"commutators n={n} m={m} degree={degree}",
        "points": len(pts),
        "seed": seed,
        "tolerance": tol,
        "max_residual": max(worst.values(), default=0.0),
        "per_relation": worst,
        "passed": all(v <= tol for v in worst.values()),
        "details": rows,
    }


def apply_M_grid(P, X, Y, params: ParamSet, variant: str = "qt", shift_only: bool = False):
    """Vectorised apply_M over many points: X has shape (b, n), Y shape (b, m).

    P is a BiSymPoly or a vectorised f(X, Y).  No pole guard; callers choose
    grids that stay clear of the coefficient poles.
    """
    pr = resolve(params, variant).to_float()
    f = P.evaluate_grid if isinstance(P, BiSymPoly) else P
    X = np.asarray(X, dtype=np.complex128)
    Y = np.asarray(Y, dtype=np.complex128)
    n, m = X.shape[-1], Y.shape[-1]
    a, b, q, t = pr.a, pr.b, pr.q, pr.t
    cx, cy = prefactors(n, m, pr)
    base = 0 if shift_only else f(X, Y)
    total = np.zeros(X.shape[:-1], dtype=np.complex128)
    for i in range(n):
        A = np.ones_like(total)
        for k in range(n):
            if k != i:
                A = A * (t * X[..., i] - X[..., k]) / (X[..., i] - X[..., k])
        for j in range(m):
            A = A * (b * X[..., i] - a * Y[..., j]) / (b * X[..., i] - Y[..., j] / a)
        Xs = X.copy()
        Xs[..., i] *= q
        total = total + cx * A * (f(Xs, Y) - base)
    for j in range(m):
        B = np.ones_like(total)
        for k in range(m):
            if k != j:
                B = B * (Y[..., j] / q - Y[..., k]) / (Y[..., j] - Y[..., k])
        for i in range(n):
            B = B * (Y[..., j] / a - X[..., i] / b) / (Y[..., j] / a - b * X[..., i])
        Ys = Y.copy()
        Ys[..., j] /= t
        total = total + cy * B * (f(X, Ys) - base)
    return total
