"""Closed-form quadratic norms and their comparison against quadrature."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..partitions import Partition, b_lambda, east_south, has_rectangle, in_Hnm
from ..scalars import DEFAULT_TRUNCATION, ParamSet, qpochhammer
from ..supermac import labels, super_P
from .form import QuadratureSpec, gram_matrix


def norm_formula_Nn(lam, n: int, q: float, t: float, K: int = DEFAULT_TRUNCATION,
                    variant: str = "macdonald") -> float:
    """Norm of P_lambda(x_1..x_n; q, t) for the 1/n!-normalised torus product.

    prod_{i<j} (q^d t^(j-i); q)(q^(d+1) t^(j-i); q) / ((q^d t^(j-i+1); q)(q^(d+1) t^(j-i-1); q)),
    d = lambda_i - lambda_j.  ``variant="printed"`` uses t^(j-i+1) in the last
    factor too; it does not match quadrature and is kept only for comparison.
    """
    lam = Partition(lam)
    if len(lam) > n:
        raise ValueError(f"{lam} has more than {n} parts")
    if variant not in ("macdonald", "printed"):
        raise ValueError("variant must be 'macdonald' or 'printed'")
    lp = lam.padded(n)
    q, t = float(q), float(t)
    out = 1.0
    for i in range(n):
        for j in range(i + 1, n):
            d, g = lp[i] - lp[j], j - i
            last = g + 1 if variant == "printed" else g - 1
            out *= (qpochhammer(q**d * t**g, q, K) * qpochhammer(q ** (d + 1) * t**g, q, K)
                    / (qpochhammer(q**d * t ** (g + 1), q, K) * qpochhammer(q ** (d + 1) * t**last, q, K)))
    return out


def norm_formula_Nnm(lam, n: int, m: int, params: ParamSet, K: int = DEFAULT_TRUNCATION,
                     variant: str = "macdonald") -> float:
    """N_{n,m}(lambda; q, t): zero unless (m^n) is inside lambda, else

    (t/q)^|s| b_e(q,t) b_s(t,q) / b_lambda(q,t) * N_n(e; q,t) N_m(s; t,q).
    """
    lam = Partition(lam)
    if not in_Hnm(lam, n, m):
        raise ValueError(f"{lam} is not in H_({n},{m})")
    if not has_rectangle(lam, n, m):
        return 0.0
    q, t = float(params.q), float(params.t)
    e, s = east_south(lam, n, m)
    val = (t / q) ** sum(s) * b_lambda(e, q, t) * b_lambda(s, t, q) / b_lambda(lam, q, t)
    return float(val * norm_formula_Nn(e, n, q, t, K, variant) * norm_formula_Nn(s, m, t, q, K, variant))


@dataclass
class NormReport:
    lam: Partition
    formula_value: float
    quadrature_value: complex
    spec: QuadratureSpec

    @property
    def rel_error(self) -> float:
        return abs(self.quadrature_value - self.formula_value) / max(1.0, abs(self.formula_value))

    def row(self, seed: int = 0) -> dict:
        return {"lambda": str(self.lam), "formula": self.formula_value,
                "quad_re": self.quadrature_value.real, "quad_im": self.quadrature_value.imag,
                "rel_err": self.rel_error, "N": self.spec.N, "K": self.spec.K,
                "xi": self.spec.xi, "xip": self.spec.xip, "seed": seed}


@dataclass
class OrthogonalityResult:
    n: int
    m: int
    labels: list
    gram: np.ndarray
    formulas: list
    spec: QuadratureSpec

    def reports(self) -> list[NormReport]:
        return [NormReport(lam, f, complex(self.gram[k, k]), self.spec)
                for k, (lam, f) in enumerate(zip(self.labels, self.formulas))]

    def scale(self, i: int, j: int, coeffs: list[float]) -> float:
        a, b = self.formulas[i], self.formulas[j]
        if a > 0 and b > 0:
            return math.sqrt(a * b)
        return max(coeffs[i], coeffs[j])

    def summary(self, coeffs: list[float]) -> dict:
        norm_err, zero_err, off_err = 0.0, 0.0, 0.0
        off_worst = None
        for k, rep in enumerate(self.reports()):
            if rep.formula_value > 0:
                norm_err = max(norm_err, rep.rel_error)
            else:
                zero_err = max(zero_err, abs(rep.quadrature_value))
        for i in range(len(self.labels)):
            for j in range(len(self.labels)):
                if i != j:
                    r = abs(self.gram[i, j]) / self.scale(i, j, coeffs)
                    if r > off_err:
                        off_err, off_worst = r, (str(self.labels[i]), str(self.labels[j]))
        return {"max_norm_rel_error": norm_err, "max_zero_norm_abs": zero_err,
                "max_offdiag_scaled": off_err, "worst_offdiag_pair": off_worst,
                "min_formula": min(self.formulas, default=0.0)}


def orthogonality_suite(n: int, m: int, params: ParamSet, spec: QuadratureSpec | None = None,
                        max_weight: int = 5) -> tuple[OrthogonalityResult, list[float]]:
    """Gram matrix of SP_lambda, lambda in H_{n,m} with |lambda| <= max_weight."""
    spec = spec or QuadratureSpec()
    labs = labels(n, m, max_weight)
    polys = [super_P(lam, n, m, params).to_complex() for lam in labs]
    G = gram_matrix(polys, None, spec, params)
    formulas = [norm_formula_Nnm(lam, n, m, params, spec.K) for lam in labs]
    coeffs = [p.max_coefficient() for p in polys]
    return OrthogonalityResult(n, m, labs, G, formulas, spec), coeffs


def m0_suite(n: int, params: ParamSet, spec: QuadratureSpec | None = None, max_weight: int = 5,
             variant: str = "macdonald") -> list[NormReport]:
    """m = 0: the form reduces to the n-variable Macdonald product; compare with N_n."""
    spec = spec or QuadratureSpec(xi=1.0, xip=1.0)
    labs = labels(n, 0, max_weight)
    polys = [super_P(lam, n, 0, params).to_complex() for lam in labs]
    G = gram_matrix(polys, None, spec, params, check_radii=False)
    q, t = params.q, params.t
    return [NormReport(lam, norm_formula_Nn(lam, n, q, t, spec.K, variant), complex(G[k, k]), spec)
            for k, lam in enumerate(labs)]
