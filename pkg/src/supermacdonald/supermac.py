"""The algebra of deformed symmetric polynomials in (x; y) and the
super-Macdonald polynomials SP_lambda.

SP_lambda is built as the image of P_lambda under the homomorphism that sends
the power sum p_r to the deformed Newton sum

    p_r(x, y) = sum_i x_i^r - (q^(r/2) - q^(-r/2)) / (t^(r/2) - t^(-r/2)) sum_j y_j^r,

and independently from the skew expansion over partitions mu in the window
(<lam'_1 - n>, ..., <lam'_m - n>) <= mu <= (lam'_1, ..., lam'_m).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .partitions import Partition, b_lambda, conjugate, in_Hnm, subpartitions
from .polynomial import BiSymPoly
from .scalars import ParamSet, ParameterError
from .symfunc import SymFunc, macdonald_P, macdonald_P_p, skew_P


def newton_ratio(r: int, params: ParamSet):
    """(q^(r/2) - q^(-r/2)) / (t^(r/2) - t^(-r/2))."""
    a, b = params.a, params.b
    den = b**r - b ** (-r)
    if den == 0:
        raise ParameterError(f"t^({r}/2) = t^(-{r}/2): the deformed Newton sum is undefined")
    return (a**r - a ** (-r)) / den


@lru_cache(maxsize=None)
def deformed_newton(r: int, n: int, m: int, params: ParamSet) -> BiSymPoly:
    if r < 1:
        raise ValueError("r must be >= 1")
    return BiSymPoly.power_sum_x(n, m, r) + BiSymPoly.power_sum_y(n, m, r, -newton_ratio(r, params))


@lru_cache(maxsize=None)
def _deformed_p_mu(mu: Partition, n: int, m: int, params: ParamSet) -> BiSymPoly:
    if not mu:
        return BiSymPoly.constant(n, m, params.a**0)
    return _deformed_p_mu(Partition(mu[1:]), n, m, params) * deformed_newton(mu[0], n, m, params)


def phi(f: SymFunc, n: int, m: int, params: ParamSet) -> BiSymPoly:
    """Ring homomorphism p_r -> deformed_newton(r) applied to f."""
    out = BiSymPoly.zero(n, m)
    for mu, c in f.to_p().terms.items():
        out = out + _deformed_p_mu(mu, n, m, params).scale(c)
    return out


@lru_cache(maxsize=None)
def super_P(lam, n: int, m: int, params: ParamSet) -> BiSymPoly:
    """SP_lambda(x, y; q, t) as the image of P_lambda under phi."""
    lam = Partition(lam)
    return phi(macdonald_P_p(lam, params.q, params.t), n, m, params)


def expansion_window(lam: Partition, n: int, m: int) -> tuple[Partition, Partition]:
    lc = conjugate(Partition(lam))
    upper = Partition(lc.part(j) for j in range(1, m + 1))
    lower = Partition(max(lc.part(j) - n, 0) for j in range(1, m + 1))
    return lower, upper


def super_P_via_expansion(lam, n: int, m: int, params: ParamSet, window: bool = True) -> BiSymPoly:
    """SP_lambda = sum_mu (-q^(-1/2) t^(1/2))^|mu| P_{lambda/mu'}(x; q, t) Q_mu(y; t, q).

    With ``window=False`` the sum runs over every mu contained in lambda'
    instead of the restricted window; the extra terms must all vanish.
    """
    lam = Partition(lam)
    if not in_Hnm(lam, n, m):
        raise ValueError(f"{lam} is not in H_({n},{m})")
    q, t = params.q, params.t
    lower, upper = expansion_window(lam, n, m)
    if not window:
        lower, upper = Partition(), conjugate(lam)
    sign = -params.b / params.a
    out = BiSymPoly.zero(n, m)
    for mu in subpartitions(upper, lower):
        if len(mu) > m:
            continue
        sk = skew_P(lam, conjugate(mu), q, t, n).to_m()
        if sk.is_zero():
            continue
        qy = macdonald_P(mu, t, q, m).scale(b_lambda(mu, t, q))
        px = BiSymPoly.from_function_x(sk, n, m)
        py = BiSymPoly.from_function_y(qy, n, m)
        out = out + (px * py).scale(sign ** sum(mu))
    return out


@dataclass
class MembershipResult:
    ok: bool
    seed: int
    samples: int
    witness: dict | None = None
    max_residual: float = 0.0

    def __bool__(self):
        return self.ok


def _random_coordinate(rng: random.Random, exact: bool):
    """A point in the annulus 1/2 <= |z| <= 2."""
    if exact:
        num = rng.randint(5, 20)
        return Fraction(num * rng.choice((1, -1)), 10)
    import cmath

    r = rng.uniform(0.5, 2.0)
    return cmath.rect(r, rng.uniform(-3.0, 3.0))


def check_membership(P: BiSymPoly, params: ParamSet, samples: int = 10, seed: int = 0,
                     tol: float = 1e-9) -> MembershipResult:
    """Test (T_{q,x_i} - T_{1/t,y_j}) P = 0 on y_j = q^(1/2) t^(1/2) x_i for all i, j."""
    n, m = P.n, P.m
    rng = random.Random(seed)
    exact = params.exact and all(isinstance(v, (int, Fraction)) for v in P.terms.values())
    q, t = params.q, params.t
    if not exact:
        q, t = float(q), float(t)
    ab = params.a * params.b if exact else float(params.a) * float(params.b)
    worst = 0.0
    for s in range(samples):
        for i in range(n):
            for j in range(m):
                x = [_random_coordinate(rng, exact) for _ in range(n)]
                y = [_random_coordinate(rng, exact) for _ in range(m)]
                y[j] = ab * x[i]
                xs = list(x)
                xs[i] = q * x[i]
                ys = list(y)
                ys[j] = y[j] / t
                lhs = P.evaluate(xs, y)
                rhs = P.evaluate(x, ys)
                diff = lhs - rhs
                witness = {"sample": s, "i": i, "j": j, "x": [str(v) for v in x],
                           "y": [str(v) for v in y], "difference": str(diff)}
                if exact:
                    if diff != 0:
                        return MembershipResult(False, seed, samples, witness, float(abs(diff)))
                else:
                    res = abs(diff) / (1 + abs(lhs) + abs(rhs))
                    worst = max(worst, res)
                    if res > tol:
                        return MembershipResult(False, seed, samples, witness, worst)
    return MembershipResult(True, seed, samples, None, worst)


def sv_translate(P: BiSymPoly, params: ParamSet, direction: str = "to_sv") -> BiSymPoly:
    """Rescale y by (qt)^(+1/2) (``to_sv``) or (qt)^(-1/2) (``from_sv``)."""
    s = params.a * params.b
    if direction == "to_sv":
        return P.scale_y(s)
    if direction == "from_sv":
        return P.scale_y(1 / s)
    raise ValueError("direction must be 'to_sv' or 'from_sv'")


def deformed_newton_sv(r: int, n: int, m: int, params: ParamSet) -> BiSymPoly:
    """The other convention's deformed power sum: sum x^r + (1-q^r)/(1-t^-r) sum y^r."""
    q, t = params.q, params.t
    return BiSymPoly.power_sum_x(n, m, r) + BiSymPoly.power_sum_y(n, m, r, (1 - q**r) / (1 - t ** (-r)))


def param_inversion_check(lam, n: int, m: int, params: ParamSet) -> bool:
    """SP_lambda at (1/q, 1/t) equals SP_lambda at (q, t), coefficientwise."""
    lam = Partition(lam)
    a = super_P(lam, n, m, params)
    b = super_P(lam, n, m, params.inverted())
    if params.exact:
        return a == b
    if set(a.terms) != set(b.terms):
        keys = set(a.terms) | set(b.terms)
    else:
        keys = a.terms.keys()
    scale = max(1.0, a.max_coefficient())
    return all(abs(complex(a.terms.get(k, 0)) - complex(b.terms.get(k, 0))) <= 1e-10 * scale for k in keys)


def labels(n: int, m: int, max_weight: int, min_weight: int = 0):
    """All lambda in H_{n,m} with min_weight <= |lambda| <= max_weight."""
    from .partitions import partitions_of

    return [lam for d in range(min_weight, max_weight + 1) for lam in partitions_of(d) if in_Hnm(lam, n, m)]
