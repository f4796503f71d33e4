"""Symmetric functions at fixed (q, t): monomial and power-sum bases, the
(q, t)-deformed Hall scalar product, Macdonald P/Q, skew P and the structure
coefficients f^lambda_{mu nu}.

Everything is computed at numerical parameter values (exact rationals or
floats); there is no symbolic field Q(q, t).
"""

from __future__ import annotations

import random
from collections import Counter, defaultdict
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .partitions import (
    EMPTY,
    Dominance,
    Partition,
    b_lambda,
    conjugate,
    contains,
    dominance_leq,
    dominates_strictly,
    format_partition,
    partitions_of,
    z_lambda,
)


class NonGenericParameters(ArithmeticError):
    """A Gram system or denominator degenerated at the given (q, t)."""


def _conj(c):
    return c.conjugate() if isinstance(c, complex) else c


def _clean(terms: dict) -> dict:
    return {k: v for k, v in terms.items() if v != 0}


def multiset_permutations(seq: Sequence[int]) -> Iterator[tuple[int, ...]]:
    counts = Counter(seq)
    keys = sorted(counts, reverse=True)
    n = len(seq)

    def rec(acc: list[int]):
        if len(acc) == n:
            yield tuple(acc)
            return
        for k in keys:
            if counts[k]:
                counts[k] -= 1
                acc.append(k)
                yield from rec(acc)
                acc.pop()
                counts[k] += 1

    yield from rec([])


@lru_cache(maxsize=None)
def monomial_expand(lam: Partition, n: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of m_lambda(x_1..x_n), each with multiplicity one.

    Empty when lambda has more than n parts (m_lambda vanishes in n variables).
    """
    lam = Partition(lam)
    if len(lam) > n:
        return ()
    return tuple(multiset_permutations(lam.padded(n)))


def evaluate_monomial_symmetric(lam: Partition, x: Sequence) -> object:
    total = 0
    for e in monomial_expand(Partition(lam), len(x)):
        term = 1
        for xi, k in zip(x, e):
            if k:
                term = term * xi**k
        total = total + term
    return total


# ---------------------------------------------------------------------------
# power sum <-> monomial transitions


def _count_fillings(mu: tuple[int, ...], target: tuple[int, ...]) -> int:
    """Number of maps parts(mu) -> slots(target) with slot sums equal to target."""

    @lru_cache(maxsize=None)
    def rec(i: int, rem: tuple[int, ...]) -> int:
        if i == len(mu):
            return int(not any(rem))
        total = 0
        for j, r in enumerate(rem):
            if r >= mu[i]:
                total += rec(i + 1, rem[:j] + (r - mu[i],) + rem[j + 1:])
        return total

    return rec(0, target)


@lru_cache(maxsize=None)
def p_in_m(mu: Partition) -> dict[Partition, int]:
    """p_mu = sum_lambda L[mu, lambda] m_lambda (exact integers)."""
    mu = Partition(mu)
    d = sum(mu)
    out = {}
    for lam in partitions_of(d):
        if len(lam) > len(mu):
            continue
        c = _count_fillings(tuple(mu), tuple(lam))
        if c:
            out[lam] = c
    return out


@lru_cache(maxsize=None)
def m_in_p(lam: Partition) -> dict[Partition, Fraction]:
    """m_lambda = sum_mu Linv[lambda, mu] p_mu.

    p_mu only involves m_kappa with kappa dominating mu, so the transition is
    triangular and is inverted from the top of the dominance order down.
    """
    lam = Partition(lam)
    d = sum(lam)
    # p_lam = L[lam,lam] m_lam + sum_{kappa > lam} L[lam,kappa] m_kappa
    row = p_in_m(lam)
    diag = Fraction(row[lam])
    out: dict[Partition, Fraction] = {lam: 1 / diag}
    for kappa, c in row.items():
        if kappa == lam:
            continue
        for nu, v in m_in_p(kappa).items():
            out[nu] = out.get(nu, 0) - Fraction(c) * v / diag
    return _clean(out)


def qt_norm_p(mu: Partition, q, t):
    """<p_mu, p_mu>_{q,t} = z_mu prod (1 - q^mu_i)/(1 - t^mu_i)."""
    val = z_lambda(mu) * q**0
    for r in mu:
        den = 1 - t**r
        if den == 0:
            raise NonGenericParameters(f"1 - t^{r} vanishes at t={t}")
        val = val * (1 - q**r) / den
    return val


# ---------------------------------------------------------------------------
# SymFunc


class SymFunc:
    """Sparse symmetric function in one of the bases m, p or P.

    ``terms`` maps partitions to coefficients.  ``nvars`` is ``None`` for the
    generic (enough variables) case, or a variable count n after restriction.
    Basis ``P`` additionally records the (q, t) the Macdonald basis is taken at.
    """

    __slots__ = ("basis", "terms", "nvars", "qt")

    def __init__(self, basis: str, terms: dict, nvars: int | None = None, qt=None):
        if basis not in ("m", "p", "P"):
            raise ValueError(f"unknown basis {basis!r}")
        if basis == "P" and qt is None:
            raise ValueError("basis P needs its (q, t)")
        terms = _clean({Partition(k): v for k, v in terms.items()})
        if nvars is not None and basis in ("m", "P"):
            terms = {k: v for k, v in terms.items() if len(k) <= nvars}
        self.basis = basis
        self.terms = terms
        self.nvars = nvars
        self.qt = qt

    # -- constructors
    @classmethod
    def m(cls, lam, coeff=1, nvars=None):
        return cls("m", {Partition(lam): coeff}, nvars)

    @classmethod
    def p(cls, mu, coeff=1, nvars=None):
        return cls("p", {Partition(mu): coeff}, nvars)

    @classmethod
    def one(cls, basis="p"):
        return cls(basis if basis != "P" else "p", {EMPTY: 1})

    def __repr__(self):
        inner = ", ".join(f"{format_partition(k) or '()'}: {v}" for k, v in sorted(self.terms.items(), reverse=True))
        return f"SymFunc({self.basis}, {{{inner}}}, nvars={self.nvars})"

    def __eq__(self, other):
        if not isinstance(other, SymFunc):
            return NotImplemented
        if self.basis != other.basis:
            if "P" in (self.basis, other.basis):
                return self.to_m() == other.to_m()
            return self.to_p().terms == other.to_p().terms
        return self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(k) for k in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        return len({sum(k) for k in self.terms}) <= 1

    def coefficient(self, lam) -> object:
        return self.terms.get(Partition(lam), 0)

    def map_coefficients(self, fn) -> "SymFunc":
        return SymFunc(self.basis, {k: fn(v) for k, v in self.terms.items()}, self.nvars, self.qt)

    def scale(self, c) -> "SymFunc":
        return self.map_coefficients(lambda v: c * v)

    def _binary(self, other: "SymFunc", sign) -> "SymFunc":
        a, b = self, other
        if a.basis != b.basis:
            a, b = a.to_p(), b.to_p()
        out = dict(a.terms)
        for k, v in b.terms.items():
            out[k] = out.get(k, 0) + sign * v
        nv = a.nvars if a.nvars == b.nvars else None
        return SymFunc(a.basis, out, nv, a.qt)

    def __add__(self, other):
        return self._binary(other, 1)

    def __sub__(self, other):
        return self._binary(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def __mul__(self, other):
        if not isinstance(other, SymFunc):
            return self.scale(other)
        a, b = self.to_p(), other.to_p()
        out: dict = defaultdict(int)
        for k1, v1 in a.terms.items():
            for k2, v2 in b.terms.items():
                out[Partition(sorted(k1 + k2, reverse=True))] += v1 * v2
        return SymFunc("p", dict(out))

    __rmul__ = scale

    # -- basis changes
    def to_p(self) -> "SymFunc":
        if self.basis == "p":
            return self
        if self.basis == "P":
            return self.to_m().to_p()
        if self.nvars is not None and any(self.nvars < sum(k) for k in self.terms):
            raise ValueError("m -> p transition is not invertible with fewer variables than the degree")
        out: dict = defaultdict(int)
        for lam, c in self.terms.items():
            for mu, v in m_in_p(lam).items():
                out[mu] += c * v
        return SymFunc("p", dict(out))

    def to_m(self) -> "SymFunc":
        if self.basis == "m":
            return self
        out: dict = defaultdict(int)
        if self.basis == "p":
            for mu, c in self.terms.items():
                for lam, v in p_in_m(mu).items():
                    out[lam] += c * v
        else:
            q, t = self.qt
            for lam, c in self.terms.items():
                for kappa, v in macdonald_P(lam, q, t).terms.items():
                    out[kappa] += c * v
        return SymFunc("m", dict(out), self.nvars)

    def to_P(self, q, t) -> "SymFunc":
        return to_P(self, q, t)

    def restrict(self, n: int) -> "SymFunc":
        """Specialise to n variables (x_i = 0 for i > n), in the m basis."""
        f = self.to_m()
        return SymFunc("m", f.terms, n)

    def evaluate(self, x: Sequence):
        f = self.to_m()
        total = 0
        for lam, c in f.terms.items():
            total = total + c * evaluate_monomial_symmetric(lam, x)
        return total

    def homogeneous_components(self) -> dict[int, "SymFunc"]:
        comps: dict[int, dict] = defaultdict(dict)
        for k, v in self.terms.items():
            comps[sum(k)][k] = v
        return {d: SymFunc(self.basis, t, self.nvars, self.qt) for d, t in comps.items()}

    def to_json(self) -> dict:
        rows = []
        for lam, c in sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True):
            row = {"partition": format_partition(lam)}
            if isinstance(c, Fraction):
                row["numerator"] = c.numerator
                row["denominator"] = c.denominator
            elif isinstance(c, int):
                row["numerator"] = c
                row["denominator"] = 1
            elif isinstance(c, complex):
                row["float"] = [c.real, c.imag]
            else:
                row["float"] = float(c)
            rows.append(row)
        out = {"basis": self.basis, "terms": rows}
        if self.nvars is not None:
            out["nvars"] = self.nvars
        return out

    @classmethod
    def from_json(cls, data: dict, qt=None) -> "SymFunc":
        from .partitions import parse_partition

        terms = {}
        for row in data["terms"]:
            lam = parse_partition(row["partition"])
            if "numerator" in row:
                terms[lam] = Fraction(row["numerator"], row["denominator"])
            elif isinstance(row["float"], list):
                terms[lam] = complex(*row["float"])
            else:
                terms[lam] = row["float"]
        return cls(data["basis"], terms, data.get("nvars"), qt)


def p_to_m(f: SymFunc) -> SymFunc:
    return f.to_m()


def m_to_p(f: SymFunc) -> SymFunc:
    return f.to_p()


def inner_product_qt(f: SymFunc, g: SymFunc, q, t):
    """<f, g>_{q,t}, linear in f and antilinear in g."""
    fp, gp = f.to_p().terms, g.to_p().terms
    total = 0 * q
    for mu, c in fp.items():
        d = gp.get(mu)
        if d is not None:
            total = total + c * _conj(d) * qt_norm_p(mu, q, t)
    return total


def omega(f: SymFunc, q, t) -> SymFunc:
    """p_r -> (-1)^(r-1) (1 - q^r)/(1 - t^r) p_r, extended multiplicatively."""
    out = {}
    for mu, c in f.to_p().terms.items():
        factor = q**0
        for r in mu:
            den = 1 - t**r
            if den == 0:
                raise NonGenericParameters(f"1 - t^{r} vanishes")
            factor = factor * (-1) ** (r - 1) * (1 - q**r) / den
        out[mu] = c * factor
    return SymFunc("p", out)


# ---------------------------------------------------------------------------
# Macdonald polynomials by Gram-Schmidt


def lex_extension(d: int) -> tuple[Partition, ...]:
    """Ascending lexicographic order, a linear extension of dominance."""
    return tuple(reversed(partitions_of(d)))


def n_statistic_extension(d: int) -> tuple[Partition, ...]:
    """Another linear extension: by decreasing n(lambda), ties in reverse lex."""
    return tuple(sorted(partitions_of(d), key=lambda lam: (-lam.n_statistic(), tuple(-p for p in lam))))


def random_extension(d: int, seed: int) -> tuple[Partition, ...]:
    """A random linear extension of dominance (randomised topological sort)."""
    rng = random.Random(seed)
    remaining = list(partitions_of(d))
    out = []
    while remaining:
        minimal = [lam for lam in remaining
                   if not any(dominates_strictly(mu, lam) for mu in remaining if mu != lam)]
        pick = rng.choice(minimal)
        out.append(pick)
        remaining.remove(pick)
    return tuple(out)


def is_linear_extension(order: Sequence[Partition]) -> bool:
    pos = {lam: i for i, lam in enumerate(order)}
    return all(not dominates_strictly(b, a) for a in order for b in order if pos[a] < pos[b])


def _dot_p(f: dict, g: dict, norms: dict):
    total = 0
    for mu, c in f.items():
        d = g.get(mu)
        if d is not None:
            total = total + c * _conj(d) * norms[mu]
    return total


def gram_schmidt_macdonald(d: int, q, t, order: Sequence[Partition] | None = None) -> dict[Partition, tuple[dict, dict]]:
    """Macdonald P_lambda for all lambda |- d, orthogonalising m_lambda
    against everything earlier in ``order`` (a linear extension of dominance).

    Returns lambda -> (m-basis coefficients, p-basis coefficients).
    """
    if order is None:
        order = lex_extension(d)
    order = tuple(Partition(lam) for lam in order)
    if sorted(order) != sorted(partitions_of(d)):
        raise ValueError("order must list every partition of d exactly once")
    norms = {mu: qt_norm_p(mu, q, t) for mu in partitions_of(d)}
    done: list[tuple[Partition, dict, dict, object]] = []
    out = {}
    for lam in order:
        base_p = dict(m_in_p(lam))
        vec_p = dict(base_p)
        vec_m = {lam: q**0}
        for kappa, km, kp, knorm in done:
            c = _dot_p(base_p, kp, norms) / knorm
            if c == 0:
                continue
            for mu, v in kp.items():
                vec_p[mu] = vec_p.get(mu, 0) - c * v
            for mu, v in km.items():
                vec_m[mu] = vec_m.get(mu, 0) - c * v
        vec_p, vec_m = _clean(vec_p), _clean(vec_m)
        nrm = _dot_p(vec_p, vec_p, norms)
        if nrm == 0:
            raise NonGenericParameters(f"Gram system singular at {lam} for q={q}, t={t}")
        done.append((lam, vec_m, vec_p, nrm))
        out[lam] = (vec_m, vec_p)
    return out


@lru_cache(maxsize=256)
def _macdonald_degree(d: int, q, t):
    return gram_schmidt_macdonald(d, q, t)


def macdonald_P(lam, q, t, nvars: int | None = None) -> SymFunc:
    """Monic Macdonald polynomial P_lambda(x; q, t) in the monomial basis."""
    lam = Partition(lam)
    m_terms, _ = _macdonald_degree(sum(lam), q, t)[lam]
    return SymFunc("m", m_terms, nvars)


def macdonald_P_p(lam, q, t) -> SymFunc:
    """P_lambda in the power-sum basis, i.e. the coefficients c_{lambda mu}."""
    lam = Partition(lam)
    _, p_terms = _macdonald_degree(sum(lam), q, t)[lam]
    return SymFunc("p", p_terms)


def macdonald_Q(lam, q, t, nvars: int | None = None) -> SymFunc:
    return macdonald_P(lam, q, t, nvars).scale(b_lambda(Partition(lam), q, t))


def macdonald_P_order_ideal(lam, q, t) -> SymFunc:
    """P_lambda by solving <P_lambda, m_mu> = 0 for mu < lambda only.

    Independent of any linear extension; used to cross-check Gram-Schmidt.
    """
    lam = Partition(lam)
    d = sum(lam)
    norms = {mu: qt_norm_p(mu, q, t) for mu in partitions_of(d)}
    lower = [mu for mu in partitions_of(d) if dominates_strictly(mu, lam)]
    # sum_kappa u_kappa <m_kappa, m_mu> = -<m_lam, m_mu>   for mu in lower
    A = [[_dot_p(m_in_p(kappa), m_in_p(mu), norms) for kappa in lower] for mu in lower]
    rhs = [-_dot_p(m_in_p(lam), m_in_p(mu), norms) for mu in lower]
    u = solve_linear(A, rhs)
    terms = {lam: q**0}
    terms.update(dict(zip(lower, u)))
    return SymFunc("m", terms)


def solve_linear(A: list[list], b: list) -> list:
    """Gaussian elimination with nonzero pivoting; exact for Fractions."""
    n = len(b)
    M = [list(row) + [rhs] for row, rhs in zip(A, b)]
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(M[r][col]))
        if M[piv][col] == 0:
            raise NonGenericParameters("singular linear system")
        M[col], M[piv] = M[piv], M[col]
        pv = M[col][col]
        for r in range(col + 1, n):
            f = M[r][col] / pv
            if f != 0:
                for c in range(col, n + 1):
                    M[r][c] = M[r][c] - f * M[col][c]
    x = [0] * n
    for r in range(n - 1, -1, -1):
        s = M[r][n]
        for c in range(r + 1, n):
            s = s - M[r][c] * x[c]
        x[r] = s / M[r][r]
    return x


def to_P(f: SymFunc, q, t) -> SymFunc:
    """Expand f in the Macdonald basis by triangular elimination from the top
    of the dominance order (P_lambda = m_lambda + lower terms)."""
    rem = dict(f.to_m().terms)
    out = {}
    while rem:
        # a maximal element in dominance among remaining indices
        lam = max(rem, key=lambda k: (sum(k), tuple(k)))
        c = rem[lam]
        out[lam] = c
        for kappa, v in macdonald_P(lam, q, t).terms.items():
            rem[kappa] = rem.get(kappa, 0) - c * v
        rem = _clean(rem)
        if lam in rem:
            raise ArithmeticError("triangular elimination failed to clear the leading term")
    return SymFunc("P", out, qt=(q, t))


def pieri_f(lam, mu, nu, q, t):
    """f^lambda_{mu nu}(q, t): coefficient of P_lambda in P_mu P_nu."""
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    if sum(mu) + sum(nu) != sum(lam):
        return 0 * q
    prod_ = macdonald_P_p(mu, q, t) * macdonald_P_p(nu, q, t)
    return to_P(prod_, q, t).coefficient(lam)


def pieri_f_inner(lam, mu, nu, q, t):
    """f^lambda_{mu nu} = <Q_lambda, P_mu P_nu>_{q,t}, straight from the definition."""
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    if sum(mu) + sum(nu) != sum(lam):
        return 0 * q
    prod_ = macdonald_P_p(mu, q, t) * macdonald_P_p(nu, q, t)
    return b_lambda(lam, q, t) * inner_product_qt(macdonald_P_p(lam, q, t), prod_, q, t)


def skew_P(lam, mu, q, t, nvars: int | None = None) -> SymFunc:
    """P_{lambda/mu}(x; q, t) = sum_nu f^{lambda'}_{mu' nu'}(t, q) P_nu(x; q, t),
    returned in the P basis at (q, t)."""
    lam, mu = Partition(lam), Partition(mu)
    if not contains(mu, lam):
        return SymFunc("P", {}, nvars, qt=(q, t))
    d = sum(lam) - sum(mu)
    lc, mc = conjugate(lam), conjugate(mu)
    terms = {}
    for nu in partitions_of(d):
        if nvars is not None and len(nu) > nvars:
            continue
        if not contains(nu, lam):
            continue
        c = pieri_f(lc, mc, conjugate(nu), t, q)
        if c != 0:
            terms[nu] = c
    return SymFunc("P", terms, nvars, qt=(q, t))


def merge_expand_check(lam, q, t, n1: int, n2: int, points: int = 20, seed: int = 0,
                       dual: bool = False) -> bool:
    """Check P_lambda(x, y) = sum_{mu in lambda} P_{lambda/mu}(x) P_mu(y) pointwise.

    With ``dual=True`` the y-factor is Q_mu(y) instead; that variant fails in
    general and is kept as a negative control.
    """
    lam = Partition(lam)
    if n1 + n2 < len(lam):
        raise ValueError("need n1 + n2 >= length(lambda)")
    from .partitions import subpartitions

    full = macdonald_P(lam, q, t)
    pieces = []
    for mu in subpartitions(lam):
        if len(mu) > n2:
            continue
        sk = skew_P(lam, mu, q, t, n1).to_m()
        fy = macdonald_Q(mu, q, t) if dual else macdonald_P(mu, q, t)
        pieces.append((sk, fy))
    rng = random.Random(seed)
    exact = isinstance(q, Fraction)
    for _ in range(points):
        if exact:
            pt = [Fraction(rng.randint(-9, 9), rng.randint(1, 7)) for _ in range(n1 + n2)]
        else:
            pt = [complex(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(n1 + n2)]
        x, y = pt[:n1], pt[n1:]
        lhs = full.evaluate(pt)
        rhs = sum((sk.evaluate(x) * fy.evaluate(y) for sk, fy in pieces), 0)
        if exact:
            if lhs != rhs:
                return False
        elif abs(lhs - rhs) > 1e-9 * (1 + abs(lhs)):
            return False
    return True


def triangularity_violations(lam, q, t) -> list[Partition]:
    """Indices of P_lambda's m-expansion that are not strictly dominated by lambda."""
    lam = Partition(lam)
    return [mu for mu in macdonald_P(lam, q, t).terms
            if mu != lam and dominance_leq(mu, lam) is not Dominance.LEQ]


def box_multiply(f: SymFunc, n: int, k: int) -> SymFunc:
    """(x_1 ... x_n)^k f(x_1..x_n) in the m basis of n variables."""
    g = f.restrict(n)
    out = {}
    for lam, c in g.terms.items():
        out[Partition(p + k for p in lam.padded(n))] = c
    return SymFunc("m", out, n)
