"""Sparse polynomials in two blocks of variables (x_1..x_n; y_1..y_m),
symmetric in each block separately."""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from itertools import permutations
from typing import Sequence

import numpy as np

from .partitions import Partition
from .symfunc import multiset_permutations


class SymmetryError(ValueError):
    """Terms are not invariant under S_n x S_m."""


def _canonical(exps: tuple[int, ...], n: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    return tuple(sorted(exps[:n], reverse=True)), tuple(sorted(exps[n:], reverse=True))


def _orbit_size(xs: tuple[int, ...], ys: tuple[int, ...]) -> int:
    return len(set(permutations(xs))) * len(set(permutations(ys)))


class BiSymPoly:
    """Polynomial P(x, y) stored as a dict exponent-vector -> coefficient.

    Exponent vectors have length n + m, the x block first.  Construction
    checks S_n x S_m invariance and raises :class:`SymmetryError` otherwise;
    membership in the deformed algebra (the q/t shift condition) is a separate
    check, see :func:`supermacdonald.supermac.check_membership`.
    """

    __slots__ = ("n", "m", "terms", "_arrays")

    def __init__(self, n: int, m: int, terms: dict | None = None, check: bool = True):
        self.n = n
        self.m = m
        self.terms = {tuple(k): v for k, v in (terms or {}).items() if v != 0}
        for k in self.terms:
            if len(k) != n + m:
                raise ValueError(f"exponent vector {k} has wrong length for n={n}, m={m}")
        self._arrays = None
        if check:
            self._check_symmetric()

    def _check_symmetric(self):
        groups: dict = defaultdict(list)
        for k, v in self.terms.items():
            groups[_canonical(k, self.n)].append(v)
        for (xs, ys), vals in groups.items():
            if len(vals) != _orbit_size(xs, ys) or any(v != vals[0] for v in vals):
                raise SymmetryError(f"not symmetric in each block: orbit of {xs}|{ys}")

    # -- constructors
    @classmethod
    def zero(cls, n: int, m: int) -> "BiSymPoly":
        return cls(n, m, {}, check=False)

    @classmethod
    def constant(cls, n: int, m: int, c=1) -> "BiSymPoly":
        return cls(n, m, {(0,) * (n + m): c}, check=False)

    @classmethod
    def from_canonical(cls, n: int, m: int, terms: dict) -> "BiSymPoly":
        """Build from coefficients of m_lambda(x) m_mu(y), keyed by (lambda, mu)."""
        out = {}
        for (lam, mu), c in terms.items():
            lam, mu = Partition(lam), Partition(mu)
            if len(lam) > n or len(mu) > m:
                continue
            for ex in multiset_permutations(lam.padded(n)):
                for ey in multiset_permutations(mu.padded(m)):
                    out[ex + ey] = c
        return cls(n, m, out, check=False)

    @classmethod
    def power_sum_x(cls, n: int, m: int, r: int, c=1) -> "BiSymPoly":
        out = {}
        for i in range(n):
            e = [0] * (n + m)
            e[i] = r
            out[tuple(e)] = c
        return cls(n, m, out, check=False)

    @classmethod
    def power_sum_y(cls, n: int, m: int, r: int, c=1) -> "BiSymPoly":
        out = {}
        for j in range(m):
            e = [0] * (n + m)
            e[n + j] = r
            out[tuple(e)] = c
        return cls(n, m, out, check=False)

    @classmethod
    def from_function_x(cls, f, n: int, m: int) -> "BiSymPoly":
        """Embed a SymFunc in the x variables only."""
        g = f.restrict(n)
        return cls.from_canonical(n, m, {(lam, ()): c for lam, c in g.terms.items()})

    @classmethod
    def from_function_y(cls, f, n: int, m: int) -> "BiSymPoly":
        g = f.restrict(m)
        return cls.from_canonical(n, m, {((), lam): c for lam, c in g.terms.items()})

    # -- basic protocol
    def __repr__(self):
        return f"BiSymPoly(n={self.n}, m={self.m}, terms={len(self.terms)})"

    def __eq__(self, other):
        if not isinstance(other, BiSymPoly):
            return NotImplemented
        return (self.n, self.m) == (other.n, other.m) and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, self.m, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(k) for k in self.terms), default=0)

    def canonical(self) -> dict:
        """Coefficients in the m_lambda(x) m_mu(y) basis."""
        out = {}
        for k, v in self.terms.items():
            xs, ys = _canonical(k, self.n)
            out[(Partition(xs), Partition(ys))] = v
        return out

    def _same_shape(self, other: "BiSymPoly"):
        if (self.n, self.m) != (other.n, other.m):
            raise ValueError(f"shape mismatch ({self.n},{self.m}) vs ({other.n},{other.m})")

    def __add__(self, other):
        if not isinstance(other, BiSymPoly):
            return self + BiSymPoly.constant(self.n, self.m, other)
        self._same_shape(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return BiSymPoly(self.n, self.m, out, check=False)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other if isinstance(other, BiSymPoly) else -other)

    def scale(self, c) -> "BiSymPoly":
        return BiSymPoly(self.n, self.m, {k: c * v for k, v in self.terms.items()}, check=False)

    def __mul__(self, other):
        if not isinstance(other, BiSymPoly):
            return self.scale(other)
        self._same_shape(other)
        out: dict = defaultdict(int)
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                out[tuple(a + b for a, b in zip(k1, k2))] += v1 * v2
        return BiSymPoly(self.n, self.m, dict(out), check=False)

    def __rmul__(self, c):
        return self.scale(c)

    def __pow__(self, k: int):
        out = BiSymPoly.constant(self.n, self.m, 1)
        for _ in range(k):
            out = out * self
        return out

    def map_coefficients(self, fn) -> "BiSymPoly":
        return BiSymPoly(self.n, self.m, {k: fn(v) for k, v in self.terms.items()}, check=False)

    def scale_y(self, s) -> "BiSymPoly":
        """P(x, s*y)."""
        n = self.n
        return BiSymPoly(self.n, self.m,
                         {k: v * s ** sum(k[n:]) for k, v in self.terms.items()}, check=False)

    def to_complex(self) -> "BiSymPoly":
        return self.map_coefficients(complex)

    def max_coefficient(self) -> float:
        return max((abs(complex(v)) for v in self.terms.values()), default=0.0)

    # -- evaluation
    def __call__(self, x: Sequence, y: Sequence = ()):
        return self.evaluate(x, y)

    def evaluate(self, x: Sequence, y: Sequence = ()):
        """Evaluate at one point; exact when coordinates and coefficients are."""
        pt = list(x) + list(y)
        if len(pt) != self.n + self.m:
            raise ValueError("point has wrong number of coordinates")
        total = 0
        for k, v in self.terms.items():
            term = v
            for z, e in zip(pt, k):
                if e:
                    term = term * z**e
            total = total + term
        return total

    def _numpy(self):
        if self._arrays is None:
            keys = list(self.terms)
            exps = np.array(keys, dtype=np.int64).reshape(len(keys), self.n + self.m)
            coeffs = np.array([complex(self.terms[k]) for k in keys], dtype=np.complex128)
            self._arrays = (exps, coeffs)
        return self._arrays

    def evaluate_grid(self, X: np.ndarray, Y: np.ndarray | None = None) -> np.ndarray:
        """Vectorised evaluation; X has shape (..., n) and Y shape (..., m)."""
        X = np.asarray(X, dtype=np.complex128)
        if Y is None or self.m == 0:
            Z = X
            if self.m:
                raise ValueError("missing y coordinates")
        else:
            Z = np.concatenate([X, np.asarray(Y, dtype=np.complex128)], axis=-1)
        shape = Z.shape[:-1]
        exps, coeffs = self._numpy()
        out = np.zeros(shape, dtype=np.complex128)
        if not len(coeffs):
            return out
        maxdeg = int(exps.max())
        powers = []
        for v in range(self.n + self.m):
            zv = Z[..., v]
            table = [np.ones(shape, dtype=np.complex128)]
            for _ in range(maxdeg):
                table.append(table[-1] * zv)
            powers.append(table)
        for e, c in zip(exps, coeffs):
            term = np.full(shape, c, dtype=np.complex128)
            for v, k in enumerate(e):
                if k:
                    term = term * powers[v][k]
            out += term
        return out
