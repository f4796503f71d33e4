"""Partitions, dominance order and the combinatorial maps used to index
Macdonald and super-Macdonald polynomials and their norms."""

from __future__ import annotations

import enum
from collections import Counter
from functools import lru_cache
from math import factorial, prod
from typing import Iterable, Iterator


class Partition(tuple):
    """Weakly decreasing tuple of positive integers.

    Trailing zeros are dropped on construction, so ``Partition((2, 1, 0))``
    and ``Partition((2, 1))`` are the same object as far as ``==`` and
    ``hash`` are concerned.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts not weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    def __repr__(self) -> str:
        return f"Partition({tuple(self)!r})"

    def __str__(self) -> str:
        return format_partition(self)

    def part(self, i: int) -> int:
        """1-based part lookup, zero beyond the length."""
        return self[i - 1] if 1 <= i <= len(self) else 0

    def length(self) -> int:
        return len(self)

    def weight(self) -> int:
        return sum(self)

    def conjugate(self) -> "Partition":
        return conjugate(self)

    def multiplicities(self) -> Counter:
        return Counter(self)

    def cells(self) -> Iterator[tuple[int, int]]:
        """Cells (j, k) of the Young diagram, 1-based row j and column k."""
        for j, row in enumerate(self, start=1):
            for k in range(1, row + 1):
                yield j, k

    def n_statistic(self) -> int:
        """n(lambda) = sum (i-1) lambda_i."""
        return sum(i * p for i, p in enumerate(self))

    def padded(self, n: int) -> tuple[int, ...]:
        if len(self) > n:
            raise ValueError(f"{self!r} has more than {n} parts")
        return tuple(self) + (0,) * (n - len(self))


EMPTY = Partition()


def parse_partition(text: str) -> Partition:
    """Parse the textual form ``"3,2,1"``; the empty string is the empty partition."""
    text = text.strip()
    if text in ("", "()", "0"):
        return EMPTY
    return Partition(sorted((int(s) for s in text.replace(" ", "").split(",") if s), reverse=True))


def format_partition(lam: Iterable[int]) -> str:
    return ",".join(str(p) for p in lam)


@lru_cache(maxsize=None)
def conjugate(lam: Partition) -> Partition:
    if not lam:
        return EMPTY
    return Partition(sum(1 for p in lam if p >= k) for k in range(1, lam[0] + 1))


class Dominance(enum.Enum):
    LEQ = "<="
    GEQ = ">="  # strictly greater, reported as ">=" with lam != mu
    INCOMPARABLE = "incomparable"


def dominance_leq(lam: Partition, mu: Partition) -> Dominance:
    """Compare two partitions of equal weight in the dominance order.

    Returns ``LEQ`` when lam <= mu (including equality), ``GEQ`` when
    lam > mu strictly, and ``INCOMPARABLE`` otherwise.
    """
    if sum(lam) != sum(mu):
        raise ValueError(f"dominance order needs equal weights, got |{lam}|={sum(lam)} and |{mu}|={sum(mu)}")
    le = ge = True
    s_lam = s_mu = 0
    for j in range(max(len(lam), len(mu))):
        s_lam += lam[j] if j < len(lam) else 0
        s_mu += mu[j] if j < len(mu) else 0
        if s_lam > s_mu:
            le = False
        if s_lam < s_mu:
            ge = False
    if le:
        return Dominance.LEQ
    if ge:
        return Dominance.GEQ
    return Dominance.INCOMPARABLE


def dominates_strictly(mu: Partition, lam: Partition) -> bool:
    """True iff mu < lam strictly in dominance order."""
    return mu != lam and dominance_leq(mu, lam) is Dominance.LEQ


def union(lam: Partition, mu: Partition) -> Partition:
    return Partition(sorted(tuple(lam) + tuple(mu), reverse=True))


def psum(lam: Partition, mu: Partition) -> Partition:
    """Elementwise sum lam_i + mu_i."""
    k = max(len(lam), len(mu))
    return Partition(lam.part(i) + mu.part(i) for i in range(1, k + 1))


def contains(mu: Partition, lam: Partition) -> bool:
    """True iff mu is contained in lam, i.e. mu_i <= lam_i for all i."""
    return len(mu) <= len(lam) and all(m <= lam[i] for i, m in enumerate(mu))


def rectangle(rows: int, cols: int) -> Partition:
    """The partition (cols^rows)."""
    if rows <= 0 or cols <= 0:
        return EMPTY
    return Partition((cols,) * rows)


@lru_cache(maxsize=None)
def z_lambda(lam: Partition) -> int:
    return prod(i**k * factorial(k) for i, k in Counter(lam).items())


def b_lambda(lam: Partition, q, t):
    """The dual-normalisation factor b_lambda(q, t) as a direct cell product.

    Raises ZeroDivisionError on a vanishing denominator (non-generic q, t).
    """
    lam = Partition(lam)
    lamc = conjugate(lam)
    one = q ** 0
    num = one
    den = one
    for j, k in lam.cells():
        arm = lam[j - 1] - k
        leg = lamc[k - 1] - j
        num *= 1 - q**arm * t ** (leg + 1)
        den *= 1 - q ** (arm + 1) * t**leg
    if den == 0:
        raise ZeroDivisionError(f"b_lambda denominator vanishes for {lam} at q={q}, t={t}")
    return num / den


def in_Hnm(lam: Partition, n: int, m: int) -> bool:
    """Fat-hook membership: lambda_{n+1} <= m."""
    return Partition(lam).part(n + 1) <= m


def has_rectangle(lam: Partition, n: int, m: int) -> bool:
    """True iff (m^n) is contained in lam, the non-zero-norm condition."""
    return contains(rectangle(n, m), Partition(lam))


def east_south(lam: Partition, n: int, m: int) -> tuple[Partition, Partition]:
    """Split lam = ((m^n) + e, s') into its east part e and south part s."""
    lam = Partition(lam)
    if not in_Hnm(lam, n, m):
        raise ValueError(f"{lam} is not in H_({n},{m})")
    if not has_rectangle(lam, n, m):
        raise ValueError(f"({m}^{n}) is not contained in {lam}")
    east = Partition(lam.part(i) - m for i in range(1, n + 1))
    south = conjugate(Partition(lam[n:]))
    lamc = conjugate(lam)
    south_alt = Partition(lamc.part(j) - n for j in range(1, m + 1))
    east_alt = conjugate(Partition(lamc[m:]))
    assert south == south_alt and east == east_alt, (lam, n, m)
    return east, south


def from_east_south(east: Partition, south: Partition, n: int, m: int) -> Partition:
    """Inverse of east_south: ((m^n) + east, south')."""
    if len(east) > n or len(south) > m:
        raise ValueError("east/south lengths exceed (n, m)")
    top = tuple(east.part(i) + m for i in range(1, n + 1))
    return Partition(top + tuple(conjugate(south)))


@lru_cache(maxsize=None)
def partitions_of(d: int, max_length: int | None = None, max_part: int | None = None) -> tuple[Partition, ...]:
    """All partitions of d in reverse lexicographic order (largest first)."""
    if max_part is None:
        max_part = d
    if max_length is None:
        max_length = d
    out: list[Partition] = []

    def rec(remaining: int, cap: int, acc: tuple[int, ...]):
        if remaining == 0:
            out.append(Partition(acc))
            return
        if len(acc) == max_length:
            return
        for p in range(min(remaining, cap), 0, -1):
            rec(remaining - p, p, acc + (p,))

    rec(d, max_part, ())
    return tuple(out)


def partitions_up_to(d: int, max_length: int | None = None) -> Iterator[Partition]:
    for k in range(d + 1):
        yield from partitions_of(k, max_length)


def subpartitions(lam: Partition, lower: Partition = EMPTY) -> Iterator[Partition]:
    """All mu with lower <= mu <= lam (containment), lam given as an upper box."""
    lam = Partition(lam)
    k = len(lam)

    def rec(i: int, cap: int, acc: tuple[int, ...]):
        if i == k:
            yield Partition(acc)
            return
        lo = lower.part(i + 1)
        for p in range(min(cap, lam[i]), lo - 1, -1):
            yield from rec(i + 1, p, acc + (p,))

    yield from rec(0, lam[0] if lam else 0, ())
