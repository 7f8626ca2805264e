"""Exhaustive enumeration of dimension types and bounded linear Diophantine solving.

Everything here is exact integer arithmetic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from importlib import resources
from typing import Iterable, Optional, Sequence

from .errors import BudgetExceeded, UnknownPredicate
from .structure import TypeVector

DEFAULT_BUDGET = 10**7


@dataclass(frozen=True)
class DiophantineProblem:
    target: int
    coefficients: tuple

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(int(c) for c in self.coefficients))
        if not self.coefficients or any(c <= 0 for c in self.coefficients):
            raise ValueError("coefficients must be a nonempty list of positive integers")
        if not 0 <= self.target <= 10**9:
            raise ValueError("target must lie in [0, 1e9]")


def solve_diophantine(p: DiophantineProblem, budget: int = DEFAULT_BUDGET) -> list:
    """All nonnegative ``a`` with ``sum(a_i * c_i) == target``, sorted lexicographically.

    Depth-first over the variables in order; a branch is cut when the
    remaining target is not divisible by the gcd of the remaining
    coefficients.  ``budget`` bounds the number of visited nodes.
    """
    cs = p.coefficients
    m = len(cs)
    suffix_gcd = [0] * (m + 1)
    for i in range(m - 1, -1, -1):
        suffix_gcd[i] = math.gcd(cs[i], suffix_gcd[i + 1])
    out = []
    partial = [0] * m
    nodes = 0

    def rec(i, rest):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"more than {budget} search nodes")
        if i == m - 1:
            if rest % cs[i] == 0:
                partial[i] = rest // cs[i]
                out.append(tuple(partial))
            return
        g = suffix_gcd[i + 1]
        for a in range(rest // cs[i] + 1):
            left = rest - a * cs[i]
            if left % g == 0:
                partial[i] = a
                rec(i + 1, left)

    if p.target % suffix_gcd[0] == 0:
        rec(0, p.target)
    out.sort()
    return out


# -- types ------------------------------------------------------------------

@dataclass(frozen=True)
class ConstraintSet:
    """Constraints on candidate types ``(1,n0; d1,n1; ...)`` of dimension N.

    ``sum_exact`` (sum of n_i d_i^2 equals N) is always enforced.
    """
    n0_divides_N: bool = False
    n0_divides_class: bool = False
    d_divides_N: bool = False
    dsq_divides_N: bool = False
    n0_min: int = 1
    max_degree: Optional[int] = None
    sum_exact: bool = True

    def __post_init__(self):
        if not self.sum_exact:
            raise ValueError("sum_exact cannot be disabled")
        if self.n0_min < 1 or (self.max_degree is not None and self.max_degree < 1):
            raise ValueError("caps must be positive")

    def admits(self, t: TypeVector, N: int) -> bool:
        if t.dimension != N or not t.is_integral():
            return False
        n0 = t.n0
        if n0 < self.n0_min:
            return False
        if self.n0_divides_N and N % n0:
            return False
        for d, c in t.entries[1:]:
            if self.max_degree is not None and d > self.max_degree:
                return False
            if self.d_divides_N and N % d:
                return False
            if self.dsq_divides_N and N % (d * d):
                return False
            if self.n0_divides_class and (c * d * d) % n0:
                return False
        return True


PRESETS = {
    "base": ConstraintSet(n0_divides_N=True, d_divides_N=True, n0_min=2),
    "center": ConstraintSet(d_divides_N=True),
    "strict": ConstraintSet(n0_divides_N=True, d_divides_N=True, n0_divides_class=True, n0_min=2),
    "sum": ConstraintSet(),
}


def enumerate_types(N: int, c: ConstraintSet = ConstraintSet(),
                    budget: int = DEFAULT_BUDGET) -> list:
    """Every integral type vector of dimension ``N`` satisfying ``c``.

    The result is duplicate-free and sorted lexicographically on the
    flattened ``(d, n)`` sequence.
    """
    if not 1 <= N <= 10**6:
        raise ValueError("N must lie in [1, 1e6]")
    cap = math.isqrt(N)
    if c.max_degree is not None:
        cap = min(cap, c.max_degree)
    degrees = [d for d in range(2, cap + 1)
               if not (c.d_divides_N and N % d) and not (c.dsq_divides_N and N % (d * d))]
    nodes = 0
    out = []

    def rec(start, rest, n0, acc):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"more than {budget} search nodes")
        if rest == 0:
            out.append(TypeVector(((1, n0),) + tuple(acc)))
            return
        for idx in range(start, len(degrees)):
            d = degrees[idx]
            sq = d * d
            if sq > rest:
                break
            for cnt in range(1, rest // sq + 1):
                if c.n0_divides_class and (cnt * sq) % n0:
                    continue
                acc.append((d, cnt))
                rec(idx + 1, rest - cnt * sq, n0, acc)
                acc.pop()

    for n0 in range(max(1, c.n0_min), N + 1):
        if c.n0_divides_N and N % n0:
            continue
        rec(0, N - n0, n0, [])
    out.sort(key=lambda t: t.flat())
    return out


# -- filtering --------------------------------------------------------------

def _prime_factors(n):
    out = set()
    p = 2
    while p * p <= n:
        while n % p == 0:
            out.add(p)
            n //= p
        p += 1
    if n > 1:
        out.add(n)
    return out


def _common_factor_ok(t: TypeVector, p: Optional[int]) -> bool:
    """Reject when all non-unit degrees share a prime p but n0 is coprime to p."""
    rest = [d for d, _ in t.entries[1:]]
    if not rest:
        return True
    g = 0
    for d in rest:
        g = math.gcd(g, int(d))
    primes = _prime_factors(g) if g > 1 else set()
    if p is not None:
        primes &= {p}
    return not any(t.n0 % q for q in primes)


def read_golden(path) -> list:
    with open(path) as fh:
        return [TypeVector.parse(line) for line in fh if line.strip() and not line.startswith("#")]


def bundled_golden(name: str = "types-90.golden") -> list:
    text = resources.files("fusionring").joinpath("data", name).read_text()
    return [TypeVector.parse(line) for line in text.splitlines() if line.strip()]


PREDICATES = ("common-prime-factor", "n0-divides-class", "golden")


def filter_types(types: Sequence[TypeVector], predicates: Iterable[str]) -> list:
    """Keep the types passing every predicate; input order is preserved.

    Predicates are strings ``name`` or ``name:arg``:

    ``common-prime-factor[:p]``
        drop types whose non-unit degrees all share a prime p (or the given
        p) while n0 is coprime to it;
    ``n0-divides-class``
        drop types where n0 does not divide some n_i d_i^2;
    ``golden[:path]``
        keep only types listed in a golden file (bundled 90 list by default).
    """
    checks = []
    for spec in predicates:
        name, _, arg = spec.partition(":")
        if name == "common-prime-factor":
            p = int(arg) if arg else None
            checks.append(lambda t, p=p: _common_factor_ok(t, p))
        elif name == "n0-divides-class":
            checks.append(lambda t: all((c * d * d) % t.n0 == 0 for d, c in t.entries[1:]))
        elif name == "golden":
            keep = set(read_golden(arg) if arg else bundled_golden())
            checks.append(lambda t, keep=keep: t in keep)
        else:
            raise UnknownPredicate(f"unknown predicate {name!r}; known: {', '.join(PREDICATES)}")
    return [t for t in types if all(chk(t) for chk in checks)]
