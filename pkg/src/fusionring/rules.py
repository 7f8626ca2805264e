"""Dimension-arithmetic classification of fusion categories.

Rules map a dimension profile (N, its factorisation, integrality flags) to
conclusions on the lattice

    Solvable, GroupTheoretical  >  SolvableOrGroupTheoretical
        >  WeaklyGroupTheoretical  >  Unknown

Solvable and GroupTheoretical are incomparable.  Rules fire to a fixed point,
since any conclusion from WeaklyGroupTheoretical upward feeds the rules that
require weak group-theoreticity.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

from .errors import GradingInconsistent, PreconditionError, UncertifiableDimension
from .fpdim import fp_dim_vector, is_integral, is_weakly_integral
from .ring import FusionRing
from .structure import (NilpotencyChain, invertibles, nichols_richmond, nilpotency_chain)


class Outcome(enum.Enum):
    Solvable = "Solvable"
    GroupTheoretical = "GroupTheoretical"
    SolvableOrGroupTheoretical = "SolvableOrGroupTheoretical"
    WeaklyGroupTheoretical = "WeaklyGroupTheoretical"
    Unknown = "Unknown"


# what each conclusion implies, reflexively
_IMPLIES = {
    Outcome.Solvable: {Outcome.Solvable, Outcome.SolvableOrGroupTheoretical,
                       Outcome.WeaklyGroupTheoretical},
    Outcome.GroupTheoretical: {Outcome.GroupTheoretical, Outcome.SolvableOrGroupTheoretical,
                               Outcome.WeaklyGroupTheoretical},
    Outcome.SolvableOrGroupTheoretical: {Outcome.SolvableOrGroupTheoretical,
                                         Outcome.WeaklyGroupTheoretical},
    Outcome.WeaklyGroupTheoretical: {Outcome.WeaklyGroupTheoretical},
    Outcome.Unknown: set(),
}

# When both Solvable and GroupTheoretical hold, Solvable is reported.
_PREFERENCE = (Outcome.Solvable, Outcome.GroupTheoretical, Outcome.SolvableOrGroupTheoretical,
               Outcome.WeaklyGroupTheoretical)


def join(facts) -> Outcome:
    closed = set()
    for f in facts:
        closed |= _IMPLIES[f]
    for o in _PREFERENCE:
        if o in closed:
            return o
    return Outcome.Unknown


# -- factorisation ----------------------------------------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (exact for n < 3.3e24)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class DimensionProfile:
    N: int
    factorization: tuple                     # ((prime, exponent), ...) ascending
    integral: Optional[bool] = None
    weakly_integral: Optional[bool] = None
    weakly_group_theoretical: Optional[bool] = None

    def __post_init__(self):
        prod = 1
        for p, e in self.factorization:
            prod *= p ** e
        primes = [p for p, _ in self.factorization]
        if prod != self.N or primes != sorted(set(primes)):
            raise ValueError(f"bad factorization of {self.N}: {self.factorization}")

    @property
    def primes(self) -> tuple:
        return tuple(p for p, _ in self.factorization)

    @property
    def exponents(self) -> tuple:
        return tuple(e for _, e in self.factorization)


def factorize(N: int, **flags) -> DimensionProfile:
    """Prime factorisation by trial division, short-circuited by a primality test."""
    if not 1 <= N <= 10**12:
        raise ValueError("N must lie in [1, 1e12]")
    out = []
    n = N
    p = 2
    while n > 1 and p * p <= n:
        if is_prime(n):
            break
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return DimensionProfile(N, tuple(out), **flags)


# -- rules ------------------------------------------------------------------

@dataclass(frozen=True)
class Rule:
    id: str
    citation: str
    conclusion: Outcome
    match: Callable        # (profile, facts) -> binding dict or None


@dataclass(frozen=True)
class TraceEntry:
    rule: str
    citation: str
    binding: dict
    conclusion: Outcome


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    trace: tuple
    annotations: tuple = ()

    def fired(self) -> list:
        return [t.rule for t in self.trace]


def _is_wgt(profile, facts):
    return profile.weakly_group_theoretical is True or Outcome.WeaklyGroupTheoretical in facts


def _r1(d, facts):
    if len(d.factorization) <= 2:
        b = {}
        for name, (p, e) in zip(("p", "q"), d.factorization):
            b[name] = p
            b["a" if name == "p" else "b"] = e
        return b


def _r2(d, facts):
    if len(d.factorization) == 3 and d.exponents == (1, 1, 1):
        return dict(zip("pqr", d.primes))


def _r3(d, facts):
    return {"N": 84} if d.N == 84 else None


def _r4(d, facts):
    return {"N": 90} if d.N == 90 else None


def _r5(d, facts):
    if d.weakly_integral is True and d.N <= 119:
        return {"N": d.N}


def _r6(d, facts):
    if d.weakly_integral is True and d.N <= 119:
        return {"N": d.N}


def _r7(d, facts):
    if _is_wgt(d, facts) and (d.N % 2 == 1 or (d.N % 4 == 2)):
        return {"n": d.N if d.N % 2 else d.N // 2}


def _r8(d, facts):
    if _is_wgt(d, facts) and len(d.factorization) == 3 and sorted(d.exponents) == [1, 1, 2]:
        p = next(q for q, e in d.factorization if e == 2)
        q, r = (x for x, e in d.factorization if e == 1)
        return {"p": p, "q": q, "r": r}


def _r9(d, facts):
    if d.weakly_integral is True and d.integral is False and d.N <= 119:
        return {"N": d.N}


RULES = (
    Rule("R1", "Fusion categories of dimension p^a q^b are solvable "
               "(Etingof-Nikshych-Ostrik, weakly group-theoretical and solvable fusion "
               "categories, Thm 1.6).", Outcome.Solvable, _r1),
    Rule("R2", "A fusion category of dimension pqr, p<q<r distinct primes, is solvable.",
         Outcome.Solvable, _r2),
    Rule("R3", "A fusion category of dimension 84 is solvable or group-theoretical.",
         Outcome.SolvableOrGroupTheoretical, _r3),
    Rule("R4", "A fusion category of dimension 90 is solvable (it is weakly "
               "group-theoretical and 90 = 2 * 45).", Outcome.Solvable, _r4),
    Rule("R5", "A weakly integral fusion category of dimension less than 120 is either "
               "group-theoretical or solvable.", Outcome.SolvableOrGroupTheoretical, _r5),
    Rule("R6", "A weakly integral fusion category of dimension less than 120 is weakly "
               "group-theoretical (solvable and group-theoretical categories both are).",
         Outcome.WeaklyGroupTheoretical, _r6),
    Rule("R7", "A weakly group-theoretical fusion category of dimension odd or 2n, n odd, "
               "is solvable (groups of such order are solvable).", Outcome.Solvable, _r7),
    Rule("R8", "A weakly group-theoretical fusion category of dimension p^2 q r is "
               "group-theoretical or solvable.", Outcome.SolvableOrGroupTheoretical, _r8),
    Rule("R9", "A strictly weakly integral fusion category of dimension less than 120 is "
               "solvable (group-theoretical categories are integral).", Outcome.Solvable, _r9),
)

RULE_INDEX = {r.id: r for r in RULES}


def classify_dimension(d: DimensionProfile, extra=()) -> Verdict:
    """Fire every applicable rule until nothing changes; join the conclusions.

    ``extra`` holds already-established ``TraceEntry`` facts (structural
    ones from a concrete ring) that participate in the fixed point.
    """
    facts = {t.conclusion for t in extra}
    fired = {}
    changed = True
    while changed:
        changed = False
        for rule in RULES:
            if rule.id in fired:
                continue
            binding = rule.match(d, _closure(facts))
            if binding is not None:
                fired[rule.id] = TraceEntry(rule.id, rule.citation, binding, rule.conclusion)
                facts.add(rule.conclusion)
                changed = True
    trace = tuple(extra) + tuple(fired[r.id] for r in RULES if r.id in fired)
    return Verdict(join(facts), trace)


def _closure(facts):
    out = set()
    for f in facts:
        out |= _IMPLIES[f]
    return out


# -- ring-level entry points --------------------------------------------------

STRUCTURAL = {
    "S1": ("Pointed fusion categories are group-theoretical (Morita equivalent to a "
           "pointed category by definition).", Outcome.GroupTheoretical),
    "S2": ("A cyclically nilpotent fusion category is solvable.", Outcome.Solvable),
    "S3": ("A nilpotent fusion category is weakly group-theoretical.",
           Outcome.WeaklyGroupTheoretical),
}


def _structural(rule_id, binding):
    citation, outcome = STRUCTURAL[rule_id]
    return TraceEntry(rule_id, citation, binding, outcome)


@dataclass(frozen=True)
class RingClassification:
    verdict: Verdict
    fpdim: float
    integral: Optional[bool]
    weakly_integral: Optional[bool]
    pointed: bool
    chain: Optional[NilpotencyChain]


def classify_ring(r: FusionRing, tol: float = 1e-10) -> RingClassification:
    """Structural facts of ``r`` plus the dimension rules on its FP dimension."""
    dims = fp_dim_vector(r, tol, certify=False)
    notes = []
    try:
        wi = is_weakly_integral(r, dims)
    except UncertifiableDimension as exc:
        wi = None
        notes.append(f"weak integrality uncertified: {exc}")
    try:
        integral = is_integral(r, dims)
    except UncertifiableDimension as exc:
        integral = None
        notes.append(f"integrality uncertified: {exc}")
    G = invertibles(r)
    pointed = G.order == r.rank
    extra = []
    if pointed:
        extra.append(_structural("S1", {"|G|": G.order}))
        notes.append("pointed => group-theoretical by definition")
    try:
        chain = nilpotency_chain(r)
    except GradingInconsistent as exc:
        chain = None
        notes.append(f"nilpotency chain unavailable: {exc}")
    if chain is not None and chain.is_nilpotent:
        groups = [n for n, _ in chain.groups]
        if chain.is_cyclically_nilpotent:
            extra.append(_structural("S2", {"groups": groups}))
            notes.append("nilpotent chain with cyclic grading groups => cyclically nilpotent")
        else:
            extra.append(_structural("S3", {"groups": groups}))
            notes.append("adjoint chain reaches the unit => nilpotent")
    if wi:
        N = round(dims.total)
        verdict = classify_dimension(factorize(N, integral=integral, weakly_integral=True),
                                     tuple(extra))
    else:
        notes.append("FP dimension is not an integer; dimension rules do not apply")
        facts = {t.conclusion for t in extra}
        verdict = Verdict(join(facts), tuple(extra))
    verdict = replace(verdict, annotations=tuple(notes))
    return RingClassification(verdict, dims.total, integral, wi, pointed, chain)


def nichols_richmond_report(r: FusionRing, i) -> str:
    """One-line annotation of the 2-dimensional-simple case analysis."""
    try:
        rep = nichols_richmond(r, i)
    except PreconditionError as exc:
        return f"not applicable ({exc})"
    parts = []
    if 1 in rep.cases:
        stab = "Z_2" if len(rep.stabilizer) == 2 else f"order {len(rep.stabilizer)}"
        parts.append(f"case (1): G[{r.labels[rep.element]}] = {stab}")
    if 2 in rep.cases:
        parts.append(f"case (2): {len(rep.case2_witnesses)} subring(s) of type (1,2;2,1;3,2)")
    if 3 in rep.cases:
        parts.append(f"case (3): {len(rep.case3_witnesses)} subring(s) of type "
                     "(1,3;3,1) or (1,1;3,2;4,1;5,1)")
    if rep.subring_dimensions:
        parts.append("subring dimensions " + ", ".join(str(d) for d in rep.subring_dimensions))
    if rep.status != "ok":
        parts.append("TheoremViolated: no case holds")
    return "; ".join(parts)
