"""Structural invariants of fusion rings.

Invertibles and stabilizers, subring closure, the adjoint subring, the
universal grading, the iterated adjoint (nilpotency) chain, type vectors,
subring search by type, and the case analysis for 2-dimensional simples.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .errors import (DecompositionMismatch, GradingInconsistent, PreconditionError,
                     SearchBudgetExceeded)
from .fpdim import DimVector, certify_integer_dim, fp_dim_vector, is_integral
from .ring import FusionRing, invertible_indices, product_element

TYPE_TOL = 1e-6
DEFAULT_SEARCH_BUDGET = 10**6


# -- subrings ---------------------------------------------------------------

@dataclass(frozen=True)
class Subring:
    members: tuple
    parent: FusionRing = field(repr=False, compare=False)

    def __contains__(self, i):
        return i in self.members

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    @property
    def labels(self) -> list:
        return [self.parent.labels[i] for i in self.members]

    def as_ring(self) -> FusionRing:
        """The subring as a standalone ring, basis renumbered in member order."""
        pos = {m: n for n, m in enumerate(self.members)}
        nconsts = {(pos[i], pos[j], pos[k]): v
                   for (i, j, k), v in self.parent.nconsts.items()
                   if i in pos and j in pos}
        return FusionRing(tuple(self.labels), pos[self.parent.unit],
                          tuple(pos[self.parent.dual[m]] for m in self.members), nconsts)

    def dimension(self, dims: Optional[DimVector] = None) -> float:
        dims = dims or fp_dim_vector(self.parent, certify=False)
        return float(sum(dims[i] ** 2 for i in self.members))


def _closure(r: FusionRing, seed) -> frozenset:
    T = r.tensor
    members = set(seed) | {r.unit}
    members |= {r.dual[i] for i in members}
    frontier = list(members)
    while frontier:
        new = set()
        current = list(members)
        for a in frontier:
            for b in current:
                for x, y in ((a, b), (b, a)):
                    for k in np.nonzero(T[x, y])[0]:
                        k = int(k)
                        if k not in members:
                            new.add(k)
                            new.add(r.dual[k])
        new -= members
        members |= new
        frontier = list(new)
    return frozenset(members)


def subring_generated(r: FusionRing, seed: Iterable = ()) -> Subring:
    """Smallest subring containing ``seed``: unit-, dual- and product-closed."""
    seed = [r.index(s) for s in seed]
    return Subring(tuple(sorted(_closure(r, seed))), r)


def adjoint_subring(r: FusionRing) -> Subring:
    T = r.tensor
    seed = set()
    for i in range(r.rank):
        seed.update(int(k) for k in np.nonzero(T[i, r.dual[i]])[0])
    return subring_generated(r, seed)


# -- invertibles ------------------------------------------------------------

@dataclass(frozen=True)
class InvertibleGroup:
    """The pointed part: invertible basis elements and their group law."""
    subring: Subring
    table: dict        # (g, h) -> g*h, all in parent indices

    @property
    def order(self) -> int:
        return len(self.subring)

    def is_cyclic(self) -> bool:
        return _is_cyclic(self.subring.members, self.table, self.subring.parent.unit)


def _element_order(g, table, unit):
    k, y = 1, g
    while y != unit:
        y = table[(y, g)]
        k += 1
    return k


def _is_cyclic(elements, table, unit):
    n = len(elements)
    return any(_element_order(g, table, unit) == n for g in elements)


def invertibles(r: FusionRing) -> InvertibleGroup:
    """Basis elements of FP dimension 1 and the induced group law."""
    G = invertible_indices(r)
    table = {(g, h): product_element(r, g, h) for g in G for h in G}
    return InvertibleGroup(Subring(tuple(G), r), table)


def stabilizer(r: FusionRing, i) -> tuple:
    """Invertibles g with g*i = i, i.e. those occurring in i*i^*."""
    i = r.index(i)
    return tuple(g for g in invertible_indices(r) if r.N(g, i, i) == 1)


@dataclass(frozen=True)
class XXStarReport:
    element: int
    invertible_part: tuple
    remainder: tuple          # (index, multiplicity) of non-invertible constituents


def xxstar_check(r: FusionRing, i) -> XXStarReport:
    """Split i*i^* into its invertible part, which must be exactly G[i]."""
    i = r.index(i)
    inv = set(invertible_indices(r))
    stab = stabilizer(r, i)
    row = r.tensor[i, r.dual[i]]
    found = []
    rest = []
    for k in np.nonzero(row)[0]:
        k, m = int(k), int(row[k])
        if k in inv:
            if m != 1:
                raise DecompositionMismatch(
                    f"invertible {r.labels[k]} occurs {m} times in {r.labels[i]}*{r.labels[i]}^*")
            found.append(k)
        else:
            rest.append((k, m))
    if tuple(found) != stab:
        raise DecompositionMismatch(
            f"invertible part {found} of {r.labels[i]}*{r.labels[i]}^* differs from stabilizer {list(stab)}")
    return XXStarReport(i, tuple(found), tuple(rest))


# -- gradings ---------------------------------------------------------------

@dataclass(frozen=True)
class GradingPartition:
    blocks: tuple             # tuple of sorted index tuples; blocks[0] is neutral
    table: tuple              # table[a][b] = block index of a*b
    block_dims: tuple
    neutral: int = 0

    @property
    def order(self) -> int:
        return len(self.blocks)

    def inverse(self, a) -> int:
        return next(b for b in range(self.order) if self.table[a][b] == self.neutral)

    def is_cyclic(self) -> bool:
        tbl = {(a, b): self.table[a][b] for a in range(self.order) for b in range(self.order)}
        return _is_cyclic(range(self.order), tbl, self.neutral)

    def is_abelian(self) -> bool:
        n = self.order
        return all(self.table[a][b] == self.table[b][a] for a in range(n) for b in range(n))


def universal_grading(r: FusionRing, dims: Optional[DimVector] = None,
                      tol: float = 1e-6) -> GradingPartition:
    """Canonical grading whose neutral block is the adjoint subring.

    ``i ~ j`` when some constituent of ``i * j^*`` lies in the adjoint subring.
    Raises GradingInconsistent when the blocks do not form a faithful group
    grading with equal component dimensions.
    """
    n = r.rank
    T = r.tensor
    ad = set(adjoint_subring(r).members)
    dims = dims or fp_dim_vector(r, certify=False)

    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(n):
        for j in range(i + 1, n):
            if any(int(k) in ad for k in np.nonzero(T[i, r.dual[j]])[0]):
                parent[find(i)] = find(j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    blocks = sorted((tuple(b) for b in groups.values()),
                    key=lambda b: (r.unit not in b, b[0]))
    where = {i: a for a, b in enumerate(blocks) for i in b}

    if set(blocks[0]) != ad:
        raise GradingInconsistent("neutral block differs from the adjoint subring")
    m = len(blocks)
    table = [[None] * m for _ in range(m)]
    for a in range(m):
        for b in range(m):
            targets = {}
            for i in blocks[a]:
                for j in blocks[b]:
                    for k in np.nonzero(T[i, j])[0]:
                        targets.setdefault(where[int(k)], (i, j))
            if len(targets) != 1:
                pair = next(iter(targets.values()), None)
                raise GradingInconsistent(
                    f"products of blocks {a} and {b} land in blocks {sorted(targets)}", pair)
            table[a][b] = next(iter(targets))
    for a in range(m):
        if table[0][a] != a or table[a][0] != a:
            raise GradingInconsistent(f"neutral block does not act trivially on block {a}")
        duals = {where[r.dual[i]] for i in blocks[a]}
        if len(duals) != 1 or table[a][duals.pop()] != 0:
            raise GradingInconsistent(f"dual does not map block {a} onto its inverse")
        for b in range(m):
            for c in range(m):
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    raise GradingInconsistent(f"block law not associative at {(a, b, c)}")
    block_dims = tuple(float(sum(dims[i] ** 2 for i in b)) for b in blocks)
    total = sum(block_dims)
    if max(block_dims) - min(block_dims) > tol * max(1.0, total):
        raise GradingInconsistent(f"component dimensions differ: {block_dims}")
    if abs(m * block_dims[0] - total) > tol * max(1.0, total):
        raise GradingInconsistent("order times neutral dimension differs from ring dimension")
    return GradingPartition(tuple(blocks), tuple(tuple(row) for row in table), block_dims)


@dataclass(frozen=True)
class NilpotencyChain:
    subrings: tuple           # member tuples, in original indices, outermost first
    groups: tuple             # (order, is_cyclic) of each successive universal grading
    is_nilpotent: bool
    is_cyclically_nilpotent: bool


def nilpotency_chain(r: FusionRing) -> NilpotencyChain:
    """Iterate ring -> adjoint -> adjoint of adjoint ... until it stabilizes.

    Nilpotent when the chain reaches the unit; cyclically nilpotent when, in
    addition, every universal grading group met along the way is cyclic.
    This is the canonical chain only, so the cyclic flag is a sufficient test.
    """
    chain = [tuple(range(r.rank))]
    groups = []
    current = r
    while True:
        ad = adjoint_subring(current)
        if len(ad) == current.rank:
            break
        grading = universal_grading(current)
        groups.append((grading.order, grading.is_cyclic()))
        prev = chain[-1]
        chain.append(tuple(prev[m] for m in ad.members))
        current = ad.as_ring()
    nilpotent = len(chain[-1]) == 1
    return NilpotencyChain(tuple(chain), tuple(groups), nilpotent,
                           nilpotent and all(c for _, c in groups))


# -- type vectors -----------------------------------------------------------

def _fmt_num(x):
    if isinstance(x, int):
        return str(x)
    return f"{x:.12g}"


@dataclass(frozen=True, order=True)
class TypeVector:
    """Ascending ``(degree, count)`` pairs; integral degrees are stored as int."""
    entries: tuple

    def __post_init__(self):
        ents = tuple((d if isinstance(d, int) else float(d), int(c)) for d, c in self.entries)
        object.__setattr__(self, "entries", ents)
        degs = [d for d, _ in ents]
        if not ents or degs[0] != 1 or any(a >= b for a, b in zip(degs, degs[1:])):
            raise ValueError(f"degrees must start at 1 and increase strictly: {degs}")
        if any(c < 1 for _, c in ents):
            raise ValueError("counts must be positive")

    @property
    def n0(self) -> int:
        return self.entries[0][1]

    @property
    def dimension(self):
        return sum(c * d * d for d, c in self.entries)

    def is_integral(self) -> bool:
        return all(isinstance(d, int) for d, _ in self.entries)

    def flat(self) -> tuple:
        return tuple(x for e in self.entries for x in e)

    def __str__(self):
        return "(" + ";".join(f"{_fmt_num(d)},{c}" for d, c in self.entries) + ")"

    @classmethod
    def parse(cls, text: str) -> "TypeVector":
        body = text.strip()
        if not (body.startswith("(") and body.endswith(")")):
            raise ValueError(f"not a type vector: {text!r}")
        entries = []
        for part in body[1:-1].split(";"):
            d, c = (s.strip() for s in part.split(","))
            entries.append((int(d) if d.isdigit() else float(d), int(c)))
        return cls(tuple(entries))


def type_of(obj, dims: Optional[DimVector] = None, rel_tol: float = TYPE_TOL) -> TypeVector:
    """Type vector of a ring or subring; close dimensions collapse to one degree."""
    if isinstance(obj, Subring):
        ring, members = obj.parent, obj.members
    else:
        ring, members = obj, range(obj.rank)
    dims = dims or fp_dim_vector(ring, certify=False)
    values = sorted(dims[i] for i in members)
    groups = []
    for v in values:
        if groups and abs(v - groups[-1][0]) <= rel_tol * max(1.0, abs(v)):
            groups[-1][1] += 1
        else:
            groups.append([v, 1])
    entries = []
    for v, c in groups:
        iv = round(v)
        entries.append((iv if abs(v - iv) <= rel_tol * max(1.0, v) else v, c))
    return TypeVector(tuple(entries))


def all_subrings(r: FusionRing, max_dim: Optional[float] = None,
                 dims: Optional[DimVector] = None, budget: int = DEFAULT_SEARCH_BUDGET) -> list:
    """Every subring, found by growing closures one element at a time.

    Each subring is the closure of a smaller subring plus one element, so a
    breadth-first walk from ``{unit}`` reaches all of them.  ``max_dim``
    prunes subrings whose dimension exceeds it (dimension only grows).
    ``budget`` caps the number of closure computations.
    """
    dims = dims or fp_dim_vector(r, certify=False)
    sq = [v * v for v in dims.values]
    start = _closure(r, ())
    seen = {start}
    frontier = [start]
    closures = 1
    while frontier:
        nxt = []
        for S in frontier:
            for x in range(r.rank):
                if x in S:
                    continue
                closures += 1
                if closures > budget:
                    raise SearchBudgetExceeded(f"more than {budget} closure computations")
                C = _closure(r, S | {x})
                if C in seen:
                    continue
                seen.add(C)
                if max_dim is not None and sum(sq[i] for i in C) > max_dim * (1 + 1e-9) + 1e-9:
                    continue
                nxt.append(C)
        frontier = nxt
    out = [S for S in seen
           if max_dim is None or sum(sq[i] for i in S) <= max_dim * (1 + 1e-9) + 1e-9]
    return sorted((Subring(tuple(sorted(S)), r) for S in out),
                  key=lambda s: (len(s.members), s.members))


def find_subrings_of_type(r: FusionRing, t, dims: Optional[DimVector] = None,
                          budget: int = DEFAULT_SEARCH_BUDGET) -> list:
    """All subrings whose type vector equals ``t`` (deterministic order)."""
    if isinstance(t, str):
        t = TypeVector.parse(t)
    dims = dims or fp_dim_vector(r, certify=False)
    target_dim = t.dimension
    return [S for S in all_subrings(r, max_dim=target_dim, dims=dims, budget=budget)
            if len(S) == sum(c for _, c in t.entries) and type_of(S, dims) == t]


# -- simples of dimension 2 -------------------------------------------------

CASE2_TYPE = TypeVector(((1, 2), (2, 1), (3, 2)))
CASE3_TYPES = (TypeVector(((1, 3), (3, 1))), TypeVector(((1, 1), (3, 2), (4, 1), (5, 1))))


@dataclass(frozen=True)
class NicholsRichmondReport:
    element: int
    cases: tuple                       # subset of (1, 2, 3), ascending
    stabilizer: tuple
    case2_witnesses: tuple = ()        # (subring members, order-2 invertible g)
    case3_witnesses: tuple = ()        # subring members
    subring_dimensions: tuple = ()
    status: str = "ok"                 # "ok" or "TheoremViolated"


def nichols_richmond(r: FusionRing, i, dims: Optional[DimVector] = None,
                     budget: int = DEFAULT_SEARCH_BUDGET) -> NicholsRichmondReport:
    """Which alternatives hold for a simple of FP dimension 2 in an integral ring.

    (1) nontrivial stabilizer; (2) a subring of type (1,2;2,1;3,2) avoiding
    ``i`` with an order-2 invertible g, g*i != i; (3) a subring of type
    (1,3;3,1) or (1,1;3,2;4,1;5,1).  All holding cases are reported.
    """
    i = r.index(i)
    dims = dims or fp_dim_vector(r, certify=False)
    if not is_integral(r, dims):
        raise PreconditionError("ring is not integral")
    if not certify_integer_dim(r, i, 2):
        raise PreconditionError(f"FPdim({r.labels[i]}) is not 2")
    cases = []
    stab = stabilizer(r, i)
    if len(stab) > 1:
        cases.append(1)
    case3 = []
    for t in CASE3_TYPES:
        case3.extend(S.members for S in find_subrings_of_type(r, t, dims, budget))
    case2 = []
    inv = invertibles(r)
    for S in find_subrings_of_type(r, CASE2_TYPE, dims, budget):
        if i in S:
            continue
        for g in S.members:
            if g in inv.subring and g != r.unit and inv.table[(g, g)] == r.unit \
                    and r.N(g, i, i) == 0:
                case2.append((S.members, g))
                break
    if case2:
        cases.append(2)
    if case3:
        cases.append(3)
    sub_dims = sorted({round(sum(dims[m] ** 2 for m in S)) for S, _ in case2}
                      | {round(sum(dims[m] ** 2 for m in S)) for S in case3})
    status = "ok" if cases else "TheoremViolated"
    return NicholsRichmondReport(i, tuple(cases), stab, tuple(case2), tuple(case3),
                                 tuple(sub_dims), status)
