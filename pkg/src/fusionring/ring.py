"""Fusion-ring data: representation, FRT text format, axiom validation.

A fusion ring of rank ``r`` is stored as labels, a unit index, a dual
permutation and a sparse map ``(i, j, k) -> N_{ij}^k`` of positive structure
constants.  Absent keys mean zero.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np

from .errors import DuplicateEntry, IndexOutOfRange, ParseError

MAX_RANK = 64


class ViolationKind(enum.Enum):
    UnitAxiom = "UnitAxiom"
    DualAxiom = "DualAxiom"
    Associativity = "Associativity"
    FrobeniusSymmetry = "FrobeniusSymmetry"
    DualNotInvolution = "DualNotInvolution"


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    indices: tuple
    detail: str = ""

    def __str__(self):
        idx = ",".join(str(i) for i in self.indices)
        return f"{self.kind.value} at ({idx}): {self.detail}"


@dataclass(frozen=True, eq=False)
class FusionRing:
    """Finite based ring with nonnegative integer structure constants.

    ``nconsts[(i, j, k)]`` is the multiplicity of basis element ``k`` in
    ``i * j``.  Construction checks only structural well-formedness; use
    :func:`validate_ring` for the ring axioms.
    """

    labels: tuple
    unit: int
    dual: tuple
    nconsts: Mapping = field(default_factory=dict)
    max_rank: int = MAX_RANK

    def __post_init__(self):
        labels = tuple(str(l) for l in self.labels)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "dual", tuple(int(d) for d in self.dual))
        r = len(labels)
        if r == 0:
            raise ValueError("rank must be positive")
        if r > self.max_rank:
            raise ValueError(f"rank {r} exceeds maximum {self.max_rank}")
        if any(not l for l in labels) or len(set(labels)) != r:
            raise ValueError("labels must be distinct non-empty strings")
        if not 0 <= self.unit < r:
            raise IndexOutOfRange(f"unit index {self.unit} out of range")
        if len(self.dual) != r or sorted(self.dual) != list(range(r)):
            raise ValueError("dual must be a permutation of the basis indices")
        clean = {}
        for key, v in self.nconsts.items():
            i, j, k = (int(x) for x in key)
            if not all(0 <= x < r for x in (i, j, k)):
                raise IndexOutOfRange(f"structure constant index {key} out of range")
            v = int(v)
            if v < 0:
                raise ValueError(f"negative structure constant at {key}")
            if v:
                clean[(i, j, k)] = v
        object.__setattr__(self, "nconsts", dict(sorted(clean.items())))

    @property
    def rank(self) -> int:
        return len(self.labels)

    def N(self, i, j, k) -> int:
        return self.nconsts.get((i, j, k), 0)

    @cached_property
    def tensor(self) -> np.ndarray:
        """Dense array ``T[i, j, k] = N_{ij}^k`` (read-only)."""
        r = self.rank
        t = np.zeros((r, r, r), dtype=np.int64)
        for (i, j, k), v in self.nconsts.items():
            t[i, j, k] = v
        t.setflags(write=False)
        return t

    def left_matrix(self, i) -> np.ndarray:
        """Left multiplication by ``i``: entry ``(k, j)`` is ``N_{ij}^k``."""
        return self.tensor[i].T.copy()

    def right_matrix(self, j) -> np.ndarray:
        """Right multiplication by ``j``: entry ``(k, i)`` is ``N_{ij}^k``."""
        return self.tensor[:, j, :].T.copy()

    def index(self, label_or_index) -> int:
        if isinstance(label_or_index, (int, np.integer)):
            i = int(label_or_index)
            if not 0 <= i < self.rank:
                raise IndexOutOfRange(f"index {i} out of range")
            return i
        try:
            return self.labels.index(label_or_index)
        except ValueError:
            s = str(label_or_index)
            if s.lstrip("-").isdigit():
                return self.index(int(s))
            raise IndexOutOfRange(f"unknown label {label_or_index!r}") from None

    def __eq__(self, other):
        if not isinstance(other, FusionRing):
            return NotImplemented
        return (self.labels, self.unit, self.dual, self.nconsts) == (
            other.labels, other.unit, other.dual, other.nconsts)

    def __hash__(self):
        return hash((self.labels, self.unit, self.dual, tuple(self.nconsts.items())))

    def __repr__(self):
        return f"FusionRing(rank={self.rank}, labels={list(self.labels)}, unit={self.unit})"

    def replace(self, nconsts=None, dual=None):
        return FusionRing(self.labels, self.unit, self.dual if dual is None else dual,
                          self.nconsts if nconsts is None else nconsts, self.max_rank)


def ring_from_tensor(labels, unit, dual, tensor) -> FusionRing:
    t = np.asarray(tensor)
    nz = {tuple(int(x) for x in idx): int(t[idx]) for idx in zip(*np.nonzero(t))}
    return FusionRing(tuple(labels), unit, tuple(dual), nz)


# -- FRT text format --------------------------------------------------------

def _strip(line):
    return line.split("#", 1)[0].split()


def parse_ring(text: str, max_rank: int = MAX_RANK) -> FusionRing:
    """Parse an FRT document.

    Header lines ``rank``, ``labels``, ``unit``, ``dual`` come first, in that
    order, followed by ``N i j k v`` lines.  In ``unit``, ``dual`` and ``N``
    lines an index may also be given by its label.
    """
    header = {}
    order = ("rank", "labels", "unit", "dual")
    nconsts = {}
    rank = None
    labels = None

    def resolve(tok, lineno):
        if tok.isdigit():
            i = int(tok)
        elif labels is not None and tok in labels:
            i = labels.index(tok)
        else:
            raise IndexOutOfRange(f"unknown index or label {tok!r}", lineno)
        if not 0 <= i < rank:
            raise IndexOutOfRange(f"index {i} out of range for rank {rank}", lineno)
        return i

    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = _strip(raw)
        if not toks:
            continue
        key, args = toks[0], toks[1:]
        if len(header) < len(order):
            expected = order[len(header)]
            if key != expected:
                raise ParseError(f"expected '{expected}' line, got {key!r}", lineno)
            if key == "rank":
                if len(args) != 1 or not args[0].isdigit() or int(args[0]) < 1:
                    raise ParseError("rank must be a positive integer", lineno)
                rank = int(args[0])
                if rank > max_rank:
                    raise ParseError(f"rank {rank} exceeds maximum {max_rank}", lineno)
            elif key == "labels":
                if len(args) != rank:
                    raise ParseError(f"expected {rank} labels, got {len(args)}", lineno)
                if len(set(args)) != rank:
                    raise ParseError("labels must be distinct", lineno)
                labels = list(args)
            elif key == "unit":
                if len(args) != 1:
                    raise ParseError("unit takes one index", lineno)
                args = [resolve(args[0], lineno)]
            elif key == "dual":
                if len(args) != rank:
                    raise ParseError(f"expected {rank} dual indices, got {len(args)}", lineno)
                args = [resolve(a, lineno) for a in args]
                if sorted(args) != list(range(rank)):
                    raise ParseError("dual is not a permutation", lineno)
            header[key] = args
            continue
        if key != "N":
            raise ParseError(f"unexpected line type {key!r}", lineno)
        if len(args) != 4:
            raise ParseError("N line needs i j k v", lineno)
        i, j, k = (resolve(a, lineno) for a in args[:3])
        if not args[3].isdigit() or int(args[3]) < 1:
            raise ParseError("multiplicity must be a positive integer", lineno)
        if (i, j, k) in nconsts:
            raise DuplicateEntry(f"duplicate entry for ({i},{j},{k})", lineno)
        nconsts[(i, j, k)] = int(args[3])

    if len(header) < len(order):
        raise ParseError(f"missing '{order[len(header)]}' line")
    return FusionRing(tuple(labels), header["unit"][0], tuple(header["dual"]),
                      nconsts, max_rank=max(max_rank, rank))


def serialize_ring(r: FusionRing) -> str:
    lines = [f"rank {r.rank}",
             "labels " + " ".join(r.labels),
             f"unit {r.unit}",
             "dual " + " ".join(str(d) for d in r.dual)]
    lines += [f"N {i} {j} {k} {v}" for (i, j, k), v in r.nconsts.items()]
    return "\n".join(lines) + "\n"


def load_ring(path) -> FusionRing:
    with open(path) as fh:
        return parse_ring(fh.read())


# -- validation -------------------------------------------------------------

_KIND_ORDER = {k: n for n, k in enumerate(ViolationKind)}


def _sorted(violations):
    return sorted(violations, key=lambda v: (v.indices, _KIND_ORDER[v.kind]))


def validate_ring(r: FusionRing) -> list:
    """Check unit, dual-involution, duality, associativity, Frobenius symmetry.

    Every violated instance is reported, ordered lexicographically by index
    tuple.  An empty list means the ring satisfies all five axioms.
    """
    n = r.rank
    u = r.unit
    d = r.dual
    T = r.tensor
    out = []

    for i in range(n):
        if d[d[i]] != i:
            out.append(Violation(ViolationKind.DualNotInvolution, (i,),
                                 f"dual[dual[{i}]] = {d[d[i]]}"))
    if d[u] != u:
        out.append(Violation(ViolationKind.DualNotInvolution, (u,),
                             f"dual of unit is {d[u]}"))

    eye = np.eye(n, dtype=np.int64)
    seen = set()
    for j, k in zip(*np.nonzero(T[u] != eye)):
        seen.add((u, int(j), int(k)))
    for j, k in zip(*np.nonzero(T[:, u, :] != eye)):
        seen.add((int(j), u, int(k)))
    for idx in sorted(seen):
        other = idx[1] if idx[0] == u else idx[0]
        out.append(Violation(ViolationKind.UnitAxiom, idx,
                             f"N = {T[idx]}, expected {int(other == idx[2])}"))

    expect = np.zeros((n, n), dtype=np.int64)
    expect[np.arange(n), list(d)] = 1
    for i, j in zip(*np.nonzero(T[:, :, u] != expect)):
        out.append(Violation(ViolationKind.DualAxiom, (int(i), int(j), u),
                             f"N = {T[i, j, u]}, expected {expect[i, j]}"))

    # (i*j)*k vs i*(j*k), as two r^2 x r^2 products.
    Tf = T.astype(np.float64)
    flat = Tf.reshape(n * n, n)
    lhs = (flat @ Tf.reshape(n, n * n)).reshape(n, n, n, n)
    rhs = (flat @ Tf.transpose(1, 0, 2).reshape(n, n * n)).reshape(n, n, n, n)
    rhs = rhs.transpose(2, 0, 1, 3)
    for idx in zip(*np.nonzero(lhs != rhs)):
        idx = tuple(int(x) for x in idx)
        out.append(Violation(ViolationKind.Associativity, idx,
                             f"(ij)k -> {int(lhs[idx])}, i(jk) -> {int(rhs[idx])}"))

    if all(d[d[i]] == i for i in range(n)):
        dd = list(d)
        a = T[dd, :, :].transpose(0, 2, 1)      # a[i,j,k] = N_{i* k}^j
        b = T[:, dd, :].transpose(2, 1, 0)      # b[i,j,k] = N_{k j*}^i
        bad = (T != a) | (T != b)
        for idx in zip(*np.nonzero(bad)):
            idx = tuple(int(x) for x in idx)
            out.append(Violation(ViolationKind.FrobeniusSymmetry, idx,
                                 f"N_ij^k={T[idx]}, N_(i*)k^j={a[idx]}, N_k(j*)^i={b[idx]}"))
    return _sorted(out)


# -- multiplicities ---------------------------------------------------------

def tensor_decompose(r: FusionRing, i, j) -> list:
    """Constituents of ``i * j`` as ``(k, N_{ij}^k)`` pairs, ascending in ``k``."""
    i, j = r.index(i), r.index(j)
    row = r.tensor[i, j]
    return [(int(k), int(row[k])) for k in np.nonzero(row)[0]]


def multiplicity(r: FusionRing, k, i, j) -> int:
    """m(k, i*j), i.e. ``N_{ij}^k``."""
    return r.N(r.index(i), r.index(j), r.index(k))


def invertible_indices(r: FusionRing) -> list:
    """Basis elements ``g`` with ``g * g^* = unit`` (equivalently FPdim 1)."""
    T = r.tensor
    out = []
    for g in range(r.rank):
        row = T[g, r.dual[g]]
        if row.sum() == 1 and row[r.unit] == 1:
            out.append(g)
    return out


def product_element(r: FusionRing, i, j):
    """The single constituent of ``i * j``, or None if the product is not simple."""
    dec = tensor_decompose(r, i, j)
    if len(dec) == 1 and dec[0][1] == 1:
        return dec[0][0]
    return None


def check_frobenius_identities(r: FusionRing) -> list:
    """Redundant check of the multiplicity identities of a based ring.

    For all basis triples: m(X, Y*Z) = m(Y*, Z*X*) = m(Y, X*Z*) and
    m(X, Y*Z) = m(X*, Z* Y*); for invertible g: m(g, X*Y) is 1 exactly when
    Y = X* g and 0 otherwise.
    """
    n = r.rank
    d = r.dual
    T = r.tensor
    kind = ViolationKind.FrobeniusSymmetry
    out = []
    for x in range(n):
        for y in range(n):
            for z in range(n):
                base = T[y, z, x]
                others = (T[z, d[x], d[y]], T[x, d[z], y], T[d[z], d[y], d[x]])
                if any(o != base for o in others):
                    out.append(Violation(kind, (x, y, z),
                                         f"m(X,Y*Z)={base} vs {[int(o) for o in others]}"))
    for g in invertible_indices(r):
        for x in range(n):
            target = product_element(r, d[x], g)
            for y in range(n):
                m = int(T[x, y, g])
                want = 1 if y == target else 0
                if m != want:
                    out.append(Violation(kind, (g, x, y),
                                         f"m(g,X*Y)={m}, expected {want}"))
    return _sorted(out)
