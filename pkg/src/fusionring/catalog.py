"""Small finite groups and the fusion rings built from them.

Groups are given by their multiplication tables.  ``group_ring(G)`` is the
pointed ring Z[G]; ``rep_ring(G)`` is the character ring Rep(G), whose
structure constants come from a character table computed numerically with
Burnside's class-matrix method and then rounded (and checked) to integers.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .ring import FusionRing, ring_from_tensor


@dataclass(frozen=True, eq=False)
class Group:
    name: str
    table: np.ndarray          # table[a, b] = index of a*b
    identity: int = 0

    @property
    def order(self) -> int:
        return self.table.shape[0]

    @cached_property
    def inverse(self) -> np.ndarray:
        return np.argmax(self.table == self.identity, axis=1)

    @cached_property
    def classes(self) -> list:
        seen = set()
        out = []
        inv = self.inverse
        for x in range(self.order):
            if x in seen:
                continue
            cls = sorted({int(self.table[self.table[g, x], inv[g]]) for g in range(self.order)})
            seen.update(cls)
            out.append(cls)
        out.sort(key=lambda c: (self.identity not in c, len(c), c[0]))
        return out

    def element_order(self, x) -> int:
        k, y = 1, x
        while y != self.identity:
            y = self.table[y, x]
            k += 1
        return k

    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())


def group_from_generators(name, generators, mul, identity) -> Group:
    """Close ``generators`` under ``mul`` and tabulate the result."""
    elems = [identity]
    index = {identity: 0}
    frontier = [identity]
    while frontier:
        new = []
        for a in frontier:
            for g in generators:
                b = mul(a, g)
                if b not in index:
                    index[b] = len(elems)
                    elems.append(b)
                    new.append(b)
        frontier = new
    n = len(elems)
    table = np.empty((n, n), dtype=np.int64)
    for a, x in enumerate(elems):
        for b, y in enumerate(elems):
            table[a, b] = index[mul(x, y)]
    return Group(name, table, 0)


def _perm_mul(p, q):
    # apply q first, then p
    return tuple(p[i] for i in q)


def perm_group(name, generators) -> Group:
    n = len(generators[0])
    return group_from_generators(name, [tuple(g) for g in generators], _perm_mul,
                                 tuple(range(n)))


def _cycle(n, *cycles):
    p = list(range(n))
    for c in cycles:
        for a, b in zip(c, c[1:] + c[:1]):
            p[a] = b
    return tuple(p)


def cyclic(n) -> Group:
    t = np.add.outer(np.arange(n), np.arange(n)) % n
    return Group(f"Z{n}", t, 0)


def direct_product(G: Group, H: Group) -> Group:
    n, m = G.order, H.order
    t = np.empty((n * m, n * m), dtype=np.int64)
    for (a, b), (c, d) in itertools.product(itertools.product(range(n), range(m)), repeat=2):
        t[a * m + b, c * m + d] = G.table[a, c] * m + H.table[b, d]
    return Group(f"{G.name}x{H.name}", t, G.identity * m + H.identity)


def symmetric(n) -> Group:
    gens = [_cycle(n, (0, 1)), _cycle(n, tuple(range(n)))] if n > 1 else [tuple(range(n))]
    return perm_group(f"S{n}", gens)


def alternating(n) -> Group:
    gens = [_cycle(n, (0, 1, k)) for k in range(2, n)] or [tuple(range(n))]
    return perm_group(f"A{n}", gens)


def dihedral(n) -> Group:
    """Dihedral group of order 2n."""
    rot = _cycle(n, tuple(range(n)))
    ref = tuple((-i) % n for i in range(n))
    return perm_group(f"D{n}", [rot, ref])


def _mat_mul_mod(p):
    def mul(a, b):
        return tuple(
            tuple(sum(a[i][k] * b[k][j] for k in range(2)) % p for j in range(2))
            for i in range(2))
    return mul


def special_linear_2(p) -> Group:
    """SL(2, p); SL(2,3) is the binary tetrahedral group."""
    mul = _mat_mul_mod(p)
    gens = [((1, 1), (0, 1)), ((1, 0), (1, 1))]
    return group_from_generators(f"SL2({p})", gens, mul, ((1, 0), (0, 1)))


def quaternion() -> Group:
    def mul(a, b):
        return tuple(
            tuple(sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2))
            for i in range(2))
    i = ((1j, 0j), (0j, -1j))
    j = ((0j, 1 + 0j), (-1 + 0j, 0j))
    return group_from_generators("Q8", [i, j], mul, ((1 + 0j, 0j), (0j, 1 + 0j)))


def groups_up_to_order_8() -> list:
    """All 14 groups of order at most 8, up to isomorphism."""
    z2 = cyclic(2)
    return [cyclic(n) for n in range(1, 9)] + [
        direct_product(z2, z2),
        direct_product(cyclic(4), z2),
        direct_product(direct_product(z2, z2), z2),
        symmetric(3),
        dihedral(4),
        quaternion(),
    ]


# -- rings -----------------------------------------------------------------

def group_ring(G: Group) -> FusionRing:
    n = G.order
    labels = ["e" if g == G.identity else f"g{g}" for g in range(n)]
    nconsts = {(a, b, int(G.table[a, b])): 1 for a in range(n) for b in range(n)}
    return FusionRing(tuple(labels), G.identity, tuple(int(x) for x in G.inverse), nconsts)


def character_table(G: Group, seed: int = 0):
    """Irreducible characters of ``G`` as rows over its conjugacy classes.

    Returns ``(chars, class_sizes)``; ``chars[0]`` is the trivial character
    and rows are sorted by degree.
    """
    classes = G.classes
    k = len(classes)
    n = G.order
    which = np.empty(n, dtype=np.int64)
    for c, members in enumerate(classes):
        which[members] = c
    sizes = np.array([len(c) for c in classes])
    inv = G.inverse
    # coeff[r, s, t] = #{x in C_r : x^-1 z_t in C_s} for a fixed z_t in C_t
    coeff = np.zeros((k, k, k))
    for t, ct in enumerate(classes):
        z = ct[0]
        for r, cr in enumerate(classes):
            for x in cr:
                coeff[r, which[G.table[inv[x], z]], t] += 1
    rng = np.random.default_rng(seed)
    for _ in range(20):
        combo = np.tensordot(rng.standard_normal(k), coeff, axes=1)
        evals, evecs = np.linalg.eig(combo)
        gaps = np.abs(evals[:, None] - evals[None, :]) + np.eye(k) * 1e9
        if gaps.min() > 1e-6:
            break
    else:  # pragma: no cover - generic combinations separate the characters
        raise RuntimeError("could not separate characters")
    chars = []
    for v in evecs.T:
        omega = v / v[0]
        deg = np.sqrt(n / np.sum(np.abs(omega) ** 2 / sizes))
        deg = round(float(deg.real))
        chars.append(deg * omega / sizes)
    chars = np.array(chars)

    def key(chi):
        return (round(chi[0].real), not np.allclose(chi, 1),
                tuple(np.round(-chi.real, 6)), tuple(np.round(-chi.imag, 6)))
    order = sorted(range(k), key=lambda i: key(chars[i]))
    return chars[order], sizes


def rep_ring(G: Group, name=None) -> FusionRing:
    chars, sizes = character_table(G)
    k = len(chars)
    n = G.order
    t = np.einsum("s,is,js,ks->ijk", sizes, chars, chars, chars.conj()) / n
    N = np.rint(t.real).astype(np.int64)
    if np.abs(t - N).max() > 1e-6:
        raise RuntimeError(f"character ring of {G.name} is not integral")
    dual = [int(np.argmin(np.abs(chars - c.conj()).sum(axis=1))) for c in chars]
    degs = [round(c[0].real) for c in chars]
    labels = []
    for i, dg in enumerate(degs):
        if i == 0:
            labels.append("1")
            continue
        same = [j for j in range(1, k) if degs[j] == dg]
        if len(same) > 1 or dg == 1:
            labels.append(f"{dg}{'abcdefghijklmnop'[same.index(i)]}")
        else:
            labels.append(f"{dg}")
    return ring_from_tensor(labels, 0, dual, N)


def ising() -> FusionRing:
    """{1, psi, sigma}: psi^2 = 1, psi sigma = sigma, sigma^2 = 1 + psi."""
    n = {(0, 0, 0): 1, (0, 1, 1): 1, (0, 2, 2): 1, (1, 0, 1): 1, (2, 0, 2): 1,
         (1, 1, 0): 1, (1, 2, 2): 1, (2, 1, 2): 1, (2, 2, 0): 1, (2, 2, 1): 1}
    return FusionRing(("1", "psi", "sigma"), 0, (0, 1, 2), n)


def fibonacci() -> FusionRing:
    """{1, tau}: tau^2 = 1 + tau."""
    n = {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1, (1, 1, 0): 1, (1, 1, 1): 1}
    return FusionRing(("1", "tau"), 0, (0, 1), n)


def trivial_ring() -> FusionRing:
    return FusionRing(("1",), 0, (0,), {(0, 0, 0): 1})


NAMED_GROUPS = {
    "S3": lambda: symmetric(3),
    "D4": lambda: dihedral(4),
    "Q8": quaternion,
    "D5": lambda: dihedral(5),
    "A4": lambda: alternating(4),
    "S4": lambda: symmetric(4),
    "A5": lambda: alternating(5),
    "SL2(3)": lambda: special_linear_2(3),
}
