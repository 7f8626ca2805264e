"""Numeric consistency checks on premodular S-matrix data."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InvalidSMatrix, NonIntegralEntry, ParseError

DEFAULT_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class SMatrixData:
    entries: np.ndarray
    dims: tuple
    unit: int = 0
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        S = np.asarray(self.entries, dtype=complex)
        object.__setattr__(self, "entries", S)
        object.__setattr__(self, "dims", tuple(float(d) for d in self.dims))
        n = S.shape[0]
        if S.shape != (n, n) or n == 0:
            raise InvalidSMatrix("S-matrix must be square and nonempty")
        if len(self.dims) != n or any(d <= 0 for d in self.dims):
            raise InvalidSMatrix("need one positive dimension per index")
        if not 0 <= self.unit < n:
            raise InvalidSMatrix("unit index out of range")
        scale = self.tol * n
        if np.abs(S - S.T).max() > scale:
            raise InvalidSMatrix("S-matrix is not symmetric")
        if np.abs(S[self.unit] - np.array(self.dims)).max() > scale:
            raise InvalidSMatrix("row of the unit differs from the dimensions")

    @property
    def order(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class CheckResult:
    name: str
    x0: int
    value: float
    threshold: float
    passed: bool


def check_column_orthogonality(m: SMatrixData, x0: int, tol: float = DEFAULT_TOL) -> CheckResult:
    """sum_X s(x0,X)/dim(x0) * dim(X) must vanish for x0 other than the unit."""
    if x0 == m.unit:
        raise ValueError("x0 must differ from the unit")
    d = np.array(m.dims)
    total = np.sum(m.entries[x0] / d[x0] * d)
    thr = tol * d.sum()
    return CheckResult("column-orthogonality", x0, float(abs(total)), thr, bool(abs(total) <= thr))


def check_norm_identity(m: SMatrixData, x0: int, global_dim: Optional[float] = None,
                        tol: float = DEFAULT_TOL) -> CheckResult:
    """sum_X |s(x0,X)/dim(x0)|^2 must equal global_dim / dim(x0)^2."""
    d = np.array(m.dims)
    expected_global = float(np.sum(d * d))
    if global_dim is None:
        global_dim = expected_global
    elif abs(global_dim - expected_global) > tol * max(1.0, expected_global):
        raise ValueError(f"global dimension {global_dim} differs from sum of squares {expected_global}")
    lhs = np.sum(np.abs(m.entries[x0] / d[x0]) ** 2)
    diff = abs(lhs - global_dim / d[x0] ** 2)
    thr = tol * m.order
    return CheckResult("norm-identity", x0, float(diff), thr, bool(diff <= thr))


def check_all(m: SMatrixData, tol: float = DEFAULT_TOL, x0: Optional[int] = None) -> list:
    cols = [x0] if x0 is not None else [x for x in range(m.order) if x != m.unit]
    out = []
    for x in cols:
        if x != m.unit:
            out.append(check_column_orthogonality(m, x, tol))
        out.append(check_norm_identity(m, x, tol=tol))
    return out


def divisibility_test(m: SMatrixData, x0: int, x1: int, d: int) -> bool:
    """Whether ``d`` divides the (rational integer) entry s(x0, x1)."""
    s = m.entries[x0, x1]
    k = round(s.real)
    if abs(s - k) > 1e-9:
        raise NonIntegralEntry(f"s({x0},{x1}) = {s} is not a rational integer")
    return k % d == 0


def cyclic_smatrix(n: int) -> SMatrixData:
    """Modular data of Vec(Z_n) with a nondegenerate form: s_jk = exp(2 pi i jk/n)."""
    j = np.arange(n)
    return SMatrixData(np.exp(2j * np.pi * np.outer(j, j) / n), (1.0,) * n, 0)


# -- SMT format -------------------------------------------------------------

def _parse_number(tok: str) -> complex:
    t = tok.replace("i", "j")
    if t.endswith("j"):
        head = t[:-1]
        if head in ("", "+", "-") or head[-1] in "+-":
            t = head + "1j"
    return complex(t)


def parse_smatrix(text: str) -> SMatrixData:
    """Parse ``smat <n>``, n rows of entries (``a`` or ``a+bi``), ``dims ...``, ``unit k``."""
    lines = [(no, raw.split("#", 1)[0].split()) for no, raw in enumerate(text.splitlines(), 1)]
    lines = [(no, toks) for no, toks in lines if toks]
    if not lines or lines[0][1][0] != "smat" or len(lines[0][1]) != 2:
        raise ParseError("expected 'smat <order>'", lines[0][0] if lines else None)
    try:
        n = int(lines[0][1][1])
    except ValueError:
        raise ParseError("order must be an integer", lines[0][0]) from None
    if len(lines) < n + 3:
        raise ParseError("truncated S-matrix document")
    rows = []
    for no, toks in lines[1:n + 1]:
        if len(toks) != n:
            raise ParseError(f"expected {n} entries", no)
        try:
            rows.append([_parse_number(t) for t in toks])
        except ValueError as exc:
            raise ParseError(f"bad number: {exc}", no) from None
    no, toks = lines[n + 1]
    if toks[0] != "dims" or len(toks) != n + 1:
        raise ParseError(f"expected 'dims' with {n} values", no)
    dims = [float(t) for t in toks[1:]]
    no, toks = lines[n + 2]
    if toks[0] != "unit" or len(toks) != 2:
        raise ParseError("expected 'unit <idx>'", no)
    if len(lines) > n + 3:
        raise ParseError("unexpected trailing content", lines[n + 3][0])
    return SMatrixData(np.array(rows), tuple(dims), int(toks[1]))


def _fmt(z: complex) -> str:
    if abs(z.imag) < 1e-15:
        return f"{z.real:.17g}"
    return f"{z.real:.17g}{z.imag:+.17g}i"


def serialize_smatrix(m: SMatrixData) -> str:
    lines = [f"smat {m.order}"]
    lines += [" ".join(_fmt(z) for z in row) for row in m.entries]
    lines.append("dims " + " ".join(f"{d:.17g}" for d in m.dims))
    lines.append(f"unit {m.unit}")
    return "\n".join(lines) + "\n"
