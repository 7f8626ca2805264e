"""Frobenius-Perron dimensions, with exact rational certification.

Floating-point dimensions come from power iteration on the sum of all
left-multiplication matrices, which is strictly positive for a fusion ring;
its Perron vector, normalised at the unit, is the dimension vector.

Integer claims are certified without floating point.  For a nonnegative
matrix ``A`` commuting with every right multiplication, an integer ``d``
admits a positive eigenvector iff the Perron vector of the (strictly
positive) right-regular sum lies in ker(A - d).  Exact powers of that sum
give Collatz-Wielandt brackets that rule ``d`` out, or, once projected
onto the kernel, a positive rational eigenvector that proves it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import ConvergenceFailure, UncertifiableDimension
from .ring import FusionRing

DEFAULT_TOL = 1e-10
MAX_ITER = 10**6
INTEGRAL_TOL = 1e-6
CERTIFY_MAX_STEPS = 2000


@dataclass(frozen=True)
class DimVector:
    values: tuple
    tolerance: float
    certified_integers: Optional[tuple] = None

    def __getitem__(self, i):
        return self.values[i]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    @property
    def total(self) -> float:
        return float(sum(v * v for v in self.values))


def _perron_vector(M, tol, max_iter):
    x = np.ones(M.shape[0])
    lam = 0.0
    prev_res = np.inf
    stall = 0
    for _ in range(max_iter):
        y = M @ x
        lam = y.max()
        y /= lam
        res = np.abs(y - x).max()
        x = y
        if res <= tol * 1e-2:
            return x, lam
        # Stop at machine precision rather than spinning.
        if res >= prev_res and res <= 1e3 * np.finfo(float).eps:
            stall += 1
            if stall > 8:
                return x, lam
        prev_res = res
    raise ConvergenceFailure(f"power iteration did not reach tol={tol} in {max_iter} steps")


def fp_dim_vector(r: FusionRing, tol: float = DEFAULT_TOL, max_iter: int = MAX_ITER,
                  certify: bool = True) -> DimVector:
    """FP dimension of every basis element.

    ``values[i]`` is the Perron eigenvalue of the left-multiplication matrix
    of ``i``.  With ``certify`` set, values within ``1e-6`` of an integer are
    confirmed exactly and recorded in ``certified_integers``.
    """
    if not 1e-14 <= tol <= 1e-6:
        raise ValueError("tol must lie in [1e-14, 1e-6]")
    n = r.rank
    if n == 1:
        return DimVector((1.0,), tol, (1,) if certify else None)
    T = r.tensor.astype(np.float64)
    M = T.sum(axis=0).T
    x, _ = _perron_vector(M, tol, max_iter)
    values = x / x[r.unit]
    values[r.unit] = 1.0
    # Every M_i must share the vector; otherwise the input is pathological.
    for i in range(n):
        resid = np.abs(T[i].T @ values - values[i] * values).max()
        if resid > max(tol, 1e-12) * n * values.max() ** 2 * 10:
            raise ConvergenceFailure(
                f"dimension vector is not an eigenvector of M_{i} (residual {resid:.3g})")
    vals = tuple(float(v) for v in values)
    certs = None
    if certify:
        certs = tuple(
            c if abs(v - c) <= INTEGRAL_TOL and _certify(r, r.left_matrix(i), c) else None
            for i, v in enumerate(vals) for c in [round(v)])
    return DimVector(vals, tol, certs)


def fpdim_ring(r: FusionRing, tol: float = DEFAULT_TOL) -> float:
    """Sum of squared FP dimensions of the basis."""
    return fp_dim_vector(r, tol, certify=False).total


# -- exact certification ------------------------------------------------------

def _nullspace(A):
    """Rational kernel basis of an integer matrix via reduced row echelon form.

    Returns ``(pivots, free, basis)`` where ``basis[f]`` has a 1 at free column
    ``f`` and 0 at every other free column.
    """
    rows = [[Fraction(int(v)) for v in row] for row in A]
    m = len(rows)
    n = len(rows[0]) if rows else 0
    pivots = []
    pr = 0
    for c in range(n):
        p = next((i for i in range(pr, m) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[pr], rows[p] = rows[p], rows[pr]
        piv = rows[pr][c]
        rows[pr] = [v / piv for v in rows[pr]]
        for i in range(m):
            if i != pr and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[pr])]
        pivots.append(c)
        pr += 1
        if pr == m:
            break
    free = [c for c in range(n) if c not in pivots]
    basis = {}
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row_i, c in enumerate(pivots):
            v[c] = -rows[row_i][f]
        basis[f] = v
    return pivots, free, basis


def _certify(r: FusionRing, A, d, max_steps: int = CERTIFY_MAX_STEPS) -> bool:
    """Exact test: does ``A`` have eigenvalue ``d`` with a positive eigenvector?

    ``A`` must be a nonnegative integer matrix commuting with all right
    multiplications of ``r`` (any product of left multiplications does).
    """
    A = np.asarray(A, dtype=object)
    n = A.shape[0]
    d = int(d)
    _, free, basis = _nullspace(A - d * np.eye(n, dtype=np.int64).astype(object))
    if not free:
        return False
    R = r.tensor.sum(axis=1).T.astype(object)   # right-regular sum, strictly positive
    x = [1] * n
    for _ in range(max_steps):
        Ax = A.dot(x)
        # Collatz-Wielandt: min (Ax)_k/x_k <= rho(A) <= max (Ax)_k/x_k.
        lo = min(Fraction(int(a), b) for a, b in zip(Ax, x))
        hi = max(Fraction(int(a), b) for a, b in zip(Ax, x))
        if d < lo or d > hi:
            return False
        y = [sum(x[f] * basis[f][k] for f in free) for k in range(n)]
        if all(v > 0 for v in y):
            return all(v == 0 for v in A.dot(y) - d * np.array(y, dtype=object))
        x = [int(v) for v in R.dot(x)]
        g = math.gcd(*x)
        x = [v // g for v in x]
    return False


def certify_integer_dim(r: FusionRing, i, d: int) -> bool:
    """True iff ``d`` is an eigenvalue of ``M_i`` with a positive eigenvector.

    Decided in exact integer/rational arithmetic.
    """
    if d < 1:
        return False
    return _certify(r, r.left_matrix(r.index(i)), d)


def certify_squared_dim(r: FusionRing, i, s: int) -> bool:
    """Exact test that ``FPdim(i)^2 == s`` via the matrix ``M_i M_{i*}``."""
    i = r.index(i)
    A = r.left_matrix(i) @ r.left_matrix(r.dual[i])
    return s >= 1 and _certify(r, A, s)


def is_integral(r: FusionRing, dims: Optional[DimVector] = None) -> bool:
    dims = dims or fp_dim_vector(r, certify=False)
    if any(abs(v - round(v)) > INTEGRAL_TOL for v in dims.values):
        return False
    for i, v in enumerate(dims.values):
        if not certify_integer_dim(r, i, round(v)):
            raise UncertifiableDimension(
                f"FPdim({r.labels[i]}) ~ {v!r} looks integral but is not certified")
    return True


def is_weakly_integral(r: FusionRing, dims: Optional[DimVector] = None) -> bool:
    """Integer global dimension, certified as a sum of exact squared dimensions."""
    dims = dims or fp_dim_vector(r, certify=False)
    total = dims.total
    N = round(total)
    if abs(total - N) > INTEGRAL_TOL:
        return False
    squares = []
    for i, v in enumerate(dims.values):
        s = round(v * v)
        if abs(v * v - s) > INTEGRAL_TOL * max(1.0, v * v) or not certify_squared_dim(r, i, s):
            raise UncertifiableDimension(
                f"FPdim({r.labels[i]})^2 ~ {v * v!r} is not a certified integer")
        squares.append(s)
    if sum(squares) != N:
        raise UncertifiableDimension(f"certified squares sum to {sum(squares)}, not {N}")
    return True
