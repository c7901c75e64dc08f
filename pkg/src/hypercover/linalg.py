"""Exact rational kernels.

FLINT (through python-flint) does the elimination when it is installed; a
sparse Fraction elimination is used otherwise. Either way the kernel basis is
returned in reduced row echelon form, which makes it unique for a given
subspace, so both backends give identical answers.
"""
from __future__ import annotations

import math
import os
from fractions import Fraction

try:
    if os.environ.get("HYPERCOVER_PURE_LINALG", "") not in ("", "0"):
        raise ImportError
    import flint
except ImportError:  # pragma: no cover - exercised by the fallback tests
    flint = None

BACKEND = "flint" if flint is not None else "python"


def rref(rows, ncols):
    """Reduced row echelon form of sparse rows; returns (rows, pivots).

    Invariant: every stored pivot row is zero on all other pivot columns.
    """
    pivot_rows = {}
    for r in rows:
        row = {c: Fraction(v) for c, v in r.items() if v}
        for pc in [c for c in row if c in pivot_rows]:
            f = row.get(pc)
            if not f:
                continue
            for cc, vv in pivot_rows[pc].items():
                nv = row.get(cc, 0) - f * vv
                if nv:
                    row[cc] = nv
                else:
                    row.pop(cc, None)
        if not row:
            continue
        c = min(row)
        inv = 1 / row[c]
        row = {cc: vv * inv for cc, vv in row.items()}
        for prow in pivot_rows.values():
            f = prow.get(c)
            if f:
                for cc, vv in row.items():
                    nv = prow.get(cc, 0) - f * vv
                    if nv:
                        prow[cc] = nv
                    else:
                        prow.pop(cc, None)
        pivot_rows[c] = row
    pivots = sorted(pivot_rows)
    return [pivot_rows[p] for p in pivots], pivots


def _dense(rowdict, ncols):
    out = [Fraction(0)] * ncols
    for c, v in rowdict.items():
        out[c] = Fraction(v)
    return out


def _kernel_python(rows, ncols):
    red, pivots = rref(rows, ncols)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = {f: Fraction(1)}
        for p, r in zip(pivots, red):
            x = r.get(f)
            if x:
                v[p] = -x
        basis.append(v)
    red, _ = rref(basis, ncols)
    return [_dense(r, ncols) for r in red]


def _kernel_flint(rows, ncols):
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    dense = [[0] * ncols for _ in rows]
    den = 1
    for i, r in enumerate(rows):
        for c, v in r.items():
            v = Fraction(v)
            dense[i][c] = v
            if v.denominator != 1:
                den = den * v.denominator // math.gcd(den, v.denominator)
    if den != 1:
        dense = [[int(v * den) for v in row] for row in dense]
    else:
        dense = [[int(v) for v in row] for row in dense]
    M = flint.fmpz_mat(dense)
    X, nullity = M.nullspace()
    if nullity == 0:
        return []
    B = flint.fmpq_mat(nullity, ncols, [X[i, j] for j in range(nullity) for i in range(ncols)])
    R, rank = B.rref()
    out = []
    for i in range(rank):
        out.append([Fraction(int(R[i, j].p), int(R[i, j].q)) for j in range(ncols)])
    return out


def kernel(rows, ncols, backend=None):
    """Kernel of the matrix given by sparse ``rows`` (dicts column -> value).

    Returns the reduced row echelon basis as dense lists of Fractions.
    """
    backend = backend or BACKEND
    if ncols == 0:
        return []
    if backend == "flint":
        if flint is None:
            raise RuntimeError("python-flint is not installed")
        return _kernel_flint(rows, ncols)
    return _kernel_python(rows, ncols)


def rank(rows, ncols):
    return ncols - len(kernel(rows, ncols))


def apply(functional, vector):
    """Sparse functional (dict) applied to a dense vector."""
    return sum((v * vector[c] for c, v in functional.items()), Fraction(0))
