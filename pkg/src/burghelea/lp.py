"""Exact two-phase simplex over the rationals.

Solves   min c.x  subject to  A x = b, x >= 0   with Fraction arithmetic
throughout; Bland's rule guarantees termination on degenerate instances.
The dual vector is recovered from the final basis, so every optimum can be
self-checked against strong duality.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .linalg import solve_dense

ZERO = Fraction(0)


@dataclass
class LPResult:
    status: str                     # optimal | infeasible | unbounded
    value: Optional[Fraction]
    x: Optional[list[Fraction]]
    dual: Optional[list[Fraction]]
    duality_ok: Optional[bool]


def solve_min_lp(c: Sequence, A: Sequence[Sequence], b: Sequence,
                 check_duality: bool = False) -> LPResult:
    m = len(A)
    n = len(c)
    cost = [Fraction(v) for v in c]
    rows = [[Fraction(v) for v in row] for row in A]
    rhs = [Fraction(v) for v in b]
    for row in rows:
        if len(row) != n:
            raise ValueError("ragged constraint matrix")
    # sign-normalize so the artificial basis is feasible
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]
    # tableau [A | I | rhs]; artificials are columns n..n+m-1
    tab = [rows[i] + [Fraction(1) if j == i else ZERO for j in range(m)] + [rhs[i]]
           for i in range(m)]
    basis = list(range(n, n + m))
    art_cost = [ZERO] * n + [Fraction(1)] * m

    status = _simplex(tab, basis, art_cost, allowed=n + m)
    if status == "unbounded":  # phase 1 is always bounded below by 0
        raise AssertionError("phase 1 cannot be unbounded")
    if _objective(tab, basis, art_cost) > 0:
        return LPResult("infeasible", None, None, None, None)

    _drive_out_artificials(tab, basis, n)
    # rows still basic in an artificial are zero rows: redundant constraints
    keep = [i for i in range(len(basis)) if basis[i] < n]
    tab = [tab[i] for i in keep]
    basis = [basis[i] for i in keep]
    kept_rows = [rows[i] for i in keep]
    kept_rhs = [rhs[i] for i in keep]

    full_cost = cost + [ZERO] * m
    status = _simplex(tab, basis, full_cost, allowed=n)
    if status == "unbounded":
        return LPResult("unbounded", None, None, None, None)

    x = [ZERO] * n
    for i, bi in enumerate(basis):
        if bi < n:
            x[bi] = tab[i][-1]
    value = sum((cost[j] * x[j] for j in range(n)), ZERO)

    dual = None
    duality_ok = None
    if check_duality:
        dual, duality_ok = _dual_certificate(kept_rows, kept_rhs, cost, basis, value)
    return LPResult("optimal", value, x, dual, duality_ok)


def _objective(tab, basis, cost) -> Fraction:
    return sum((cost[bi] * tab[i][-1] for i, bi in enumerate(basis)), ZERO)


def _simplex(tab, basis, cost, allowed: int) -> str:
    """Bland-rule simplex on the tableau; columns >= allowed never enter."""
    m = len(tab)
    while True:
        entering = None
        for j in range(allowed):
            if j in basis:
                continue
            r = cost[j] - sum((cost[basis[i]] * tab[i][j] for i in range(m)), ZERO)
            if r < 0:
                entering = j
                break
        if entering is None:
            return "optimal"
        leaving = None
        best: Optional[Fraction] = None
        for i in range(m):
            a = tab[i][entering]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                    best = ratio
                    leaving = i
        if leaving is None:
            return "unbounded"
        _pivot(tab, basis, leaving, entering)


def _pivot(tab, basis, i: int, j: int) -> None:
    piv = tab[i][j]
    tab[i] = [v / piv for v in tab[i]]
    row_i = tab[i]
    for r in range(len(tab)):
        if r != i and tab[r][j]:
            f = tab[r][j]
            tab[r] = [v - f * w for v, w in zip(tab[r], row_i)]
    basis[i] = j


def _drive_out_artificials(tab, basis, n: int) -> None:
    for i in range(len(basis)):
        if basis[i] >= n:
            j = next((jj for jj in range(n) if tab[i][jj]), None)
            if j is not None:
                _pivot(tab, basis, i, j)


def _dual_certificate(rows, rhs, cost, basis, value):
    """y = c_B B^-T on the kept (independent) rows; checks y.b == value and
    c - A^T y >= 0, i.e. strong duality at the reported optimum."""
    m = len(rows)
    assert len(basis) == m
    bt = [[rows[r][basis[i]] for r in range(m)] for i in range(len(basis))]
    cb = [cost[bi] if bi < len(cost) else ZERO for bi in basis]
    y = solve_dense(bt, cb)
    if y is None:
        return None, None
    dual_value = sum((y[i] * rhs[i] for i in range(m)), ZERO)
    feasible = True
    for j in range(len(cost)):
        reduced = cost[j] - sum((y[i] * rows[i][j] for i in range(m)), ZERO)
        if reduced < 0:
            feasible = False
            break
    return y, bool(feasible and dual_value == value)
