"""Dense two-phase simplex for small equality-form linear programs.

    maximize    c . x
    subject to  A x = b,  x >= 0

Sized for the label-fit problems this package generates: a few hundred
variables, a few dozen constraint rows. Dantzig pricing with a Bland's-rule
fallback against cycling. Fully deterministic.
"""

from __future__ import annotations

import numpy as np

TOL = 1e-9


class LPError(Exception):
    pass


class Infeasible(LPError):
    pass


class Unbounded(LPError):
    pass


def _pivot(tab: np.ndarray, basis: np.ndarray, row: int, col: int) -> None:
    tab[row] /= tab[row, col]
    factors = tab[:, col].copy()
    factors[row] = 0.0
    tab -= np.outer(factors, tab[row])
    basis[row] = col


def _iterate(tab: np.ndarray, basis: np.ndarray, ncols: int, scale: float) -> None:
    """Run simplex iterations on the tableau until optimal (objective row last,
    rhs column last). Only columns < ncols may enter."""
    m = tab.shape[0] - 1
    eps = TOL * scale
    bland_after = 200 * (m + ncols)
    it = 0
    while True:
        obj = tab[-1, :ncols]
        if it < bland_after:
            col = int(np.argmax(obj))
            if obj[col] <= eps:
                return
        else:
            pos = np.nonzero(obj > eps)[0]
            if pos.size == 0:
                return
            col = int(pos[0])

        colvals = tab[:m, col]
        mask = colvals > eps
        if not mask.any():
            raise Unbounded("objective unbounded above")
        ratios = np.full(m, np.inf)
        ratios[mask] = tab[:m, -1][mask] / colvals[mask]
        row = int(np.argmin(ratios))
        _pivot(tab, basis, row, col)
        it += 1


def simplex_maximize(c, a_eq, b_eq):
    """Solve max c.x s.t. a_eq x = b_eq, x >= 0. Returns (x, value).

    Raises Infeasible when no feasible point exists and Unbounded when the
    objective has no finite maximum.
    """
    a = np.array(a_eq, dtype=float)
    b = np.array(b_eq, dtype=float)
    c = np.array(c, dtype=float)
    if a.ndim != 2:
        raise LPError("a_eq must be a matrix")
    m, n = a.shape
    if b.shape != (m,) or c.shape != (n,):
        raise LPError("shape mismatch")

    neg = b < 0
    a[neg] *= -1.0
    b[neg] *= -1.0

    scale = max(1.0, float(np.max(np.abs(a))), float(np.max(np.abs(b))) if m else 1.0)

    # Phase 1: artificial variable per row, drive their sum to zero.
    tab = np.zeros((m + 1, n + m + 1))
    tab[:m, :n] = a
    tab[:m, n : n + m] = np.eye(m)
    tab[:m, -1] = b
    tab[-1, n : n + m] = -1.0
    basis = np.arange(n, n + m)
    tab[-1] += tab[:m].sum(axis=0)  # price out the artificial basis

    _iterate(tab, basis, n + m, scale)
    if tab[-1, -1] > 1e-7 * scale:
        raise Infeasible(f"phase-1 residual {tab[-1, -1]:.3e}")

    # Remove artificials still sitting in the basis (degenerate rows).
    keep_rows = []
    for r in range(m):
        if basis[r] < n:
            keep_rows.append(r)
            continue
        cand = np.nonzero(np.abs(tab[r, :n]) > TOL * scale)[0]
        if cand.size:
            _pivot(tab, basis, r, int(cand[0]))
            keep_rows.append(r)
        # else: redundant row, drop it
    rows = keep_rows + [m]
    tab = tab[rows][:, list(range(n)) + [n + m]]
    basis = basis[keep_rows]
    m2 = len(keep_rows)

    # Phase 2: original objective, priced out over the current basis.
    tab[-1, :] = 0.0
    tab[-1, :n] = c
    for r in range(m2):
        coef = tab[-1, basis[r]]
        if coef != 0.0:
            tab[-1] -= coef * tab[r]

    _iterate(tab, basis, n, max(scale, float(np.max(np.abs(c))) if n else 1.0))

    x = np.zeros(n)
    x[basis] = tab[:m2, -1]
    value = float(c @ x)
    return x, value
