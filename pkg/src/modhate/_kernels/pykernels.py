"""Pure-numpy implementations of the hot kernels.

The compiled twin (_ckernels.pyx) mirrors the floating-point operation
order of these functions so both backends produce identical results; the
cross-backend tests rely on that.
"""

from __future__ import annotations

import numpy as np

BACKEND = "py"


def gini_best_split(x: np.ndarray, y: np.ndarray, w: np.ndarray):
    """Best threshold for one feature column under weighted Gini impurity.

    Candidate thresholds are midpoints between consecutive distinct sorted
    values. Returns (impurity, threshold, ok); the lowest threshold wins
    impurity ties, and ok is False when the column has no distinct pair.
    """
    n = x.shape[0]
    if n < 2:
        return np.inf, 0.0, False
    order = np.argsort(x, kind="stable")
    xs = x[order]
    ws = w[order]
    ys = y[order]
    w0 = np.where(ys == 0, ws, 0.0)
    w1 = np.where(ys == 1, ws, 0.0)
    c0 = np.cumsum(w0)
    c1 = np.cumsum(w1)
    tot0 = c0[n - 1]
    tot1 = c1[n - 1]
    total = tot0 + tot1

    # split i puts items [0, i) left; left sums are the cumsums at i-1
    l0 = c0[:-1]
    l1 = c1[:-1]
    wl = l0 + l1
    r0 = tot0 - l0
    r1 = tot1 - l1
    wr = r0 + r1
    valid = (xs[1:] > xs[:-1]) & (wl > 0.0) & (wr > 0.0)
    if not valid.any():
        return np.inf, 0.0, False
    with np.errstate(divide="ignore", invalid="ignore"):
        a = l0 / wl
        b = l1 / wl
        gl = 1.0 - a * a - b * b
        a = r0 / wr
        b = r1 / wr
        gr = 1.0 - a * a - b * b
        imp = (wl * gl + wr * gr) / total
    imp = np.where(valid, imp, np.inf)
    best = int(np.argmin(imp))
    thr = (xs[best] + xs[best + 1]) * 0.5
    return float(imp[best]), float(thr), True


def pairwise_sq_dists(queries: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Squared Euclidean distances, shape (n_queries, n_points)."""
    nq = queries.shape[0]
    out = np.empty((nq, points.shape[0]), dtype=np.float64)
    for i in range(nq):
        d = points - queries[i]
        out[i] = np.einsum("ij,ij->i", d, d)
    return out


def joint_counts(a: np.ndarray, b: np.ndarray, na: int, nb: int) -> np.ndarray:
    """Joint histogram of two integer code vectors, shape (na, nb)."""
    flat = np.bincount(a * nb + b, minlength=na * nb)
    return flat.reshape(na, nb).astype(np.int64)
