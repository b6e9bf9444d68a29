"""Entropy-family quantities in bits (base-2 logarithms, 0 log 0 = 0)."""

from __future__ import annotations

import math

import numpy as np

from bdiv.prob_core import JointPmf, PmfLike, as_pmf, check_same_size


def _xlog2x(x: np.ndarray) -> np.ndarray:
    out = np.zeros_like(x)
    nz = x > 0
    out[nz] = x[nz] * np.log2(x[nz])
    return out


def shannon_entropy(p: PmfLike) -> float:
    p = as_pmf(p)
    h = -float(_xlog2x(p.probs).sum())
    # -0.0 and tiny negative rounding on degenerate PMFs
    return max(h, 0.0)


def max_entropy(n: int) -> float:
    if n < 1:
        raise ValueError(f"alphabet size must be >= 1, got {n}")
    return math.log2(n)


def composite_iid_entropy(per_element_entropy: float, count: int) -> float:
    """Entropy of ``count`` independent, identically distributed elements."""
    if per_element_entropy < 0:
        raise ValueError("per-element entropy must be non-negative")
    if count < 1:
        raise ValueError("count must be >= 1")
    return per_element_entropy * count


def cross_entropy(p: PmfLike, q: PmfLike) -> float:
    """``-sum p_i log2 q_i``; ``inf`` when ``p`` puts mass where ``q`` has none."""
    p, q = as_pmf(p), as_pmf(q)
    check_same_size(p, q)
    pp, qq = p.probs, q.probs
    support = pp > 0
    if np.any(qq[support] == 0):
        return math.inf
    return -float(np.sum(pp[support] * np.log2(qq[support])))


def mutual_information(j: JointPmf) -> float:
    r = j.cells
    px = r.sum(axis=1)
    py = r.sum(axis=0)
    rows, cols = np.nonzero(r)
    cell = r[rows, cols]
    mi = float(np.sum(cell * (np.log2(cell) - np.log2(px[rows]) - np.log2(py[cols]))))
    return max(mi, 0.0)


def conditional_entropy(j: JointPmf) -> float:
    """``H(P|Q) = H(P) - I(P;Q)`` with ``P`` the row marginal of ``j``."""
    h = shannon_entropy(j.cells.sum(axis=1))
    return min(max(h - mutual_information(j), 0.0), h)
