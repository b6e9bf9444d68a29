"""Probability mass functions, joint distributions and clamping."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from bdiv.errors import BdivError

SUM_TOL = 1e-9


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=np.float64)
    arr.setflags(write=False)
    return arr


class Pmf:
    """A validated discrete PMF over an implicit alphabet of ``n`` letters.

    Zero entries are legal; singular cases are handled by the measures.
    Instances are immutable.
    """

    __slots__ = ("_probs",)

    def __init__(self, values: Iterable[float]):
        arr = np.array(list(values) if not isinstance(values, np.ndarray) else values, dtype=np.float64)
        if arr.ndim != 1:
            raise BdivError("PARSE_ERROR", f"expected a flat sequence, got shape {arr.shape}")
        if arr.size == 0:
            raise BdivError("EMPTY", "a PMF needs at least one letter")
        if not np.all(np.isfinite(arr)):
            raise BdivError("PARSE_ERROR", "PMF entries must be finite numbers")
        if np.any(arr < 0.0):
            raise BdivError("NEGATIVE_ENTRY", f"negative entry {arr.min()!r}")
        if np.any(arr > 1.0):
            raise BdivError("ENTRY_ABOVE_ONE", f"entry {arr.max()!r} exceeds 1")
        total = float(arr.sum())
        if abs(total - 1.0) > SUM_TOL:
            raise BdivError("SUM_NOT_ONE", f"entries sum to {total!r}")
        arr.setflags(write=False)
        self._probs = arr

    @property
    def probs(self) -> np.ndarray:
        return self._probs

    @property
    def n(self) -> int:
        return int(self._probs.size)

    def __len__(self) -> int:
        return self.n

    def __iter__(self):
        return iter(self._probs.tolist())

    def __getitem__(self, i):
        return float(self._probs[i])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Pmf):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self._probs, other._probs))

    def __hash__(self) -> int:
        return hash(tuple(self._probs.tolist()))

    def __repr__(self) -> str:
        return f"Pmf({self._probs.tolist()!r})"

    def tolist(self) -> list[float]:
        return self._probs.tolist()


PmfLike = Union[Pmf, Sequence[float], np.ndarray]


def as_pmf(p: PmfLike) -> Pmf:
    return p if isinstance(p, Pmf) else Pmf(p)


def make_pmf(values: Sequence[float]) -> Pmf:
    return Pmf(values)


def uniform_pmf(n: int) -> Pmf:
    if n < 1:
        raise BdivError("EMPTY", f"alphabet size must be >= 1, got {n}")
    return Pmf(np.full(n, 1.0 / n))


def check_same_size(p: Pmf, q: Pmf) -> None:
    if p.n != q.n:
        raise BdivError("SIZE_MISMATCH", f"alphabet sizes differ: {p.n} vs {q.n}")


@dataclass(frozen=True)
class ClampPolicy:
    """Keep PMF entries inside ``[sigma, 1 - sigma]``."""

    sigma: float

    def __post_init__(self):
        if not (0.0 <= self.sigma < 0.5):
            raise BdivError("INVALID_SIGMA", f"sigma must lie in [0, 0.5), got {self.sigma!r}")


def clamp_pmf(p: PmfLike, policy: ClampPolicy | float) -> Pmf:
    """Clip every entry into ``[sigma, 1 - sigma]`` and renormalize once.

    For ``n > 2`` the renormalization can push entries slightly below
    ``sigma`` again; the result is still a valid PMF.
    """
    p = as_pmf(p)
    if not isinstance(policy, ClampPolicy):
        policy = ClampPolicy(float(policy))
    s = policy.sigma
    clipped = np.clip(p.probs, s, 1.0 - s)
    return Pmf(clipped / clipped.sum())


class JointPmf:
    """Joint distribution ``r[i, j]`` over letter pairs.

    Rows index the letter under the first PMF's condition, columns the
    second. Marginals are derived from the cells.
    """

    __slots__ = ("_cells",)

    def __init__(self, cells):
        arr = np.array(cells, dtype=np.float64)
        if arr.ndim != 2 or arr.size == 0:
            raise BdivError("PARSE_ERROR", f"joint must be a nonempty 2-D grid, got shape {arr.shape}")
        if arr.shape[0] != arr.shape[1]:
            raise BdivError("SIZE_MISMATCH", f"joint must be square, got shape {arr.shape}")
        if np.any(arr < 0.0) or not np.all(np.isfinite(arr)):
            raise BdivError("NEGATIVE_ENTRY", "joint cells must be finite and non-negative")
        if np.any(arr > 1.0):
            raise BdivError("ENTRY_ABOVE_ONE", "joint cell exceeds 1")
        total = float(arr.sum())
        if abs(total - 1.0) > SUM_TOL:
            raise BdivError("SUM_NOT_ONE", f"joint cells sum to {total!r}")
        arr.setflags(write=False)
        self._cells = arr

    @property
    def cells(self) -> np.ndarray:
        return self._cells

    @property
    def n(self) -> int:
        return int(self._cells.shape[0])

    def first_marginal(self) -> Pmf:
        return Pmf(self._cells.sum(axis=1))

    def second_marginal(self) -> Pmf:
        return Pmf(self._cells.sum(axis=0))

    def __repr__(self) -> str:
        return f"JointPmf({self._cells.tolist()!r})"


def independent_joint(p: PmfLike, q: PmfLike) -> JointPmf:
    p, q = as_pmf(p), as_pmf(q)
    check_same_size(p, q)
    return JointPmf(np.outer(p.probs, q.probs))
