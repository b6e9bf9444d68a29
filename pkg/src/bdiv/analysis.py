"""Binary curve sweeps, threshold solvers and the MCDA scoring engine."""

from __future__ import annotations

import json
import math
import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Callable, Iterator, Optional, Sequence, Union

import numpy as np

from bdiv.divergence import DivergenceKind, Family, evaluate
from bdiv.errors import BdivError

DEFAULT_ALPHAS = tuple(round(0.1 * i, 1) for i in range(11))


@dataclass(frozen=True)
class LinearGrid:
    lo: float = 0.0
    hi: float = 1.0
    step: float = 0.001

    def __post_init__(self):
        if not (self.step > 0) or self.hi < self.lo:
            raise BdivError("INVALID_GRID", f"bad linear grid {self}")
        if self.lo < 0 or self.hi > 1:
            raise BdivError("INVALID_GRID", "linear grid must stay inside [0, 1]")

    def points(self) -> np.ndarray:
        count = int(round((self.hi - self.lo) / self.step)) + 1
        return np.linspace(self.lo, self.hi, count)


@dataclass(frozen=True)
class LogGrid:
    lo: float = 1e-10
    hi: float = 0.1
    points_per_decade: int = 20

    def __post_init__(self):
        if not (0 < self.lo <= self.hi <= 1):
            raise BdivError("INVALID_GRID", "log grid bounds must satisfy 0 < lo <= hi <= 1")
        if self.points_per_decade < 1:
            raise BdivError("INVALID_GRID", "points_per_decade must be >= 1")

    def points(self) -> np.ndarray:
        decades = math.log10(self.hi) - math.log10(self.lo)
        count = max(int(round(decades * self.points_per_decade)) + 1, 1)
        if count == 1:
            return np.array([self.lo])
        return np.logspace(math.log10(self.lo), math.log10(self.hi), count)


Grid = Union[LinearGrid, LogGrid]


def parse_grid(text: str) -> Grid:
    """``linear:lo:hi:step`` or ``log:lo:hi:points_per_decade``."""
    parts = text.split(":")
    try:
        if parts[0] == "linear" and len(parts) == 4:
            return LinearGrid(float(parts[1]), float(parts[2]), float(parts[3]))
        if parts[0] == "log" and len(parts) == 4:
            return LogGrid(float(parts[1]), float(parts[2]), int(parts[3]))
    except ValueError:
        pass
    raise BdivError("INVALID_GRID", f"cannot parse grid {text!r}")


@dataclass(frozen=True)
class SweepSpec:
    measures: tuple[DivergenceKind, ...]
    alphas: tuple[float, ...] = DEFAULT_ALPHAS
    grid: Grid = field(default_factory=LinearGrid)

    def __post_init__(self):
        object.__setattr__(self, "measures", tuple(self.measures))
        object.__setattr__(self, "alphas", tuple(float(a) for a in self.alphas))
        if not self.measures:
            raise BdivError("INVALID_GRID", "sweep needs at least one measure")
        if not self.alphas or any(not (0.0 <= a <= 1.0) for a in self.alphas):
            raise BdivError("INVALID_ALPHA", f"alphas must be a nonempty subset of [0, 1]: {self.alphas}")
        for m in self.measures:
            if m.family is Family.COND_ENTROPY:
                raise BdivError("MISSING_JOINT", "cond_entropy cannot be swept: the joint distribution is not determined by p1 and q1")


@dataclass(frozen=True)
class SweepRow:
    measure: str
    alpha: float
    p1: float
    q1: float
    value: float


def mirrored_q1(p1: float, alpha: float) -> float:
    """``q1 = (1 - alpha) p1 + alpha (1 - p1)``: alpha = 1 mirrors P completely."""
    return min(max((1.0 - alpha) * p1 + alpha * (1.0 - p1), 0.0), 1.0)


def binary_value(kind: DivergenceKind, p1: float, q1: float) -> float:
    return evaluate(kind, (p1, 1.0 - p1), (q1, 1.0 - q1))


def iter_sweep(spec: SweepSpec) -> Iterator[SweepRow]:
    grid = spec.grid.points().tolist()
    for kind in spec.measures:
        name = kind.name
        for alpha in spec.alphas:
            for p1 in grid:
                q1 = mirrored_q1(p1, alpha)
                yield SweepRow(name, alpha, p1, q1, binary_value(kind, p1, q1))


def sweep(spec: SweepSpec) -> list[SweepRow]:
    """Rows ordered by measure (as listed), then alpha (as listed), then p1 ascending."""
    return list(iter_sweep(spec))


def bisect_decreasing(
    f: Callable[[float], float],
    target: float,
    lo: float,
    hi: float,
    max_iter: int = 200,
) -> float:
    """Root of ``f(x) = target`` for ``f`` decreasing on ``[lo, hi]`` with ``f(lo) > target >= f(hi)``."""
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if f(mid) > target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


CROSSING_LO = 1e-15


def find_crossing(measure: DivergenceKind, alpha: float, threshold: float) -> float:
    """The ``p1`` in ``(0, 0.5]`` below which the binary sweep value exceeds ``threshold``."""
    if not (threshold > 0):
        raise ValueError("threshold must be positive")

    def f(p1: float) -> float:
        return binary_value(measure, p1, mirrored_q1(p1, alpha))

    if not f(CROSSING_LO) > threshold:
        raise BdivError("NO_CROSSING", f"{measure.name} never exceeds {threshold} on (0, 0.5] at alpha={alpha}")
    if f(0.5) > threshold:
        raise BdivError("NO_CROSSING", f"{measure.name} exceeds {threshold} over all of (0, 0.5] at alpha={alpha}")
    return bisect_decreasing(f, threshold, CROSSING_LO, 0.5)


def worst_case_clamped_kl(sigma: float) -> float:
    """Largest binary KL once both PMFs are confined to ``[sigma, 1 - sigma]``."""
    return (1.0 - 2.0 * sigma) * math.log2((1.0 - sigma) / sigma)


def clamp_sigma_for_bound(bound: float) -> float:
    """Smallest clamp ``sigma`` keeping every binary KL at or below ``bound``."""
    if not (bound > 0):
        raise ValueError("bound must be positive")
    lo = sys.float_info.min
    if worst_case_clamped_kl(lo) <= bound:
        return lo
    return bisect_decreasing(worst_case_clamped_kl, bound, lo, 0.5)


def unusable_fraction(sigma: float) -> float:
    """Share of [0, 1] excluded by clamping to ``[sigma, 1 - sigma]``."""
    return 2.0 * sigma


@dataclass(frozen=True)
class Criterion:
    name: str
    importance: str


@dataclass(frozen=True)
class McdaTable:
    criteria: tuple[Criterion, ...]
    scores: dict[str, tuple[int, ...]]
    # survivors scoring below this fraction of the best total are eliminated
    sum_fraction: float = 0.75

    def __post_init__(self):
        object.__setattr__(self, "criteria", tuple(self.criteria))
        clean = {}
        for measure, row in self.scores.items():
            row = tuple(row)
            if len(row) != len(self.criteria):
                raise BdivError("SIZE_MISMATCH", f"{measure}: {len(row)} scores for {len(self.criteria)} criteria")
            for s in row:
                if isinstance(s, bool) or not isinstance(s, (int, np.integer)) or not 0 <= s <= 5:
                    raise BdivError("PARSE_ERROR", f"{measure}: score {s!r} is not an integer in [0, 5]")
            clean[measure] = tuple(int(s) for s in row)
        object.__setattr__(self, "scores", clean)
        if not 0.0 <= self.sum_fraction <= 1.0:
            raise BdivError("PARSE_ERROR", "sum_fraction must lie in [0, 1]")

    @classmethod
    def from_dict(cls, data: dict) -> "McdaTable":
        try:
            criteria = [Criterion(str(c["name"]), str(c.get("importance", c.get("importance_label", ""))))
                        for c in data["criteria"]]
            return cls(criteria, dict(data["scores"]), float(data.get("sum_fraction", 0.75)))
        except (KeyError, TypeError, AttributeError) as exc:
            raise BdivError("PARSE_ERROR", f"malformed MCDA table: {exc}") from None

    def reordered(self, order: Sequence[int]) -> "McdaTable":
        return McdaTable(
            tuple(self.criteria[i] for i in order),
            {m: tuple(row[i] for i in order) for m, row in self.scores.items()},
            self.sum_fraction,
        )


@dataclass(frozen=True)
class McdaResult:
    totals: dict[str, int]
    eliminated_critical: frozenset[str]
    eliminated_by_sum: frozenset[str]

    @property
    def eliminated(self) -> frozenset[str]:
        return self.eliminated_critical | self.eliminated_by_sum

    @property
    def survivors(self) -> list[str]:
        return [m for m in self.totals if m not in self.eliminated]


def load_mcda(source: Union[str, Path, None] = None) -> McdaTable:
    """Load an MCDA score table; with no argument, the bundled five-criterion table."""
    if source is None or (not Path(source).exists() and Path(source).stem in ("table3", "mcda_table3")):
        text = resources.files("bdiv.data").joinpath("mcda_table3.json").read_text()
    else:
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise BdivError("PARSE_ERROR", f"cannot read {source}: {exc}") from None
    try:
        return McdaTable.from_dict(json.loads(text))
    except json.JSONDecodeError as exc:
        raise BdivError("PARSE_ERROR", f"invalid JSON: {exc}") from None


def mcda_sum(table: McdaTable) -> McdaResult:
    """Unweighted totals plus two elimination rules.

    A zero on any ``critical`` criterion eliminates a measure outright.
    Among the rest, totals below ``sum_fraction`` times the best total are
    eliminated.
    """
    totals = {m: sum(row) for m, row in table.scores.items()}
    critical = [i for i, c in enumerate(table.criteria) if c.importance.lower() == "critical"]
    out_critical = frozenset(m for m, row in table.scores.items() if any(row[i] == 0 for i in critical))
    rest = {m: t for m, t in totals.items() if m not in out_critical}
    best = max(rest.values(), default=0)
    out_sum = frozenset(m for m, t in rest.items() if t < table.sum_fraction * best)
    return McdaResult(totals, out_critical, out_sum)
