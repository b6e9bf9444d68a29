"""Candidate distortion measures and their upper bounds."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from bdiv.entropy import conditional_entropy
from bdiv.errors import BdivError
from bdiv.prob_core import JointPmf, PmfLike, as_pmf, check_same_size


class Family(str, Enum):
    KL = "kl"
    SCALED_KL = "kl_scaled"
    JS = "js"
    NEW_COMMUTATIVE = "dnew"
    NEW_NONCOMMUTATIVE = "dncm"
    MINKOWSKI = "minkowski"
    COND_ENTROPY = "cond_entropy"


_PARAMETRIC = {Family.SCALED_KL, Family.NEW_COMMUTATIVE, Family.NEW_NONCOMMUTATIVE, Family.MINKOWSKI}


def _fmt_param(x: float) -> str:
    return format(x, "g")


@dataclass(frozen=True)
class DivergenceKind:
    """Measure family plus its parameter (scale for scaled KL, ``k`` otherwise)."""

    family: Family
    param: Optional[float] = None

    def __post_init__(self):
        fam = Family(self.family)
        object.__setattr__(self, "family", fam)
        if fam in _PARAMETRIC:
            if self.param is None or not math.isfinite(self.param) or self.param <= 0:
                code = "NONPOSITIVE_SCALE" if fam is Family.SCALED_KL else "NONPOSITIVE_K"
                raise BdivError(code, f"{fam.value} needs a positive parameter, got {self.param!r}")
            object.__setattr__(self, "param", float(self.param))
        elif self.param is not None:
            raise BdivError("PARSE_ERROR", f"{fam.value} takes no parameter")

    @classmethod
    def kl(cls) -> "DivergenceKind":
        return cls(Family.KL)

    @classmethod
    def scaled_kl(cls, scale: float) -> "DivergenceKind":
        return cls(Family.SCALED_KL, scale)

    @classmethod
    def js(cls) -> "DivergenceKind":
        return cls(Family.JS)

    @classmethod
    def new_commutative(cls, k: float) -> "DivergenceKind":
        return cls(Family.NEW_COMMUTATIVE, k)

    @classmethod
    def new_noncommutative(cls, k: float) -> "DivergenceKind":
        return cls(Family.NEW_NONCOMMUTATIVE, k)

    @classmethod
    def minkowski(cls, k: float) -> "DivergenceKind":
        return cls(Family.MINKOWSKI, k)

    @classmethod
    def cond_entropy(cls) -> "DivergenceKind":
        return cls(Family.COND_ENTROPY)

    @property
    def name(self) -> str:
        if self.family is Family.SCALED_KL:
            return f"kl_scaled_{_fmt_param(self.param)}"
        if self.family in _PARAMETRIC:
            return f"{self.family.value}_k{_fmt_param(self.param)}"
        return self.family.value

    @property
    def entropic(self) -> bool:
        return self.family is not Family.MINKOWSKI

    @property
    def unit(self) -> str:
        return "bits" if self.entropic else "unitless"

    def __str__(self) -> str:
        return self.name


_NAME_RE = re.compile(
    r"^(?:(?P<bare>kl|js|cond_entropy)"
    r"|kl_scaled_(?P<scale>[^_]+)"
    r"|(?P<fam>dnew|dncm|minkowski)_k(?P<k>.+))$"
)


def parse_kind(name: str, k: Optional[float] = None, scale: Optional[float] = None) -> DivergenceKind:
    """Parse a serialized measure name such as ``dnew_k2`` or ``kl_scaled_0.3``.

    The bare family names ``kl_scaled``, ``dnew``, ``dncm`` and ``minkowski``
    are accepted when the parameter is supplied separately.
    """
    name = name.strip()
    if name == "kl_scaled" and scale is not None:
        return DivergenceKind(Family.SCALED_KL, scale)
    if name in ("dnew", "dncm", "minkowski") and k is not None:
        return DivergenceKind(Family(name), k)
    m = _NAME_RE.match(name)
    if m is None:
        raise BdivError("UNKNOWN_MEASURE", f"unknown measure {name!r}")
    try:
        if m.group("bare"):
            return DivergenceKind(Family(m.group("bare")))
        if m.group("scale"):
            return DivergenceKind(Family.SCALED_KL, float(m.group("scale")))
        return DivergenceKind(Family(m.group("fam")), float(m.group("k")))
    except ValueError as exc:
        if isinstance(exc, BdivError):
            raise
        raise BdivError("UNKNOWN_MEASURE", f"bad parameter in measure {name!r}") from None


def _pair(p: PmfLike, q: PmfLike):
    p, q = as_pmf(p), as_pmf(q)
    check_same_size(p, q)
    return p.probs, q.probs


def _check_k(k: float) -> float:
    if not (k > 0) or not math.isfinite(k):
        raise BdivError("NONPOSITIVE_K", f"k must be a positive real, got {k!r}")
    return float(k)


def _kl_arrays(pp: np.ndarray, qq: np.ndarray) -> float:
    support = pp > 0
    if np.any(qq[support] == 0):
        return math.inf
    ps, qs = pp[support], qq[support]
    # log difference, not log ratio: subnormal q would overflow the ratio
    val = float(np.sum(ps * (np.log2(ps) - np.log2(qs))))
    return max(val, 0.0)


def kl(p: PmfLike, q: PmfLike) -> float:
    """``sum p_i log2(p_i / q_i)``; ``inf`` when some ``p_i > 0`` meets ``q_i = 0``."""
    return _kl_arrays(*_pair(p, q))


def scaled_kl(p: PmfLike, q: PmfLike, scale: float) -> float:
    if not (scale > 0):
        raise BdivError("NONPOSITIVE_SCALE", f"scale must be positive, got {scale!r}")
    return scale * kl(p, q)


def js(p: PmfLike, q: PmfLike) -> float:
    pp, qq = _pair(p, q)
    m = 0.5 * (pp + qq)
    val = 0.5 * (_kl_arrays(pp, m) + _kl_arrays(qq, m))
    return min(val, 1.0)


def _log_gap(pp: np.ndarray, qq: np.ndarray, k: float) -> np.ndarray:
    return np.log2(np.abs(pp - qq) ** k + 1.0)


def d_new(p: PmfLike, q: PmfLike, k: float) -> float:
    """Commutative bounded divergence ``1/2 sum (p_i + q_i) log2(|p_i - q_i|^k + 1)``."""
    pp, qq = _pair(p, q)
    k = _check_k(k)
    return 0.5 * float(np.sum((pp + qq) * _log_gap(pp, qq, k)))


def d_ncm(p: PmfLike, q: PmfLike, k: float) -> float:
    """Non-commutative variant ``sum p_i log2(|p_i - q_i|^k + 1)``."""
    pp, qq = _pair(p, q)
    k = _check_k(k)
    return float(np.sum(pp * _log_gap(pp, qq, k)))


def minkowski(p: PmfLike, q: PmfLike, k: float) -> float:
    pp, qq = _pair(p, q)
    k = _check_k(k)
    d = np.abs(pp - qq)
    top = d.max()
    if top == 0.0:
        return 0.0
    # factor out the largest gap so large k does not underflow
    return float(top * np.sum((d / top) ** k) ** (1.0 / k))


def evaluate(
    kind: DivergenceKind,
    p: PmfLike,
    q: PmfLike,
    joint: Optional[JointPmf] = None,
) -> float:
    fam = kind.family
    if fam is Family.KL:
        return kl(p, q)
    if fam is Family.SCALED_KL:
        return scaled_kl(p, q, kind.param)
    if fam is Family.JS:
        return js(p, q)
    if fam is Family.NEW_COMMUTATIVE:
        return d_new(p, q, kind.param)
    if fam is Family.NEW_NONCOMMUTATIVE:
        return d_ncm(p, q, kind.param)
    if fam is Family.MINKOWSKI:
        return minkowski(p, q, kind.param)
    if fam is Family.COND_ENTROPY:
        if joint is None:
            raise BdivError("MISSING_JOINT", "conditional entropy needs a joint distribution")
        pp, qq = _pair(p, q)
        if joint.n != pp.size:
            raise BdivError("SIZE_MISMATCH", f"joint is {joint.n}x{joint.n}, PMFs have {pp.size} letters")
        cells = joint.cells
        if not (np.allclose(cells.sum(axis=1), pp, rtol=0, atol=1e-9)
                and np.allclose(cells.sum(axis=0), qq, rtol=0, atol=1e-9)):
            raise BdivError("MARGINAL_MISMATCH", "joint marginals do not reproduce the two PMFs")
        return conditional_entropy(joint)
    raise BdivError("UNKNOWN_MEASURE", str(kind))


def upper_bound(kind: DivergenceKind, n: int) -> float:
    """Supremum of the measure over all PMF pairs on ``n >= 2`` letters."""
    if n < 2:
        raise ValueError(f"upper bounds are defined for n >= 2, got {n}")
    fam = kind.family
    if fam in (Family.KL, Family.SCALED_KL):
        return math.inf
    if fam is Family.MINKOWSKI:
        return 2.0 ** (1.0 / kind.param)
    if fam is Family.COND_ENTROPY:
        return math.log2(n)
    return 1.0
