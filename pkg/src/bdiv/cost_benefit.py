"""Benefit of a process step: alphabet compression minus potential distortion."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Union

from bdiv.divergence import DivergenceKind, Family, evaluate, kl
from bdiv.entropy import max_entropy, shannon_entropy
from bdiv.errors import BdivError
from bdiv.prob_core import Pmf, PmfLike, as_pmf

BOUNDED_FAMILIES = (Family.JS, Family.NEW_COMMUTATIVE, Family.NEW_NONCOMMUTATIVE)


@dataclass(frozen=True)
class ProcessStep:
    """Input alphabet Z_i, output alphabet Z_{i+1}, and the reconstruction Z'_i of the input."""

    input_pmf: Pmf
    output_pmf: Pmf
    reconstruction_pmf: Pmf

    def __post_init__(self):
        for name in ("input_pmf", "output_pmf", "reconstruction_pmf"):
            object.__setattr__(self, name, as_pmf(getattr(self, name)))
        if self.reconstruction_pmf.n != self.input_pmf.n:
            raise BdivError(
                "SIZE_MISMATCH",
                f"reconstruction has {self.reconstruction_pmf.n} letters, input has {self.input_pmf.n}",
            )


def alphabet_compression(step: ProcessStep) -> float:
    return shannon_entropy(step.input_pmf) - shannon_entropy(step.output_pmf)


def benefit_kl(step: ProcessStep) -> float:
    """Original unbounded benefit; ``-inf`` when the KL term is singular."""
    pd = kl(step.reconstruction_pmf, step.input_pmf)
    if math.isinf(pd):
        return -math.inf
    return alphabet_compression(step) - pd


def bounded_distortion(step: ProcessStep, kind: DivergenceKind) -> float:
    """``H_max(Z_i) * D(Z'_i || Z_i)`` for one of the [0, 1]-bounded measures.

    Scaling uses the maximum entropy of the input alphabet, not its actual
    entropy, so a zero-entropy input can still register full distortion.
    """
    if kind.family not in BOUNDED_FAMILIES:
        raise BdivError("UNSUPPORTED_KIND", f"{kind.name} cannot fill the bounded distortion slot")
    h_max = max_entropy(step.input_pmf.n)
    return h_max * evaluate(kind, step.reconstruction_pmf, step.input_pmf)


def benefit_bounded(step: ProcessStep, kind: DivergenceKind) -> float:
    return alphabet_compression(step) - bounded_distortion(step, kind)


def knowledge_worth(baseline_pd: float, group_pd: float) -> float:
    """Distortion a group avoids relative to the uninformed baseline."""
    if not (math.isfinite(baseline_pd) and math.isfinite(group_pd)):
        raise ValueError("knowledge worth needs finite distortions")
    return baseline_pd - group_pd


@dataclass(frozen=True)
class Scenario:
    name: str
    ground_truth: Pmf
    candidates: dict[str, Pmf] = field(default_factory=dict)

    def __post_init__(self):
        gt = as_pmf(self.ground_truth)
        cands = {label: as_pmf(p) for label, p in self.candidates.items()}
        for label, p in cands.items():
            if p.n != gt.n:
                raise BdivError("SIZE_MISMATCH", f"candidate {label!r} has {p.n} letters, ground truth {gt.n}")
        object.__setattr__(self, "ground_truth", gt)
        object.__setattr__(self, "candidates", cands)

    @classmethod
    def from_dict(cls, data: dict) -> "Scenario":
        try:
            return cls(
                name=str(data["name"]),
                ground_truth=as_pmf(data["ground_truth"]),
                candidates={str(k): as_pmf(v) for k, v in data["candidates"].items()},
            )
        except (KeyError, TypeError, AttributeError) as exc:
            raise BdivError("PARSE_ERROR", f"malformed scenario: {exc}") from None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "ground_truth": self.ground_truth.tolist(),
            "candidates": {k: v.tolist() for k, v in self.candidates.items()},
        }


BUNDLED_SCENARIOS = ("scenario1", "scenario2", "scenario3", "scenario4")


def load_scenario(source: Union[str, Path]) -> Scenario:
    """Load a scenario from a JSON file, or by bundled name (``scenario1`` ... ``scenario4``)."""
    path = Path(source)
    if path.exists():
        text = path.read_text()
    else:
        stem = path.name[:-5] if path.name.endswith(".json") else path.name
        if stem not in BUNDLED_SCENARIOS:
            raise BdivError("PARSE_ERROR", f"no such scenario file: {source}")
        text = resources.files("bdiv.data").joinpath(f"{stem}.json").read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BdivError("PARSE_ERROR", f"invalid JSON in {source}: {exc}") from None
    return Scenario.from_dict(data)


def evaluate_scenario(s: Scenario, kind: DivergenceKind) -> dict[str, float]:
    """Distortion ``D(candidate || ground_truth)`` for every candidate, in file order."""
    return {label: evaluate(kind, p, s.ground_truth) for label, p in s.candidates.items()}
