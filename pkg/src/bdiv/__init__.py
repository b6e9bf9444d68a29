"""Bounded divergence measures for information-theoretic cost-benefit analysis."""

from bdiv.errors import BdivError
from bdiv.prob_core import (
    ClampPolicy,
    JointPmf,
    Pmf,
    clamp_pmf,
    independent_joint,
    make_pmf,
    uniform_pmf,
)
from bdiv.entropy import (
    composite_iid_entropy,
    conditional_entropy,
    cross_entropy,
    max_entropy,
    mutual_information,
    shannon_entropy,
)
from bdiv.divergence import (
    DivergenceKind,
    d_ncm,
    d_new,
    evaluate,
    js,
    kl,
    minkowski,
    scaled_kl,
    upper_bound,
)

__version__ = "0.1.0"

__all__ = [
    "BdivError",
    "ClampPolicy",
    "DivergenceKind",
    "JointPmf",
    "Pmf",
    "clamp_pmf",
    "composite_iid_entropy",
    "conditional_entropy",
    "cross_entropy",
    "d_ncm",
    "d_new",
    "evaluate",
    "independent_joint",
    "js",
    "kl",
    "make_pmf",
    "max_entropy",
    "minkowski",
    "mutual_information",
    "scaled_kl",
    "shannon_entropy",
    "uniform_pmf",
    "upper_bound",
]
