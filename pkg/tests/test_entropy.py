import math

import numpy as np
import pytest
from hypothesis import given, settings
from scipy.stats import entropy as scipy_entropy

from bdiv import (
    BdivError,
    JointPmf,
    composite_iid_entropy,
    conditional_entropy,
    cross_entropy,
    independent_joint,
    kl,
    max_entropy,
    mutual_information,
    shannon_entropy,
    uniform_pmf,
)
from bdiv.acceptance import random_pmf

from conftest import pmf_pairs, pmfs


def test_voxel_entropy():
    assert shannon_entropy(uniform_pmf(256)) == pytest.approx(8.0, abs=1e-12)


def test_degenerate_entropy_is_zero():
    assert shannon_entropy([1.0, 0.0]) == 0.0


def test_skewed_binary_entropy():
    assert shannon_entropy([0.999, 0.001]) == pytest.approx(0.0114, abs=1e-4)
    # scipy oracle
    assert shannon_entropy([0.999, 0.001]) == pytest.approx(0.011407757737461135, abs=1e-12)


def test_five_letter_entropy_is_2_02():
    # printed elsewhere as 2.0999; term-by-term evaluation says otherwise
    q = [0.45, 0.20, 0.15, 0.15, 0.05]
    direct = -math.fsum(x * math.log2(x) for x in q)
    assert shannon_entropy(q) == pytest.approx(direct, abs=1e-12)
    assert shannon_entropy(q) == pytest.approx(2.0200, abs=1e-4)


@pytest.mark.parametrize("n, expected", [(1, 0.0), (2, 1.0), (256, 8.0)])
def test_max_entropy(n, expected):
    assert max_entropy(n) == expected


@pytest.mark.parametrize("h, count, expected", [(8, 30, 240), (0, 17, 0), (1.5, 4, 6.0)])
def test_composite_iid_entropy(h, count, expected):
    assert composite_iid_entropy(h, count) == expected


def test_composite_rejects_bad_input():
    with pytest.raises(ValueError):
        composite_iid_entropy(-1, 3)
    with pytest.raises(ValueError):
        composite_iid_entropy(1, 0)


def test_cross_entropy_examples():
    assert cross_entropy([0.5, 0.5], [0.5, 0.5]) == 1.0
    assert cross_entropy([1, 0], [0.5, 0.5]) == 1.0
    assert cross_entropy([1, 0], [0, 1]) == math.inf


def test_cross_entropy_size_mismatch():
    with pytest.raises(BdivError) as info:
        cross_entropy([1.0], [0.5, 0.5])
    assert info.value.code == "SIZE_MISMATCH"


def test_mutual_information_examples():
    assert mutual_information(independent_joint([0.3, 0.7], [0.6, 0.4])) == pytest.approx(0.0, abs=1e-15)
    assert mutual_information(JointPmf([[0.5, 0.0], [0.0, 0.5]])) == pytest.approx(1.0, abs=1e-15)
    assert mutual_information(JointPmf([[0.4, 0.1], [0.1, 0.4]])) == pytest.approx(0.27807190511263774, abs=1e-12)


def test_conditional_entropy_examples():
    j = independent_joint([0.7, 0.3], [0.2, 0.8])
    assert conditional_entropy(j) == pytest.approx(0.8812908992306927, abs=1e-12)
    assert conditional_entropy(JointPmf([[0.5, 0.0], [0.0, 0.5]])) == 0.0
    assert conditional_entropy(JointPmf([[0.4, 0.1], [0.1, 0.4]])) == pytest.approx(0.7219, abs=1e-3)


def test_entropy_bounds_random(rng):
    for _ in range(1000):
        n = int(rng.integers(1, 17))
        p = random_pmf(rng, n, zero_prob=0.3)
        h = shannon_entropy(p)
        assert 0.0 <= h <= max_entropy(n) + 1e-12
        assert h == pytest.approx(scipy_entropy(p.probs, base=2), abs=1e-12)


@given(pmf_pairs(min_n=1))
def test_cross_entropy_gibbs(pair):
    p, q = pair
    ce = cross_entropy(p, q)
    h = shannon_entropy(p)
    assert ce >= h - 1e-12
    d = kl(p, q)
    if math.isfinite(ce):
        assert math.isfinite(d)
        assert ce - h == pytest.approx(d, abs=1e-9)
    else:
        assert d == math.inf


@given(pmfs(min_n=1))
def test_cross_entropy_equals_entropy_on_diagonal(p):
    assert cross_entropy(p, p) == pytest.approx(shannon_entropy(p), abs=1e-12)


@settings(max_examples=200)
@given(pmfs(min_n=4, max_n=16))
def test_information_bounds(flat):
    n = int(math.isqrt(flat.n))
    cells = flat.probs[: n * n]
    if cells.sum() == 0:
        return
    j = JointPmf((cells / cells.sum()).reshape(n, n))
    mi = mutual_information(j)
    h = shannon_entropy(j.first_marginal())
    ce = conditional_entropy(j)
    assert mi >= 0
    assert -1e-12 <= ce <= h + 1e-12


def test_mutual_information_brute_force(rng):
    for _ in range(100):
        n = int(rng.integers(2, 6))
        r = rng.dirichlet(np.ones(n * n)).reshape(n, n)
        px, py = r.sum(axis=1), r.sum(axis=0)
        brute = math.fsum(
            r[i, j] * math.log2(r[i, j] / (px[i] * py[j])) for i in range(n) for j in range(n) if r[i, j] > 0
        )
        assert mutual_information(JointPmf(r)) == pytest.approx(brute, abs=1e-12)
