import json
import math

import numpy as np
import pytest

from bdiv import BdivError, DivergenceKind, Pmf, kl, max_entropy, uniform_pmf
from bdiv.acceptance import random_pmf
from bdiv.cost_benefit import (
    ProcessStep,
    Scenario,
    alphabet_compression,
    benefit_bounded,
    benefit_kl,
    bounded_distortion,
    evaluate_scenario,
    knowledge_worth,
    load_scenario,
)

BOUNDED = [
    DivergenceKind.js(),
    DivergenceKind.new_commutative(1),
    DivergenceKind.new_commutative(2),
    DivergenceKind.new_noncommutative(1),
    DivergenceKind.new_noncommutative(2),
]


def test_alphabet_compression():
    assert alphabet_compression(ProcessStep(uniform_pmf(256), uniform_pmf(2), uniform_pmf(256))) == pytest.approx(7.0)
    p = Pmf([0.3, 0.7])
    assert alphabet_compression(ProcessStep(p, p, p)) == 0.0
    assert alphabet_compression(ProcessStep([1, 0], uniform_pmf(2), [1, 0])) == -1.0


def test_step_size_mismatch():
    with pytest.raises(BdivError) as info:
        ProcessStep([0.5, 0.5], [1.0], [1.0])
    assert info.value.code == "SIZE_MISMATCH"


class TestBenefitKL:
    def test_zero_distortion(self):
        step = ProcessStep([0.2, 0.8], [1.0], [0.2, 0.8])
        assert benefit_kl(step) == alphabet_compression(step)

    def test_table_distortion(self):
        step = ProcessStep([0.99, 0.01], [0.5, 0.5], [0.01, 0.99])
        assert benefit_kl(step) == pytest.approx(alphabet_compression(step) - 6.50, abs=0.01)

    def test_singular(self):
        assert benefit_kl(ProcessStep([0, 1], [1.0], [1, 0])) == -math.inf


class TestBenefitBounded:
    def test_zero_distortion(self):
        step = ProcessStep([0.2, 0.3, 0.5], [1.0], [0.2, 0.3, 0.5])
        for kind in BOUNDED:
            assert benefit_bounded(step, kind) == alphabet_compression(step)
            assert benefit_kl(step) == alphabet_compression(step)

    def test_legend_paradox(self):
        step = ProcessStep([1, 0], [1, 0], [0, 1])
        for kind in BOUNDED:
            assert bounded_distortion(step, kind) == 1.0
            assert benefit_bounded(step, kind) == -1.0

    @pytest.mark.parametrize("kind", [DivergenceKind.kl(), DivergenceKind.minkowski(2), DivergenceKind.scaled_kl(0.3)])
    def test_unsupported(self, kind):
        with pytest.raises(BdivError) as info:
            benefit_bounded(ProcessStep([1, 0], [1, 0], [0, 1]), kind)
        assert info.value.code == "UNSUPPORTED_KIND"

    def test_finite_and_floor_random(self, rng):
        for _ in range(2000):
            n = int(rng.integers(2, 17))
            step = ProcessStep(
                random_pmf(rng, n, 0.3),
                random_pmf(rng, int(rng.integers(1, 17)), 0.3),
                random_pmf(rng, n, 0.3),
            )
            ac = alphabet_compression(step)
            for kind in BOUNDED:
                b = benefit_bounded(step, kind)
                assert math.isfinite(b)
                assert b >= ac - max_entropy(n) - 1e-12

    def test_max_entropy_scaling_for_larger_alphabets(self):
        step = ProcessStep([1, 0, 0, 0], [1.0], [0, 1, 0, 0])
        assert bounded_distortion(step, DivergenceKind.js()) == pytest.approx(2.0)


@pytest.mark.parametrize(
    "baseline, group, expected",
    [(6.50, 0.00, 6.50), (6.50, 1.12, 5.38), (13.28, 0.05, 13.23)],
)
def test_knowledge_worth(baseline, group, expected):
    assert knowledge_worth(baseline, group) == pytest.approx(expected, abs=1e-12)


def test_knowledge_worth_requires_finite():
    with pytest.raises(ValueError):
        knowledge_worth(math.inf, 1.0)


@pytest.mark.parametrize(
    "name, expected",
    [
        ("scenario1", [6.50, 0.00, 1.12]),
        ("scenario2", [13.28, 0.05, 3.11]),
        ("scenario3", [2.54, 0.06, 2.54]),
        ("scenario4", [9.94, 1.27, 8.50]),
    ],
)
def test_bundled_scenarios(name, expected):
    values = evaluate_scenario(load_scenario(name), DivergenceKind.kl())
    assert list(values) == ["MIP", "doctors", "patients"]
    assert list(values.values()) == pytest.approx(expected, abs=0.01)


def test_scenario4_ground_truth_orientation():
    s = load_scenario("scenario4.json")
    assert s.ground_truth.tolist() == [0.999, 0.001]
    # the mirrored orientation cannot reproduce the table
    flipped = Scenario("flipped", Pmf([0.001, 0.999]), s.candidates)
    assert evaluate_scenario(flipped, DivergenceKind.kl())["MIP"] == 0.0


def test_candidate_equal_to_ground_truth_is_zero():
    s = Scenario("x", Pmf([0.3, 0.7]), {"same": Pmf([0.3, 0.7])})
    for kind in BOUNDED + [DivergenceKind.kl()]:
        assert evaluate_scenario(s, kind)["same"] == 0.0


def test_scenario_file_round_trip(tmp_path):
    s = load_scenario("scenario2")
    path = tmp_path / "s.json"
    path.write_text(json.dumps(s.to_dict()))
    assert load_scenario(path) == s


def test_scenario_rejects_mixed_sizes():
    with pytest.raises(BdivError) as info:
        Scenario.from_dict({"name": "bad", "ground_truth": [1.0], "candidates": {"a": [0.5, 0.5]}})
    assert info.value.code == "SIZE_MISMATCH"


def test_scenario_missing_file():
    with pytest.raises(BdivError):
        load_scenario("/nonexistent/thing.json")


def test_distortion_order_is_candidate_given_truth():
    s = load_scenario("scenario1")
    assert evaluate_scenario(s, DivergenceKind.kl())["patients"] == kl([0.7, 0.3], [0.99, 0.01])
