"""Executable acceptance checks shared by the ``verify`` command and the test suite."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from bdiv.analysis import LinearGrid, SweepSpec, clamp_sigma_for_bound, find_crossing, load_mcda, mcda_sum, sweep
from bdiv.coding import (
    average_length,
    conceptual_cross_entropy,
    dyadic_epsilon_pmf,
    huffman_code,
    literal_lengths,
)
from bdiv.cost_benefit import (
    ProcessStep,
    benefit_bounded,
    bounded_distortion,
    evaluate_scenario,
    knowledge_worth,
    load_scenario,
)
from bdiv.divergence import DivergenceKind, d_ncm, d_new, js, minkowski
from bdiv.entropy import shannon_entropy
from bdiv.prob_core import Pmf

SEED = 20210701
TABLE_TOL = 0.01


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d}. {self.name}: {self.detail} ({self.seconds:.2f}s)"


def random_pmf(rng: np.random.Generator, n: int, zero_prob: float = 0.0) -> Pmf:
    """Dirichlet(1) draw; with probability ``zero_prob`` some letters are zeroed out."""
    x = rng.dirichlet(np.ones(n))
    if zero_prob and rng.random() < zero_prob:
        keep = rng.integers(1, n + 1)
        mask = np.zeros(n, dtype=bool)
        mask[rng.choice(n, size=keep, replace=False)] = True
        x = np.where(mask, x, 0.0)
        x = x / x.sum()
    return Pmf(x)


def random_pairs(count: int, n_lo: int, n_hi: int, zero_prob: float = 0.3, seed: int = SEED):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(n_lo, n_hi + 1))
        yield random_pmf(rng, n, zero_prob), random_pmf(rng, n, zero_prob)


def _close(values, expected, tol) -> bool:
    return len(values) == len(expected) and all(abs(a - b) <= tol for a, b in zip(values, expected))


def _fmt(values) -> str:
    return "[" + ", ".join(f"{v:.4f}" for v in values) + "]"


def check_scenarios_1_2() -> tuple[bool, str]:
    kind = DivergenceKind.kl()
    got1 = list(evaluate_scenario(load_scenario("scenario1"), kind).values())
    got2 = list(evaluate_scenario(load_scenario("scenario2"), kind).values())
    ok = _close(got1, [6.50, 0.00, 1.12], TABLE_TOL) and _close(got2, [13.28, 0.05, 3.11], TABLE_TOL)
    return ok, f"S1={_fmt(got1)} S2={_fmt(got2)}"


def check_scenarios_3_4() -> tuple[bool, str]:
    kind = DivergenceKind.kl()
    s4 = load_scenario("scenario4")
    got3 = list(evaluate_scenario(load_scenario("scenario3"), kind).values())
    got4 = list(evaluate_scenario(s4, kind).values())
    ok = (
        _close(got3, [2.54, 0.06, 2.54], TABLE_TOL)
        and _close(got4, [9.94, 1.27, 8.50], TABLE_TOL)
        and s4.ground_truth.tolist() == [0.999, 0.001]
    )
    return ok, f"S3={_fmt(got3)} S4={_fmt(got4)}"


def check_knowledge_worth() -> tuple[bool, str]:
    kind = DivergenceKind.kl()
    s1 = evaluate_scenario(load_scenario("scenario1"), kind)
    s2 = evaluate_scenario(load_scenario("scenario2"), kind)
    got = [
        knowledge_worth(s1["MIP"], s1["doctors"]),
        knowledge_worth(s1["MIP"], s1["patients"]),
        knowledge_worth(s2["MIP"], s2["doctors"]),
        knowledge_worth(s2["MIP"], s2["patients"]),
    ]
    return _close(got, [6.50, 5.38, 13.23, 10.17], TABLE_TOL), _fmt(got)


def check_coding_examples() -> tuple[bool, str]:
    q2 = Pmf([0.999, 0.001])
    q5 = Pmf([0.45, 0.20, 0.15, 0.15, 0.05])
    h2, h5 = huffman_code(q2).lengths, huffman_code(q5).lengths
    l2, l5 = literal_lengths(q2), literal_lengths(q5)
    avgs = [average_length(h2, q2), average_length(l2, q2), average_length(h5, q5), average_length(l5, q5)]
    ent = [shannon_entropy(q2), shannon_entropy(q5)]
    ok = (
        h2 == (1, 1)
        and h5 == (1, 3, 3, 3, 3)
        and l2 == (1, 10)
        and l5 == (2, 3, 3, 3, 5)
        and abs(avgs[0] - 1.0) <= 1e-3
        and abs(avgs[1] - 1.009) <= 1e-3
        and round(avgs[2], 3) == 2.1
        and round(avgs[3], 3) == 2.65
        and ent[0] <= avgs[0] < ent[0] + 1
        and ent[1] <= avgs[2] < ent[1] + 1
        and ent[1] < avgs[2] < avgs[3] < ent[1] + 1
    )
    return ok, f"huffman {h2} {h5}, literal {l2} {l5}, averages {_fmt(avgs)}, H {_fmt(ent)}"


def check_boundedness(count: int = 10_000) -> tuple[bool, str]:
    kinds = [
        DivergenceKind.js(),
        DivergenceKind.new_commutative(1),
        DivergenceKind.new_commutative(2),
        DivergenceKind.new_noncommutative(1),
        DivergenceKind.new_noncommutative(2),
    ]
    slack = 1e-12
    worst = 0.0
    failures = 0
    for p, q in random_pairs(count, 2, 16):
        vals = [js(p, q), d_new(p, q, 1), d_new(p, q, 2), d_ncm(p, q, 1), d_ncm(p, q, 2)]
        if any(not (-slack <= v <= 1 + slack) for v in vals):
            failures += 1
        worst = max(worst, *vals)
        for k in (1.0, 2.0, 200.0):
            if not minkowski(p, q, k) <= 2 ** (1 / k) + slack:
                failures += 1
        step = ProcessStep(q, p, p)
        for kind in kinds:
            if not math.isfinite(benefit_bounded(step, kind)):
                failures += 1
    return failures == 0, f"{count} pairs, {failures} violations, max bounded value {worst:.6f}"


def check_huffman_bounds(count: int = 1_000) -> tuple[bool, str]:
    rng = np.random.default_rng(SEED + 1)
    failures = 0
    for _ in range(count):
        n = int(rng.integers(2, 13))
        q = random_pmf(rng, n)
        if np.any(q.probs == 0):
            continue
        table = huffman_code(q)
        if table.max_length > n - 1:
            failures += 1
        worst = int(np.argmax(table.lengths))
        p_worst = Pmf(np.eye(n)[worst])
        p_rand = random_pmf(rng, n, zero_prob=0.3)
        cce = max(conceptual_cross_entropy(p_worst, q), conceptual_cross_entropy(p_rand, q))
        if cce > n - 1 + 1e-12:
            failures += 1
    tight = {}
    for n in range(3, 9):
        tight[n] = huffman_code(dyadic_epsilon_pmf(n, 2.0 ** -(n + 1))).max_length
    ok = failures == 0 and all(v == n - 1 for n, v in tight.items())
    return ok, f"{count} PMFs, {failures} violations, dyadic max lengths {tight}"


def check_averaging_identity(count: int = 10_000) -> tuple[bool, str]:
    worst = 0.0
    for p, q in random_pairs(count, 2, 16):
        for k in (1.0, 2.0):
            gap = abs(d_new(p, q, k) - 0.5 * (d_ncm(p, q, k) + d_ncm(q, p, k)))
            worst = max(worst, gap)
    return worst <= 1e-12, f"max deviation {worst:.2e} over {count} pairs"


def check_binary_sweep() -> tuple[bool, str]:
    measures = [
        DivergenceKind.kl(),
        DivergenceKind.scaled_kl(0.3),
        DivergenceKind.js(),
        DivergenceKind.new_commutative(1),
        DivergenceKind.new_commutative(2),
        DivergenceKind.new_noncommutative(1),
        DivergenceKind.new_noncommutative(2),
        DivergenceKind.minkowski(2),
        DivergenceKind.minkowski(200),
    ]
    alphas = tuple(round(0.1 * i, 1) for i in range(11))
    grid = LinearGrid(0.0, 1.0, 0.01)
    rows = sweep(SweepSpec(tuple(measures), alphas, grid))
    expected_rows = len(measures) * len(alphas) * len(grid.points())
    zero_at_alpha0 = all(r.value == 0.0 for r in rows if r.alpha == 0.0)
    crossing = find_crossing(DivergenceKind.kl(), 1.0, 1.0)
    js_near_zero = [r.value for r in sweep(SweepSpec((DivergenceKind.js(),), (1.0,), LinearGrid(0.0, 0.0, 1.0)))]
    js_tiny = sweep(SweepSpec((DivergenceKind.js(),), (1.0,), LinearGrid(0.0, 1e-9, 1e-9)))
    ok = (
        len(rows) == expected_rows
        and zero_at_alpha0
        and abs(crossing - 0.2228) <= 1e-3
        and js_near_zero == [1.0]
        and abs(js_tiny[-1].value - 1.0) < 1e-6
    )
    return ok, (
        f"rows {len(rows)}/{expected_rows}, alpha=0 all zero: {zero_at_alpha0}, "
        f"KL crossing p1={crossing:.6f}, JS(p1=0)={js_near_zero[0]:.6f}, JS(p1=1e-9)={js_tiny[-1].value:.9f}"
    )


def check_legend_paradox() -> tuple[bool, str]:
    step = ProcessStep(Pmf([1.0, 0.0]), Pmf([1.0, 0.0]), Pmf([0.0, 1.0]))
    kinds = [
        DivergenceKind.js(),
        DivergenceKind.new_commutative(1),
        DivergenceKind.new_commutative(2),
        DivergenceKind.new_noncommutative(1),
        DivergenceKind.new_noncommutative(2),
    ]
    terms = {k.name: bounded_distortion(step, k) for k in kinds}
    return all(v == 1.0 for v in terms.values()), ", ".join(f"{k}={v!r}" for k, v in terms.items())


def check_mcda() -> tuple[bool, str]:
    result = mcda_sum(load_mcda())
    order = ["js", "cond_entropy", "dnew_k1", "dnew_k2", "dncm_k1", "dncm_k2", "minkowski_k2", "minkowski_k200"]
    sums = [result.totals[m] for m in order]
    ok = (
        sums == [24, 14, 20, 24, 20, 24, 14, 15]
        and result.eliminated_by_sum == {"cond_entropy", "minkowski_k2", "minkowski_k200"}
        and result.eliminated_critical == {"kl_scaled_0.3"}
    )
    return ok, f"sums {sums}, eliminated by sum {sorted(result.eliminated_by_sum)}, at criterion 1 {sorted(result.eliminated_critical)}"


def check_clamp_sigma() -> tuple[bool, str]:
    a = clamp_sigma_for_bound(10.0 / 3.0)
    b = clamp_sigma_for_bound(1.0)
    return abs(a - 0.0655) <= 1e-3 and abs(b - 0.2228) <= 1e-3, f"bound 10/3 -> {a:.6f}, bound 1 -> {b:.6f}"


CHECKS: list[tuple[int, str, Callable[[], tuple[bool, str]], float]] = [
    (1, "scenarios 1-2 KL distortions", check_scenarios_1_2, 1.0),
    (2, "scenarios 3-4 KL distortions", check_scenarios_3_4, 1.0),
    (3, "knowledge worth", check_knowledge_worth, math.inf),
    (4, "coding examples", check_coding_examples, math.inf),
    (5, "boundedness suite", check_boundedness, 30.0),
    (6, "Huffman length and cross-entropy bounds", check_huffman_bounds, math.inf),
    (7, "averaging identity", check_averaging_identity, math.inf),
    (8, "binary sweep checks", check_binary_sweep, math.inf),
    (9, "legend paradox", check_legend_paradox, math.inf),
    (10, "MCDA sums and elimination", check_mcda, math.inf),
    (11, "clamp sigma for bound", check_clamp_sigma, math.inf),
]


def run_check(number: int) -> CheckResult:
    for num, name, fn, budget in CHECKS:
        if num == number:
            start = time.perf_counter()
            try:
                ok, detail = fn()
            except Exception as exc:  # a crashing check is a failing check
                ok, detail = False, f"raised {type(exc).__name__}: {exc}"
            elapsed = time.perf_counter() - start
            if elapsed > budget:
                ok = False
                detail += f"; exceeded {budget:g}s budget"
            return CheckResult(num, name, ok, detail, elapsed)
    raise KeyError(number)


def run_all() -> list[CheckResult]:
    return [run_check(num) for num, *_ in CHECKS]
