"""Huffman and literal entropy codes used to check the coding-based boundedness argument."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from bdiv.entropy import shannon_entropy
from bdiv.errors import BdivError
from bdiv.prob_core import Pmf, PmfLike, as_pmf, check_same_size


@dataclass(frozen=True)
class CodeTable:
    """One binary codeword per letter, indexed like the PMF it was built from."""

    codewords: tuple[str, ...]

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.codewords)

    @property
    def max_length(self) -> int:
        return max(self.lengths)

    def kraft_sum(self) -> float:
        return math.fsum(2.0 ** -length for length in self.lengths)

    def is_prefix_free(self) -> bool:
        words = sorted(self.codewords)
        # after sorting, a prefix sits immediately before some word it prefixes
        return all(not b.startswith(a) for a, b in zip(words, words[1:]))

    def to_text(self) -> str:
        return "".join(f"{i}\t{c}\n" for i, c in enumerate(self.codewords))


def huffman_code(q: PmfLike) -> CodeTable:
    """Build a Huffman code for ``q``.

    Ties are broken by the smallest letter index contained in each node;
    merged nodes inherit the minimum index of their children. The popped
    node with the lower index becomes the ``0`` branch. Zero-probability
    letters are ordinary weight-0 leaves and therefore merge first.
    """
    q = as_pmf(q)
    n = q.n
    if n == 1:
        return CodeTable(("",))

    # heap entries: (weight, min_letter_index, node); node is a letter index or a (left, right) pair
    heap = [(float(w), i, i) for i, w in enumerate(q.probs)]
    heapq.heapify(heap)
    while len(heap) > 1:
        w1, i1, a = heapq.heappop(heap)
        w2, i2, b = heapq.heappop(heap)
        left, right = (a, b) if i1 < i2 else (b, a)
        heapq.heappush(heap, (w1 + w2, min(i1, i2), (left, right)))

    codes = [""] * n
    stack = [(heap[0][2], "")]
    while stack:
        node, prefix = stack.pop()
        if isinstance(node, tuple):
            stack.append((node[0], prefix + "0"))
            stack.append((node[1], prefix + "1"))
        else:
            codes[node] = prefix
    return CodeTable(tuple(codes))


def literal_lengths(q: PmfLike) -> tuple[int, ...]:
    """Per-letter ``ceil(log2(1 / q_i))``; undefined for zero-probability letters."""
    q = as_pmf(q)
    if np.any(q.probs == 0):
        raise BdivError("ZERO_PROBABILITY_LETTER", "literal code length is undefined for q_i = 0")
    out = []
    for x in q.probs:
        raw = -math.log2(x)
        length = math.ceil(raw)
        # exact powers of two can land a hair above an integer
        if length - raw > 1 - 1e-12:
            length -= 1
        out.append(max(int(length), 0))
    return tuple(out)


def average_length(lengths: Sequence[int] | CodeTable, p: PmfLike) -> float:
    p = as_pmf(p)
    if isinstance(lengths, CodeTable):
        lengths = lengths.lengths
    if len(lengths) != p.n:
        raise BdivError("SIZE_MISMATCH", f"{len(lengths)} lengths for {p.n} letters")
    return math.fsum(pi * li for pi, li in zip(p.probs.tolist(), lengths))


def conceptual_cross_entropy(p: PmfLike, q: PmfLike) -> float:
    """Expected Huffman(q) codeword length when letters actually follow ``p``.

    Never exceeds ``n - 1`` because no Huffman codeword is longer than that.
    """
    p, q = as_pmf(p), as_pmf(q)
    check_same_size(p, q)
    return average_length(huffman_code(q), p)


def conceptual_kl_bound(p: PmfLike, q: PmfLike) -> float:
    p, q = as_pmf(p), as_pmf(q)
    return conceptual_cross_entropy(p, q) - shannon_entropy(p)


def dyadic_epsilon_pmf(n: int, epsilon: float) -> Pmf:
    """Worst-case PMF whose Huffman code has a codeword of length ``n - 1``.

    ``q[n-1] = epsilon``, ``q[j-1] = (1 - epsilon) / 2**j`` for ``j = 2 .. n-1``
    and ``q[0] = (1 - epsilon) / 2 + (1 - epsilon) / 2**(n-1)``.
    """
    if n < 2:
        raise BdivError("EMPTY", f"n must be >= 2, got {n}")
    if not (0.0 < epsilon < 2.0 ** -(n - 1)):
        raise BdivError("EPSILON_OUT_OF_RANGE", f"need 0 < epsilon < 2^-{n - 1}, got {epsilon!r}")
    rest = 1.0 - epsilon
    probs = [rest / 2 + rest * 2.0 ** -(n - 1)]
    probs += [rest * 2.0 ** -j for j in range(2, n)]
    probs.append(epsilon)
    return Pmf(probs)
