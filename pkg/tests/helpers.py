"""Shared oracles and corpus builders.

Oracles here are computed independently of the library (brute-force
divisor sums, the classic partition DP, direct permanence recurrences)
so a library regression cannot hide behind its own code.
"""

from __future__ import annotations

import random

from sievekit.gaussseq import SequenceSpec, a_from_matrix_trace
from sievekit.qpoly import IntPoly, ZERO, q_binomial
from sievekit.semigroup import PositiveIntegers, Window

ZPOS = PositiveIntegers()


def sigma(n: int) -> int:
    return sum(d for d in range(1, n + 1) if n % d == 0)


def partition_numbers(max_n: int) -> list[int]:
    """p(1)..p(max_n) by the coin-counting DP."""
    dp = [1] + [0] * max_n
    for part in range(1, max_n + 1):
        for total in range(part, max_n + 1):
            dp[total] += dp[total - part]
    return dp[1:]


def lucas_numbers(max_n: int) -> list[int]:
    out = [1, 3]
    while len(out) < max_n:
        out.append(out[-1] + out[-2])
    return out[:max_n]


def zpos_spec(role: str, values: dict[int, int], max_rank: int) -> SequenceSpec:
    return SequenceSpec.from_mapping(ZPOS, Window(max_rank), role, values)


def sequence_corpus(max_rank: int) -> list[tuple[str, SequenceSpec]]:
    """Named role-a specs known to satisfy the sieve congruence.

    Lucas numbers, pure powers, the divisor sum and its negation, and a
    handful of seeded random matrix-trace sequences.
    """
    corpus: list[tuple[str, SequenceSpec]] = []
    lucas = lucas_numbers(max_rank)
    corpus.append(
        ("lucas", zpos_spec("a", {n: lucas[n - 1] for n in range(1, max_rank + 1)}, max_rank))
    )
    for lam in range(-3, 4):
        corpus.append(
            (
                f"power({lam})",
                zpos_spec("a", {n: lam**n for n in range(1, max_rank + 1)}, max_rank),
            )
        )
    corpus.append(
        ("sigma", zpos_spec("a", {n: sigma(n) for n in range(1, max_rank + 1)}, max_rank))
    )
    corpus.append(
        ("-sigma", zpos_spec("a", {n: -sigma(n) for n in range(1, max_rank + 1)}, max_rank))
    )
    rng = random.Random(20260817)
    for i in range(5):
        matrix = [[rng.randint(-2, 2) for _ in range(3)] for _ in range(3)]
        corpus.append((f"trace{i}", a_from_matrix_trace(matrix, Window(max_rank))))
    return corpus


def qb0(n: int, k: int) -> IntPoly:
    """q-binomial extended by zero outside 0 <= k <= n.

    Closed-form tables use this extension; the library's own corner
    conventions differ, so oracle builders must not call q_binomial raw.
    """
    if n < 0 or k < 0 or k > n:
        return ZERO
    return q_binomial(n, k)


def ordered_decomposition_count(c: dict[int, int], n: int) -> int:
    """a_n = sum over ordered (s_1..s_k) summing to n of s_1*c_{s_1}*...*c_{s_k}."""
    comp_weight = [0] * (n + 1)  # total c-weight of ordered decompositions
    comp_weight[0] = 1
    for m in range(1, n + 1):
        comp_weight[m] = sum(
            c.get(part, 0) * comp_weight[m - part] for part in range(1, m + 1)
        )
    return sum(part * c.get(part, 0) * comp_weight[n - part] for part in range(1, n + 1))


def repeated_bead_count(b: dict[int, int], n: int) -> int:
    """a_n = sum of t*b_t over divisors t of n."""
    return sum(t * b.get(t, 0) for t in range(1, n + 1) if n % t == 0)
