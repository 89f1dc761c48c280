"""Seeded random k-tournaments and Property O rate estimation.

All randomness comes from one documented 64-bit construction so that every
result is bit-identical across platforms and worker counts:

    mix64(x): the splitmix64 finaliser
        x ^= x >> 30;  x *= 0xBF58476D1CE4E5B9   (mod 2^64)
        x ^= x >> 27;  x *= 0x94D049BB133111EB   (mod 2^64)
        x ^= x >> 31
    value_at(seed, i) = mix64((seed + (i + 1) * 0x9E3779B97F4A7C15) mod 2^64)

A random tournament draws, for the subset with colex index i, the
orientation ``value_at(seed, i) mod k!`` and unranks it to the permutation
of the sorted subset with that lexicographic rank (k! is at most a few
hundred here, so the modulo bias of below 2**-54 is irrelevant; there is no
rejection loop).  Trial t of a rate estimate uses the derived seed
``value_at(seed, t)``, which makes trials independent of execution order
and of how they are assigned to workers.
"""

from __future__ import annotations

import math
import multiprocessing
from dataclasses import dataclass

from .core import (
    BudgetExceededError,
    OrientedHypergraph,
    check_property_o,
    colex_subsets,
    unrank_permutation,
)

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def mix64(x: int) -> int:
    """The splitmix64 finaliser on 64-bit integers."""
    x &= _MASK64
    x ^= x >> 30
    x = (x * 0xBF58476D1CE4E5B9) & _MASK64
    x ^= x >> 27
    x = (x * 0x94D049BB133111EB) & _MASK64
    x ^= x >> 31
    return x


def value_at(seed: int, index: int) -> int:
    """The index-th value of the splitmix64 stream started at ``seed``."""
    return mix64((seed + (index + 1) * _GOLDEN) & _MASK64)


@dataclass(frozen=True)
class TrialSummary:
    """Aggregate of a Monte Carlo run over random tournaments."""

    n: int
    k: int
    trials: int
    successes: int
    rate: float
    standard_error: float
    seed: int


def random_tournament(
    n: int, k: int, seed: int, *, max_subsets: int = 1_000_000
) -> OrientedHypergraph:
    """Uniformly oriented k-tournament on n vertices, determined by the seed.

    Every k-subset (colex order) gets an independent orientation drawn from
    the documented generator; the same (n, k, seed) always produces the
    identical edge list.
    """
    if k < 2 or n < k:
        raise ValueError(f"need n >= k >= 2, got n={n}, k={k}")
    subsets = colex_subsets(n, k)
    if len(subsets) > max_subsets:
        raise BudgetExceededError(
            f"{len(subsets)} subsets exceed the {max_subsets} budget"
        )
    fact_k = math.factorial(k)
    edges = tuple(
        unrank_permutation(value_at(seed, i) % fact_k, subset)
        for i, subset in enumerate(subsets)
    )
    return OrientedHypergraph(k, n, edges)


def _count_successes(args) -> int:
    n, k, seed, start, stop = args
    successes = 0
    for t in range(start, stop):
        tournament = random_tournament(n, k, value_at(seed, t))
        if check_property_o(tournament, method="backtracking").holds:
            successes += 1
    return successes


def estimate_property_o_rate(
    n: int, k: int, trials: int, seed: int, *, jobs: int = 1
) -> TrialSummary:
    """Fraction of seeded random k-tournaments on n vertices with Property O.

    Trial t checks ``random_tournament(n, k, value_at(seed, t))`` with the
    backtracking decider.  The summary is identical for any ``jobs``: trial
    outcomes depend only on (seed, t), and the aggregation is a plain sum.
    """
    if trials < 1:
        raise ValueError(f"need at least one trial, got {trials}")
    if jobs <= 1:
        successes = _count_successes((n, k, seed, 0, trials))
    else:
        bounds = [trials * i // jobs for i in range(jobs + 1)]
        tasks = [
            (n, k, seed, lo, hi) for lo, hi in zip(bounds, bounds[1:]) if lo < hi
        ]
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(processes=min(len(tasks), multiprocessing.cpu_count())) as pool:
            successes = sum(pool.map(_count_successes, tasks))
    rate = successes / trials
    return TrialSummary(
        n=n,
        k=k,
        trials=trials,
        successes=successes,
        rate=rate,
        standard_error=math.sqrt(rate * (1.0 - rate) / trials),
        seed=seed,
    )
