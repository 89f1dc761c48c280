"""Exhaustive k-tournament census and edge-minimality analysis.

A k-tournament assigns one of the k! orientations to each of the C(n,k)
k-subsets of the vertex set.  The census identifies a tournament with its
mixed-radix counter: subsets are taken in colexicographic order, the
orientation of a subset is the lexicographic rank of its edge tuple among
the permutations of the sorted subset, and the first subset is the most
significant digit.  That makes the space trivially partitionable into
contiguous counter ranges for parallel workers, and makes "first witness"
well defined as the witness with the smallest counter.

Because adding edges never destroys Property O, an oriented k-graph on n
vertices with Property O extends to a k-tournament with Property O by
orienting the missing subsets arbitrarily; a census over tournaments
therefore settles whether *any* oriented k-graph on n vertices has the
property.

The census engine works on order-coverage bitmasks: bit p of the mask of an
oriented subset marks the p-th linear order (lexicographic rank) as
consistent with that edge.  Walking the subsets most-significant-first
while intersecting the set of still-uncovered orders decides every
tournament of a subtree in one sweep; a tournament has Property O exactly
when no uncovered order remains, and any remaining bit unranks to a
verified violating order.  Subtrees whose uncovered orders outnumber what
the remaining subsets could possibly cover (each covers n!/k! orders) are
discarded in bulk.
"""

from __future__ import annotations

import itertools
import math
import multiprocessing
import sys
import time
from dataclasses import dataclass, field, replace
from typing import Callable

from .core import (
    BudgetExceededError,
    LinearOrder,
    OrientedHypergraph,
    check_property_o,
    colex_subsets,
    is_consistent,
    rank_permutation,
    require_valid,
)
from .constructions import min_edges_lower_bound

VisitResult = bool  # a visitor returns False to stop the enumeration


@dataclass(frozen=True)
class CensusOptions:
    """Knobs for the census operations.

    Report contents are independent of ``parallel_partitions``.  Symmetry
    pruning restricts the visitor-based enumeration to assignments that are
    lexicographically minimal under vertex relabelling (one per isomorphism
    class); it costs n! relabellings per candidate and is only worthwhile
    for small counting runs.  ``progress_interval`` > 0 emits
    "examined=... found=... elapsed=..." lines to stderr roughly every that
    many tournaments (per worker).  ``max_space_bits`` bounds the admissible
    search space: C(n,k)*log2(k!) must not exceed it.
    """

    parallel_partitions: int = 1
    symmetry_pruning: bool = False
    progress_interval: int = 0
    max_space_bits: float = 64.0


@dataclass(frozen=True)
class SearchReport:
    """Result of a census run.

    When no witness is found, ``total_enumerated`` is the full space size
    (k!)**C(n,k) (or the number of canonical forms visited under symmetry
    pruning, or 0 when the edge-count rejection applies).  When a witness is
    found by a first-witness search, ``total_enumerated`` is the witness
    counter plus one: the number of tournaments decided, independent of the
    partitioning.
    """

    n: int
    k: int
    total_enumerated: int
    property_o_found: int
    first_witness: OrientedHypergraph | None
    elapsed_seconds: float
    options: CensusOptions = field(default_factory=CensusOptions)

    def matches(self, other: "SearchReport") -> bool:
        """Equality of everything except the wall-clock time."""
        return (
            self.n == other.n
            and self.k == other.k
            and self.total_enumerated == other.total_enumerated
            and self.property_o_found == other.property_o_found
            and self.first_witness == other.first_witness
        )


@dataclass(frozen=True)
class EdgeVerdict:
    index: int
    essential: bool
    witness: LinearOrder | None


@dataclass(frozen=True)
class MinimalityReport:
    verdicts: tuple[EdgeVerdict, ...]

    @property
    def essential_count(self) -> int:
        return sum(1 for v in self.verdicts if v.essential)

    @property
    def all_essential(self) -> bool:
        return all(v.essential for v in self.verdicts)


def _check_space(n: int, k: int, options: CensusOptions) -> int:
    if k < 2 or n < k:
        raise ValueError(f"need n >= k >= 2, got n={n}, k={k}")
    subset_count = math.comb(n, k)
    bits = subset_count * math.log2(math.factorial(k))
    if bits > options.max_space_bits:
        raise BudgetExceededError(
            f"census space is (k!)^C(n,k) ~ 2^{bits:.1f}, over the "
            f"{options.max_space_bits}-bit budget"
        )
    return subset_count


def oriented_subset_tables(n: int, k: int) -> tuple[list[tuple[int, ...]], list[list[tuple[int, ...]]]]:
    """Colex subsets of {0..n-1} and, per subset, its k! oriented tuples in
    lexicographic order."""
    subsets = colex_subsets(n, k)
    oriented = [list(itertools.permutations(s)) for s in subsets]
    return subsets, oriented


def _coverage_masks(n: int, k: int) -> tuple[list[list[int]], int, list[tuple[int, ...]]]:
    """Per (subset, orientation) bitmask of consistent order ranks.

    Returns (masks, full_mask, orders).  Order rank p is the lexicographic
    rank of the ascending sequence; each linear order is consistent with
    exactly one orientation of each subset, so each mask has n!/k! bits and
    the k! masks of one subset partition the full mask.
    """
    subsets, _ = oriented_subset_tables(n, k)
    m = len(subsets)
    orders = list(itertools.permutations(range(n)))
    by_vertex: list[list[int]] = [[] for _ in range(n)]
    for t, s in enumerate(subsets):
        for v in s:
            by_vertex[v].append(t)
    fact_k = math.factorial(k)
    masks = [[0] * fact_k for _ in range(m)]
    for p, perm in enumerate(orders):
        sequences: list[list[int]] = [[] for _ in range(m)]
        for v in perm:
            for t in by_vertex[v]:
                sequences[t].append(v)
        bit = 1 << p
        for t in range(m):
            masks[t][rank_permutation(sequences[t])] |= bit
    full = (1 << len(orders)) - 1
    per_edge = len(orders) // fact_k
    for t in range(m):
        combined = 0
        for o in range(fact_k):
            if masks[t][o].bit_count() != per_edge:
                raise RuntimeError("internal error: bad coverage mask popcount")
            combined |= masks[t][o]
        if combined != full:
            raise RuntimeError("internal error: subset orientations do not cover")
    return masks, full, orders


def _census_unit(args) -> tuple[int, int, int | None]:
    """Walk the census counter range of one partition.

    ``args`` is (n, k, prefix_depth, prefix_lo, prefix_hi, stop_first,
    progress_interval).  Returns (enumerated, found, first_witness_counter).
    In stop_first mode the walk ends at the partition's first witness and
    ``enumerated`` only covers what was decided before it.
    """
    n, k, prefix_depth, prefix_lo, prefix_hi, stop_first, progress_interval = args
    masks, full, _ = _coverage_masks(n, k)
    m = len(masks)
    fact_k = math.factorial(k)
    not_masks = [[full ^ mask for mask in row] for row in masks]
    per_cover = math.factorial(n) // fact_k
    total_orders = math.factorial(n)
    pow_fk = [fact_k**i for i in range(m + 1)]
    budgets = [(m - d) * per_cover for d in range(m + 1)]
    last = m - 1

    enumerated = 0
    found = 0
    first_counter: int | None = None
    start_time = time.perf_counter()
    next_report = progress_interval if progress_interval > 0 else None

    def report_progress() -> None:
        nonlocal next_report
        if next_report is not None and enumerated >= next_report:
            elapsed = time.perf_counter() - start_time
            print(
                f"examined={enumerated} found={found} elapsed={elapsed:.1f}",
                file=sys.stderr,
                flush=True,
            )
            while next_report <= enumerated:
                next_report += progress_interval

    def rec(d: int, uncovered: int, base_counter: int) -> bool:
        """Returns True to stop the walk (witness found in stop_first mode)."""
        nonlocal enumerated, found, first_counter
        row = not_masks[d]
        if d == last:
            if uncovered.bit_count() > per_cover:
                enumerated += fact_k
                report_progress()
                return False
            for o in range(fact_k):
                if uncovered & row[o] == 0:
                    found += 1
                    if first_counter is None:
                        first_counter = base_counter + o
                    if stop_first:
                        return True
            enumerated += fact_k
            report_progress()
            return False
        step = pow_fk[m - 1 - d]
        budget = budgets[d + 1]
        prunable = budget < total_orders
        for o in range(fact_k):
            shrunk = uncovered & row[o]
            if shrunk == 0:
                if stop_first:
                    found += 1
                    first_counter = base_counter + o * step
                    return True
                found += step
                enumerated += step
                if first_counter is None:
                    first_counter = base_counter + o * step
                report_progress()
            elif prunable and shrunk.bit_count() > budget:
                enumerated += step
                report_progress()
            else:
                if rec(d + 1, shrunk, base_counter + o * step):
                    return True
        return False

    depth = min(prefix_depth, m)
    suffix_weight = pow_fk[m - depth]
    for prefix in range(prefix_lo, prefix_hi):
        digits = []
        rest = prefix
        for level in range(depth):
            power = pow_fk[depth - 1 - level]
            digit, rest = divmod(rest, power)
            digits.append(digit)

        uncovered = full
        base_counter = prefix * suffix_weight
        witness_here = False
        for d, o in enumerate(digits):
            uncovered &= not_masks[d][o]
            if uncovered == 0:
                # every completion of this prefix has Property O; the
                # smallest counter among them is the all-zero suffix
                if stop_first:
                    found += 1
                    first_counter = base_counter
                else:
                    found += suffix_weight
                    enumerated += suffix_weight
                    if first_counter is None:
                        first_counter = base_counter
                witness_here = True
                break
        if witness_here:
            if stop_first:
                break
            continue
        if depth == m:
            enumerated += 1
            continue
        if rec(depth, uncovered, base_counter):
            break

    return enumerated, found, first_counter


def _tournament_from_counter(n: int, k: int, counter: int) -> OrientedHypergraph:
    subsets, oriented = oriented_subset_tables(n, k)
    fact_k = math.factorial(k)
    digits = []
    for _ in range(len(subsets)):
        counter, digit = divmod(counter, fact_k)
        digits.append(digit)
    digits.reverse()
    edges = tuple(oriented[t][d] for t, d in enumerate(digits))
    return OrientedHypergraph(k, n, edges)


def census_property_o(
    n: int,
    k: int,
    options: CensusOptions | None = None,
    *,
    stop_at_first: bool = True,
) -> SearchReport:
    """Sweep every k-tournament on n vertices for Property O.

    With ``stop_at_first`` the sweep ends at the smallest-counter witness;
    otherwise every tournament is decided and ``property_o_found`` is the
    exact count.  Partitions are contiguous counter ranges, so the report is
    identical for any ``parallel_partitions``.
    """
    options = options or CensusOptions()
    subset_count = _check_space(n, k, options)
    fact_k = math.factorial(k)
    space = fact_k**subset_count
    start = time.perf_counter()

    partitions = max(1, options.parallel_partitions)
    prefix_depth = 0
    while fact_k**prefix_depth < partitions and prefix_depth < subset_count:
        prefix_depth += 1
    prefix_count = fact_k**prefix_depth
    bounds = [prefix_count * i // partitions for i in range(partitions + 1)]
    tasks = [
        (n, k, prefix_depth, lo, hi, stop_at_first, options.progress_interval)
        for lo, hi in zip(bounds, bounds[1:])
        if lo < hi
    ]

    results: list[tuple[int, int, int | None]] = []
    if len(tasks) == 1:
        results.append(_census_unit(tasks[0]))
    else:
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(processes=min(len(tasks), multiprocessing.cpu_count())) as pool:
            if stop_at_first:
                for result in pool.imap(_census_unit, tasks):
                    results.append(result)
                    if result[2] is not None:
                        pool.terminate()
                        break
            else:
                results = pool.map(_census_unit, tasks)

    witness_counters = [r[2] for r in results if r[2] is not None]
    elapsed = time.perf_counter() - start
    if stop_at_first:
        if witness_counters:
            counter = witness_counters[0]
            return SearchReport(
                n=n,
                k=k,
                total_enumerated=counter + 1,
                property_o_found=1,
                first_witness=_tournament_from_counter(n, k, counter),
                elapsed_seconds=elapsed,
                options=options,
            )
        total = sum(r[0] for r in results)
        if total != space:
            raise RuntimeError(
                f"internal error: census decided {total} tournaments, expected {space}"
            )
        return SearchReport(
            n=n,
            k=k,
            total_enumerated=total,
            property_o_found=0,
            first_witness=None,
            elapsed_seconds=elapsed,
            options=options,
        )

    total = sum(r[0] for r in results)
    found = sum(r[1] for r in results)
    if total != space:
        raise RuntimeError(
            f"internal error: census decided {total} tournaments, expected {space}"
        )
    first = min(witness_counters) if witness_counters else None
    return SearchReport(
        n=n,
        k=k,
        total_enumerated=total,
        property_o_found=found,
        first_witness=(
            _tournament_from_counter(n, k, first) if first is not None else None
        ),
        elapsed_seconds=elapsed,
        options=options,
    )


def _relabel_tables(
    n: int, k: int
) -> list[list[list[tuple[int, int]]]]:
    """For each non-identity vertex permutation, the (subset, orientation)
    image table used by the canonical-form check."""
    subsets, oriented = oriented_subset_tables(n, k)
    subset_index = {s: t for t, s in enumerate(subsets)}
    fact_k = math.factorial(k)
    tables = []
    for rho in itertools.permutations(range(n)):
        if rho == tuple(range(n)):
            continue
        table: list[list[tuple[int, int]]] = []
        for t, s in enumerate(subsets):
            row = []
            for o in range(fact_k):
                image = tuple(rho[v] for v in oriented[t][o])
                t2 = subset_index[tuple(sorted(image))]
                row.append((t2, rank_permutation(image)))
            table.append(row)
        tables.append(table)
    return tables


def enumerate_tournaments(
    n: int,
    k: int,
    visitor: Callable[[OrientedHypergraph], VisitResult],
    options: CensusOptions | None = None,
) -> SearchReport:
    """Visit every k-tournament on n vertices in counter order.

    The visitor receives each tournament as an :class:`OrientedHypergraph`
    and returns False to stop.  With symmetry pruning only assignments that
    are lexicographically minimal under vertex relabelling are visited, one
    per isomorphism class.  This enumeration materialises every tournament
    and is meant for small spaces; the Property O census proper goes through
    :func:`census_property_o`.
    """
    options = options or CensusOptions()
    subset_count = _check_space(n, k, options)
    _, oriented = oriented_subset_tables(n, k)
    fact_k = math.factorial(k)
    tables = _relabel_tables(n, k) if options.symmetry_pruning else []

    start = time.perf_counter()
    visited = 0
    next_report = options.progress_interval if options.progress_interval > 0 else None
    for digits in itertools.product(range(fact_k), repeat=subset_count):
        if options.symmetry_pruning:
            canonical = True
            for table in tables:
                image = [0] * subset_count
                for t, o in enumerate(digits):
                    t2, o2 = table[t][o]
                    image[t2] = o2
                if tuple(image) < digits:
                    canonical = False
                    break
            if not canonical:
                continue
        visited += 1
        tournament = OrientedHypergraph(
            k, n, tuple(oriented[t][o] for t, o in enumerate(digits))
        )
        if next_report is not None and visited >= next_report:
            elapsed = time.perf_counter() - start
            print(
                f"examined={visited} found=0 elapsed={elapsed:.1f}",
                file=sys.stderr,
                flush=True,
            )
            while next_report <= visited:
                next_report += options.progress_interval
        if visitor(tournament) is False:
            break
    return SearchReport(
        n=n,
        k=k,
        total_enumerated=visited,
        property_o_found=0,
        first_witness=None,
        elapsed_seconds=time.perf_counter() - start,
        options=options,
    )


def tournament_census(n: int, k: int, options: CensusOptions | None = None) -> SearchReport:
    """Full visitor-based census with a per-tournament Property O check.

    Honours symmetry pruning; counts every (canonical) tournament with
    Property O and records the first one found.  Only sensible for small
    spaces; cross-checks :func:`census_property_o` in the tests.
    """
    options = options or CensusOptions()
    found = 0
    first: OrientedHypergraph | None = None

    def visit(tournament: OrientedHypergraph) -> bool:
        nonlocal found, first
        if check_property_o(tournament, method="backtracking").holds:
            found += 1
            if first is None:
                first = tournament
        return True

    report = enumerate_tournaments(n, k, visit, options)
    return replace(report, property_o_found=found, first_witness=first)


def prove_vertex_lower_bound(
    n: int, k: int, options: CensusOptions | None = None
) -> SearchReport:
    """Decide whether any oriented k-graph on n vertices has Property O.

    ``property_o_found`` is 0 exactly when no such graph exists, because a
    Property O graph would extend to a Property O tournament.  When
    C(n,k) <= k!, every n-vertex oriented k-graph falls below the k!+1 edge
    lower bound, so the census is skipped entirely and the report shows
    total_enumerated=0.  Otherwise the counter-ordered sweep stops at the
    first witness.
    """
    options = options or CensusOptions()
    if k < 2 or n < k:
        raise ValueError(f"need n >= k >= 2, got n={n}, k={k}")
    if math.comb(n, k) <= min_edges_lower_bound(k) - 1:
        return SearchReport(
            n=n,
            k=k,
            total_enumerated=0,
            property_o_found=0,
            first_witness=None,
            elapsed_seconds=0.0,
            options=options,
        )
    return census_property_o(n, k, options, stop_at_first=True)


def violating_order_for_counter(n: int, k: int, counter: int) -> LinearOrder | None:
    """A violating order of the counter's tournament, or None if it has
    Property O; used to spot-check census verdicts."""
    tournament = _tournament_from_counter(n, k, counter)
    cert = check_property_o(tournament, method="backtracking")
    return cert.violating_order


def edge_minimality(
    graph: OrientedHypergraph, *, max_vertices: int = 12
) -> MinimalityReport:
    """Classify each edge as essential or redundant for Property O.

    The input must have Property O.  An edge is redundant when the graph
    minus that edge still has Property O; an essential edge's verdict
    carries a violating order of the reduced graph as a witness.
    """
    require_valid(graph)
    if not check_property_o(graph, max_vertices=max_vertices).holds:
        raise ValueError("edge minimality is only defined for Property O inputs")
    verdicts = []
    for i in range(len(graph.edges)):
        reduced = OrientedHypergraph(
            graph.k, graph.n, graph.edges[:i] + graph.edges[i + 1 :]
        )
        cert = check_property_o(reduced, max_vertices=max_vertices)
        if cert.holds:
            verdicts.append(EdgeVerdict(index=i, essential=False, witness=None))
        else:
            order = cert.violating_order
            assert order is not None
            if any(is_consistent(e, order) for e in reduced.edges):
                raise RuntimeError("internal error: witness order is not violating")
            verdicts.append(EdgeVerdict(index=i, essential=True, witness=order))
    return MinimalityReport(verdicts=tuple(verdicts))
