"""Oriented uniform hypergraphs and the Property O decision machinery.

An oriented k-graph consists of edges that are ordered k-tuples of distinct
vertices, with at most one orientation per underlying k-element set.  A
linear order of the vertex set is written as its ascending sequence: the
tuple listing every vertex from smallest to largest.  An edge
``(x1, ..., xk)`` is consistent with an order when its vertices occupy
strictly increasing positions in that sequence, and the hypergraph has
Property O when every linear order of the vertices is consistent with at
least one edge.  An order consistent with no edge is a violating order;
exhibiting one refutes Property O.

The module provides the data model, the consistency predicate, two
independent deciders (an exhaustive lexicographic scan and a backtracking
search over order prefixes), the order-coverage histogram, and a counting
audit that classifies each edge by how many permutations of a chosen base
edge leave it consistent.  The two deciders are deliberately separate code
paths so that the test suite can cross-check them against each other.
"""

from __future__ import annotations

import itertools
import math
import multiprocessing
from dataclasses import dataclass
from typing import Mapping, Sequence

OrientedEdge = tuple[int, ...]
LinearOrder = tuple[int, ...]

PROPERTY_O = "property_o"
VIOLATED = "violated"

EXHAUSTIVE = "exhaustive"
BACKTRACKING = "backtracking"
STRUCTURED = "structured"
AUTO = "auto"

# n! enumeration is refused above this vertex count unless the caller
# explicitly raises the limit; 12! is the edge of what a desk run tolerates.
DEFAULT_MAX_VERTICES = 12

# check_property_o(method="auto") scans all n! orders up to this size and
# switches to the backtracking search beyond it.
AUTO_EXHAUSTIVE_MAX_VERTICES = 9


class BudgetExceededError(RuntimeError):
    """Raised when an operation would enumerate more than its configured budget."""


@dataclass(frozen=True)
class OrientedHypergraph:
    """An oriented k-uniform hypergraph on vertices 0..n-1.

    ``edges`` is a sequence of ordered k-tuples; the tuple order is the
    orientation.  The constructor only normalises the data to immutable
    tuples; use :func:`validate` to check the structural invariants, which
    deliberately reports problems as data instead of raising, so that broken
    inputs (e.g. from a file) can be diagnosed.
    """

    k: int
    n: int
    edges: tuple[OrientedEdge, ...]

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ValueError(f"uniformity must be at least 2, got {self.k}")
        if self.n < 0:
            raise ValueError(f"vertex count must be non-negative, got {self.n}")
        object.__setattr__(
            self, "edges", tuple(tuple(int(v) for v in e) for e in self.edges)
        )

    def underlying_sets(self) -> list[frozenset[int]]:
        return [frozenset(e) for e in self.edges]


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    violations: tuple[str, ...] = ()


@dataclass(frozen=True)
class VerificationCertificate:
    """Outcome of a Property O check.

    ``orders_examined`` counts complete linear orders the decider looked at:
    for the exhaustive method it is the number of permutations scanned (all
    n! when Property O holds); for the backtracking method it is the number
    of complete violating-order candidates produced (0 or 1), with the real
    work metric recorded in ``nodes_expanded`` (vertex placements tried).
    """

    verdict: str
    method: str
    violating_order: LinearOrder | None
    orders_examined: int
    nodes_expanded: int | None = None

    @property
    def holds(self) -> bool:
        return self.verdict == PROPERTY_O


@dataclass(frozen=True)
class CoverageHistogram:
    """How many linear orders are consistent with exactly c edges.

    ``counts[c]`` is the number of orders with exactly ``c`` consistent
    edges.  Conservation: the counts sum to n!, and the weighted sum
    ``sum(c * counts[c])`` equals ``len(edges) * n!/k!`` because every
    oriented edge is consistent with exactly n!/k! orders.
    """

    counts: Mapping[int, int]

    def total_orders(self) -> int:
        return sum(self.counts.values())

    def weighted_total(self) -> int:
        return sum(c * m for c, m in self.counts.items())


@dataclass(frozen=True)
class AuditReport:
    """Result of :func:`lower_bound_audit`.

    ``class_sizes[i]`` counts the base-edge permutations sigma whose
    sigma-order (the k permuted base vertices first, every other vertex
    after them in ascending label order) leaves edge i consistent.  A
    nonzero class size is always k!/m! where m is the edge's intersection
    size with the base edge, which is what makes the divisibility audit of
    the k!-edge counting argument checkable.
    """

    class_sizes: tuple[int, ...]
    intersection_sizes: tuple[int, ...]
    total: int
    residue: int
    min_coverage: int


# ---------------------------------------------------------------------------
# permutation utilities shared by the deciders, the census and the sampler
# ---------------------------------------------------------------------------


def unrank_permutation(rank: int, items: Sequence[int]) -> tuple[int, ...]:
    """Return the permutation of ``items`` with the given lexicographic rank.

    ``items`` is taken in the given order as the reference ordering; rank 0
    is ``tuple(items)`` itself.
    """
    pool = list(items)
    size = len(pool)
    total = math.factorial(size)
    if not 0 <= rank < total:
        raise ValueError(f"rank {rank} out of range for {size} items")
    out = []
    f = total
    for remaining in range(size, 0, -1):
        f //= remaining
        index, rank = divmod(rank, f)
        out.append(pool.pop(index))
    return tuple(out)


def rank_permutation(sequence: Sequence[int]) -> int:
    """Lexicographic rank of ``sequence`` among permutations of its sorted values."""
    pool = sorted(sequence)
    if len(set(pool)) != len(pool):
        raise ValueError("sequence has repeated values")
    rank = 0
    f = math.factorial(len(pool))
    for v in sequence:
        f //= len(pool)
        rank += pool.index(v) * f
        pool.remove(v)
    return rank


def colex_subsets(n: int, k: int) -> list[tuple[int, ...]]:
    """All k-subsets of {0..n-1} in colexicographic order."""
    return sorted(itertools.combinations(range(n), k), key=lambda s: s[::-1])


def next_permutation(seq: list[int]) -> bool:
    """Advance ``seq`` in place to its lexicographic successor.

    Returns False (leaving ``seq`` unchanged) when ``seq`` is already the
    last permutation.
    """
    i = len(seq) - 2
    while i >= 0 and seq[i] >= seq[i + 1]:
        i -= 1
    if i < 0:
        return False
    j = len(seq) - 1
    while seq[j] <= seq[i]:
        j -= 1
    seq[i], seq[j] = seq[j], seq[i]
    seq[i + 1 :] = reversed(seq[i + 1 :])
    return True


# ---------------------------------------------------------------------------
# structural operations
# ---------------------------------------------------------------------------


def validate(graph: OrientedHypergraph) -> ValidationResult:
    """Check the structural invariants, reporting every violation found.

    Violations are data, not failures: repeated vertices inside an edge,
    out-of-range vertex indices, and two edges sharing the same underlying
    k-element set are each reported with the offending edge indices.
    """
    violations: list[str] = []
    seen: dict[frozenset[int], int] = {}
    for i, edge in enumerate(graph.edges):
        if len(edge) != graph.k:
            violations.append(f"edge {i}: has {len(edge)} vertices, expected {graph.k}")
        if len(set(edge)) != len(edge):
            violations.append(f"edge {i}: repeated vertex in edge")
        for v in edge:
            if not 0 <= v < graph.n:
                violations.append(f"edge {i}: vertex {v} out of range for n={graph.n}")
        key = frozenset(edge)
        if len(set(edge)) == len(edge):
            if key in seen:
                violations.append(
                    f"edges {seen[key]} and {i}: duplicate underlying set {sorted(key)}"
                )
            else:
                seen[key] = i
    return ValidationResult(ok=not violations, violations=tuple(violations))


def require_valid(graph: OrientedHypergraph) -> None:
    result = validate(graph)
    if not result.ok:
        raise ValueError("invalid hypergraph: " + "; ".join(result.violations))


def is_consistent(edge: Sequence[int], order: Sequence[int]) -> bool:
    """True iff the edge's vertices appear in increasing positions of ``order``.

    ``order`` is the ascending sequence of a linear order; ``order[0]`` is
    the smallest element.
    """
    position = {v: i for i, v in enumerate(order)}
    previous = -1
    for v in edge:
        try:
            p = position[v]
        except KeyError:
            raise ValueError(f"vertex {v} not covered by the order") from None
        if p < previous:
            return False
        previous = p
    return True


def support_restriction(graph: OrientedHypergraph) -> OrientedHypergraph:
    """Restrict to the vertices that occur in some edge, compacting indices.

    The relabelling preserves the relative order of the surviving vertices.
    Property O is unchanged: consistency depends only on the relative order
    of each edge's own vertices, and every order of the support extends to
    an order of the full vertex set.
    """
    support = sorted({v for e in graph.edges for v in e})
    mapping = {v: i for i, v in enumerate(support)}
    edges = tuple(tuple(mapping[v] for v in e) for e in graph.edges)
    return OrientedHypergraph(graph.k, len(support), edges)


def reverse(graph: OrientedHypergraph) -> OrientedHypergraph:
    """Reverse every edge tuple, keeping the vertex set.

    An edge is consistent with an order iff its reversal is consistent with
    the reversed order, and order reversal is a bijection on linear orders,
    so the reversal has Property O iff the input does.
    """
    return OrientedHypergraph(
        graph.k, graph.n, tuple(tuple(elem for elem in e[::-1]) for e in graph.edges)
    )


def relabel(graph: OrientedHypergraph, mapping: Sequence[int]) -> OrientedHypergraph:
    """Apply a vertex permutation: vertex v becomes ``mapping[v]``."""
    if sorted(mapping) != list(range(graph.n)):
        raise ValueError("mapping must be a permutation of the vertex indices")
    return OrientedHypergraph(
        graph.k, graph.n, tuple(tuple(mapping[v] for v in e) for e in graph.edges)
    )


def count_consistent_orders(k: int, n: int) -> int:
    """Number of linear orders of n vertices consistent with one fixed edge.

    A fixed oriented k-edge is consistent with exactly C(n,k)*(n-k)! = n!/k!
    of the n! orders.  Computed in exact integer arithmetic.
    """
    if k < 2:
        raise ValueError(f"uniformity must be at least 2, got {k}")
    if k > n:
        raise ValueError(f"need n >= k, got k={k}, n={n}")
    return math.factorial(n) // math.factorial(k)


# ---------------------------------------------------------------------------
# deciders
# ---------------------------------------------------------------------------


def _scan_block(
    edges: tuple[OrientedEdge, ...], n: int, k: int, start: int, stop: int
) -> tuple[int, LinearOrder] | None:
    """Scan permutation ranks [start, stop) for the first violating order."""
    perm = list(unrank_permutation(start, range(n)))
    indices = tuple(range(n))
    if k == 2:
        pairs = [(e[0], e[1]) for e in edges]
        for r in range(start, stop):
            position = dict(zip(perm, indices))
            for a, b in pairs:
                if position[a] < position[b]:
                    break
            else:
                return r, tuple(perm)
            if not next_permutation(perm):
                break
        return None
    if k == 3:
        triples = [(e[0], e[1], e[2]) for e in edges]
        for r in range(start, stop):
            position = dict(zip(perm, indices))
            for a, b, c in triples:
                if position[a] < position[b] < position[c]:
                    break
            else:
                return r, tuple(perm)
            if not next_permutation(perm):
                break
        return None
    for r in range(start, stop):
        position = dict(zip(perm, indices))
        for e in edges:
            previous = -1
            for v in e:
                p = position[v]
                if p < previous:
                    break
                previous = p
            else:
                break
        else:
            return r, tuple(perm)
        if not next_permutation(perm):
            break
    return None


def _scan_block_worker(args):
    edges, n, k, start, stop = args
    return _scan_block(edges, n, k, start, stop)


def _exhaustive_search(
    graph: OrientedHypergraph, max_vertices: int, jobs: int
) -> tuple[LinearOrder | None, int]:
    """Return (first violating order or None, orders examined)."""
    n = graph.n
    if n > max_vertices:
        raise BudgetExceededError(
            f"refusing to enumerate {n}! orders (limit n <= {max_vertices}); "
            "use the backtracking method or raise max_vertices"
        )
    total = math.factorial(n)
    if not graph.edges:
        # the very first order is violating (nothing to be consistent with)
        return tuple(range(n)), 1
    if jobs <= 1 or total < 40320:
        hit = _scan_block(graph.edges, n, graph.k, 0, total)
        if hit is None:
            return None, total
        return hit[1], hit[0] + 1

    # Deterministic parallel scan: split the rank space into contiguous
    # blocks, process them in order and stop at the first block reporting a
    # violation, which is therefore the lexicographically first one overall.
    block_count = jobs * 8
    bounds = [total * i // block_count for i in range(block_count + 1)]
    tasks = [
        (graph.edges, n, graph.k, lo, hi)
        for lo, hi in zip(bounds, bounds[1:])
        if lo < hi
    ]
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(processes=jobs) as pool:
        for hit in pool.imap(_scan_block_worker, tasks):
            if hit is not None:
                pool.terminate()
                return hit[1], hit[0] + 1
    return None, total


def find_violating_order_exhaustive(
    graph: OrientedHypergraph,
    *,
    max_vertices: int = DEFAULT_MAX_VERTICES,
    jobs: int = 1,
) -> LinearOrder | None:
    """Lexicographically first order consistent with no edge, or None.

    Scans all n! ascending sequences in lexicographic order.  Refuses with
    :class:`BudgetExceededError` when n exceeds ``max_vertices``.
    """
    require_valid(graph)
    order, _ = _exhaustive_search(graph, max_vertices, jobs)
    return order


def _backtracking_search(
    graph: OrientedHypergraph,
) -> tuple[LinearOrder | None, int]:
    """Return (some violating order or None, placements tried).

    The order is built smallest element first.  Every edge tracks the index
    of the vertex it expects next; placing that vertex advances the edge,
    while placing any other of its vertices kills it for the current branch
    (the edge can no longer be consistent).  A fully advanced edge is
    consistent with every completion of the prefix, so the prefix is
    abandoned.  Once every edge is dead, any completion violates, and the
    remaining vertices are appended in ascending order.
    """
    n = graph.n
    edges = graph.edges
    m = len(edges)
    k = graph.k

    if m == 0:
        return tuple(range(n)), 0

    edges_of: list[list[int]] = [[] for _ in range(n)]
    for ei, e in enumerate(edges):
        for v in e:
            edges_of[v].append(ei)

    next_index = [0] * m
    alive = [True] * m
    dead_count = 0
    used = [False] * n
    prefix: list[int] = []
    nodes = 0

    def place(v: int) -> list[tuple[str, int]] | None:
        nonlocal dead_count
        changes: list[tuple[str, int]] = []
        for ei in edges_of[v]:
            if not alive[ei]:
                continue
            if edges[ei][next_index[ei]] == v:
                next_index[ei] += 1
                changes.append(("advance", ei))
                if next_index[ei] == k:
                    # edge consistent with any completion: reject this prefix
                    undo(changes)
                    return None
            else:
                alive[ei] = False
                dead_count += 1
                changes.append(("kill", ei))
        return changes

    def undo(changes: list[tuple[str, int]]) -> None:
        nonlocal dead_count
        for kind, ei in reversed(changes):
            if kind == "advance":
                next_index[ei] -= 1
            else:
                alive[ei] = True
                dead_count -= 1

    def search() -> LinearOrder | None:
        nonlocal nodes
        if dead_count == m:
            tail = [v for v in range(n) if not used[v]]
            return tuple(prefix) + tuple(tail)
        for v in range(n):
            if used[v]:
                continue
            nodes += 1
            changes = place(v)
            if changes is None:
                continue
            used[v] = True
            prefix.append(v)
            result = search()
            if result is not None:
                return result
            prefix.pop()
            used[v] = False
            undo(changes)
        return None

    return search(), nodes


def find_violating_order_backtracking(
    graph: OrientedHypergraph,
) -> LinearOrder | None:
    """Some order consistent with no edge, or None if every order has one.

    Same decision as :func:`find_violating_order_exhaustive` but without the
    n! budget; the returned order need not be the lexicographically first.
    Vertices are tried in ascending index order, so the result and the node
    count are deterministic.
    """
    require_valid(graph)
    order, _ = _backtracking_search(graph)
    return order


def check_property_o(
    graph: OrientedHypergraph,
    method: str = AUTO,
    *,
    max_vertices: int = DEFAULT_MAX_VERTICES,
    jobs: int = 1,
) -> VerificationCertificate:
    """Decide Property O and return a certificate.

    ``method`` is one of "exhaustive", "backtracking" or "auto"; auto scans
    all orders up to n = 9 and backtracks beyond that.  A "violated"
    certificate is re-checked against :func:`is_consistent` for every edge
    before being returned.
    """
    require_valid(graph)
    if method == AUTO:
        method = EXHAUSTIVE if graph.n <= AUTO_EXHAUSTIVE_MAX_VERTICES else BACKTRACKING
    if method == EXHAUSTIVE:
        order, examined = _exhaustive_search(graph, max_vertices, jobs)
        nodes = None
    elif method == BACKTRACKING:
        order, nodes = _backtracking_search(graph)
        examined = 0 if order is None else 1
    else:
        raise ValueError(f"unknown method {method!r}")

    if order is None:
        return VerificationCertificate(
            verdict=PROPERTY_O,
            method=method,
            violating_order=None,
            orders_examined=examined,
            nodes_expanded=nodes,
        )
    for e in graph.edges:
        if is_consistent(e, order):
            raise RuntimeError(
                f"internal error: edge {e} is consistent with reported "
                f"violating order {order}"
            )
    return VerificationCertificate(
        verdict=VIOLATED,
        method=method,
        violating_order=order,
        orders_examined=examined,
        nodes_expanded=nodes,
    )


# ---------------------------------------------------------------------------
# coverage statistics
# ---------------------------------------------------------------------------


def coverage_histogram(
    graph: OrientedHypergraph, *, max_vertices: int = DEFAULT_MAX_VERTICES
) -> CoverageHistogram:
    """Histogram of consistent-edge counts over all n! linear orders."""
    require_valid(graph)
    n = graph.n
    if n > max_vertices:
        raise BudgetExceededError(
            f"refusing to enumerate {n}! orders (limit n <= {max_vertices})"
        )
    indices = tuple(range(n))
    counts: dict[int, int] = {}
    edges = graph.edges
    for perm in itertools.permutations(range(n)):
        position = dict(zip(perm, indices))
        c = 0
        for e in edges:
            previous = -1
            for v in e:
                p = position[v]
                if p < previous:
                    break
                previous = p
            else:
                c += 1
        counts[c] = counts.get(c, 0) + 1

    total = sum(counts.values())
    expected_total = math.factorial(n)
    if total != expected_total:
        raise RuntimeError(
            f"internal error: histogram covers {total} orders, expected {expected_total}"
        )
    weighted = sum(c * m for c, m in counts.items())
    expected_weighted = len(edges) * (
        count_consistent_orders(graph.k, n) if n >= graph.k else 0
    )
    if weighted != expected_weighted:
        raise RuntimeError(
            f"internal error: weighted histogram total {weighted}, "
            f"expected {expected_weighted}"
        )
    return CoverageHistogram(counts=dict(sorted(counts.items())))


def lower_bound_audit(graph: OrientedHypergraph, base_edge_index: int) -> AuditReport:
    """Classify edges by consistency with the base-edge permutation orders.

    Vertices are relabelled so the base edge becomes (0, ..., k-1) and the
    remaining vertices follow in ascending original order.  For each
    permutation sigma of the base vertices, the sigma-order places the
    permuted base block first and every other vertex after it in ascending
    label order.  ``class_sizes[i]`` counts the sigma whose sigma-order
    leaves edge i consistent; each nonzero class size must equal k!/m! for
    the edge's base-intersection size m, and the base edge's own class size
    is exactly 1.
    """
    require_valid(graph)
    if not 0 <= base_edge_index < len(graph.edges):
        raise IndexError(
            f"base edge index {base_edge_index} out of range for "
            f"{len(graph.edges)} edges"
        )
    k, n = graph.k, graph.n
    base = graph.edges[base_edge_index]
    base_set = set(base)
    mapping = {v: i for i, v in enumerate(base)}
    for offset, v in enumerate(sorted(set(range(n)) - base_set)):
        mapping[v] = k + offset
    edges = [tuple(mapping[v] for v in e) for e in graph.edges]

    class_sizes = [0] * len(edges)
    min_coverage = None
    tail = tuple(range(k, n))
    for sigma in itertools.permutations(range(k)):
        order = sigma + tail
        position = {v: i for i, v in enumerate(order)}
        per_order = 0
        for i, e in enumerate(edges):
            previous = -1
            for v in e:
                p = position[v]
                if p < previous:
                    break
                previous = p
            else:
                class_sizes[i] += 1
                per_order += 1
        if min_coverage is None or per_order < min_coverage:
            min_coverage = per_order

    intersection_sizes = [len(set(e) & base_set) for e in graph.edges]
    fact_k = math.factorial(k)
    for i, size in enumerate(class_sizes):
        allowed = fact_k // math.factorial(intersection_sizes[i])
        if size not in (0, allowed):
            raise RuntimeError(
                f"internal error: class size {size} for edge {i} is neither 0 "
                f"nor {allowed}"
            )
    if class_sizes[base_edge_index] != 1:
        raise RuntimeError("internal error: base edge class size must be 1")

    total = sum(class_sizes)
    return AuditReport(
        class_sizes=tuple(class_sizes),
        intersection_sizes=tuple(intersection_sizes),
        total=total,
        residue=total % k,
        min_coverage=min_coverage if min_coverage is not None else 0,
    )
