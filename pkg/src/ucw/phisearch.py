"""Exhaustive search for the minimal maximal frequency over n-set families.

phi(n) is the minimum, over union-closed families of exactly n sets with at
least one non-empty member, of the largest element frequency. Two routes:

* :func:`phi_naive` enumerates n-subsets of P(m) in ascending numeric order,
  skipping branches whose forced pair-unions can no longer be included. It is
  the small-scale oracle.

* :func:`phi_search` proves the value by exhausting the space *below* the
  constructive upper bound min(beta(n), a(n)). Three reductions keep that
  space small: merging equal membership columns preserves the member count
  and every frequency, so only separating representatives matter; a
  separating union-closed family has an element of frequency >= |U|, so any
  family beating the bound t lives on at most t columns and can be relabeled
  into [t]; and the first chosen set can be normalized to a prefix block.
  Families are then built by closure-augmentation: member sets are chosen in
  ascending canonical order, each insertion is closed under union, and a
  branch dies when the closure overruns n sets, some frequency or the
  distinct-column count reaches the bound, or the frequency headroom cannot
  absorb the members still owed. Every family reached this way is reached
  exactly once, so node counts are schedule-independent and worker processes
  can split the root branches without sharing state.

The witness reported with phi(n) is the balanced-deletion family when the
bound is tight (it always is on the verified range) or the lexicographically
smallest canonical improving family otherwise.
"""

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import permutations
from multiprocessing import get_context

from .constructions import beta, conway, renaud_family
from .core import DomainError, Family, canonical_key

PHI_SEARCH_MAX_N = 12
PHI_NAIVE_MAX_N = 6
DEFAULT_NODE_BUDGET = 20_000_000


@dataclass(frozen=True)
class SearchConfig:
    """Knobs for :func:`phi_search`.

    ``m_max`` caps the universe (default min(n, 16); the staircase row bound
    gives m <= n). ``prune_bound`` optionally overrides the starting upper
    bound; it must not undercut beta(n), which supplies the witness.
    ``node_budget`` bounds the enumeration per root branch.
    """

    n: int
    m_max: int | None = None
    prune_bound: int | None = None
    workers: int = 1
    naive: bool = False
    node_budget: int = DEFAULT_NODE_BUDGET


@dataclass(frozen=True)
class SearchResult:
    phi: int
    witness: Family
    visited: int
    duration: float
    conjecture_violations: int = 0


class SearchBudgetError(RuntimeError):
    """Node budget exhausted; carries the constructive incumbent."""

    def __init__(self, n: int, incumbent: int, witness: Family | None, visited: int):
        super().__init__(
            f"search budget exceeded at n={n}; phi({n}) <= {incumbent} stands"
        )
        self.n = n
        self.incumbent = incumbent
        self.witness = witness
        self.visited = visited

    def __reduce__(self):  # crosses process-pool boundaries
        return (type(self), (self.n, self.incumbent, self.witness, self.visited))


def _keyed(sets: tuple[int, ...]) -> tuple[tuple[int, int], ...]:
    return tuple(canonical_key(s) for s in sets)


def _canonical_family(sets: tuple[int, ...], m: int) -> tuple[int, ...]:
    """Smallest canonical mask tuple over all relabelings, compared in
    canonical (cardinality, value) order."""
    best = None
    best_masks = None
    for perm in permutations(range(m)):
        relab = []
        for s in sets:
            t = 0
            for e in range(m):
                if s >> e & 1:
                    t |= 1 << perm[e]
            relab.append(t)
        relab.sort(key=canonical_key)
        keyed = _keyed(relab)
        if best is None or keyed < best:
            best = keyed
            best_masks = tuple(relab)
    return best_masks


def _canonical_min_family(families, m: int) -> tuple[int, ...]:
    """Canonical-min representative of a collection of families.

    Relabeling never changes member cardinalities, so only families whose
    sorted size multiset is lexicographically minimal can win; the full
    permutation scan runs on those alone.
    """

    def size_key(sets):
        return tuple(sorted(s.bit_count() for s in sets))

    cutoff = min(size_key(f) for f in families)
    pool = sorted({f for f in families if size_key(f) == cutoff})
    return min((_canonical_family(f, m) for f in pool), key=_keyed)


def _max_count(counts) -> int:
    return max(counts) if counts else 0


def phi_naive(n: int, m_max: int | None = None) -> SearchResult:
    """Oracle-scale exact phi by exhaustive subset enumeration (n <= 6).

    Walks n-subsets of P(m_max) in ascending numeric order; a partial choice
    dies once a forced union (of two chosen sets) below the next candidate is
    missing, or more unions are owed than slots remain. Families with no
    non-empty member are excluded.
    """
    if not 1 <= n <= PHI_NAIVE_MAX_N:
        raise DomainError(f"phi_naive supports 1 <= n <= {PHI_NAIVE_MAX_N}")
    m = min(n, PHI_NAIVE_MAX_N) if m_max is None else m_max
    if not 1 <= m <= PHI_NAIVE_MAX_N:
        raise DomainError(f"phi_naive supports m_max <= {PHI_NAIVE_MAX_N}")
    start = time.perf_counter()
    top = 1 << m
    best_value: int | None = None
    best_families: list[tuple[int, ...]] = []
    nodes = 0

    def rec(chosen: list[int], pending: set[int], lo: int):
        nonlocal best_value, best_families, nodes
        nodes += 1
        room = n - len(chosen)
        if len(pending) > room:
            return
        if room == 0:
            counts = [0] * m
            for s in chosen:
                for e in range(m):
                    if s >> e & 1:
                        counts[e] += 1
            value = _max_count(counts)
            if value == 0:
                return
            if best_value is None or value < best_value:
                best_value = value
                best_families = [tuple(chosen)]
            elif value == best_value:
                best_families.append(tuple(chosen))
            return
        limit = min(pending) if pending else top - 1
        for x in range(lo, limit + 1):
            fresh = set()
            for y in chosen:
                u = x | y
                if u != x and u != y:
                    fresh.add(u)
            nxt = pending | fresh
            nxt.discard(x)
            chosen.append(x)
            rec(chosen, nxt, x + 1)
            chosen.pop()

    rec([], set(), 0)
    assert best_value is not None
    witness = Family.from_sets(m, _canonical_min_family(best_families, m))
    return SearchResult(
        best_value, witness, nodes, time.perf_counter() - start
    )


def _branch_enumerate(args):
    """Exhaust one root branch; returns (nodes, violations, improving families).

    A branch fixes the first chosen set (the empty set or a prefix block).
    Improving families are complete n-set families with every frequency <= t.
    """
    n, t, m_cap, first_mask, node_budget = args
    masks = sorted(range(1 << m_cap), key=canonical_key)
    rank = {s: i for i, s in enumerate(masks)}
    bits = {s: [e for e in range(m_cap) if s >> e & 1] for s in masks}
    found: list[tuple[int, tuple[int, ...]]] = []
    nodes = 0
    violations = 0

    def dfs(fam: frozenset, ordered: tuple[int, ...], counts: list[int], last: int):
        nonlocal nodes, violations
        nodes += 1
        if nodes > node_budget:
            raise SearchBudgetError(n, t + 1, None, nodes)
        size = len(fam)
        top_count = _max_count(counts)
        if top_count and 2 * top_count < size:
            violations += 1
        if size == n:
            if top_count:
                found.append((top_count, ordered))
            return
        room = n - size
        headroom = sum(t - c for c in counts if c < t)
        if room > headroom:
            return
        for idx in range(last + 1, len(masks)):
            x = masks[idx]
            if x in fam:
                continue
            # incremental closure of fam + {x}
            new = {x}
            frontier = [x]
            overrun = False
            while frontier and not overrun:
                u = frontier.pop()
                for v in fam:
                    w = u | v
                    if w not in fam and w not in new:
                        new.add(w)
                        frontier.append(w)
                        if size + len(new) > n:
                            overrun = True
                            break
                if overrun:
                    break
                for v in list(new):
                    w = u | v
                    if w not in fam and w not in new:
                        new.add(w)
                        frontier.append(w)
                if size + len(new) > n:
                    overrun = True
            if overrun:
                continue
            nc = counts[:]
            ok = True
            for s in new:
                for e in bits[s]:
                    nc[e] += 1
                    if nc[e] > t:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                continue
            fam2 = fam | new
            ordered2 = tuple(sorted(fam2, key=canonical_key))
            cols = set()
            for e in range(m_cap):
                col = 0
                for i, s in enumerate(ordered2):
                    if s >> e & 1:
                        col |= 1 << i
                if col:
                    cols.add(col)
            if len(cols) > t:
                continue
            dfs(fam2, ordered2, nc, idx)

    seed = frozenset((first_mask,))
    counts0 = [0] * m_cap
    for e in bits[first_mask]:
        counts0[e] = 1
    dfs(seed, (first_mask,), counts0, rank[first_mask])
    return nodes, violations, found


def _root_branches(t: int, m_cap: int) -> list[int]:
    # the first chosen set, up to relabeling: empty or a prefix block
    return [0] + [(1 << j) - 1 for j in range(1, m_cap + 1)]


def phi_search(config: SearchConfig) -> SearchResult:
    """Exact phi(n) for n <= 12 with a schedule-independent witness."""
    if config.naive:
        return phi_naive(config.n, config.m_max)
    n = config.n
    if not 1 <= n <= PHI_SEARCH_MAX_N:
        raise DomainError(f"phi_search supports 1 <= n <= {PHI_SEARCH_MAX_N}")
    if config.m_max is not None and not 1 <= config.m_max <= 16:
        raise DomainError("m_max must be in 1..16")
    start = time.perf_counter()
    if n == 1:
        return SearchResult(1, Family(1, (1,)), 1, time.perf_counter() - start)
    incumbent = min(beta(n)[0], conway(n)[-1])
    if config.prune_bound is not None:
        if config.prune_bound < incumbent:
            raise DomainError(
                "prune_bound undercuts the constructive upper bound; no witness"
            )
        incumbent = min(incumbent, config.prune_bound)
    fallback = renaud_family(n)
    t = incumbent - 1
    m_cap = min(config.m_max if config.m_max is not None else n, n, 16, max(t, 1))
    if t < 1:
        # nothing can beat frequency 0; the bound is trivially exact
        return SearchResult(incumbent, fallback, 0, time.perf_counter() - start)

    tasks = [
        (n, t, m_cap, first, config.node_budget) for first in _root_branches(t, m_cap)
    ]
    results = []
    try:
        if config.workers <= 1:
            for task in tasks:
                results.append(_branch_enumerate(task))
        else:
            ctx = get_context("fork")
            with ProcessPoolExecutor(
                max_workers=config.workers, mp_context=ctx
            ) as pool:
                results = list(pool.map(_branch_enumerate, tasks))
    except SearchBudgetError as exc:
        raise SearchBudgetError(n, incumbent, fallback, exc.visited) from None

    visited = sum(r[0] for r in results)
    violations = sum(r[1] for r in results)
    improving = [item for r in results for item in r[2]]
    duration = time.perf_counter() - start
    if not improving:
        return SearchResult(incumbent, fallback, visited, duration, violations)
    value = min(v for v, _ in improving)
    witness_sets = _canonical_min_family(
        [sets for v, sets in improving if v == value], m_cap
    )
    return SearchResult(
        value, Family.from_sets(m_cap, witness_sets), visited, duration, violations
    )


@dataclass(frozen=True)
class PhiTableRow:
    n: int
    phi: int
    conway: int
    beta: int
    matches_conway: bool


def verify_phi_table(limit: int) -> list[PhiTableRow]:
    """phi(n) for n <= limit (<= 9), checked against both upper bounds."""
    if not 1 <= limit <= 9:
        raise DomainError("verify_phi_table supports limit <= 9")
    a = conway(max(limit, 2))
    rows = []
    for n in range(1, limit + 1):
        result = phi_search(SearchConfig(n))
        b = beta(n)[0] if n >= 2 else a[n - 1]
        if result.phi > b or b > a[n - 1]:
            raise AssertionError(f"bound chain broken at n={n}: {result.phi}, {b}, {a[n-1]}")
        rows.append(PhiTableRow(n, result.phi, a[n - 1], b, result.phi == a[n - 1]))
    return rows
