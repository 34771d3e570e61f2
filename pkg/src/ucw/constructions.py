"""Named constructions and closed-form bounds for union-closed families.

Three families of results live here:

* Conway's nested recurrence a(n) = a(a(n-1)) + a(n-a(n-1)) and Renaud's
  balanced-deletion family B(n) with its maximal frequency beta(n). B(n)
  starts from the power set P(k), 2^(k-1) < n <= 2^k, and deletes 2^k - n
  sets containing element k: whole size levels in ascending order, then a
  partial level whose deletion degrees on elements 1..k-1 are exactly
  balanced. Union-closure survives because deletions are upward-closed in
  size. beta(n) follows in closed form from the deletion schedule; the
  materialized family is the ground truth the closed form is tested against.

* Block up-set families C(s,k): the power set P(sk) joined with the up-set
  on sk+1 elements generated by k disjoint s-blocks each augmented with the
  top element sk+1. These keep more small sets than B(|C|) at equal size
  ("holes" in the middle levels), which lowers the maximal frequency; the
  two-block series (k=2, block size N) realizes a gap below beta that grows
  with N. A binary-entropy estimate of binomial growth certifies the
  mechanism behind the unbounded gap.

* The padding transform: appending p fresh elements and p near-full sets
  drives the set-to-universe ratio below a chosen c > 2 while charging the
  new elements at most p members each, so a frequent element of the padded
  family already lies in the original universe. This converts a conjecture
  assumption at ratio c into a frequency bound of (c-2)/(2(c-1)) per member
  count.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .core import (
    CapacityError,
    DomainError,
    Family,
    check_conjecture,
    frequencies,
    max_frequency,
    universe_of,
)

# ---------------------------------------------------------------------------
# Conway's sequence


def conway(limit: int) -> list[int]:
    """a(1..limit) by iterative memoization; a(n) = a(a(n-1)) + a(n-a(n-1))."""
    if limit < 1:
        raise DomainError("limit must be >= 1")
    a = [0, 1, 1]  # 1-based; a[0] unused
    for n in range(3, limit + 1):
        prev = a[n - 1]
        a.append(a[prev] + a[n - prev])
    return a[1 : limit + 1]


def conway_properties(limit: int) -> tuple[int, str] | None:
    """First violation of 2*a(n) >= n or a(n+1)-a(n) in {0,1}, else None."""
    if limit < 2:
        raise DomainError("limit must be >= 2")
    a = conway(limit)
    for n in range(1, limit + 1):
        if 2 * a[n - 1] < n:
            return (n, f"2*a({n}) = {2 * a[n - 1]} < {n}")
    for n in range(1, limit):
        step = a[n] - a[n - 1]
        if step not in (0, 1):
            return (n, f"a({n + 1}) - a({n}) = {step}")
    return None


# ---------------------------------------------------------------------------
# Renaud's balanced-deletion family B(n) and beta(n)

RENAUD_MATERIALIZE_MAX_K = 13


@dataclass(frozen=True)
class BetaDecomposition:
    """Deletion schedule behind B(n) and beta(n).

    ``full_levels`` lists (set size, count) for wholly deleted levels of
    k-containing sets; ``r`` is the set size of the partially deleted level
    (the first untouched level when v == 0) and ``v`` the number of sets
    deleted there. Invariants: 2^(k-1) < n <= 2^k and the deletions sum to
    2^k - n, with 0 <= v < C(k-1, r-1).
    """

    n: int
    k: int
    full_levels: tuple[tuple[int, int], ...]
    r: int
    v: int

    @property
    def deleted(self) -> int:
        return sum(count for _, count in self.full_levels) + self.v


def _beta_schedule(n: int) -> BetaDecomposition:
    if n < 2:
        raise DomainError("beta/renaud_family need n >= 2")
    k = (n - 1).bit_length()
    d = (1 << k) - n
    full = []
    rem = d
    r = k + 1
    v = 0
    for size in range(1, k + 1):
        count = math.comb(k - 1, size - 1)
        if rem >= count:
            if count:
                full.append((size, count))
            rem -= count
            if rem == 0:
                r = size + 1
                break
        else:
            r, v = size, rem
            break
    return BetaDecomposition(n, k, tuple(full), min(r, k), v)


def _split_targets(targets: list[int], t: int, h: int) -> tuple[list[int], list[int]]:
    """Split a near-balanced degree vector between the (h-1)- and h-subproblems.

    ``targets`` covers the K-1 low elements; the first part must sum to
    t*(h-1), both parts must again be near-balanced (values in {floor, ceil}
    of their own averages), and they must add back to ``targets``. Ceilings
    are pushed to the smallest elements, which keeps the whole construction
    deterministic. Feasibility is a counting argument: writing the three
    averages as a, b, c with remainders na, nb, nc, either c = a+b and
    nc = na+nb, or c = a+b+1 and the elements at c+1 are forced to take
    ceilings on both sides.
    """
    width = len(targets)
    sum_a = t * (h - 1)
    total = sum(targets)
    a, na = divmod(sum_a, width)
    c, nc = divmod(total, width)
    part_a = [0] * width
    if c == a + (total - sum_a) // width:
        seen = 0
        for e in range(width):
            if targets[e] == c:
                part_a[e] = a
            else:
                part_a[e] = a + 1 if seen < na else a
                seen += 1
    else:
        seen = 0
        for e in range(width):
            if targets[e] == c + 1:
                part_a[e] = a + 1
            else:
                part_a[e] = a + 1 if seen < na - nc else a
                seen += 1
    part_b = [targets[e] - part_a[e] for e in range(width)]
    b = (total - sum_a) // width
    assert all(x in (a, a + 1) for x in part_a) and sum(part_a) == sum_a
    assert all(x in (b, b + 1) for x in part_b)
    return part_a, part_b


def _balanced_select(universe: int, h: int, targets: list[int]) -> list[int]:
    """Distinct h-subset masks of [universe] with exact element degrees ``targets``.

    Recursive split on the top element: the sets containing it form an
    (h-1)-uniform subproblem, the rest an h-uniform one, with the degree
    vector divided by :func:`_split_targets`. Linear in the output size.
    """
    total = sum(targets)
    assert total % h == 0
    v = total // h
    if v == 0:
        return []
    if h == universe:
        assert v == 1
        return [(1 << universe) - 1]
    if h == 1:
        return [1 << e for e in range(universe) if targets[e] == 1]
    t = targets[universe - 1]
    part_a, part_b = _split_targets(targets[: universe - 1], t, h)
    top = 1 << (universe - 1)
    with_top = (
        [m | top for m in _balanced_select(universe - 1, h - 1, part_a)] if t else []
    )
    without_top = _balanced_select(universe - 1, h, part_b) if v - t else []
    return with_top + without_top


def balanced_deletion(universe: int, h: int, v: int) -> list[int]:
    """v distinct h-subset masks of [universe] with degrees differing by <= 1.

    Degree ceilings land on the smallest elements, so the largest element is
    always among the least-deleted ones.
    """
    if not 0 <= v <= math.comb(universe, h):
        raise DomainError(f"cannot delete {v} sets from a level of size "
                          f"{math.comb(universe, h)}")
    base, extra = divmod(v * h, universe)
    targets = [base + 1 if e < extra else base for e in range(universe)]
    return _balanced_select(universe, h, targets)


@lru_cache(maxsize=64)
def renaud_family(n: int) -> Family:
    """Materialize B(n): P(k) with 2^k - n balanced deletions among k-sets."""
    sched = _beta_schedule(n)
    k = sched.k
    if k > RENAUD_MATERIALIZE_MAX_K:
        raise CapacityError(f"materialization capped at k <= {RENAUD_MATERIALIZE_MAX_K}")
    kbit = 1 << (k - 1)
    deleted: set[int] = set()
    for size, _ in sched.full_levels:
        for sub in range(kbit):
            if sub.bit_count() == size - 1:
                deleted.add(sub | kbit)
    if sched.v:
        for sub in balanced_deletion(k - 1, sched.r - 1, sched.v):
            deleted.add(sub | kbit)
    kept = [s for s in range(1 << k) if s not in deleted]
    return Family.from_sets(k, kept)


def beta(n: int) -> tuple[int, BetaDecomposition]:
    """Closed-form maximal frequency of B(n), plus the deletion schedule.

    Each fully deleted level of size j removes C(k-2, j-2) sets from every
    element below k; the balanced partial level removes floor(v(r-1)/(k-1))
    from the least-hit element, which is where the maximum survives.
    """
    sched = _beta_schedule(n)
    k = sched.k
    if k == 1:
        return 1, sched
    hits = sum(math.comb(k - 2, size - 2) for size, _ in sched.full_levels if size >= 2)
    partial = (sched.v * (sched.r - 1)) // (k - 1)
    return (1 << (k - 1)) - hits - partial, sched


# ---------------------------------------------------------------------------
# Up-sets and block families

UPSET_MATERIALIZE_LIMIT = 1 << 22


def up_set(generators, m: int) -> Family:
    """All supersets (within [m]) of at least one generator."""
    gens = list(generators)
    if not gens:
        raise DomainError("up_set requires at least one generator")
    if not 1 <= m <= 64:
        raise CapacityError(f"universe size must be in 1..64, got {m}")
    limit = 1 << m
    budget = 0
    for g in gens:
        if not 0 <= g < limit:
            raise CapacityError(f"generator {g:#x} outside universe [{m}]")
        budget += 1 << (m - g.bit_count())
        if budget > UPSET_MATERIALIZE_LIMIT:
            raise CapacityError("up-set too large to materialize")
    out: set[int] = set()
    full = limit - 1
    for g in gens:
        rest = full & ~g
        sub = rest
        while True:
            out.add(g | sub)
            if sub == 0:
                break
            sub = (sub - 1) & rest
    return Family.from_sets(m, out)


@dataclass(frozen=True)
class BlockUpsetParams:
    """Block size s >= 2 and block count k >= 2, not both 2; universe sk+1."""

    s: int
    k: int

    def __post_init__(self):
        if self.s < 2 or self.k < 2:
            raise DomainError("block size and block count must both be >= 2")
        if self.s == 2 and self.k == 2:
            raise DomainError("block size and count must not both equal 2")
        if self.s * self.k + 1 > 64:
            raise CapacityError("universe sk+1 exceeds 64")

    @property
    def m(self) -> int:
        return self.s * self.k + 1

    def generators(self) -> list[int]:
        top = 1 << (self.s * self.k)
        gens = []
        for j in range(self.k):
            g = 0
            for e in range(j * self.s, (j + 1) * self.s):
                g |= 1 << e
            gens.append(g | top)
        return gens


def hole_levels(params: BlockUpsetParams) -> range:
    """Set sizes where the up-set omits some top-element sets: s+2 .. k(s-1)+1."""
    return range(params.s + 2, params.k * (params.s - 1) + 2)


def _block_family(s: int, k: int) -> Family:
    m = s * k + 1
    if m > 24:
        raise CapacityError("materialization capped at sk+1 <= 24")
    top = 1 << (s * k)
    gens = []
    for j in range(k):
        g = 0
        for e in range(j * s, (j + 1) * s):
            g |= 1 << e
        gens.append(g | top)
    upper = up_set(gens, m)
    sets = list(range(1 << (s * k))) + list(upper.sets)
    return Family.from_sets(m, sets)


def block_upset_family(params: BlockUpsetParams) -> Family:
    """C(s,k) = P(sk) joined with the up-set generated by the augmented blocks."""
    return _block_family(params.s, params.k)


def two_block_family(N: int) -> Family:
    """The two-block series over 2N+1 elements (block size N, two blocks).

    Defined for N >= 2; N == 2 is the excluded-parameter corner where the
    construction collapses to B(23).
    """
    if N < 2:
        raise DomainError("two_block_family requires N >= 2")
    return _block_family(N, 2)


def size_multiset_dominance(c: Family, b: Family) -> bool:
    """Sorted member sizes of c pointwise <= those of b, with some strict gap."""
    if len(c.sets) != len(b.sets):
        raise DomainError("size_multiset_dominance requires equal-size families")
    cs = sorted(s.bit_count() for s in c.sets)
    bs = sorted(s.bit_count() for s in b.sets)
    return all(x <= y for x, y in zip(cs, bs)) and any(x < y for x, y in zip(cs, bs))


def gap_report(N: int) -> tuple[int, int, int]:
    """(two-block max frequency, beta at equal size, gap) for 2 <= N <= 6.

    beta is cross-checked against the materialized balanced-deletion family.
    """
    if not 2 <= N <= 6:
        raise CapacityError("gap_report supports N in 2..6")
    fam = two_block_family(N)
    _, c_max = max_frequency(fam)
    value, _ = beta(len(fam.sets))
    _, b_max = max_frequency(renaud_family(len(fam.sets)))
    if value != b_max:
        raise AssertionError(f"beta({len(fam.sets)}) formula {value} != materialized {b_max}")
    return (c_max, b_max, b_max - c_max)


# ---------------------------------------------------------------------------
# Entropy bound for the binomial growth argument


def binary_entropy(p: float) -> float:
    """H(p) = -p log2 p - (1-p) log2 (1-p) for 0 < p < 1."""
    if not 0.0 < p < 1.0:
        raise DomainError("binary_entropy requires 0 < p < 1")
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


@dataclass(frozen=True)
class EntropyCheck:
    """Per-N verdict for the binomial growth chain at k = ceil(2N/5).

    ``entropy_ok``: C(2N,k) >= 2^(H(k/2N)*2N) / (2N+1), decided with interval
    arithmetic so rounding cannot flip it. ``power_ok``: C(2N,k) > 2^(N+1),
    exact integers. The chain certifies that the up-set of B at this size has
    no small sets.
    """

    N: int
    k: int
    binomial: int
    entropy_ok: bool
    power_ok: bool

    @property
    def chain_ok(self) -> bool:
        return self.entropy_ok and self.power_ok


def entropy_binomial_check(N: int) -> EntropyCheck:
    if N < 1:
        raise DomainError("N must be >= 1")
    k = -(-2 * N // 5)  # ceil(2N/5)
    binom = math.comb(2 * N, k)
    # interval-safe: rhs = 2^(H * 2N) / (2N+1) with directed rounding
    with mpmath.workdps(60):
        p = mpmath.iv.mpf(k) / (2 * N)
        one = mpmath.iv.mpf(1)
        H = -p * mpmath.iv.log(p) / mpmath.iv.log(2) - (one - p) * mpmath.iv.log(
            one - p
        ) / mpmath.iv.log(2)
        rhs = (2 ** (H * 2 * N)) / (2 * N + 1)
        lhs = mpmath.iv.mpf(binom)
        if lhs >= rhs:
            entropy_ok = True
        elif lhs < rhs:
            entropy_ok = False
        else:  # pragma: no cover - intervals overlap, precision exhausted
            raise AssertionError("interval comparison undecided; raise precision")
    power_ok = binom > (1 << (N + 1))
    return EntropyCheck(N, k, binom, entropy_ok, power_ok)


def entropy_binomial_sweep(limit: int) -> tuple[list[EntropyCheck], int | None]:
    """Checks for N = 1..limit and the smallest N from which the chain holds on."""
    checks = [entropy_binomial_check(N) for N in range(1, limit + 1)]
    threshold = None
    for chk in reversed(checks):
        if chk.chain_ok:
            threshold = chk.N
        else:
            break
    return checks, threshold


# ---------------------------------------------------------------------------
# The padding transform


@dataclass(frozen=True)
class PadParams:
    """Ratio threshold c, pad count p, and the indices of the added elements."""

    c: Fraction
    p: int
    new_elements: tuple[int, ...]


def _as_fraction(c) -> Fraction:
    frac = Fraction(c)
    if frac <= 2:
        raise DomainError(f"padding threshold must exceed 2, got {frac}")
    return frac


def pad_family(f: Family, c) -> tuple[Family, PadParams]:
    """Append p fresh elements and p near-full sets so len/|U| drops to <= c.

    p = ceil((n - c m)/(c - 1)) with n = len(f) and m = |U(f)|, computed in
    exact rational arithmetic. The new members are U(C) minus one fresh
    element apiece (p-1 of them) plus U(C) itself, so closure is preserved,
    fresh elements appear in at most p members, and a separating input stays
    separating. When n <= c m the family is returned unchanged with p = 0.
    """
    frac = _as_fraction(c)
    n = len(f.sets)
    m = universe_of(f).bit_count()
    if m == 0:
        raise DomainError("pad_family requires a non-empty universe")
    num, den = frac.numerator, frac.denominator
    if n * den <= num * m:
        return f, PadParams(frac, 0, ())
    p = -((-(n * den - num * m)) // (num - den))  # ceil in integers
    assert p >= 1
    if p >= n:
        raise DomainError(f"pad count p={p} reached n={n}; ratio target too tight")
    if f.m + p > 64:
        raise CapacityError(f"padding needs {f.m + p} elements, over the 64 cap")
    new_elements = tuple(range(f.m + 1, f.m + p + 1))
    m2 = f.m + p
    full = 0
    for s in f.sets:
        full |= s
    for e in new_elements:
        full |= 1 << (e - 1)
    new_sets = list(f.sets)
    for e in new_elements[: p - 1]:
        new_sets.append(full & ~(1 << (e - 1)))
    new_sets.append(full)
    padded = Family.from_sets(m2, new_sets)
    assert len(padded.sets) == n + p
    return padded, PadParams(frac, p, new_elements)


@dataclass(frozen=True)
class EpsilonReport:
    """Direct verification of the padded-family frequency argument.

    ``bound`` is (c-2)/(2(c-1)) * n, the member-count-relative threshold the
    located element must exceed; ``ceiling`` is ceil((n-p)/2).
    """

    holds: bool
    p: int
    element: int
    frequency: int
    ceiling: int
    bound: Fraction
    padded_size: int


def epsilon_bound_check(f: Family, c) -> EpsilonReport:
    """Pad f to ratio <= c, then verify the frequency bound concretely.

    Checks, in order: the padded family satisfies the half-membership
    property (desk scale, verified directly); when n > p its maximal
    frequency element lies in U(f); that element's frequency in f is at least
    ceil((n-p)/2) and strictly exceeds (c-2)/(2(c-1)) * n.
    """
    frac = _as_fraction(c)
    if not any(f.sets):
        raise DomainError("epsilon_bound_check requires a non-empty member set")
    padded, params = pad_family(f, frac)
    verdict = check_conjecture(padded)
    n = len(f.sets)
    p = params.p
    element, freq_padded = max_frequency(padded)
    in_original = element <= f.m and bool(universe_of(f) >> (element - 1) & 1)
    freq_f = frequencies(f)[element - 1] if in_original else 0
    ceiling = -((-(n - p)) // 2)
    bound = Fraction(frac.numerator - 2 * frac.denominator,
                     2 * (frac.numerator - frac.denominator)) * n
    holds = (
        verdict.holds
        and (p == 0 or n <= p or in_original)
        and freq_f >= ceiling
        and freq_f > bound
    )
    return EpsilonReport(holds, p, element, freq_f, ceiling, bound, len(padded.sets))
