"""Core value types and predicates for finite set families over a bounded universe.

A member set is a bit mask (``SetMask`` = plain ``int``): element i of the
universe [m] lives at bit i-1, so ``{1,3}`` is ``0b101``. The universe is
capped at 64 elements so a mask always fits one machine word.

A :class:`Family` is an immutable, deduplicated collection of masks in
*canonical order*: ascending cardinality, ties broken by ascending numeric
mask value. All operations in this module are pure functions; families are
safe to share across threads.
"""

from dataclasses import dataclass

import numpy as np

MAX_UNIVERSE = 64

SetMask = int


class CapacityError(ValueError):
    """Universe size or materialization size outside supported bounds."""


class DomainError(ValueError):
    """Operation precondition violated (wrong kind of family or element)."""


def mask_of(elements) -> SetMask:
    """Mask for an iterable of 1-based elements."""
    m = 0
    for e in elements:
        m |= 1 << (e - 1)
    return m


def elements_of(mask: SetMask) -> tuple[int, ...]:
    """1-based elements of a mask, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


def canonical_key(mask: SetMask) -> tuple[int, int]:
    """Sort key realizing canonical order: (cardinality, numeric value)."""
    return (mask.bit_count(), mask)


def _check_universe(m: int) -> None:
    if not 1 <= m <= MAX_UNIVERSE:
        raise CapacityError(f"universe size must be in 1..{MAX_UNIVERSE}, got {m}")


@dataclass(frozen=True)
class Family:
    """A deduplicated set family in canonical order over universe [m].

    Construct via :meth:`from_sets` (which sorts and deduplicates) unless the
    input is already canonical; the constructor validates its invariants.
    """

    m: int
    sets: tuple[SetMask, ...]

    def __post_init__(self):
        _check_universe(self.m)
        limit = 1 << self.m
        prev_key = None
        for s in self.sets:
            if not 0 <= s < limit:
                raise CapacityError(
                    f"set {s:#x} has elements outside universe [{self.m}]"
                )
            key = canonical_key(s)
            if prev_key is not None and key <= prev_key:
                raise DomainError("sets not in canonical order or duplicated")
            prev_key = key

    @classmethod
    def from_sets(cls, m: int, sets) -> "Family":
        """Build a family from any iterable of masks; dedups and sorts."""
        return cls(m, tuple(sorted(set(sets), key=canonical_key)))

    @classmethod
    def from_lists(cls, m: int, lists) -> "Family":
        """Build a family from iterables of 1-based elements."""
        return cls.from_sets(m, (mask_of(els) for els in lists))

    def __len__(self) -> int:
        return len(self.sets)

    def __contains__(self, mask: SetMask) -> bool:
        return mask in set(self.sets)

    def __iter__(self):
        return iter(self.sets)


def power_set_family(m: int) -> Family:
    """All 2^m subsets of [m] as a family."""
    _check_universe(m)
    if m > 24:
        raise CapacityError(f"refusing to materialize 2^{m} sets")
    return Family.from_sets(m, range(1 << m))


def close_under_union(generators, m: int) -> Family:
    """Smallest union-closed family over [m] containing all generator masks.

    Fixpoint iteration: union every new set against everything present until
    nothing new appears. The generators are members of the result.
    """
    _check_universe(m)
    limit = 1 << m
    closed: set[int] = set()
    frontier = []
    for g in generators:
        if not 0 <= g < limit:
            raise CapacityError(f"generator {g:#x} outside universe [{m}]")
        if g not in closed:
            closed.add(g)
            frontier.append(g)
    while frontier:
        u = frontier.pop()
        fresh = []
        for v in closed:
            w = u | v
            if w not in closed:
                fresh.append(w)
        for w in fresh:
            closed.add(w)
            frontier.append(w)
    return Family.from_sets(m, closed)


def is_union_closed(f: Family) -> bool:
    """True iff the union of every pair of members is a member."""
    n = len(f.sets)
    if n > 1024:
        return _is_union_closed_bulk(f)
    present = set(f.sets)
    sets = f.sets
    for i in range(n):
        a = sets[i]
        for j in range(i + 1, n):
            if a | sets[j] not in present:
                return False
    return True


def _is_union_closed_bulk(f: Family) -> bool:
    # Vectorized pairwise-union membership test, chunked to bound memory.
    arr = np.array(f.sets, dtype=np.uint64)
    table = np.sort(arr)
    for lo in range(0, len(arr), 256):
        chunk = arr[lo : lo + 256]
        unions = chunk[:, None] | arr[None, :]
        idx = np.searchsorted(table, unions)
        idx[idx == len(table)] = 0
        if not np.all(table[idx] == unions):
            return False
    return True


def universe_of(f: Family) -> SetMask:
    """Bitwise OR of all members; the empty mask for an empty family."""
    u = 0
    for s in f.sets:
        u |= s
    return u


def frequencies(f: Family) -> tuple[int, ...]:
    """Per-element membership counts; index a-1 holds the count of element a.

    The empty set contributes to no count but does count toward ``len(f)``.
    """
    if len(f.sets) > 50_000:
        arr = np.array(f.sets, dtype=np.uint64)
        return tuple(
            int(((arr >> np.uint64(e)) & np.uint64(1)).sum()) for e in range(f.m)
        )
    counts = [0] * f.m
    for s in f.sets:
        while s:
            low = s & -s
            counts[low.bit_length() - 1] += 1
            s ^= low
    return tuple(counts)


def max_frequency(f: Family) -> tuple[int, int]:
    """(element, count) for the most frequent element; smallest element wins ties."""
    counts = frequencies(f)
    best = max(counts, default=0)
    if best == 0:
        raise DomainError("family has no non-empty member, no universe element")
    return (counts.index(best) + 1, best)


def membership_columns(f: Family) -> dict[int, int]:
    """For each element of U(f), the bitmask of member indices containing it."""
    cols: dict[int, int] = {}
    for i, s in enumerate(f.sets):
        while s:
            low = s & -s
            e = low.bit_length()
            cols[e] = cols.get(e, 0) | (1 << i)
            s ^= low
    return cols


def is_separating(f: Family) -> bool:
    """True iff distinct elements of U(f) have distinct membership columns."""
    cols = membership_columns(f)
    return len(set(cols.values())) == len(cols)


def separating_quotient(f: Family) -> tuple[Family, dict[int, int]]:
    """Merge elements with identical membership columns.

    Returns the quotient family and a mapping from each element of U(f) to
    its class label in the quotient. Classes are labelled 1..m' in order of
    their smallest original element, so the member count, the union-closure
    status and the multiset of per-class frequencies are all preserved.
    """
    cols = membership_columns(f)
    by_col: dict[int, int] = {}
    for e in sorted(cols):
        by_col.setdefault(cols[e], e)
    reps = sorted(by_col.values())
    new_label = {rep: i + 1 for i, rep in enumerate(reps)}
    mapping = {e: new_label[by_col[cols[e]]] for e in cols}
    new_sets = []
    for s in f.sets:
        t = 0
        for e in elements_of(s):
            t |= 1 << (mapping[e] - 1)
        new_sets.append(t)
    m2 = max(1, len(reps))
    return Family.from_sets(m2, new_sets), mapping


def basis_sets(f: Family) -> tuple[SetMask, ...]:
    """The union-irreducible members: those not equal to a union of other members.

    The union over an empty collection does not count, so the empty set (when
    present) is always a basis set. Requires a union-closed family.
    """
    if not is_union_closed(f):
        raise DomainError("basis_sets requires a union-closed family")
    out = []
    for s in f.sets:
        u = 0
        for other in f.sets:
            if other != s and other | s == s:
                u |= other
        if s == 0 or u != s:  # the union over no sets does not reduce the empty set
            out.append(s)
    return tuple(out)


def restrict(f: Family, a: int, contains: bool) -> Family:
    """The sub-family of members that contain (or avoid) element a.

    Both halves of the split are union-closed whenever the input is.
    """
    if not 1 <= a <= f.m:
        raise DomainError(f"element {a} outside universe [{f.m}]")
    bit = 1 << (a - 1)
    if contains:
        kept = [s for s in f.sets if s & bit]
    else:
        kept = [s for s in f.sets if not s & bit]
    return Family(f.m, tuple(kept))


@dataclass(frozen=True)
class ConjectureVerdict:
    holds: bool
    witness: int | None


def check_conjecture(f: Family) -> ConjectureVerdict:
    """Does some element lie in at least half of the members?

    Integer arithmetic only: holds iff 2*count >= len(f) for some element;
    the witness is the smallest such element. Requires a union-closed family
    with at least one non-empty member.
    """
    if not any(f.sets):
        raise DomainError("check_conjecture requires a non-empty member set")
    if not is_union_closed(f):
        raise DomainError("check_conjecture requires a union-closed family")
    n = len(f.sets)
    for e, count in enumerate(frequencies(f), start=1):
        if 2 * count >= n:
            return ConjectureVerdict(True, e)
    return ConjectureVerdict(False, None)
