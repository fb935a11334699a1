"""Intervals (modules), indecomposability, quotients and interval chains.

An interval is a non-empty subset whose members are indistinguishable from
outside: every outside point has the same relation (<, > or incomparable)
to all of them.  Enumeration is deliberately exhaustive (no clever
polynomial algorithm to trust); anything too big for that is rejected
up front with a clear error.
"""

from dataclasses import dataclass

from . import config
from .errors import (
    EmptyPoset,
    EmptySet,
    NotAnInterval,
    Overlap,
    TooLarge,
    UnknownElement,
)


def ssr(p, a, b, carrier):
    """True iff p relates to a and b the same way (<, > and incomparable)."""
    if len({p, a, b}) != 3:
        raise ValueError("ssr needs three distinct elements")
    return carrier.relation(p, a) == carrier.relation(p, b)


def is_interval(carrier, members):
    """Check the interval condition for one subset."""
    members = set(members)
    if not members:
        raise EmptySet("an interval is non-empty")
    unknown = members - set(carrier.elements)
    if unknown:
        raise UnknownElement(f"unknown elements {sorted(unknown)}")
    inside = sorted(members, key=carrier.index.__getitem__)
    for p in carrier.elements:
        if p in members:
            continue
        first = carrier.relation(p, inside[0])
        for a in inside[1:]:
            if carrier.relation(p, a) != first:
                return False
    return True


def _interval_masks(carrier):
    """Bitmasks of all intervals, via the subset-containment reformulation.

    A subset I is an interval iff every outside p has I inside one of p's
    three relation classes.
    """
    n = len(carrier)
    rel = carrier.rel
    up = [0] * n
    dn = [0] * n
    inc = [0] * n
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            code = rel[i, j]
            if code == 1:
                up[i] |= 1 << j
            elif code == 2:
                dn[i] |= 1 << j
            else:
                inc[i] |= 1 << j
    out = []
    for mask in range(1, 1 << n):
        ok = True
        for p in range(n):
            if mask >> p & 1:
                continue
            if (
                mask & ~up[p]
                and mask & ~dn[p]
                and mask & ~inc[p]
            ):
                ok = False
                break
        if ok:
            out.append(mask)
    return out


def _mask_to_set(carrier, mask):
    return frozenset(
        carrier.elements[i] for i in range(len(carrier)) if mask >> i & 1
    )


def enumerate_intervals(carrier, bound=None):
    """All intervals, singletons and the full carrier included.

    Returned sorted by (size, canonical index tuple); capped by the interval
    enumeration bound (default 16, overridable).
    """
    limit = config.effective_bound(config.INTERVAL_ENUM_BOUND, bound)
    if len(carrier) > limit:
        raise TooLarge(f"carrier has {len(carrier)} > {limit} elements")
    sets = [_mask_to_set(carrier, m) for m in _interval_masks(carrier)]
    sets.sort(key=lambda s: (len(s), tuple(sorted(carrier.index[e] for e in s))))
    return sets


def is_indecomposable(carrier):
    """True iff every interval is a singleton or the whole poset."""
    if len(carrier) == 0:
        raise EmptyPoset("indecomposability is about non-empty posets")
    n = len(carrier)
    for members in _interval_masks(carrier):
        size = members.bit_count()
        if 1 < size < n:
            return False
    return True


def quotient(carrier, parts):
    """Collapse disjoint intervals to their first-enumerated representative.

    Returns the quotient poset together with the representative map sending
    every carrier element to the element standing for it.
    """
    parts = [frozenset(p) for p in parts]
    for p in parts:
        if not is_interval(carrier, p):
            raise NotAnInterval(f"{sorted(p)} is not an interval")
    seen = set()
    for p in parts:
        if p & seen:
            raise Overlap(f"intervals overlap at {sorted(p & seen)}")
        seen |= p
    rep_of = {}
    for p in parts:
        rep = min(p, key=carrier.index.__getitem__)
        for e in p:
            rep_of[e] = rep
    for e in carrier.elements:
        rep_of.setdefault(e, e)
    kept = [e for e in carrier.elements if rep_of[e] == e]
    return carrier.restrict(kept), rep_of


@dataclass(frozen=True)
class Interval:
    """An interval of a fixed carrier poset."""

    carrier: object
    members: frozenset

    def __post_init__(self):
        if not is_interval(self.carrier, self.members):
            raise NotAnInterval(f"{sorted(self.members)} is not an interval")

    def __len__(self):
        return len(self.members)

    def __contains__(self, e):
        return e in self.members


@dataclass(frozen=True)
class IntervalChain:
    """Strictly nested intervals of one carrier, largest first."""

    carrier: object
    members: tuple  # tuple of frozensets, strictly decreasing under >=

    def __post_init__(self):
        for cur, nxt in zip(self.members, self.members[1:]):
            if not (nxt < cur):
                raise NotAnInterval("chain entries must be strictly nested")
        for m in self.members:
            if not is_interval(self.carrier, m):
                raise NotAnInterval(f"{sorted(m)} is not an interval")

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    @property
    def intervals(self):
        return tuple(Interval(self.carrier, m) for m in self.members)


def maximal_interval_chain(carrier, anchor=None, bound=None):
    """Canonical maximal nested chain from the full carrier down to {anchor}.

    Greedy and deterministic: while any interval can be inserted keeping all
    members pairwise nested, insert the smallest one, breaking ties by the
    lexicographically least sorted tuple of canonical element indices.  The
    anchor defaults to the first canonical element.
    """
    if len(carrier) == 0:
        raise EmptyPoset("cannot chain an empty poset")
    if anchor is None:
        anchor = carrier.elements[0]
    if anchor not in carrier:
        raise UnknownElement(f"unknown anchor {anchor!r}")
    full = frozenset(carrier.elements)
    bottom = frozenset([anchor])
    chain = {full, bottom}
    candidates = [s for s in enumerate_intervals(carrier, bound) if s not in chain]

    def key(s):
        return (len(s), tuple(sorted(carrier.index[e] for e in s)))

    candidates.sort(key=key)
    while True:
        inserted = False
        for s in candidates:
            if s in chain:
                continue
            if all(s <= c or c <= s for c in chain):
                chain.add(s)
                inserted = True
                break
        if not inserted:
            break
    ordered = sorted(chain, key=len, reverse=True)
    return IntervalChain(carrier, tuple(ordered))
