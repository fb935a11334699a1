"""Finite posets, quasi-orders, colourings, canonical constructions and sums.

A :class:`Poset` is a strict partial order over named elements, stored in
transitively closed form.  The element tuple is the canonical enumeration:
all tie-breaking anywhere in the library (interval chain selection, quotient
representatives, witness search order) refers back to it.  Values are
immutable after construction; every operation here is a pure function.
"""

from dataclasses import dataclass

import numpy as np

from . import _search
from .errors import (
    CycleError,
    DuplicateElement,
    EmptyPart,
    MissingPart,
    NotAChain,
    NotATree,
    PaletteMismatch,
    UnknownElement,
    UnknownName,
)

INCOMPARABLE, LESS, GREATER, EQUAL = 0, 1, 2, 3


def _closure(n, mat):
    # boolean Warshall; cheap at the sizes this library targets
    for k in range(n):
        col = mat[:, k]
        row = mat[k, :]
        mat |= np.outer(col, row)
    return mat


class Poset:
    """Strict partial order; construct through :func:`make_poset` or friends."""

    def __init__(self, elements, lt_bool):
        self.elements = tuple(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        lt_bool = np.asarray(lt_bool, dtype=bool)
        lt_bool.setflags(write=False)
        self._lt = lt_bool
        n = len(self.elements)
        rel = np.zeros((n, n), dtype=np.int8)
        np.fill_diagonal(rel, EQUAL)
        rel[lt_bool] = LESS
        rel[lt_bool.T] = GREATER
        rel.setflags(write=False)
        self.rel = rel

    # -- basic queries ---------------------------------------------------

    def __len__(self):
        return len(self.elements)

    def __contains__(self, e):
        return e in self.index

    def __eq__(self, other):
        return (
            isinstance(other, Poset)
            and self.elements == other.elements
            and np.array_equal(self._lt, other._lt)
        )

    def __hash__(self):
        return hash((self.elements, self._lt.tobytes()))

    def __repr__(self):
        pairs = ",".join(f"{a}<{b}" for a, b in self.cover_pairs())
        return f"Poset({','.join(self.elements)}|{pairs})"

    def _i(self, e):
        try:
            return self.index[e]
        except KeyError:
            raise UnknownElement(f"unknown element {e!r}") from None

    def lt(self, a, b):
        return bool(self._lt[self._i(a), self._i(b)])

    def leq(self, a, b):
        ia, ib = self._i(a), self._i(b)
        return ia == ib or bool(self._lt[ia, ib])

    def incomparable(self, a, b):
        ia, ib = self._i(a), self._i(b)
        return ia != ib and not self._lt[ia, ib] and not self._lt[ib, ia]

    def relation(self, a, b):
        """Relation code between two elements (module-level constants)."""
        return int(self.rel[self._i(a), self._i(b)])

    def lt_pairs(self):
        """The full strict relation as a set of (a, b) pairs."""
        out = set()
        for i, j in zip(*np.nonzero(self._lt)):
            out.add((self.elements[i], self.elements[j]))
        return out

    def cover_pairs(self):
        """Covering pairs (a, b): a < b with nothing strictly between."""
        n = len(self.elements)
        covers = []
        for i in range(n):
            for j in range(n):
                if self._lt[i, j] and not (self._lt[i] & self._lt[:, j]).any():
                    covers.append((self.elements[i], self.elements[j]))
        covers.sort(key=lambda p: (self.index[p[0]], self.index[p[1]]))
        return covers

    def down(self, a):
        """Elements strictly below a."""
        i = self._i(a)
        return {self.elements[j] for j in np.nonzero(self._lt[:, i])[0]}

    def up(self, a):
        """Elements strictly above a."""
        i = self._i(a)
        return {self.elements[j] for j in np.nonzero(self._lt[i, :])[0]}

    def minimal_elements(self):
        mins = ~self._lt.any(axis=0)
        return [e for e, m in zip(self.elements, mins) if m]

    # -- derived posets --------------------------------------------------

    def restrict(self, members):
        """Induced subposet; keeps the carrier's canonical element order."""
        members = set(members)
        unknown = members - set(self.elements)
        if unknown:
            raise UnknownElement(f"unknown elements {sorted(unknown)}")
        keep = [i for i, e in enumerate(self.elements) if e in members]
        sub = self._lt[np.ix_(keep, keep)]
        return Poset([self.elements[i] for i in keep], sub)

    def reversed(self):
        return Poset(self.elements, self._lt.T.copy())

    # -- shape predicates --------------------------------------------------

    def is_chain(self):
        n = len(self.elements)
        return all(
            self.rel[i, j] != INCOMPARABLE for i in range(n) for j in range(i + 1, n)
        )

    def is_tree(self):
        """Every down-set is a chain (the library's working notion of a tree)."""
        n = len(self.elements)
        for i in range(n):
            below = np.nonzero(self._lt[:, i])[0]
            for a in range(len(below)):
                for b in range(a + 1, len(below)):
                    if self.rel[below[a], below[b]] == INCOMPARABLE:
                        return False
        return True

    def is_rooted_tree(self):
        return len(self) > 0 and self.is_tree() and len(self.minimal_elements()) == 1


def make_poset(elements, pairs):
    """Build a poset from any generating set of strict pairs.

    The transitive closure is computed here; a cycle in the generators
    raises :class:`CycleError`.
    """
    elements = list(elements)
    if len(set(elements)) != len(elements):
        seen, dup = set(), None
        for e in elements:
            if e in seen:
                dup = e
                break
            seen.add(e)
        raise DuplicateElement(f"duplicate element id {dup!r}")
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    mat = np.zeros((n, n), dtype=bool)
    for a, b in pairs:
        if a not in index:
            raise UnknownElement(f"unknown element {a!r} in pair")
        if b not in index:
            raise UnknownElement(f"unknown element {b!r} in pair")
        mat[index[a], index[b]] = True
    mat = _closure(n, mat)
    if mat.diagonal().any():
        bad = elements[int(np.nonzero(mat.diagonal())[0][0])]
        raise CycleError(f"generators create a cycle through {bad!r}")
    return Poset(elements, mat)


# -- canonical posets -----------------------------------------------------

_CANONICAL_NAMES = (
    "chain",
    "antichain",
    "N",
    "binary_tree_prefix",
    "reversed_binary_tree_prefix",
    "perp_prefix",
    "fence",
)


def _letters(n):
    out = []
    for i in range(n):
        name = ""
        j = i
        while True:
            name = chr(ord("a") + j % 26) + name
            j = j // 26 - 1
            if j < 0:
                break
        out.append(name)
    return out


def _binary_carrier(depth):
    # all 0/1 sequences of length < depth; "e" stands for the empty sequence
    if depth <= 0:
        return [], []
    words = [""]
    frontier = [""]
    for _ in range(depth - 1):
        frontier = [w + c for w in frontier for c in "01"]
        words += frontier
    words.sort(key=lambda w: (len(w), w))
    return ["e" if w == "" else w for w in words], words


def canonical(name, k):
    """One of the named stock posets, at size parameter k."""
    if name not in _CANONICAL_NAMES:
        raise UnknownName(f"unknown canonical poset {name!r}")
    if k < 0:
        raise ValueError("k must be >= 0")
    if name == "chain":
        ids = _letters(k)
        return make_poset(ids, [(ids[i], ids[i + 1]) for i in range(k - 1)])
    if name == "antichain":
        return make_poset(_letters(k), [])
    if name == "N":
        return make_poset(["0", "1", "2", "3"], [("1", "0"), ("1", "2"), ("3", "2")])
    if name == "fence":
        ids = _letters(k + 2)
        pairs = []
        for i in range(k + 1):
            if i % 2 == 0:
                pairs.append((ids[i], ids[i + 1]))
            else:
                pairs.append((ids[i + 1], ids[i]))
        return make_poset(ids, pairs)
    ids, words = _binary_carrier(k)
    byword = dict(zip(words, ids))
    if name in ("binary_tree_prefix", "reversed_binary_tree_prefix"):
        pairs = [
            (byword[u], byword[w])
            for u in words
            for w in words
            if u != w and w.startswith(u)
        ]
        p = make_poset(ids, pairs)
        return p.reversed() if name == "reversed_binary_tree_prefix" else p
    # perp_prefix: s < t iff s = u0s', t = u1t'
    pairs = []
    for s in words:
        for t in words:
            common = 0
            while common < min(len(s), len(t)) and s[common] == t[common]:
                common += 1
            if common < len(s) and common < len(t) and s[common] == "0" and t[common] == "1":
                pairs.append((byword[s], byword[t]))
    return make_poset(ids, pairs)


# -- sums -----------------------------------------------------------------

def p_sum_with_sources(index, parts):
    """P-sum plus the map from composite ids back to (index, part) pairs."""
    for p in index.elements:
        if p not in parts:
            raise MissingPart(f"no part for index element {p!r}")
        if len(parts[p]) == 0:
            raise EmptyPart(f"part at {p!r} is empty")
    ids = []
    sources = {}
    for p in index.elements:
        for a in parts[p].elements:
            composite = f"{p}.{a}"
            if composite in sources:
                raise DuplicateElement(f"composite id collision at {composite!r}")
            ids.append(composite)
            sources[composite] = (p, a)
    n = len(ids)
    mat = np.zeros((n, n), dtype=bool)
    pos = {e: i for i, e in enumerate(ids)}
    for e in ids:
        p, a = sources[e]
        for f in ids:
            q, b = sources[f]
            if p == q:
                if parts[p].lt(a, b):
                    mat[pos[e], pos[f]] = True
            elif index.lt(p, q):
                mat[pos[e], pos[f]] = True
    return Poset(ids, mat), sources


def p_sum(index, parts):
    """Substitute a poset into every point of the index poset."""
    return p_sum_with_sources(index, parts)[0]


def zeta_tree_sum(zeta, hangings):
    """Grow trees out of a chain: hangings at a chain element sit above it.

    ``hangings`` maps (chain element, branch index) to a finite tree.  The
    result keeps the chain's order, each hanging's own order, and puts every
    hanging above the reflexive down-set of its attachment point; distinct
    hangings stay incomparable.
    """
    if not zeta.is_chain():
        raise NotAChain("index of a tree sum must be a chain")
    for key, t in hangings.items():
        if key[0] not in zeta:
            raise UnknownElement(f"attachment point {key[0]!r} not in the chain")
        if not t.is_tree():
            raise NotATree(f"hanging at {key} is not a tree")
    ids = list(zeta.elements)
    origin = {e: None for e in ids}
    for (i, gamma), t in sorted(hangings.items(), key=lambda kv: (zeta.index[kv[0][0]], kv[0][1])):
        for a in t.elements:
            composite = f"{i}.{gamma}.{a}"
            if composite in origin:
                raise DuplicateElement(f"composite id collision at {composite!r}")
            ids.append(composite)
            origin[composite] = (i, gamma, a)
    n = len(ids)
    pos = {e: i for i, e in enumerate(ids)}
    mat = np.zeros((n, n), dtype=bool)
    for e in ids:
        for f in ids:
            oe, of = origin[e], origin[f]
            if oe is None and of is None:
                if zeta.lt(e, f):
                    mat[pos[e], pos[f]] = True
            elif oe is None:
                if zeta.leq(e, of[0]):
                    mat[pos[e], pos[f]] = True
            elif of is None:
                pass  # hangings never sit below the chain
            elif oe[:2] == of[:2]:
                if hangings[oe[:2]].lt(oe[2], of[2]):
                    mat[pos[e], pos[f]] = True
    return Poset(ids, mat)


# -- quasi-orders and colourings -----------------------------------------

class QuasiOrder:
    """Reflexive transitive relation over colour ids; antisymmetry not required."""

    def __init__(self, colours, pairs):
        self.colours = tuple(colours)
        if len(set(self.colours)) != len(self.colours):
            raise DuplicateElement("duplicate colour id")
        self.index = {c: i for i, c in enumerate(self.colours)}
        n = len(self.colours)
        mat = np.zeros((n, n), dtype=bool)
        for a, b in pairs:
            if a not in self.index or b not in self.index:
                raise UnknownElement(f"unknown colour in pair ({a!r}, {b!r})")
            mat[self.index[a], self.index[b]] = True
        np.fill_diagonal(mat, True)
        mat = _closure(n, mat)
        mat.setflags(write=False)
        self._le = mat

    def leq(self, a, b):
        if a not in self.index:
            raise UnknownElement(f"unknown colour {a!r}")
        if b not in self.index:
            raise UnknownElement(f"unknown colour {b!r}")
        return bool(self._le[self.index[a], self.index[b]])

    def le_pairs(self):
        return {
            (self.colours[i], self.colours[j])
            for i, j in zip(*np.nonzero(self._le))
        }

    def __eq__(self, other):
        return (
            isinstance(other, QuasiOrder)
            and self.colours == other.colours
            and np.array_equal(self._le, other._le)
        )

    def __hash__(self):
        return hash((self.colours, self._le.tobytes()))

    def __len__(self):
        return len(self.colours)

    def __repr__(self):
        return f"QuasiOrder({','.join(self.colours)})"


def union_q(q0, q1):
    """Disjoint union; comparabilities only within one side.

    Colour ids are kept verbatim; a clash on the right side is renamed with
    an ``r.`` prefix, so a union with the empty quasi-order is the identity.
    """
    taken = set(q0.colours)
    rename = {}
    for c in q1.colours:
        name = c
        while name in taken:
            name = f"r.{name}"
        rename[c] = name
        taken.add(name)
    colours = list(q0.colours) + [rename[c] for c in q1.colours]
    pairs = [(a, b) for a, b in q0.le_pairs()]
    pairs += [(rename[a], rename[b]) for a, b in q1.le_pairs()]
    return QuasiOrder(colours, pairs)


def product_q(q0, q1):
    """Pairs of colours ordered componentwise."""
    colours = [f"({a},{b})" for a in q0.colours for b in q1.colours]
    pairs = []
    for a0 in q0.colours:
        for b0 in q1.colours:
            for a1 in q0.colours:
                for b1 in q1.colours:
                    if q0.leq(a0, a1) and q1.leq(b0, b1):
                        pairs.append((f"({a0},{b0})", f"({a1},{b1})"))
    return QuasiOrder(colours, pairs)


ONE_COLOUR = "0"


def one_colour_palette():
    return QuasiOrder([ONE_COLOUR], [])


class ColouredPoset:
    """A poset with a total colouring into a quasi-order palette."""

    def __init__(self, poset, colouring, palette):
        self.poset = poset
        self.palette = palette
        self.colouring = dict(colouring)
        for e in poset.elements:
            if e not in self.colouring:
                raise UnknownElement(f"element {e!r} has no colour")
        for e, c in self.colouring.items():
            if e not in poset:
                raise UnknownElement(f"colouring mentions unknown element {e!r}")
            if c not in palette.index:
                raise UnknownElement(f"colour {c!r} not in palette")

    @classmethod
    def uniform(cls, poset, colour=ONE_COLOUR, palette=None):
        palette = palette if palette is not None else one_colour_palette()
        return cls(poset, {e: colour for e in poset.elements}, palette)

    @property
    def elements(self):
        return self.poset.elements

    def colour(self, e):
        return self.colouring[e]

    def restrict(self, members):
        sub = self.poset.restrict(members)
        return ColouredPoset(
            sub, {e: self.colouring[e] for e in sub.elements}, self.palette
        )

    def __len__(self):
        return len(self.poset)

    def __eq__(self, other):
        return (
            isinstance(other, ColouredPoset)
            and self.poset == other.poset
            and self.colouring == other.colouring
            and self.palette == other.palette
        )

    def __repr__(self):
        cols = ",".join(f"{e}:{self.colouring[e]}" for e in self.elements)
        return f"ColouredPoset({self.poset!r}|{cols})"


# -- embeddings -----------------------------------------------------------

@dataclass(frozen=True)
class EmbeddingMap:
    """Injective element map witnessing an embedding; kind names the category."""

    mapping: tuple
    kind: str = "poset"

    def __post_init__(self):
        sources = [a for a, _ in self.mapping]
        targets = [b for _, b in self.mapping]
        if len(set(sources)) != len(sources) or len(set(targets)) != len(targets):
            raise ValueError("embedding maps are injective")

    def as_dict(self):
        return dict(self.mapping)

    def __getitem__(self, key):
        return dict(self.mapping)[key]

    def __len__(self):
        return len(self.mapping)


def _as_embedding(x, y, assign, kind):
    pairs = tuple(
        (x.elements[i], y.elements[int(j)]) for i, j in enumerate(assign)
    )
    return EmbeddingMap(pairs, kind)


def embed(x, y):
    """First induced-suborder embedding of x into y, or None.

    The condition is an iff on ordered pairs, so <, > and incomparability
    are all preserved exactly; the exhaustive search makes None a proof of
    non-embeddability.  Candidates are tried in canonical target order and
    the first witness found is returned.
    """
    allowed = _search.degree_mask(x.rel, y.rel)
    assign = _search.search_injection(x.rel, y.rel, allowed)
    if assign is None:
        return None
    return _as_embedding(x, y, assign, "poset")


def coloured_embed(x, y):
    """Poset embedding that also increases colours, or None."""
    if x.palette != y.palette:
        raise PaletteMismatch("coloured embedding requires a shared palette")
    allowed = _search.degree_mask(x.poset.rel, y.poset.rel)
    for i, a in enumerate(x.elements):
        ca = x.colour(a)
        for j, b in enumerate(y.elements):
            if allowed[i, j] and not x.palette.leq(ca, y.colour(b)):
                allowed[i, j] = False
    assign = _search.search_injection(x.poset.rel, y.poset.rel, allowed)
    if assign is None:
        return None
    return _as_embedding(x.poset, y.poset, assign, "coloured")


def check_embedding(x, y, emap):
    """Re-check a witness pair by pair against the iff condition."""
    m = emap.as_dict()
    if set(m) != set(x.elements):
        return False
    if len(set(m.values())) != len(m):
        return False
    for a in x.elements:
        if m[a] not in y:
            return False
    for a in x.elements:
        for b in x.elements:
            if x.relation(a, b) != y.relation(m[a], m[b]):
                return False
    return True


def check_coloured_embedding(x, y, emap):
    if x.palette != y.palette:
        return False
    if not check_embedding(x.poset, y.poset, emap):
        return False
    m = emap.as_dict()
    return all(x.palette.leq(x.colour(a), y.colour(m[a])) for a in x.elements)


def is_isomorphic(x, y):
    """Poset isomorphism: same size plus an embedding either way round."""
    return len(x) == len(y) and embed(x, y) is not None


def coloured_isomorphic(x, y):
    """Bijection preserving the order exactly and colours literally."""
    if len(x) != len(y) or x.palette != y.palette:
        return False
    allowed = _search.degree_mask(x.poset.rel, y.poset.rel)
    for i, a in enumerate(x.elements):
        ca = x.colour(a)
        for j, b in enumerate(y.elements):
            if allowed[i, j] and y.colour(b) != ca:
                allowed[i, j] = False
    return _search.search_injection(x.poset.rel, y.poset.rel, allowed) is not None
