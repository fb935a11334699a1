"""Composition sequences, their index posets, and poset decomposition.

A composition sequence is a list of sum-arities, each with a distinguished
slot where the rest of the composition nests.  Evaluating it means summing
arguments over the single index poset built by :func:`h_eta`.  Going the
other way, :func:`maximal_decomposition` peels a poset into indecomposable
arities along a canonical maximal interval chain, and
:func:`decomposition_function` iterates that until only singletons remain.
"""

from dataclasses import dataclass

from .core import (
    ColouredPoset,
    coloured_isomorphic,
    make_poset,
    p_sum_with_sources,
)
from .errors import (
    BadIndex,
    EmptyPoset,
    Malformed,
    MissingArgument,
    MissingLeaf,
    PaletteMismatch,
    VerificationFailure,
)
from .interval import (
    enumerate_intervals,
    is_indecomposable,
    maximal_interval_chain,
    quotient,
)


@dataclass(frozen=True)
class CompositionSequence:
    """Entries (arity poset, distinguished slot); the last slot set is full."""

    entries: tuple

    def __post_init__(self):
        if not self.entries:
            raise Malformed("a composition sequence has at least one entry")
        for arity, s in self.entries:
            if len(arity) == 0:
                raise Malformed("arities are non-empty")
            if s not in arity:
                raise Malformed(f"distinguished element {s!r} not in its arity")

    def __len__(self):
        return len(self.entries)

    def arity(self, i):
        return self.entries[i][0]

    def distinguished(self, i):
        return self.entries[i][1]

    def slots(self, i):
        """Argument slots at layer i: the arity minus the distinguished
        element, except at the final layer where every slot is open."""
        arity, s = self.entries[i]
        if i == len(self.entries) - 1:
            return tuple(arity.elements)
        return tuple(e for e in arity.elements if e != s)

    def positions(self):
        return tuple(
            (i, u) for i in range(len(self.entries)) for u in self.slots(i)
        )

    def head(self, j):
        return CompositionSequence(self.entries[: j + 1])

    def tail(self, j):
        return CompositionSequence(self.entries[j + 1 :])


def h_eta_with_slots(seq):
    """Index poset of a composition sequence, plus slot ids -> (i, u)."""
    ids = []
    slot_of = {}
    for i in range(len(seq)):
        for u in seq.slots(i):
            sid = f"{i}.{u}"
            ids.append(sid)
            slot_of[sid] = (i, u)
    pairs = []
    for sid1 in ids:
        i, u = slot_of[sid1]
        for sid2 in ids:
            j, v = slot_of[sid2]
            if sid1 == sid2:
                continue
            if i == j:
                if seq.arity(i).lt(u, v):
                    pairs.append((sid1, sid2))
            elif i < j:
                if seq.arity(i).lt(u, seq.distinguished(i)):
                    pairs.append((sid1, sid2))
            else:
                if seq.arity(j).lt(seq.distinguished(j), v):
                    pairs.append((sid1, sid2))
    return make_poset(ids, pairs), slot_of


def h_eta(seq):
    """The poset whose sum realizes the whole composition in one step.

    Slots u, v at layers i <= j compare by: the layer-i arity when i == j;
    u below the layer-i distinguished slot when i < j; v above the layer-j
    distinguished slot when i > j.
    """
    return h_eta_with_slots(seq)[0]


def _shared_palette(args):
    palette = None
    for q in args.values():
        if palette is None:
            palette = q.palette
        elif q.palette != palette:
            raise PaletteMismatch("all arguments must share one palette")
    return palette


def eval_f_eta_with_sources(seq, args):
    """Evaluate and keep, per output element, its (slot, original id) origin."""
    for pos in seq.positions():
        if pos not in args:
            raise MissingArgument(f"no argument for slot {pos}")
    palette = _shared_palette(args)
    index, slot_of = h_eta_with_slots(seq)
    parts = {sid: args[slot_of[sid]].poset for sid in index.elements}
    total, sources = p_sum_with_sources(index, parts)
    origin = {
        composite: (slot_of[sid], a) for composite, (sid, a) in sources.items()
    }
    colouring = {
        composite: args[pos].colour(a) for composite, (pos, a) in origin.items()
    }
    return ColouredPoset(total, colouring, palette), origin


def eval_f_eta(seq, args):
    """Sum the arguments over the sequence's index poset, colours inherited."""
    return eval_f_eta_with_sources(seq, args)[0]


def split_assoc_check(seq, args, j):
    """Evaluating all at once equals nesting the tail into slot j's
    distinguished position of the head."""
    if not 0 <= j < len(seq):
        raise BadIndex(f"index {j} out of range")
    if j == len(seq) - 1:
        return True
    lhs = eval_f_eta(seq, args)
    tail = seq.tail(j)
    tail_args = {
        (i - (j + 1), u): args[(i, u)] for (i, u) in seq.positions() if i > j
    }
    nested = eval_f_eta(tail, tail_args)
    head = seq.head(j)
    head_args = {
        (i, u): args[(i, u)] for (i, u) in seq.positions() if i < j
    }
    for u in seq.slots(j):
        head_args[(j, u)] = args[(j, u)]
    head_args[(j, seq.distinguished(j))] = nested
    rhs = eval_f_eta(head, head_args)
    return coloured_isomorphic(lhs, rhs)


# -- maximal decomposition -------------------------------------------------

def _fresh_id(taken):
    name = "_s"
    while name in taken:
        name = "_" + name
    return name


def _layer_arity(x, layer, rest):
    """Arity for one chain layer: the layer plus a stand-in slot for the
    rest of the chain, quotiented by its maximal proper intervals.

    ``rest`` is the next (smaller) chain member, or None at the last layer.
    Returns (arity poset, distinguished id or None, block map slot -> set).
    """
    carrier = x.poset
    members = sorted(layer, key=carrier.index.__getitem__)
    if rest is None:
        arity = carrier.restrict(members)
        return arity, None, {u: frozenset([u]) for u in members}
    s_id = _fresh_id(set(members))
    witnesses = sorted(rest, key=carrier.index.__getitem__)
    pairs = []
    for a in members:
        for b in members:
            if carrier.lt(a, b):
                pairs.append((a, b))
    # the stand-in relates to the layer exactly as the rest does; the
    # interval property makes this independent of the witness, checked here
    for d in members:
        codes = {carrier.relation(w, d) for w in witnesses}
        if len(codes) != 1:
            raise VerificationFailure(
                f"chain member is not an interval relative to {d!r}"
            )
        code = codes.pop()
        if code == 1:  # rest < d
            pairs.append((s_id, d))
        elif code == 2:
            pairs.append((d, s_id))
    b_prime = make_poset(members + [s_id], pairs)
    blocks = [
        iv
        for iv in enumerate_intervals(b_prime)
        if len(iv) >= 2 and s_id not in iv
    ]
    maximal = [
        iv for iv in blocks if not any(iv < other for other in blocks)
    ]
    seen = set()
    for iv in maximal:
        if iv & seen:
            raise VerificationFailure("maximal collapse intervals overlap")
        seen |= iv
    arity, rep_of = quotient(b_prime, maximal)
    block_of = {}
    for u in arity.elements:
        if u == s_id:
            continue
        block_of[u] = frozenset(e for e in members if rep_of[e] == u)
    return arity, s_id, block_of


def maximal_decomposition(x, anchor=None):
    """Peel a coloured poset into indecomposable arities along the
    canonical maximal interval chain.

    Returns (sequence, arguments, chain) with the arguments keyed by
    (layer, slot).  Evaluating the sequence on the arguments rebuilds the
    input, and the tail of the sequence from layer j rebuilds chain member
    j; both facts are exercised heavily by the test suite.
    """
    if len(x) == 0:
        raise EmptyPoset("cannot decompose an empty poset")
    chain = maximal_interval_chain(x.poset, anchor)
    members = list(chain.members)
    entries = []
    args = {}
    for j, layer_set in enumerate(members):
        rest = members[j + 1] if j + 1 < len(members) else None
        layer = layer_set - rest if rest is not None else layer_set
        arity, s_id, block_of = _layer_arity(x, layer, rest)
        if not is_indecomposable(arity):
            raise VerificationFailure("layer arity is not indecomposable")
        if s_id is None:
            s_id = arity.elements[0]
        entries.append((arity, s_id))
        for u, block in block_of.items():
            args[(j, u)] = x.restrict(block)
    seq = CompositionSequence(tuple(entries))
    for pos in seq.positions():
        if pos not in args:
            raise VerificationFailure(f"no argument produced for slot {pos}")
    return seq, args, chain


# -- composition sets --------------------------------------------------------

class CompositionSet:
    """A prefix-closed tree of composition sequences.

    Positions are tuples of (layer, slot) pairs; the root position is
    normally () but subtrees keep their original address.  A position is a
    child of its parent exactly when its last pair names one of the parent
    sequence's slots.
    """

    def __init__(self, root, sequences, leaves):
        self.root = tuple(root)
        self.sequences = dict(sequences)
        self.leaves = frozenset(leaves)
        self._validate()

    def _validate(self):
        internal = set(self.sequences)
        if internal & self.leaves:
            raise Malformed("a position cannot be both internal and a leaf")
        positions = internal | self.leaves
        if self.root not in positions:
            raise Malformed("root position missing")
        for p in positions:
            if p[: len(self.root)] != self.root:
                raise Malformed(f"position {p} outside the root")
            if p != self.root:
                parent = p[:-1]
                if parent not in internal:
                    raise Malformed(f"position {p} has no internal parent")
        for p, seq in self.sequences.items():
            expected = {p + (pos,) for pos in seq.positions()}
            actual = {q for q in positions if len(q) == len(p) + 1 and q[:-1] == p}
            if expected != actual:
                raise Malformed(
                    f"children of {p} do not match the sequence's slots"
                )
        if self.sequences and self.root in self.leaves:
            raise Malformed("non-trivial set cannot have a leaf root")
        if not self.sequences and self.leaves != {self.root}:
            raise Malformed("empty set must have exactly the root leaf")

    def positions(self):
        return set(self.sequences) | set(self.leaves)

    def __eq__(self, other):
        return (
            isinstance(other, CompositionSet)
            and self.root == other.root
            and self.sequences == other.sequences
            and self.leaves == other.leaves
        )


def decomposition_function(x):
    """Iterate maximal decomposition down to singleton leaves.

    Returns (composition set, leaf arguments); evaluating the set on the
    leaves reproduces the input up to isomorphism.  Terminates because every
    argument is strictly smaller than its parent.
    """
    if len(x) == 0:
        raise EmptyPoset("cannot decompose an empty poset")

    def walk(sub):
        if len(sub) == 1:
            return {}, {(): sub}
        seq, args, _ = maximal_decomposition(sub)
        seqs = {(): seq}
        leafs = {}
        for pos, q in args.items():
            sub_seqs, sub_leafs = walk(q)
            for p, s in sub_seqs.items():
                seqs[(pos,) + p] = s
            for p, v in sub_leafs.items():
                leafs[(pos,) + p] = v
        return seqs, leafs

    seqs, leafs = walk(x)
    fset = CompositionSet((), seqs, frozenset(leafs))
    return fset, leafs


def eval_g(fset, leaf_args):
    """Bottom-up evaluation of a composition set on its leaf arguments."""
    for leaf in fset.leaves:
        if leaf not in leaf_args:
            raise MissingLeaf(f"no value for leaf {leaf}")
    if not fset.sequences:
        return leaf_args[fset.root]

    def value_at(p):
        seq = fset.sequences[p]
        args = {}
        for pos in seq.positions():
            child = p + (pos,)
            if child in fset.sequences:
                args[pos] = value_at(child)
            else:
                args[pos] = leaf_args[child]
        return eval_f_eta(seq, args)

    return value_at(fset.root)


# -- serialization -----------------------------------------------------------

def render_position(p):
    if not p:
        return "e"
    return "/".join(f"{i}.{u}" for i, u in p)


def inline_poset(p):
    covers = ",".join(f"{a}<{b}" for a, b in p.cover_pairs())
    return "{" + ",".join(p.elements) + ":" + covers + "}"


def composition_set_text(fset, leaf_args=None):
    """Indented, bit-stable dump: one line per position sequence."""
    lines = []

    def emit(p, depth):
        pad = "  " * depth
        rel = p[len(fset.root):]
        if p in fset.sequences:
            seq = fset.sequences[p]
            body = " ".join(
                f"[{inline_poset(arity)}/{s}]" for arity, s in seq.entries
            )
            lines.append(f"{pad}{render_position(rel)}: {body}")
            for pos in fset.sequences[p].positions():
                emit(p + (pos,), depth + 1)
        else:
            suffix = ""
            if leaf_args is not None and p in leaf_args:
                leaf = leaf_args[p]
                e = leaf.elements[0]
                suffix = f" {e} colour={leaf.colour(e)}"
            lines.append(f"{pad}{render_position(rel)}: leaf{suffix}")

    emit(fset.root, 0)
    return "\n".join(lines) + "\n"
