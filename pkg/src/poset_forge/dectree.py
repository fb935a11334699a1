"""Decomposition trees as labelled structured trees, and their embeddings.

A decomposition tree records how a poset is built from singletons by
iterated sums: internal nodes are coloured by their sum arity, leaves by
ground colours, and each internal node labels everything above it with a
slot of its arity.  Structured-tree embeddings preserve order (iff), meets
and labels, and increase colours; arity colours compare by embeddability,
ground colours by the ground palette, and the two blocks never compare.
Lifting such an embedding to the underlying posets is the whole point.
"""

from .composition import (
    CompositionSequence,
    CompositionSet,
    decomposition_function,
    eval_f_eta,
    eval_g,
    inline_poset,
    render_position,
)
from .core import (
    EmbeddingMap,
    Poset,
    check_coloured_embedding,
    embed,
)
from .errors import (
    BadLabel,
    EmptyPoset,
    NotATree,
    NotUpClosedChain,
    PaletteMismatch,
    TooLarge,
    VerificationFailure,
)
from . import config

from functools import lru_cache

import numpy as np


# node keys: ("i", position, layer) for internal nodes, ("l", position) for
# leaves; positions are the composition set's (layer, slot) pair tuples
def _addr(key, root):
    if key[0] == "i":
        _, p, i = key
        rel = p[len(root):]
        return tuple((j, 1, u) for j, u in rel) + ((i, 0, ""),)
    _, p = key
    rel = p[len(root):]
    return tuple((j, 1, u) for j, u in rel)


def _node_id(key):
    # absolute addresses: a branch extraction's nodes ARE the cone's nodes
    if key[0] == "i":
        _, p, i = key
        return f"{render_position(p)}/{i}" if p else str(i)
    _, p = key
    return render_position(p)


def _node_le(a, b):
    """Tree order on node keys: b sits above a when b's address continues
    past a's spine layer at an index at least a's."""
    if a == b:
        return True
    if a[0] == "l":
        return False
    _, p, i = a
    if b[0] == "i":
        _, q, j = b
        if p == q:
            return j >= i
        if len(q) > len(p) and q[: len(p)] == p:
            return q[len(p)][0] >= i
        return False
    _, leaf = b
    if len(leaf) > len(p) and leaf[: len(p)] == p:
        return leaf[len(p)][0] >= i
    return False


class StructuredTree:
    """A finite rooted tree with arity-labelled cones and coloured nodes."""

    def __init__(self, poset, kinds, arities, leaf_colours, ground_palette, labels):
        self.poset = poset
        self.kinds = dict(kinds)
        self.arities = dict(arities)
        self.leaf_colours = dict(leaf_colours)
        self.ground_palette = ground_palette
        self.labels = dict(labels)  # (v, x) -> arity element, for v < x
        if not poset.is_rooted_tree():
            raise NotATree("structured trees are rooted trees")
        n = len(poset)
        self._meet = np.full((n, n), -1, dtype=np.int64)
        lt = poset.rel
        for i in range(n):
            for j in range(n):
                below = [
                    k
                    for k in range(n)
                    if lt[k, i] in (1, 3) and lt[k, j] in (1, 3)
                ]
                # in a tree the common down-set is a chain; take its top
                top = below[0]
                for k in below[1:]:
                    if lt[top, k] == 1:
                        top = k
                self._meet[i, j] = top

    @property
    def nodes(self):
        return self.poset.elements

    def label(self, v, x):
        return self.labels[(v, x)]

    def label_range(self, v):
        """All label values above v; equals v's arity for sum nodes."""
        return self.arities[v]

    def meet(self, a, b):
        i = self.poset.index[a]
        j = self.poset.index[b]
        return self.poset.elements[int(self._meet[i, j])]

    def internal_nodes(self):
        return [n for n in self.nodes if self.kinds[n] == "sum"]

    def leaf_nodes(self):
        return [n for n in self.nodes if self.kinds[n] == "leaf"]

    def colour_text(self, n):
        if self.kinds[n] == "sum":
            return "sum" + inline_poset(self.arities[n])
        return self.leaf_colours[n]


def structured_tree_text(tree):
    """Bit-stable dump: one node per line with colour, parent and the label
    it carries under each ancestor's cone."""
    poset = tree.poset
    lines = []
    for n in poset.elements:
        below = sorted(poset.down(n), key=poset.index.__getitem__)
        parent = below[-1] if below else "-"
        if below:
            labels = ",".join(f"{v}:{tree.label(v, n)}" for v in below)
        else:
            labels = "-"
        lines.append(
            f"node {n} colour={tree.colour_text(n)} parent={parent} labels={labels}"
        )
    return "\n".join(lines) + "\n"


class DecompositionTree:
    """A structured tree together with the composition set that generated it."""

    def __init__(self, fset, leaf_args, base):
        self.fset = fset
        self.leaf_args = dict(leaf_args)
        self.base = base  # the coloured poset the root tree was built from
        keys = []
        for p, seq in fset.sequences.items():
            for i in range(len(seq)):
                keys.append(("i", p, i))
        for p in fset.leaves:
            keys.append(("l", p))
        keys.sort(key=lambda k: _addr(k, fset.root))
        self.key_of = {}
        self.node_of = {}
        ids = []
        for k in keys:
            nid = _node_id(k)
            ids.append(nid)
            self.key_of[nid] = k
            self.node_of[k] = nid
        n = len(ids)
        mat = np.zeros((n, n), dtype=bool)
        for a in range(n):
            for b in range(n):
                if a != b and _node_le(keys[a], keys[b]):
                    mat[a, b] = True
        poset = Poset(ids, mat)
        kinds = {}
        arities = {}
        leaf_colours = {}
        self.leaf_element = {}
        for k, nid in zip(keys, ids):
            if k[0] == "i":
                _, p, i = k
                kinds[nid] = "sum"
                arities[nid] = fset.sequences[p].arity(i)
            else:
                _, p = k
                kinds[nid] = "leaf"
                arg = leaf_args[p]
                e = arg.elements[0]
                leaf_colours[nid] = arg.colour(e)
                self.leaf_element[nid] = e
        labels = {}
        for kv, vid in zip(keys, ids):
            if kv[0] != "i":
                continue
            _, p, i = kv
            s_i = fset.sequences[p].distinguished(i)
            for kx, xid in zip(keys, ids):
                if kx == kv or not _node_le(kv, kx):
                    continue
                if kx[0] == "i" and kx[1] == p:
                    labels[(vid, xid)] = s_i
                    continue
                q = kx[1]
                first = q[len(p)]
                labels[(vid, xid)] = s_i if first[0] > i else first[1]
        palette = base.palette
        self.tree = StructuredTree(poset, kinds, arities, leaf_colours, palette, labels)

    def evaluate(self):
        """Rebuild the poset this tree describes, by bottom-up summation."""
        return eval_g(self.fset, self.leaf_args)

    def ground(self):
        """The described poset as an induced part of the base poset."""
        return self.base.restrict(set(self.leaf_element.values()))

    def sequence_at(self, node_id):
        key = self.key_of.get(node_id)
        if key is None:
            raise BadLabel(f"unknown node {node_id!r}")
        if key[0] != "i":
            raise BadLabel(f"{node_id} is a leaf")
        _, p, i = key
        return self.fset.sequences[p], i


def decomposition_tree(x):
    """Decompose x down to singletons and package the recording tree.

    The tree has exactly one leaf per element of x, coloured by that
    element's colour.
    """
    if len(x) == 0:
        raise EmptyPoset("cannot build a tree for an empty poset")
    fset, leafs = decomposition_function(x)
    return DecompositionTree(fset, leafs, x)


def subtree_extract(tree, node_id, value):
    """The decomposition tree of the cone above ``node_id`` labelled ``value``.

    For a non-distinguished slot this is the branch hanging at that slot;
    for the distinguished slot of a non-final layer it is the whole tail of
    the layer's sequence, with layer indices shifted down.
    """
    fset = tree.fset
    key = tree.key_of.get(node_id)
    if key is None:
        raise BadLabel(f"unknown node {node_id!r}")
    if key[0] != "i":
        raise BadLabel(f"{node_id} is a leaf")
    _, p, i = key
    seq = fset.sequences[p]
    if value not in seq.arity(i):
        raise BadLabel(f"{value!r} is not a slot of the arity at {node_id}")
    s_i = seq.distinguished(i)
    if value != s_i or i == len(seq) - 1:
        child = p + ((i, value),)
        sequences = {
            q: s for q, s in fset.sequences.items() if q[: len(child)] == child
        }
        leaves = {q for q in fset.leaves if q[: len(child)] == child}
        leaf_args = {q: tree.leaf_args[q] for q in leaves}
        sub = CompositionSet(child, sequences, leaves)
        return DecompositionTree(sub, leaf_args, tree.base)

    def remap(q):
        if q[: len(p)] != p or len(q) == len(p):
            return None
        j, v = q[len(p)]
        if j <= i:
            return None
        return p + ((j - i - 1, v),) + q[len(p) + 1 :]

    sequences = {p: seq.tail(i)}
    for q, s in fset.sequences.items():
        r = remap(q)
        if r is not None:
            sequences[r] = s
    leaves = set()
    leaf_args = {}
    for q in fset.leaves:
        r = remap(q)
        if r is not None:
            leaves.add(r)
            leaf_args[r] = tree.leaf_args[q]
    sub = CompositionSet(p, sequences, leaves)
    return DecompositionTree(sub, leaf_args, tree.base)


def recompose_along_chain(tree, zeta):
    """Rebuild the base poset from any up-closed chain of internal nodes.

    The chain's node colours give the arities, the labels toward the chain
    give the distinguished slots, and the extracted cones give the
    arguments.
    """
    zeta = list(zeta)
    if not zeta:
        raise NotUpClosedChain("empty chain")
    for n in zeta:
        if n not in tree.tree.poset:
            raise NotUpClosedChain(f"unknown node {n!r}")
        if tree.tree.kinds[n] != "sum":
            raise NotUpClosedChain(f"{n!r} is a leaf")
    poset = tree.tree.poset
    zeta = sorted(set(zeta), key=poset.index.__getitem__)
    top = zeta[-1]
    for a in zeta:
        if not poset.leq(a, top):
            raise NotUpClosedChain("nodes are not pairwise comparable")
    expected = {n for n in tree.tree.internal_nodes() if poset.leq(n, top)}
    if set(zeta) != expected:
        raise NotUpClosedChain("chain is not closed toward the root")

    entries = []
    args = {}
    for idx, node in enumerate(zeta):
        arity = tree.tree.arities[node]
        if idx + 1 < len(zeta):
            s = tree.tree.label(node, zeta[idx + 1])
        else:
            above = [m for m in poset.elements if poset.lt(node, m)]
            s = tree.tree.label(node, above[0])
        entries.append((arity, s))
    seq = CompositionSequence(tuple(entries))
    for idx, node in enumerate(zeta):
        for u in seq.slots(idx):
            args[(idx, u)] = subtree_extract(tree, node, u).evaluate()
    return eval_f_eta(seq, args)


# -- structured-tree embedding ----------------------------------------------

def _colour_leq(s_tree, t_tree, a, b, memo):
    ka, kb = s_tree.kinds[a], t_tree.kinds[b]
    if ka != kb:
        return False
    if ka == "leaf":
        return s_tree.ground_palette.leq(
            s_tree.leaf_colours[a], t_tree.leaf_colours[b]
        )
    key = (s_tree.arities[a], t_tree.arities[b])
    if key not in memo:
        memo[key] = embed(key[0], key[1]) is not None
    return memo[key]


def st_embed(source, target):
    """First structured-tree embedding, or None.

    Preserves order exactly, preserves meets, induces an arity embedding on
    every node's labels, and increases colours (arity colours compare by
    arity embeddability, leaf colours by the ground palette, and the two
    kinds never compare).  Search is exhaustive, deterministic and
    single-threaded; candidates are tried in canonical target order.
    """
    S = source.tree if isinstance(source, DecompositionTree) else source
    T = target.tree if isinstance(target, DecompositionTree) else target
    if S.ground_palette != T.ground_palette:
        raise PaletteMismatch("structured trees must share the ground palette")
    ns, nt = len(S.poset), len(T.poset)
    if ns > nt:
        return None
    memo = {}
    allowed = [
        [
            _colour_leq(S, T, a, b, memo)
            for b in T.poset.elements
        ]
        for a in S.poset.elements
    ]
    snodes = list(S.poset.elements)
    tnodes = list(T.poset.elements)
    srel = S.poset.rel
    trel = T.poset.rel
    assign = [-1] * ns
    used = [False] * nt
    theta = {}  # source internal node -> dict(label value -> image value)

    def consistent(i, j):
        if not allowed[i][j]:
            return False
        a = snodes[i]
        b = tnodes[j]
        for p in range(i):
            if trel[assign[p], j] != srel[p, i]:
                return False
        # canonical order is a linear extension, so meets of assigned pairs
        # are already assigned
        for p in range(i):
            ms = S.poset.index[S.meet(snodes[p], a)]
            mt = T.poset.index[T.meet(tnodes[assign[p]], b)]
            if assign[ms] != mt:
                return False
        for p in range(i):
            v = snodes[p]
            if S.kinds[v] != "sum" or srel[p, i] != 1:
                continue
            la = S.label(v, a)
            lb = T.label(tnodes[assign[p]], b)
            th = theta.setdefault(v, {})
            if la in th:
                if th[la] != lb:
                    return False
                continue
            arity_s = S.arities[v]
            arity_t = T.arities[tnodes[assign[p]]]
            ok = all(
                arity_s.relation(la, la2) == arity_t.relation(lb, th[la2])
                for la2 in th
            )
            if not ok:
                return False
        return True

    def place(i, j):
        a = snodes[i]
        for p in range(i):
            v = snodes[p]
            if S.kinds[v] == "sum" and srel[p, i] == 1:
                la = S.label(v, a)
                th = theta.setdefault(v, {})
                if la not in th:
                    th[la] = T.label(tnodes[assign[p]], tnodes[j])

    # theta bookkeeping on backtrack is easiest done by full rebuild
    def rebuild_theta(upto):
        theta.clear()
        for q in range(upto):
            place_q = q
            a = snodes[place_q]
            for p in range(place_q):
                v = snodes[p]
                if S.kinds[v] == "sum" and srel[p, place_q] == 1:
                    la = S.label(v, a)
                    th = theta.setdefault(v, {})
                    th.setdefault(la, T.label(tnodes[assign[p]], tnodes[assign[place_q]]))

    i = 0
    nxt = [0] * ns
    while True:
        j = nxt[i]
        found = False
        while j < nt:
            if not used[j] and consistent(i, j):
                found = True
                break
            j += 1
        if found:
            assign[i] = j
            used[j] = True
            place(i, j)
            nxt[i] = j + 1
            i += 1
            if i == ns:
                mapping = tuple(
                    (snodes[p], tnodes[assign[p]]) for p in range(ns)
                )
                return EmbeddingMap(mapping, "structured-tree")
            nxt[i] = 0
        else:
            nxt[i] = 0
            i -= 1
            if i < 0:
                return None
            used[assign[i]] = False
            assign[i] = -1
            rebuild_theta(i)


def verify_st_embedding(source, target, emap):
    """Full check of every structured-tree embedding condition."""
    S = source.tree if isinstance(source, DecompositionTree) else source
    T = target.tree if isinstance(target, DecompositionTree) else target
    if S.ground_palette != T.ground_palette:
        return False
    m = emap.as_dict()
    if set(m) != set(S.poset.elements):
        return False
    if len(set(m.values())) != len(m):
        return False
    memo = {}
    for a in S.poset.elements:
        if m[a] not in T.poset:
            return False
        if not _colour_leq(S, T, a, m[a], memo):
            return False
    for a in S.poset.elements:
        for b in S.poset.elements:
            if S.poset.relation(a, b) != T.poset.relation(m[a], m[b]):
                return False
            if T.poset.index[m[S.meet(a, b)]] != T.poset.index[T.meet(m[a], m[b])]:
                return False
    for v in S.internal_nodes():
        th = {}
        for x in S.poset.up(v):
            la = S.label(v, x)
            lb = T.label(m[v], m[x])
            if th.setdefault(la, lb) != lb:
                return False
        arity_s = S.arities[v]
        arity_t = T.arities[m[v]]
        for la1, lb1 in th.items():
            for la2, lb2 in th.items():
                if arity_s.relation(la1, la2) != arity_t.relation(lb1, lb2):
                    return False
    return True


def lift_embedding(source_tree, target_tree, emap):
    """Turn a verified tree embedding into a coloured-poset embedding.

    Leaves map to leaves (leaf colours never compare with arity colours),
    so sending each ground element to the ground element at its leaf's
    image is well defined; the result is re-verified before being returned
    and a failure signals a library bug.
    """
    if not verify_st_embedding(source_tree, target_tree, emap):
        raise VerificationFailure("input map is not a structured-tree embedding")
    m = emap.as_dict()
    pairs = []
    for leaf, element in source_tree.leaf_element.items():
        image = m[leaf]
        if image not in target_tree.leaf_element:
            raise VerificationFailure("a leaf mapped to a non-leaf")
        pairs.append((element, target_tree.leaf_element[image]))
    pairs.sort(key=lambda ab: source_tree.base.poset.index[ab[0]])
    lifted = EmbeddingMap(tuple(pairs), "coloured")
    if not check_coloured_embedding(
        source_tree.ground(), target_tree.ground(), lifted
    ):
        raise VerificationFailure("lifted map failed coloured-embedding check")
    return lifted


# -- ranks --------------------------------------------------------------------

def tree_rank(tree):
    """Height-style rank: leaves are 0, a node is one above its children."""
    poset = tree.poset if isinstance(tree, StructuredTree) else tree
    if not poset.is_rooted_tree():
        raise NotATree("rank is defined for rooted trees")
    order = sorted(poset.elements, key=lambda e: len(poset.up(e)))
    rank = {}
    for e in order:
        above = poset.up(e)
        rank[e] = max((rank[f] + 1 for f in above), default=0)
    root = poset.minimal_elements()[0]
    return rank[root]


def scattered_rank(tree, bound=None):
    """Least number of nested chain-of-trees layerings that build the tree.

    A tree is rank <= r+1 when some root path exists whose off-path cones
    all have rank <= r; singletons are rank 0.  Exact memoized search, no
    polynomial shortcut.
    """
    poset = tree.poset if isinstance(tree, StructuredTree) else tree
    limit = config.effective_bound(config.SCATTERED_RANK_BOUND, bound)
    if len(poset) > limit:
        raise TooLarge(f"tree has {len(poset)} > {limit} nodes")
    if not poset.is_rooted_tree():
        raise NotATree("scattered rank is defined for rooted trees")

    parent = {}
    for e in poset.elements:
        below = poset.down(e)
        parent[e] = max(below, key=lambda f: len(poset.down(f)), default=None)

    @lru_cache(maxsize=None)
    def rank(cone):
        nodes = set(cone)
        if len(nodes) <= 1:
            return 0
        best = None
        for t in cone:
            path = {n for n in nodes if poset.leq(n, t)}
            worst = 0
            for d in nodes - path:
                if parent[d] in path:
                    sub = frozenset(
                        n for n in nodes if poset.leq(d, n)
                    )
                    worst = max(worst, rank(sub))
            if best is None or worst < best:
                best = worst
        return best + 1

    return rank(frozenset(poset.elements))
