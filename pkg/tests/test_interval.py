import itertools
import random

import pytest

import helpers
from poset_forge import (
    canonical,
    enumerate_intervals,
    is_indecomposable,
    is_interval,
    make_poset,
    maximal_interval_chain,
    quotient,
    ssr,
)
from poset_forge.composition import maximal_decomposition
from poset_forge.core import ColouredPoset
from poset_forge.errors import (
    EmptyPoset,
    EmptySet,
    NotAnInterval,
    Overlap,
    TooLarge,
    UnknownElement,
)


class TestSSR:
    def test_in_n(self):
        n = canonical("N", 0)
        assert ssr("1", "0", "2", n)  # 1 below both
        assert not ssr("3", "0", "2", n)  # 3 incomparable to 0, below 2

    def test_antichain_triples(self):
        ac = canonical("antichain", 3)
        for p, a, b in itertools.permutations(ac.elements, 3):
            assert ssr(p, a, b, ac)

    def test_distinctness_required(self):
        with pytest.raises(ValueError):
            ssr("a", "a", "b", canonical("chain", 2))

    def test_unknown_element(self):
        with pytest.raises(UnknownElement):
            ssr("z", "a", "b", canonical("chain", 3))

    def test_agrees_with_brute(self):
        rng = random.Random(3)
        for _ in range(20):
            p = helpers.random_poset(rng, 5)
            for t in itertools.permutations(p.elements, 3):
                assert ssr(*t, p) == helpers.brute_ssr(p, *t)


class TestIsInterval:
    def test_chain_prefix(self):
        ch3 = canonical("chain", 3)
        assert is_interval(ch3, {"a", "b"})
        assert not is_interval(ch3, {"a", "c"})

    def test_n_bottom_pair(self):
        assert not is_interval(canonical("N", 0), {"0", "2"})

    def test_empty_rejected(self):
        with pytest.raises(EmptySet):
            is_interval(canonical("chain", 2), set())


class TestEnumerateIntervals:
    def test_chain3(self):
        got = set(enumerate_intervals(canonical("chain", 3)))
        assert got == {
            frozenset(s)
            for s in ({"a"}, {"b"}, {"c"}, {"a", "b"}, {"b", "c"}, {"a", "b", "c"})
        }

    def test_n_only_trivial(self):
        n = canonical("N", 0)
        got = set(enumerate_intervals(n))
        assert got == {frozenset([e]) for e in n.elements} | {frozenset(n.elements)}

    def test_antichain2(self):
        got = set(enumerate_intervals(canonical("antichain", 2)))
        assert got == {frozenset({"a"}), frozenset({"b"}), frozenset({"a", "b"})}

    def test_matches_brute_on_catalog(self, catalog5):
        for n, reps in catalog5.items():
            for p in reps:
                assert set(enumerate_intervals(p)) == set(helpers.brute_intervals(p))

    def test_size_bound(self):
        with pytest.raises(TooLarge):
            enumerate_intervals(canonical("antichain", 17))
        assert enumerate_intervals(canonical("antichain", 3), bound=3)
        with pytest.raises(TooLarge):
            enumerate_intervals(canonical("antichain", 4), bound=3)


class TestIndecomposable:
    def test_examples(self):
        assert is_indecomposable(canonical("N", 0))
        assert not is_indecomposable(canonical("chain", 3))
        assert is_indecomposable(canonical("chain", 2))

    def test_empty_rejected(self):
        with pytest.raises(EmptyPoset):
            is_indecomposable(make_poset([], []))

    def test_agrees_with_brute(self, catalog5):
        for n, reps in catalog5.items():
            for p in reps:
                assert is_indecomposable(p) == helpers.brute_indecomposable(p)


class TestQuotient:
    def test_chain_collapse(self):
        q, rep = quotient(canonical("chain", 3), [{"a", "b"}])
        assert q == canonical("chain", 3).restrict({"a", "c"})
        assert rep == {"a": "a", "b": "a", "c": "c"}

    def test_empty_family(self):
        n = canonical("N", 0)
        q, rep = quotient(n, [])
        assert q == n and rep == {e: e for e in n.elements}

    def test_fence_pair_not_interval(self):
        with pytest.raises(NotAnInterval):
            quotient(canonical("fence", 2), [{"a", "b"}])

    def test_overlap(self):
        with pytest.raises(Overlap):
            quotient(canonical("chain", 3), [{"a", "b"}, {"b", "c"}])


class TestMaximalIntervalChain:
    def test_chain3_anchor_a(self):
        chain = maximal_interval_chain(canonical("chain", 3), "a")
        assert list(chain) == [
            frozenset({"a", "b", "c"}),
            frozenset({"a", "b"}),
            frozenset({"a"}),
        ]

    def test_n_anchor_0(self):
        chain = maximal_interval_chain(canonical("N", 0), "0")
        assert list(chain) == [frozenset("0123"), frozenset("0")]

    def test_singleton(self):
        chain = maximal_interval_chain(canonical("chain", 1))
        assert list(chain) == [frozenset({"a"})]

    def test_default_anchor_is_first(self):
        ch = canonical("chain", 3)
        assert maximal_interval_chain(ch).members == maximal_interval_chain(ch, "a").members

    def test_unknown_anchor(self):
        with pytest.raises(UnknownElement):
            maximal_interval_chain(canonical("chain", 2), "z")

    def test_maximality(self, catalog5):
        # every interval is already in the chain or incomparable to a member
        for n, reps in catalog5.items():
            for p in reps:
                chain = set(maximal_interval_chain(p).members)
                for iv in enumerate_intervals(p):
                    if iv in chain:
                        continue
                    assert any(not (iv <= c or c <= iv) for c in chain)


class TestChainLemmas:
    def test_union_intersection_of_chains(self, catalog5):
        # brute force over all nested chains drawn from the interval family
        for n, reps in catalog5.items():
            for p in reps:
                intervals = enumerate_intervals(p)
                for a, b in itertools.combinations(intervals, 2):
                    if a < b or b < a:
                        assert is_interval(p, a | b)
                        assert is_interval(p, a & b)

    def test_overlapping_union_is_interval(self, catalog5):
        for n, reps in catalog5.items():
            for p in reps:
                intervals = enumerate_intervals(p)
                for a, b in itertools.combinations(intervals, 2):
                    if a & b:
                        assert is_interval(p, a | b)


class TestIntervalClassification:
    def test_exhaustive_to_size6(self, catalog6):
        # Every interval that meets all layers between its lowest and
        # highest is a tail of the chain, or a full layer range plus an
        # interval of the boundary layer.  Intervals may skip a layer
        # outright (two antichain layers stacked over a third allow it);
        # those are exempt, and exactly those.
        for n, reps in catalog6.items():
            for p in reps:
                seq, args, chain = maximal_decomposition(ColouredPoset.uniform(p))
                tails = list(chain.members)  # tails[j] = union of layers >= j
                m = len(tails)
                layers = [
                    tails[j] - (tails[j + 1] if j + 1 < m else frozenset())
                    for j in range(m)
                ]
                layer_ivs = []
                for layer in layers:
                    sub = p.restrict(layer)
                    layer_ivs.append(set(enumerate_intervals(sub)) | {frozenset()})
                for iv in enumerate_intervals(p):
                    if iv in set(tails):
                        continue
                    met = [j for j in range(m) if iv & layers[j]]
                    if any(
                        not (iv & layers[j]) for j in range(met[0], met[-1] + 1)
                    ):
                        continue
                    found = False
                    for j0 in range(m):
                        for j1 in range(j0, m):
                            base = tails[j0] - tails[j1]
                            if any(iv == base | x for x in layer_ivs[j1]):
                                found = True
                                break
                        if found:
                            break
                    assert found, (p, sorted(iv))
