import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import all_subsets, brute_closed
from exdir import graph as gr
from exdir.closed import is_closed, min_closed_containing, min_closed_size, peel
from exdir.graph import apsp


def test_whole_vertex_set_is_closed(atlas5):
    for g in atlas5:
        assert is_closed(apsp(g), g.vertices)


def test_examples():
    assert not is_closed(apsp(gr.cycle(4)), {0, 2})
    assert is_closed(apsp(gr.cycle(6)), {0, 1, 3, 4})


def test_empty_set_rejected():
    with pytest.raises(ValueError):
        is_closed(apsp(gr.path(3)), set())
    with pytest.raises(ValueError):
        is_closed(apsp(gr.path(3)), {5})


def test_peel_examples():
    res = peel(apsp(gr.path(4)), {0, 1})
    assert res.core == frozenset() and res.layers == (frozenset({0, 1}),)
    res = peel(apsp(gr.path(4)), range(4))
    assert res.core == frozenset(range(4)) and res.layers == ()
    res = peel(apsp(gr.cycle(6)), {0, 1, 2, 3, 4})
    assert res.layers == (frozenset({2}),) and res.core == frozenset({0, 1, 3, 4})


def test_min_closed_examples():
    assert min_closed_size(apsp(gr.complete(5)))[0] == 2
    assert min_closed_size(apsp(gr.cycle(6))) == (4, frozenset({0, 1, 3, 4}))
    for n in range(2, 7):
        assert min_closed_size(apsp(gr.path(n)))[0] == n
    assert min_closed_containing(apsp(gr.complete(5)), 0)[0] == 2
    assert min_closed_containing(apsp(gr.path(4)), 0)[0] == 4
    assert min_closed_containing(apsp(gr.cycle(6)), 0)[0] == 4


def test_closedness_matches_definition(atlas5):
    for g in atlas5:
        dm = apsp(g)
        for s in all_subsets(g.n):
            assert is_closed(dm, s) == brute_closed(dm, s), (g.edges, s)


def test_min_closed_search_matches_exhaustive(atlas6):
    for g in atlas6:
        dm = apsp(g)
        closed = [set(s) for s in all_subsets(g.n) if brute_closed(dm, s)]
        size, witness = min_closed_size(dm)
        assert size == min(map(len, closed))
        assert len(witness) == size and brute_closed(dm, witness)
        for v in g.vertices:
            size_v, wit_v = min_closed_containing(dm, v)
            assert size_v == min(len(c) for c in closed if v in c)
            assert v in wit_v and len(wit_v) == size_v and brute_closed(dm, wit_v)


def _peel_cases():
    rng = random.Random(7)
    cases = []
    for spec in ["cycle:7", "lattice:3x3", "lollipop:6,3", "spider:1;2,2", "star:4", "randtree:8,3"]:
        g = gr.generate(spec)
        for _ in range(30):
            k = rng.randint(1, g.n)
            cases.append((spec, tuple(rng.sample(range(g.n), k))))
    return cases


@pytest.mark.parametrize("spec,subset", _peel_cases())
def test_core_is_union_of_closed_subsets(spec, subset):
    dm = apsp(gr.generate(spec))
    res = peel(dm, subset)
    union = set()
    for k in range(1, len(subset) + 1):
        for s in itertools.combinations(subset, k):
            if brute_closed(dm, s):
                union |= set(s)
    assert res.core == union
    assert set().union(res.core, *res.layers) == set(subset)
    # each peeled member misses a distance within what was left at its round
    remaining = set(subset)
    for layer in res.layers:
        for u in layer:
            got = {dm(u, w) for w in remaining}
            assert got != set(range(dm.ecc[u] + 1))
        remaining -= layer


@settings(max_examples=80, deadline=None)
@given(st.integers(3, 9), st.integers(0, 10**6), st.data())
def test_peel_is_idempotent_on_core(n, seed, data):
    g = gr.random_tree(n, seed)
    dm = apsp(g)
    subset = data.draw(st.sets(st.integers(0, n - 1), min_size=1))
    res = peel(dm, subset)
    if res.core:
        assert is_closed(dm, res.core)
        again = peel(dm, res.core)
        assert again.core == res.core and again.layers == ()
