import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ggl.graphs import (
    LabeledGraph,
    canonical_form,
    edge_subgraph,
    fold,
    isomorphic,
    read_word,
)
from ggl.words import enumerate_cyclic, enumerate_freely_reduced

a, b = 1, 2


def random_graph(rng, k=2, max_vertices=8, max_edges=10):
    nv = rng.randint(1, max_vertices)
    # spanning tree keeps it connected
    edges = [(rng.randrange(i), rng.choice([1, -1]) * rng.randint(1, k), i) for i in range(1, nv)]
    for _ in range(rng.randint(0, max_edges - len(edges)) if max_edges > len(edges) else 0):
        edges.append((rng.randrange(nv), rng.choice([1, -1]) * rng.randint(1, k), rng.randrange(nv)))
    return LabeledGraph(nv, tuple(edges), k, base=0)


def test_single_fold():
    g = LabeledGraph(3, ((0, a, 1), (0, a, 2)), 2)
    f = fold(g)
    assert (g.num_vertices, g.volume) == (3, 2)
    assert (f.num_vertices, f.volume) == (2, 1)
    assert f.is_folded()


def test_fold_idempotent_and_paths_unchanged():
    g = LabeledGraph(2, ((0, a, 1), (1, b, 0)), 2)
    assert isomorphic(fold(g), g)
    for n in range(1, 7):
        for w in enumerate_freely_reduced(n, 2):
            p = LabeledGraph.from_word_path(w, 2)
            assert p.is_folded()
            f = fold(p)
            assert f.num_vertices == p.num_vertices and set(f.edges) == set(p.edges)


def test_rank_volume_degree():
    for j in range(1, 5):
        g = LabeledGraph.wedge([1, 2, 3, 4][:j], 4)
        assert (g.rank, g.volume, g.degree(0)) == (j, j, 2 * j)
    p = LabeledGraph.from_word_path((a, b, a, b, b), 2)
    assert (p.rank, p.volume) == (0, 5)
    c = LabeledGraph(2, ((0, a, 1), (1, b, 0)), 2)
    assert (c.rank, c.volume, c.degree(0), c.degree(1)) == (1, 2, 2, 2)


def test_read_word_examples():
    loop = LabeledGraph.wedge([a], 2)
    assert read_word(loop, (a,) * 10)[0]
    cycle = LabeledGraph(2, ((0, a, 1), (1, b, 0)), 2)
    assert read_word(cycle, (a, b) * 5)[0]
    assert not read_word(LabeledGraph(1, (), 2), (a,))[0]


def test_fold_confluence():
    rng = random.Random(20)
    for _ in range(100):
        g = random_graph(rng)
        forms = set()
        for _ in range(8):
            order = list(range(len(g.edges)))
            rng.shuffle(order)
            forms.add(canonical_form(fold(g, order)))
        assert len(forms) == 1


def test_fold_does_not_increase_rank_or_volume():
    rng = random.Random(21)
    for _ in range(300):
        g = random_graph(rng)
        f = fold(g)
        assert f.is_connected()
        assert f.rank <= g.rank
        assert f.volume <= g.volume


def test_read_word_closed_under_subwords():
    rng = random.Random(22)
    for _ in range(100):
        g = fold(random_graph(rng))
        for w in enumerate_cyclic(5, 2):
            if read_word(g, w)[0]:
                for i, j in itertools.combinations(range(6), 2):
                    assert read_word(g, w[i:j])[0]


def test_connected_subgraphs_have_smaller_rank():
    rng = random.Random(23)
    checked = 0
    for _ in range(40):
        g = random_graph(rng, max_vertices=5, max_edges=7)
        m = len(g.edges)
        for size in range(1, m + 1):
            for keep in itertools.combinations(range(m), size):
                h = edge_subgraph(g, keep)
                if h.is_connected():
                    checked += 1
                    assert h.rank <= g.rank
    assert checked > 100


def test_canonical_form_ignores_relabelling():
    rng = random.Random(24)
    for _ in range(100):
        g = fold(random_graph(rng))
        perm = list(range(g.num_vertices))
        rng.shuffle(perm)
        h = LabeledGraph(g.num_vertices, tuple((perm[u], x, perm[v]) for u, x, v in g.edges), g.k)
        assert isomorphic(g, h)


def test_non_isomorphic_graphs_differ():
    cycle_ab = LabeledGraph(2, ((0, a, 1), (1, b, 0)), 2)
    cycle_aa = LabeledGraph(2, ((0, a, 1), (1, a, 0)), 2)
    assert not isomorphic(cycle_ab, cycle_aa)
    assert not isomorphic(LabeledGraph.wedge([a], 2), LabeledGraph.wedge([b], 2))


def test_json_round_trip():
    g = LabeledGraph(3, ((0, a, 1), (1, -b, 2), (2, a, 2)), 2, base=1)
    assert LabeledGraph.from_json(g.to_json(), 2) == g


def test_invalid_graphs():
    with pytest.raises(ValueError):
        LabeledGraph(1, ((0, 3, 0),), 2)
    with pytest.raises(ValueError):
        LabeledGraph(1, ((0, 1, 1),), 2)
    with pytest.raises(ValueError):
        LabeledGraph(2, (), 2).rank


@given(st.lists(st.sampled_from([1, -1, 2, -2]), min_size=1, max_size=12))
def test_fold_of_path_reads_reduced_word(seq):
    from ggl.words import free_reduce

    g = fold(LabeledGraph.from_word_path(seq, 2))
    w = free_reduce(seq, 2)
    assert read_word(g, w)[0]
