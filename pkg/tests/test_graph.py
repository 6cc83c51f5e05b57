import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exdir import graph as gr
from exdir.graph import Graph, GraphError, apsp, emit_graph, parse_graph


def test_parse_smallest_graph():
    g = parse_graph("2\n0 1")
    assert g.n == 2 and g.sorted_edges() == [(0, 1)]


def test_parse_four_cycle():
    g = parse_graph("4\n0 1\n1 2\n2 3\n3 0")
    assert nx.is_isomorphic(g.to_networkx(), nx.cycle_graph(4))


def test_parse_ignores_comments_and_blanks():
    g = parse_graph("# triangle\n3\n\n0 1\n1 2\n2 0\n")
    assert g.sorted_edges() == [(0, 1), (0, 2), (1, 2)]


@pytest.mark.parametrize("text", [
    "3\n0 1",            # vertex 2 isolated
    "2\n0 0\n0 1",       # self-loop
    "2\n0 1\n1 0",       # duplicate
    "2\n0 2",            # out of range
    "",                  # no count
    "x\n0 1",            # bad count
    "2\n0",              # short edge line
])
def test_parse_rejects(text):
    with pytest.raises(GraphError):
        parse_graph(text)


def test_cap_enforced():
    with pytest.raises(GraphError):
        gr.path(25)
    assert gr.path(25, cap=25).n == 25


def test_emit_round_trip():
    g = gr.generate("lollipop:7,3")
    assert parse_graph(emit_graph(g)) == g


def test_emit_is_canonical():
    a = Graph(3, [(2, 1), (0, 1)])
    b = Graph(3, [(0, 1), (1, 2)])
    assert emit_graph(a) == emit_graph(b)


def test_lattice_2x2_is_c4():
    assert nx.is_isomorphic(gr.lattice(2, 2).to_networkx(), nx.cycle_graph(4))


def test_lattice_indexing():
    assert gr.lattice_index(5, 1, 1) == 0
    assert gr.lattice_index(5, 3, 2) == 7
    assert gr.lattice_coords(5, 7) == (3, 2)
    g = gr.lattice(5, 4)
    assert g.n == 20 and len(g.edges) == 4 * 4 + 5 * 3


def test_lattice_requires_n_at_least_m():
    with pytest.raises(GraphError):
        gr.lattice(2, 3)


def test_lollipop_6_4():
    g = gr.lollipop(6, 4)
    assert g.n == 6
    h = nx.complete_graph(4)
    h.add_edges_from([(3, 4), (4, 5)])
    assert nx.is_isomorphic(g.to_networkx(), h)


def test_spider_counterexample_shape():
    g = gr.spider(4, [5, 5])
    assert g.n == 15 and g.is_tree()
    a = gr.spider_handle_leaf(4)
    dm = apsp(g)
    assert dm(0, a) == 4 and len(g.adjacency[a]) == 1
    assert dm.diameter == 10


def test_random_tree_deterministic():
    t1, t2 = gr.random_tree(9, 42), gr.random_tree(9, 42)
    assert t1 == t2 and t1.is_tree()


@pytest.mark.parametrize("spec", ["path:9", "cycle:7", "complete:5", "star:4", "lattice:5x4",
                                  "lollipop:8,3", "spider:4;5,5", "randtree:10,42"])
def test_family_specs_round_trip(spec):
    fs = gr.parse_family(spec)
    assert gr.generate(fs) == gr.generate(str(fs))


@pytest.mark.parametrize("spec", ["path", "cycle:2", "mystery:3", "lattice:4", "lollipop:5,6",
                                  "path:0", "star:x"])
def test_bad_family_specs(spec):
    with pytest.raises(GraphError):
        gr.generate(spec)


def test_load_graph_from_file(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("3\n0 1\n1 2\n")
    assert gr.load_graph(str(p)) == gr.path(3)
    assert gr.load_graph("path:3") == gr.path(3)


def test_sphere_examples():
    assert gr.sphere(apsp(gr.cycle(6)), 0, 3) == {3}
    assert gr.sphere(apsp(gr.path(4)), 1, 2) == {3}
    n = 2
    v = gr.lattice_index(n, 1, 1)
    expected = {gr.lattice_index(n, 2, 1), gr.lattice_index(n, 1, 2)}
    assert gr.sphere(apsp(gr.lattice(2, 2)), v, 1) == expected


def test_sphere_out_of_range_distance_is_empty():
    dm = apsp(gr.path(4))
    assert gr.sphere(dm, 0, 7) == frozenset()


def test_diameter_path_membership():
    assert gr.on_diameter_path(apsp(gr.path(4)), 1)
    spider = gr.spider(4, [5, 5])
    assert not gr.on_diameter_path(apsp(spider), gr.spider_handle_leaf(4))
    assert gr.on_diameter_path(apsp(gr.star(3)), 0)


def test_ell_examples():
    dm = apsp(gr.path(7))
    assert all(gr.ell(dm, v) == 0 for v in range(7))
    assert gr.ell(apsp(gr.spider(4, [5, 5])), gr.spider_handle_leaf(4)) == 4
    assert gr.ell(apsp(gr.star(4)), 3) == 0


def test_apsp_beyond_default_cap():
    dm = apsp(gr.lattice(5, 5, cap=25))
    assert dm.diameter == 8 and dm.radius == 4


@st.composite
def connected_graphs(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    seed = draw(st.integers(0, 10**6))
    base = set(gr.random_tree(n, seed).edges) if n > 1 else set()
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    extra = draw(st.lists(st.sampled_from(pairs), max_size=8)) if pairs else []
    return Graph(n, base | set(extra))


@settings(max_examples=150, deadline=None)
@given(connected_graphs())
def test_apsp_matches_networkx(g):
    dm = apsp(g)
    ref = dict(nx.all_pairs_shortest_path_length(g.to_networkx()))
    for u in g.vertices:
        for v in g.vertices:
            assert dm(u, v) == ref[u][v]
    assert dm.diameter == (nx.diameter(g.to_networkx()) if g.n > 1 else 0)


@settings(max_examples=100, deadline=None)
@given(connected_graphs())
def test_spheres_partition_vertices(g):
    dm = apsp(g)
    for u in g.vertices:
        spheres = [gr.sphere(dm, u, d) for d in range(dm.ecc[u] + 1)]
        assert all(spheres)
        assert set().union(*spheres) == set(g.vertices)
        assert sum(map(len, spheres)) == g.n
