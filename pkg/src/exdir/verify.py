"""Verification suites that pit the solver against the closed-form results.

Each suite expands into independent cases; a case is a module-level
function plus arguments so that cases can be farmed out to worker
processes.  Reports keep case order regardless of how they were run.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable

import networkx as nx

from . import graph as gr
from .closed import min_closed_containing, min_closed_size, peel
from .formulas import f_star_cycle, lattice_bounds, tree_value
from .nonadaptive import (centered_tree_sequence, director_lines, even_path_sequence,
                          forced_run, odd_path_sequence, score, search_perfect_sequence)
from .solver import brute_oracle, make_engine, optimal_trace, trace_visited

SUITES = ("cycles", "trees", "lattices", "closed", "oracle", "paths", "centered",
          "counterexample", "lollipop", "sandwich")

SANDWICH_SPECS = tuple(
    [f"cycle:{n}" for n in range(3, 13)]
    + ["lattice:3x2", "lattice:3x3", "lattice:4x3", "lattice:2x2", "lattice:4x2", "lattice:4x4"]
    + [f"lollipop:6,{k}" for k in range(2, 7)]
    + ["spider:4;5,5", "star:4", "path:7", "complete:5"]
)


@dataclass(frozen=True)
class CaseResult:
    suite: str
    name: str
    expected: Any
    actual: Any
    ok: bool

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"[{status}] {self.suite}/{self.name}: expected {self.expected}, got {self.actual}"


@dataclass(frozen=True)
class Case:
    suite: str
    name: str
    fn: Callable[..., tuple[Any, Any]]
    args: tuple

    def run(self) -> CaseResult:
        expected, actual = self.fn(*self.args)
        return CaseResult(self.suite, self.name, expected, actual, expected == actual)


def _run(case: Case) -> CaseResult:
    return case.run()


def run_cases(cases: list[Case], workers: int = 1) -> list[CaseResult]:
    if workers <= 1:
        return [c.run() for c in cases]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run, cases, chunksize=1))


# ----------------------------------------------------------------------
# case bodies: each returns (expected, actual)
# ----------------------------------------------------------------------

def _all_starts_ok(g: gr.Graph, cap: int) -> bool:
    """Sandwich bounds and the closed-subset property at every start."""
    engine = make_engine(g, cap=cap)
    dm = engine.dm
    for v in g.vertices:
        val = engine.value(v)
        if not dm.radius + 1 <= val <= min_closed_containing(dm, v)[0]:
            return False
        visited = trace_visited(v, optimal_trace(g, v, engine=engine))
        if len(visited) != val or not peel(dm, visited).core:
            return False
    return True


def case_cycle(n: int):
    g = gr.cycle(n)
    return f_star_cycle(n), make_engine(g).value(0)


def case_tree(n: int, seed: int):
    g = gr.random_tree(n, seed)
    engine = make_engine(g)
    expected = [tree_value(g, v, engine.dm) for v in g.vertices]
    return expected, [engine.value(v) for v in g.vertices]


def case_lattice(n: int, m: int, starts: tuple[int, ...] | None, exact: int | None):
    g = gr.lattice(n, m)
    engine = make_engine(g, cap=gr.DEFAULT_CAP)
    starts = starts if starts is not None else tuple(g.vertices)
    actual = [engine.value(v) for v in starts]
    if exact is not None:
        return [exact] * len(starts), actual
    bounds = [lattice_bounds(n, m, v) for v in starts]
    return [True] * len(starts), [b.lower <= a <= b.upper for a, b in zip(actual, bounds)]


def case_closed_bridge(edges: tuple, n: int):
    g = gr.Graph(n, edges)
    engine = make_engine(g)
    return min_closed_size(engine.dm)[0], min(engine.value(v) for v in g.vertices)


def case_oracle(edges: tuple, n: int):
    g = gr.Graph(n, edges)
    engine = make_engine(g)
    return [brute_oracle(g, v) for v in g.vertices], [engine.value(v) for v in g.vertices]


def case_even_path(k: int):
    g = gr.path(2 * k)
    run = forced_run(g, 0, even_path_sequence(k))
    return (True, True, 2 * k), (run.all_forced, run.visits_each_once, len(run.trace))


def case_odd_path(k: int, x: int):
    g = gr.path(2 * k + 1)
    seq = odd_path_sequence(k, x)
    run = forced_run(g, x, seq)
    lines = list(director_lines(g, x, seq))
    covers = all(len(t) == len(set(t)) == g.n for t in lines)
    if x < k:
        return (True, 1, True), (run.all_forced, len(lines), covers)
    return (1, True, 2, True), (run.first_unforced, all(run.forced[1:]), len(lines), covers)


def case_centered(legs: int, length: int):
    g = gr.spider(0, [length] * legs)
    tip = gr.spider_leg_tips(0, [length] * legs)[0]
    engine = make_engine(g, cap=gr.DEFAULT_CAP)
    L = engine.dm.diameter
    seq = centered_tree_sequence(g, tip, engine.dm)
    return (L + 1, L + 1), (score(g, tip, seq, engine.dm, cap=gr.DEFAULT_CAP), engine.value(tip))


def case_counterexample(max_len: int):
    g = gr.spider(4, [5, 5])
    a = gr.spider_handle_leaf(4)
    engine = make_engine(g, cap=gr.DEFAULT_CAP)
    value = engine.value(a)
    ones = score(g, a, [1] * 30, engine.dm, cap=gr.DEFAULT_CAP)
    found = search_perfect_sequence(g, a, max_len, cap=gr.DEFAULT_CAP, engine=engine)
    return (15, True, None), (value, ones <= 2, found)


def case_lollipop(b: int, k: int):
    g = gr.lollipop(b, k)
    engine = make_engine(g)
    return (k, k), (min_closed_size(engine.dm)[0], min(engine.value(v) for v in g.vertices))


def case_sandwich(spec: str):
    return True, _all_starts_ok(gr.generate(spec, cap=gr.DEFAULT_CAP), gr.DEFAULT_CAP)


# ----------------------------------------------------------------------
# suites
# ----------------------------------------------------------------------

def connected_atlas(max_n: int) -> list[tuple[int, tuple]]:
    """All connected graphs on 1..max_n vertices, one per isomorphism class (max_n <= 7)."""
    out = []
    for h in nx.graph_atlas_g():
        n = h.number_of_nodes()
        if 1 <= n <= max_n and nx.is_connected(h):
            out.append((n, tuple(sorted(tuple(sorted(e)) for e in h.edges()))))
    return out


def random_connected(n: int, rng: random.Random) -> tuple[int, tuple]:
    """Random spanning tree plus a random sprinkling of extra edges."""
    tree = gr.random_tree(n, rng.randrange(2**31))
    edges = set(tree.edges)
    p = rng.random()
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and rng.random() < p:
                edges.add((u, v))
    return n, tuple(sorted(edges))


def build_suite(suite: str, max_n: int | None = None, count: int | None = None,
                seed: int = 42, max_len: int = 6) -> list[Case]:
    if suite == "cycles":
        top = max_n or 12
        return [Case(suite, f"C_{n}", case_cycle, (n,)) for n in range(3, top + 1)]
    if suite == "trees":
        rng = random.Random(seed)
        cases = []
        for i in range(count or 200):
            n = rng.randint(2, max_n or 10)
            s = rng.randrange(2**31)
            cases.append(Case(suite, f"tree{i}(n={n},seed={s})", case_tree, (n, s)))
        return cases
    if suite == "lattices":
        boundary = tuple(v for v in range(16) if gr.lattice_coords(4, v)[0] in (1, 4)
                         or gr.lattice_coords(4, v)[1] in (1, 4))
        return [
            Case(suite, "L_{2,3}", case_lattice, (3, 2, None, 4)),
            Case(suite, "L_{3,3}", case_lattice, (3, 3, None, 5)),
            Case(suite, "L_{4,3}", case_lattice, (4, 3, None, 6)),
            Case(suite, "L_{2,2}", case_lattice, (2, 2, None, 4)),
            Case(suite, "L_{4,2}", case_lattice, (4, 2, None, 6)),
            Case(suite, "L_{4,4} boundary", case_lattice, (4, 4, boundary, 8)),
            Case(suite, "L_{4,4} bounds", case_lattice, (4, 4, None, None)),
        ]
    if suite == "closed":
        return [Case(suite, f"atlas n={n} {edges}", case_closed_bridge, (edges, n))
                for n, edges in connected_atlas(min(max_n or 6, 7))]
    if suite == "oracle":
        top = min(max_n or 6, 7)
        cases = [Case(suite, f"atlas n={n} {edges}", case_oracle, (edges, n))
                 for n, edges in connected_atlas(min(top, 6))]
        rng = random.Random(seed)
        for i in range(count or 50):
            n, edges = random_connected(7, rng)
            cases.append(Case(suite, f"random7 #{i} {edges}", case_oracle, (edges, n)))
        return cases
    if suite == "paths":
        top = max_n or 8
        cases = [Case(suite, f"even k={k}", case_even_path, (k,)) for k in range(1, top + 1)]
        cases += [Case(suite, f"odd k={k} x={x}", case_odd_path, (k, x))
                  for k in range(1, top + 1) for x in range(k + 1)]
        return cases
    if suite == "centered":
        return [Case(suite, f"spider legs={legs} len={length}", case_centered, (legs, length))
                for legs in range(3, 6) for length in range(2, 5)]
    if suite == "counterexample":
        return [Case(suite, "spider(4;5,5) from a", case_counterexample, (max_len,))]
    if suite == "lollipop":
        return [Case(suite, f"lollipop(6,{k})", case_lollipop, (6, k)) for k in range(2, 7)]
    if suite == "sandwich":
        return [Case(suite, spec, case_sandwich, (spec,)) for spec in SANDWICH_SPECS]
    raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
