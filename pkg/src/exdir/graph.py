"""Graph representation, edge-list I/O, family generators and distance data.

Vertices are always the integers ``0..n-1``.  Vertex sets are exposed as
``frozenset`` objects; internally the heavier algorithms work on integer
bitmasks (bit ``i`` set means vertex ``i`` is a member).
"""

from __future__ import annotations

import os
import random
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator

import networkx as nx

DEFAULT_CAP = 24


class GraphError(ValueError):
    """Raised for malformed, non-simple, disconnected or oversized graphs."""


# ----------------------------------------------------------------------
# bitmask helpers
# ----------------------------------------------------------------------

def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def members(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def from_mask(mask: int) -> frozenset[int]:
    return frozenset(members(mask))


# ----------------------------------------------------------------------
# Graph
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Graph:
    """Immutable simple connected undirected graph on vertices ``0..n-1``."""

    n: int
    edges: frozenset[tuple[int, int]]
    cap: int = field(default=DEFAULT_CAP, compare=False, repr=False)

    def __init__(self, n: int, edges: Iterable[tuple[int, int]], cap: int = DEFAULT_CAP):
        if n < 1:
            raise GraphError(f"vertex count must be at least 1, got {n}")
        if n > cap:
            raise GraphError(f"vertex count {n} exceeds cap {cap}")
        canon = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            e = (u, v) if u < v else (v, u)
            if e in canon:
                raise GraphError(f"duplicate edge {e}")
            canon.add(e)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(canon))
        object.__setattr__(self, "cap", cap)
        if not self._is_connected():
            raise GraphError("graph is disconnected")

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(x)) for x in nbrs)

    def _is_connected(self) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in self.adjacency[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    @property
    def vertices(self) -> range:
        return range(self.n)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def is_tree(self) -> bool:
        return len(self.edges) == self.n - 1

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g


# ----------------------------------------------------------------------
# edge-list I/O
# ----------------------------------------------------------------------

def parse_graph(text: str, cap: int = DEFAULT_CAP) -> Graph:
    """Parse the edge-list format: vertex count, then one ``u v`` pair per line.

    Blank lines and lines starting with ``#`` are ignored.
    """
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 1 or not parts[0].isdigit():
                raise GraphError(f"line {lineno}: expected vertex count, got {line!r}")
            n = int(parts[0])
            continue
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise GraphError(f"line {lineno}: expected 'u v', got {line!r}")
        edges.append((int(parts[0]), int(parts[1])))
    if n is None:
        raise GraphError("empty document: missing vertex count")
    return Graph(n, edges, cap=cap)


def emit_graph(g: Graph) -> str:
    lines = [str(g.n)] + [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------
# family generators
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: tuple

    def __str__(self) -> str:
        p = self.params
        if self.family == "lattice":
            return f"lattice:{p[0]}x{p[1]}"
        if self.family == "spider":
            return f"spider:{p[0]};" + ",".join(map(str, p[1]))
        return f"{self.family}:" + ",".join(map(str, p))


_FAMILY_RE = re.compile(r"^(\w+):(.*)$")


def parse_family(text: str) -> FamilySpec:
    """Parse strings such as ``cycle:7``, ``lattice:4x5`` or ``spider:4;5,5``."""
    m = _FAMILY_RE.match(text.strip())
    if not m:
        raise GraphError(f"bad family spec {text!r}")
    name, rest = m.group(1), m.group(2)
    try:
        if name in ("path", "cycle", "complete", "star"):
            return FamilySpec(name, (int(rest),))
        if name == "lattice":
            a, b = rest.lower().split("x")
            return FamilySpec(name, (int(a), int(b)))
        if name in ("lollipop", "randtree"):
            a, b = rest.split(",")
            return FamilySpec(name, (int(a), int(b)))
        if name == "spider":
            handle, legs = rest.split(";")
            return FamilySpec(name, (int(handle), tuple(int(x) for x in legs.split(",") if x)))
    except ValueError as exc:
        raise GraphError(f"bad parameters in family spec {text!r}") from exc
    raise GraphError(f"unknown family {name!r}")


def path(n: int, cap: int = DEFAULT_CAP) -> Graph:
    _positive(n=n)
    return Graph(n, [(i, i + 1) for i in range(n - 1)], cap=cap)


def cycle(n: int, cap: int = DEFAULT_CAP) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs n >= 3, got {n}")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)], cap=cap)


def complete(n: int, cap: int = DEFAULT_CAP) -> Graph:
    _positive(n=n)
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)], cap=cap)


def star(k: int, cap: int = DEFAULT_CAP) -> Graph:
    """K_{1,k}; vertex 0 is the center, 1..k are leaves."""
    _positive(k=k)
    return Graph(k + 1, [(0, i) for i in range(1, k + 1)], cap=cap)


def lattice_index(n: int, col: int, row: int) -> int:
    """Index of lattice cell (col, row), 1-based, col in 1..n, row in 1..m."""
    return (row - 1) * n + (col - 1)


def lattice_coords(n: int, index: int) -> tuple[int, int]:
    row, col = divmod(index, n)
    return col + 1, row + 1


def lattice(n: int, m: int, cap: int = DEFAULT_CAP) -> Graph:
    """n-by-m grid: m rows of n cells each, row-major indexing."""
    if not n >= m >= 1:
        raise GraphError(f"lattice requires n >= m >= 1, got {n}x{m}")
    edges = []
    for row in range(1, m + 1):
        for col in range(1, n + 1):
            i = lattice_index(n, col, row)
            if col < n:
                edges.append((i, i + 1))
            if row < m:
                edges.append((i, i + n))
    return Graph(n * m, edges, cap=cap)


def lollipop(b: int, k: int, cap: int = DEFAULT_CAP) -> Graph:
    """K_{b-k+2} on vertices 0..b-k+1 with a k-2 vertex tail hanging off the last one."""
    if not 2 <= k <= b:
        raise GraphError(f"lollipop requires 2 <= k <= b, got b={b}, k={k}")
    q = b - k + 2
    edges = [(i, j) for i in range(q) for j in range(i + 1, q)]
    edges += [(i - 1, i) for i in range(q, b)]
    return Graph(b, edges, cap=cap)


def spider(handle: int, legs: Iterable[int], cap: int = DEFAULT_CAP) -> Graph:
    """Center 0, a handle path 1..handle ending at leaf ``handle``, then the legs in order."""
    legs = tuple(legs)
    if handle < 0 or any(l < 1 for l in legs):
        raise GraphError(f"bad spider parameters handle={handle}, legs={legs}")
    edges = [(i - 1, i) for i in range(1, handle + 1)]
    nxt = handle + 1
    for length in legs:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph(nxt, edges, cap=cap)


def spider_handle_leaf(handle: int) -> int:
    return handle


def spider_leg_tips(handle: int, legs: Iterable[int]) -> list[int]:
    tips = []
    offset = handle
    for length in legs:
        offset += length
        tips.append(offset)
    return tips


def random_tree(n: int, seed: int, cap: int = DEFAULT_CAP) -> Graph:
    """Uniform labeled tree from a seeded Prüfer sequence."""
    _positive(n=n)
    if n == 1:
        return Graph(1, [], cap=cap)
    if n == 2:
        return Graph(2, [(0, 1)], cap=cap)
    rng = random.Random(seed)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    return Graph(n, nx.from_prufer_sequence(seq).edges(), cap=cap)


def generate(spec: FamilySpec | str, cap: int = DEFAULT_CAP) -> Graph:
    if isinstance(spec, str):
        spec = parse_family(spec)
    p = spec.params
    builders = {
        "path": lambda: path(*p, cap=cap),
        "cycle": lambda: cycle(*p, cap=cap),
        "complete": lambda: complete(*p, cap=cap),
        "star": lambda: star(*p, cap=cap),
        "lattice": lambda: lattice(*p, cap=cap),
        "lollipop": lambda: lollipop(*p, cap=cap),
        "spider": lambda: spider(p[0], p[1], cap=cap),
        "randtree": lambda: random_tree(*p, cap=cap),
    }
    if spec.family not in builders:
        raise GraphError(f"unknown family {spec.family!r}")
    return builders[spec.family]()


def load_graph(source: str, cap: int = DEFAULT_CAP) -> Graph:
    """Accept either a path to an edge-list file or a family spec string."""
    if os.path.exists(source):
        with open(source) as fh:
            return parse_graph(fh.read(), cap=cap)
    return generate(source, cap=cap)


def _positive(**kw: int) -> None:
    for name, value in kw.items():
        if value < 1:
            raise GraphError(f"{name} must be positive, got {value}")


# ----------------------------------------------------------------------
# distances
# ----------------------------------------------------------------------

class DistanceMatrix:
    """All-pairs hop distances plus eccentricity data for a connected graph."""

    def __init__(self, g: Graph):
        self.graph = g
        self.n = g.n
        self.dist = tuple(self._bfs(g, s) for s in range(g.n))
        self.ecc = tuple(max(row) for row in self.dist)
        self.diameter = max(self.ecc)
        self.radius = min(self.ecc)
        self.centers = frozenset(v for v in g.vertices if self.ecc[v] == self.radius)
        # sphere_masks[u][d] is the bitmask of vertices at distance exactly d from u
        spheres = []
        for u in range(g.n):
            row = [0] * (self.ecc[u] + 1)
            for x, d in enumerate(self.dist[u]):
                row[d] |= 1 << x
            spheres.append(tuple(row))
        self.sphere_masks = tuple(spheres)
        self.full_mask = (1 << g.n) - 1

    @staticmethod
    def _bfs(g: Graph, source: int) -> tuple[int, ...]:
        dist = [-1] * g.n
        dist[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return tuple(dist)

    def __call__(self, u: int, v: int) -> int:
        return self.dist[u][v]

    def sphere_mask(self, v: int, d: int) -> int:
        if d < 0 or d > self.ecc[v]:
            return 0
        return self.sphere_masks[v][d]

    def sphere(self, v: int, d: int) -> frozenset[int]:
        return from_mask(self.sphere_mask(v, d))

    @cached_property
    def diameter_path_mask(self) -> int:
        D = self.diameter
        mask = 0
        ends = [(a, b) for a in range(self.n) for b in range(a, self.n) if self.dist[a][b] == D]
        for u in range(self.n):
            du = self.dist[u]
            if any(du[a] + du[b] == D for a, b in ends):
                mask |= 1 << u
        return mask

    def on_diameter_path(self, u: int) -> bool:
        return bool(self.diameter_path_mask >> u & 1)

    def ell(self, v: int) -> int:
        return min(self.dist[v][u] for u in members(self.diameter_path_mask))

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.dist)


def apsp(g: Graph) -> DistanceMatrix:
    return DistanceMatrix(g)


def sphere(dm: DistanceMatrix, v: int, d: int) -> frozenset[int]:
    return dm.sphere(v, d)


def on_diameter_path(dm: DistanceMatrix, u: int) -> bool:
    return dm.on_diameter_path(u)


def ell(dm: DistanceMatrix, v: int) -> int:
    return dm.ell(v)
