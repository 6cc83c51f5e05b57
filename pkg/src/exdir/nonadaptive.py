"""Nonadaptive Explorer strategies: fixed distance sequences.

A strategy is a plain tuple of positive ints.  Its score from a start
vertex is the number of vertices visited when the Director answers every
call adversarially.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .graph import DistanceMatrix, Graph, GraphError, apsp, members
from .solver import SOLVER_CAP, CapExceeded, GameSolver, ThresholdSolver, make_engine

DEFAULT_MAX_LEN = 8


class InvalidSequence(ValueError):
    """A call exceeds the eccentricity of a token position the Director can reach."""

    def __init__(self, step: int, distance: int, vertex: int):
        super().__init__(f"invalid at step {step}: distance {distance} exceeds ecc of vertex {vertex}")
        self.step = step
        self.distance = distance
        self.vertex = vertex


def parse_sequence(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    seq = tuple(int(x) for x in text.split(","))
    if any(d < 1 for d in seq):
        raise ValueError(f"sequence entries must be positive: {text!r}")
    return seq


def format_sequence(seq: Iterable[int]) -> str:
    return ",".join(str(d) for d in seq)


def _validate(dm: DistanceMatrix, v: int, seq: Sequence[int]) -> None:
    reach = 1 << v
    for k, d in enumerate(seq, start=1):
        if d < 1:
            raise ValueError(f"sequence entries must be positive, got {d} at step {k}")
        nxt = 0
        for t in members(reach):
            if d > dm.ecc[t]:
                raise InvalidSequence(k, d, t)
            nxt |= dm.sphere_masks[t][d]
        reach = nxt


def score(g: Graph, v: int, seq: Sequence[int], dm: DistanceMatrix | None = None,
          cap: int = SOLVER_CAP) -> int:
    """Minimum final visit count over all Director replies to ``seq``."""
    if g.n > cap:
        raise CapExceeded(f"{g.n} vertices exceeds scoring cap {cap}")
    dm = dm or apsp(g)
    seq = tuple(seq)
    _validate(dm, v, seq)
    spheres = dm.sphere_masks
    memo: dict[tuple[int, int, int], int] = {}

    def worst(i: int, token: int, visited: int) -> int:
        if i == len(seq):
            return visited.bit_count()
        key = (i, token, visited)
        hit = memo.get(key)
        if hit is not None:
            return hit
        best = None
        for w in members(spheres[token][seq[i]]):
            r = worst(i + 1, w, visited | 1 << w)
            if best is None or r < best:
                best = r
        memo[key] = best
        return best

    return worst(0, v, 1 << v)


@dataclass(frozen=True)
class ForcedRun:
    trace: tuple[int, ...]
    forced: tuple[bool, ...]

    @property
    def all_forced(self) -> bool:
        return all(self.forced)

    @property
    def first_unforced(self) -> int | None:
        """1-based step of the first Director choice, or None."""
        for i, f in enumerate(self.forced, start=1):
            if not f:
                return i
        return None

    @property
    def visits_each_once(self) -> bool:
        return len(set(self.trace)) == len(self.trace)


def forced_run(g: Graph, v: int, seq: Sequence[int], dm: DistanceMatrix | None = None) -> ForcedRun:
    """Play ``seq`` recording whether each reply was forced.

    Where the Director has a choice, the smallest-index reply is followed.
    """
    dm = dm or apsp(g)
    trace = [v]
    forced = []
    token = v
    for k, d in enumerate(seq, start=1):
        if not 1 <= d <= dm.ecc[token]:
            raise InvalidSequence(k, d, token)
        replies = members(dm.sphere_masks[token][d])
        forced.append(len(replies) == 1)
        token = replies[0]
        trace.append(token)
    return ForcedRun(tuple(trace), tuple(forced))


def director_lines(g: Graph, v: int, seq: Sequence[int],
                   dm: DistanceMatrix | None = None) -> Iterator[tuple[int, ...]]:
    """Every token trace the Director can produce against ``seq``."""
    dm = dm or apsp(g)
    seq = tuple(seq)
    _validate(dm, v, seq)

    def walk(i: int, trace: tuple[int, ...]):
        if i == len(seq):
            yield trace
            return
        for w in members(dm.sphere_masks[trace[-1]][seq[i]]):
            yield from walk(i + 1, trace + (w,))

    yield from walk(0, (v,))


# ----------------------------------------------------------------------
# constructions for paths
# ----------------------------------------------------------------------

def even_path_sequence(k: int) -> tuple[int, ...]:
    """Covers P_{2k} from an endpoint, every reply forced."""
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    return (1,) + (k, k - 1) * (k - 1)


def odd_path_sequence(k: int, x: int) -> tuple[int, ...]:
    """Covers P_{2k+1} (vertices 0..2k) from vertex x, 0 <= x <= k.

    For x < k the first phase alternates k+1, k until the token reaches the
    far end 2k, the call k-x jumps to x+k, and a mirrored alternation
    finishes at the center.  From the center itself the first call k splits
    the Director between the two ends; the rest is the x=0 sequence without
    its final step.
    """
    if k < 1 or not 0 <= x <= k:
        raise ValueError(f"need k >= 1 and 0 <= x <= k, got k={k}, x={x}")
    if x == k:
        return (k,) + odd_path_sequence(k, 0)[:-1]
    phase1 = (k + 1, k) * (k - 1 - x) + (k + 1,)
    phase2: tuple[int, ...] = (k - x,)
    if x >= 1:
        phase2 += (k + 1, k) * (x - 1) + (k + 1,) + (k,)
    return phase1 + phase2


# ----------------------------------------------------------------------
# centered trees
# ----------------------------------------------------------------------

def _require_tree(g: Graph) -> None:
    if not g.is_tree():
        raise GraphError(f"expected a tree, got {len(g.edges)} edges on {g.n} vertices")


def qualifies_centered(g: Graph, v: int, dm: DistanceMatrix | None = None) -> bool:
    """Unique center, at most one longest-path endpoint per branch at the
    center, and ``v`` on some longest path."""
    _require_tree(g)
    dm = dm or apsp(g)
    if len(dm.centers) != 1 or not dm.on_diameter_path(v):
        return False
    (c,) = dm.centers
    endpoints = {u for u in g.vertices if dm.ecc[u] == dm.diameter}
    for root in g.adjacency[c]:
        seen = {c, root}
        stack = [root]
        count = 0
        while stack:
            u = stack.pop()
            count += u in endpoints
            for w in g.adjacency[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if count > 1:
            return False
    return True


def centered_tree_sequence(g: Graph, v: int, dm: DistanceMatrix | None = None) -> tuple[int, ...]:
    dm = dm or apsp(g)
    if not qualifies_centered(g, v, dm):
        raise ValueError(f"tree/start vertex {v} does not meet the centered-tree conditions")
    L, R = dm.diameter, dm.radius
    if L < 4:
        found = search_perfect_sequence(g, v)
        if found is None:
            raise ValueError(f"no optimal sequence of length <= {DEFAULT_MAX_LEN} for L={L}")
        return found
    seq: tuple[int, ...] = ()
    for i in range(1, R):
        seq += (i, L - i, i, L - i)
    seq += (R,)
    if dm.ecc[v] != L:
        seq = (dm.ecc[v],) + seq
    return seq


# ----------------------------------------------------------------------
# bounded search
# ----------------------------------------------------------------------

def search_perfect_sequence(g: Graph, v: int, max_len: int = DEFAULT_MAX_LEN,
                            target: int | None = None, cap: int = SOLVER_CAP,
                            engine: GameSolver | ThresholdSolver | None = None,
                            ) -> tuple[int, ...] | None:
    """Shortest, then lexicographically smallest, sequence scoring ``target``.

    ``target`` defaults to the adaptive game value from ``v``.  The search
    tracks the set of (token, visited) configurations the Director can
    reach and prunes a prefix once even its weakest configuration cannot
    climb to the target in the calls remaining.
    """
    if max_len < 0 or max_len > 2 * SOLVER_CAP:
        raise ValueError(f"max_len must be in 0..{2 * SOLVER_CAP}, got {max_len}")
    if g.n > cap:
        raise CapExceeded(f"{g.n} vertices exceeds search cap {cap}")
    if target is None:
        engine = engine or make_engine(g, cap)
        target = engine.value(v)
    dm = engine.dm if engine is not None else apsp(g)
    spheres = dm.sphere_masks

    def extend(configs: frozenset, d: int) -> frozenset:
        out = set()
        for token, visited in configs:
            for w in members(spheres[token][d]):
                out.add((w, visited | 1 << w))
        return frozenset(out)

    def dfs(configs: frozenset, left: int) -> tuple[int, ...] | None:
        weakest = min(vis.bit_count() for _, vis in configs)
        if left == 0:
            return () if weakest >= target else None
        if weakest + left < target:
            return None
        top = min(dm.ecc[t] for t, _ in configs)
        for d in range(1, top + 1):
            rest = dfs(extend(configs, d), left - 1)
            if rest is not None:
                return (d,) + rest
        return None

    start = frozenset([(v, 1 << v)])
    for length in range(max_len + 1):
        found = dfs(start, length)
        if found is not None:
            return found
    return None
