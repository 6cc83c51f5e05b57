"""Exact game values for the Explorer-Director game.

States are (visited set, token) pairs.  All states sharing one visited set U
form a layer; play stays inside a layer until the Director is made to step
outside U, and every such exit lands in a strictly larger layer.  Layers are
therefore solved recursively from the larger ones down, and inside a layer
the values are the least fixed point reached by iterating upward from the
confinement payoff |U| (a play that never leaves U scores |U|).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, NamedTuple

from .closed import core_mask
from .graph import DistanceMatrix, Graph, apsp, from_mask, members, to_mask

SOLVER_CAP = 14
BRUTE_CAP = 7
AUTO = None


class CapExceeded(ValueError):
    pass


class IllegalMove(ValueError):
    pass


def memory_estimate(n: int) -> int:
    """Rough upper bound in bytes on the value table for an n-vertex graph.

    Every (visited set, token) pair may be reachable, and a stored entry
    costs on the order of 100 bytes, so each extra vertex slightly more than
    doubles the bound.
    """
    return (1 << n) * n * 100


@dataclass(frozen=True)
class GameState:
    visited: frozenset[int]
    token: int

    @classmethod
    def start(cls, v: int) -> GameState:
        return cls(frozenset([v]), v)


class ValueTable:
    """Read-only mapping from GameState to its value under optimal play.

    Backed by a solver engine; iteration covers the states the engine has
    evaluated so far (for the full-table engine, every reachable state).
    """

    def __init__(self, engine: GameSolver | ThresholdSolver):
        self._engine = engine

    def value(self, visited_mask: int, token: int) -> int:
        return self._engine.state_value(visited_mask, token)

    def __getitem__(self, state: GameState) -> int:
        if state.token not in state.visited:
            raise KeyError(state)
        return self._engine.state_value(to_mask(state.visited), state.token)

    def __contains__(self, state: object) -> bool:
        return isinstance(state, GameState) and state.token in state.visited and all(
            0 <= v < self._engine.dm.n for v in state.visited)

    def __iter__(self) -> Iterator[GameState]:
        for mask, token in self._engine.known_states():
            yield GameState(from_mask(mask), token)

    def __len__(self) -> int:
        return sum(1 for _ in self._engine.known_states())


class LayerStats(NamedTuple):
    size: int
    sweeps: int


def _check_cap(g: Graph, cap: int) -> None:
    if g.n > cap:
        raise CapExceeded(
            f"{g.n} vertices exceeds solver cap {cap}; "
            f"a full table may need ~{memory_estimate(g.n) / 2**20:.0f} MiB"
        )


class GameSolver:
    """Full-table engine: every layer reachable from the requested starts.

    Layers are cached on the instance, so solving several starts of the same
    graph shares work.
    """

    def __init__(self, g: Graph, cap: int = SOLVER_CAP):
        _check_cap(g, cap)
        self.graph = g
        self.dm = apsp(g)
        self.values: dict[int, dict[int, int]] = {}
        self.explorer_choice: dict[int, dict[int, int]] = {}
        self.stats: dict[int, LayerStats] = {}

    def _layer(self, U: int) -> dict[int, int]:
        cached = self.values.get(U)
        if cached is not None:
            return cached
        dm = self.dm
        spheres = dm.sphere_masks
        size = U.bit_count()
        core = core_mask(dm, U)
        val = {u: size for u in members(U)}
        choice = {u: 1 for u in val}
        loose = [u for u in val if not core >> u & 1]

        # options[u]: (d, inside members, best exit value) for each call d
        # whose reply set avoids the core; a core reply pins the value at |U|
        options: dict[int, list[tuple[int, list[int], int]]] = {}
        for u in loose:
            opts = []
            for d in range(1, dm.ecc[u] + 1):
                sph = spheres[u][d]
                if sph & core:
                    continue
                exit_best = dm.n + 1
                for w in members(sph & ~U):
                    ev = self._layer(U | 1 << w)[w]
                    if ev < exit_best:
                        exit_best = ev
                opts.append((d, members(sph & U), exit_best))
            options[u] = opts

        # Jacobi sweeps; choice[u] keeps the call that made the last raise,
        # so following it always moves to a state that settled earlier
        sweeps = 0
        changed = bool(loose)
        while changed:
            sweeps += 1
            changed = False
            new_val = dict(val)
            for u in loose:
                best, best_d = val[u], None
                for d, inside, exit_best in options[u]:
                    m = exit_best
                    for w in inside:
                        if val[w] < m:
                            m = val[w]
                    if m > best:
                        best, best_d = m, d
                if best_d is not None:
                    new_val[u] = best
                    choice[u] = best_d
                    changed = True
            val = new_val
        self.values[U] = val
        self.explorer_choice[U] = choice
        self.stats[U] = LayerStats(size, sweeps)
        return val

    def value(self, start: int) -> int:
        return self._layer(1 << start)[start]

    def state_value(self, U: int, u: int) -> int:
        return self._layer(U)[u]

    def progress_move(self, U: int, u: int) -> int:
        self._layer(U)
        return self.explorer_choice[U][u]

    def known_states(self) -> Iterator[tuple[int, int]]:
        for U, layer in self.values.items():
            for u in layer:
                yield U, u

    def table(self) -> ValueTable:
        return ValueTable(self)

    def policy(self) -> Policy:
        return Policy(self)


class ThresholdSolver:
    """Lazy engine answering "can the Explorer force at least t visits?".

    For a threshold t only visited sets smaller than t are ever expanded,
    replies inside the layer are checked before any exit is explored, and an
    option is dropped at its first refuting reply.  The value of a state is
    the largest t it wins.  Suited to graphs beyond the full-table cap.
    """

    def __init__(self, g: Graph, cap: int = SOLVER_CAP):
        _check_cap(g, cap)
        self.graph = g
        self.dm = apsp(g)
        self._wins: dict[tuple[int, int], tuple[int, dict[int, int]]] = {}
        self._values: dict[tuple[int, int], int] = {}

    def winners(self, U: int, t: int) -> int:
        """Mask of tokens in U from which at least t visits can be forced."""
        if U.bit_count() >= t:
            return U
        return self._solve_threshold(U, t)[0]

    def _solve_threshold(self, U: int, t: int) -> tuple[int, dict[int, int]]:
        key = (U, t)
        hit = self._wins.get(key)
        if hit is not None:
            return hit
        dm = self.dm
        spheres = dm.sphere_masks
        grown_enough = U.bit_count() + 1 >= t
        core = core_mask(dm, U)
        won = 0
        choice: dict[int, int] = {}
        exit_ok: dict[tuple[int, int], bool] = {}
        changed = True
        while changed:
            changed = False
            for u in members(U & ~core & ~won):
                for d in range(1, dm.ecc[u] + 1):
                    sph = spheres[u][d]
                    if sph & core or sph & U & ~won:
                        continue
                    ok = exit_ok.get((u, d))
                    if ok is None:
                        ok = grown_enough or all(
                            self.winners(U | 1 << w, t) >> w & 1 for w in members(sph & ~U))
                        exit_ok[(u, d)] = ok
                    if ok:
                        won |= 1 << u
                        choice[u] = d
                        changed = True
                        break
        self._wins[key] = (won, choice)
        return won, choice

    def state_value(self, U: int, u: int) -> int:
        hit = self._values.get((U, u))
        if hit is not None:
            return hit
        t = U.bit_count() + 1
        while self.winners(U, t) >> u & 1:
            t += 1
        self._values[(U, u)] = t - 1
        return t - 1

    def value(self, start: int) -> int:
        return self.state_value(1 << start, start)

    def progress_move(self, U: int, u: int) -> int:
        v = self.state_value(U, u)
        if v == U.bit_count():
            return 1
        return self._solve_threshold(U, v)[1][u]

    def known_states(self) -> Iterator[tuple[int, int]]:
        return iter(list(self._values))

    def table(self) -> ValueTable:
        return ValueTable(self)

    def policy(self) -> Policy:
        return Policy(self)


class Policy:
    """Deterministic optimal moves for both players.

    The Explorer plays the engine's progress move (a call that is optimal
    and strictly advances toward a new vertex); the Director takes a reply
    of minimum value, preferring unvisited vertices, then the smallest index.
    """

    def __init__(self, engine: GameSolver | ThresholdSolver):
        self.engine = engine

    @property
    def dm(self) -> DistanceMatrix:
        return self.engine.dm

    def value(self, state: GameState) -> int:
        return self.engine.state_value(to_mask(state.visited), state.token)

    def explorer_move(self, state: GameState) -> int:
        return self.engine.progress_move(to_mask(state.visited), state.token)

    def director_move(self, state: GameState, d: int) -> int:
        U = to_mask(state.visited)
        sph = self.dm.sphere_mask(state.token, d)
        if not sph or d < 1:
            raise IllegalMove(f"distance {d} is not available from vertex {state.token}")
        # among equal values a fresh vertex wins, so the game ends sooner
        return min(members(sph), key=lambda w: (self.engine.state_value(U | 1 << w, w), U >> w & 1, w))


@dataclass(frozen=True)
class Solution:
    value: int
    table: ValueTable
    policy: Policy


def make_engine(g: Graph, cap: int = SOLVER_CAP, method: str = "auto") -> GameSolver | ThresholdSolver:
    """``method`` is "table", "threshold", or "auto" (table up to SOLVER_CAP vertices)."""
    if method == "auto":
        method = "table" if g.n <= SOLVER_CAP else "threshold"
    if method == "table":
        return GameSolver(g, cap=cap)
    if method == "threshold":
        return ThresholdSolver(g, cap=cap)
    raise ValueError(f"unknown solver method {method!r}")


def solve(g: Graph, start: int, cap: int = SOLVER_CAP, method: str = "auto") -> Solution:
    if not 0 <= start < g.n:
        raise ValueError(f"start vertex {start} outside 0..{g.n - 1}")
    engine = make_engine(g, cap, method)
    value = engine.value(start)
    return Solution(value, engine.table(), engine.policy())


def game_over(policy: Policy, state: GameState) -> bool:
    """True once the Explorer can no longer force a new visit."""
    return policy.value(state) == len(state.visited)


class StepOutcome(NamedTuple):
    state: GameState
    distance: int
    over: bool


def play_step(state: GameState, explorer_choice: int | None, director_choice: int | None,
              policy: Policy) -> StepOutcome:
    """Advance one turn; ``None`` (AUTO) for either choice uses the policy."""
    dm = policy.dm
    u = state.token
    d = policy.explorer_move(state) if explorer_choice is AUTO else explorer_choice
    if not 1 <= d <= dm.ecc[u]:
        raise IllegalMove(f"distance {d} outside 1..{dm.ecc[u]} from vertex {u}")
    if director_choice is AUTO:
        w = policy.director_move(state, d)
    else:
        w = director_choice
        if not 0 <= w < dm.n or dm.dist[u][w] != d:
            raise IllegalMove(f"vertex {w} is not at distance {d} from vertex {u}")
    nxt = GameState(state.visited | {w}, w)
    return StepOutcome(nxt, d, game_over(policy, nxt))


def optimal_trace(g: Graph, start: int, cap: int = SOLVER_CAP, method: str = "auto",
                  engine: GameSolver | ThresholdSolver | None = None) -> list[tuple[int, int]]:
    """Moves (distance, vertex) of both players following the optimal policy."""
    engine = engine or make_engine(g, cap, method)
    policy = Policy(engine)
    state = GameState.start(start)
    trace = []
    over = game_over(policy, state)
    while not over:
        state, d, over = play_step(state, AUTO, AUTO, policy)
        trace.append((d, state.token))
    return trace


def trace_visited(start: int, trace: list[tuple[int, int]]) -> frozenset[int]:
    return frozenset([start, *(w for _, w in trace)])


def format_trace(start: int, trace: list[tuple[int, int]]) -> str:
    visited = {start}
    lines = []
    for d, w in trace:
        visited.add(w)
        lines.append(f"step d={d} -> {w} visited={len(visited)}")
    return "\n".join(lines)


# ----------------------------------------------------------------------
# independent oracle
# ----------------------------------------------------------------------

def brute_oracle(g: Graph, start: int) -> int:
    """Depth-limited minimax over the explicit game tree (tiny graphs only).

    Within a layer the search is cut off after |U|*(n-|U|)+1 moves and the
    position scores |U|; that horizon exceeds the longest forced escape.
    """
    n = g.n
    if n > BRUTE_CAP:
        raise CapExceeded(f"brute oracle limited to {BRUTE_CAP} vertices, got {n}")
    inf = n + 1
    dist = [[0 if i == j else inf for j in range(n)] for i in range(n)]
    for u, v in g.edges:
        dist[u][v] = dist[v][u] = 1
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if dist[i][k] + dist[k][j] < dist[i][j]:
                    dist[i][j] = dist[i][k] + dist[k][j]

    def horizon(visited: frozenset) -> int:
        return len(visited) * (n - len(visited)) + 1

    @lru_cache(maxsize=None)
    def play(visited: frozenset, token: int, moves_left: int) -> int:
        if moves_left == 0 or len(visited) == n:
            return len(visited)
        best = len(visited)
        for d in range(1, max(dist[token]) + 1):
            worst = None
            for w in range(n):
                if dist[token][w] != d:
                    continue
                if w in visited:
                    r = play(visited, w, moves_left - 1)
                else:
                    grown = visited | {w}
                    r = play(grown, w, horizon(grown))
                if worst is None or r < worst:
                    worst = r
            if worst > best:
                best = worst
        return best

    root = frozenset([start])
    return play(root, start, horizon(root))
