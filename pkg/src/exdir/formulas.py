"""Closed-form values and bounds for cycles, trees and rectangular lattices."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .graph import DistanceMatrix, Graph, GraphError, apsp, lattice_coords, lattice_index


@dataclass(frozen=True)
class BoundPair:
    lower: int
    upper: int

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"lower bound {self.lower} exceeds upper bound {self.upper}")

    @property
    def exact(self) -> bool:
        return self.lower == self.upper


def smallest_odd_prime_factor(n: int) -> int | None:
    while n % 2 == 0:
        n //= 2
    if n == 1:
        return None
    p = 3
    while p * p <= n:
        if n % p == 0:
            return p
        p += 2
    return n


def f_star_cycle(n: int) -> int:
    """Number of cycle positions visited under optimal play on C_n."""
    if n < 3:
        raise ValueError(f"cycle formula needs n >= 3, got {n}")
    p = smallest_odd_prime_factor(n)
    if p is None:
        return n
    return n * (p - 1) // p


def _require_tree(g: Graph) -> None:
    if not g.is_tree():
        raise GraphError(f"expected a tree, got {len(g.edges)} edges on {g.n} vertices")


def tree_value(g: Graph, v: int, dm: DistanceMatrix | None = None) -> int:
    _require_tree(g)
    dm = dm or apsp(g)
    return dm.diameter + dm.ell(v) + 1


def tree_lower_bound(g: Graph, dm: DistanceMatrix | None = None) -> int:
    _require_tree(g)
    dm = dm or apsp(g)
    return dm.diameter + 1


def ecc_lower_bound(dm: DistanceMatrix, a_set: Iterable[int]) -> int:
    a_set = list(a_set)
    if not a_set:
        raise ValueError("forceable set must be nonempty")
    return min(dm.ecc[v] for v in a_set) + 1


# ----------------------------------------------------------------------
# lattices
#
# Cells are (col, row) with col in 1..n and row in 1..m, n >= m; see
# graph.lattice_index.  Rows therefore hold n cells and columns m cells.
# ----------------------------------------------------------------------

def _check_lattice(n: int, m: int) -> None:
    if not n >= m >= 2:
        raise ValueError(f"lattice formulas need n >= m >= 2, got {n}x{m}")


def square_boundary_set(n: int) -> frozenset[int]:
    """The closed set of size 3n-4 on L_{n,n}: the first and last columns
    plus a stub of row n-1 (columns 3..n-2)."""
    cells = {(1, r) for r in range(1, n + 1)} | {(n, r) for r in range(1, n + 1)}
    cells |= {(c, n - 1) for c in range(3, n - 1)}
    return frozenset(lattice_index(n, c, r) for c, r in cells)


def _square_symmetries(n: int):
    k = n + 1
    return [
        lambda c, r: (c, r),
        lambda c, r: (k - c, r),
        lambda c, r: (c, k - r),
        lambda c, r: (k - c, k - r),
        lambda c, r: (r, c),
        lambda c, r: (k - r, c),
        lambda c, r: (r, k - c),
        lambda c, r: (k - r, k - c),
    ]


def square_boundary_sets(n: int) -> list[frozenset[int]]:
    """All images of square_boundary_set under the symmetries of the square."""
    base = [lattice_coords(n, i) for i in square_boundary_set(n)]
    out = []
    for sym in _square_symmetries(n):
        image = frozenset(lattice_index(n, *sym(c, r)) for c, r in base)
        if image not in out:
            out.append(image)
    return out


def lattice_bounds(n: int, m: int, v: int) -> BoundPair:
    _check_lattice(n, m)
    if not 0 <= v < n * m:
        raise ValueError(f"vertex {v} outside L_{{{n},{m}}}")
    if n % 2 or m % 2:
        return BoundPair(n + m - 1, n + m - 1)
    upper = 2 * m + n - 2
    if n == m and any(v in b for b in square_boundary_sets(n)):
        upper = min(upper, 3 * n - 4)
    return BoundPair(n + m, upper)


def _walk(cells: list[tuple[int, int]], target: tuple[int, int], vertical_first: bool) -> None:
    """Extend ``cells`` from its last cell to ``target`` along an L-shaped route."""
    c, r = cells[-1]
    tc, tr = target
    legs = ("r", "c") if vertical_first else ("c", "r")
    for leg in legs:
        if leg == "r":
            step = 1 if tr > r else -1
            while r != tr:
                r += step
                cells.append((c, r))
        else:
            step = 1 if tc > c else -1
            while c != tc:
                c += step
                cells.append((c, r))


def lattice_closed_witness(n: int, m: int, v: int) -> frozenset[int]:
    """A concrete closed set containing ``v`` realizing the upper bound.

    One side odd: a corner-to-corner staircase b -> v -> center(s) -> a of
    n+m-1 cells, where a is a corner farthest from v and b is opposite a.
    Each leg is L-shaped: b -> v runs along b's row to v's column first,
    v -> center along v's column to the center row first, and the last
    center -> a along the center row to a's column first.

    Both sides even: the two end columns (m cells each) plus v's row.
    """
    _check_lattice(n, m)
    col, row = lattice_coords(n, v)
    if n % 2 == 0 and m % 2 == 0:
        cells = {(1, r) for r in range(1, m + 1)} | {(n, r) for r in range(1, m + 1)}
        cells |= {(c, row) for c in range(1, n + 1)}
        return frozenset(lattice_index(n, c, r) for c, r in cells)

    a_col = n if n - col >= col - 1 else 1
    a_row = m if m - row >= row - 1 else 1
    b = (n + 1 - a_col, m + 1 - a_row)
    # central cells ordered from b's side to a's side
    center_cols = sorted({(n + 1) // 2, n // 2 + 1}, key=lambda c: abs(c - b[0]))
    center_rows = sorted({(m + 1) // 2, m // 2 + 1}, key=lambda r: abs(r - b[1]))
    centers = [(c, r) for c in center_cols for r in center_rows]

    cells = [b]
    _walk(cells, (col, row), vertical_first=False)
    for c in centers:
        _walk(cells, c, vertical_first=True)
    _walk(cells, (a_col, a_row), vertical_first=False)
    return frozenset(lattice_index(n, c, r) for c, r in cells)
