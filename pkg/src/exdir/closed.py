"""Closed vertex sets: checking, peeling and minimum-cardinality search.

A nonempty set U is closed when every distance realized from a member u to
the whole graph is also realized from u to some member of U.  Because every
distance 0..ecc(u) occurs in a connected graph, this is the same as asking
that the distances from u into U cover exactly 0..ecc(u).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .graph import DistanceMatrix, from_mask, members, to_mask

SEARCH_CAP = 24


@dataclass(frozen=True)
class PeelResult:
    core: frozenset[int]
    layers: tuple[frozenset[int], ...]
    escape_depth: dict[int, int | None]


def _nonempty_mask(dm: DistanceMatrix, u_set: Iterable[int] | int) -> int:
    mask = u_set if isinstance(u_set, int) else to_mask(u_set)
    if mask == 0:
        raise ValueError("the empty set is never closed")
    if mask >> dm.n:
        raise ValueError(f"vertex set has members outside 0..{dm.n - 1}")
    return mask


def misses_distance(dm: DistanceMatrix, u: int, mask: int) -> bool:
    """True if some distance in 0..ecc(u) has no member of ``mask`` at it."""
    for sph in dm.sphere_masks[u]:
        if not sph & mask:
            return True
    return False


def is_closed_mask(dm: DistanceMatrix, mask: int) -> bool:
    if not mask:
        return False
    for u in members(mask):
        if misses_distance(dm, u, mask):
            return False
    return True


def is_closed(dm: DistanceMatrix, u_set: Iterable[int]) -> bool:
    return is_closed_mask(dm, _nonempty_mask(dm, u_set))


def peel_mask(dm: DistanceMatrix, mask: int) -> tuple[int, list[int]]:
    """Return (core mask, list of layer masks)."""
    layers = []
    current = mask
    while current:
        escaping = 0
        for u in members(current):
            if misses_distance(dm, u, current):
                escaping |= 1 << u
        if not escaping:
            break
        layers.append(escaping)
        current &= ~escaping
    return current, layers


def core_mask(dm: DistanceMatrix, mask: int) -> int:
    return peel_mask(dm, mask)[0]


def peel(dm: DistanceMatrix, u_set: Iterable[int]) -> PeelResult:
    """Strip, layer by layer, the members from which a new vertex can be forced.

    ``escape_depth[u] == i`` means that with the token on ``u`` and ``u_set``
    already visited, the Explorer can force a visit outside ``u_set`` within
    ``i`` moves.  Core members map to ``None``.
    """
    mask = _nonempty_mask(dm, u_set)
    core, layers = peel_mask(dm, mask)
    depth: dict[int, int | None] = {u: None for u in members(core)}
    for i, layer in enumerate(layers, start=1):
        for u in members(layer):
            depth[u] = i
    return PeelResult(from_mask(core), tuple(from_mask(x) for x in layers), depth)


# ----------------------------------------------------------------------
# minimum closed sets
# ----------------------------------------------------------------------

def _search(dm: DistanceMatrix, size: int, required: int | None) -> int | None:
    """Lexicographically first closed set of exactly ``size`` members, or None."""
    ecc = dm.ecc
    spheres = dm.sphere_masks
    cands = [u for u in range(dm.n) if ecc[u] + 1 <= size]
    if required is not None and ecc[required] + 1 > size:
        return None
    # bitmask of candidates with index strictly greater than position i
    after = [0] * (len(cands) + 1)
    for i in range(len(cands) - 1, -1, -1):
        after[i] = after[i + 1] | 1 << cands[i]

    def feasible(chosen: list[int], mask: int, pos: int, left: int) -> bool:
        pool = after[pos]
        for u in chosen:
            missing = 0
            for sph in spheres[u]:
                if not sph & mask:
                    if not sph & pool:
                        return False
                    missing += 1
                    if missing > left:
                        return False
        return True

    def dfs(pos: int, chosen: list[int], mask: int) -> int | None:
        left = size - len(chosen)
        if left == 0:
            if required is not None and not mask >> required & 1:
                return None
            return mask if is_closed_mask(dm, mask) else None
        if len(cands) - pos < left:
            return None
        for i in range(pos, len(cands) - left + 1):
            u = cands[i]
            if required is not None and not mask >> required & 1 and u > required:
                break
            new_mask = mask | 1 << u
            chosen.append(u)
            if feasible(chosen, new_mask, i + 1, left - 1):
                found = dfs(i + 1, chosen, new_mask)
                if found is not None:
                    return found
            chosen.pop()
        return None

    return dfs(0, [], 0)


def _check_cap(dm: DistanceMatrix) -> None:
    if dm.n > SEARCH_CAP:
        raise ValueError(f"closed-set search refuses graphs above {SEARCH_CAP} vertices")


def min_closed_size(dm: DistanceMatrix) -> tuple[int, frozenset[int]]:
    """Smallest closed set; ties go to the lexicographically smallest member list."""
    _check_cap(dm)
    for size in range(dm.radius + 1, dm.n + 1):
        found = _search(dm, size, None)
        if found is not None:
            return size, from_mask(found)
    raise AssertionError("the full vertex set is always closed")


def min_closed_containing(dm: DistanceMatrix, v: int) -> tuple[int, frozenset[int]]:
    _check_cap(dm)
    for size in range(dm.ecc[v] + 1, dm.n + 1):
        found = _search(dm, size, v)
        if found is not None:
            return size, from_mask(found)
    raise AssertionError("the full vertex set is always closed")
