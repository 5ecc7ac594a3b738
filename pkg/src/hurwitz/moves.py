"""Elementary moves on the branch segment of a tuple, and their orbits.

The forward move at position i replaces (g_i, g_i+1) by
(g_i g_i+1 g_i^-1, g_i); the inverse move replaces it by
(g_i+1, g_i+1^-1 g_i g_i+1).  Handle entries are never touched and the
relation product is preserved, so moves map valid tuples to valid tuples
of the same branching type.

Orbits of the move closure are the combinatorial connected components of
the space.  Over a genus-0 base the n-1 elementary moves generate the
full monodromy of the configuration space, so components are exact; for
genus >= 1 no tuple-level action of the full mapping class group is
implemented and the partition is only a refinement (the component count
is an upper bound).  Results carry an ``exact`` flag accordingly.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Literal

from .errors import IndexOutOfRange, InternalInvariantViolation, OrbitCapExceeded
from .perms import PermGroup, compose, inverse
from .tuples import BranchingType, HurwitzTuple
from .classify import (
    SpaceClassification,
    classify_space,
    pointed_class,
    unpointed_class,
)

DEFAULT_ORBIT_CAP = 10**7

Convention = Literal["standard", "mirrored"]


def hurwitz_move(t: HurwitzTuple, i: int, *, inverse_move: bool = False,
                 convention: Convention = "standard") -> HurwitzTuple:
    """Apply the elementary move at 1-based branch position i.

    The mirrored convention swaps the roles of the two standard twists;
    both conventions generate identical orbit closures.
    """
    n = t.branch_count
    if not 1 <= i <= n - 1:
        raise IndexOutOfRange(f"move index {i} outside 1..{n - 1}")
    if convention == "mirrored":
        inverse_move = not inverse_move
    b = list(t.branches)
    gi, gj = b[i - 1], b[i]
    if inverse_move:
        b[i - 1], b[i] = gj, compose(compose(inverse(gj), gi), gj)
    else:
        b[i - 1], b[i] = compose(compose(gi, gj), inverse(gi)), gi
    return HurwitzTuple(t.degree, t.handles, tuple(b))


def braid_orbit(t: HurwitzTuple, *, orbit_cap: int = DEFAULT_ORBIT_CAP,
                convention: Convention = "standard") -> tuple[HurwitzTuple, ...]:
    """Closure of one tuple under all elementary moves, both directions.

    BFS in insertion order with the exact tuple as visited-set key;
    the result is sorted in the global total order.
    """
    n = t.branch_count
    seen = {t}
    frontier = deque([t])
    while frontier:
        cur = frontier.popleft()
        for i in range(1, n):
            for inv in (False, True):
                nxt = hurwitz_move(cur, i, inverse_move=inv, convention=convention)
                if nxt not in seen:
                    if len(seen) >= orbit_cap:
                        raise OrbitCapExceeded(f"orbit exceeds cap {orbit_cap}")
                    seen.add(nxt)
                    frontier.append(nxt)
    return tuple(sorted(seen))


Level = Literal["tuples", "pointed", "unpointed"]


@dataclass(frozen=True)
class ComponentPartition:
    """Orbit partition of one space under the move closure.

    ``orbit_sizes`` lists one size per orbit, ordered by each orbit's
    minimal member; ``exact`` is false for genus >= 1 where the partition
    is only a refinement of the true components.
    """

    level: Level
    exact: bool
    orbit_sizes: tuple[int, ...]
    orbits: tuple[tuple[HurwitzTuple, ...], ...]


def _partition(nodes, neighbors: Callable, orbit_cap: int):
    pool = set(nodes)
    parts: list[tuple] = []
    visited_total = 0
    while pool:
        seed = min(pool)
        seen = {seed}
        frontier = deque([seed])
        while frontier:
            cur = frontier.popleft()
            for nxt in neighbors(cur):
                if nxt not in seen:
                    visited_total += 1
                    if visited_total > orbit_cap:
                        raise OrbitCapExceeded(f"orbit closure exceeds cap {orbit_cap}")
                    seen.add(nxt)
                    frontier.append(nxt)
        if not seen <= pool:
            # moves must not leave the enumerated space
            raise InternalInvariantViolation("orbit escaped the enumerated space")
        pool -= seen
        parts.append(tuple(sorted(seen)))
    parts.sort(key=lambda p: p[0])
    return parts


def components(
    G: PermGroup,
    base_genus: int,
    branch_count: int,
    type_filter: BranchingType | None = None,
    *,
    level: Level = "tuples",
    convention: Convention = "standard",
    orbit_cap: int = DEFAULT_ORBIT_CAP,
    work_cap: int | None = None,
    threads: int = 1,
    classification: SpaceClassification | None = None,
) -> ComponentPartition:
    """Orbit partition of a whole space at the requested quotient level.

    Moves commute with conjugation, so they act on pointed and unpointed
    classes; at those levels the BFS runs directly on canonical
    representatives (apply a move, re-canonicalize).
    """
    if classification is None:
        classification = classify_space(
            G, base_genus, branch_count, type_filter,
            work_cap=work_cap, threads=threads,
        )
    cls = classification
    n = branch_count
    all_moves = [(i, inv) for i in range(1, n) for inv in (False, True)]

    def step(t: HurwitzTuple, i: int, inv: bool) -> HurwitzTuple:
        return hurwitz_move(t, i, inverse_move=inv, convention=convention)

    if level == "tuples":
        nodes = cls.tuples

        def neighbors(t: HurwitzTuple):
            return (step(t, i, inv) for i, inv in all_moves)

    elif level == "pointed":
        nodes = tuple(c.canonical for c in cls.pointed)

        def neighbors(t: HurwitzTuple):
            return (
                pointed_class(step(t, i, inv), G).canonical
                for i, inv in all_moves
            )

    elif level == "unpointed":
        nodes = tuple(u.canonical for u in cls.unpointed)

        def neighbors(t: HurwitzTuple):
            return (
                unpointed_class(step(t, i, inv), G).canonical
                for i, inv in all_moves
            )

    else:
        raise ValueError(f"unknown level {level!r}")

    parts = _partition(nodes, neighbors, orbit_cap)
    return ComponentPartition(
        level=level,
        exact=base_genus == 0,
        orbit_sizes=tuple(len(p) for p in parts),
        orbits=tuple(parts),
    )
