"""Monodromy tuples over a genus-g base and their exhaustive enumeration.

A tuple (a_1, b_1, ..., a_g, b_g; g_1, ..., g_n) of permutations is the
combinatorial datum of a branched cover: the a_i, b_i are the images of
the handle loops of the base curve, the g_j the local monodromies around
the n branch points.  It is a valid point of the space when

  * the surface relation [a_1,b_1]...[a_g,b_g] g_1...g_n = 1 holds,
  * no g_j is the identity,
  * the entries generate the whole group G, and
  * G acts transitively (the cover is connected).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .errors import DegreeMismatch, WorkCapExceeded
from .perms import (
    Perm,
    PermGroup,
    commutator,
    compose,
    conjugate,
    format_perm,
    generate_group,
    identity,
    inverse,
)

DEFAULT_WORK_CAP = 10**8


@dataclass(frozen=True)
class HurwitzTuple:
    """Immutable monodromy tuple; ordering is lexicographic on the
    concatenated one-line notations of all entries (handles first)."""

    degree: int
    handles: tuple[tuple[Perm, Perm], ...]
    branches: tuple[Perm, ...]

    @property
    def base_genus(self) -> int:
        return len(self.handles)

    @property
    def branch_count(self) -> int:
        return len(self.branches)

    def entries(self) -> tuple[Perm, ...]:
        flat: list[Perm] = []
        for a, b in self.handles:
            flat.append(a)
            flat.append(b)
        flat.extend(self.branches)
        return tuple(flat)

    def sort_key(self) -> tuple[Perm, ...]:
        return self.entries()

    def __lt__(self, other: "HurwitzTuple") -> bool:
        return self.entries() < other.entries()

    def __str__(self) -> str:
        return ", ".join(format_perm(e) for e in self.entries())

    def total_product(self) -> Perm:
        run = identity(self.degree)
        for a, b in self.handles:
            run = compose(run, commutator(a, b))
        for g in self.branches:
            run = compose(run, g)
        return run


def tuple_from_entries(degree: int, base_genus: int, entries) -> HurwitzTuple:
    entries = tuple(entries)
    if len(entries) < 2 * base_genus + 1:
        raise DegreeMismatch(
            f"need at least {2 * base_genus + 1} entries for genus {base_genus}, got {len(entries)}"
        )
    for e in entries:
        if len(e) != degree:
            raise DegreeMismatch(f"entry of degree {len(e)}, expected {degree}")
    handles = tuple(
        (entries[2 * i], entries[2 * i + 1]) for i in range(base_genus)
    )
    return HurwitzTuple(degree, handles, entries[2 * base_genus:])


@dataclass(frozen=True)
class ValidationReport:
    relation_holds: bool
    no_trivial_branch: bool
    generates_G: bool
    g_transitive: bool

    @property
    def is_valid(self) -> bool:
        return (
            self.relation_holds
            and self.no_trivial_branch
            and self.generates_G
            and self.g_transitive
        )


def validate_tuple(t: HurwitzTuple, G: PermGroup) -> ValidationReport:
    """Check every membership condition of the space, one flag per condition."""
    if t.degree != G.degree:
        raise DegreeMismatch(f"tuple degree {t.degree} vs group degree {G.degree}")
    ident = identity(t.degree)
    relation = t.total_product() == ident
    no_trivial = all(g != ident for g in t.branches)
    entries = t.entries()
    if all(e in G for e in entries):
        # closure of a subset of G stays inside G, so the cap is never hit
        closure = generate_group(entries, cap=G.order + 1)
        generates = closure.elements == G.elements
    else:
        generates = False
    return ValidationReport(relation, no_trivial, generates, G.is_transitive())


@dataclass(frozen=True)
class BranchingType:
    """Multiset of conjugacy classes of the branch entries.

    ``entries`` pairs each canonical class representative with its
    multiplicity, sorted by representative; multiplicities sum to n.
    """

    entries: tuple[tuple[Perm, int], ...]

    @property
    def size(self) -> int:
        return sum(m for _, m in self.entries)

    def __str__(self) -> str:
        return " + ".join(f"{m}*[{format_perm(r)}]" for r, m in self.entries)


def branching_type_of(t: HurwitzTuple, G: PermGroup) -> BranchingType:
    counts: dict[Perm, int] = {}
    for g in t.branches:
        rep = G.class_of(g)
        counts[rep] = counts.get(rep, 0) + 1
    return BranchingType(tuple(sorted(counts.items())))


def make_branching_type(G: PermGroup, pairs) -> BranchingType:
    """Normalize (element, multiplicity) pairs to canonical class reps."""
    counts: dict[Perm, int] = {}
    for p, mult in pairs:
        rep = G.class_of(p)
        counts[rep] = counts.get(rep, 0) + mult
    return BranchingType(tuple(sorted(counts.items())))


def conjugate_branching_type(bt: BranchingType, s: Perm, G: PermGroup) -> BranchingType:
    """The type with every class O replaced by s O s^-1."""
    return BranchingType(
        tuple(sorted((G.class_of(conjugate(rep, s)), m) for rep, m in bt.entries))
    )


class _Budget:
    """Shared mutable node counter for one enumeration call."""

    __slots__ = ("nodes",)

    def __init__(self) -> None:
        self.nodes = 0


def enumerate_tuples(
    G: PermGroup,
    base_genus: int,
    branch_count: int,
    type_filter: BranchingType | None = None,
    *,
    work_cap: int = DEFAULT_WORK_CAP,
    threads: int = 1,
    stats: dict | None = None,
) -> list[HurwitzTuple]:
    """Every valid tuple exactly once, in lexicographic order.

    The search assigns the 2g + n - 1 free entries depth first in sorted
    element order and solves the last branch entry from the relation, so
    the output order is the global total order.  The work cap counts
    visited search-tree nodes (candidate entry assignments); the a-priori
    bound |G|^(2g+n-1) is checked up front.  With ``threads`` > 1 the tree
    is partitioned on the first free entry; the merged output and the cap
    decision are identical to the single-threaded run.
    """
    if branch_count < 1:
        raise ValueError("branch count must be at least 1")
    if base_genus < 0:
        raise ValueError("base genus must be non-negative")
    free = 2 * base_genus + branch_count - 1
    if G.order**free > work_cap:
        raise WorkCapExceeded(
            f"|G|^(2g+n-1) = {G.order}^{free} exceeds work cap {work_cap}"
        )
    if not G.is_transitive():
        return []

    ident = identity(G.degree)
    budget_need: dict[Perm, int] | None = None
    if type_filter is not None:
        budget_need = {rep: m for rep, m in type_filter.entries}
        if type_filter.size != branch_count:
            return []

    if free == 0:
        # n = 1, g = 0: the single branch entry would have to be the identity.
        return []

    def enumerate_subtree(first: Perm, budget: _Budget) -> list[HurwitzTuple]:
        out: list[HurwitzTuple] = []
        chosen: list[Perm] = [first]
        used: dict[Perm, int] = {}

        def class_ok(g: Perm) -> bool:
            if budget_need is None:
                return True
            rep = G.class_of(g)
            return used.get(rep, 0) < budget_need.get(rep, 0)

        def take(g: Perm) -> None:
            if budget_need is not None:
                rep = G.class_of(g)
                used[rep] = used.get(rep, 0) + 1

        def drop(g: Perm) -> None:
            if budget_need is not None:
                rep = G.class_of(g)
                used[rep] -= 1

        def close(run: Perm) -> None:
            last = inverse(run)
            if last == ident or not class_ok(last):
                return
            entries = tuple(chosen) + (last,)
            closure = generate_group(entries, cap=G.order + 1)
            if closure.elements != G.elements:
                return
            out.append(tuple_from_entries(G.degree, base_genus, entries))

        def walk(depth: int, run: Perm) -> None:
            # ``depth`` counts fully assigned free slots; ``run`` is the
            # relation product of everything committed so far.
            if depth == free:
                close(run)
                return
            is_branch = depth >= 2 * base_genus
            pending_handle = depth % 2 == 1 and not is_branch
            for g in G.elements:
                if is_branch and (g == ident or not class_ok(g)):
                    continue
                budget.nodes += 1
                if budget.nodes > work_cap:
                    raise WorkCapExceeded(f"visited nodes exceed work cap {work_cap}")
                chosen.append(g)
                if is_branch:
                    take(g)
                    walk(depth + 1, compose(run, g))
                    drop(g)
                elif pending_handle:
                    walk(depth + 1, compose(run, commutator(chosen[-2], g)))
                else:
                    walk(depth + 1, run)
                chosen.pop()

        # commit the first entry (depth 0 -> 1) by hand
        budget.nodes += 1
        is_branch0 = 0 >= 2 * base_genus
        if is_branch0:
            if first == ident or not class_ok(first):
                return out
            take(first)
            walk(1, first)
        else:
            walk(1, ident)
        return out

    if threads <= 1:
        budget = _Budget()
        results = [enumerate_subtree(first, budget) for first in G.elements]
        total_nodes = budget.nodes
    else:
        budgets = [_Budget() for _ in G.elements]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(enumerate_subtree, G.elements, budgets))
        total_nodes = sum(b.nodes for b in budgets)
    if total_nodes > work_cap:
        raise WorkCapExceeded(f"visited nodes {total_nodes} exceed work cap {work_cap}")
    if stats is not None:
        stats["nodes"] = total_nodes

    merged: list[HurwitzTuple] = []
    for part in results:
        merged.extend(part)
    return merged
