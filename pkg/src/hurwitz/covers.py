"""Fiberwise geometry of a monodromy tuple: induced actions, ramification
profiles, and Riemann-Hurwitz genus computations.

Three standard action models for a tuple valid in G:

  * natural: the entries act on the d points as given (the induced cover),
  * regular: every entry acts on G itself by right translation (the
    Galois cover),
  * coset: entries act by right translation on the right cosets H\\G;
    with H the stabilizer of the marked point this is the quotient model
    of the induced cover, and the two are equivariantly isomorphic.

The ramification index over branch point j at a domain orbit of g_j is
the orbit length k; Riemann-Hurwitz then gives the fiber genus
2 g_X - 2 = N (2 g_Y - 2) + sum_j sum_orbits (k - 1).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    DegreeMismatch,
    DisconnectedCover,
    DomainSizeMismatch,
    InternalInvariantViolation,
    NotASubgroup,
    ParityViolation,
)
from .perms import Perm, PermGroup, compose, cycle_type, cyclic_orbits, perm_order
from .tuples import HurwitzTuple
from .classify import PointedClass, nu_fiber


@dataclass(frozen=True)
class ActionTuple:
    """A tuple together with an explicit permutation action of every entry.

    ``actions`` matches ``base.entries()`` position by position; each is a
    permutation of {0, ..., domain_size - 1}.
    """

    base: HurwitzTuple
    domain_size: int
    actions: tuple[Perm, ...]

    @property
    def branch_actions(self) -> tuple[Perm, ...]:
        return self.actions[2 * self.base.base_genus:]

    def is_connected(self) -> bool:
        """True when the group generated by the entry actions is transitive."""
        if self.domain_size == 0:
            return False
        reach = {0}
        frontier = [0]
        while frontier:
            x = frontier.pop()
            for a in self.actions:
                y = a[x]
                if y not in reach:
                    reach.add(y)
                    frontier.append(y)
        return len(reach) == self.domain_size


def natural_model(t: HurwitzTuple) -> ActionTuple:
    """The entries acting on the d points as given."""
    return ActionTuple(t, t.degree, t.entries())


def regular_model(t: HurwitzTuple, G: PermGroup) -> ActionTuple:
    """Entries act on the sorted element list of G by right translation."""
    index = {g: i for i, g in enumerate(G.elements)}
    actions = tuple(
        tuple(index[compose(h, e)] for h in G.elements) for e in t.entries()
    )
    return ActionTuple(t, G.order, actions)


def coset_model(t: HurwitzTuple, G: PermGroup, H: PermGroup) -> ActionTuple:
    """Entries act on the right cosets H\\G by right translation.

    Cosets are indexed in the order of their minimal elements.  With
    H = G(lam0) this is the quotient model of the induced cover.
    """
    if H.degree != G.degree or not all(h in G for h in H.elements):
        raise NotASubgroup("H is not a subgroup of G")
    h_elems = H.elements
    coset_of: dict[Perm, Perm] = {}
    reps: list[Perm] = []
    for g in G.elements:  # sorted, so the first member seen is the minimum
        if g in coset_of:
            continue
        members = [compose(h, g) for h in h_elems]
        rep = min(members)
        reps.append(rep)
        for m in members:
            coset_of[m] = rep
    reps.sort()
    index = {rep: i for i, rep in enumerate(reps)}
    actions = tuple(
        tuple(index[coset_of[compose(rep, e)]] for rep in reps)
        for e in t.entries()
    )
    return ActionTuple(t, len(reps), actions)


def actions_isomorphic(A: ActionTuple, B: ActionTuple) -> Perm | None:
    """A domain bijection intertwining every corresponding pair of entries.

    Returned as a tuple psi with psi[x . a_k] == psi[x] . b_k for all k;
    None when no such bijection exists.  The search anchors one point per
    orbit and propagates along the actions, backtracking over anchor
    images only.
    """
    if len(A.actions) != len(B.actions):
        raise DegreeMismatch(
            f"{len(A.actions)} entries vs {len(B.actions)}"
        )
    if A.domain_size != B.domain_size:
        raise DomainSizeMismatch(
            f"domain {A.domain_size} vs {B.domain_size}"
        )
    n_dom = A.domain_size
    if n_dom == 0:
        return ()

    pairs = list(zip(A.actions, B.actions))

    def propagate(psi: list[int | None], used: set[int], root: int, image: int):
        """Extend psi by psi[root] = image; return newly assigned points or None."""
        if psi[root] is not None or image in used:
            return None
        assigned = [root]
        psi[root] = image
        used.add(image)
        queue = [root]
        while queue:
            x = queue.pop()
            for a, b in pairs:
                y, z = a[x], b[psi[x]]
                if psi[y] is None:
                    if z in used:
                        break
                    psi[y] = z
                    used.add(z)
                    assigned.append(y)
                    queue.append(y)
                elif psi[y] != z:
                    break
            else:
                continue
            for w in assigned:  # undo on conflict
                used.discard(psi[w])  # type: ignore[arg-type]
                psi[w] = None
            return None
        return assigned

    def solve(psi: list[int | None], used: set[int]) -> bool:
        try:
            root = psi.index(None)
        except ValueError:
            return True
        for image in range(n_dom):
            assigned = propagate(psi, used, root, image)
            if assigned is None:
                continue
            if solve(psi, used):
                return True
            for w in assigned:
                used.discard(psi[w])  # type: ignore[arg-type]
                psi[w] = None
        return False

    psi: list[int | None] = [None] * n_dom
    if solve(psi, set()):
        return tuple(psi)  # type: ignore[arg-type]
    return None


def ramification_profile(t: HurwitzTuple) -> tuple[tuple[int, ...], ...]:
    """Per branch point, the partition of the degree by orbit lengths of g_j."""
    return tuple(
        tuple(sorted((len(c) for c in cyclic_orbits(g)), reverse=True))
        for g in t.branches
    )


def ramification_detail(t: HurwitzTuple, G: PermGroup) -> tuple[tuple[dict, ...], ...]:
    """Debug view per branch point: one record per ramification point.

    ``index`` is the orbit length k; ``q`` = ord(g_j) / k is the order of
    the stabilizer of a preimage in the cyclic local group (downstream
    results never need it, so it lives only here).
    """
    out = []
    for g in t.branches:
        e = perm_order(g)
        recs = tuple(
            {"orbit": c, "index": len(c), "q": e // len(c)}
            for c in cyclic_orbits(g)
        )
        out.append(recs)
    return tuple(out)


def _genus_from_action(branch_actions, domain_size: int, base_genus: int) -> int:
    ram = 0
    for a in branch_actions:
        ram += sum(len(c) - 1 for c in cyclic_orbits(a))
    val = domain_size * (2 * base_genus - 2) + ram
    if val % 2 != 0:
        raise ParityViolation(
            f"2g-2 = {val} is odd; the input cannot be a valid monodromy datum"
        )
    genus = val // 2 + 1
    if genus < 0:
        raise ParityViolation(f"negative genus {genus}")
    return genus


def fiber_genus(t: HurwitzTuple, G: PermGroup, model: str = "induced",
                H: PermGroup | None = None) -> int:
    """Genus of the total space of the selected model of the cover.

    ``model`` is one of "induced" (natural action on the d points),
    "galois" (regular action on G), or "coset" (right cosets of H).
    The action must be connected (transitive); genus of a disconnected
    action is refused rather than summed per component.
    """
    if model == "induced":
        action = natural_model(t)
    elif model == "galois":
        action = regular_model(t, G)
    elif model == "coset":
        if H is None:
            raise NotASubgroup("coset model needs a subgroup H")
        action = coset_model(t, G, H)
    else:
        raise ValueError(f"unknown model {model!r}")
    if not action.is_connected():
        raise DisconnectedCover(f"{model} action is not transitive")
    return _genus_from_action(action.branch_actions, action.domain_size, t.base_genus)


@dataclass(frozen=True)
class CoverReport:
    """Consolidated per-class cover data for one fiber of the family.

    ``branching_type`` here is the cycle-type shadow of the type: a
    sorted multiset of (cycle type, multiplicity) pairs.  Unlike the
    class-level type, the cycle-type form is unchanged by conjugation
    with any element normalizing G (which may permute the conjugacy
    classes themselves), so the whole report is a class and move-orbit
    invariant.
    """

    degree: int
    base_genus: int
    profiles: tuple[tuple[int, ...], ...]
    ramification_point_counts: tuple[int, ...]
    branching_type: tuple[tuple[tuple[int, ...], int], ...]
    genus: int
    galois_genus: int


def cycle_type_multiset(t: HurwitzTuple) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Sorted (cycle type, multiplicity) pairs over the branch entries."""
    counts: dict[tuple[int, ...], int] = {}
    for g in t.branches:
        ct = cycle_type(g)
        counts[ct] = counts.get(ct, 0) + 1
    return tuple(sorted(counts.items()))


def cover_report(t: HurwitzTuple, G: PermGroup) -> CoverReport:
    profiles = ramification_profile(t)
    return CoverReport(
        degree=t.degree,
        base_genus=t.base_genus,
        profiles=profiles,
        ramification_point_counts=tuple(len(p) for p in profiles),
        branching_type=cycle_type_multiset(t),
        genus=fiber_genus(t, G, "induced"),
        galois_genus=fiber_genus(t, G, "galois"),
    )


def universal_fiber_report(c: PointedClass, G: PermGroup) -> CoverReport:
    """Cover data for the fiber of the universal family over one class.

    Computed from the canonical representative and re-verified against a
    second member of the fiber (when one exists): every member must
    produce the identical report, since all the quantities are
    conjugation invariants.
    """
    report = cover_report(c.canonical, G)
    fiber = nu_fiber(c, G)
    if len(fiber) > 1:
        other = fiber[1] if fiber[0] == c.canonical else fiber[0]
        if cover_report(other, G) != report:
            raise InternalInvariantViolation(
                "cover report differs across members of one pointed class"
            )
    return report
