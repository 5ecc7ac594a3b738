"""Exact permutation and finite permutation-group arithmetic.

A permutation of degree d is a plain tuple of images on the points
{0, ..., d-1}: ``p[lam]`` is the image of ``lam``.  Permutations act on
the right and words compose left to right, so

    lam . (p * q) == (lam . p) . q        i.e.  compose(p, q)[lam] == q[p[lam]].

All text I/O is 1-based disjoint-cycle notation; everything internal is
0-based.  The total order on permutations is lexicographic on the image
tuple (one-line notation); every canonical representative and sorted
listing in the package uses it.
"""

from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass
from itertools import permutations as _sym_permutations

from .errors import (
    CycleSyntaxError,
    DegreeMismatch,
    DegreeTooLargeForSymSearch,
    OrderCapExceeded,
    PointOutOfRange,
    RepeatedPoint,
)

Perm = tuple[int, ...]

DEFAULT_ORDER_CAP = 10**6
DEFAULT_SYM_SEARCH_BOUND = 10


def identity(degree: int) -> Perm:
    return tuple(range(degree))


def _check_degrees(p: Perm, q: Perm) -> None:
    if len(p) != len(q):
        raise DegreeMismatch(f"degree {len(p)} vs {len(q)}")


def compose(p: Perm, q: Perm) -> Perm:
    """Left-to-right product: apply p first, then q."""
    _check_degrees(p, q)
    return tuple(q[i] for i in p)


def compose_all(perms, degree: int) -> Perm:
    run = identity(degree)
    for p in perms:
        run = compose(run, p)
    return run


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def conjugate(p: Perm, s: Perm) -> Perm:
    """The product s * p * s^-1 (left-to-right), i.e. p with points relabeled."""
    _check_degrees(p, s)
    sinv = inverse(s)
    return tuple(sinv[p[j]] for j in s)


def commutator(a: Perm, b: Perm) -> Perm:
    """[a, b] = a * b * a^-1 * b^-1."""
    return compose(compose(a, b), compose(inverse(a), inverse(b)))


def perm_order(p: Perm) -> int:
    order = 1
    for c in cyclic_orbits(p):
        order = math.lcm(order, len(c))
    return order


def cyclic_orbits(p: Perm) -> tuple[tuple[int, ...], ...]:
    """Orbits of <p> on the points: the cycles of p, fixed points included.

    Each orbit lists its points in traversal order starting from its
    minimal point; orbits are sorted by that minimal point.
    """
    seen = [False] * len(p)
    orbits = []
    for start in range(len(p)):
        if seen[start]:
            continue
        orbit = []
        j = start
        while not seen[j]:
            seen[j] = True
            orbit.append(j)
            j = p[j]
        orbits.append(tuple(orbit))
    return tuple(orbits)


def cycle_type(p: Perm) -> tuple[int, ...]:
    """Cycle lengths including fixed points, sorted descending."""
    return tuple(sorted((len(c) for c in cyclic_orbits(p)), reverse=True))


_TOKEN_RE = re.compile(r"\(|\)|\d+|[,\s]+")


def parse_perm(text: str, degree: int) -> Perm:
    """Parse 1-based disjoint-cycle notation.

    Grammar: ``perm := "id" | "()" | cycle+ ; cycle := "(" int (sep int)* ")" ;
    sep := "," | whitespace``.  Points not mentioned are fixed.
    """
    stripped = text.strip()
    if stripped == "id" or stripped == "()":
        return identity(degree)
    pos = 0
    images = list(range(degree))
    used: set[int] = set()
    cycles_found = 0
    cur: list[int] | None = None
    while pos < len(stripped):
        m = _TOKEN_RE.match(stripped, pos)
        if m is None:
            raise CycleSyntaxError(f"unexpected character at position {pos}: {stripped[pos:]!r}")
        tok = m.group()
        pos = m.end()
        if tok == "(":
            if cur is not None:
                raise CycleSyntaxError("nested '(' in cycle notation")
            cur = []
        elif tok == ")":
            if cur is None:
                raise CycleSyntaxError("')' without matching '('")
            if not cur:
                raise CycleSyntaxError("empty cycle in multi-cycle expression")
            for a, b in zip(cur, cur[1:] + cur[:1]):
                images[a] = b
            cycles_found += 1
            cur = None
        elif tok[0].isdigit():
            if cur is None:
                raise CycleSyntaxError(f"point {tok} outside any cycle")
            val = int(tok)
            if val < 1 or val > degree:
                raise PointOutOfRange(f"point {val} out of range 1..{degree}")
            if val - 1 in used:
                raise RepeatedPoint(f"point {val} occurs twice")
            used.add(val - 1)
            cur.append(val - 1)
        # separators are skipped
    if cur is not None:
        raise CycleSyntaxError("unbalanced parentheses: missing ')'")
    if cycles_found == 0:
        raise CycleSyntaxError(f"no cycles found in {text!r}")
    return tuple(images)


def format_perm(p: Perm) -> str:
    """Canonical 1-based cycle string; identity renders as "()"."""
    parts = [c for c in cyclic_orbits(p) if len(c) > 1]
    if not parts:
        return "()"
    return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in parts)


@dataclass(frozen=True)
class ConjClass:
    """One conjugacy class: canonical (minimal) representative and all members."""

    representative: Perm
    members: tuple[Perm, ...]

    def __contains__(self, p: Perm) -> bool:
        return p in self.members


class PermGroup:
    """A finite permutation group with its elements fully materialized.

    Immutable after construction; derived data (transitivity, conjugacy
    classes, distinguished subgroups) is computed lazily and cached.
    ``marked_point`` is the 0-based distinguished point lambda_0 used by
    the pointed classification.
    """

    def __init__(self, degree: int, generators: tuple[Perm, ...],
                 elements: tuple[Perm, ...], marked_point: int = 0):
        if not 0 <= marked_point < degree:
            raise PointOutOfRange(f"marked point {marked_point} out of range for degree {degree}")
        self.degree = degree
        self.generators = generators
        self.elements = elements  # sorted, deduplicated, closed
        self.marked_point = marked_point
        self._element_set = frozenset(elements)
        self._cache: dict[str, object] = {}

    # -- basic protocol ------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, p: Perm) -> bool:
        return p in self._element_set

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PermGroup)
            and self.degree == other.degree
            and self.elements == other.elements
            and self.marked_point == other.marked_point
        )

    def __hash__(self) -> int:
        return hash((self.degree, self.elements, self.marked_point))

    def __repr__(self) -> str:
        gens = ", ".join(format_perm(g) for g in self.generators)
        return f"PermGroup(degree={self.degree}, order={self.order}, <{gens}>)"

    # -- structure -----------------------------------------------------------

    def is_transitive(self) -> bool:
        try:
            return self._cache["transitive"]  # type: ignore[return-value]
        except KeyError:
            pass
        reach = {0}
        frontier = deque([0])
        while frontier:
            lam = frontier.popleft()
            for g in self.generators:
                mu = g[lam]
                if mu not in reach:
                    reach.add(mu)
                    frontier.append(mu)
        result = len(reach) == self.degree
        self._cache["transitive"] = result
        return result

    def point_stabilizer(self, lam: int) -> "PermGroup":
        if not 0 <= lam < self.degree:
            raise PointOutOfRange(f"point {lam} out of range for degree {self.degree}")
        key = f"stab:{lam}"
        try:
            return self._cache[key]  # type: ignore[return-value]
        except KeyError:
            pass
        members = tuple(g for g in self.elements if g[lam] == lam)
        sub = PermGroup(self.degree, members, members, marked_point=self.marked_point)
        self._cache[key] = sub
        return sub

    def conjugacy_classes(self) -> tuple[ConjClass, ...]:
        try:
            return self._cache["classes"]  # type: ignore[return-value]
        except KeyError:
            pass
        unseen = set(self.elements)
        classes = []
        # elements are sorted, so the first unseen member of a class is minimal
        for rep in self.elements:
            if rep not in unseen:
                continue
            members = {conjugate(rep, h) for h in self.elements}
            unseen -= members
            classes.append(ConjClass(rep, tuple(sorted(members))))
        out = tuple(classes)
        self._cache["classes"] = out
        return out

    def class_of(self, p: Perm) -> Perm:
        """Canonical representative of the conjugacy class of p."""
        try:
            table = self._cache["class_table"]
        except KeyError:
            table = {
                member: cls.representative
                for cls in self.conjugacy_classes()
                for member in cls.members
            }
            self._cache["class_table"] = table
        try:
            return table[p]  # type: ignore[index]
        except KeyError:
            raise DegreeMismatch(f"{format_perm(p)} is not an element of the group") from None

    def with_marked_point(self, lam: int) -> "PermGroup":
        if lam == self.marked_point:
            return self
        return PermGroup(self.degree, self.generators, self.elements, marked_point=lam)


def generate_group(gens, degree: int | None = None, *,
                   cap: int = DEFAULT_ORDER_CAP, marked_point: int = 0) -> PermGroup:
    """Breadth-first closure of the generators under composition.

    Inverses and the identity come for free in a finite group; the closure
    is cut off with OrderCapExceeded when it grows past ``cap``.
    """
    gens = tuple(gens)
    if not gens:
        if degree is None:
            raise DegreeMismatch("empty generator list and no degree given")
        ident = identity(degree)
        return PermGroup(degree, (ident,), (ident,), marked_point=marked_point)
    d = len(gens[0])
    if degree is not None and degree != d:
        raise DegreeMismatch(f"generators of degree {d}, expected {degree}")
    for g in gens:
        _check_degrees(gens[0], g)
    ident = identity(d)
    seen = {ident}
    frontier = deque([ident])
    while frontier:
        x = frontier.popleft()
        for g in gens:
            y = compose(x, g)
            if y not in seen:
                if len(seen) >= cap:
                    raise OrderCapExceeded(f"group order exceeds cap {cap}")
                seen.add(y)
                frontier.append(y)
    return PermGroup(d, gens, tuple(sorted(seen)), marked_point=marked_point)


def subgroup_from_elements(degree: int, members, marked_point: int = 0) -> PermGroup:
    members = tuple(sorted(set(members)))
    return PermGroup(degree, members, members, marked_point=marked_point)


def centralizer_in_sym(G: PermGroup, *, bound: int = DEFAULT_SYM_SEARCH_BOUND) -> PermGroup:
    """Centralizer of G in the full symmetric group on its points.

    Exhaustive scan over S_d; refused above the degree bound.
    """
    key = "centralizer_sym"
    try:
        return G._cache[key]  # type: ignore[return-value]
    except KeyError:
        pass
    if G.degree > bound:
        raise DegreeTooLargeForSymSearch(f"degree {G.degree} > bound {bound}")
    gens = G.generators
    members = [
        s
        for s in _sym_permutations(range(G.degree))
        if all(compose(s, g) == compose(g, s) for g in gens)
    ]
    out = subgroup_from_elements(G.degree, members, marked_point=G.marked_point)
    G._cache[key] = out
    return out


def normalizer_in_sym(G: PermGroup, *, bound: int = DEFAULT_SYM_SEARCH_BOUND) -> PermGroup:
    """Normalizer of G in the full symmetric group on its points."""
    key = "normalizer_sym"
    try:
        return G._cache[key]  # type: ignore[return-value]
    except KeyError:
        pass
    if G.degree > bound:
        raise DegreeTooLargeForSymSearch(f"degree {G.degree} > bound {bound}")
    gens = G.generators
    members = []
    for s in _sym_permutations(range(G.degree)):
        s = tuple(s)
        if all(conjugate(g, s) in G for g in gens) and all(
            conjugate(g, inverse(s)) in G for g in gens
        ):
            members.append(s)
    out = subgroup_from_elements(G.degree, members, marked_point=G.marked_point)
    G._cache[key] = out
    return out


def normalizer_fixing_point(G: PermGroup, lam: int | None = None, *,
                            bound: int = DEFAULT_SYM_SEARCH_BOUND) -> PermGroup:
    """N(lam) = elements of the normalizer of G in S_d that fix the point lam.

    With lam omitted, uses the group's marked point.
    """
    if lam is None:
        lam = G.marked_point
    return normalizer_in_sym(G, bound=bound).point_stabilizer(lam)
