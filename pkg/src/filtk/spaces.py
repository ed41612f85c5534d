"""Finite T0-spaces: validation, order theory, locally closed subsets,
enumeration up to homeomorphism, and accordion detection.

A space is stored as an ordered tuple of point labels plus the set of open
subsets.  By the Alexandrov correspondence a finite T0-space is the same
thing as a finite poset under the specialization order (x <= y iff x lies
in the closure of {y}, equivalently every open set containing x contains
y); opens are exactly the up-closed subsets.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field


class SpaceError(Exception):
    pass


class NotALattice(SpaceError):
    """Opens are not closed under union or intersection."""


class MissingExtremes(SpaceError):
    """The empty set or the full point set is missing from the opens."""


class NotT0(SpaceError):
    """Two points share the same open neighbourhoods."""


class Disconnected(SpaceError):
    pass


class TooLarge(SpaceError):
    pass


@dataclass(frozen=True)
class ValidationReport:
    t0: bool
    connected: bool
    clopen_proper: tuple  # proper nonempty clopen subsets, sorted


class Space:
    """A validated finite T0-space."""

    def __init__(self, points, opens, name="", _report=None):
        self.name = name
        self.points = tuple(points)
        self.opens = frozenset(frozenset(u) for u in opens)
        self.report = _report
        self._leq = None

    # -- order theory ------------------------------------------------------

    def min_open(self, x):
        out = set(self.points)
        for u in self.opens:
            if x in u:
                out &= u
        return frozenset(out)

    @property
    def leq(self):
        """Specialization order as a set of pairs (x, y) meaning x <= y."""
        if self._leq is None:
            rel = set()
            for x in self.points:
                for y in self.min_open(x):
                    rel.add((x, y))
            self._leq = frozenset(rel)
        return self._leq

    def closure(self, subset):
        sub = set(subset)
        return frozenset(x for x in self.points if any((x, y) in self.leq for y in sub))

    def strict_down(self, x):
        return frozenset(y for y in self.points if y != x and (y, x) in self.leq)

    def hasse_pairs(self):
        """Cover relations (x, y): x < y with nothing strictly between."""
        lt = {(x, y) for (x, y) in self.leq if x != y}
        covers = []
        for (x, y) in sorted(lt):
            if not any((x, z) in lt and (z, y) in lt for z in self.points):
                covers.append((x, y))
        return covers

    # -- subsets -----------------------------------------------------------

    def is_open(self, subset):
        return frozenset(subset) in self.opens

    def subspace_opens(self, subset):
        sub = frozenset(subset)
        return sorted({u & sub for u in self.opens}, key=_subset_key)

    def comparable(self, x, y):
        return (x, y) in self.leq or (y, x) in self.leq

    def components(self, subset):
        """Connected components of a subspace (order-graph components)."""
        todo = set(subset)
        comps = []
        while todo:
            seed = next(iter(sorted(todo)))
            comp = {seed}
            frontier = [seed]
            while frontier:
                x = frontier.pop()
                for y in list(todo - comp):
                    if self.comparable(x, y):
                        comp.add(y)
                        frontier.append(y)
            comps.append(frozenset(comp))
            todo -= comp
        return sorted(comps, key=_subset_key)

    def is_connected(self, subset=None):
        sub = self.points if subset is None else subset
        if not sub:
            return False
        return len(self.components(sub)) == 1

    def locally_closed(self):
        """All difference sets U \\ V with V, U open, deduplicated."""
        seen = {}
        for u in self.opens:
            for v in self.opens:
                if v <= u:
                    seen.setdefault(u - v, (u, v))
        return seen  # carrier -> witness (U, V)

    def lc_star(self):
        """Connected non-empty locally closed subsets, in canonical order."""
        out = [c for c in self.locally_closed() if c and self.is_connected(c)]
        return sorted(out, key=_subset_key)

    # -- constructions -----------------------------------------------------

    def opposite(self):
        full = frozenset(self.points)
        closed = [full - u for u in self.opens]
        return Space(self.points, closed, name=(self.name + "op") if self.name else "")

    # -- serialization -----------------------------------------------------

    def to_json(self):
        return {
            "name": self.name,
            "points": [str(p) for p in self.points],
            "opens": sorted([sorted(u) for u in self.opens], key=lambda u: (len(u), u)),
        }

    def __eq__(self, other):
        return isinstance(other, Space) and self.points == other.points and self.opens == other.opens

    def __hash__(self):
        return hash((self.points, self.opens))

    def __repr__(self):
        return f"Space({self.name or self.points})"


def _subset_key(s):
    return (len(s), tuple(sorted(s)))


def set_name(subset):
    """Canonical printable name of a point subset, e.g. {2,4} -> '24'."""
    labels = sorted(subset)
    if all(len(str(x)) == 1 for x in labels):
        return "".join(str(x) for x in labels)
    return ",".join(str(x) for x in labels)


def validate_topology(points, opens, name=""):
    """Validate a finite topology and return the space.

    Raises MissingExtremes / NotALattice / NotT0.  The returned space
    carries a report with connectivity and all proper nonempty clopen
    subsets.
    """
    pts = tuple(points)
    if not pts:
        raise MissingExtremes("no points")
    if len(set(pts)) != len(pts):
        raise SpaceError("duplicate point labels")
    full = frozenset(pts)
    us = {frozenset(u) for u in opens}
    for u in us:
        if not u <= full:
            raise SpaceError(f"open set {sorted(u)} contains unknown points")
    if frozenset() not in us or full not in us:
        raise MissingExtremes("opens must contain the empty set and the full point set")
    for a, b in itertools.combinations(sorted(us, key=_subset_key), 2):
        if a | b not in us:
            raise NotALattice(f"union of {set_name(a)} and {set_name(b)} is not open")
        if a & b not in us:
            raise NotALattice(f"intersection of {set_name(a)} and {set_name(b)} is not open")
    space = Space(pts, us, name=name)
    for x, y in itertools.combinations(pts, 2):
        if space.min_open(x) == space.min_open(y):
            raise NotT0(f"points {x} and {y} are topologically indistinguishable")
    clopen = sorted(
        (u for u in us if u and u != full and (full - u) in us),
        key=_subset_key,
    )
    report = ValidationReport(
        t0=True,
        connected=space.is_connected(),
        clopen_proper=tuple(clopen),
    )
    space.report = report
    return space


def specialization_order(space):
    """The relation set {(x, y) : x in closure of {y}}."""
    return space.leq


def from_poset(points, leq, name=""):
    """Alexandrov space of a poset: opens are the up-closed subsets."""
    pts = tuple(points)
    ups = []
    for bits in itertools.product((0, 1), repeat=len(pts)):
        sub = frozenset(p for p, b in zip(pts, bits) if b)
        if all(y in sub for x in sub for y in pts if (x, y) in leq):
            ups.append(sub)
    return Space(pts, ups, name=name)


def is_accordion(space):
    """(flag, justification): the undirected Hasse graph is a simple path."""
    if not space.is_connected():
        raise Disconnected("accordion detection needs a connected space")
    n = len(space.points)
    deg = {p: 0 for p in space.points}
    for x, y in space.hasse_pairs():
        deg[x] += 1
        deg[y] += 1
    if n == 1:
        return True, "single point"
    if any(d > 2 for d in deg.values()):
        bad = sorted(p for p, d in deg.items() if d > 2)
        return False, f"Hasse degree exceeds 2 at {', '.join(map(str, bad))}"
    ends = sorted(p for p, d in deg.items() if d == 1)
    if len(ends) != 2:
        return False, f"Hasse graph has {len(ends)} endpoints, a path needs 2"
    if len(space.hasse_pairs()) != n - 1:
        return False, "Hasse graph has a cycle"
    return True, f"Hasse graph is the path with endpoints {ends[0]} and {ends[1]}"


# ---------------------------------------------------------------------------
# canonical forms and enumeration


def _refine_colors(points, lt):
    colors = {x: (sum(1 for y in points if (y, x) in lt),
                  sum(1 for y in points if (x, y) in lt)) for x in points}
    while True:
        nxt = {}
        for x in points:
            below = tuple(sorted(colors[y] for y in points if (y, x) in lt))
            above = tuple(sorted(colors[y] for y in points if (x, y) in lt))
            nxt[x] = (colors[x], below, above)
        # compress to small ints for stability
        ranks = {c: i for i, c in enumerate(sorted(set(nxt.values())))}
        nxt = {x: ranks[c] for x, c in nxt.items()}
        if len(set(nxt.values())) == len(set(colors.values())):
            return nxt
        colors = nxt


def canonical_form(space):
    """Canonical encoding of the specialization poset.

    Refinement by iterated in/out-degree colors first, then backtracking
    over color-preserving permutations, minimizing the relation matrix.
    Two spaces are homeomorphic iff their canonical forms are equal.
    """
    pts = list(space.points)
    lt = {(x, y) for (x, y) in space.leq if x != y}
    colors = _refine_colors(pts, lt)
    classes = {}
    for x in sorted(pts, key=lambda p: (colors[p], str(p))):
        classes.setdefault(colors[x], []).append(x)
    ordered_classes = [classes[c] for c in sorted(classes)]

    best = None
    n = len(pts)

    def encode(perm):
        # perm: tuple of points in canonical positions 0..n-1
        idx = {p: i for i, p in enumerate(perm)}
        bits = []
        for i in range(n):
            for j in range(n):
                bits.append(1 if (perm[i], perm[j]) in lt else 0)
        return tuple(bits)

    for parts in itertools.product(*[itertools.permutations(c) for c in ordered_classes]):
        perm = tuple(x for part in parts for x in part)
        enc = encode(perm)
        if best is None or enc < best[0]:
            best = (enc, perm)
    return best[0]


def homeomorphic(a, b):
    if len(a.points) != len(b.points):
        return False
    return canonical_form(a) == canonical_form(b)


def space_from_canonical(enc, n, name=""):
    pts = tuple(str(i + 1) for i in range(n))
    leq = {(p, p) for p in pts}
    for i in range(n):
        for j in range(n):
            if enc[i * n + j]:
                leq.add((pts[i], pts[j]))
    return from_poset(pts, leq, name=name)


def enumerate_connected_t0(n):
    """Connected T0-spaces with n points, one per homeomorphism class.

    Posets are generated by repeatedly attaching a new maximal element
    whose strict down-set is an arbitrary down-closed subset, deduplicating
    by canonical form; connectivity is filtered at the end.
    """
    if not 1 <= n <= 6:
        raise TooLarge("point counts above 6 are rejected for cost")
    # posets as (frozenset of points, frozenset of strict pairs)
    layer = {(frozenset(["1"]), frozenset())}
    for k in range(2, n + 1):
        new_label = str(k)
        nxt = {}
        for pts, lt in layer:
            down_sets = _down_closed_subsets(pts, lt)
            for d in down_sets:
                pts2 = pts | {new_label}
                lt2 = set(lt)
                for x in d:
                    lt2.add((x, new_label))
                key = _poset_canon(pts2, frozenset(lt2))
                nxt.setdefault(key, (pts2, frozenset(lt2)))
        layer = set(nxt.values())
    spaces = []
    for pts, lt in layer:
        leq = set(lt) | {(p, p) for p in pts}
        sp = from_poset(sorted(pts), leq)
        if sp.is_connected():
            spaces.append(sp)
    spaces.sort(key=canonical_form)
    out = []
    for i, sp in enumerate(spaces):
        canon = space_from_canonical(canonical_form(sp), n, name=f"T{n}.{i + 1}")
        out.append(canon)
    return out


def _down_closed_subsets(pts, lt):
    pts = sorted(pts)
    out = []
    for bits in itertools.product((0, 1), repeat=len(pts)):
        sub = {p for p, b in zip(pts, bits) if b}
        if all(y in sub for x in sub for y in pts if (y, x) in lt):
            out.append(frozenset(sub))
    return out


def _poset_canon(pts, lt):
    sp = from_poset(sorted(pts), lt | {(p, p) for p in pts})
    return canonical_form(sp)


# ---------------------------------------------------------------------------
# JSON round trips


def space_to_json_str(space):
    return json.dumps(space.to_json(), sort_keys=True, separators=(",", ":"))


def space_from_json(data, validate=True):
    points = [str(p) for p in data["points"]]
    opens = [frozenset(str(p) for p in u) for u in data["opens"]]
    name = data.get("name", "")
    if validate:
        return validate_topology(points, opens, name=name)
    return Space(points, opens, name=name)
