"""Ground-truth invariant of the representing objects, computed
simplicially.

The order complex of the specialization order carries two maps: a cell
(strict chain x0 < ... < xn) has min x0 and max xn.  The value of the
representable at a pair (Y, Z) of locally closed subsets is the compactly
supported cohomology of the set of cells with min in Y and max in Z, with
the Z/2-grading even = H^0 + H^2 + ..., odd = H^1 + H^3 + ... .

For an open piece U of a locally closed V the cell sets split as
cells(Y,V) = cells(Y,U) + cells(Y,V\\U) and the extension-by-zero /
restriction / connecting maps of the resulting short exact sequence of
cochain complexes are the components of the generating transformations.
"""

from __future__ import annotations

from dataclasses import dataclass

from .spaces import set_name
from .zmod import (
    Complex,
    GradedGroup,
    GrHom,
    Group,
    Hom,
    connecting_homs,
    direct_sum_groups,
    from_cols,
    zeros,
)


class OracleError(Exception):
    pass


class InadmissiblePair(OracleError):
    """The requested (V, U) pair is not an open inclusion."""


@dataclass(frozen=True)
class Generator:
    """A six-term transformation attached to U open in V.

    kind 'i': extension, FK(U) -> FK(V), even;
    kind 'r': restriction, FK(V) -> FK(V\\U), even;
    kind 'd': boundary, FK(V\\U) -> FK(U), odd.
    """

    name: str
    kind: str
    big: frozenset
    small: frozenset

    @property
    def degree(self):
        return 1 if self.kind == "d" else 0

    @property
    def src_carrier(self):
        if self.kind == "i":
            return self.small
        if self.kind == "r":
            return self.big
        return self.big - self.small

    @property
    def tgt_carrier(self):
        if self.kind == "i":
            return self.big
        if self.kind == "r":
            return self.big - self.small
        return self.small

    @property
    def src(self):
        return set_name(self.src_carrier)

    @property
    def tgt(self):
        return set_name(self.tgt_carrier)


def generator_name(kind, big, small):
    if kind == "i":
        return f"i_{set_name(small)}^{set_name(big)}"
    if kind == "r":
        return f"r_{set_name(big)}^{set_name(big - small)}"
    return f"d_{set_name(big - small)}^{set_name(small)}"


def make_generator(kind, big, small):
    return Generator(generator_name(kind, big, small), kind, frozenset(big), frozenset(small))


class OrderComplex:
    """All nonempty strict chains of the specialization order."""

    def __init__(self, space):
        self.space = space
        lt = {(x, y) for (x, y) in space.leq if x != y}
        pts = sorted(space.points)
        chains = [(p,) for p in pts]
        frontier = list(chains)
        while frontier:
            nxt = []
            for c in frontier:
                top = c[-1]
                for y in pts:
                    if (top, y) in lt:
                        nxt.append(c + (y,))
            chains.extend(nxt)
            frontier = nxt
        self.chains = sorted(chains, key=lambda c: (len(c), c))
        self.dimension = max(len(c) for c in self.chains) - 1

    def cell_set(self, y_carrier, z_carrier):
        y, z = frozenset(y_carrier), frozenset(z_carrier)
        return tuple(c for c in self.chains if c[0] in y and c[-1] in z)


class CellComplex:
    """Cochain complex with compact supports on a set of cells.

    The differential is the simplicial coboundary restricted to the cell
    set: signs by position of the inserted element.  d.d = 0 is asserted.
    """

    def __init__(self, cells):
        self.cells = frozenset(cells)
        dim = max((len(c) - 1 for c in cells), default=-1)
        self.bases = [sorted(c for c in cells if len(c) - 1 == d) for d in range(dim + 1)]
        self.index = [{c: i for i, c in enumerate(b)} for b in self.bases]
        groups = [Group.free(len(b)) for b in self.bases] or [Group(0)]
        diffs = []
        for d in range(len(self.bases) - 1):
            lo, hi = self.bases[d], self.bases[d + 1]
            mat = zeros(len(hi), len(lo))
            for i, c in enumerate(hi):
                for p in range(len(c)):
                    face = c[:p] + c[p + 1:]
                    j = self.index[d].get(face)
                    if j is not None:
                        mat[i][j] += (-1) ** p
            diffs.append(Hom(groups[d], groups[d + 1], mat, check=False))
        self.cx = Complex(groups, diffs)  # raises if d.d != 0

    @property
    def top_degree(self):
        return len(self.bases) - 1

    def euler(self):
        return sum((-1) ** d * len(b) for d, b in enumerate(self.bases))


class Value:
    """Graded cohomology of a cell set, with per-degree block bookkeeping."""

    def __init__(self, cell_complex, top=None):
        self.cc = cell_complex
        self.top = max(cell_complex.top_degree, 0 if top is None else top)
        self.cohom = [cell_complex.cx.cohomology(i) for i in range(self.top + 2)]
        evens = [self.cohom[i][0] for i in range(0, self.top + 2, 2)]
        odds = [self.cohom[i][0] for i in range(1, self.top + 2, 2)]
        even, _, _ = direct_sum_groups(evens)
        odd, _, _ = direct_sum_groups(odds)
        self.graded = GradedGroup(even, odd)
        # offset of each degree inside its parity block
        self.offsets = []
        pos = {0: 0, 1: 0}
        for i in range(self.top + 2):
            self.offsets.append(pos[i % 2])
            pos[i % 2] += self.cohom[i][0].ngens

    def group(self, i):
        return self.cohom[i][0] if 0 <= i < len(self.cohom) else Group(0)

    def euler(self):
        return self.cc.euler()

    def assemble(self, target, per_degree, degree):
        """GrHom from per-degree maps H^i(self) -> H^{i+degree}(target)."""
        e_rows = target.graded.part(degree % 2).ngens
        o_rows = target.graded.part(1 - degree % 2).ngens
        e_mat = zeros(e_rows, self.graded.even.ngens)
        o_mat = zeros(o_rows, self.graded.odd.ngens)
        for i, h in per_degree.items():
            j = i + degree
            if j >= len(target.cohom):
                assert h.is_zero()
                continue
            roff, coff = target.offsets[j], self.offsets[i]
            acc = e_mat if i % 2 == 0 else o_mat
            for r, row in enumerate(h.mat):
                for c, x in enumerate(row):
                    if x:
                        acc[roff + r][coff + c] += x
        return GrHom.from_parts(self.graded, target.graded, degree, e_mat, o_mat, check=False)


def _chain_map(ca, cb, kind):
    """Inclusion or projection chain maps between cell complexes.

    kind 'inc': cells(a) is a subset of cells(b), extension by zero;
    kind 'pr': cells(b) is a subset of cells(a), restriction.
    Commutation with the differentials is asserted; failure means the
    relevant piece is not open/closed in the ambient cell set.
    """
    top = max(ca.top_degree, cb.top_degree) + 1
    maps = {}
    for d in range(top + 1):
        src = ca.bases[d] if d < len(ca.bases) else []
        tgt = cb.bases[d] if d < len(cb.bases) else []
        mat = zeros(len(tgt), len(src))
        for j, c in enumerate(src):
            if kind == "inc":
                i = cb.index[d].get(c) if d < len(cb.index) else None
            else:
                i = cb.index[d].get(c) if d < len(cb.index) else None
            if i is not None:
                mat[i][j] = 1
        maps[d] = Hom(ca.cx.group(d), cb.cx.group(d), mat, check=False)
    for d in range(top):
        lhs = cb.cx.diff(d).compose(maps[d])
        rhs = maps[d + 1].compose(ca.cx.diff(d))
        if lhs.mat != rhs.mat:
            raise InadmissiblePair("cell inclusion is not a chain map")
    return maps


def induced_value_map(va, vb, chain_maps):
    """Degree-0 GrHom induced on cohomology by a chain map."""
    per = {}
    for i in range(va.top + 2):
        ha, lift_a, _ = va.cohom[i]
        hb, _, express_b = vb.cohom[i]
        cols = []
        for j in range(ha.ngens):
            img = chain_maps[i]([row[j] for row in lift_a])
            cols.append(express_b(img))
        per[i] = Hom(ha, hb, from_cols(cols, hb.ngens), check=False)
    return va.assemble(vb, per, 0)


def connecting_value_map(vc, vu, cu, cy, cc, iotas, pis):
    """Odd GrHom: connecting maps of the cell-set short exact sequence."""
    deltas = connecting_homs(cu.cx, cy.cx, cc.cx, iotas, pis)
    per = {i: d for i, d in deltas.items() if i <= vc.top + 1}
    return vc.assemble(vu, per, 1)


class Representable:
    """Values and generator actions of one representable module.

    ``values`` maps object names to Value instances; ``actions`` maps
    generator names to graded homomorphisms between the value groups.
    ``caveat`` is set when the order complex has dimension >= 3, where the
    identification of the value groups with K-groups is not guaranteed
    integrally.
    """

    def __init__(self, space, ocx, y_carrier, objects, generators):
        self.space = space
        self.y = frozenset(y_carrier)
        self.name = set_name(self.y)
        self.objects = dict(objects)
        self.caveat = (
            f"order complex has dimension {ocx.dimension} >= 3" if ocx.dimension >= 3 else None)
        top = ocx.dimension
        self._cc = {}
        self.values = {}
        for obj, carrier in objects.items():
            cc = self._cell_complex(ocx, carrier)
            self.values[obj] = Value(cc, top=top)
        self.actions = {}
        for g in generators:
            self.actions[g.name] = self._component(ocx, g)

    def _cell_complex(self, ocx, carrier):
        key = frozenset(carrier)
        if key not in self._cc:
            self._cc[key] = CellComplex(ocx.cell_set(self.y, key))
        return self._cc[key]

    def _component(self, ocx, g):
        cu = self._cell_complex(ocx, g.small)
        cy = self._cell_complex(ocx, g.big)
        ccl = self._cell_complex(ocx, g.big - g.small)
        if set(cu.cells) | set(ccl.cells) != set(cy.cells) or set(cu.cells) & set(ccl.cells):
            raise InadmissiblePair(
                f"{g.name}: cells({set_name(g.small)}) does not split cells({set_name(g.big)})")
        if g.kind == "i":
            return induced_value_map(self.values[g.src], self.values[g.tgt],
                                     _chain_map(cu, cy, "inc"))
        if g.kind == "r":
            return induced_value_map(self.values[g.src], self.values[g.tgt],
                                     _chain_map(cy, ccl, "pr"))
        iotas = _chain_map(cu, cy, "inc")
        pis = _chain_map(cy, ccl, "pr")
        return connecting_value_map(self.values[g.src], self.values[g.tgt],
                                    cu, cy, ccl, iotas, pis)

    def euler_consistent(self):
        """rank(even) - rank(odd) equals the signed cell count, per object."""
        bad = []
        for obj, v in self.values.items():
            lhs = v.graded.even.free_rank - v.graded.odd.free_rank
            if lhs != v.euler():
                bad.append((obj, lhs, v.euler()))
        return bad


def fk_of_representable(space, y_carrier, z_carrier, ocx=None):
    """The graded value group at (Y, Z): even/odd compactly supported
    cohomology of the cells with min in Y and max in Z."""
    ocx = ocx or OrderComplex(space)
    cc = CellComplex(ocx.cell_set(y_carrier, z_carrier))
    return Value(cc, top=ocx.dimension)
