"""Modules over the category of natural transformations between the
filtrated K-theory functors of a finite T0-space.

The category is represented faithfully through components on the
representables (Yoneda): an element with source Y and target Z is a formal
integer combination of words in the generating transformations, and two
combinations are identified exactly when their component families agree on
every representable.  Saturation of word families yields the transformation
groups, expressions of arbitrary component families in terms of words, and
the relation list used for module validity checking.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import oracle as _oracle
from .oracle import (
    CellComplex,
    Generator,
    OrderComplex,
    Representable,
    Value,
    induced_value_map,
    make_generator,
    _chain_map,
    connecting_value_map,
)
from .spaces import set_name
from .zmod import (
    GradedGroup,
    GrHom,
    Group,
    Hom,
    direct_sum_groups,
    from_cols,
    graded_block_hom,
    graded_direct_sum,
    graded_is_exact,
    hnf_cols,
    hstack,
    identity,
    kernel_cols,
    lattice_contains,
    lattice_reduce,
    solve,
    zeros,
)


class NTError(Exception):
    pass


class NonTermination(NTError):
    """Saturation failed to stabilize within the word length cap."""


class MissingRefinedData(NTError):
    pass


class HypothesisFails(NTError):
    pass


class CompatibilityFails(NTError):
    """Would contradict the extension theorem; an internal consistency bug."""


class DatasheetMismatch(NTError):
    pass


class ResolutionNotExact(NTError):
    pass


class InexpressibleFamily(NTError):
    """A component family escaped the span of generator words."""


MAX_WORD_LENGTH = 24


# ---------------------------------------------------------------------------
# elements: formal combinations of generator words


class NTElement:
    """Formal Z-combination of composable generator words.

    A word is a tuple of generator names in application order (first
    applied first).  All words of one element share source, target and
    parity.
    """

    def __init__(self, ds, src, tgt, degree, terms):
        self.ds = ds
        self.src = src
        self.tgt = tgt
        self.degree = degree % 2
        self.terms = {w: c for w, c in terms.items() if c != 0}

    @classmethod
    def from_word(cls, ds, word, coeff=1):
        src, tgt, deg = ds.word_signature(word)
        return cls(ds, src, tgt, deg, {tuple(word): coeff})

    @classmethod
    def zero(cls, ds, src, tgt, degree=0):
        return cls(ds, src, tgt, degree, {})

    @classmethod
    def identity(cls, ds, obj):
        return cls(ds, obj, obj, 0, {(): 1})

    def is_structurally_zero(self):
        return not self.terms

    def add(self, other):
        assert (self.src, self.tgt, self.degree) == (other.src, other.tgt, other.degree)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, 0) + c
        return NTElement(self.ds, self.src, self.tgt, self.degree, terms)

    def scale(self, c):
        return NTElement(self.ds, self.src, self.tgt, self.degree,
                         {w: c * x for w, x in self.terms.items()})

    def neg(self):
        return self.scale(-1)

    def compose(self, other):
        """self after other."""
        assert other.tgt == self.src, (other.tgt, self.src)
        terms = {}
        for w1, c1 in other.terms.items():
            for w2, c2 in self.terms.items():
                w = w1 + w2
                terms[w] = terms.get(w, 0) + c1 * c2
        return NTElement(self.ds, other.src, self.tgt,
                         (self.degree + other.degree) % 2, terms)

    def act(self, module):
        """The induced graded map module(src) -> module(tgt)."""
        out = GrHom.zero(module.values[self.src], module.values[self.tgt], self.degree)
        for w, c in self.terms.items():
            h = module.word_action(self.src, w)
            out = out.add(h.scale(c))
        return out

    def family_vector(self):
        return self.ds.element_family(self)

    def __repr__(self):
        if not self.terms:
            return f"0:{self.src}->{self.tgt}"
        bits = []
        for w, c in sorted(self.terms.items()):
            word = "*".join(reversed(w)) if w else f"id_{self.src}"
            bits.append(f"{'' if c == 1 else c}{word}")
        return " + ".join(bits)


# ---------------------------------------------------------------------------
# the datasheet: objects, generators, oracle data, saturation, relations


def six_term_pairs(space):
    """All (Y, U) with Y nonempty locally closed and U a proper nonempty
    open subset of the subspace Y."""
    pairs = []
    for y in sorted(space.locally_closed(), key=lambda s: (len(s), tuple(sorted(s)))):
        if not y:
            continue
        for u in space.subspace_opens(y):
            if u and u != y:
                pairs.append((y, u))
    return pairs


def enumerate_generators(space):
    """Six-term generators whose endpoints are connected and nonempty."""
    gens = {}
    for y, u in six_term_pairs(space):
        c = y - u
        if space.is_connected(u) and space.is_connected(y):
            g = make_generator("i", y, u)
            gens[g.name] = g
        if space.is_connected(y) and space.is_connected(c):
            g = make_generator("r", y, u)
            gens[g.name] = g
        if space.is_connected(c) and space.is_connected(u):
            g = make_generator("d", y, u)
            gens[g.name] = g
    return gens


class Datasheet:
    """Objects, generators and ground-truth component data for one space."""

    def __init__(self, space, core_names=None, name=None):
        self.space = space
        self.name = name or space.name or "space"
        self.ocx = OrderComplex(space)
        star = space.lc_star()
        self.carriers = {set_name(c): c for c in star}
        self.objects = [set_name(c) for c in star]
        self.gens = enumerate_generators(space)
        for g in self.gens.values():
            assert g.src in self.carriers and g.tgt in self.carriers
        self.caveat = None
        self.reps = {}
        gen_list = sorted(self.gens.values(), key=lambda g: g.name)
        for obj in self.objects:
            rep = Representable(space, self.ocx, self.carriers[obj], self.carriers, gen_list)
            self.reps[obj] = rep
            self.caveat = self.caveat or rep.caveat
        self.sign_normalization = self._normalize_signs()
        self.core = sorted(core_names) if core_names else sorted(self.gens)
        unknown = set(self.core) - set(self.gens)
        if unknown:
            raise NTError(f"core generators not in the generator set: {sorted(unknown)}")
        self._out_gens = {}
        for name_ in self.core:
            self._out_gens.setdefault(self.gens[name_].src, []).append(name_)
        self._sat = {}
        self._zero_lat = {}
        self._value_cache = {}
        self._id_coords = {
            obj: self.reps[obj].values[obj].graded.even.generator_lift()
            for obj in self.objects
        }
        self._expr_cache = {}
        self._family_cache = {}
        self.exprs = self._derive_generator_exprs()
        self._pair_table = None
        self.relations = self._build_relations()

    # -- basic signatures ---------------------------------------------------

    def word_signature(self, word):
        if not word:
            raise NTError("empty word needs an object; use NTElement.identity")
        src = self.gens[word[0]].src
        tgt = src
        deg = 0
        for gname in word:
            g = self.gens[gname]
            if g.src != tgt:
                raise NTError(f"word {word} is not composable at {gname}")
            tgt = g.tgt
            deg = (deg + g.degree) % 2
        return src, tgt, deg

    def identity_coords(self, obj):
        return list(self._id_coords[obj])

    # -- oracle families ------------------------------------------------------

    def _normalize_signs(self):
        """Scale each generator family so its first nonzero entry is +1."""
        signs = {}
        for name_, g in sorted(self.gens.items()):
            vec = []
            for obj in self.objects:
                h = self.reps[obj].actions[name_]
                vec.extend(x for row in h.e.mat for x in row)
                vec.extend(x for row in h.o.mat for x in row)
            lead = next((x for x in vec if x != 0), 1)
            s = -1 if lead < 0 else 1
            signs[name_] = s
            if s == -1:
                for obj in self.objects:
                    rep = self.reps[obj]
                    rep.actions[name_] = rep.actions[name_].scale(-1)
        return signs

    def gen_action(self, obj, gname):
        return self.reps[obj].actions[gname]

    def word_family(self, src, word):
        """Per-representable graded maps of a word, as a dict obj -> GrHom."""
        fam = {}
        for obj in self.objects:
            rep = self.reps[obj]
            h = GrHom.identity(rep.values[src].graded)
            for gname in word:
                h = rep.actions[gname].compose(h)
            fam[obj] = h
        return fam

    def flatten_family(self, fam):
        vec = []
        for obj in self.objects:
            h = fam[obj]
            vec.extend(x for row in h.e.mat for x in row)
            vec.extend(x for row in h.o.mat for x in row)
        return vec

    def element_family(self, elem):
        key = (elem.src, elem.tgt, elem.degree, tuple(sorted(elem.terms.items())))
        if key not in self._family_cache:
            vec = None
            for w, c in elem.terms.items():
                fam = self.word_family(elem.src, w)
                v = self.flatten_family(fam)
                v = [c * x for x in v]
                vec = v if vec is None else [a + b for a, b in zip(vec, v)]
            if vec is None:
                vec = [0] * self._family_length(elem.src, elem.tgt, elem.degree)
            self._family_cache[key] = vec
        return self._family_cache[key]

    def _family_length(self, src, tgt, degree):
        total = 0
        for obj in self.objects:
            s = self.reps[obj].values[src].graded
            t = self.reps[obj].values[tgt].graded
            total += t.part(degree).ngens * s.even.ngens
            total += t.part(1 - degree).ngens * s.odd.ngens
        return total

    def zero_lattice(self, src, tgt, degree):
        """Families that are zero modulo target relations, as HNF columns."""
        key = (src, tgt, degree)
        if key not in self._zero_lat:
            cols = []
            offset = 0
            n = self._family_length(src, tgt, degree)
            for obj in self.objects:
                s = self.reps[obj].values[src].graded
                t = self.reps[obj].values[tgt].graded
                for p in (0, 1):
                    tgrp = t.part((p + degree) % 2)
                    scount = s.part(p).ngens
                    block = tgrp.ngens * scount
                    for j in range(scount):
                        for rc in range(len(t.part((p + degree) % 2).rels[0]) if tgrp.rels and tgrp.rels[0] else 0):
                            vec = [0] * n
                            for i in range(tgrp.ngens):
                                vec[offset + i * scount + j] = tgrp.rels[i][rc]
                            cols.append(vec)
                    offset += block
            self._zero_lat[key] = hnf_cols(from_cols(cols, n)) if cols else []
        return self._zero_lat[key]

    # -- saturation -----------------------------------------------------------

    def saturate(self, src):
        """BFS over core generator words out of ``src``.

        Only words whose family vector enlarges the current span are kept:
        composition is linear, so extending the retained basis words covers
        all products.
        """
        if src in self._sat:
            return self._sat[src]
        basis = {}  # (tgt, parity) -> list of (word, vector)
        lattices = {}

        def lat(tgt, parity):
            key = (tgt, parity)
            if key not in lattices:
                z = self.zero_lattice(src, tgt, parity)
                lattices[key] = [row[:] for row in z] if z else []
            return lattices[key]

        def try_add(word, fam, tgt, parity):
            vec = self.flatten_family(fam)
            if not any(vec):
                return False
            cur = lat(tgt, parity)
            if cur and lattice_contains(cur, vec):
                return False
            if cur:
                merged = hnf_cols(hstack(cur, from_cols([vec], len(vec))))
            else:
                merged = hnf_cols(from_cols([vec], len(vec)))
            lattices[(tgt, parity)] = merged
            basis.setdefault((tgt, parity), []).append((word, vec, fam))
            return True

        ident = {obj: GrHom.identity(self.reps[obj].values[src].graded) for obj in self.objects}
        frontier = [((), ident, src, 0)]
        try_add((), ident, src, 0)
        length = 0
        while frontier:
            length += 1
            if length > MAX_WORD_LENGTH:
                raise NonTermination(
                    f"saturation from {src} exceeded word length {MAX_WORD_LENGTH}; "
                    f"basis sizes: { {k: len(v) for k, v in basis.items()} }")
            nxt = []
            for word, fam, tgt, parity in frontier:
                for gname in self._out_gens.get(tgt, []):
                    g = self.gens[gname]
                    fam2 = {obj: self.reps[obj].actions[gname].compose(fam[obj])
                            for obj in self.objects}
                    word2 = word + (gname,)
                    parity2 = (parity + g.degree) % 2
                    if try_add(word2, fam2, g.tgt, parity2):
                        nxt.append((word2, fam2, g.tgt, parity2))
            frontier = nxt
        self._sat[src] = {"basis": basis, "lattices": lattices}
        return self._sat[src]

    def nt_group(self, src, tgt):
        """The transformation group from src to tgt.

        Returns a dict with, per parity: invariants of the group, the basis
        elements as NTElements, and (for infinite cyclic groups) a chosen
        generator element.
        """
        sat = self.saturate(src)
        out = {}
        for parity in (0, 1):
            entries = sat["basis"].get((tgt, parity), [])
            zero = self.zero_lattice(src, tgt, parity)
            n = self._family_length(src, tgt, parity)
            span = from_cols([vec for _, vec, _ in entries], n)
            quotient = _lattice_quotient(span, zero, n)
            elems = [NTElement.from_word(self, w) if w else NTElement.identity(self, src)
                     for w, _, _ in entries]
            gen_elem = None
            if quotient == (1, ()):
                gen_elem = self._cyclic_generator(src, tgt, parity, entries, zero, n)
            out[parity] = {"invariants": quotient, "basis": elems, "generator": gen_elem}
        return out

    def _cyclic_generator(self, src, tgt, parity, entries, zero, n):
        span_cols = [vec for _, vec, _ in entries]
        lat = hnf_cols(hstack(from_cols(span_cols, n), [row[:] for row in zero] if zero else zeros(n, 0)))
        # lattice basis column generating the quotient modulo zero lattice
        target = None
        for j in range(len(lat[0]) if lat and lat[0] else 0):
            c = [row[j] for row in lat]
            if not (zero and lattice_contains(zero, c)):
                target = c
                break
        if target is None:
            return None
        coeffs = solve(hstack(from_cols(span_cols, n), zero if zero else zeros(n, 0)), target)
        if coeffs is None:
            return None
        elem = NTElement.zero(self, src, tgt, parity)
        for (w, _, _), c in zip(entries, coeffs[: len(entries)]):
            if c:
                word_elem = NTElement.from_word(self, w) if w else NTElement.identity(self, src)
                elem = elem.add(word_elem.scale(c))
        return elem

    def express_family(self, src, tgt, parity, vec):
        """Write a flattened family as a combination of basis words."""
        if not any(vec):
            return NTElement.zero(self, src, tgt, parity)
        sat = self.saturate(src)
        entries = sat["basis"].get((tgt, parity), [])
        zero = self.zero_lattice(src, tgt, parity)
        n = len(vec)
        span = from_cols([v for _, v, _ in entries], n)
        coeffs = solve(hstack(span, zero if zero else zeros(n, 0)), vec)
        if coeffs is None:
            raise InexpressibleFamily(
                f"family {src}->{tgt} parity {parity} is outside the word span")
        elem = NTElement.zero(self, src, tgt, parity)
        for (w, _, _), c in zip(entries, coeffs[: len(entries)]):
            if c:
                we = NTElement.from_word(self, w) if w else NTElement.identity(self, src)
                elem = elem.add(we.scale(c))
        return elem

    def _derive_generator_exprs(self):
        exprs = {}
        for name_, g in sorted(self.gens.items()):
            if name_ in self.core:
                exprs[name_] = NTElement.from_word(self, (name_,))
                continue
            fam = {obj: self.reps[obj].actions[name_] for obj in self.objects}
            vec = self.flatten_family(fam)
            exprs[name_] = self.express_family(g.src, g.tgt, g.degree, vec)
        return exprs

    # -- oracle values for auxiliary carriers ----------------------------------

    def aux_value(self, w_obj, carrier):
        key = (w_obj, frozenset(carrier))
        if key not in self._value_cache:
            rep = self.reps[w_obj]
            cc = rep._cell_complex(self.ocx, carrier)
            self._value_cache[key] = Value(cc, top=self.ocx.dimension)
        return self._value_cache[key]

    def block_family(self, kind, yb, ub, src_piece, tgt_piece):
        """Component family of one block of a six-term map.

        yb: connected component of Y, ub = U  intersected with yb;
        src_piece/tgt_piece: connected components of the relevant sets.
        """
        fams = {}
        cb = yb - ub
        for obj in self.objects:
            rep = self.reps[obj]
            if kind == "i":
                cu = rep._cell_complex(self.ocx, src_piece)
                cy = rep._cell_complex(self.ocx, yb)
                v_src = self.aux_value(obj, src_piece)
                v_tgt = self.aux_value(obj, yb)
                fams[obj] = induced_value_map(v_src, v_tgt, _chain_map(cu, cy, "inc"))
            elif kind == "r":
                cy = rep._cell_complex(self.ocx, yb)
                cc = rep._cell_complex(self.ocx, tgt_piece)
                v_src = self.aux_value(obj, yb)
                v_tgt = self.aux_value(obj, tgt_piece)
                fams[obj] = induced_value_map(v_src, v_tgt, _chain_map(cy, cc, "pr"))
            else:
                cu = rep._cell_complex(self.ocx, ub)
                cy = rep._cell_complex(self.ocx, yb)
                cc = rep._cell_complex(self.ocx, cb)
                vu = self.aux_value(obj, ub)
                vc = self.aux_value(obj, cb)
                iotas = _chain_map(cu, cy, "inc")
                pis = _chain_map(cy, cc, "pr")
                delta = connecting_value_map(vc, vu, cu, cy, cc, iotas, pis)
                pre = induced_value_map(self.aux_value(obj, src_piece), vc,
                                        _chain_map(rep._cell_complex(self.ocx, src_piece), cc, "inc"))
                post = induced_value_map(vu, self.aux_value(obj, tgt_piece),
                                         _chain_map(cu, rep._cell_complex(self.ocx, tgt_piece), "pr"))
                fams[obj] = post.compose(delta).compose(pre)
        return fams

    def derived_block(self, kind, yb, ub, src_piece, tgt_piece):
        """NTElement for one connected block of a six-term map, or None."""
        key = (kind, frozenset(yb), frozenset(ub), frozenset(src_piece), frozenset(tgt_piece))
        if key not in self._expr_cache:
            src_obj = set_name(src_piece)
            tgt_obj = set_name(tgt_piece)
            parity = 1 if kind == "d" else 0
            if src_piece == tgt_piece and kind != "d" and src_piece == yb:
                self._expr_cache[key] = NTElement.identity(self, src_obj)
            else:
                gname = None
                if kind == "i" and src_piece == ub and tgt_piece == yb:
                    gname = _oracle.generator_name("i", yb, ub)
                elif kind == "r" and src_piece == yb and tgt_piece == yb - ub:
                    gname = _oracle.generator_name("r", yb, ub)
                elif kind == "d" and src_piece == yb - ub and tgt_piece == ub:
                    gname = _oracle.generator_name("d", yb, ub)
                if gname is not None and gname in self.gens:
                    self._expr_cache[key] = self.exprs[gname]
                else:
                    fam = self.block_family(kind, yb, ub, src_piece, tgt_piece)
                    vec = self.flatten_family(fam)
                    elem = self.express_family(src_obj, tgt_obj, parity, vec)
                    self._expr_cache[key] = None if elem.is_structurally_zero() else elem
        return self._expr_cache[key]

    # -- six-term table ---------------------------------------------------------

    def pair_table(self):
        """Blockwise six-term data for every admissible (Y, U) pair."""
        if self._pair_table is not None:
            return self._pair_table
        table = []
        for y, u in six_term_pairs(self.space):
            c = y - u
            u_comps = self.space.components(u)
            c_comps = self.space.components(c)
            y_comps = self.space.components(y)

            def block(kind, src_piece, tgt_piece):
                yb = next(b for b in y_comps if src_piece <= b or tgt_piece <= b)
                if not (src_piece <= yb and tgt_piece <= yb):
                    return None
                return self.derived_block(kind, yb, u & yb, src_piece, tgt_piece)

            i_blocks = [[block("i", ua, yb) if ua <= yb else None for ua in u_comps]
                        for yb in y_comps]
            r_blocks = [[block("r", yb, cd) if cd <= yb else None for yb in y_comps]
                        for cd in c_comps]
            d_blocks = [[block("d", cd, ua) for cd in c_comps] for ua in u_comps]
            table.append({
                "y": y, "u": u,
                "u_comps": u_comps, "c_comps": c_comps, "y_comps": y_comps,
                "i": i_blocks, "r": r_blocks, "d": d_blocks,
            })
        self._pair_table = table
        return table

    # -- relations -----------------------------------------------------------

    def _build_relations(self):
        rels = []
        # kernel of all core words of length <= 2, per signature
        groups = {}
        for gname in self.core:
            g = self.gens[gname]
            groups.setdefault((g.src, g.tgt, g.degree), []).append((gname,))
        for g1 in self.core:
            for g2 in self.core:
                a, b = self.gens[g1], self.gens[g2]
                if a.tgt == b.src:
                    groups.setdefault((a.src, b.tgt, (a.degree + b.degree) % 2), []).append((g1, g2))
        for (src, tgt, parity), words in sorted(groups.items()):
            vecs = [self.flatten_family(self.word_family(src, w)) for w in words]
            n = self._family_length(src, tgt, parity)
            zero = self.zero_lattice(src, tgt, parity)
            mat = hstack(from_cols(vecs, n), zero if zero else zeros(n, 0))
            ker = kernel_cols(mat) if mat and mat[0] else []
            for j in range(len(ker[0]) if ker and ker[0] else 0):
                coeffs = [ker[i][j] for i in range(len(words))]
                if not any(coeffs):
                    continue
                elem = NTElement.zero(self, src, tgt, parity)
                for w, cf in zip(words, coeffs):
                    if cf:
                        elem = elem.add(NTElement.from_word(self, w).scale(cf))
                rels.append(elem)
        return rels


def _lattice_quotient(span, zero, n):
    """Invariants of (span + zero)/zero inside Z^n."""
    total = hnf_cols(hstack(span, zero if zero else zeros(n, 0)))
    tcols = [ [row[j] for row in total] for j in range(len(total[0]) if total and total[0] else 0) ]
    if not tcols:
        return (0, ())
    exprs = []
    zcols = [ [row[j] for row in zero] for j in range(len(zero[0]) if zero and zero[0] else 0) ]
    for zc in zcols:
        e = solve(total, zc)
        assert e is not None
        exprs.append(e)
    g = Group(len(tcols), from_cols(exprs, len(tcols)))
    return g.invariants


_DATASHEETS = {}


def get_datasheet(space, core_names=None, name=None):
    key = (space.points, space.opens, tuple(core_names) if core_names else None)
    if key not in _DATASHEETS:
        _DATASHEETS[key] = Datasheet(space, core_names=core_names, name=name)
    return _DATASHEETS[key]


# ---------------------------------------------------------------------------
# modules and module homomorphisms


class NTModule:
    """Assignment of graded groups to objects plus generator actions."""

    def __init__(self, ds, values, actions, label=""):
        self.ds = ds
        self.values = values
        self.actions = actions
        self.label = label
        self._word_cache = {}

    @classmethod
    def from_core_actions(cls, ds, values, core_actions, label=""):
        mod = cls(ds, values, dict(core_actions), label=label)
        for gname, g in ds.gens.items():
            if gname not in mod.actions:
                mod.actions[gname] = ds.exprs[gname].act(mod)
        return mod

    @classmethod
    def zero(cls, ds):
        values = {obj: GradedGroup.zero() for obj in ds.objects}
        actions = {gname: GrHom.zero(values[g.src], values[g.tgt], g.degree)
                   for gname, g in ds.gens.items()}
        return cls(ds, values, actions, label="0")

    def word_action(self, src, word):
        key = (src, word)
        if key not in self._word_cache:
            h = GrHom.identity(self.values[src])
            for gname in word:
                h = self.actions[gname].compose(h)
            self._word_cache[key] = h
        return self._word_cache[key]

    def validate(self):
        """Degree bookkeeping plus every datasheet relation acting as zero."""
        bad = []
        for gname, g in self.ds.gens.items():
            h = self.actions.get(gname)
            if h is None:
                bad.append(f"missing action for {gname}")
                continue
            if h.degree != g.degree:
                bad.append(f"{gname}: action degree {h.degree} != {g.degree}")
        for idx, rel in enumerate(self.ds.relations):
            if not rel.act(self).is_zero():
                bad.append(f"relation {idx} ({rel!r}) acts nontrivially")
        return bad

    def shift(self):
        values = {o: v.shift() for o, v in self.values.items()}
        actions = {n: h.shift() for n, h in self.actions.items()}
        return NTModule(self.ds, values, actions, label=f"{self.label}[1]")

    def tensor_zk(self, k):
        values = {o: v.tensor_zk(k) for o, v in self.values.items()}
        actions = {n: h.tensor_zk(k) for n, h in self.actions.items()}
        return NTModule(self.ds, values, actions, label=f"{self.label}@Z/{k}")

    def value_invariants(self):
        return {o: (v.even.invariants, v.odd.invariants) for o, v in self.values.items()}

    def __repr__(self):
        return f"NTModule({self.label or 'unnamed'} over {self.ds.name})"


def rep_module(ds, obj):
    """The representable at ``obj`` as a module, with Yoneda payload."""
    rep = ds.reps[obj]
    values = {o: rep.values[o].graded for o in ds.objects}
    actions = {n: rep.actions[n] for n in ds.gens}
    mod = NTModule(ds, values, actions, label=f"P_{obj}")
    mod.rep_obj = obj
    return mod


def direct_sum_modules(mods):
    ds = mods[0].ds
    values = {}
    incs = {o: [] for o in ds.objects}
    prs = {o: [] for o in ds.objects}
    for o in ds.objects:
        parts = [m.values[o] for m in mods]
        total, inc, pr = graded_direct_sum(parts)
        values[o] = total
        for (ie, io), (pe, po), part in zip(inc, pr, parts):
            incs[o].append(GrHom.from_parts(part, total, 0, ie, io, check=False))
            prs[o].append(GrHom.from_parts(total, part, 0, pe, po, check=False))
    actions = {}
    for gname, g in ds.gens.items():
        h = GrHom.zero(values[g.src], values[g.tgt], g.degree)
        for idx, m in enumerate(mods):
            h = h.add(incs[g.tgt][idx].compose(m.actions[gname]).compose(prs[g.src][idx]))
        actions[gname] = h
    total_mod = NTModule(ds, values, actions,
                         label=" + ".join(m.label or "?" for m in mods))
    inc_homs = [NTModuleHom(mods[i], total_mod, {o: incs[o][i] for o in ds.objects})
                for i in range(len(mods))]
    pr_homs = [NTModuleHom(total_mod, mods[i], {o: prs[o][i] for o in ds.objects})
               for i in range(len(mods))]
    return total_mod, inc_homs, pr_homs


class NTModuleHom:
    """Object-indexed family of degree-0 graded maps."""

    def __init__(self, src, tgt, comps):
        self.src = src
        self.tgt = tgt
        self.comps = comps

    @classmethod
    def zero(cls, src, tgt):
        return cls(src, tgt, {o: GrHom.zero(src.values[o], tgt.values[o], 0)
                              for o in src.ds.objects})

    @classmethod
    def identity(cls, m):
        return cls(m, m, {o: GrHom.identity(m.values[o]) for o in m.ds.objects})

    def naturality_violations(self):
        bad = []
        for gname, g in self.src.ds.gens.items():
            lhs = self.comps[g.tgt].compose(self.src.actions[gname])
            rhs = self.tgt.actions[gname].compose(self.comps[g.src])
            diff = lhs.add(rhs.neg())
            if not diff.is_zero():
                bad.append(gname)
        return bad

    def compose(self, other):
        return NTModuleHom(other.src, self.tgt,
                           {o: self.comps[o].compose(other.comps[o])
                            for o in self.src.ds.objects})

    def add(self, other):
        return NTModuleHom(self.src, self.tgt,
                           {o: self.comps[o].add(other.comps[o]) for o in self.src.ds.objects})

    def neg(self):
        return NTModuleHom(self.src, self.tgt, {o: h.neg() for o, h in self.comps.items()})

    def scale(self, c):
        return NTModuleHom(self.src, self.tgt, {o: h.scale(c) for o, h in self.comps.items()})

    def is_zero(self):
        return all(h.is_zero() for h in self.comps.values())

    def is_iso(self):
        return all(h.is_iso() for h in self.comps.values())

    def shift(self):
        return NTModuleHom(self.src.shift(), self.tgt.shift(),
                           {o: h.shift() for o, h in self.comps.items()})

    def tensor_zk(self, k):
        return NTModuleHom(self.src.tensor_zk(k), self.tgt.tensor_zk(k),
                           {o: h.tensor_zk(k) for o, h in self.comps.items()})

    def kernel(self):
        ds = self.src.ds
        kvals, kincs = {}, {}
        for o in ds.objects:
            h = self.comps[o]
            ke, ie = h.e.kernel()
            ko, io = h.o.kernel()
            kvals[o] = GradedGroup(ke, ko)
            kincs[o] = GrHom(kvals[o], self.src.values[o], 0, ie, io)
        actions = {}
        for gname, g in ds.gens.items():
            act = self.src.actions[gname]
            cols_e, cols_o = [], []
            inc_s, inc_t = kincs[g.src], kincs[g.tgt]
            te = inc_t.component(0 if g.degree == 0 else 1)
            to = inc_t.component(1 if g.degree == 0 else 0)
            for j in range(kvals[g.src].even.ngens):
                v = act.e(inc_s.e([1 if i == j else 0 for i in range(kvals[g.src].even.ngens)]))
                pre = te.preimage(v)
                if pre is None:
                    raise NTError(f"kernel not preserved by {gname}")
                cols_e.append(pre)
            for j in range(kvals[g.src].odd.ngens):
                v = act.o(inc_s.o([1 if i == j else 0 for i in range(kvals[g.src].odd.ngens)]))
                pre = to.preimage(v)
                if pre is None:
                    raise NTError(f"kernel not preserved by {gname}")
                cols_o.append(pre)
            tgt_e = kvals[g.tgt].part(g.degree)
            tgt_o = kvals[g.tgt].part(1 - g.degree)
            actions[gname] = GrHom.from_parts(
                kvals[g.src], kvals[g.tgt], g.degree,
                from_cols(cols_e, tgt_e.ngens), from_cols(cols_o, tgt_o.ngens), check=False)
        kmod = NTModule(ds, kvals, actions, label=f"ker({self.src.label}->{self.tgt.label})")
        incl = NTModuleHom(kmod, self.src, kincs)
        return kmod, incl

    def cokernel(self):
        ds = self.src.ds
        cvals, cprs = {}, {}
        for o in ds.objects:
            h = self.comps[o]
            ce, pe = h.e.cokernel()
            co, po = h.o.cokernel()
            cvals[o] = GradedGroup(ce, co)
            cprs[o] = GrHom(self.tgt.values[o], cvals[o], 0, pe, po)
        actions = {}
        for gname, g in ds.gens.items():
            act = self.tgt.actions[gname]
            # cokernel generators are target generators: reuse the matrices
            e_mat = act.e.mat
            o_mat = act.o.mat
            actions[gname] = GrHom.from_parts(cvals[g.src], cvals[g.tgt], g.degree,
                                              e_mat, o_mat, check=True)
        cmod = NTModule(ds, cvals, actions, label=f"cok({self.src.label}->{self.tgt.label})")
        proj = NTModuleHom(self.tgt, cmod, cprs)
        return cmod, proj


def block_module_hom(src_mods, tgt_mods, blocks):
    """Module hom between direct sums from a grid of NTModuleHoms/None."""
    src, _, prs = direct_sum_modules(src_mods)
    tgt, incs, _ = direct_sum_modules(tgt_mods)
    out = NTModuleHom.zero(src, tgt)
    for i, row in enumerate(blocks):
        for j, b in enumerate(row):
            if b is None:
                continue
            out = out.add(incs[i].compose(b).compose(prs[j]))
    return out, src, tgt


# ---------------------------------------------------------------------------
# Yoneda: homs out of representables


def hom_from_element(ds, src_obj, target_module, x_vec, x_parity):
    """The module hom P_src -> M sending the free generator to x."""
    sat = ds.saturate(src_obj)
    comps = {}
    for w_obj in ds.objects:
        val = ds.reps[src_obj].values[w_obj].graded
        tgt_val = target_module.values[w_obj]
        mats = {}
        for p in (0, 1):
            part = val.part(p)
            entries = sat["basis"].get((w_obj, p), [])
            id_images = []
            for word, _, fam in entries:
                img = fam[src_obj].component(0)(ds.identity_coords(src_obj))
                id_images.append(img)
            tgt_part = tgt_val.part((p + x_parity) % 2)
            cols = []
            for j in range(part.ngens):
                b = [1 if i == j else 0 for i in range(part.ngens)]
                span = hstack(from_cols(id_images, part.ngens), part.rels)
                coeffs = solve(span, b)
                if coeffs is None:
                    raise InexpressibleFamily(
                        f"basis of value at {w_obj} not in the word span from {src_obj}")
                acc = [0] * tgt_part.ngens
                for (word, _, _), cf in zip(entries, coeffs[: len(entries)]):
                    if cf:
                        comp = target_module.word_action(src_obj, word).component(x_parity)
                        acc = [a + cf * c for a, c in zip(acc, comp(x_vec))]
                cols.append(tgt_part.reduce(acc))
            mats[p] = from_cols(cols, tgt_part.ngens)
        comps[w_obj] = GrHom.from_parts(val, tgt_val, x_parity, mats[0], mats[1], check=False)
    return comps


def element_to_rep_hom(ds, elem):
    """Module hom P_{elem.tgt} -> P_{elem.src} corresponding to ``elem``."""
    src_rep = rep_module(ds, elem.src)
    x_hom = elem.act(src_rep)
    x_vec = x_hom.component(0)(ds.identity_coords(elem.src))
    comps = hom_from_element(ds, elem.tgt, src_rep, x_vec, elem.degree)
    return comps  # dict obj -> GrHom of degree elem.degree


# ---------------------------------------------------------------------------
# checkers


def check_six_term_exact(module):
    """Exactness of every six-term cycle; returns a report of failures."""
    ds = module.ds
    failures = []
    for entry in ds.pair_table():
        u_parts = [module.values[set_name(a)] for a in entry["u_comps"]]
        y_parts = [module.values[set_name(b)] for b in entry["y_comps"]]
        c_parts = [module.values[set_name(d)] for d in entry["c_comps"]]

        def act(block):
            return None if block is None else block.act(module)

        i_map, usum, ysum = graded_block_hom(
            u_parts, y_parts, [[act(b) for b in row] for row in entry["i"]], 0)
        r_map, _, csum = graded_block_hom(
            y_parts, c_parts, [[act(b) for b in row] for row in entry["r"]], 0)
        d_map, _, _ = graded_block_hom(
            c_parts, u_parts, [[act(b) for b in row] for row in entry["d"]], 1)
        spots = [("i,r", i_map, r_map), ("r,d", r_map, d_map), ("d,i", d_map, i_map)]
        for tag, f, g in spots:
            if not graded_is_exact(f, g):
                failures.append((set_name(entry["y"]), set_name(entry["u"]), tag))
    return failures


def rr0_check(module):
    """All boundary generators act as zero on the even parts."""
    failing = []
    for gname, g in module.ds.gens.items():
        if g.kind != "d":
            continue
        if not module.actions[gname].e.is_zero():
            failing.append(gname)
    return (not failing), failing


def preserves_unit(hom, u_src, u_tgt):
    full = set_name(frozenset(hom.src.ds.space.points))
    img = hom.comps[full].e(u_src)
    return hom.tgt.values[full].even.el_eq(img, u_tgt)


# ---------------------------------------------------------------------------
# module isomorphism search


def _iso_candidates(a, b, bound):
    """Degree-0 graded isos a -> b with entries bounded, as GrHoms."""
    def part_candidates(ga, gb):
        if ga.invariants != gb.invariants:
            return []
        n, m = ga.ngens, gb.ngens
        if n == 0:
            return [Hom.zero(ga, gb)]
        rng = range(-bound, bound + 1)
        out = []
        for entries in itertools.product(rng, repeat=n * m):
            mat = [list(entries[i * n:(i + 1) * n]) for i in range(m)]
            try:
                h = Hom(ga, gb, mat)
            except Exception:
                continue
            if h.is_iso():
                out.append(h)
        return out

    ev = part_candidates(a.even, b.even)
    od = part_candidates(a.odd, b.odd)
    return [GrHom(a, b, 0, e, o) for e in ev for o in od]


def sum_map_is_iso(module, elem_names, tgt_obj):
    """Whether the stacked actions  +(M(src_i)) -> M(tgt)  are an iso."""
    ds = module.ds
    elems = [ds.exprs[n] for n in elem_names]
    parts = [module.values[e.src] for e in elems]
    blocks = [[e.act(module) for e in elems]]
    h, _, _ = graded_block_hom(parts, [module.values[tgt_obj]], blocks, 0)
    return h.is_iso()


def x1_quotient_data(ds):
    """The canonical quotient over the four-point wedge space: the cokernel
    of  P_full -> P_124 + P_134 + P_234  induced by the three extensions
    into the full space.  Cached on the datasheet."""
    if getattr(ds, "_x1q", None) is None:
        full = "1234"
        names = ("124", "134", "234")
        pfull = rep_module(ds, full)
        targets = [rep_module(ds, o) for o in names]
        homs = []
        for t, o in zip(targets, names):
            e = NTElement.from_word(ds, (f"i_{o}^{full}",))
            homs.append(NTModuleHom(pfull, t, element_to_rep_hom(ds, e)))
        j, _, big = block_module_hom([pfull], targets, [[h] for h in homs])
        coker, proj = j.cokernel()
        coker.label = "FK(R12344)"
        ds._x1q = {"j": j, "coker": coker, "proj": proj, "targets": targets,
                   "target_names": names, "sum_module": big}
    return ds._x1q


@dataclass
class CriterionVerdict:
    comparable: bool
    sum_map_iso: bool
    verdict: bool
    witness: object = None
    detail: str = ""


def recognition_criterion(module):
    """Recognize the canonical quotient module over the wedge space.

    True iff the objectwise groups match the quotient's and the map
    FK_124 + FK_134 -> FK_1234 assembled from the extension actions is an
    isomorphism.  On success an explicit module isomorphism from the
    quotient is produced by the generator-adjustment procedure: pick
    generators g_Y, solve i(g_234) = a i(g_124) + b i(g_134), rescale by
    -a and -b.
    """
    ds = module.ds
    q = x1_quotient_data(ds)
    ref = q["coker"]
    for o in ds.objects:
        if not module.values[o].iso(ref.values[o]):
            return CriterionVerdict(False, False, False,
                                    detail=f"group mismatch at {o}")
    if not sum_map_is_iso(module, ("i_124^1234", "i_134^1234"), "1234"):
        return CriterionVerdict(True, False, False,
                                detail="sum of the two extensions is not an isomorphism")
    gens = {}
    for o in ("124", "134", "234"):
        gens[o] = module.values[o].even.generator_lift()
    acts = {o: module.actions[f"i_{o}^1234"].e for o in ("124", "134", "234")}
    u1 = acts["124"](gens["124"])
    u2 = acts["134"](gens["134"])
    v = acts["234"](gens["234"])
    big = module.values["1234"].even
    coeffs = solve(hstack(from_cols([u1, u2], big.ngens), big.rels), v)
    if coeffs is None:
        raise NTError("generator adjustment system has no solution")
    a, b = coeffs[0], coeffs[1]
    if a not in (-1, 1) or b not in (-1, 1):
        raise NTError(f"adjustment coefficients {a}, {b} are not units")
    gens["124"] = [-a * x for x in gens["124"]]
    gens["134"] = [-b * x for x in gens["134"]]
    hom_blocks = []
    for o in ("124", "134", "234"):
        comps = hom_from_element(ds, o, module, gens[o], 0)
        hom_blocks.append(NTModuleHom(rep_module(ds, o), module, comps))
    fsum, big_mod, _ = block_module_hom([rep_module(ds, o) for o in ("124", "134", "234")],
                                        [module], [hom_blocks])
    if not fsum.compose(q["j"]).is_zero():
        raise NTError("candidate map does not kill the image of j")
    comps = {}
    for o in ds.objects:
        h = fsum.comps[o]
        comps[o] = GrHom.from_parts(ref.values[o], module.values[o], 0,
                                    h.e.mat, h.o.mat, check=True)
    witness = NTModuleHom(ref, module, comps)
    if witness.naturality_violations() or not witness.is_iso():
        raise NTError("induced map on the quotient is not an isomorphism")
    return CriterionVerdict(True, True, True, witness=witness,
                            detail=f"adjustment coefficients a={a}, b={b}")


def module_isomorphic(ma, mb, bound=2):
    """Search for an isomorphism of modules; returns (flag, witness)."""
    ds = ma.ds
    for o in ds.objects:
        if not ma.values[o].iso(mb.values[o]):
            return False, None
    objs = sorted(ds.objects, key=lambda o: (
        ma.values[o].even.ngens + ma.values[o].odd.ngens, o))
    cand = {o: _iso_candidates(ma.values[o], mb.values[o], bound) for o in objs}

    assignment = {}

    def consistent(o):
        for gname, g in ds.gens.items():
            if g.src in assignment and g.tgt in assignment:
                lhs = assignment[g.tgt].compose(ma.actions[gname])
                rhs = mb.actions[gname].compose(assignment[g.src])
                if not lhs.add(rhs.neg()).is_zero():
                    return False
        return True

    def backtrack(i):
        if i == len(objs):
            return True
        o = objs[i]
        for h in cand[o]:
            assignment[o] = h
            if consistent(o) and backtrack(i + 1):
                return True
            del assignment[o]
        return False

    if backtrack(0):
        return True, NTModuleHom(ma, mb, dict(assignment))
    return False, None
