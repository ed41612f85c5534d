"""Per-space catalog: distinguished generating sets, refined descriptors,
and the explicitly printed module fixtures.

The four-point wedge space and the height-two space ship with the
indecomposable generating set of their structure diagrams, so that module
fixtures only need actions for those arrows; everything else is derived.
The two opposite spaces reuse the mirrored refined descriptors.
"""

from __future__ import annotations

from . import fixtures
from .ntmod import NTModule, get_datasheet
from .refined import RefinedDescriptor
from .zmod import GradedGroup, GrHom, Group, Hom

X1_CORE = (
    "i_4^14", "i_4^24", "i_4^34",
    "i_14^124", "i_14^134", "i_24^124", "i_24^234", "i_34^134", "i_34^234",
    "i_124^1234", "i_134^1234", "i_234^1234",
    "r_1234^1", "r_1234^2", "r_1234^3",
    "d_1^4", "d_2^4", "d_3^4",
)

X2_CORE = (
    "i_4^34",
    "i_34^134", "i_34^234", "r_34^3",
    "i_3^13", "i_3^23",
    "i_134^1234", "i_234^1234", "r_134^13", "r_234^23",
    "i_13^123", "i_23^123", "r_1234^123",
    "r_123^1", "r_123^2", "d_123^4",
    "d_1^34", "d_2^34",
)

CORE_SETS = {"X1": X1_CORE, "X2": X2_CORE}

REFINED_SPACES = ("X1", "X2", "X4", "X5")


def datasheet(name):
    space = fixtures.load_space(name)
    return get_datasheet(space, core_names=CORE_SETS.get(name), name=name)


def _x1_descriptor():
    odd_in = tuple(
        (mp - 1, (f"r_1234^{dr}", f"d_{dr}^4", f"i_4^{mp}4"))
        for mp in (1, 2, 3) for dr in (1, 2, 3) if dr != mp)
    t_objs = ("124", "134", "234")
    odd_out = []
    for u, t in enumerate(t_objs):
        for m in t[:-1]:
            odd_out.append((u, (f"r_{t}^{m}", f"d_{m}^4")))
    return RefinedDescriptor(
        name="X1", rho="12344",
        s_objs=("14", "24", "34"), t_objs=t_objs,
        ker_anchor="1234",
        ker_words=(("i_124^1234",), ("i_134^1234",), ("i_234^1234",)),
        cok_anchor="4",
        cok_words=(("i_4^14",), ("i_4^24",), ("i_4^34",)),
        c_words={
            (0, 0): (1, ("i_14^124",)), (0, 1): (-1, ("i_24^124",)),
            (1, 0): (-1, ("i_14^134",)), (1, 2): (1, ("i_34^134",)),
            (2, 1): (1, ("i_24^234",)), (2, 2): (-1, ("i_34^234",)),
        },
        hyp_kind="delta",
        hyp_words={1: ("d_1^4",), 2: ("d_2^4",), 3: ("d_3^4",)},
        odd_in=odd_in, odd_out=tuple(odd_out),
    )


def _x2_descriptor():
    return RefinedDescriptor(
        name="X2", rho="12334",
        s_objs=("134", "3", "234"), t_objs=("13", "1234", "23"),
        ker_anchor="123",
        ker_words=(("i_13^123",), ("r_1234^123",), ("i_23^123",)),
        cok_anchor="34",
        cok_words=(("i_34^134",), ("r_34^3",), ("i_34^234",)),
        c_words={
            (0, 0): (1, ("r_134^13",)), (0, 1): (-1, ("i_3^13",)),
            (1, 0): (-1, ("i_134^1234",)), (1, 2): (1, ("i_234^1234",)),
            (2, 1): (1, ("i_3^23",)), (2, 2): (-1, ("r_234^23",)),
        },
        hyp_kind="rr0",
        hyp_words={"123": ("d_123^4",)},
        odd_in=((0, ("d_123^4", "i_4^34", "i_34^134")),
                (2, ("d_123^4", "i_4^34", "i_34^234"))),
        odd_out=((2, ("i_23^123", "d_123^4", "i_4^34")),
                 (0, ("i_13^123", "d_123^4", "i_4^34"))),
    )


def _x4_descriptor():
    t_objs = ("14", "24", "34")
    s_objs = ("124", "134", "234")
    odd_in = []
    for i, s in enumerate(s_objs):
        for dr in s[:-1]:
            odd_in.append((i, (f"d_4^{dr}", f"i_{dr}^1234", f"r_1234^{s}")))
    odd_out = []
    for u, t in enumerate(t_objs):
        k = t[0]
        for m in "123":
            if m != k:
                odd_out.append((u, (f"r_{t}^4", f"d_4^{m}", f"i_{m}^1234")))
    return RefinedDescriptor(
        name="X4", rho="12344",
        s_objs=s_objs, t_objs=t_objs,
        ker_anchor="4",
        ker_words=(("r_14^4",), ("r_24^4",), ("r_34^4",)),
        cok_anchor="1234",
        cok_words=(("r_1234^124",), ("r_1234^134",), ("r_1234^234",)),
        c_words={
            (0, 0): (1, ("r_124^14",)), (1, 0): (-1, ("r_124^24",)),
            (0, 1): (-1, ("r_134^14",)), (2, 1): (1, ("r_134^34",)),
            (1, 2): (1, ("r_234^24",)), (2, 2): (-1, ("r_234^34",)),
        },
        hyp_kind="delta",
        hyp_words={1: ("d_4^1",), 2: ("d_4^2",), 3: ("d_4^3",)},
        odd_in=tuple(odd_in), odd_out=tuple(odd_out),
    )


def _x5_descriptor():
    return RefinedDescriptor(
        name="X5", rho="12334",
        s_objs=("23", "1234", "13"), t_objs=("234", "3", "134"),
        ker_anchor="34",
        ker_words=(("r_234^34",), ("i_3^34",), ("r_134^34",)),
        cok_anchor="123",
        cok_words=(("r_123^23",), ("i_123^1234",), ("r_123^13",)),
        c_words={
            (0, 0): (1, ("i_23^234",)), (0, 1): (-1, ("r_1234^234",)),
            (1, 0): (-1, ("r_23^3",)), (1, 2): (1, ("r_13^3",)),
            (2, 1): (1, ("r_1234^134",)), (2, 2): (-1, ("i_13^134",)),
        },
        hyp_kind="rr0",
        hyp_words={"4": ("d_4^123",)},
        odd_in=((2, ("r_34^4", "d_4^123", "r_123^13")),
                (0, ("r_34^4", "d_4^123", "r_123^23"))),
        odd_out=((0, ("r_234^34", "r_34^4", "d_4^123")),
                 (2, ("r_134^34", "r_34^4", "d_4^123"))),
    )


_DESCRIPTORS = {"X1": _x1_descriptor, "X2": _x2_descriptor,
                "X4": _x4_descriptor, "X5": _x5_descriptor}


def refined_descriptor(name):
    if name not in _DESCRIPTORS:
        raise KeyError(f"no refined descriptor for {name!r}")
    return _DESCRIPTORS[name]()


# ---------------------------------------------------------------------------
# printed module fixtures


def _z():
    return Group.free(1)


def _zn(n):
    return Group.free(n)


def _z3_mod_diag():
    return Group(3, [[1], [1], [1]])


def _z2_mod_diag():
    return Group(2, [[1], [1]])


def _graded(even=None, odd=None):
    return GradedGroup(even or Group(0), odd or Group(0))


def printed_module_x1(ds=None):
    """The printed invariant of the refined representing object over the
    wedge space: groups and action matrices as published."""
    ds = ds or datasheet("X1")
    vals = {
        "1234": _graded(even=_z3_mod_diag()),
        "4": _graded(odd=_z()),
        "14": _graded(), "24": _graded(), "34": _graded(),
        "124": _graded(even=_z()), "134": _graded(even=_z()), "234": _graded(even=_z()),
        "1": _graded(even=_z2_mod_diag()),
        "2": _graded(even=_z2_mod_diag()),
        "3": _graded(even=_z2_mod_diag()),
    }
    # coordinates of the full-space slot indexed by the points 1, 2, 3;
    # each extension embeds into the coordinate of its missing point
    embed = {"124": 2, "134": 1, "234": 0}
    acts = {}
    for obj, pos in embed.items():
        mat = [[1 if r == pos else 0] for r in range(3)]
        acts[f"i_{obj}^1234"] = GrHom.from_parts(vals[obj], vals["1234"], 0, mat, [])
    drop = {"1": 0, "2": 1, "3": 2}
    for k, pos in drop.items():
        rows = [r for r in range(3) if r != pos]
        mat = [[1 if c == rows[i] else 0 for c in range(3)] for i in range(2)]
        acts[f"r_1234^{k}"] = GrHom.from_parts(vals["1234"], vals[k], 0, mat, [])
    delta_sign = {"1": 1, "2": -1, "3": 1}
    for k, s in delta_sign.items():
        acts[f"d_{k}^4"] = GrHom.from_parts(vals[k], vals["4"], 1, [[s, -s]], [])
    for k in "123":
        acts[f"i_4^{k}4"] = GrHom.zero(vals["4"], vals[f"{k}4"], 0)
    for k4, ij4 in (("14", "124"), ("14", "134"), ("24", "124"),
                    ("24", "234"), ("34", "134"), ("34", "234")):
        acts[f"i_{k4}^{ij4}"] = GrHom.zero(vals[k4], vals[ij4], 0)
    return NTModule.from_core_actions(ds, vals, acts, label="printed FK(R12344)")


def printed_module_x2(ds=None):
    """The printed invariant of the refined representing object over the
    height-two space."""
    ds = ds or datasheet("X2")
    vals = {
        "123": _graded(even=_z3_mod_diag()),
        "4": _graded(odd=_z2_mod_diag()),
        "34": _graded(odd=_z()),
        "134": _graded(), "234": _graded(), "3": _graded(),
        "13": _graded(even=_z()), "23": _graded(even=_z()), "1234": _graded(even=_z()),
        "1": _graded(even=_z2_mod_diag()), "2": _graded(even=_z2_mod_diag()),
    }
    acts = {}
    # coordinates of the 123 slot: position 0 from 13, 1 from 1234, 2 from 23
    for obj, pos in (("13", 0), ("1234", 1), ("23", 2)):
        mat = [[1 if r == pos else 0] for r in range(3)]
        gname = f"i_{obj}^123" if obj != "1234" else "r_1234^123"
        acts[gname] = GrHom.from_parts(vals[obj], vals["123"], 0, mat, [])
    # projections: each drops the coordinate of its vanishing partner
    proj = {"r_123^1": 2, "d_123^4": 1, "r_123^2": 0}
    for gname, pos in proj.items():
        rows = [r for r in range(3) if r != pos]
        mat = [[1 if c == rows[i] else 0 for c in range(3)] for i in range(2)]
        if gname == "d_123^4":
            acts[gname] = GrHom.from_parts(vals["123"], vals["4"], 1, mat, [])
        else:
            tgt = vals[gname[-1]]
            acts[gname] = GrHom.from_parts(vals["123"], tgt, 0, mat, [])
    acts["d_1^34"] = GrHom.from_parts(vals["1"], vals["34"], 1, [[1, -1]], [])
    acts["d_2^34"] = GrHom.from_parts(vals["2"], vals["34"], 1, [[1, -1]], [])
    acts["i_4^34"] = GrHom.from_parts(vals["4"], vals["34"], 0, [], [[1, -1]])
    for gname, (s, t) in (("i_34^134", ("34", "134")), ("i_34^234", ("34", "234")),
                          ("r_34^3", ("34", "3")), ("i_3^13", ("3", "13")),
                          ("i_3^23", ("3", "23")), ("i_134^1234", ("134", "1234")),
                          ("i_234^1234", ("234", "1234")), ("r_134^13", ("134", "13")),
                          ("r_234^23", ("234", "23"))):
        acts[gname] = GrHom.zero(vals[s], vals[t], 0)
    return NTModule.from_core_actions(ds, vals, acts, label="printed FK(R12334)")


def printed_counterexample_table(k):
    """Objectwise groups of the torsion counterexample module, as printed."""
    zk = (0, (k,))
    zero = (0, ())
    return {
        "123": (zk, zero), "4": (zero, zero), "1": (zero, zk),
        "234": ((0, (k, k)), zero), "1234": (zk, zero),
        "12": (zero, zero), "34": (zk, zero), "3": (zk, zero),
        "13": (zero, zero), "24": (zk, zero), "2": (zk, zero),
    }


def printed_shifted_projective_table():
    """Objectwise groups of the shifted representable summand, as printed."""
    z = (1, ())
    zero = (0, ())
    return {
        "123": (zero, (2, ())), "4": (z, zero), "1": (zero, zero),
        "234": (zero, z), "1234": (zero, z),
        "12": (zero, z), "34": (zero, zero), "3": (zero, z),
        "13": (zero, z), "24": (zero, zero), "2": (zero, z),
    }
