import pytest

from filtk import fixtures
from filtk.oracle import (
    CellComplex,
    OrderComplex,
    Representable,
    fk_of_representable,
    make_generator,
)
from filtk.spaces import set_name
from filtk.zmod import graded_is_exact


def inv(value):
    g = value.graded
    return (g.even.invariants, g.odd.invariants)


Z = (1, ())
Z2 = (2, ())
ZERO = (0, ())


def carriers(space):
    return {set_name(c): c for c in space.lc_star()}


def test_order_complex_x1_is_a_star():
    sp = fixtures.load_space("X1")
    ocx = OrderComplex(sp)
    assert ocx.dimension == 1
    assert ("1", "4") in ocx.chains and ("4",) in ocx.chains
    assert len(ocx.chains) == 7


def test_order_complex_x3_two_triangles():
    sp = fixtures.load_space("X3")
    ocx = OrderComplex(sp)
    assert ocx.dimension == 2
    assert ("1", "2", "4") in ocx.chains and ("1", "3", "4") in ocx.chains
    assert ("1", "4") in ocx.chains
    assert len(ocx.chains) == 4 + 5 + 2


def test_x7_chain_has_three_dimensional_complex():
    sp = fixtures.load_space("X7")
    assert OrderComplex(sp).dimension == 3


def test_fk_x1_full_object():
    sp = fixtures.load_space("X1")
    ocx = OrderComplex(sp)
    full = frozenset(sp.points)
    assert inv(fk_of_representable(sp, full, full, ocx)) == (Z, ZERO)
    for ij4 in (("1", "2", "4"), ("1", "3", "4"), ("2", "3", "4")):
        assert inv(fk_of_representable(sp, full, frozenset(ij4), ocx)) == (ZERO, ZERO)
    assert inv(fk_of_representable(sp, full, frozenset("4"), ocx)) == (ZERO, Z2)
    for k in "123":
        assert inv(fk_of_representable(sp, full, frozenset(k), ocx)) == (Z, ZERO)


def test_fk_x1_singleton_vertex():
    sp = fixtures.load_space("X1")
    assert inv(fk_of_representable(sp, frozenset("4"), frozenset("4"))) == (Z, ZERO)


def test_fk_x1_wedge_objects():
    sp = fixtures.load_space("X1")
    ocx = OrderComplex(sp)
    for ij4 in ({"1", "2", "4"}, {"1", "3", "4"}, {"2", "3", "4"}):
        for k in "123":
            got = inv(fk_of_representable(sp, frozenset(ij4), frozenset({k, "4"}), ocx))
            if k in ij4:
                assert got == (ZERO, ZERO)
            else:
                assert got == (ZERO, Z)


def test_fk_x3_values_match_hand_computation():
    sp = fixtures.load_space("X3")
    ocx = OrderComplex(sp)
    c = carriers(sp)
    p234 = lambda z: inv(fk_of_representable(sp, c["234"], c[z], ocx))
    assert p234("24") == (ZERO, ZERO)
    assert p234("34") == (ZERO, ZERO)
    assert p234("234") == (Z, ZERO)
    assert p234("123") == (Z2, ZERO)
    assert p234("4") == (ZERO, Z)
    assert p234("1") == (ZERO, ZERO)
    p1 = lambda z: inv(fk_of_representable(sp, c["1"], c[z], ocx))
    assert p1("234") == (ZERO, Z)
    assert p1("24") == (ZERO, ZERO)
    assert p1("1234") == (ZERO, ZERO)  # open star of a vertex, H_c-acyclic
    assert inv(fk_of_representable(sp, c["24"], c["24"], ocx)) == (Z, ZERO)


def test_identity_slot_is_free_cyclic_everywhere():
    for name in ("X1", "X2", "X3"):
        sp = fixtures.load_space(name)
        ocx = OrderComplex(sp)
        for y in sp.lc_star():
            v = fk_of_representable(sp, y, y, ocx)
            assert v.graded.even.invariants == Z, (name, set_name(y))
            assert v.graded.odd.invariants == ZERO, (name, set_name(y))


def test_empty_cell_set_gives_zero_group():
    sp = fixtures.load_space("X1")
    v = fk_of_representable(sp, frozenset("1"), frozenset("2"))
    assert inv(v) == (ZERO, ZERO)
    assert v.cc.cells == frozenset()


def test_euler_characteristic_consistency():
    for name in ("X1", "X2", "X3"):
        sp = fixtures.load_space(name)
        ocx = OrderComplex(sp)
        star = sp.lc_star()
        for y in star:
            for z in star:
                v = fk_of_representable(sp, y, z, ocx)
                lhs = v.graded.even.free_rank - v.graded.odd.free_rank
                assert lhs == v.euler(), (name, set_name(y), set_name(z))


def test_cell_complex_d_squared_guard():
    sp = fixtures.load_space("X3")
    ocx = OrderComplex(sp)
    # a legal locally closed cell set builds fine
    CellComplex(ocx.cell_set(frozenset("1234"), frozenset("1234")))


def _x1_six_term_generators():
    gens = []
    for k in "123":
        big = frozenset({k, "4"})
        small = frozenset("4")
        gens += [make_generator("i", big, small),
                 make_generator("r", big, small),
                 make_generator("d", big, small)]
    return gens


def test_representable_six_term_exact_on_x1_pairs():
    sp = fixtures.load_space("X1")
    ocx = OrderComplex(sp)
    objs = {set_name(c): c for c in sp.lc_star()}
    gens = _x1_six_term_generators()
    rep = Representable(sp, ocx, frozenset(sp.points), objs, gens)
    assert rep.caveat is None
    for k in "123":
        i = rep.actions[f"i_4^{k}4"]
        r = rep.actions[f"r_{k}4^{k}"]
        d = rep.actions[f"d_{k}^4"]
        assert i.degree == 0 and r.degree == 0 and d.degree == 1
        assert graded_is_exact(i, r)
        assert graded_is_exact(r, d)
        assert graded_is_exact(d, i)
    assert rep.euler_consistent() == []


def test_representable_dimension_caveat_x7():
    sp = fixtures.load_space("X7")
    ocx = OrderComplex(sp)
    objs = {set_name(c): c for c in sp.lc_star()}
    rep = Representable(sp, ocx, frozenset(sp.points), objs, [])
    assert rep.caveat is not None and "3" in rep.caveat
