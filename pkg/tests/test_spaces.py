import itertools

import pytest

from filtk import fixtures, spaces
from filtk.spaces import (
    Disconnected,
    MissingExtremes,
    NotALattice,
    NotT0,
    TooLarge,
    canonical_form,
    enumerate_connected_t0,
    homeomorphic,
    is_accordion,
    set_name,
    space_from_json,
    validate_topology,
)


def lc_star_names(space):
    return [set_name(c) for c in space.lc_star()]


def test_validate_x1_printed_list():
    sp = fixtures.load_space("X1")
    assert sp.report.t0 and sp.report.connected
    assert sp.report.clopen_proper == ()


def test_validate_one_point():
    sp = validate_topology(["1"], [frozenset(), frozenset(["1"])])
    assert sp.report.connected and sp.report.t0


def test_validate_x8_reports_clopen():
    sp = fixtures.load_space("X8")
    assert not sp.report.connected
    assert frozenset(["4"]) in sp.report.clopen_proper


def test_validate_errors():
    with pytest.raises(MissingExtremes):
        validate_topology(["1", "2"], [frozenset(["1"])])
    with pytest.raises(NotALattice):
        validate_topology(
            ["1", "2", "3"],
            [frozenset(), frozenset(["1"]), frozenset(["2"]), frozenset("123")])
    with pytest.raises(NotT0):
        validate_topology(["1", "2"], [frozenset(), frozenset(["1", "2"])])


def test_specialization_order_x1():
    sp = fixtures.load_space("X1")
    for i in "123":
        assert (i, "4") in sp.leq
    assert ("4", "1") not in sp.leq


def test_specialization_order_x2():
    sp = fixtures.load_space("X2")
    strict = {(x, y) for (x, y) in sp.leq if x != y}
    assert {("1", "3"), ("2", "3"), ("3", "4")} <= strict
    assert ("1", "2") not in strict


def test_specialization_discrete():
    sp = validate_topology(
        ["1", "2"],
        [frozenset(), frozenset(["1"]), frozenset(["2"]), frozenset(["1", "2"])])
    assert {(x, y) for (x, y) in sp.leq if x != y} == set()


def test_lc_star_x1():
    sp = fixtures.load_space("X1")
    assert lc_star_names(sp) == sorted(
        ["4", "14", "24", "34", "124", "134", "234", "1234", "1", "2", "3"],
        key=lambda s: (len(s), s))
    assert len(sp.lc_star()) == 11


def test_lc_star_x3():
    sp = fixtures.load_space("X3")
    assert set(lc_star_names(sp)) == {
        "4", "24", "34", "234", "1234", "123", "12", "13", "1", "2", "3"}


def test_lc_star_one_point():
    sp = validate_topology(["1"], [frozenset(), frozenset(["1"])])
    assert lc_star_names(sp) == ["1"]


def test_lc_contains_opens_and_closed_connected():
    for name in fixtures.SPACE_NAMES:
        sp = fixtures.load_space(name)
        lc = sp.locally_closed()
        assert len(lc) >= len(sp.opens)
        full = frozenset(sp.points)
        star = set(sp.lc_star())
        for u in sp.opens:
            assert u in lc
            if u and sp.is_connected(u):
                assert u in star
            c = full - u
            if c and sp.is_connected(c):
                assert c in star


def test_enumerate_small_counts():
    assert len(enumerate_connected_t0(1)) == 1
    assert len(enumerate_connected_t0(2)) == 1
    assert len(enumerate_connected_t0(3)) == 3
    assert len(enumerate_connected_t0(4)) == 10
    with pytest.raises(TooLarge):
        enumerate_connected_t0(7)


def test_enumerate_two_points_brute_force_oracle():
    # oracle: all topologies on two labeled points, filtered and classified
    pts = ["a", "b"]
    subsets = [frozenset(s) for r in range(3) for s in itertools.combinations(pts, r)]
    found = []
    for opens in (set(c) | {frozenset(), frozenset(pts)}
                  for r in range(len(subsets) + 1)
                  for c in itertools.combinations(subsets, r)):
        try:
            sp = validate_topology(pts, opens)
        except spaces.SpaceError:
            continue
        if sp.report.connected:
            found.append(sp)
    classes = {canonical_form(sp) for sp in found}
    assert len(classes) == 1  # only the two-point connected T0 class


def test_enumerate_no_iso_duplicates():
    reps = enumerate_connected_t0(4)
    forms = [canonical_form(sp) for sp in reps]
    assert len(set(forms)) == len(forms)
    for sp in reps:
        assert sp.is_connected()


def test_printed_lists_map_to_distinct_classes():
    reps = {i: canonical_form(sp) for i, sp in enumerate(enumerate_connected_t0(4))}
    assigned = {}
    for name in fixtures.SPACE_NAMES:
        sp = fixtures.load_space(name)
        if not sp.report.connected:
            continue
        form = canonical_form(sp)
        matches = [i for i, f in reps.items() if f == form]
        assert len(matches) == 1
        assigned[name] = matches[0]
    assert len(assigned) == 9  # X8 as printed is disconnected
    assert len(set(assigned.values())) == 9


def test_accordion_split():
    chain = fixtures.load_space("X7")
    flag, why = is_accordion(chain)
    assert flag, why
    x1 = fixtures.load_space("X1")
    flag, why = is_accordion(x1)
    assert not flag and "4" in why
    point = validate_topology(["1"], [frozenset(), frozenset(["1"])])
    assert is_accordion(point)[0]
    for name in ("X9", "X10"):
        assert is_accordion(fixtures.load_space(name))[0]
    for name in ("X2", "X3", "X4", "X5", "X6"):
        assert not is_accordion(fixtures.load_space(name))[0]
    with pytest.raises(Disconnected):
        is_accordion(fixtures.load_space("X8"))


def test_opposite_involution_and_pairs():
    for name in fixtures.SPACE_NAMES:
        sp = fixtures.load_space(name)
        assert sp.opposite().opposite().opens == sp.opens
    assert homeomorphic(fixtures.load_space("X1").opposite(), fixtures.load_space("X4"))
    assert homeomorphic(fixtures.load_space("X2").opposite(), fixtures.load_space("X5"))
    assert homeomorphic(fixtures.load_space("X3").opposite(), fixtures.load_space("X3"))
    disc = validate_topology(
        ["1", "2"],
        [frozenset(), frozenset(["1"]), frozenset(["2"]), frozenset(["1", "2"])])
    assert disc.opposite().opens == disc.opens


def test_opposite_order_is_inverse():
    for name in ("X1", "X2", "X3", "X6"):
        sp = fixtures.load_space(name)
        op = sp.opposite()
        assert {(y, x) for (x, y) in sp.leq} == set(op.leq)


def test_json_round_trip():
    for name in fixtures.SPACE_NAMES:
        sp = fixtures.load_space(name)
        blob = spaces.space_to_json_str(sp)
        sp2 = space_from_json(__import__("json").loads(blob))
        assert sp2.opens == sp.opens and sp2.points == sp.points
        assert spaces.space_to_json_str(sp2) == blob


def test_fixture_env_override(tmp_path, monkeypatch):
    data = fixtures.load_space("X7").to_json()
    data["name"] = "Xcustom"
    (tmp_path / "Xcustom.json").write_text(__import__("json").dumps(data))
    monkeypatch.setenv("FILTK_FIXTURES", str(tmp_path))
    sp = fixtures.load_space("Xcustom")
    assert sp.name == "Xcustom"
    assert homeomorphic(sp, fixtures.load_space("X7"))
