import itertools
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import S, root
from kcascade.rootsys import (
    RootSystemError,
    SimpleType,
    build_root_system,
    connected_components,
    coroot_pairing,
    highest_root_of,
    parse_types,
)

ALL_TYPES = [
    "A1", "A2", "A3", "A5", "B2", "B3", "B5", "C2", "C3", "C5",
    "D4", "D5", "D6", "E6", "E7", "E8", "F4", "G2",
]


def classical_count(t: SimpleType) -> int:
    n = t.rank
    return {
        "A": n * (n + 1),
        "B": 2 * n * n,
        "C": 2 * n * n,
        "D": 2 * n * (n - 1),
        "E": {6: 72, 7: 126, 8: 240}.get(n),
        "F": 48,
        "G": 12,
    }[t.family]


def reflection_closure(rs):
    """Roots as the orbit of the simple roots under simple reflections."""
    found = set(rs.simple_roots)
    frontier = list(found)
    while frontier:
        nxt = []
        for b in frontier:
            for i, a in enumerate(rs.simple_roots):
                k = sum(b[j] * rs.cartan[j][i] for j in range(rs.rank))
                img = tuple(x - k * y for x, y in zip(b, a))
                if img not in found:
                    found.add(img)
                    nxt.append(img)
        frontier = nxt
    return found


@pytest.mark.parametrize("name", ALL_TYPES)
def test_roots_match_reflection_orbit(systems, name):
    rs = systems(name)
    assert set(rs.roots) == reflection_closure(rs)
    assert len(rs.roots) == classical_count(rs.types[0])


@pytest.mark.parametrize("name", ALL_TYPES)
def test_structure(systems, name):
    rs = systems(name)
    pos = set(rs.positive_roots)
    assert set(rs.roots) == pos | {tuple(-c for c in r) for r in pos}
    assert not pos & {tuple(-c for c in r) for r in pos}
    for r in rs.roots:
        assert all(c >= 0 for c in r) or all(c <= 0 for c in r)
    for i in range(rs.rank):
        assert rs.cartan[i][i] == 2
        for j in range(rs.rank):
            if i != j:
                assert rs.cartan[i][j] <= 0
            assert rs.form[i][j] == rs.form[j][i] == rs.cartan[i][j] * rs.symmetrizer[j]
    keys = [(sum(r), r) for r in rs.roots]
    assert keys == sorted(keys)


def test_root_counts():
    assert build_root_system("A1").roots == ((-1,), (1,))
    assert len(build_root_system("G2").positive_roots) == 6
    assert len(build_root_system("E8").roots) == 240


def test_highest_roots_bourbaki():
    assert build_root_system("E8").highest_root == (2, 3, 4, 6, 5, 4, 3, 2)
    assert build_root_system("F4").highest_root == (2, 3, 4, 2)
    assert build_root_system("G2").highest_root == (3, 2)
    assert build_root_system("B4").highest_root == (1, 2, 2, 2)
    assert build_root_system("C4").highest_root == (2, 2, 2, 1)


@pytest.mark.parametrize("bad", [("A", 0), ("B", 1), ("C", 1), ("D", 2), ("E", 5), ("E", 9), ("F", 3), ("G", 3), ("H", 3)])
def test_invalid_types(bad):
    with pytest.raises(RootSystemError):
        SimpleType(*bad)


def test_d3_warns():
    with pytest.warns(UserWarning):
        rs = build_root_system("D3")
    assert len(rs.roots) == 12


def test_parse_products():
    assert parse_types("A2xB3") == (SimpleType("A", 2), SimpleType("B", 3))
    rs = build_root_system("A2xG2")
    assert rs.rank == 4
    assert len(rs.roots) == 6 + 12
    assert connected_components(rs, rs.all_simple) == [S(1, 2), S(3, 4)]


def test_coroot_pairing():
    a2 = build_root_system("A2")
    assert coroot_pairing(a2, (1, 0), (1, 0)) == 2
    assert coroot_pairing(a2, (1, 0), (0, 1)) == -1
    b2 = build_root_system("B2")
    # alpha_2 short in Bourbaki numbering
    assert coroot_pairing(b2, (1, 0), (0, 1)) == -2
    assert coroot_pairing(b2, (0, 1), (1, 0)) == -1
    with pytest.raises(RootSystemError):
        coroot_pairing(a2, (1, 0), (2, 0))


@pytest.mark.parametrize("name", ["B3", "G2", "F4", "D4"])
def test_pairing_linear_and_integral(systems, name):
    rs = systems(name)
    for a, b in itertools.product(rs.roots, repeat=2):
        val = coroot_pairing(rs, a, b)
        assert val == sum(a[i] * coroot_pairing(rs, rs.simple_roots[i], b) for i in range(rs.rank))


@pytest.mark.parametrize("name", ["A4", "B3", "G2", "F4", "E6"])
def test_closure(systems, name):
    rs = systems(name)
    for a, b in itertools.product(rs.roots, repeat=2):
        s = tuple(x + y for x, y in zip(a, b))
        if rs.is_root(s):
            assert all(c >= 0 for c in s) or all(c <= 0 for c in s)
            assert rs.is_root(tuple(-c for c in s))


def test_connected_components_examples():
    assert connected_components(build_root_system("A3"), []) == []
    assert connected_components(build_root_system("A3"), S(1, 3)) == [S(1), S(3)]
    assert connected_components(build_root_system("D5"), S(1, 3, 4, 5)) == [S(1), S(3, 4, 5)]


def test_highest_root_examples():
    a5 = build_root_system("A5")
    assert highest_root_of(a5, S(3)) == (0, 0, 1, 0, 0)
    assert highest_root_of(a5, a5.all_simple) == (1, 1, 1, 1, 1)
    e6 = build_root_system("E6")
    assert highest_root_of(e6, S(3, 4, 5)) == root(e6, a3=1, a4=1, a5=1)
    with pytest.raises(RootSystemError):
        highest_root_of(e6, S(1, 4))
    with pytest.raises(RootSystemError):
        highest_root_of(e6, [])


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(ALL_TYPES), st.integers(min_value=1))
def test_highest_root_dominant(name, mask):
    rs = build_root_system(name)
    s = frozenset(i for i in range(rs.rank) if mask >> i & 1)
    comps = connected_components(rs, s)
    pos_s = set(rs.positive_roots_in(s))
    # R_S splits along the components
    assert pos_s == set().union(*(rs.positive_roots_in(c) for c in comps)) if comps else not pos_s
    for c in comps:
        top = highest_root_of(rs, c)
        sub = rs.positive_roots_in(c)
        assert top in sub
        assert all(rs.pairing(b, top) >= 0 for b in sub)
        # exhaustive dominance scan
        assert all(all(x <= y for x, y in zip(b, top)) for b in sub)


def test_json_roundtrip_is_canonical():
    rs = build_root_system("B2")
    doc = json.loads(rs.to_json())
    assert doc["type"] == "B2"
    assert doc["cartan_matrix"] == [[2, -2], [-1, 2]]
    assert doc["roots"][0] == [-1, -2]
    assert rs.to_json() == build_root_system("B2").to_json()
