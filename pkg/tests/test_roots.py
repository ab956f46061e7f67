import itertools

import numpy as np
import pytest

from orbitc.classifier import TorusElement, annihilator
from orbitc.errors import CapacityError, DomainError
from orbitc.roots import (
    RootSubsystem,
    WeylElement,
    build_root_system,
    closed_corank1_subsystems,
    conjugacy_key,
    expected_root_count,
    is_conjugate_to_subset,
    is_weyl_conjugate,
    subsystem_type,
    type_label,
    weyl_action_table,
    weyl_element_at,
    weyl_elements,
    weyl_order,
)

CASES = [("A", n) for n in range(1, 6)] + [(f, n) for f in "BCD" for n in range(2, 6)]


@pytest.mark.parametrize("fam,n", CASES)
def test_root_counts_and_closure(fam, n):
    R = build_root_system(fam, n)
    assert len(R.roots) == expected_root_count(fam, n)
    assert len(R.positive_roots) * 2 == len(R.roots)
    roots = set(R.roots)
    assert all(tuple(-x for x in r) in roots for r in roots)


@pytest.mark.parametrize("fam,n", [("A", 3), ("B", 3), ("C", 3), ("D", 4)])
def test_weyl_group_permutes_roots(fam, n):
    R = build_root_system(fam, n)
    elems = list(weyl_elements(fam, n))
    assert len(elems) == weyl_order(fam, n) == len(set(elems))
    roots = frozenset(R.roots)
    for w in elems[:: max(1, len(elems) // 50)]:
        assert w.apply_set(roots) == roots


def test_action_table_matches_elementwise_action():
    R = build_root_system("D", 4)
    table = weyl_action_table(R)
    for k in (0, 7, 100, 191):
        w = weyl_element_at("D", 4, k)
        assert [R.roots[i] for i in table[k]] == [w(r) for r in R.roots]


def test_weyl_cap():
    with pytest.raises(CapacityError):
        list(weyl_elements("B", 6, cap=1000))


def test_subsystem_must_be_symmetric():
    R = build_root_system("B", 2)
    with pytest.raises(DomainError):
        RootSubsystem(R, frozenset({(1, 0)}))
    with pytest.raises(DomainError):
        RootSubsystem(R, frozenset({(2, 0), (-2, 0)}))


@pytest.mark.parametrize("values,label,size", [
    ((0, 0, 1, 1, 1), "B2xSU(3)", 14),
    ((0, 0, 0, 0, 1), "B4", 32),
    ((1, 2, 3, 4, 5), "empty", 0),
])
def test_subsystem_type_b5(values, label, size):
    phi = annihilator(TorusElement.of("B", 5, values))
    assert len(phi) == size
    assert type_label(subsystem_type(phi)) == label


def test_d3_and_su4_told_apart():
    # same rank, size and root lengths: only the coordinate pattern differs
    su4 = annihilator(TorusElement.of("D", 4, (1, 1, 1, 1)))
    d3 = annihilator(TorusElement.of("D", 4, (0, 0, 0, 1)))
    assert type_label(subsystem_type(su4)) == "SU(4)"
    assert type_label(subsystem_type(d3)) == "D3"
    assert not is_weyl_conjugate(su4, d3)[0]


def test_d4_su4_classes():
    plus = annihilator(TorusElement.of("D", 4, (1, 1, 1, 1)))
    minus = annihilator(TorusElement.of("D", 4, (1, 1, 1, -1)))
    plus2 = annihilator(TorusElement.of("D", 4, (-1, -1, 1, 1)))
    assert not is_weyl_conjugate(plus, minus)[0]
    ok, w = is_weyl_conjugate(plus, plus2)
    assert ok and plus.weyl_image(w) == plus2
    # in D5 the two sign classes merge
    a = annihilator(TorusElement.of("D", 5, (1, 1, 1, 1, 1)))
    b = annihilator(TorusElement.of("D", 5, (1, 1, 1, 1, -1)))
    assert is_weyl_conjugate(a, b)[0]


def test_conjugate_to_subset():
    su4 = annihilator(TorusElement.of("D", 4, (1, 1, 1, 1)))
    inside = annihilator(TorusElement.of("D", 4, (1, 1, 2, 2)))
    outside = annihilator(TorusElement.of("D", 4, (1, 1, 2, -2)))
    assert is_conjugate_to_subset(inside, su4)
    assert not is_conjugate_to_subset(outside, su4)


def test_conjugacy_is_an_equivalence_relation():
    R = build_root_system("D", 4)
    elems = list(itertools.islice(weyl_elements("D", 4), 0, 192, 17))
    base = [annihilator(TorusElement.of("D", 4, v)) for v in
            [(1, 1, 1, 1), (1, 1, 1, -1), (0, 1, 1, 1), (1, 1, 2, 2), (1, 1, 2, -2), (0, 0, 1, 1)]]
    subs = base + [s.weyl_image(w) for s in base[:3] for w in elems[:4]]
    rel = {(i, j): is_weyl_conjugate(a, b)[0] for i, a in enumerate(subs) for j, b in enumerate(subs)}
    n = len(subs)
    for i in range(n):
        assert rel[i, i]
        for j in range(n):
            assert rel[i, j] == rel[j, i]
            assert rel[i, j] == (conjugacy_key(subs[i]) == conjugacy_key(subs[j]))
            for k in range(n):
                if rel[i, j] and rel[j, k]:
                    assert rel[i, k]
    assert R.name == "D4"


@pytest.mark.parametrize("fam,n,count,classes", [
    ("A", 2, 3, 1), ("B", 3, 13, 3), ("C", 3, 13, 3), ("D", 4, 24, 4), ("D", 5, 81, 4),
])
def test_closed_corank1_enumeration(fam, n, count, classes):
    R = build_root_system(fam, n)
    subs = closed_corank1_subsystems(R)
    assert len(subs) == count
    for s in subs:
        assert s.rank == n - 1
    assert len({conjugacy_key(s) for s in subs}) == classes


def test_weyl_element_identity():
    w = WeylElement.identity(3)
    assert w((1, -1, 0)) == (1, -1, 0)
    assert np.all(weyl_action_table(build_root_system("A", 2))[0] == np.arange(6))
