import itertools
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from orbitc.classifier import (
    ElementType,
    GroupTorusElement,
    Reason,
    Status,
    TorusElement,
    all_element_types,
    annihilator,
    canonical_form,
    decide,
    dominant_zero_block_power,
    element_type,
    group_decide,
    is_eligible,
    is_exceptional,
    is_open_case,
    min_power,
    reduce,
    reduction_chain,
    s_value,
)
from orbitc.errors import DomainError


def T(fam, n, *vals):
    return TorusElement.of(fam, n, vals)


# ----------------------------------------------------------- basic examples


def test_torus_element_validation():
    with pytest.raises(DomainError):
        T("A", 2, 1, 1, 1)  # nonzero sum
    with pytest.raises(DomainError):
        T("B", 2, 1)  # wrong length
    with pytest.raises(DomainError):
        TorusElement.of("B", 2, [0.5, 1])  # floats refused
    assert T("B", 2, "1/2", 1).values == (Fraction(1, 2), Fraction(1))


def test_annihilator_examples():
    assert len(annihilator(T("B", 5, 0, 0, 1, 1, 1))) == 14
    assert len(annihilator(T("B", 5, 1, 2, 3, 4, 5))) == 0
    su4 = annihilator(T("D", 4, 1, 1, 1, 1))
    assert len(su4) == 12
    assert all(r.count(1) == 1 and r.count(-1) == 1 for r in su4)


def test_element_type_examples():
    t = element_type(T("B", 5, 0, 0, 3, 3, 3))
    assert (t.J, t.parts, t.sign) == (2, (3,), None)
    assert t.label == "B2xSU(3)" and t.S == 4 and t.dominant_zero_block
    plus, minus = element_type(T("D", 4, 2, 2, 2, 2)), element_type(T("D", 4, 2, 2, 2, -2))
    assert (plus.J, plus.parts) == (minus.J, minus.parts) == (0, (4,))
    assert plus.sign != minus.sign
    a = element_type(T("A", 3, 1, 1, -1, -1))
    assert a.parts == (2, 2) and a.S == 2
    with pytest.raises(DomainError):
        element_type(T("C", 3, 0, 0, 0))


def test_s_value_examples():
    assert s_value(T("B", 5, 0, 0, 0, 0, 1)) == 8
    assert s_value(T("B", 5, 0, 0, 1, 1, 1)) == 4
    assert s_value(T("D", 4, 1, 1, 1, 1)) == 4


def test_reduce_examples():
    assert reduce(T("B", 5, 0, 0, 1, 1, 1)) == T("B", 4, 0, 1, 1, 1)
    assert reduce(T("B", 5, 0, 1, 1, 1, 1)) == T("B", 4, 0, 1, 1, 1)
    r = reduce(T("A", 3, 1, 1, 1, -3))
    assert r.rank == 2 and element_type(r).parts == (2, 1)
    with pytest.raises(DomainError):
        reduce(T("B", 2, 1, 1))
    assert [x.rank for x in reduction_chain(T("C", 4, 1, 2, 3, 4))] == [4, 3, 2]


def test_eligibility_examples():
    assert is_eligible([T("D", 4, 1, 1, 1, 1)] * 2)
    assert not is_eligible([T("B", 5, 0, 0, 0, 0, 1)] * 2)
    x = T("A", 5, 1, 1, 1, -1, -1, -1)
    assert is_eligible([x, x])
    with pytest.raises(DomainError):
        is_eligible([T("B", 3, 1, 2, 3), T("C", 3, 1, 2, 3)])
    with pytest.raises(DomainError):
        is_eligible([T("B", 3, 1, 2, 3)])


def test_exceptional_examples():
    x1 = T("D", 4, 1, 1, 1, 1)
    assert is_exceptional([x1, T("D", 4, 1, 1, 2, 2)]) == (True, "c")
    assert is_exceptional([x1, T("D", 4, 1, 1, -1, -1)]) == (True, "b")
    assert is_exceptional([x1, T("D", 4, 1, 1, 2, -2)]) == (False, None)
    assert is_exceptional([x1, T("D", 4, 0, 0, 1, 1)]) == (True, "c")
    assert is_exceptional([T("B", 5, 1, 1, 1, 1, 1)] * 2) == (False, None)
    assert is_exceptional([T("A", 3, 1, 1, -1, -1)] * 2) == (True, "a")
    assert is_exceptional([x1] * 3) == (True, "d")
    assert is_exceptional([x1, x1, T("D", 4, 1, 1, 1, -1)]) == (False, None)
    # SU(n-1) read as SU(n-1)xD1 and as SU(n-1)xSU(1)
    d5 = T("D", 5, 1, 1, 1, 1, 1)
    assert is_exceptional([d5, T("D", 5, 0, 1, 1, 1, 1)]) == (True, "b")
    assert is_exceptional([d5, T("D", 5, 2, 1, 1, 1, 1)]) == (True, "b")


def test_decide_examples():
    v = decide([T("B", 5, 0, 0, 0, 0, 1)] * 2)
    assert (v.status, v.reason) == (Status.SINGULAR, Reason.NOT_ELIGIBLE)
    v = decide([T("D", 6, *[1] * 6), T("D", 6, 1, 1, 1, 1, 1, 2)])
    assert (v.status, v.reason) == (Status.UNKNOWN, Reason.OPEN_CASE)
    assert is_open_case([T("D", 6, *[1] * 6), T("D", 6, 0, 1, 1, 1, 1, 1)])
    v = decide([T("C", 3, 1, 2, 3), T("C", 3, 4, 5, 6)])
    assert v.status is Status.ABSOLUTELY_CONTINUOUS
    assert decide([T("C", 3, 1, 2, 3), T("C", 3, 1, 1, 2)]).status is Status.ABSOLUTELY_CONTINUOUS
    with pytest.raises(DomainError):
        decide([T("D", 3, 1, 1, 1)] * 2)


def test_b2_all_pairs_ac():
    for a, b in itertools.combinations_with_replacement(all_element_types("B", 2), 2):
        assert decide([a.witness(), b.witness()]).status is Status.ABSOLUTELY_CONTINUOUS


def test_a3_triples():
    # every triple in A3 is absolutely continuous except three SU(3) elements
    for combo in itertools.combinations_with_replacement(all_element_types("A", 3), 3):
        v = decide([t.witness() for t in combo])
        all_su3 = all(t.parts == (3, 1) for t in combo)
        assert (v.status is Status.SINGULAR) == all_su3


def test_all_element_types_d4():
    types = all_element_types("D", 4)
    assert len(types) == 16
    labels = {t.label for t in types}
    assert {"SU(4)+", "SU(4)-", "SU(2)xSU(2)+", "SU(2)xSU(2)-", "D3", "D2xSU(2)"} <= labels
    for t in types:
        assert element_type(t.witness()) == t


def test_element_type_validation():
    with pytest.raises(DomainError):
        ElementType("D", 4, 0, (4,))  # sign class missing
    with pytest.raises(DomainError):
        ElementType("B", 4, 1, (3,), "+")


# ------------------------------------------------------------------- k(X)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_min_power_b_n_minus_1(n):
    assert min_power(T("B", n, *([0] * (n - 1) + [1]))) == n


def test_min_power_dominant_su():
    assert min_power(T("B", 5, 0, 1, 1, 1, 1)) == 2
    assert min_power(T("C", 4, 1, 1, 1, 2)) == 2


@pytest.mark.parametrize("fam", ["B", "C"])
def test_min_power_dominant_zero_block(fam):
    for n in range(2, 7):
        for J in range(1, n):
            for t in all_element_types(fam, n):
                if t.J == J and t.dominant_zero_block:
                    assert min_power(t.witness()) == dominant_zero_block_power(fam, n, J)


# --------------------------------------------------------------- group side


def test_group_decide():
    g = [GroupTorusElement("A", 2, (Fraction(1, 3), Fraction(1, 5), Fraction(-8, 15)))] * 2
    alg = decide([x.algebra_preimage() for x in g])
    assert group_decide(g) == alg
    mismatch = [GroupTorusElement("B", 2, (1, 1)), GroupTorusElement("B", 2, (Fraction(1, 2), Fraction(1, 3)))]
    v = group_decide(mismatch)
    assert (v.status, v.reason) == (Status.UNKNOWN, Reason.TYPE_MISMATCH)
    with pytest.raises(DomainError):
        group_decide([GroupTorusElement("B", 2, (0, 0))] * 2)
    # non-eligible on the algebra side stays Singular despite a mismatch
    xs = [GroupTorusElement("B", 5, (0, 0, 0, 0, 1))] * 2
    assert group_decide(xs).status is Status.SINGULAR


# ------------------------------------------------------------- properties

FAMS = st.sampled_from(["A", "B", "C", "D"])


@st.composite
def elements(draw, family=None, rank=None):
    fam = draw(FAMS) if family is None else family
    lo = {"A": 1, "B": 2, "C": 2, "D": 4}[fam]
    n = draw(st.integers(lo, 6)) if rank is None else rank
    m = n + 1 if fam == "A" else n
    vals = draw(st.lists(st.integers(-3, 3), min_size=m, max_size=m))
    if fam == "A":
        vals = [Fraction(v) - Fraction(sum(vals), m) for v in vals]
    assume(any(vals))
    return TorusElement.of(fam, n, vals)


def weyl_act(X, data):
    m = len(X.values)
    perm = data.draw(st.permutations(range(m)))
    vals = [X.values[i] for i in perm]
    if X.family != "A":
        signs = data.draw(st.lists(st.sampled_from([1, -1]), min_size=m, max_size=m))
        if X.family == "D" and signs.count(-1) % 2:
            signs[0] = -signs[0]
        vals = [s * v for s, v in zip(signs, vals)]
    return TorusElement.of(X.family, X.rank, vals)


@given(elements(), st.data())
@settings(max_examples=200, deadline=None)
def test_type_is_weyl_invariant(X, data):
    Y = weyl_act(X, data)
    assert element_type(X) == element_type(Y)
    assert canonical_form(X) == canonical_form(Y)
    assert len(annihilator(X)) == len(annihilator(Y))


@given(elements())
@settings(max_examples=200, deadline=None)
def test_annihilator_closed_form_count(X):
    t = element_type(X)
    su = sum(s * (s - 1) for s in t.parts)
    zero = {"A": 0, "B": 2 * t.J**2, "C": 2 * t.J**2, "D": 2 * t.J * (t.J - 1)}[X.family]
    assert len(annihilator(X)) == su + zero


@given(elements())
@settings(max_examples=200, deadline=None)
def test_reduce_never_increases_s(X):
    assume(X.rank > {"A": 1, "B": 2, "C": 2, "D": 2}[X.family])
    Y = reduce(X)
    assert not Y.is_zero
    assert s_value(Y) <= s_value(X)
    tx, ty = element_type(X), element_type(Y)
    if tx.dominant_zero_block and ty.dominant_zero_block:
        assert ty.S == tx.S - 2


@given(st.lists(elements(family="B", rank=4), min_size=2, max_size=4), st.randoms())
@settings(max_examples=100, deadline=None)
def test_decide_permutation_invariant(xs, rnd):
    ys = list(xs)
    rnd.shuffle(ys)
    assert decide(xs) == decide(ys)


@given(st.data())
@settings(max_examples=100, deadline=None)
def test_appending_keeps_absolute_continuity(data):
    fam = data.draw(FAMS)
    n = data.draw(st.integers({"A": 1, "B": 2, "C": 2, "D": 4}[fam], 5))
    xs = data.draw(st.lists(elements(fam, n), min_size=2, max_size=3))
    extra = data.draw(elements(fam, n))
    if decide(xs).status is Status.ABSOLUTELY_CONTINUOUS:
        assert decide(xs + [extra]).status is Status.ABSOLUTELY_CONTINUOUS
