import pytest

from orbitc.classifier import Status
from orbitc.errors import DomainError
from orbitc.parsing import parse_element as P
from orbitc.span_oracle import (
    compare_modes,
    cross_check,
    dimension_shortcut,
    eigenvalue_witness,
    verify_span,
)


def test_two_regular_b2_elements_span():
    rep = verify_span([P("B2:[1,2]"), P("B2:[3,5]")], trials=5, seed=0, mode="exact")
    assert rep.target_dim == 10
    assert rep.certificate is not None and rep.certificate.exact
    assert rep.trials[0].rank == 10


def test_su4_pair_in_d4_deficient():
    xs = [P("D4:SU(4)+"), P("D4:SU(4)+")]
    rep = verify_span(xs, trials=6, seed=1, mode="exact", stop_on_full=False)
    assert len(rep.trials) == 6
    assert all(t.rank <= 24 < 28 for t in rep.trials)
    assert rep.certificate is None


def test_d4_conjugate_su4_triple_deficient():
    rep = verify_span([P("D4:SU(4)+")] * 3, trials=4, seed=2, mode="numeric", stop_on_full=False)
    assert rep.certificate is None and rep.max_rank < 28


def test_determinism():
    xs = [P("C3:[1,2,3]"), P("C3:[1,1,2]")]
    a = verify_span(xs, trials=3, seed=9, mode="exact", stop_on_full=False)
    b = verify_span(xs, trials=3, seed=9, mode="exact", stop_on_full=False)
    assert a.to_json() == b.to_json()


def test_batches_reproduce_one_run():
    xs = [P("D4:SU(4)+"), P("D4:SU(3)-")]
    whole = verify_span(xs, trials=5, seed=4, mode="numeric", stop_on_full=False)
    parts = verify_span(xs, trials=2, seed=4, mode="numeric", stop_on_full=False).trials + \
        verify_span(xs, trials=3, seed=4, mode="numeric", stop_on_full=False, first_trial=2).trials
    assert [t.seed for t in whole.trials] == [t.seed for t in parts]
    assert [t.rank for t in whole.trials] == [t.rank for t in parts]


def test_report_json_shape():
    rep = verify_span([P("B2:[1,2]"), P("B2:[0,1]")], trials=2, seed=0, mode="numeric")
    d = rep.to_json()
    assert set(d) >= {"target_dim", "mode", "trials", "tolerance"}
    assert d["tolerance"] == 1e-8
    assert all(set(t) == {"seed", "rank"} for t in d["trials"])


def test_bad_arguments():
    with pytest.raises(DomainError):
        verify_span([P("B2:[1,2]")], trials=1)
    with pytest.raises(DomainError):
        verify_span([P("B2:[1,2]")] * 2, trials=0)
    with pytest.raises(DomainError):
        verify_span([P("B2:[1,2]")] * 2, mode="symbolic")


def test_dimension_shortcut():
    proof = dimension_shortcut([P("D4:SU(4)+"), P("D4:SU(4)-")])
    assert proof is not None and sum(proof.orbit_dims) == 24 and proof.algebra_dim == 28
    assert dimension_shortcut([P("A3:SU(2)xSU(2)")] * 2) is None
    assert dimension_shortcut([P("A5:SU(3)xSU(3)")] * 2) is None
    assert dimension_shortcut([P("C3:regular"), P("C3:regular")]) is None


def test_eigenvalue_witness_b5():
    rep = eigenvalue_witness([P("B5:B4")] * 2, trials=30, seed=0)
    assert rep.required_multiplicity == 2 and rep.all_passed


def test_eigenvalue_witness_d4_su4_triple_value():
    # two SU(4) elements with values a, b and a third noneligible partner
    xs = [P("D4:[2,2,2,2]"), P("D4:[3,3,3,3]"), P("D4:[0,0,0,5]")]
    with pytest.raises(DomainError):
        eigenvalue_witness(xs)  # eligible triple
    rep = eigenvalue_witness([P("D4:[2,2,2,2]"), P("D4:D3")], trials=30, seed=0)
    assert rep.expected == 2.0 and rep.all_passed


def test_eigenvalue_witness_refuses_eligible():
    with pytest.raises(DomainError):
        eigenvalue_witness([P("B3:[1,2,3]")] * 2)


def test_cross_check_and_modes():
    ag = cross_check([P("D4:SU(4)+"), P("D4:SU(2)xSU(2)+")], singular_trials=4)
    assert ag.verdict is Status.SINGULAR and ag.agrees
    ag = cross_check([P("D4:SU(4)+"), P("D4:SU(2)xSU(2)-")])
    assert ag.verdict is Status.ABSOLUTELY_CONTINUOUS and ag.agrees
    cmp = compare_modes([P("B3:[0,1,1]"), P("B3:[1,2,2]")], trials=3)
    assert all(c.agrees for c in cmp)
