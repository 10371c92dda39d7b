import random

import pytest
from hypothesis import given, settings, strategies as st

from helpers import VERDICTS, load, random_pair
from tstkit import semantics as sem
from tstkit import syntax as S
from tstkit import verify
from tstkit.zones import Federation


@pytest.mark.parametrize("p,q,expected", VERDICTS)
def test_corpus_verdicts(p, q, expected):
    v = verify.compliant(load(p), load(q))
    assert v.compliant is expected
    assert v.seconds < 1
    assert verify.compliant(load(q), load(p)).compliant is expected


@pytest.mark.parametrize("p,q,expected", VERDICTS)
def test_bfs_and_dfs_agree(p, q, expected):
    assert verify.compliant(load(p), load(q), order="dfs").compliant is expected


DIVERGENT = {("rec_p1", "rec_q1")}  # t grows forever while c is reset


@pytest.mark.parametrize("p,q,expected", [v for v in VERDICTS if v[:2] not in DIVERGENT])
def test_extrapolation_does_not_change_verdicts(p, q, expected):
    v = verify.compliant(load(p), load(q), extrapolate=False, max_states=200)
    assert v.compliant is expected


@pytest.mark.parametrize("p,q", sorted(DIVERGENT))
def test_extrapolation_is_needed_for_termination(p, q):
    with pytest.raises(verify.StateBudgetExceeded):
        verify.compliant(load(p), load(q), extrapolate=False, max_states=100)


@pytest.mark.parametrize("p,q", [(p, q) for p, q, ok in VERDICTS if not ok])
def test_counterexamples_replay_to_a_deadlock(p, q):
    v = verify.compliant(load(p), load(q))
    assert v.symbolic_trace and v.trace
    assert sem.is_deadlock(v.deadlock)
    p2, q2 = sem.disjoint_pair(load(p), load(q))
    assert sem.run(p2, q2, v.trace) == v.deadlock
    assert "counterexample" in v.to_json()


def test_success_state_has_no_deadlock_zone():
    _, _, net = verify.prepare(S.SUCCESS, S.SUCCESS)
    s = net.initial()
    assert net.is_success(s.loc_left, s.loc_right)
    assert verify.deadlock_zone(s, net).is_empty()
    assert verify.successors(s, net) == []


def test_urgent_location_does_not_elapse():
    _, _, net = verify.prepare(S.parse("!a{x<3}"), S.parse("?a"))
    s = net.initial()
    assert net.urgent(s.loc_left, s.loc_right)
    assert s.zone.equals(Federation.point(net.clocks, net.clocks.zero()))


def test_sync_checks_target_invariants():
    # after the synchronisation the left side must still be able to emit b before x>1
    p = S.parse("?a{;y} . !b{x<=1}")
    q = S.parse("!a{u>2} . ?b")
    assert not verify.compliant(p, q).compliant


def test_naive_dual_of_an_unadmitting_type_deadlocks():
    p1 = load("nokind_p1")  # !a{x<=2} . !b{x<=1}
    v = verify.compliant(p1, S.parse("?a{y<=2} . ?b{y<=1}"))
    assert not v.compliant
    assert sem.is_deadlock(v.deadlock)


def test_state_budget():
    with pytest.raises(verify.StateBudgetExceeded):
        verify.compliant(load("paypal"), load("alice"), max_states=2)


def test_verdict_json_shape():
    j = verify.compliant(load("rec_p1"), load("rec_q1")).to_json()
    assert j["compliant"] is True and "counterexample" not in j


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32))
def test_random_pairs(seed):
    p, q = random_pair(random.Random(seed))
    v = verify.compliant(p, q)
    assert verify.compliant(p, q, order="dfs").compliant == v.compliant
    if not v.compliant:
        assert sem.is_deadlock(v.deadlock)
