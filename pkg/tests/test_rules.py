import pytest
from hypothesis import given, settings, strategies as st

from fusionring.catalog import (cyclic, direct_product, fibonacci, group_ring, ising,
                                quaternion)
from fusionring.rules import (RULES, DimensionProfile, Outcome, classify_dimension, classify_ring,
                              factorize, is_prime, join, nichols_richmond_report)

from corpus import named_rep_ring, rep_s3

RANK = {Outcome.Solvable: 3, Outcome.GroupTheoretical: 3,
        Outcome.SolvableOrGroupTheoretical: 2, Outcome.WeaklyGroupTheoretical: 1,
        Outcome.Unknown: 0}


def trial_factor(n):
    out, p = [], 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def is_p_a_q_b(n):
    return len(trial_factor(n)) <= 2


# -- factorisation ----------------------------------------------------------

def test_factorize_examples():
    assert factorize(84).factorization == ((2, 2), (3, 1), (7, 1))
    assert factorize(90).factorization == ((2, 1), (3, 2), (5, 1))
    assert factorize(1).factorization == ()


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 10**7))
def test_factorize_matches_trial_division(n):
    assert factorize(n).factorization == trial_factor(n)


def test_large_factorization_and_primality():
    p = 999999000001    # prime
    assert is_prime(p) and factorize(p).factorization == ((p, 1),)
    assert factorize(2**39).factorization == ((2, 39),)
    assert not is_prime(561) and not is_prime(1)
    with pytest.raises(ValueError):
        factorize(0)
    with pytest.raises(ValueError):
        DimensionProfile(12, ((2, 1), (3, 1)))


# -- lattice ----------------------------------------------------------------

def test_join():
    assert join([]) is Outcome.Unknown
    assert join([Outcome.WeaklyGroupTheoretical, Outcome.SolvableOrGroupTheoretical]) \
        is Outcome.SolvableOrGroupTheoretical
    assert join([Outcome.GroupTheoretical, Outcome.Solvable]) is Outcome.Solvable
    assert join([Outcome.GroupTheoretical, Outcome.WeaklyGroupTheoretical]) \
        is Outcome.GroupTheoretical


def test_rules_have_distinct_ids_and_citations():
    assert [r.id for r in RULES] == [f"R{k}" for k in range(1, 10)]
    assert all(r.citation for r in RULES)


# -- dimension verdicts -----------------------------------------------------

def test_72_solvable_by_r1():
    v = classify_dimension(factorize(72))
    assert v.outcome is Outcome.Solvable
    assert v.trace[0].rule == "R1" and v.trace[0].binding == {"p": 2, "a": 3, "q": 3, "b": 2}


def test_90():
    v = classify_dimension(factorize(90))
    assert v.outcome is Outcome.Solvable and "R4" in v.fired()
    w = classify_dimension(factorize(90, weakly_integral=True))
    assert {"R4", "R6", "R7"} <= set(w.fired())


def test_84_not_upgraded():
    v = classify_dimension(factorize(84, weakly_integral=True))
    assert v.outcome is Outcome.SolvableOrGroupTheoretical
    assert "R3" in v.fired()


def test_60():
    v = classify_dimension(factorize(60, weakly_integral=True))
    assert v.outcome is Outcome.SolvableOrGroupTheoretical
    assert {"R5", "R6"} <= set(v.fired())
    assert classify_dimension(factorize(60)).outcome is Outcome.Unknown


def test_pqr():
    v = classify_dimension(factorize(2 * 7 * 11))
    assert v.outcome is Outcome.Solvable and v.fired()[0] == "R2"
    # R2 makes the category weakly group-theoretical, and 154 = 2 * 77 then fires R7.
    assert v.fired() == ["R2", "R7"]


def test_r8_binding():
    v = classify_dimension(factorize(3 * 3 * 7 * 11, weakly_group_theoretical=True))
    assert "R8" in v.fired()
    entry = next(t for t in v.trace if t.rule == "R8")
    assert entry.binding == {"p": 3, "q": 7, "r": 11}


def test_r9_strictly_weakly_integral():
    v = classify_dimension(factorize(60, weakly_integral=True, integral=False))
    assert v.outcome is Outcome.Solvable and "R9" in v.fired()


def test_unknown_has_empty_trace():
    v = classify_dimension(factorize(2 * 3 * 5 * 7 * 11))
    assert v.outcome is Outcome.Unknown and v.trace == ()


@pytest.mark.parametrize("N", range(1, 120))
def test_below_120_weakly_integral_never_unknown(N):
    v = classify_dimension(factorize(N, weakly_integral=True))
    assert v.outcome in (Outcome.Solvable, Outcome.SolvableOrGroupTheoretical)
    if is_p_a_q_b(N):
        assert v.outcome is Outcome.Solvable and "R1" in v.fired()


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 10**5).filter(lambda n: n % 2 == 1))
def test_r7_fires_for_odd_weakly_gt(N):
    v = classify_dimension(factorize(N, weakly_group_theoretical=True))
    assert "R7" in v.fired()


FLAG = st.sampled_from([None, True])


@settings(max_examples=300, deadline=None)
@given(N=st.integers(1, 400), wi=FLAG, wgt=FLAG, integral=st.sampled_from([None, False, True]))
def test_monotone_in_flags(N, wi, wgt, integral):
    base = classify_dimension(factorize(N, integral=integral))
    more = classify_dimension(factorize(N, integral=integral, weakly_integral=wi,
                                        weakly_group_theoretical=wgt))
    assert RANK[more.outcome] >= RANK[base.outcome]
    assert set(base.fired()) <= set(more.fired())


def test_deterministic_traces():
    a = classify_dimension(factorize(90, weakly_integral=True))
    b = classify_dimension(factorize(90, weakly_integral=True))
    assert a == b


# -- ring verdicts ----------------------------------------------------------

def test_classify_pointed_order_8():
    res = classify_ring(group_ring(direct_product(cyclic(4), cyclic(2))))
    assert res.pointed and res.verdict.outcome is Outcome.Solvable
    fired = res.verdict.fired()
    assert "S1" in fired and "R1" in fired
    assert any("pointed" in a for a in res.verdict.annotations)
    assert classify_ring(group_ring(quaternion())).verdict.outcome is Outcome.Solvable


def test_classify_rep_s3():
    res = classify_ring(rep_s3())
    assert res.verdict.outcome is Outcome.Solvable and "R1" in res.verdict.fired()
    assert res.integral and res.fpdim == pytest.approx(6)


def test_classify_ising():
    res = classify_ring(ising())
    assert res.verdict.outcome is Outcome.Solvable and "R1" in res.verdict.fired()
    assert res.chain.is_cyclically_nilpotent
    assert any("cyclically nilpotent" in a for a in res.verdict.annotations)
    assert res.weakly_integral and res.integral is False


def test_classify_fibonacci_unknown():
    res = classify_ring(fibonacci())
    assert res.verdict.outcome is Outcome.Unknown
    assert not res.weakly_integral


def test_classify_rep_a5():
    res = classify_ring(named_rep_ring("A5"))
    assert res.verdict.outcome is Outcome.SolvableOrGroupTheoretical


def test_nichols_richmond_annotations():
    assert nichols_richmond_report(rep_s3(), "X").startswith("case (1): G[X] = Z_2")
    assert nichols_richmond_report(named_rep_ring("A5"), 0).startswith("not applicable")
    assert nichols_richmond_report(named_rep_ring("A4"), 3).startswith("not applicable")
