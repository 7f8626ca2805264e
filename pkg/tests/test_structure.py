import itertools

import pytest
from hypothesis import given, settings, strategies as st

from fusionring.catalog import (NAMED_GROUPS, _mat_mul_mod, cyclic, direct_product, fibonacci,
                                group_from_generators, group_ring, ising, rep_ring,
                                special_linear_2, symmetric)
from fusionring.errors import DecompositionMismatch, PreconditionError, SearchBudgetExceeded
from fusionring.fpdim import fp_dim_vector
from fusionring.structure import (TypeVector, adjoint_subring, all_subrings, find_subrings_of_type,
                                  invertibles, nichols_richmond, nilpotency_chain, stabilizer,
                                  subring_generated, type_of, universal_grading, xxstar_check)

from corpus import full_corpus, integral_corpus, named_rep_ring, rep_s3


def gl23():
    gens = [((1, 1), (0, 1)), ((0, 1), (1, 0)), ((2, 0), (0, 1))]
    return group_from_generators("GL(2,3)", gens, _mat_mul_mod(3), ((1, 0), (0, 1)))


def brute_subrings(r):
    """Every unit-containing subset closed under dual and products."""
    T = r.tensor
    others = [i for i in range(r.rank) if i != r.unit]
    out = []
    for k in range(len(others) + 1):
        for extra in itertools.combinations(others, k):
            S = set(extra) | {r.unit}
            if any(r.dual[i] not in S for i in S):
                continue
            if all(T[i, j, m] == 0 or m in S for i in S for j in S for m in range(r.rank)):
                out.append(tuple(sorted(S)))
    return sorted(out, key=lambda s: (len(s), s))


# -- invertibles, stabilizers, X X* -----------------------------------------

def test_invertibles():
    G = invertibles(group_ring(symmetric(3)))
    assert G.order == 6 and not G.is_cyclic()
    H = invertibles(rep_s3())
    assert H.subring.members == (0, 1) and H.is_cyclic()
    assert invertibles(fibonacci()).subring.members == (0,)


def test_stabilizers():
    assert stabilizer(rep_s3(), "X") == (0, 1)
    r = ising()
    assert stabilizer(r, "sigma") == (r.index("1"), r.index("psi"))
    Z = group_ring(cyclic(6))
    assert all(stabilizer(Z, g) == (Z.unit,) for g in range(6))


@pytest.mark.parametrize("name, r", integral_corpus(), ids=[n for n, _ in integral_corpus()])
def test_stabilizer_order_divides_dim_squared(name, r):
    dims = fp_dim_vector(r)
    for i, d in enumerate(dims.certified_integers):
        assert d is not None
        assert (d * d) % len(stabilizer(r, i)) == 0


def test_xxstar():
    rep = xxstar_check(rep_s3(), "X")
    assert rep.invertible_part == (0, 1) and rep.remainder == ((2, 1),)
    Z = group_ring(cyclic(4))
    g = xxstar_check(Z, 1)
    assert g.invertible_part == (0,) and g.remainder == ()
    r = ising()
    s = xxstar_check(r, "sigma")
    assert s.invertible_part == (0, 1) and s.remainder == ()


def test_xxstar_mismatch_on_doubled_invertible():
    r = rep_s3()
    bad = r.replace(nconsts={**r.nconsts, (2, 2, 1): 2})
    with pytest.raises(DecompositionMismatch):
        xxstar_check(bad, "X")


# -- subrings ---------------------------------------------------------------

def test_subring_generated_examples():
    r = rep_s3()
    assert subring_generated(r, ()).members == (0,)
    assert subring_generated(r, {2}).members == (0, 1, 2)
    Z6 = group_ring(cyclic(6))
    g2 = 2  # cyclic(n) lists g^k at index k
    assert subring_generated(Z6, {g2}).members == (0, 2, 4)


@pytest.mark.parametrize("name, r", [c for c in full_corpus() if c[1].rank <= 9],
                         ids=[n for n, r in full_corpus() if r.rank <= 9])
def test_all_subrings_matches_brute_force(name, r):
    assert [S.members for S in all_subrings(r)] == brute_subrings(r)


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_closure_idempotent_and_monotone(data):
    name, r = data.draw(st.sampled_from(full_corpus()))
    A = data.draw(st.sets(st.integers(0, r.rank - 1), max_size=3))
    B = A | data.draw(st.sets(st.integers(0, r.rank - 1), max_size=2))
    SA = subring_generated(r, A)
    assert subring_generated(r, SA.members).members == SA.members
    assert set(SA.members) <= set(subring_generated(r, B).members)


@pytest.mark.parametrize("name, r", full_corpus(), ids=[n for n, _ in full_corpus()])
def test_adjoint_is_least_containing_xxstar(name, r):
    ad = set(adjoint_subring(r).members)
    constituents = {k for i in range(r.rank) for k in range(r.rank)
                    if r.N(i, r.dual[i], k) > 0}
    assert constituents <= ad
    for S in all_subrings(r):
        if constituents <= set(S.members):
            assert ad <= set(S.members)


def test_adjoint_examples():
    assert adjoint_subring(group_ring(symmetric(3))).members == (0,)
    assert adjoint_subring(rep_s3()).members == (0, 1, 2)
    assert adjoint_subring(ising()).labels == ["1", "psi"]


# -- gradings ---------------------------------------------------------------

def test_grading_examples():
    g = universal_grading(group_ring(cyclic(5)))
    assert g.order == 5 and g.is_cyclic() and all(len(b) == 1 for b in g.blocks)
    assert universal_grading(rep_s3()).order == 1
    r = ising()
    g = universal_grading(r)
    assert g.blocks == ((0, 1), (2,))
    assert g.order == 2 and g.is_cyclic()
    assert g.block_dims == pytest.approx((2, 2), abs=1e-9)


@pytest.mark.parametrize("name, r", full_corpus(), ids=[n for n, _ in full_corpus()])
def test_grading_invariants(name, r):
    dims = fp_dim_vector(r, certify=False)
    g = universal_grading(r, dims)
    members = sorted(i for b in g.blocks for i in b)
    assert members == list(range(r.rank))
    assert set(g.blocks[0]) == set(adjoint_subring(r).members)
    assert g.order * g.block_dims[0] == pytest.approx(dims.total, abs=1e-6)
    assert max(g.block_dims) - min(g.block_dims) <= 1e-6
    where = {i: a for a, b in enumerate(g.blocks) for i in b}
    for i, j in itertools.product(range(r.rank), repeat=2):
        for k in range(r.rank):
            if r.N(i, j, k):
                assert where[k] == g.table[where[i]][where[j]]
        assert where[r.dual[i]] == g.inverse(where[i])


POINTED = [(n, r) for n, r in integral_corpus() if invertibles(r).order == r.rank]


@pytest.mark.parametrize("name, r", POINTED, ids=[n for n, _ in POINTED])
def test_pointed_rings_grade_by_themselves(name, r):
    assert universal_grading(r).order == r.rank
    assert adjoint_subring(r).members == (r.unit,)


# -- nilpotency -------------------------------------------------------------

def test_nilpotency_examples():
    c = nilpotency_chain(group_ring(cyclic(4)))
    assert c.subrings == ((0, 1, 2, 3), (0,)) and c.is_cyclically_nilpotent
    c = nilpotency_chain(group_ring(symmetric(3)))
    assert c.is_nilpotent and not c.is_cyclically_nilpotent
    c = nilpotency_chain(rep_s3())
    assert c.subrings == ((0, 1, 2),) and not c.is_nilpotent
    c = nilpotency_chain(named_rep_ring("A5"))
    assert len(c.subrings) == 1 and not c.is_nilpotent
    c = nilpotency_chain(ising())
    assert c.subrings == ((0, 1, 2), (0, 1), (0,))
    assert c.groups == ((2, True), (2, True))
    assert c.is_cyclically_nilpotent


def test_nilpotency_of_rep_d4_chain():
    # Rep(D4): adjoint is the four invertibles, then the unit.
    c = nilpotency_chain(named_rep_ring("D4"))
    assert [len(s) for s in c.subrings] == [5, 4, 1]
    assert c.groups[0] == (2, True) and c.groups[1] == (4, False)


# -- types ------------------------------------------------------------------

def test_type_examples():
    assert str(type_of(rep_s3())) == "(1,2;2,1)"
    assert str(type_of(group_ring(cyclic(1)))) == "(1,1)"
    assert str(type_of(named_rep_ring("A5"))) == "(1,1;3,2;4,1;5,1)"
    assert str(type_of(ising())) == "(1,2;1.41421356237,1)"


def test_type_vector_parse_round_trip():
    for s in ("(1,2;2,4;3,4;6,1)", "(1,1)", "(1,45;3,5)"):
        t = TypeVector.parse(s)
        assert str(t) == s
    with pytest.raises(ValueError):
        TypeVector(((2, 1),))
    with pytest.raises(ValueError):
        TypeVector(((1, 1), (3, 1), (2, 1)))


def test_find_subrings_of_type():
    r = rep_s3()
    assert [S.members for S in find_subrings_of_type(r, "(1,2)")] == [(0, 1)]
    assert find_subrings_of_type(r, "(1,3;3,1)") == []
    A5 = named_rep_ring("A5")
    found = find_subrings_of_type(A5, "(1,1;3,2;4,1;5,1)")
    assert [S.members for S in found] == [tuple(range(5))]


def test_find_subrings_budget():
    with pytest.raises(SearchBudgetExceeded):
        find_subrings_of_type(rep_ring(gl23()), "(1,2;2,1;3,2)", budget=3)


# -- Nichols-Richmond -------------------------------------------------------

def test_nichols_richmond_case1():
    rep = nichols_richmond(rep_s3(), "X")
    assert rep.cases == (1,) and rep.stabilizer == (0, 1) and rep.status == "ok"
    D5 = named_rep_ring("D5")
    dims = fp_dim_vector(D5)
    for i, v in enumerate(dims.values):
        if round(v) == 2:
            assert 1 in nichols_richmond(D5, i).cases


def test_nichols_richmond_case2_gl23():
    r = rep_ring(gl23())
    dims = fp_dim_vector(r)
    faithful = [i for i, v in enumerate(dims.values)
                if round(v) == 2 and len(stabilizer(r, i)) == 1]
    assert len(faithful) == 2
    for i in faithful:
        rep = nichols_richmond(r, i, dims)
        assert rep.cases == (2,)
        assert rep.subring_dimensions == (24,)


def test_nichols_richmond_case3_binary_groups():
    r = named_rep_ring("SL2(3)")
    dims = fp_dim_vector(r)
    twos = [i for i, v in enumerate(dims.values) if round(v) == 2]
    reps = [nichols_richmond(r, i, dims) for i in twos]
    assert any(rep.cases == (3,) and rep.subring_dimensions == (12,) for rep in reps)
    SL25 = rep_ring(special_linear_2(5))
    d = fp_dim_vector(SL25)
    i = next(i for i, v in enumerate(d.values) if round(v) == 2)
    rep = nichols_richmond(SL25, i, d)
    assert 3 in rep.cases and 60 in rep.subring_dimensions


def test_nichols_richmond_preconditions():
    A4 = named_rep_ring("A4")   # type (1,3;3,1)
    with pytest.raises(PreconditionError):
        nichols_richmond(A4, 3)
    with pytest.raises(PreconditionError):
        nichols_richmond(ising(), "sigma")
    with pytest.raises(PreconditionError):
        nichols_richmond(rep_s3(), "s")
