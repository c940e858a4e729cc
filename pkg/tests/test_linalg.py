from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from helpers import word_envelope_index
from nlsa import GF, QQ, GradedSubspace, LinearOperator, envelope_nilpotency, fitting_decomposition, operator_nilpotency
from nlsa.errors import AmbientMismatch, ParityError
from nlsa.linalg import echelonize, identity, matmul, nullspace, rank, rref

F2, F3 = GF(2), GF(3)


def test_echelon_drops_zero_rows():
    assert echelonize(F3, [[0, 1], [0, 2]]) == ((0, 1),)


def test_echelon_identity_and_zero():
    assert echelonize(F3, identity(F3, 3)) == identity(F3, 3)
    assert echelonize(F3, [[0, 0], [0, 0]]) == ()


def test_subspace_examples():
    par = (0, 0)
    U = GradedSubspace.span(F2, par, [(1, 0)])
    W = GradedSubspace.span(F2, par, [(0, 1)])
    Z = GradedSubspace.zero(F2, par)
    assert U + Z == U
    assert (U & W).is_zero
    assert U + GradedSubspace.span(F2, par, [(1, 1)]) == GradedSubspace.full(F2, par)


def test_ambient_mismatch():
    with pytest.raises(AmbientMismatch):
        GradedSubspace.full(F2, (0,)) + GradedSubspace.full(F2, (0, 1))
    with pytest.raises(AmbientMismatch):
        envelope_nilpotency([identity(F2, 2), identity(F2, 3)], F2)


def test_span_splits_inhomogeneous_vectors():
    U = GradedSubspace.span(F3, (0, 1), [(1, 1)])
    assert U == GradedSubspace.full(F3, (0, 1))


def test_operator_nilpotency_examples():
    upper = ((0, 1, 1), (0, 0, 1), (0, 0, 0))
    assert operator_nilpotency(upper, F3) == 3
    assert operator_nilpotency(identity(F3, 3), F3) is None


def test_parity_checked_on_operators():
    with pytest.raises(ParityError):
        LinearOperator(F3, ((0, 1), (0, 0)), (0, 1), 0)
    LinearOperator(F3, ((0, 1), (0, 0)), (0, 1), 1)


def test_fitting_examples():
    par = (0, 0, 1)
    nil = LinearOperator(F3, ((0, 1, 0), (0, 0, 0), (0, 0, 0)), par, 0)
    V0, V1 = fitting_decomposition(nil)
    assert V0 == GradedSubspace.full(F3, par) and V1.is_zero
    V0, V1 = fitting_decomposition(LinearOperator(F3, identity(F3, 3), par, 0))
    assert V0.is_zero and V1 == GradedSubspace.full(F3, par)
    proj = LinearOperator(F3, ((0, 0, 0), (0, 0, 0), (0, 0, 1)), par, 0)
    V0, V1 = fitting_decomposition(proj)
    assert V0 == GradedSubspace.span(F3, par, [(1, 0, 0), (0, 1, 0)])
    assert V1 == GradedSubspace.span(F3, par, [(0, 0, 1)])


def test_odd_fitting_needs_flag():
    odd = LinearOperator(F3, ((0, 1), (1, 0)), (0, 1), 1)
    with pytest.raises(ParityError):
        fitting_decomposition(odd)
    V0, V1 = fitting_decomposition(odd, allow_odd=True)
    assert V0.is_zero and V1.dim == 2


def test_envelope_examples():
    a = ((0, 1, 0), (0, 0, 0), (0, 0, 0))
    b = ((0, 0, 0), (0, 0, 1), (0, 0, 0))
    assert envelope_nilpotency([a], F3) == 2
    assert envelope_nilpotency([identity(F3, 2)], F3) is None
    assert envelope_nilpotency([a, b], F3) == 3
    assert envelope_nilpotency([a, b], F3) == word_envelope_index(F3, [a, b], 3)
    # each generator nilpotent, envelope not
    assert envelope_nilpotency([((0, 1), (0, 0)), ((0, 0), (1, 0))], F3) is None


# ---------------------------------------------------------------------------
# properties
# ---------------------------------------------------------------------------
def _vectors(p, d, k):
    return st.lists(st.lists(st.integers(0, p - 1), min_size=d, max_size=d), max_size=k)


@st.composite
def subspace_pairs(draw):
    p = draw(st.sampled_from([2, 3, 5]))
    d = draw(st.integers(1, 5))
    par = tuple(draw(st.lists(st.integers(0, 1), min_size=d, max_size=d)))
    F = GF(p)
    U = GradedSubspace.span(F, par, draw(_vectors(p, d, 4)))
    W = GradedSubspace.span(F, par, draw(_vectors(p, d, 4)))
    return U, W


@given(subspace_pairs())
def test_dimension_formula(pair):
    U, W = pair
    assert (U + W).dim + (U & W).dim == U.dim + W.dim
    assert U & W <= U <= U + W
    assert U + W == W + U and U & W == W & U


@given(subspace_pairs())
def test_reduced_echelon_invariants(pair):
    U, _ = pair
    for rows in (U.even, U.odd):
        leads = [next(i for i, x in enumerate(r) if x) for r in rows]
        assert leads == sorted(set(leads))
        for r, c in zip(rows, leads):
            assert r[c] == 1
            assert sum(1 for other in rows if other[c]) == 1
    again = GradedSubspace.span(U.field, U.parities, U.basis)
    assert again == U


@given(st.sampled_from([2, 3, 5]), st.integers(1, 4), st.integers(1, 5), st.data())
def test_rank_nullity(p, rows, cols, data):
    F = GF(p)
    m = data.draw(st.lists(st.lists(st.integers(0, p - 1), min_size=cols, max_size=cols), min_size=rows, max_size=rows))
    ker = nullspace(F, m, cols)
    assert rank(F, m) + len(ker) == cols
    for x in ker:
        assert all(F.reduce(sum(a * b for a, b in zip(row, x))) == 0 for row in m)


@given(st.lists(st.lists(st.fractions(max_denominator=5), min_size=3, max_size=3), max_size=4))
def test_rational_rref_is_idempotent(rows):
    red, piv = rref(QQ, rows, 3)
    assert rref(QQ, red, 3) == (red, piv)


@st.composite
def operator_sets(draw):
    p = draw(st.sampled_from([2, 3]))
    d = draw(st.integers(1, 4))
    g = draw(st.integers(1, 3))
    upper = draw(st.booleans())
    mats = []
    for _ in range(g):
        m = [[draw(st.integers(0, p - 1)) if (j > i or not upper) else 0 for j in range(d)] for i in range(d)]
        mats.append(tuple(tuple(r) for r in m))
    return GF(p), d, mats


@settings(max_examples=150)
@given(operator_sets())
def test_envelope_matches_word_oracle(case):
    F, d, mats = case
    assert envelope_nilpotency(mats, F) == word_envelope_index(F, mats, d)


@given(operator_sets())
def test_fitting_properties(case):
    F, d, mats = case
    f = LinearOperator(F, mats[0], (0,) * d, 0)
    V0, V1 = fitting_decomposition(f)
    assert V0.dim + V1.dim == d
    assert (V0 & V1).is_zero
    # f is nilpotent on V0 and invertible on V1
    g = f.power(d)
    assert all(not any(g(v)) for v in V0.basis)
    image = GradedSubspace.span(F, f.parities, [f(v) for v in V1.basis])
    assert image == V1
