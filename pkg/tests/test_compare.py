from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

from rootsuper.chevalley import assemble_algebra, constants_from_seeds, pair_classes
from rootsuper.compare import (
    Verdict,
    conjugacy_verdict,
    model_iso,
    transport_constants,
    transport_iso,
    transport_order,
    transport_seeds,
)
from rootsuper.errors import SeedMismatch
from rootsuper.realize import chevalley_vectors, model_from_name
from rootsuper.rootsys import TypeDescriptor, build, is_isomorphic, recognize

PAIRS = [
    (TypeDescriptor("B(1,T)", (1, 2)), Q(-3, 2)),
    (TypeDescriptor("D(2,1,lambda)", (2, 1), 2), Q(1)),
    (TypeDescriptor("Cdot(0,T)", (0, 2)), Q(2)),
]


def scaled_copy(d, k):
    R = build(d)
    S = R.with_form_scaled(k)
    f = is_isomorphic(R, S)
    assert f is not None and f.k == k
    return R, S, f


@pytest.mark.parametrize("d,k", PAIRS, ids=lambda x: str(x))
def test_transported_order_matches_positivity(d, k):
    R, S, f = scaled_copy(d, k)
    T = constants_from_seeds(R)
    order = transport_order(T.order, f)
    for a in R.nonzero:
        assert T.order.positive(a) == order.positive(f(a))


@pytest.mark.parametrize("d,k", PAIRS, ids=lambda x: str(x))
def test_transport_gives_isomorphism(d, k):
    R, S, f = scaled_copy(d, k)
    T, T2 = transport_constants(R, S, f)
    for (a, b), v in T.N.items():
        assert T2.N[(f(a), f(b))] == v
    g, L = assemble_algebra(R, T), assemble_algebra(S, T2)
    m = transport_iso(g, L, f, T, T2)
    assert m.iso


def test_wrong_scale_rejected():
    R, S, f = scaled_copy(TypeDescriptor("B(1,T)", (1, 1)), Q(2))
    T = constants_from_seeds(R)
    T2 = constants_from_seeds(S, transport_order(T.order, f), transport_seeds(T.seeds, f))
    with pytest.raises(SeedMismatch):
        transport_iso(assemble_algebra(R, T), assemble_algebra(S, T2), f, T, T2)


@pytest.mark.parametrize("name", ["osp(1,2)", "osp(3,2)", "osp(2,4)", "sl(2|1)"])
def test_model_isomorphism(name):
    M = model_from_name(name)
    S = M.rootsys
    R = build(recognize(S))
    f = is_isomorphic(R, S)
    T = constants_from_seeds(R)
    ex = chevalley_vectors(M, transport_order(T.order, f), transport_seeds(T.seeds, f), T.rScale / f.k)
    m = model_iso(M, ex, R, T, f)
    assert m.iso


def test_verdicts():
    B22 = build(TypeDescriptor("B(T,T')", (2, 2)))
    D22 = build(TypeDescriptor("D(2,T)", (2, 2)))
    assert conjugacy_verdict(B22, D22) is Verdict.NotConjugate
    assert conjugacy_verdict(B22, B22.with_form_scaled(-1)) is Verdict.Conjugate


@settings(max_examples=15, deadline=None)
@given(st.randoms(use_true_random=False),
       st.fractions(min_value=-4, max_value=4, max_denominator=4).filter(bool))
def test_transport_with_random_seeds(rnd, k):
    R, S, f = scaled_copy(TypeDescriptor("B(1,T)", (1, 1)), k)
    seeds = {p: Q(rnd.randint(1, 7) * rnd.choice([-1, 1]), rnd.randint(1, 7))
             for p in pair_classes(R).extraspecial}
    T = constants_from_seeds(R, None, seeds)
    T, T2 = transport_constants(R, S, f, T)
    assert transport_iso(assemble_algebra(R, T), assemble_algebra(S, T2), f, T, T2).iso
