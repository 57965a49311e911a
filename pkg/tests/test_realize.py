from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

from oracles import weight_roots
from rootsuper.errors import BadIndexSets, CongruenceFails, EmptyOddPart, NotSubset
from rootsuper.realize import (
    bar,
    build_model,
    compose,
    congruence_iso,
    cor2_matrices,
    embed,
    extract_constants,
    form_algebra,
    in_osp,
    madd,
    mmul,
    model_from_name,
    mparity,
    mscale,
    osp_form,
    plain,
    reindex_iso,
    sbracket,
    supertrace,
    supertrace_form,
    supertranspose,
    to_abstract,
    ZERO,
)
from rootsuper.chevalley import verify_constants
from rootsuper.superalg import form_check, is_simple, jacobi_check, verify_homomorphism

MODELS = [("osp-odd", 0, 1), ("osp-odd", 1, 1), ("osp-odd", 1, 2), ("osp-odd", 2, 1),
          ("osp-even", 1, 1), ("osp-even", 1, 2), ("osp-even", 2, 1),
          ("sl", 2, 1), ("sl", 1, 2), ("sl", 2, 3), ("sl", 2, 2)]


def osp_dim(N, M):
    # dim so(N) + dim sp(M) + N*M
    return N * (N - 1) // 2 + M * (M + 1) // 2 + N * M


def expected_dim(kind, m, n):
    if kind == "osp-odd":
        return osp_dim(2 * m + 1, 2 * n)
    if kind == "osp-even":
        return osp_dim(2 * m, 2 * n)
    return (m + n) ** 2 - 1 - (1 if m == n else 0)


@pytest.mark.parametrize("kind,m,n", MODELS)
def test_model_dimension_and_roots(kind, m, n):
    M = build_model(kind, m, n)
    assert len(M.basis) == expected_dim(kind, m, n)
    if M.quotient:
        return
    want = weight_roots(kind, m, n)
    if kind == "sl":
        # d_j is read as minus the J-diagonal entry, so odd roots are e_i + d_j
        want = {tuple(x if i < m else -x for i, x in enumerate(v)) for v in want}
    assert M.rootsys.roots == want


@pytest.mark.parametrize("kind,m,n", MODELS)
def test_model_algebra_axioms(kind, m, n):
    M = build_model(kind, m, n)
    L = to_abstract(M)
    assert jacobi_check(L).ok
    assert form_check(L).ok


@pytest.mark.parametrize("kind,m,n", [k for k in MODELS if k[0] != "sl"])
def test_root_vectors_lie_in_osp(kind, m, n):
    M = build_model(kind, m, n)
    for a, vecs in M.root_vectors.items():
        for X in vecs:
            assert in_osp(X, M.qform)
            for D in M.cartan:
                assert sbracket(D, X) == mscale(M.weight_value(a, D), X)


def test_printed_row_correction_recorded():
    assert build_model("osp-odd", 1, 1).corrections == ()
    corr = build_model("osp-odd", 1, 2).corrections
    assert len(corr) == 1 and corr[0][0] == "dp+dq"


def test_supertrace_form_values():
    M = build_model("sl", 2, 2)
    assert M.cartan_labels == ("h1", "d1")
    h1, d1 = M.cartan
    assert supertrace_form(M, h1, h1) == 2
    assert supertrace_form(M, d1, d1) == -2
    assert supertrace_form(M, h1, d1) == 0


def test_sl22_quotient_has_two_dim_odd_spaces():
    M = build_model("sl", 2, 2)
    assert {len(M.root_vectors[a]) for a in M.rootsys.nonsingular} == {2}
    assert is_simple(to_abstract(M))


def test_bad_models():
    with pytest.raises(EmptyOddPart):
        build_model("sl", 2, 0)
    with pytest.raises(EmptyOddPart):
        build_model("osp-odd", 2, 0)
    with pytest.raises(BadIndexSets):
        build_model("sl", 1, 1)
    with pytest.raises(BadIndexSets):
        build_model("osp-even", 0, 2)
    with pytest.raises(BadIndexSets):
        build_model("gl", 1, 1)


def test_model_names():
    assert model_from_name("osp(3,2)").name == "osp(3,2)"
    assert model_from_name("osp(2,4)").kind == "osp-even"
    assert model_from_name("sl(2|3)").name == "sl(2|3)"


@pytest.mark.parametrize("name", ["osp(1,2)", "osp(3,2)", "osp(2,4)", "sl(2|1)", "osp(5,2)"])
def test_extracted_constants_pass_identities(name):
    M = model_from_name(name)
    T = extract_constants(M)
    assert verify_constants(M.rootsys, T.order, T).ok


def test_presentation_congruence():
    for m, n in ((1, 1), (1, 2)):
        S, Qm, Qe, idx = cor2_matrices(m, n)
        iso = congruence_iso(Qm, Qe, S, idx)
        assert verify_homomorphism(iso).ok
    S, Qm, Qe, idx = cor2_matrices(1, 1)
    with pytest.raises(CongruenceFails):
        congruence_iso(Qm, Qm, S, idx)


def test_reindex_iso():
    Qf = osp_form("osp-odd", 1, 2)
    j1, j2 = plain("J", 1), plain("J", 2)
    eta = {i: i for i in Qf.indices}
    eta.update({j1: j2, j2: j1, bar("J", 1): bar("J", 2), bar("J", 2): bar("J", 1)})
    assert verify_homomorphism(reindex_iso(Qf.matrix, Qf.indices, eta)).ok
    bad = {i: i for i in Qf.indices}
    bad.update({ZERO: j1, j1: ZERO})
    with pytest.raises(CongruenceFails):
        reindex_iso(Qf.matrix, Qf.indices, bad)


def test_form_algebra_dimension():
    Qf = osp_form("osp-even", 1, 1)
    assert len(form_algebra(Qf.matrix, Qf.indices).basis) == osp_dim(2, 2)


def test_embedding_chain_commutes():
    a, b, c = (build_model("osp-odd", 1, 1), build_model("osp-odd", 2, 1),
               build_model("osp-odd", 2, 2))
    ab, bc, ac = embed(a, b), embed(b, c), embed(a, c)
    assert verify_homomorphism(ab).ok and verify_homomorphism(bc).ok
    assert compose([ab, bc]).images == ac.images
    with pytest.raises(NotSubset):
        embed(c, a)
    with pytest.raises(NotSubset):
        embed(build_model("sl", 2, 1), build_model("sl", 2, 2))


# ---------------------------------------------------------------- properties

IDX = osp_form("osp-odd", 1, 1).indices
coef = st.integers(min_value=-3, max_value=3)


@st.composite
def homogeneous_matrix(draw):
    p = draw(st.sampled_from((0, 1)))
    cells = [(r, s) for r in IDX for s in IDX if (r.parity + s.parity) % 2 == p]
    picks = draw(st.lists(st.sampled_from(cells), min_size=1, max_size=4, unique=True))
    X = {c: Q(draw(coef)) for c in picks}
    return {k: v for k, v in X.items() if v}


@settings(max_examples=150, deadline=None)
@given(homogeneous_matrix(), homogeneous_matrix())
def test_supertranspose_of_product(A, B):
    if not A or not B:
        return
    sign = (-1) ** (mparity(A) * mparity(B))
    lhs = supertranspose(mmul(A, B))
    rhs = {k: sign * v for k, v in mmul(supertranspose(B), supertranspose(A)).items()}
    assert madd(lhs, (Q(-1), rhs)) == {}


@settings(max_examples=150, deadline=None)
@given(homogeneous_matrix(), homogeneous_matrix())
def test_supertrace_kills_brackets(A, B):
    assert supertrace(sbracket(A, B)) == 0
