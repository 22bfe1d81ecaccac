import random

import pytest

from d2kit import acx
from d2kit.chains import (
    AlgebraicComplex,
    NotAChainMap,
    NotSplit,
    attach_three_cells,
    certify_chain_equivalence,
    euler_characteristic,
    fox_derivative,
    homology_over_field,
    presentation_complex,
    quotient_by_split_summand,
    split_test,
    stabilize_wedge,
    validate_complex,
)
from d2kit.coset import group_model
from d2kit.groupring import GroupRingElement, GroupRingMatrix, ModelMismatch
from d2kit.presentations import parse_presentation
from d2kit.words import Word

Z2P = parse_presentation("gens: x\nrels: x^2\n")
Z5P = parse_presentation("gens: x\nrels: x^5\n")
S3P = parse_presentation("gens: a b\nrels: a^2 b^2 (a b)^3\n")
A5P = parse_presentation("gens: a b\nrels: a^2 b^3 (a b)^5\n")
TREFOILP = parse_presentation("gens: x y\nrels: (x^2 y^-3)\n")
TRIVIALP = parse_presentation("gens:\nrels:\n")

Z2M = group_model(Z2P, 100)
Z5M = group_model(Z5P, 100)
S3M = group_model(S3P, 1000)


def elem(model, *pairs):
    return GroupRingElement.from_pairs(model, pairs)


def test_fox_derivative_power():
    # d(x^5)/dx = 1 + x + x^2 + x^3 + x^4
    d = fox_derivative(Z5M, Word([(0, 1)] * 5), 0)
    assert d.to_pairs() == ((0, 1), (1, 1), (2, 1), (3, 1), (4, 1))


def test_fox_derivative_inverse_rule():
    # d(x^-1)/dx = -x^-1
    d = fox_derivative(Z5M, Word([(0, -1)]), 0)
    assert d == elem(Z5M, (Z5M.inverse[Z5M.generator_images[0]], -1))


def test_presentation_complex_z5():
    F = presentation_complex(Z5P, Z5M)
    assert F.ranks == (1, 1, 1)
    x = Z5M.generator_images[0]
    assert F.boundary(1).entry(0, 0) == elem(Z5M, (x, 1), (0, -1))
    assert F.boundary(2).entry(0, 0).coeffs == (1, 1, 1, 1, 1)
    assert F.boundary(1).compose(F.boundary(2)).is_zero()


def test_presentation_complex_symbolic_trefoil():
    F = presentation_complex(TREFOILP)
    assert F.ranks == (1, 2, 1)
    assert F.shadow(2).to_rows() == [[2], [-3]]
    assert F.shadow(1).is_zero()


def test_presentation_complex_trivial():
    F = presentation_complex(TRIVIALP)
    assert F.ranks == (1, 0, 0)


def test_presentation_complex_model_mismatch():
    with pytest.raises(ModelMismatch):
        presentation_complex(Z5P, Z2M)


def test_chain_condition_all_corpus():
    finite = [(Z2P, Z2M), (Z5P, Z5M), (S3P, S3M),
              (parse_presentation("gens: a b\nrels: (a^2 b^-2) (b^-1 a b a)\n"), None),
              (A5P, None)]
    for P, m in finite:
        if m is None:
            m = group_model(P, 20000)
        F = presentation_complex(P, m)
        assert F.boundary(1).compose(F.boundary(2)).is_zero()
    for P in [parse_presentation("gens: x\nrels:\n"),
              parse_presentation("gens: x y\nrels:\n"), TREFOILP]:
        F = presentation_complex(P)
        assert (F.shadow(1) * F.shadow(2)).is_zero()


def test_euler_characteristic_examples():
    assert euler_characteristic(presentation_complex(TREFOILP)) == 0
    assert euler_characteristic(presentation_complex(A5P)) == 2
    assert euler_characteristic(presentation_complex(Z5P, Z5M)) == 1


def test_validate_z5():
    rep = validate_complex(presentation_complex(Z5P, Z5M))
    assert rep.ok
    assert rep.exact_at_f0 and rep.exact_at_f1
    assert rep.d2_rank_q == 1       # rank of the expanded norm entry
    assert rep.ker_d2_qdim == 4     # the augmentation ideal, spanned by x-1


def test_validate_corrupted_d2():
    F = presentation_complex(Z5P, Z5M)
    bad = GroupRingMatrix(Z5M, 1, 1, [F.boundary(2).entry(0, 0) + elem(Z5M, (2, 1))])
    G = AlgebraicComplex(F.ranks, Z5M, (F.boundary(1), bad))
    rep = validate_complex(G, check_exactness=False)
    assert not rep.chain_ok
    assert any("d_1 o d_2" in f for f in rep.failures)


def test_validate_free_group_symbolic():
    rep = validate_complex(presentation_complex(
        parse_presentation("gens: x y\nrels:\n")))
    assert rep.ok and rep.mode == "symbolic"


def test_stabilize_wedge():
    F = presentation_complex(Z5P, Z5M)
    assert stabilize_wedge(F, 0) is F
    W = stabilize_wedge(F, 1)
    assert W.ranks == (1, 1, 2)
    assert euler_characteristic(W) == 2
    assert W.boundary(2).entry(0, 1).is_zero()
    T = stabilize_wedge(presentation_complex(TREFOILP), 2)
    assert euler_characteristic(T) == 2


def test_wedge_euler_property():
    rng = random.Random(4)
    for P, m in [(Z5P, Z5M), (TREFOILP, None)]:
        F = presentation_complex(P, m)
        for _ in range(10):
            n = rng.randint(0, 5)
            assert euler_characteristic(stabilize_wedge(F, n)) == \
                euler_characteristic(F) + n


def test_attach_three_cells():
    F = presentation_complex(Z2P, Z2M)
    x_minus_1 = elem(Z2M, (1, 1), (0, -1))
    X = attach_three_cells(F, GroupRingMatrix(Z2M, 1, 1, [x_minus_1]))
    assert X.top_degree == 3
    # chi of the 3-complex is (#3-cells) - chi of the base
    assert euler_characteristic(X) == 1 - euler_characteristic(F)
    with pytest.raises(NotAChainMap):
        attach_three_cells(F, GroupRingMatrix.identity(Z2M, 1))
    W = stabilize_wedge(F, 1)
    zero_col = GroupRingMatrix.zeros(Z2M, 2, 1)
    X2 = attach_three_cells(W, zero_col)
    assert euler_characteristic(X2) == 1 - euler_characteristic(W)


def test_split_inclusion():
    F = stabilize_wedge(presentation_complex(Z5P, Z5M), 1)
    d3 = GroupRingMatrix(Z5M, 2, 1,
                         [GroupRingElement.zero(Z5M), GroupRingElement.one(Z5M)])
    X = attach_three_cells(F, d3)
    rep = split_test(X)
    assert rep.splits
    assert rep.retraction.compose(d3).is_identity()


def test_split_negative_x_minus_1():
    F = presentation_complex(Z2P, Z2M)
    d3 = GroupRingMatrix(Z2M, 1, 1, [elem(Z2M, (1, 1), (0, -1))])
    X = attach_three_cells(F, d3)
    rep = split_test(X)
    assert not rep.splits
    big_ok = rep.obstruction is not None
    assert big_ok


def test_split_negative_norm():
    W = stabilize_wedge(presentation_complex(Z2P, Z2M), 1)
    d3 = GroupRingMatrix(Z2M, 2, 1,
                         [GroupRingElement.zero(Z2M), elem(Z2M, (0, 1), (1, 1))])
    X = attach_three_cells(W, d3)
    rep = split_test(X)
    assert not rep.splits and rep.obstruction is not None


def test_quotient_round_trip_structure():
    for P, m in [(Z2P, Z2M), (Z5P, Z5M), (S3P, S3M)]:
        F = presentation_complex(P, m)
        W = stabilize_wedge(F, 1)
        z, one = GroupRingElement.zero(m), GroupRingElement.one(m)
        col = [z] * (W.ranks[2] - 1) + [one]
        d3 = GroupRingMatrix(m, W.ranks[2], 1, col)
        X = attach_three_cells(W, d3)
        rep = split_test(X)
        assert rep.splits
        Q = quotient_by_split_summand(X, rep)
        assert Q.ranks == F.ranks
        assert Q.boundaries == F.boundaries
        # euler bookkeeping: mu2(out) = f2 - f3 - f1 + f0
        f0, f1, f2, f3 = X.ranks
        assert euler_characteristic(Q) == f2 - f3 - f1 + f0


def test_quotient_identity_d3_gives_rank_zero():
    F = presentation_complex(Z2P, Z2M)
    # F_2 = ZG has d2 = norm; d3 = identity is not a chain map there, so
    # build a wedge-only complex whose d2 column is zero
    W = stabilize_wedge(
        presentation_complex(parse_presentation("gens: x\nrels:\n")), 1)
    # symbolic mode cannot attach; use finite trivial group instead
    triv = group_model(parse_presentation("gens:\nrels:\n"), 10)
    base = presentation_complex(parse_presentation("gens:\nrels:\n"), triv)
    Wt = stabilize_wedge(base, 1)
    d3 = GroupRingMatrix.identity(triv, 1)
    X = attach_three_cells(Wt, d3)
    rep = split_test(X)
    assert rep.splits
    Q = quotient_by_split_summand(X, rep)
    assert Q.ranks == (1, 0, 0)


def test_quotient_requires_split():
    F = presentation_complex(Z2P, Z2M)
    d3 = GroupRingMatrix(Z2M, 1, 1, [elem(Z2M, (1, 1), (0, -1))])
    X = attach_three_cells(F, d3)
    rep = split_test(X)
    with pytest.raises(NotSplit):
        quotient_by_split_summand(X, rep)


def test_homology_examples():
    assert homology_over_field(presentation_complex(TREFOILP), "Q") == (1, 1, 0)
    a5 = presentation_complex(A5P)
    assert homology_over_field(a5, "Q") == (1, 0, 1)
    z5 = presentation_complex(Z5P, Z5M)
    assert homology_over_field(z5, 5) == (1, 1, 1)
    assert homology_over_field(z5, "Q") == (1, 0, 0)


def test_euler_poincare_identity_random_stabilizations():
    rng = random.Random(12)
    bases = [presentation_complex(Z5P, Z5M), presentation_complex(S3P, S3M),
             presentation_complex(TREFOILP), presentation_complex(A5P)]
    for F in bases:
        for _ in range(12):
            W = stabilize_wedge(F, rng.randint(0, 6))
            for field in ("Q", 2, 3, 5):
                h = homology_over_field(W, field)
                alt = sum((-1) ** i * h[i] for i in range(len(h)))
                alt_f = sum((-1) ** i * W.ranks[i] for i in range(len(W.ranks)))
                assert alt == alt_f


def test_certify_self_identity():
    F = presentation_complex(Z5P, Z5M)
    out = certify_chain_equivalence(F, F)
    assert out.kind == "certificate"
    assert out.certificate.verify(F, F)
    f0, f1, f2 = out.certificate.forward
    assert f0.is_identity() and f1.is_identity() and f2.is_identity()


def test_certify_classification_pair():
    # stabilized minimal complex vs a chi-2 presentation complex of Z/5
    F = stabilize_wedge(presentation_complex(Z5P, Z5M), 1)
    z5b = parse_presentation("gens: x y\nrels: x^5 y y\n")
    mb = group_model(z5b, 100)
    G = presentation_complex(z5b, mb)
    assert euler_characteristic(F) == euler_characteristic(G) == 2
    out = certify_chain_equivalence(F, G)
    assert out.kind == "certificate"
    assert out.certificate.verify(F, G)
    # verdicts are symmetric
    back = certify_chain_equivalence(G, F)
    assert back.kind == "certificate"
    assert back.certificate.verify(G, F)


def test_certify_chi_mismatch():
    F = presentation_complex(Z5P, Z5M)
    W = stabilize_wedge(F, 1)
    out = certify_chain_equivalence(F, W)
    assert out.kind == "not_equivalent"
    assert "euler characteristic" in out.reason
    back = certify_chain_equivalence(W, F)
    assert back.kind == "not_equivalent"


def test_certify_literal_spec_pair_distinguished():
    # stabilize_wedge(<x|x^5>,1) has chi 2 but <x,y|x^5,y> gives chi 1:
    # the two are honestly inequivalent
    F = stabilize_wedge(presentation_complex(Z5P, Z5M), 1)
    lit = parse_presentation("gens: x y\nrels: x^5 y\n")
    H = presentation_complex(lit, group_model(lit, 100))
    out = certify_chain_equivalence(F, H)
    assert out.kind == "not_equivalent"
    assert "euler characteristic differs: 2 vs 1" in out.reason


def test_certify_nonabelian_generic_path():
    s3b = parse_presentation("gens: a b\nrels: b^2 a^2 (b a)^3\n")
    A = presentation_complex(S3P, S3M)
    B = presentation_complex(s3b, group_model(s3b, 1000))
    out = certify_chain_equivalence(A, B)
    assert out.kind == "certificate"
    assert out.certificate.verify(A, B)


def test_certify_model_mismatch():
    with pytest.raises(ModelMismatch):
        certify_chain_equivalence(presentation_complex(Z5P, Z5M),
                                  presentation_complex(Z2P, Z2M))


def test_certify_budget_exhaustion_is_unknown():
    F = stabilize_wedge(presentation_complex(Z5P, Z5M), 1)
    z5b = parse_presentation("gens: x y\nrels: x^5 y y\n")
    G = presentation_complex(z5b, group_model(z5b, 100))
    out = certify_chain_equivalence(F, G, budget=1)
    assert out.kind == "unknown"
    assert "exhausted" in out.reason


def test_certify_trivial_group_degenerate_shapes():
    # < | > vs < x | x > present the trivial group with chi 1 each; the
    # lift runs through empty boundary matrices
    triv = parse_presentation("gens:\nrels:\n")
    tm = group_model(triv, 10)
    xx = parse_presentation("gens: x\nrels: x\n")
    xm = group_model(xx, 10)
    G1 = presentation_complex(triv, tm)
    G2 = presentation_complex(xx, xm)
    out = certify_chain_equivalence(G1, G2)
    assert out.kind == "certificate"
    assert out.certificate.verify(G1, G2)


def test_round_trip_two_cells():
    F = presentation_complex(Z5P, Z5M)
    W = stabilize_wedge(F, 2)
    z, one = GroupRingElement.zero(Z5M), GroupRingElement.one(Z5M)
    d3 = GroupRingMatrix(Z5M, 3, 2, [z, z, one, z, z, one])
    X = attach_three_cells(W, d3)
    rep = split_test(X)
    assert rep.splits
    Q = quotient_by_split_summand(X, rep)
    assert Q.boundaries == F.boundaries
    assert certify_chain_equivalence(Q, F).kind == "certificate"


def test_certify_q8_classification_instance():
    q8 = parse_presentation("gens: a b\nrels: (a^2 b^-2) (b^-1 a b a)\n")
    m = group_model(q8, 20000)
    F = stabilize_wedge(presentation_complex(q8, m), 1)
    dup = parse_presentation(
        "gens: a b\nrels: (a^2 b^-2) (b^-1 a b a) (b^-1 a b a)\n")
    G = presentation_complex(dup, group_model(dup, 20000))
    assert euler_characteristic(F) == euler_characteristic(G) == 2
    out = certify_chain_equivalence(F, G)
    assert out.kind == "certificate"
    assert out.certificate.verify(F, G)


def test_validate_a5_exactness():
    m = group_model(A5P, 20000)
    rep = validate_complex(presentation_complex(A5P, m))
    assert rep.ok and rep.exact_at_f0 and rep.exact_at_f1
    # by exactness at F_1, rank d_2 equals dim ker d_1 = 2|G| - (|G| - 1)
    assert rep.d2_rank_q == 61
    assert rep.ker_d2_qdim == 3 * 60 - 61


def test_acx_round_trip_finite():
    F = presentation_complex(S3P, S3M)
    text = acx.dumps(F)
    G = acx.loads(text)
    assert G.ranks == F.ranks
    assert G.boundaries == F.boundaries
    assert G.model.same_table(F.model)
    assert acx.dumps(G) == text


def test_acx_round_trip_symbolic():
    F = presentation_complex(TREFOILP)
    G = acx.loads(acx.dumps(F))
    assert G.ranks == F.ranks
    assert G.boundaries == F.boundaries
    assert G.presentation == F.presentation


def test_acx_round_trip_top3(tmp_path):
    W = stabilize_wedge(presentation_complex(Z5P, Z5M), 1)
    d3 = GroupRingMatrix(Z5M, 2, 1,
                         [GroupRingElement.zero(Z5M), GroupRingElement.one(Z5M)])
    X = attach_three_cells(W, d3)
    path = tmp_path / "x.acx"
    acx.write_acx(X, path)
    Y = acx.read_acx(path)
    assert Y.ranks == X.ranks and Y.boundaries == X.boundaries


def test_acx_bad_input():
    with pytest.raises(acx.AcxError):
        acx.loads("[ranks]\n1 1\n")
    with pytest.raises(acx.AcxError):
        acx.loads("[group]\nmode: nonsense\n[ranks]\n1\n")
