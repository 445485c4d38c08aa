"""Circular sequences, fundamental sequences, splitting, decomposition."""

import random

import pytest

from homstab.errors import NotAComplex, UnsupportedRing
from homstab.exactlin import ZZ, Zmod
from homstab.fpmod import (
    canonical_invariants, cyclic, direct_sum, free_module, identity_morphism,
    iso_test, make_morphism, zero_morphism,
)
from homstab.funcalc import (
    FP, ExtFixedFirst, HomContra, HomCov, TensorLeft, sub_stabilize,
)
from homstab.fundseq import (
    circular_sequence, contra_fund, hereditary_decomposition, is_exact_at,
    left_fund_cov, right_fund_cov, short_exact, splitting_test,
)
from homstab.instances import random_composable_pair, random_module
from homstab.resolve import cosyzygy, ext, tor

R4 = Zmod(4)
Z = free_module(ZZ, 1)
Z2 = cyclic(ZZ, 2)
Z2m4 = cyclic(R4, 2)
F4 = free_module(R4, 1)


def invs(m):
    return canonical_invariants(m)


def test_circular_identity_pair():
    rep = circular_sequence(identity_morphism(Z2), identity_morphism(Z2))
    assert rep.exact_everywhere()
    assert all(n.module.is_zero() for n in rep.nodes)


def test_circular_two_times_two():
    two = make_morphism(Z, Z, [[2]])
    rep = circular_sequence(two, two)
    assert rep.exact_everywhere()
    mods = [n.module for n in rep.nodes]
    assert all(m.is_zero() for m in mods[:4])
    assert invs(mods[4]) == ((2,), 0)
    assert invs(mods[5]) == ((4,), 0)
    assert invs(mods[6]) == ((2,), 0)


def test_circular_epi_then_mono():
    e = make_morphism(Z, Z2, [[1]])
    m = make_morphism(Z2, Z2, [[1]])
    rep = circular_sequence(e, m)
    assert rep.exact_everywhere()
    assert iso_test(rep.node_module("ker gf"), rep.node_module("ker f"))
    assert iso_test(rep.node_module("cok gf"), rep.node_module("cok g"))


def test_circular_random_pairs():
    rng = random.Random(1)
    for ring in (ZZ, R4, Zmod(12)):
        for _ in range(8):
            f, g = random_composable_pair(rng, ring)
            rep = circular_sequence(f, g)
            assert rep.exact_everywhere(), rep.failures()


def test_is_exact_at_examples():
    two = make_morphism(Z, Z, [[2]])
    proj = make_morphism(Z, Z2, [[1]])
    assert is_exact_at(two, proj)
    # ker(0) = Z strictly contains im(2) = 2Z
    assert not is_exact_at(two, zero_morphism(Z, Z))
    with pytest.raises(NotAComplex):
        is_exact_at(two, two)


def test_right_fund_homcov_collapse():
    a = Z2m4
    rng = random.Random(3)
    for _ in range(3):
        b = random_module(rng, R4, 2, 2, 5)
        rep = right_fund_cov(HomCov(a), b, 2)
        assert rep.exact_everywhere(), rep.failures()
        for node in rep.nodes:
            if node.kind == "stab":
                assert node.module.is_zero()
        for i in (1, 2):
            assert iso_test(rep.node_module(f"S^{i}F(b)"), ext(a, b, i))
            assert iso_test(rep.node_module(f"R^{i}F(b)"), ext(a, b, i))


def test_right_fund_tensor_collapse():
    a = Z2m4
    b = Z2m4
    rep = right_fund_cov(TensorLeft(a), b, 2)
    assert rep.exact_everywhere(), rep.failures()
    for node in rep.nodes:
        if node.kind == "satellite":
            assert node.module.is_zero()
    for i in (1, 2):
        lhs = rep.node_module(f"R^{i}F(b)")
        rhs, _ = sub_stabilize(TensorLeft(a), cosyzygy(b, i + 1))
        assert iso_test(lhs, rhs)
        assert invs(lhs) == ((2,), 0)


def test_right_fund_on_injective_argument():
    rep = right_fund_cov(TensorLeft(Z2m4), F4, 1)
    assert rep.exact_everywhere()
    assert rep.node_module("Fbar(b)").is_zero()
    assert iso_test(rep.node_module("R^0F(b)"), rep.node_module("F(b)"))


def test_right_fund_over_Z_fragment():
    f = FP(make_morphism(Z, Z, [[2]]), half_exact=True)
    rep = right_fund_cov(f, cyclic(ZZ, 4), 3)
    assert rep.metadata.get("truncated")
    assert rep.exact_everywhere()
    with pytest.raises(UnsupportedRing):
        right_fund_cov(TensorLeft(Z2), Z2, 1)


def test_left_fund_tensor_collapse():
    rng = random.Random(5)
    for ring in (ZZ, R4):
        a = random_module(rng, ring, 2, 2, 4)
        b = random_module(rng, ring, 2, 2, 4)
        rep = left_fund_cov(TensorLeft(a), b, 2)
        assert rep.exact_everywhere(), rep.failures()
        for node in rep.nodes:
            if node.kind == "stab":
                assert node.module.is_zero()
        for i in (1, 2):
            assert iso_test(rep.node_module(f"S_{i}F(b)"), tor(a, b, i))
            assert iso_test(rep.node_module(f"L_{i}F(b)"), tor(a, b, i))


def test_left_fund_hom_over_Z():
    # Hom is left-exact, hence half-exact: full exactness; the syzygy of Z/4
    # is free, so Hom(Z/2,-) modulo projectives vanishes there and the
    # sequence collapses to 0 -> L_0 -> F(b) -> Funder(b) -> 0
    rep = left_fund_cov(HomCov(Z2), cyclic(ZZ, 4), 2)
    assert rep.exact_everywhere(), rep.failures()
    assert rep.node_module("Funder(O^1b)").is_zero()
    assert rep.node_module("S_1F(b)").is_zero()
    assert invs(rep.node_module("Funder(b)")) == ((2,), 0)


def test_left_fund_on_projective_argument():
    rep = left_fund_cov(HomCov(Z2m4), F4, 1)
    assert rep.exact_everywhere()
    assert rep.node_module("Funder(b)").is_zero()


def test_contra_fund_homcontra_collapse():
    rng = random.Random(7)
    c = Z2m4
    for ring, cc in ((ZZ, Z2), (R4, c)):
        for _ in range(3):
            b = random_module(rng, ring, 2, 2, 4)
            rep = contra_fund(HomContra(cc), b, 2, "right")
            assert rep.exact_everywhere(), rep.failures()
            for node in rep.nodes:
                if node.kind == "stab":
                    assert node.module.is_zero()
            for i in (1, 2):
                assert iso_test(rep.node_module(f"S^{i}F(b)"), ext(b, cc, i))
                assert iso_test(rep.node_module(f"R_{i}F(b)"), ext(b, cc, i))


def test_contra_fund_left_side():
    rep = contra_fund(HomContra(Z2m4), Z2m4, 1, "left")
    assert rep.exact_everywhere(), rep.failures()
    with pytest.raises(UnsupportedRing):
        contra_fund(HomContra(Z2), Z2, 1, "left")


def test_contra_split_first_row_hereditary():
    # representable contravariant functors: the first row splits over Z
    b = make_module_direct()
    f = HomContra(cyclic(ZZ, 6))
    bar, _ = sub_stabilize(f, b)
    assert bar.is_zero()
    r0 = ext(b, cyclic(ZZ, 6), 0)
    incl = zero_morphism(free_module(ZZ, 0), f.eval_obj(b))
    # package 0 -> 0 -> F(b) -> R_0F(b) -> 0 and test the splitting
    rep = contra_fund(f, b, 1, "right")
    fb = rep.node_module("F(b)")
    assert iso_test(fb, r0)


def make_module_direct():
    return direct_sum([cyclic(ZZ, 4), free_module(ZZ, 1)]).module


def test_splitting_examples():
    inj = direct_sum([Z, Z2])
    rep = short_exact(inj.injections[0], inj.projections[1])
    ok, retraction = splitting_test(rep)
    assert ok and retraction is not None
    two = make_morphism(Z, Z, [[2]])
    proj = make_morphism(Z, Z2, [[1]])
    ok, _ = splitting_test(short_exact(two, proj))
    assert not ok
    z4 = cyclic(ZZ, 4)
    i = make_morphism(Z2, z4, [[2]])
    p = make_morphism(z4, Z2, [[1]])
    ok, _ = splitting_test(short_exact(i, p))
    assert not ok


def test_hereditary_decomposition():
    rng = random.Random(11)
    # F = Ext^1(D,-) (+) Hom(E,-): defect E, stabilization Ext^1(D,-)
    for _ in range(4):
        d = random_module(rng, ZZ, 2, 2, 4, allow_zero=False)
        e = random_module(rng, ZZ, 2, 2, 4)
        from homstab.fpmod import direct_sum_morphism
        pres_d = ExtFixedFirst(d, 1).fp_presentation()
        pres_e = zero_morphism(e, free_module(ZZ, 0))
        f = FP(direct_sum_morphism([pres_d, pres_e]), half_exact=True)
        xs = [random_module(rng, ZZ, 2, 2, 4) for _ in range(3)]
        dec = hereditary_decomposition(f, xs)
        assert iso_test(dec.w, e)
        assert dec.all_ok()
        for x, rep, split, _, _ in dec.samples:
            assert iso_test(rep.node_module("A"), ext(d, x, 1))
