"""Acceptance gate: every criterion at its stated instance counts.

All checks are property-based with exact arithmetic (theorem-as-oracle), so
the tolerance is zero everywhere: a single failing instance fails the
criterion and its serialized counterexample is printed.  One pass/fail line
is printed per criterion; run with ``pytest -s tests/test_acceptance.py`` to
watch them.
"""

import json

from homstab.exactlin import ZZ, Zmod
from homstab.fpmod import canonical_invariants, cyclic, free_module, make_morphism
from homstab.instances import InstanceSpec
from homstab.suites import run_suite
from homstab.uct import make_complex, uct_classical


def _run(criterion, name, ring, count, **spec_kw):
    spec = InstanceSpec(seed=20260810, ring=ring, count=count, **spec_kw)
    report = run_suite(name, spec)
    status = "pass" if report.ok else "FAIL"
    print(f"[criterion {criterion}] {status} {name} over {ring}: "
          f"{report.passes}/{report.count} ({report.duration_ms} ms)")
    if not report.ok:
        print(json.dumps(report.failures[0], indent=2, sort_keys=True))
    assert report.ok, f"criterion {criterion}: {name} over {ring}"
    return report


def test_criterion_01_circular_exactness():
    # six-term sequence exact at every node: 200 pairs over Z, Z/4, Z/12
    for ring in (ZZ, Zmod(4), Zmod(12)):
        _run(1, "circular-exactness", ring, 200, max_gens=3, max_rels=3,
             max_entry=6)


def test_criterion_02_right_fundamental_half_exact():
    # Hom and tensor over Z/4 and Z/8, 50 A each at 4 B, rows 0..3;
    # plus the left-exact collapse and the right-exact corollary
    for ring in (Zmod(4), Zmod(8)):
        _run(2, "rfs-half-exact", ring, 50)


def test_criterion_03_left_fundamental_half_exact():
    for ring in (ZZ, Zmod(4)):
        _run(3, "lfs-half-exact", ring, 50)


def test_criterion_04_fp_identifications():
    # R^0 F = Hom(w(F), -) over both rings; over Z/4 also R^i F = Ext^i(w, -)
    # against the injective-resolution computation, and the two
    # sub-stabilization routes agree
    for ring in (ZZ, Zmod(4)):
        _run(4, "fp-identifications", ring, 100)


def test_criterion_05_auslander_four_term():
    for ring in (ZZ, Zmod(4)):
        _run(5, "four-term", ring, 100)


def test_criterion_06_ext_tor_oracle():
    _run(6, "ext-tor-oracle", ZZ, 200)


def test_criterion_07_classical_uct():
    # 100 random free complexes over Z (length <= 5, entries <= 4):
    # both classical sequences exact AND split
    _run(7, "uct-classical", ZZ, 100, max_entry=4)
    # the worked instance: C = Z --2--> Z, B = Z/2
    one = free_module(ZZ, 1)
    c = make_complex(ZZ, [one, one], [make_morphism(one, one, [[2]])])
    b = cyclic(ZZ, 2)
    coh = uct_classical(c, b, 1, "cohomology")
    hom = uct_classical(c, b, 1, "homology")
    assert coh.exact_everywhere() and coh.metadata["split"]
    assert hom.exact_everywhere() and hom.metadata["split"]
    assert canonical_invariants(coh.node_module("B")) == ((2,), 0)
    assert canonical_invariants(hom.node_module("B")) == ((2,), 0)
    print("[criterion 7] pass worked instance H^1(C, Z/2) = H_1(C(x)Z/2) = Z/2")


def test_criterion_08_general_uct_arbitrary_complexes():
    # 100 arbitrary complexes over Z/4: fundamental sequences are complexes,
    # exact away from derived nodes; stabilization cross-checks included
    _run(8, "uct-general", Zmod(4), 100, max_entry=4)
    # the quot-stabilization cross-check must hold over Z as well
    _run(8, "uct-general", ZZ, 50, max_entry=4)


def test_criterion_09_special_uct_and_delta_lemmas():
    _run(9, "uct-special", Zmod(4), 50, max_entry=4)
    _run(9, "uct-pinched", ZZ, 100, max_entry=4)


def test_criterion_10_contravariant_sequences():
    for ring in (ZZ, Zmod(4)):
        _run(10, "contra-collapse", ring, 50)


def test_criterion_11_ar_formula_adjunctions_bidual():
    for n in (4, 8, 9, 12):
        _run(11, "ar-formula", Zmod(n), 100, max_gens=3, max_entry=6)
        _run(11, "stab-adjunction", Zmod(n), 100, max_gens=3, max_entry=6)
    for ring in (ZZ, Zmod(4)):
        _run(11, "bidual", ring, 100)
    _run(11, "torsion-radical", ZZ, 100)


def test_criterion_12_hereditary_decomposition_and_satellites():
    _run(12, "hereditary-decomposition", ZZ, 50, max_gens=3, max_entry=6)
    _run(12, "satellite-recovery", ZZ, 50, max_gens=3, max_entry=6)
