"""Acceptance gate: the ten headline checks at full scale.

Each test is one criterion; `pytest -v` prints one pass/fail line per
criterion.  Time bounds are asserted where a bound is part of the
criterion.  All randomness is seeded, so this gate is reproducible
byte-for-byte.
"""

import time
from fractions import Fraction as F

from amalgam import serialization as ser
from amalgam.boolalg import (free_boolean_algebra, free_generator,
                             generated_subalgebra, is_internal_pushout,
                             join_subalgebras, meet_subalgebras)
from amalgam.suites import run_suite

SEED = 0


def _passed(n, text):
    print("criterion %d: PASS - %s" % (n, text))


def test_criterion_01_pushout_law_suite():
    t0 = time.time()
    report = run_suite("boolean", seed=SEED, instances=1000, max_atoms=8)
    elapsed = time.time() - t0
    assert report["ok"], report["violations"][:3]
    assert report["instances"] == 1000
    assert elapsed < 60, "took %.1fs" % elapsed
    _passed(1, "1000 push-out law instances, 0 violations, %.1fs" % elapsed)


def test_criterion_02_posex_witness_soundness():
    report = run_suite("posex", seed=SEED, instances=500, max_atoms=8)
    assert report["ok"], report["violations"][:3]
    assert report["instances"] == 500
    # iteration-bound breaches are recorded as violations by the suite,
    # so ok=True certifies closure within |B| rounds on every instance
    _passed(2, "500 posex witnesses, all certified, closure bounded")


def test_criterion_03_counterexample_reproduction():
    b, names = free_boolean_algebra(("x1", "x2", "y"))
    x1 = free_generator(b, names, "x1")
    x2 = free_generator(b, names, "x2")
    y = free_generator(b, names, "y")
    s = generated_subalgebra(b, [y])
    a = generated_subalgebra(b, [x1, x2])
    d = generated_subalgebra(b, [x1, x2, x1 & y, x2 & y])

    assert is_internal_pushout(b, s, a).ok
    verdict = is_internal_pushout(b, s, d)
    assert not verdict.ok and verdict.violation is not None
    meet = meet_subalgebras(s, d)
    joined = join_subalgebras(b, [meet, a])
    assert set(joined.blocks) != set(d.blocks)
    _passed(3, "intermediate-subalgebra counterexample exact, all three "
               "verdicts")


def test_criterion_04_stone_duality_equivalence():
    report = run_suite("duality", seed=SEED, instances=500, max_atoms=8)
    assert report["ok"], report["violations"][:3]
    assert report["instances"] == 500
    _passed(4, "500 squares: push-out verdict == dual pull-back verdict, "
               "both directions")


def test_criterion_05_quotient_norm_oracle():
    t0 = time.time()
    report = run_suite("quotient", seed=SEED, instances=200, max_dim=3,
                       max_gens=12)
    elapsed = time.time() - t0
    assert report["ok"], report["violations"][:3]
    assert report["instances"] == 200
    assert elapsed < 120, "took %.1fs" % elapsed
    _passed(5, "200 quotient norms: LP == breakpoint oracle exactly, "
               "%.1fs" % elapsed)


def test_criterion_06_internal_pushout_identity():
    report = run_suite("banach-pushout", seed=SEED, instances=100)
    assert report["ok"], report["violations"][:3]
    assert report["instances"] == 100
    _passed(6, "100 push-outs pass the norm identity and the dual-ball "
               "pull-back check")


def test_criterion_07_sup_space_embedding():
    report = run_suite("sup-embed", seed=SEED, instances=100, vectors=100)
    assert report["ok"], report["violations"][:3]
    assert report["instances"] == 100
    _passed(7, "100 spaces x 100 vectors: embedding norm-exact")


def test_criterion_08_back_and_forth():
    report = run_suite("tower-iso", seed=SEED, instances=100)
    assert report["ok"], report["violations"][:3]
    assert report["instances"] == 100
    # the suite verifies each isomorphism, replays transcripts for
    # determinism, and exercises the pointed variant on symmetric atoms
    _passed(8, "100 permuted tower pairs: verified isomorphisms, pointed "
               "and deterministic")


def test_criterion_09_skeleton_suite():
    report = run_suite("skeleton", seed=SEED, instances=8, max_steps=5,
                       max_atoms=32)
    assert report["ok"], report["violations"][:3]
    _passed(9, "saturate laws and skeleton push-out checks, exhaustive "
               "index subsets")


def test_criterion_10_determinism():
    r1 = run_suite("boolean", seed=SEED, instances=50, max_atoms=8)
    r2 = run_suite("boolean", seed=SEED, instances=50, max_atoms=8)
    assert ser.dumps(r1) == ser.dumps(r2)
    r3 = run_suite("posex", seed=17, instances=50, max_atoms=8)
    r4 = run_suite("posex", seed=17, instances=50, max_atoms=8)
    assert ser.dumps(r3) == ser.dumps(r4)
    _passed(10, "same seed => byte-identical reports")
