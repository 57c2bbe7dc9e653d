"""Acceptance gate: one test per criterion, printing a pass/fail line each.

Run with `pytest -s tests/test_acceptance.py` to see the per-criterion lines.
"""

import random
import time
from fractions import Fraction

import pytest

from quanticflow.algebra import BinaryQuantic, HomogeneousPoly, evaluate, source
from quanticflow.covariants import (
    CovariantSet,
    all_syzygy_residuals,
    source_ds_leading,
    source_dt_leading,
    source_g,
    source_h,
    source_s,
    source_t,
    syzygy_three,
)
from quanticflow.flow import integrate, monitor_properness, monitor_second_order
from quanticflow.weierstrass import Category, build_weierstrass, classify, pointwise_residual

FERMAT5 = BinaryQuantic.make(5, [1, 0, 0, 0, 0, 1])
MONO5 = BinaryQuantic.make(5, [0, 1, 0, 0, 0, 0])


def _report(name, ok):
    print(f"ACCEPTANCE {name}: {'PASS' if ok else 'FAIL'}")
    assert ok, name


def rand_quantic(rng, order):
    return BinaryQuantic.make(order, [rng.randint(-5, 5) for _ in range(order + 1)])


def test_criterion_1_syzygy_suite_exact():
    """100 random quantics per order N in 5..9: all four residuals exactly zero."""
    rng = random.Random(20260826)
    t0 = time.time()
    ok = True
    for order in (5, 6, 7, 8, 9):
        for _ in range(100):
            u = rand_quantic(rng, order)
            residuals = all_syzygy_residuals(u)
            ok = ok and all(r.is_zero for r in residuals.values())
    for _ in range(100):
        x, y, z = (
            HomogeneousPoly.make(d, [rng.randint(-5, 5) for _ in range(d + 1)])
            for d in (rng.randint(1, 6) for _ in range(3))
        )
        ok = ok and syzygy_three(x, y, z).is_zero
    elapsed = time.time() - t0
    _report(f"1 syzygy suite ({elapsed:.1f}s)", ok and elapsed < 60.0)


def test_criterion_2_source_anchors_exact():
    """Sources of H, G, S, T, (U,S), (U,T) match the coefficient polynomials."""
    rng = random.Random(2)
    ok = True
    for order in (5, 6, 7):
        n = order
        for _ in range(100):
            u = rand_quantic(rng, order)
            a = u.a
            cs = CovariantSet.compute(u)
            ok = ok and (
                source(cs.h) == source_h(a)
                and source(cs.g) == source_g(a)
                and source(cs.s) == source_s(a)
                and source(cs.t) == source_t(a)
                and source(cs.ds) == n * (n - 4) * source_ds_leading(a)
                and source(cs.dt) == n * (n - 4) * source_dt_leading(a)
            )
    _report("2 source anchors", ok)


def test_criterion_3_worked_fixture_fermat_quintic():
    """U = p^5 + q^5: the full covariant bundle and the pointwise residual."""
    cs = CovariantSet.compute(FERMAT5)
    ok = (
        cs.h == HomogeneousPoly.monomial(6, 3)
        and cs.g == HomogeneousPoly.make(9, [0, 0, 1, 0, 0, 0, 0, -1, 0, 0])
        and cs.s == HomogeneousPoly.monomial(2, 1)
        and cs.t.is_zero
        and cs.ds == HomogeneousPoly.make(5, [5, 0, 0, 0, 0, -5])
        and cs.dt.is_zero
    )
    w = build_weierstrass(FERMAT5)
    ok = ok and (
        evaluate(w.phi, 1, 1) == -225
        and evaluate(w.g2poly, 1, 1) == 202500
        and evaluate(w.g3poly, 1, 1) == 0
        and pointwise_residual(w, 1, 1) == 0
    )
    _report("3 worked fixture p^5+q^5", ok)


def test_criterion_4_closed_form_flow_and_classification():
    """U = 5p^4q from (1,1): phi(t) = (t + 1/15)^-2 and proper_elementary."""
    rep = integrate(MONO5, (1.0, 1.0), t_end=0.1, dt=1e-4, output_stride=10)
    err = max(
        abs(s.phi - (s.t + 1 / 15) ** -2) / (s.t + 1 / 15) ** -2
        for s in rep.samples
    )
    c = classify(MONO5, (1, 1))
    ok = (
        err < 1e-8
        and c.proper
        and c.g2 == 0
        and c.g3 == 0
        and c.delta == 0
        and c.category is Category.PROPER_ELEMENTARY
    )
    _report(f"4 closed-form flow (rel err {err:.2e})", ok)


def test_criterion_5_conservation_and_second_order_law():
    """u_drift < 1e-9 on both fixtures; gamma'' residual halves ~4x with stride."""
    ok = True
    for u, start in ((MONO5, (1.0, 1.0)), (FERMAT5, (1.0, 0.5))):
        rep = integrate(u, start, t_end=0.1, dt=1e-4)
        ok = ok and rep.u_drift_max < 1e-9
    errs = []
    for stride in (40, 20):
        rep = integrate(FERMAT5, (1.0, 0.5), t_end=0.1, dt=1e-4,
                        output_stride=stride)
        errs.append(monitor_second_order(FERMAT5, rep))
    ratio = errs[0] / errs[1]
    ok = ok and 2.5 < ratio < 6.0
    _report(f"5 conservation + second-order law (ratio {ratio:.2f})", ok)


def test_criterion_6_properness_monitor():
    """p^5+q^5 from (1,1/2) improper at tol 1e-8; 5p^4q proper."""
    rep_fermat = integrate(FERMAT5, (1.0, 0.5), t_end=0.1, dt=1e-4)
    rep_mono = integrate(MONO5, (1.0, 1.0), t_end=0.1, dt=1e-4)
    ok = (
        not monitor_properness(rep_fermat, tol=1e-8)
        and monitor_properness(rep_mono, tol=1e-8)
    )
    _report("6 properness monitor", ok)
