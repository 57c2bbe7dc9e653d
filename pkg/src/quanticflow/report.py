"""Full fixture and property-sweep suite behind the `report` subcommand.

Runs seeded random sweeps over every operation in the package, integrates
the closed-form flow fixtures, and returns a machine-readable summary.  The
report path also writes each fixture trajectory as CSV and renders figures
alongside it.
"""

from __future__ import annotations

import os
import random
from fractions import Fraction

from . import covariants as cov
from . import flow as fl
from . import weierstrass as ws
from .algebra import (
    BinaryQuantic,
    HomogeneousPoly,
    add,
    evaluate,
    jacobian,
    mul,
    poisson,
    poly_pow,
    scale,
    source,
)

DEFAULT_SEED = 42

# operations the report must exercise; the test suite asserts this coverage
EXPECTED_COVERAGE = frozenset({
    "expand", "partial_p", "partial_q", "ring_ops", "jacobian", "poisson",
    "eval", "source",
    "hessian", "covariant_G", "emanant4", "covariant_S", "covariant_T",
    "grad_S", "grad_T", "syzygy_main", "syzygy_switch", "syzygy_three",
    "syzygy_gradient",
    "build_weierstrass", "pointwise_residual", "discriminant", "classify",
    "wp_series",
    "hamilton_rhs", "integrate", "monitor_second_order", "monitor_properness",
})


def random_quantic(rng: random.Random, order: int, lo: int = -5, hi: int = 5) -> BinaryQuantic:
    return BinaryQuantic.make(order, [rng.randint(lo, hi) for _ in range(order + 1)])


def random_poly(rng: random.Random, degree: int, lo: int = -5, hi: int = 5) -> HomogeneousPoly:
    return HomogeneousPoly.make(degree, [rng.randint(lo, hi) for _ in range(degree + 1)])


def _sweep(results: dict, name: str, trials) -> None:
    passed = sum(1 for ok in trials if ok)
    total = len(trials)
    results[name] = {"count": total, "passed": passed}


def run_algebra_sweeps(rng: random.Random, results: dict, coverage: set) -> None:
    from .algebra import partial_p, partial_q

    euler, ring, leib, rt = [], [], [], []
    # Euler identity p X_p + q X_q = d X
    p1 = HomogeneousPoly.monomial(1, 0)
    q1 = HomogeneousPoly.monomial(1, 1)
    for _ in range(200):
        d = rng.randint(1, 8)
        x = random_poly(rng, d)
        lhs = mul(p1, partial_p(x)) + mul(q1, partial_q(x))
        euler.append(lhs == scale(x, d))
    _sweep(results, "euler_identity", euler)
    coverage.update({"partial_p", "partial_q"})

    # ring axioms on random triples
    for _ in range(100):
        d = rng.randint(0, 5)
        x, y, z = (random_poly(rng, d) for _ in range(3))
        assoc = mul(mul(x, y), z) == mul(x, mul(y, z))
        distr = mul(x, add(y, z)) == add(mul(x, y), mul(x, z))
        powck = poly_pow(x, 3) == mul(x, mul(x, x))
        ring.append(assoc and distr and powck)
    _sweep(results, "ring_axioms", ring)
    coverage.add("ring_ops")

    # Jacobian antisymmetry + Leibniz, Poisson sign
    for _ in range(100):
        x = random_poly(rng, rng.randint(1, 5))
        y = random_poly(rng, rng.randint(1, 5))
        z = random_poly(rng, rng.randint(1, 5))
        anti = jacobian(x, y) == -jacobian(y, x)
        leibniz = jacobian(x, mul(y, z)) == (
            mul(y, jacobian(x, z)) + mul(z, jacobian(x, y))
        )
        psn = poisson(x, y) == jacobian(y, x)
        leib.append(anti and leibniz and psn)
    _sweep(results, "jacobian_identities", leib)
    coverage.update({"jacobian", "poisson"})

    # expand/contract round trip and eval homogeneity
    for _ in range(100):
        n = rng.randint(1, 9)
        u = random_quantic(rng, n)
        x = u.expand()
        lam = Fraction(rng.randint(1, 4), rng.randint(1, 4))
        pt = (Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-3, 3)))
        homog = evaluate(x, lam * pt[0], lam * pt[1]) == lam ** n * evaluate(x, *pt)
        rt.append(BinaryQuantic.contract(x) == u and homog and source(x) == u.a[0])
    _sweep(results, "expand_roundtrip", rt)
    coverage.update({"expand", "eval", "source"})


def run_syzygy_sweeps(
    rng: random.Random, results: dict, coverage: set, per_order: int = 100
) -> None:
    for n in (5, 6, 7, 8, 9):
        trials = []
        for _ in range(per_order):
            u = random_quantic(rng, n)
            res = cov.all_syzygy_residuals(u)
            trials.append(all(r.is_zero for r in res.values()))
        _sweep(results, f"syzygies_N{n}", trials)
    coverage.update({
        "hessian", "covariant_G", "emanant4", "covariant_S", "covariant_T",
        "grad_S", "grad_T",
        "syzygy_main", "syzygy_switch", "syzygy_three", "syzygy_gradient",
    })

    # three-quantic syzygy on unconstrained random triples
    trials = []
    for _ in range(100):
        x, y, z = (random_poly(rng, rng.randint(1, 6)) for _ in range(3))
        trials.append(cov.syzygy_three(x, y, z).is_zero)
    _sweep(results, "syzygy_three_random", trials)


def run_source_anchor_sweeps(
    rng: random.Random, results: dict, coverage: set, per_order: int = 100
) -> None:
    for n in (5, 6, 7):
        trials = []
        for _ in range(per_order):
            u = random_quantic(rng, n)
            a = u.a
            cs = cov.CovariantSet.compute(u)
            ok = (
                source(cs.h) == cov.source_h(a)
                and source(cs.g) == cov.source_g(a)
                and source(cs.s) == cov.source_s(a)
                and source(cs.t) == cov.source_t(a)
                and source(cs.ds) == n * (n - 4) * cov.source_ds_leading(a)
                and source(cs.dt) == n * (n - 4) * cov.source_dt_leading(a)
                and cs.h.coeffs[1] == (n - 2) * (a[0] * a[3] - a[1] * a[2])
            )
            trials.append(ok)
        _sweep(results, f"source_anchors_N{n}", trials)


def run_weierstrass_sweeps(rng: random.Random, results: dict, coverage: set) -> None:
    build, points = [], []
    for n in (5, 6, 7, 8):
        for _ in range(15):
            u = random_quantic(rng, n)
            w = ws.build_weierstrass(u)  # identity asserted inside
            build.append(True)
            ok = True
            for _ in range(5):
                pt = (Fraction(rng.randint(-9, 9), rng.randint(1, 4)),
                      Fraction(rng.randint(-9, 9), rng.randint(1, 4)))
                ok = ok and ws.pointwise_residual(w, *pt) == 0
            points.append(ok)
    _sweep(results, "weierstrass_identity", build)
    _sweep(results, "pointwise_residual", points)
    coverage.update({"build_weierstrass", "pointwise_residual"})

    # discriminant arithmetic and wp series self-consistency
    disc_ok = (
        ws.discriminant(Fraction(0), Fraction(0)) == 0
        and ws.discriminant(Fraction(3), Fraction(1)) == 0
        and ws.discriminant(Fraction(202500), Fraction(0)) == Fraction(202500) ** 3
    )
    _sweep(results, "discriminant", [disc_ok])
    coverage.add("discriminant")

    wp_ok = []
    for g2, g3 in ((0.0, 0.0), (20.0, 0.0), (4.0, 1.0)):
        for z in (0.05, 0.1, 0.2):
            wp = ws.wp_series(g2, g3, z)
            dwp = ws.wp_series_deriv(g2, g3, z)
            gap = dwp ** 2 - (4 * wp ** 3 - g2 * wp - g3)
            wp_ok.append(abs(gap) < 1e-9 * max(1.0, abs(dwp ** 2)))
    _sweep(results, "wp_series_consistency", wp_ok)
    coverage.add("wp_series")

    # classify vs point-evaluation oracle for "grad_S identically zero"
    cls_ok = []
    for n in (5, 6):
        for _ in range(10):
            u = random_quantic(rng, n, -2, 2)
            ds = jacobian(u.expand(), cov.covariant_s(u))
            pts = [
                (Fraction(rng.randint(1, 50)), Fraction(rng.randint(1, 50)))
                for _ in range(3 * n)
            ]
            point_zero = all(evaluate(ds, *pt) == 0 for pt in pts)
            cls_ok.append(point_zero == ds.is_zero)
    u_fix = BinaryQuantic.make(5, [0, 1, 0, 0, 0, 0])  # 5 p^4 q
    c = ws.classify(u_fix, (1, 1))
    cls_ok.append(
        c.proper
        and c.g2 == 0
        and c.g3 == 0
        and c.delta == 0
        and c.category is ws.Category.PROPER_ELEMENTARY
    )
    u_quintic = BinaryQuantic.make(5, [1, 0, 0, 0, 0, 1])  # p^5 + q^5
    cls_ok.append(ws.classify(u_quintic, (1, 0)).category is ws.Category.IMPROPER)
    cls_ok.append(
        ws.classify(u_quintic, (1, -1)).category is ws.Category.U_ZERO_INVERSE_SQUARE
    )
    _sweep(results, "classify", cls_ok)
    coverage.add("classify")


def _write_traj_csv(report: fl.FlowReport, path: str) -> None:
    import csv

    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", "p", "q", "u", "phi", "phi_dot", "g2", "g3", "residual"])
        for s in report.samples:
            writer.writerow([
                f"{v:.17g}" for v in (
                    s.t, s.p, s.q, s.u, s.phi, s.phi_dot_analytic,
                    s.g2, s.g3, s.weierstrass_residual,
                )
            ])


def run_flow_fixtures(results: dict, coverage: set, out_dir: str | None) -> dict:
    """Integrate the two closed-form fixtures; CSV + figures when out_dir set."""
    fixtures = {}
    u_mono = BinaryQuantic.make(5, [0, 1, 0, 0, 0, 0])      # 5 p^4 q
    u_fermat = BinaryQuantic.make(5, [1, 0, 0, 0, 0, 1])    # p^5 + q^5

    pd, qd = fl.hamilton_rhs(u_fermat, 1.0, 1.0)
    _sweep(results, "hamilton_rhs", [pd == -5.0 and qd == 5.0])
    coverage.add("hamilton_rhs")

    cases = {
        "monomial_5p4q": (u_mono, (1.0, 1.0)),
        "fermat_quintic": (u_fermat, (1.0, 0.5)),
    }
    flow_ok = []
    for name, (u, start) in cases.items():
        rep = fl.integrate(u, start, t_end=0.1, dt=1e-4, method="rk4",
                           output_stride=20)
        proper = fl.monitor_properness(rep, tol=1e-8)
        fixtures[name] = {
            "u_drift_max": rep.u_drift_max,
            "residual_max": rep.residual_max,
            "second_order_error_max": rep.second_order_error_max,
            "fd_consistency_error": rep.fd_consistency_error,
            "proper": proper,
            "diverged": rep.diverged,
            "lame_parameter": rep.samples[0].lame_parameter,
        }
        flow_ok.append(rep.u_drift_max < 1e-9 and rep.residual_max < 1e-9)
        if out_dir is not None:
            from .plotting import render_flow_figures

            _write_traj_csv(rep, os.path.join(out_dir, f"{name}.csv"))
            render_flow_figures(rep, out_dir, name)
    _sweep(results, "flow_conservation", flow_ok)
    coverage.update({"integrate", "monitor_properness"})

    # closed form: for 5 p^4 q from (1,1), phi(t) = (t + 1/15)^-2
    rep = fl.integrate(u_mono, (1.0, 1.0), t_end=0.1, dt=1e-4, method="rk4",
                       output_stride=100)
    err = max(
        abs(s.phi - (s.t + 1 / 15) ** -2) / (s.t + 1 / 15) ** -2
        for s in rep.samples
    )
    fixtures["monomial_5p4q"]["phi_closed_form_rel_err"] = err
    _sweep(results, "flow_closed_form", [err < 1e-8])
    if out_dir is not None:
        from .plotting import plot_phi_vs_closed_form

        plot_phi_vs_closed_form(
            rep, lambda t: (t + 1 / 15) ** -2,
            os.path.join(out_dir, "monomial_5p4q_phi.png"),
            "phi(t) vs (t + 1/15)^-2",
        )

    # second-order law: halving the output stride shrinks the residual ~4x
    coarse = fl.integrate(u_fermat, (1.0, 0.5), 0.1, 1e-4, output_stride=40)
    fine = fl.integrate(u_fermat, (1.0, 0.5), 0.1, 1e-4, output_stride=20)
    e_coarse = fl.monitor_second_order(u_fermat, coarse)
    e_fine = fl.monitor_second_order(u_fermat, fine)
    ratio = e_coarse / e_fine if e_fine > 0 else float("inf")
    fixtures["second_order_ratio"] = ratio
    _sweep(results, "second_order_convergence", [2.5 < ratio < 6.0])
    coverage.add("monitor_second_order")

    # properness monitor contrast between the fixtures
    rep_improper = fl.integrate(u_fermat, (1.0, 0.5), 0.1, 1e-4, output_stride=20)
    rep_proper = fl.integrate(u_mono, (1.0, 1.0), 0.1, 1e-4, output_stride=20)
    _sweep(results, "properness_monitor", [
        not fl.monitor_properness(rep_improper, tol=1e-8),
        fl.monitor_properness(rep_proper, tol=1e-8),
    ])
    return fixtures


def run_report(seed: int = DEFAULT_SEED, out_dir: str | None = None) -> dict:
    """Run the whole suite; returns the summary dict (JSON-serializable)."""
    rng = random.Random(seed)
    results: dict = {}
    coverage: set = set()
    if out_dir is not None:
        os.makedirs(out_dir, exist_ok=True)
    run_algebra_sweeps(rng, results, coverage)
    run_syzygy_sweeps(rng, results, coverage)
    run_source_anchor_sweeps(rng, results, coverage)
    run_weierstrass_sweeps(rng, results, coverage)
    fixtures = run_flow_fixtures(results, coverage, out_dir)
    all_passed = all(r["passed"] == r["count"] for r in results.values())
    return {
        "seed": seed,
        "sweeps": results,
        "fixtures": fixtures,
        "coverage": sorted(coverage),
        "all_passed": all_passed,
    }
