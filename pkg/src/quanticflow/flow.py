"""Numerical integration of the Hamilton flow of a quantic, with monitors.

The Hamilton system for the quantic U is

    q' = U_p,    p' = -U_q,

integrated with classical fixed-step RK4 or an embedded Fehlberg 4(5)
adaptive pair.  Along the trajectory every sample records, from the exact
covariant polynomials evaluated in floating point:

    u         - the conserved Hamiltonian value,
    phi       - the rescaled Hessian -[N(N-2)]^2 H,
    phi_dot   - its analytic flow derivative -[N(N-2)]^3 G,
    g2, g3    - the Weierstrass coefficient covariants,
    residual  - phi_dot^2 - 4 phi^3 + g2 phi + g3 (zero up to float error).

Separate monitors check the second-order law gamma'' = -N^2(N-1) H gamma by
central finite differences, the consistency of phi_dot with a finite
difference of phi, and constancy of g2, g3 (properness along the curve).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .algebra import BinaryQuantic, eval_float_coeffs, float_coeffs, partial_p, partial_q
from .covariants import hessian
from .weierstrass import build_weierstrass

# homogeneous flows of degree >= 3 RHS can blow up in finite time; stop there
BLOWUP_LIMIT = 1e12


@dataclass(frozen=True)
class FlowSample:
    t: float
    p: float
    q: float
    u: float
    phi: float
    phi_dot_analytic: float
    g2: float
    g3: float
    weierstrass_residual: float
    lame_parameter: float


@dataclass
class FlowReport:
    samples: list[FlowSample]
    u_drift_max: float
    residual_max: float  # relative to the identity's own term scale
    second_order_error_max: float = float("nan")
    fd_consistency_error: float = float("nan")
    diverged: bool = False
    method: str = "rk4"
    stride_dt: float = 0.0  # time between recorded samples


class _FloatPoly:
    """Float-coefficient view of a HomogeneousPoly, for tight loops."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, poly):
        self.degree = poly.degree
        self.coeffs = float_coeffs(poly)

    def __call__(self, p: float, q: float) -> float:
        return eval_float_coeffs(self.coeffs, self.degree, p, q)


def hamilton_rhs(u: BinaryQuantic, p: float, q: float) -> tuple[float, float]:
    """(pdot, qdot) = (-U_q(p,q), U_p(p,q))."""
    x = u.expand()
    up = _FloatPoly(partial_p(x))
    uq = _FloatPoly(partial_q(x))
    return -uq(p, q), up(p, q)


class _Monitors:
    """All per-sample quantities, built once per quantic."""

    def __init__(self, u: BinaryQuantic):
        n = u.order
        x = u.expand()
        w = build_weierstrass(u)
        self.order = n
        self.u = _FloatPoly(x)
        self.up = _FloatPoly(partial_p(x))
        self.uq = _FloatPoly(partial_q(x))
        self.phi = _FloatPoly(w.phi)
        self.phi_dot = _FloatPoly(w.phi_dot)
        self.g2 = _FloatPoly(w.g2poly)
        self.g3 = _FloatPoly(w.g3poly)
        self.lame = 1.0 / (n - 2)

    def rhs(self, p: float, q: float) -> tuple[float, float]:
        return -self.uq(p, q), self.up(p, q)

    def sample(self, t: float, p: float, q: float) -> FlowSample:
        phi = self.phi(p, q)
        phi_dot = self.phi_dot(p, q)
        g2 = self.g2(p, q)
        g3 = self.g3(p, q)
        residual = phi_dot ** 2 - 4.0 * phi ** 3 + g2 * phi + g3
        return FlowSample(
            t=t, p=p, q=q,
            u=self.u(p, q),
            phi=phi,
            phi_dot_analytic=phi_dot,
            g2=g2, g3=g3,
            weierstrass_residual=residual,
            lame_parameter=self.lame,
        )


def _residual_rel(s: FlowSample) -> float:
    scale = max(
        1.0,
        abs(s.phi_dot_analytic) ** 2,
        4.0 * abs(s.phi) ** 3,
        abs(s.g2 * s.phi),
        abs(s.g3),
    )
    return abs(s.weierstrass_residual) / scale


def _rk4_step(rhs, p: float, q: float, h: float) -> tuple[float, float]:
    k1p, k1q = rhs(p, q)
    k2p, k2q = rhs(p + 0.5 * h * k1p, q + 0.5 * h * k1q)
    k3p, k3q = rhs(p + 0.5 * h * k2p, q + 0.5 * h * k2q)
    k4p, k4q = rhs(p + h * k3p, q + h * k3q)
    return (
        p + h * (k1p + 2 * k2p + 2 * k3p + k4p) / 6.0,
        q + h * (k1q + 2 * k2q + 2 * k3q + k4q) / 6.0,
    )


# Fehlberg 4(5) tableau
_RKF_A = (
    (),
    (1 / 4,),
    (3 / 32, 9 / 32),
    (1932 / 2197, -7200 / 2197, 7296 / 2197),
    (439 / 216, -8, 3680 / 513, -845 / 4104),
    (-8 / 27, 2, -3544 / 2565, 1859 / 4104, -11 / 40),
)
_RKF_B5 = (16 / 135, 0, 6656 / 12825, 28561 / 56430, -9 / 50, 2 / 55)
_RKF_B4 = (25 / 216, 0, 1408 / 2565, 2197 / 4104, -1 / 5, 0)


def _rkf45_advance(rhs, p, q, t, t_target, rtol, atol):
    """Adaptively advance the state from t to t_target; returns (p, q, h_last)."""
    h = min(1e-3, t_target - t) or (t_target - t)
    while t < t_target:
        h = min(h, t_target - t)
        kp, kq = [], []
        for stage in range(6):
            pp = p + h * sum(a * k for a, k in zip(_RKF_A[stage], kp))
            qq = q + h * sum(a * k for a, k in zip(_RKF_A[stage], kq))
            dp, dq = rhs(pp, qq)
            kp.append(dp)
            kq.append(dq)
        p5 = p + h * sum(b * k for b, k in zip(_RKF_B5, kp))
        q5 = q + h * sum(b * k for b, k in zip(_RKF_B5, kq))
        p4 = p + h * sum(b * k for b, k in zip(_RKF_B4, kp))
        q4 = q + h * sum(b * k for b, k in zip(_RKF_B4, kq))
        scale_p = atol + rtol * max(abs(p), abs(p5))
        scale_q = atol + rtol * max(abs(q), abs(q5))
        err = math.sqrt(((p5 - p4) / scale_p) ** 2 + ((q5 - q4) / scale_q) ** 2) / math.sqrt(2)
        if not math.isfinite(err):
            return float("nan"), float("nan"), h
        if err <= 1.0:
            t += h
            p, q = p5, q5
        factor = 0.9 * (1.0 / err) ** 0.2 if err > 0 else 5.0
        h *= min(5.0, max(0.2, factor))
        if h <= 0 or not math.isfinite(h):
            return float("nan"), float("nan"), h
    return p, q, h


def integrate(
    u: BinaryQuantic,
    start: tuple[float, float],
    t_end: float,
    dt: float,
    method: str = "rk4",
    output_stride: int = 1,
    rtol: float = 1e-10,
    atol: float = 1e-12,
) -> FlowReport:
    """Integrate the Hamilton flow and record monitored samples.

    With method "rk4", steps are fixed at dt and a sample is recorded every
    `output_stride` steps.  With "rk45_adaptive", the integrator steps
    adaptively between the same uniform output times (dt * output_stride).
    Non-finite or >BLOWUP_LIMIT states truncate the report with
    diverged=True.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    if t_end <= 0:
        raise ValueError("t_end must be positive")
    if output_stride < 1:
        raise ValueError("output_stride must be >= 1")
    p, q = float(start[0]), float(start[1])
    if not (math.isfinite(p) and math.isfinite(q)):
        raise ValueError("start point must be finite")
    if method not in ("rk4", "rk45_adaptive"):
        raise ValueError(f"unknown method {method!r}")

    mon = _Monitors(u)
    stride_dt = dt * output_stride
    n_steps = max(int(round(t_end / dt)), 0)
    samples = [mon.sample(0.0, p, q)]
    diverged = False

    if method == "rk4":
        for i in range(1, n_steps + 1):
            try:
                p, q = _rk4_step(mon.rhs, p, q, dt)
            except OverflowError:
                diverged = True
                break
            if not _state_ok(p, q):
                diverged = True
                break
            if i % output_stride == 0:
                samples.append(mon.sample(i * dt, p, q))
    else:
        n_out = max(int(round(t_end / stride_dt)), 1)
        t = 0.0
        for i in range(1, n_out + 1):
            t_target = min(i * stride_dt, t_end)
            try:
                p, q, _ = _rkf45_advance(mon.rhs, p, q, t, t_target, rtol, atol)
            except OverflowError:
                diverged = True
                break
            t = t_target
            if not _state_ok(p, q):
                diverged = True
                break
            samples.append(mon.sample(t_target, p, q))

    u0 = samples[0].u
    u_drift = max(abs(s.u - u0) for s in samples) / max(1.0, abs(u0))
    residual = max(_residual_rel(s) for s in samples)
    report = FlowReport(
        samples=samples,
        u_drift_max=u_drift,
        residual_max=residual,
        diverged=diverged,
        method=method,
        stride_dt=stride_dt,
    )
    if len(samples) >= 3 and not diverged:
        report.second_order_error_max = monitor_second_order(u, report)
        report.fd_consistency_error = monitor_phi_dot_consistency(report)
    return report


def _state_ok(p: float, q: float) -> bool:
    return (
        math.isfinite(p)
        and math.isfinite(q)
        and abs(p) <= BLOWUP_LIMIT
        and abs(q) <= BLOWUP_LIMIT
    )


def _check_uniform(report: FlowReport) -> float:
    ts = [s.t for s in report.samples]
    if len(ts) < 3:
        raise ValueError("monitor needs at least 3 samples")
    h = ts[1] - ts[0]
    for a, b in zip(ts, ts[1:]):
        if abs((b - a) - h) > 1e-9 * max(1.0, abs(h)):
            raise ValueError("monitor needs a uniform output stride")
    return h


def monitor_second_order(u: BinaryQuantic, report: FlowReport) -> float:
    """Max relative residual of gamma'' = -N^2(N-1) H gamma at interior samples.

    gamma'' comes from central differences of the recorded samples, so the
    residual is O(stride^2); halving the output stride should shrink it ~4x.
    """
    h = _check_uniform(report)
    n = u.order
    hess = _FloatPoly(hessian(u))
    worst = 0.0
    ss = report.samples
    for i in range(1, len(ss) - 1):
        pdd = (ss[i + 1].p - 2 * ss[i].p + ss[i - 1].p) / (h * h)
        qdd = (ss[i + 1].q - 2 * ss[i].q + ss[i - 1].q) / (h * h)
        factor = n * n * (n - 1) * hess(ss[i].p, ss[i].q)
        rp = pdd + factor * ss[i].p
        rq = qdd + factor * ss[i].q
        scale = max(1.0, math.hypot(factor * ss[i].p, factor * ss[i].q))
        worst = max(worst, math.hypot(rp, rq) / scale)
    return worst


def monitor_phi_dot_consistency(report: FlowReport) -> float:
    """Max relative gap between central-difference phi' and the analytic one."""
    h = _check_uniform(report)
    worst = 0.0
    ss = report.samples
    for i in range(1, len(ss) - 1):
        fd = (ss[i + 1].phi - ss[i - 1].phi) / (2 * h)
        ana = ss[i].phi_dot_analytic
        worst = max(worst, abs(fd - ana) / max(1.0, abs(ana)))
    return worst


def monitor_properness(report: FlowReport, tol: float) -> bool:
    """True iff g2 and g3 stay within tol (relative) of their initial values."""
    if not report.samples:
        return True
    g2_0 = report.samples[0].g2
    g3_0 = report.samples[0].g3
    g2_drift = max(abs(s.g2 - g2_0) for s in report.samples) / max(1.0, abs(g2_0))
    g3_drift = max(abs(s.g3 - g3_0) for s in report.samples) / max(1.0, abs(g3_0))
    return g2_drift < tol and g3_drift < tol
