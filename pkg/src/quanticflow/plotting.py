"""Figure rendering for flow trajectories and the report suite.

All figures are written to files (Agg backend); nothing is shown
interactively.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .flow import FlowReport


def _save(fig, path: str) -> str:
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
    return path


def plot_trajectory(report: FlowReport, path: str, title: str = "") -> str:
    """Phase-plane curve (p, q) of one trajectory."""
    ps = [s.p for s in report.samples]
    qs = [s.q for s in report.samples]
    fig, ax = plt.subplots(figsize=(5, 4.2))
    ax.plot(ps, qs, lw=1.2)
    ax.plot(ps[0], qs[0], "o", ms=5, color="C3", label="start")
    ax.set_xlabel("p")
    ax.set_ylabel("q")
    ax.set_title(title or "Hamilton curve")
    ax.legend(loc="best")
    ax.grid(alpha=0.3)
    return _save(fig, path)


def plot_monitors(report: FlowReport, path: str, title: str = "") -> str:
    """Conserved quantity, rescaled Hessian, and Weierstrass residual vs time."""
    ts = [s.t for s in report.samples]
    u0 = report.samples[0].u
    fig, axes = plt.subplots(3, 1, figsize=(6, 7), sharex=True)
    axes[0].plot(ts, [abs(s.u - u0) for s in report.samples], lw=1.0)
    axes[0].set_ylabel("|u(t) - u(0)|")
    axes[1].plot(ts, [s.phi for s in report.samples], lw=1.0, color="C1")
    axes[1].set_ylabel("phi")
    axes[2].semilogy(
        ts,
        [max(abs(s.weierstrass_residual), 1e-300) for s in report.samples],
        lw=1.0,
        color="C2",
    )
    axes[2].set_ylabel("|residual|")
    axes[2].set_xlabel("t")
    if title:
        axes[0].set_title(title)
    for ax in axes:
        ax.grid(alpha=0.3)
    return _save(fig, path)


def plot_phi_vs_closed_form(
    report: FlowReport, closed_form, path: str, title: str = ""
) -> str:
    """Overlay numeric phi(t) with a closed-form reference curve."""
    ts = [s.t for s in report.samples]
    fig, ax = plt.subplots(figsize=(6, 4.2))
    ax.plot(ts, [s.phi for s in report.samples], lw=1.4, label="numeric phi(t)")
    ax.plot(ts, [closed_form(t) for t in ts], "--", lw=1.2, label="closed form")
    ax.set_xlabel("t")
    ax.set_ylabel("phi")
    ax.set_title(title or "Rescaled Hessian along the flow")
    ax.legend(loc="best")
    ax.grid(alpha=0.3)
    return _save(fig, path)


def render_flow_figures(report: FlowReport, out_dir: str, stem: str) -> list[str]:
    os.makedirs(out_dir, exist_ok=True)
    return [
        plot_trajectory(report, os.path.join(out_dir, f"{stem}_trajectory.png"), stem),
        plot_monitors(report, os.path.join(out_dir, f"{stem}_monitors.png"), stem),
    ]
