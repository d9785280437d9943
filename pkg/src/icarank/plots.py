"""Figure rendering for the CLI report paths.

Figures are written next to the delimited output when --figures is given;
nothing here affects the computed numbers.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def save_divergence_figure(report, path) -> None:
    """Stage index against the lower bound, one marker per finite quotient."""
    ks = [st.k for st in report.stages]
    vals = [st.lower_bound for st in report.stages]
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.step(ks, vals, where="mid", color="#1f77b4", lw=1.5)
    ax.plot(ks, vals, "o", color="#1f77b4")
    for st in report.stages:
        ax.annotate(st.quotient_spec, (st.k, st.lower_bound),
                    textcoords="offset points", xytext=(0, 7),
                    ha="center", fontsize=8)
    ax.set_xlabel("stage k")
    ax.set_ylabel("lower bound on rank of CA monoid")
    ax.set_title(f"{report.family.spec_string()}, q = {report.q}: "
                 "unbounded lower-bound sequence")
    ax.set_xticks(ks)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_bounds_figure(bounds, path) -> None:
    """Horizontal bars for every applicable bound, best values highlighted."""
    entries = sorted(bounds.all_bounds, key=lambda b: (b.side, b.value))
    names = [f"{b.method} ({b.side})" for b in entries]
    values = [b.value for b in entries]
    colors = ["#2ca02c" if b.side == "lower" else "#d62728" for b in entries]
    fig, ax = plt.subplots(figsize=(6.4, 0.6 + 0.5 * len(entries)))
    ax.barh(range(len(entries)), values, color=colors, alpha=0.75)
    ax.set_yticks(range(len(entries)))
    ax.set_yticklabels(names, fontsize=8)
    ax.axvline(bounds.lower, color="#2ca02c", ls="--", lw=1)
    ax.axvline(bounds.upper, color="#d62728", ls="--", lw=1)
    if bounds.exact is not None:
        ax.axvline(bounds.exact, color="black", lw=1.5, label=f"exact {bounds.exact}")
        ax.legend(fontsize=8)
    ax.set_xlabel("generators")
    ax.set_title(f"rank bounds for the unit group: {bounds.group}, q = {bounds.q}")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_alpha_figure(group_name, q, labels, alphas, path) -> None:
    """Orbit counts per stabilizer class, log scale when they spread wide."""
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    xs = range(len(alphas))
    ax.bar(xs, alphas, color="#1f77b4", alpha=0.8)
    ax.set_xticks(list(xs))
    ax.set_xticklabels(labels, rotation=45, ha="right", fontsize=8)
    if alphas and max(alphas) > 50 * max(1, min(a for a in alphas if a) if any(alphas) else 1):
        ax.set_yscale("log")
    ax.set_ylabel("orbits with that stabilizer class")
    ax.set_title(f"orbit counts per class: {group_name}, q = {q}")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
