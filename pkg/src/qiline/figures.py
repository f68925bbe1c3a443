"""Figure rendering for the CLI report paths.

Figures are convenience renderings written next to the delimited output;
the CSV files remain the exact interchange surface.
"""

from __future__ import annotations


def _pyplot():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def render_approximation(path, grid, pl_map, oracle, max_samples: int = 400) -> None:
    """Interpolant through the grid plus decimated oracle samples."""
    plt = _pyplot()
    xs = [float(y) for y in grid.ys]
    ys = [float(v) for v in grid.f_values]
    span = grid.ys[-1] - grid.ys[0]
    stride = max(1, span // max_samples)
    sample_t = list(range(grid.ys[0], grid.ys[-1] + 1, stride))
    sample_v = [float(oracle.eval(t)) for t in sample_t]

    fig, ax = plt.subplots(figsize=(7, 5))
    ax.plot(sample_t, sample_v, ".", ms=2.5, color="#888888", label="oracle at integers")
    ax.plot(xs, ys, "-", lw=1.2, color="#1b1f8a", label="PL interpolant")
    ax.plot(xs, ys, "o", ms=3, color="#1b1f8a")
    ax.set_xlabel("x")
    ax.set_ylabel("value")
    ax.set_title(f"bounded-slope approximation (C={grid.c}, N={grid.n})")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_growth(path, rows) -> None:
    """Displacement of the conjugate against n; log scale when possible."""
    plt = _pyplot()
    ns = [r[0] for r in rows]
    disps = [float(r[3]) for r in rows]

    fig, ax = plt.subplots(figsize=(6, 4.5))
    if any(d > 0 for d in disps):
        ax.semilogy(ns, [max(d, 1e-300) for d in disps], "o-", color="#1b1f8a")
    else:
        ax.plot(ns, disps, "o-", color="#1b1f8a")
    ax.set_xlabel("n")
    ax.set_ylabel("displacement at 2^n (1 + x)")
    ax.set_title("conjugate displacement growth")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
