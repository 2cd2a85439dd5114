"""PNG figures of the classical achievable regions, optionally marking a query point."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .classical import Membership, RegionPoint  # noqa: E402

_MARK = {
    Membership.ACHIEVABLE: ("o", "tab:green"),
    Membership.EXCLUDED_BOUNDARY: ("s", "tab:orange"),
    Membership.OUTSIDE: ("x", "tab:red"),
}


def _mark(ax, xy, rp: RegionPoint | None):
    if rp is None:
        return
    marker, color = _MARK[rp.membership]
    ax.plot(*xy, marker=marker, color=color, markersize=9, label=rp.membership.value)
    ax.legend(loc="upper left")


def _amgm(ax, rp, lim):
    t = np.array([0, lim])
    ax.fill_between(t, 0, t, color="tab:blue", alpha=0.25)
    ax.plot(t, t, color="tab:blue", lw=1)
    ax.set_xlabel("a (arithmetic mean)")
    ax.set_ylabel("g (geometric mean)")
    _mark(ax, (float(rp.coords[0]), float(rp.coords[1])) if rp else None, rp)


def _markov(ax, rp, c, lim):
    ax.fill([0, 1, 1, 0], [0, c, lim, lim], color="tab:blue", alpha=0.25)
    ax.plot([0, 0], [c, lim], color="white", lw=3)
    ax.plot([0, 0], [c, lim], color="tab:orange", lw=1.5, ls="--")
    ax.set_xlabel("p = Pr{T >= c}")
    ax.set_ylabel("m = E[T]")
    ax.set_title(f"c = {c:g}")
    _mark(ax, (float(rp.coords[1]), float(rp.coords[2])) if rp else None, rp)


def _cs(ax, rp, dim, lim):
    # slice x = 1: the region is z^2 <= y for dim >= 2, the parabola z^2 = y for dim 1
    z = np.linspace(-np.sqrt(lim), np.sqrt(lim), 200)
    if dim >= 2:
        ax.fill_between(z, z * z, lim, color="tab:blue", alpha=0.25)
    ax.plot(z, z * z, color="tab:blue", lw=1.5)
    ax.set_xlabel("z = <u,v>")
    ax.set_ylabel("y = <v,v>")
    ax.set_title(f"slice x = 1, dim = {dim}")
    if rp is not None and rp.coords[0] > 0:
        x = float(rp.coords[0])
        _mark(ax, (float(rp.coords[2]) / np.sqrt(x), float(rp.coords[1]) / x), rp)


def plot_region(region: str, path, point: RegionPoint | None = None,
                c: float = 1.0, dim: int = 2) -> Path:
    """Write the region (and the query point, if any) to ``path`` as PNG."""
    if point is not None:
        if region == "markov":
            c = float(point.coords[0])
        elif region == "cs":
            dim = int(point.coords[3])
    fig, ax = plt.subplots(figsize=(5, 4))
    if region == "amgm":
        lim = max(4.0, *(1.2 * float(v) for v in point.coords)) if point else 4.0
        _amgm(ax, point, lim)
    elif region == "markov":
        lim = max(3 * c, *(1.2 * float(v) for v in point.coords[2:])) if point else 3 * c
        _markov(ax, point, c, lim)
    elif region == "cs":
        _cs(ax, point, dim, 4.0)
    else:
        plt.close(fig)
        raise ValueError(f"unknown region {region!r}")
    ax.set_title(f"{region} region" + (f", {ax.get_title()}" if ax.get_title() else ""))
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=100)
    plt.close(fig)
    return path
