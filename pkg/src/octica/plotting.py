"""Matplotlib rendering of Coxeter diagrams and the glued-cone picture.

Figures are drawn with fixed layouts and written without timestamps so
repeated runs produce identical files.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.lines import Line2D

_SAVE_KW = {"dpi": 100, "metadata": {"Software": "octica"}}


def _positions(diagram):
    """Fixed layout: nodes on a circle in index order."""
    n = len(diagram)
    if n == 1:
        return [(0.0, 0.0)]
    pos = []
    for k in range(n):
        theta = math.pi / 2 - 2 * math.pi * k / n
        pos.append((math.cos(theta), math.sin(theta)))
    return pos


def _offset_segments(p, q, count, gap=0.035):
    """count parallel segments between two points."""
    dx, dy = q[0] - p[0], q[1] - p[1]
    ln = math.hypot(dx, dy)
    nx, ny = -dy / ln, dx / ln
    segs = []
    for k in range(count):
        off = (k - (count - 1) / 2) * gap
        segs.append(((p[0] + off * nx, p[1] + off * ny),
                     (q[0] + off * nx, q[1] + off * ny)))
    return segs


def draw_diagram(diagram, title=None, ax=None):
    own = ax is None
    if own:
        fig, ax = plt.subplots(figsize=(4.2, 4.2))
    pos = _positions(diagram)
    for i, j, bond in diagram.edges:
        p, q = pos[i], pos[j]
        if bond == "single":
            segs, style = _offset_segments(p, q, 1), "-"
        elif bond == "double":
            segs, style = _offset_segments(p, q, 2), "-"
        elif bond == "triple":
            segs, style = _offset_segments(p, q, 3), "-"
        elif bond == "parallel":
            segs, style = _offset_segments(p, q, 1), "-"
        else:
            segs, style = _offset_segments(p, q, 1), ":"
        for (a, b) in segs:
            ax.add_line(Line2D([a[0], b[0]], [a[1], b[1]],
                               linestyle=style, color="black", linewidth=1.2))
        if bond == "parallel":
            ax.text((p[0] + q[0]) / 2, (p[1] + q[1]) / 2, "∞",
                    fontsize=11, ha="center", va="bottom")
    for k, (x, y) in enumerate(pos):
        ax.add_patch(plt.Circle((x, y), 0.09, facecolor="white",
                                edgecolor="black", zorder=3))
        ax.text(x, y, str(diagram.norms[k]), fontsize=7,
                ha="center", va="center", zorder=4)
        ax.text(x * 1.22, y * 1.22, f"r{k + 1}", fontsize=8,
                ha="center", va="center", color="dimgray")
    ax.set_xlim(-1.45, 1.45)
    ax.set_ylim(-1.45, 1.45)
    ax.set_aspect("equal")
    ax.axis("off")
    if title:
        ax.set_title(title, fontsize=10)
    if own:
        return ax.figure
    return None


def save_diagram(diagram, path, title=None):
    fig = draw_diagram(diagram, title=title)
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)


def save_cone_figure(path, wedge_angles=(0.5, 0.25)):
    """The two wedges and their glued total angle, as fractions of pi."""
    fig, axes = plt.subplots(1, 3, figsize=(9.0, 3.2))
    labels = ["wedge of the first plane", "wedge of the second plane",
              "glued cone"]
    angles = [wedge_angles[0], wedge_angles[1],
              wedge_angles[0] + wedge_angles[1]]
    for ax, frac, label in zip(axes, angles, labels):
        theta = frac * math.pi
        ax.add_line(Line2D([0, 1], [0, 0], color="black"))
        ax.add_line(Line2D([0, math.cos(theta)], [0, math.sin(theta)],
                           color="black"))
        arc = [(0.35 * math.cos(t * theta / 32), 0.35 * math.sin(t * theta / 32))
               for t in range(33)]
        ax.add_line(Line2D([p[0] for p in arc], [p[1] for p in arc],
                           color="gray", linewidth=0.8))
        ax.text(0.45 * math.cos(theta / 2), 0.45 * math.sin(theta / 2),
                f"{frac} π", fontsize=10)
        ax.set_xlim(-1.1, 1.2)
        ax.set_ylim(-0.4, 1.2)
        ax.set_aspect("equal")
        ax.axis("off")
        ax.set_title(label, fontsize=9)
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)
