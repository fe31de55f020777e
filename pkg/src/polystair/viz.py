"""Matplotlib renderings for the report path: staircase plots and polygon
diagrams with eigenrays and obstruction triangles, plus CSV companions."""

from __future__ import annotations

import csv
from fractions import Fraction

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .obstruction import find_obstructions
from .polygon import RationalPolygon, classify_all
from .staircase import StaircaseSpec, evaluate_staircase, inner_corners, outer_corners
from .wire import rat_to_str


def plot_staircase(spec: StaircaseSpec, steps: int, path: str) -> None:
    outer = outer_corners(spec, steps)
    inner = inner_corners(spec, steps)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    x_min = Fraction(1)
    x_max = outer[-1].x
    # sample the exact function between breakpoints
    knots = sorted({x_min, x_max, *(c.x for c in outer), *(c.x for c in inner)})
    xs = []
    for a, b in zip(knots, knots[1:]):
        xs += [a + Fraction(j, 16) * (b - a) for j in range(16)]
    xs.append(x_max)
    ys = [evaluate_staircase(spec, x) for x in xs]
    ax.plot([float(x) for x in xs], [float(y) for y in ys], lw=1.4, color="tab:blue")
    ax.plot(
        [float(c.x) for c in outer],
        [float(c.y) for c in outer],
        "o",
        ms=4,
        color="tab:red",
        label="outer corners",
    )
    ax.plot(
        [float(c.x) for c in inner],
        [float(c.y) for c in inner],
        "s",
        ms=4,
        color="tab:green",
        label="inner corners",
    )
    acc = float(spec.acc)
    ax.axvline(acc, color="gray", lw=0.8, ls="--")
    ax.text(acc, ax.get_ylim()[0], " acc", fontsize=8, color="gray")
    ax.set_xlabel("x")
    ax.set_ylabel("c(x)")
    ax.set_title(f"{spec.name}: K={spec.K}, J={spec.J}")
    ax.legend(loc="lower right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=160)
    plt.close(fig)


def staircase_csv(spec: StaircaseSpec, steps: int, path: str) -> None:
    outer = outer_corners(spec, steps)
    inner = inner_corners(spec, steps)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["kind", "k", "x", "y", "p", "q"])
        rows = [(c, (c.p, c.q)) for c in outer] + [(c, ("", "")) for c in inner]
        rows.sort(key=lambda t: (t[0].x, t[0].kind))
        for c, (p, q) in rows:
            w.writerow([c.kind, c.k, rat_to_str(c.x), rat_to_str(c.y), p, q])


def plot_polygon(Q: RationalPolygon, path: str) -> None:
    reps = classify_all(Q)
    certs = find_obstructions(Q) if all(r.t_data for r in reps) else []
    fig, ax = plt.subplots(figsize=(6, 6))
    pts = [(float(x), float(y)) for x, y in Q.vertices]
    ax.fill(
        [p[0] for p in pts], [p[1] for p in pts], color="#dce6f5", zorder=0
    )
    ax.plot(
        [p[0] for p in pts + pts[:1]],
        [p[1] for p in pts + pts[:1]],
        color="tab:blue",
        lw=1.6,
        zorder=2,
    )
    for cert in certs:
        tri = [
            Q.vertex(cert.delzant_vertex),
            cert.hit_point,
            Q.vertex(cert.t_vertex),
        ]
        ax.fill(
            [float(p[0]) for p in tri],
            [float(p[1]) for p in tri],
            alpha=0.25,
            color="tab:orange",
            zorder=1,
        )
    for rep in reps:
        x, y = (float(v) for v in Q.vertex(rep.index))
        label = str(rep.vertex_type)
        if rep.t_data is not None:
            t = rep.t_data
            label += f"\n(m,r,a)=({t.m},{t.r},{t.a_residue})"
            ray = rep.eigenray
            # draw the eigenray up to its boundary exit
            from .mutation import _eigenray_exit

            end = _eigenray_exit(Q, rep.index, ray)
            ax.plot(
                [x, float(end[0])],
                [y, float(end[1])],
                ls="--",
                lw=1.0,
                color="tab:red",
                zorder=3,
            )
        ax.annotate(
            label,
            (x, y),
            textcoords="offset points",
            xytext=(4, 4),
            fontsize=7,
        )
    ax.set_aspect("equal")
    ax.grid(True, lw=0.3, alpha=0.5)
    ax.set_title("polygon, eigenrays, visible obstructions")
    fig.tight_layout()
    fig.savefig(path, dpi=160)
    plt.close(fig)


def certs_csv(Q: RationalPolygon, path: str) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(
            ["delzant_vertex", "t_vertex", "r", "a", "ell1", "ell2", "ell3", "x", "area"]
        )
        for c in find_obstructions(Q):
            w.writerow(
                [
                    c.delzant_vertex,
                    c.t_vertex,
                    c.r,
                    c.a,
                    rat_to_str(c.ell1),
                    rat_to_str(c.ell2),
                    rat_to_str(c.ell3),
                    rat_to_str(c.x),
                    rat_to_str(c.area),
                ]
            )
