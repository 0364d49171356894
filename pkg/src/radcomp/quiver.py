"""Weight-space quiver of theta-monodromic U-modules.

For a class ``lambda_0 + Z`` the vertices are the weights in a finite
window.  Between consecutive weights there is a z-arrow ``lam -> lam+1``
and a delta-arrow ``lam+1 -> lam``.  Since ``delta z = b(theta)`` and
``z delta = b*(theta)``, the z-arrow fails to be invertible exactly when
``b(lam) = 0`` and the delta-arrow exactly when ``b*(lam+1) = 0``.  Both
conditions are evaluated and stored separately even though they coincide.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotRationalSplit
from .linalg import matmul, rank
from .poly import Q, UniPoly, rational_roots, shift_star
from .theta import ThetaOp

__all__ = ["QuiverEdge", "QuiverGraph", "build_quiver", "emit_dot", "quiver_json", "oracle_flags", "fmt_q"]


def fmt_q(x) -> str:
    """Rational as ``"p/q"`` (integers as ``"p"``)."""
    x = Q(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class QuiverEdge:
    source: Fraction
    target: Fraction
    iso: bool
    witness: str


@dataclass(frozen=True)
class QuiverGraph:
    class_rep: Fraction
    vertices: tuple[Fraction, ...]
    z_edges: tuple[QuiverEdge, ...]
    delta_edges: tuple[QuiverEdge, ...]
    roots_in_class: tuple[Fraction, ...]
    roots_outside_window: tuple[Fraction, ...]


def _in_class(x: Fraction, rep: Fraction) -> bool:
    return (x - rep).denominator == 1


def build_quiver(b: UniPoly, class_rep, window: tuple[int, int]) -> QuiverGraph:
    """Vertices ``class_rep + j`` for ``lo <= j <= hi``, edges flagged from b."""
    rr = rational_roots(b)
    if not rr.split:
        raise NotRationalSplit(f"{b} leaves the non-split factor {rr.residual}")
    rep = Q(class_rep)
    lo, hi = window
    if hi < lo:
        raise ValueError("empty window")
    verts = tuple(rep + j for j in range(lo, hi + 1))
    bstar = shift_star(b)
    z_edges, d_edges = [], []
    for lam in verts[:-1]:
        bz = b(lam)
        z_edges.append(QuiverEdge(lam, lam + 1, bz != 0, f"b({fmt_q(lam)})={fmt_q(bz)}"))
        bd = bstar(lam + 1)
        d_edges.append(QuiverEdge(lam + 1, lam, bd != 0, f"b*({fmt_q(lam + 1)})={fmt_q(bd)}"))
    in_class = sorted({r for r in rr.roots if _in_class(r, rep)})
    outside = tuple(r for r in in_class if not (verts[0] <= r < verts[-1]))
    return QuiverGraph(rep, verts, tuple(z_edges), tuple(d_edges), tuple(in_class), outside)


def _node(x: Fraction) -> str:
    return json.dumps(fmt_q(x))


def emit_dot(g: QuiverGraph) -> str:
    """DOT digraph: invertible arrows solid, the others dashed, witness in the label."""
    lines = ["digraph quiver {", "  rankdir=LR;"]
    for v in g.vertices:
        lines.append(f"  {_node(v)} [label={_node(v)}];")
    for kind, edges in (("z", g.z_edges), ("delta", g.delta_edges)):
        for e in edges:
            style = "solid" if e.iso else "dashed"
            label = json.dumps(f"{kind}: {e.witness}")
            lines.append(f"  {_node(e.source)} -> {_node(e.target)} [label={label}, style={style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def quiver_json(g: QuiverGraph) -> dict:
    def edge(e: QuiverEdge) -> dict:
        return {"from": fmt_q(e.source), "to": fmt_q(e.target), "iso": e.iso, "witness": e.witness}

    return {
        "class_rep": fmt_q(g.class_rep),
        "vertices": [fmt_q(v) for v in g.vertices],
        "z_edges": [edge(e) for e in g.z_edges],
        "delta_edges": [edge(e) for e in g.delta_edges],
        "roots_in_class": [fmt_q(r) for r in g.roots_in_class],
        "roots_outside_window": [fmt_q(r) for r in g.roots_outside_window],
    }


def oracle_flags(b: UniPoly, class_rep, window: tuple[int, int]) -> tuple[list[bool], list[bool]]:
    """Invertibility of each arrow from ranks of explicit matrices.

    The test module is ``z^class_rep C[z, 1/z]`` cut to the window, on which
    z and ``delta = z^-1 b*(theta)`` act by their theta-form rules.  An arrow
    between one-dimensional weight spaces is declared invertible when the
    round trip ``delta z`` (resp. ``z delta``) has full rank there.
    """
    rep = Q(class_rep)
    lo, hi = window
    verts = [rep + j for j in range(lo, hi + 1)]
    index = {v: i for i, v in enumerate(verts)}
    size = len(verts)
    zop = ThetaOp.z()
    dop = ThetaOp.delta(shift_star(b))

    def matrix(op: ThetaOp):
        m = [[Fraction(0)] * size for _ in range(size)]
        for v in verts:
            for e, c in op.act(v).items():
                if e in index:
                    m[index[e]][index[v]] = c
        return m

    Z, D = matrix(zop), matrix(dop)
    z_flags, d_flags = [], []
    for i in range(size - 1):
        # block maps between weight spaces i and i+1
        z_blk = [[Z[i + 1][i]]]
        d_blk = [[D[i][i + 1]]]
        z_flags.append(rank(matmul(d_blk, z_blk)) == 1)
        d_flags.append(rank(matmul(z_blk, d_blk)) == 1)
    return z_flags, d_flags
