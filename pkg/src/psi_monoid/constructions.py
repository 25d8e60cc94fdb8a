"""Wedges and products of stratification graphs, and the maps between them."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Literal, Mapping

from .errors import GraphError, ParseError
from .graph import Edge, Loop, StratGraph, enumerate_loops, iter_loops, loop_dagger
from .reports import CheckReport, combine

Side = Literal["X", "Y"]
WEDGE_BASE = "*"


def wedge(g: StratGraph, h: StratGraph) -> StratGraph:
    """Disjoint union with the two base vertices glued into one.

    Non-base vertices and all edges get ``L.`` / ``R.`` prefixes; the glued
    base is called ``*``.
    """
    g.check()
    h.check()

    def rename(prefix: str, graph: StratGraph):
        vmap = {v: (WEDGE_BASE if v == graph.base else prefix + v) for v in graph.vertices}
        edges = [Edge(prefix + e.name, vmap[e.src], vmap[e.dst]) for e in graph.edges]
        inv = {prefix + k: prefix + v for k, v in graph.involution.items()}
        return [vmap[v] for v in graph.vertices if v != graph.base], edges, inv

    gv, ge, gi = rename("L.", g)
    hv, he, hi = rename("R.", h)
    return StratGraph((WEDGE_BASE, *gv, *hv), tuple(ge + he), {**gi, **hi}, WEDGE_BASE).check()


def pair_name(v: str, w: str) -> str:
    return f"({v},{w})"


@dataclass(frozen=True)
class ProductGraph(StratGraph):
    """The codim <= 1 part of the product stratification of two graphs.

    X-type edge ``e@w`` moves along edge ``e`` of the left factor with the
    right coordinate fixed at ``w``; Y-type ``v@f`` is symmetric.
    ``tags`` maps each edge to ``(side, factor edge, fixed vertex)``.
    """

    left: StratGraph = field(default=None, repr=False)
    right: StratGraph = field(default=None, repr=False)
    tags: Mapping[str, tuple[str, str, str]] = field(default_factory=dict, repr=False)

    def to_dict(self) -> dict:
        data = super().to_dict()
        data["product"] = {"left": self.left.to_dict(), "right": self.right.to_dict()}
        return data

    def factor(self, side: Side) -> StratGraph:
        return self.left if side == "X" else self.right


def product(g: StratGraph, h: StratGraph) -> ProductGraph:
    g.check()
    h.check()
    vertices = tuple(pair_name(v, w) for v in g.vertices for w in h.vertices)
    edges, inv, tags = [], {}, {}
    for e in g.edges:
        for w in h.vertices:
            name = f"{e.name}@{w}"
            edges.append(Edge(name, pair_name(e.src, w), pair_name(e.dst, w)))
            inv[name] = f"{g.inv(e.name)}@{w}"
            tags[name] = ("X", e.name, w)
    for v in g.vertices:
        for f in h.edges:
            name = f"{v}@{f.name}"
            if name in tags:
                raise GraphError(f"product edge name {name!r} is ambiguous; rename the factors")
            edges.append(Edge(name, pair_name(v, f.src), pair_name(v, f.dst)))
            inv[name] = f"{v}@{h.inv(f.name)}"
            tags[name] = ("Y", f.name, v)
    p = ProductGraph(
        vertices, tuple(edges), inv, pair_name(g.base, h.base), left=g, right=h, tags=tags
    )
    return p.check()


def product_from_dict(data: Mapping, source: str = "<graph>") -> ProductGraph:
    """Rebuild a product graph from JSON, checking the listed graph matches its factors."""
    from .graph import graph_from_dict

    factors = data["product"]
    try:
        p = product(graph_from_dict(factors["left"], source), graph_from_dict(factors["right"], source))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed product section: {exc}", source=source) from None
    listed = {k: v for k, v in data.items() if k != "product"}
    expected = {k: v for k, v in p.to_dict().items() if k != "product"}
    if json.dumps(listed, sort_keys=True) != json.dumps(expected, sort_keys=True):
        raise ParseError("product graph does not match the product of its factors", source=source)
    return p


@dataclass(frozen=True)
class LoopMap:
    """A map of loop monoids defined by sending each edge to an edge path."""

    name: str
    source: StratGraph = field(repr=False)
    target: StratGraph = field(repr=False)
    images: Mapping[str, tuple[str, ...]] = field(repr=False)

    def __call__(self, loop: Loop) -> Loop:
        if loop.graph is not self.source and loop.graph != self.source:
            raise GraphError(f"{self.name}: input loop {loop} is not a loop of the source graph")
        out: list[str] = []
        for e in loop.edges:
            out.extend(self.images[e])
        return self.target.loop(out)


def projection_hom(p: ProductGraph, side: Side) -> LoopMap:
    """Forget the other factor: its edges are deleted, ours are unwrapped."""
    images = {}
    for name, (tag, edge, _) in p.tags.items():
        images[name] = (edge,) if tag == side else ()
    return LoopMap(f"proj_{side}", p, p.factor(side), images)


def inclusion_hom(p: ProductGraph, side: Side) -> LoopMap:
    """Include a factor with the other coordinate held at its basepoint."""
    if side == "X":
        images = {e.name: (f"{e.name}@{p.right.base}",) for e in p.left.edges}
    else:
        images = {f.name: (f"{p.left.base}@{f.name}",) for f in p.right.edges}
    return LoopMap(f"incl_{side}", p.factor(side), p, images)


def _in_image_of_incl_x(p: ProductGraph, loop: Loop) -> bool:
    return all(p.tags[e][0] == "X" and p.tags[e][2] == p.right.base for e in loop.edges)


def check_exactness(p: ProductGraph, max_len: int) -> CheckReport:
    """Exhaustive check of the split short exact sequence on loops up to ``max_len``.

    ker(proj_Y) = im(incl_X), proj_X . incl_X = id, proj_Y . incl_Y = id, and
    all four maps preserve the dagger.
    """
    proj_x, proj_y = projection_hom(p, "X"), projection_hom(p, "Y")
    incl_x, incl_y = inclusion_hom(p, "X"), inclusion_hom(p, "Y")

    kernel = CheckReport("ker proj_Y = im incl_X", True)
    dagger = CheckReport("maps commute with dagger", True)
    for loop in iter_loops(p, max_len):
        kernel.checked += 1
        in_kernel = len(proj_y(loop)) == 0
        in_image = _in_image_of_incl_x(p, loop)
        if in_image and incl_x(proj_x(loop)) != loop:
            in_image = False
        if in_kernel != in_image:
            kernel.counterexamples.append(
                f"{loop}: proj_Y={'ε' if in_kernel else 'non-unit'}, in im incl_X={in_image}"
            )
        for f in (proj_x, proj_y):
            dagger.checked += 1
            if f(loop_dagger(loop)) != loop_dagger(f(loop)):
                dagger.counterexamples.append(f"{f.name}({loop})")

    splits = []
    for side, proj, incl in (("X", proj_x, incl_x), ("Y", proj_y, incl_y)):
        rep = CheckReport(f"proj_{side} . incl_{side} = id", True)
        for loop in enumerate_loops(p.factor(side), max_len):
            rep.checked += 1
            if proj(incl(loop)) != loop:
                rep.counterexamples.append(str(loop))
            dagger.checked += 1
            if incl(loop_dagger(loop)) != loop_dagger(incl(loop)):
                dagger.counterexamples.append(f"incl_{side}({loop})")
        splits.append(rep)

    parts = [kernel, *splits, dagger]
    for r in parts:
        r.passed = not r.counterexamples
    return combine(f"exactness (max_len={max_len})", parts)
