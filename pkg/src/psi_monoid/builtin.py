"""Named example graphs shipped with the package."""

from __future__ import annotations

from importlib import resources

from .graph import StratGraph, graph_from_json

NAMES = ("circle", "circle_b", "triangle", "rp2", "wedge2", "torus")


def builtin_graph(name: str) -> StratGraph:
    text = resources.files("psi_monoid").joinpath("data", f"{name}.json").read_text("utf-8")
    return graph_from_json(text, source=f"{name}.json")


def circle() -> StratGraph:
    return builtin_graph("circle")


def triangle() -> StratGraph:
    return builtin_graph("triangle")


def rp2() -> StratGraph:
    return builtin_graph("rp2")


def torus():
    return builtin_graph("torus")


def circle_b() -> StratGraph:
    return builtin_graph("circle_b")
