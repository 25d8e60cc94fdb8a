"""The quotient of the loop monoid by ``a a' = 1``: the fundamental group.

Imposing ``a a' = 1`` for every loop is the same as allowing single bight
moves, i.e. inserting or deleting an adjacent pair ``e, inv(e)``.  Deleting
such pairs is a terminating, confluent rewriting system, so reduced paths
are normal forms.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .errors import GraphError
from .graph import (
    Loop,
    StratGraph,
    connected_component,
    generator_name,
    loop_dagger,
    make_loop,
    walk_end,
)
from .words import Generator, Kind, Letter, MonoidKind, Word, parse_word


def reduce_path(g: StratGraph, edges: Sequence[str], start: str | None = None) -> tuple[str, ...]:
    """Cancel adjacent ``e, inv(e)`` pairs until none remain (for self-dual ``e``, ``e, e``).

    Pass ``start`` to have the path checked for composability first.
    """
    if start is not None:
        walk_end(g, start, edges)
    inv = g.involution
    stack: list[str] = []
    for e in edges:
        if stack and stack[-1] == inv[e]:
            stack.pop()
        else:
            stack.append(e)
    return tuple(stack)


def is_reduced(g: StratGraph, edges: Sequence[str]) -> bool:
    return all(g.inv(a) != b for a, b in zip(edges, edges[1:]))


@dataclass(frozen=True)
class GroupElement:
    edges: tuple[str, ...]
    base: str
    graph: StratGraph = field(compare=False, repr=False)

    def __mul__(self, other: GroupElement) -> GroupElement:
        return group_mul(self, other)

    def inverse(self) -> GroupElement:
        return group_inv(self)

    def __len__(self) -> int:
        return len(self.edges)

    def __str__(self) -> str:
        return " ".join(self.edges) if self.edges else "ε"


def quotient_map(loop: Loop) -> GroupElement:
    return GroupElement(reduce_path(loop.graph, loop.edges), loop.base, loop.graph)


def identity(g: StratGraph) -> GroupElement:
    return GroupElement((), g.base, g)


def group_mul(x: GroupElement, y: GroupElement) -> GroupElement:
    if x.base != y.base:
        raise GraphError(f"base mismatch: {x.base!r} vs {y.base!r}")
    return GroupElement(reduce_path(x.graph, x.edges + y.edges), x.base, x.graph)


def group_inv(x: GroupElement) -> GroupElement:
    return quotient_map(loop_dagger(Loop(x.edges, x.base, x.graph)))


def free_reduce(word: Word) -> Word:
    """Reduce in the free product of Z's and Z/2's: cancel ``g g'`` and, for involutive ``g``, ``g g``."""
    stack: list[Letter] = []
    for letter in word:
        if stack and stack[-1] == letter.dagger():
            stack.pop()
        else:
            stack.append(letter)
    return Word(tuple(stack))


@dataclass(frozen=True)
class GroupPresentation:
    """pi_1 of the graph: one generator per dagger orbit off a spanning tree.

    Generators from self-dual loops are involutive (``g^2 = 1``); the rest
    are free.
    """

    graph: StratGraph = field(repr=False)
    tree_edges: tuple[str, ...]
    generators: tuple[tuple[str, str], ...]
    involutive: frozenset[str]
    tree_paths: dict[str, tuple[str, ...]] = field(repr=False)

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def alphabet(self) -> MonoidKind:
        return MonoidKind(
            Kind.FREE_DAGGER,
            tuple(Generator(name, name in self.involutive) for name, _ in self.generators),
        )

    def _letters(self) -> dict[str, Letter]:
        table = {}
        for gen in self.alphabet.alphabet:
            edge = dict(self.generators)[gen.name]
            table[edge] = Letter(gen)
            table[self.graph.inv(edge)] = Letter(gen, True)
        return table

    def word_of(self, x: GroupElement | Loop) -> Word:
        """The reduced word of a loop's class; tree edges are invisible."""
        table = self._letters()
        letters = [table[e] for e in x.edges if e in table]
        return free_reduce(Word(tuple(letters)))

    def element_of(self, word: Word | str) -> GroupElement:
        """Inverse of :meth:`word_of`: route each generator edge through the tree."""
        if isinstance(word, str):
            word = parse_word(word, self.alphabet)
        g = self.graph
        reps = dict(self.generators)
        edges: list[str] = []
        for letter in word:
            e = reps[letter.name]
            if letter.daggered:
                e = g.inv(e)
            edges.extend(self.tree_paths[g.src(e)])
            edges.append(e)
            edges.extend(_reverse(g, self.tree_paths[g.dst(e)]))
        return quotient_map(make_loop(g, edges))

    def describe(self) -> str:
        free = [n for n, _ in self.generators if n not in self.involutive]
        inv = [n for n, _ in self.generators if n in self.involutive]
        parts = [f"Z({n})" for n in free] + [f"Z/2({n})" for n in inv]
        return " * ".join(parts) if parts else "trivial group"

    def to_dict(self) -> dict:
        return {
            "tree_edges": list(self.tree_edges),
            "generators": [
                {"name": n, "edge": e, "involutive": n in self.involutive}
                for n, e in self.generators
            ],
            "group": self.describe(),
        }


def _reverse(g: StratGraph, edges: Sequence[str]) -> list[str]:
    return [g.inv(e) for e in reversed(edges)]


def spanning_tree_presentation(g: StratGraph) -> GroupPresentation:
    """BFS spanning tree from the base, edges taken in name order."""
    g.check()
    if connected_component(g, g.base) != set(g.vertices):
        missing = sorted(set(g.vertices) - connected_component(g, g.base))
        raise GraphError(f"graph is disconnected; unreachable from base: {', '.join(missing)}")
    tree_paths: dict[str, tuple[str, ...]] = {g.base: ()}
    tree_orbits: set[tuple[str, ...]] = set()
    tree_edges = []
    queue = deque([g.base])
    while queue:
        v = queue.popleft()
        for e in g.out_edges[v]:
            if e.dst not in tree_paths:
                tree_paths[e.dst] = tree_paths[v] + (e.name,)
                tree_orbits.add(g.orbit(e.name))
                tree_edges.append(e.name)
                queue.append(e.dst)
    taken: set[str] = set()
    gens, involutive = [], set()
    for orbit in g.orbits:
        if orbit in tree_orbits:
            continue
        # prefer the undaggered-looking name as the representative
        rep = min(orbit, key=lambda e: ("'" in e, e))
        name = _ident(rep, taken)
        taken.add(name)
        gens.append((name, rep))
        if len(orbit) == 1:
            involutive.add(name)
    return GroupPresentation(g, tuple(tree_edges), tuple(gens), frozenset(involutive), tree_paths)


def _ident(edge: str, taken: set[str]) -> str:
    return generator_name((edge,), taken)
