"""Stratification graphs: directed multigraphs with an edge involution.

One vertex per open stratum.  A codimension-1 stratum with trivial normal
bundle gives a pair of edges swapped by the involution; a non-orientable one
gives a single self-dual loop.  Based loops in the graph are exactly the
first transversal homotopy monoid, with equality being literal equality of
edge sequences.
"""

from __future__ import annotations

import json
import random
import re
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import GraphError, ParseError, PsiError
from .words import IDENT_RE, UNIT_SYMBOL, Generator, Kind, Letter, MonoidKind, Word, parse_word


@dataclass(frozen=True)
class Edge:
    name: str
    src: str
    dst: str


@dataclass(frozen=True)
class StratGraph:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    involution: Mapping[str, str]
    base: str

    @classmethod
    def build(
        cls,
        vertices: Iterable[str],
        edges: Iterable[tuple[str, str, str] | Edge],
        involution: Mapping[str, str],
        base: str,
    ) -> StratGraph:
        """Construct a graph, filling in the reverse direction of ``involution``.

        Only missing entries are filled in, so an inconsistent map is kept
        as given and reported by :func:`validate`.
        """
        edge_objs = tuple(e if isinstance(e, Edge) else Edge(*e) for e in edges)
        inv = dict(involution)
        for k, v in list(involution.items()):
            inv.setdefault(v, k)
        return cls(tuple(vertices), edge_objs, inv, base)

    @cached_property
    def edge_map(self) -> dict[str, Edge]:
        return {e.name: e for e in self.edges}

    @cached_property
    def out_edges(self) -> dict[str, list[Edge]]:
        out: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in sorted(self.edges, key=lambda e: e.name):
            out.setdefault(e.src, []).append(e)
        return out

    def inv(self, name: str) -> str:
        return self.involution[name]

    def src(self, name: str) -> str:
        return self.edge_map[name].src

    def dst(self, name: str) -> str:
        return self.edge_map[name].dst

    def is_self_dual(self, name: str) -> bool:
        return self.involution[name] == name

    def orbit(self, name: str) -> tuple[str, ...]:
        """The dagger orbit of an edge, i.e. its codimension-1 stratum."""
        return tuple(sorted({name, self.involution[name]}))

    @cached_property
    def orbits(self) -> list[tuple[str, ...]]:
        return sorted({self.orbit(e.name) for e in self.edges})

    def paired_orbits(self) -> list[tuple[str, str]]:
        return [o for o in self.orbits if len(o) == 2]

    def self_dual_edges(self) -> list[str]:
        return [o[0] for o in self.orbits if len(o) == 1]

    def with_base(self, base: str) -> StratGraph:
        return StratGraph(self.vertices, self.edges, self.involution, base)

    def check(self) -> StratGraph:
        """Return ``self`` if valid, else raise :class:`GraphError`."""
        if not self.__dict__.get("_valid"):
            problems = validate(self)
            if problems:
                raise GraphError("invalid graph", problems)
            self.__dict__["_valid"] = True
        return self

    def loop(self, spec: str | Sequence[str]) -> Loop:
        """Parse a based loop from whitespace-separated edge names."""
        if isinstance(spec, str):
            names = _split_edges(spec)
        else:
            names = tuple(spec)
        return make_loop(self, names)

    @property
    def unit(self) -> Loop:
        return Loop((), self.base, self)

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "base": self.base,
            "edges": [{"name": e.name, "src": e.src, "dst": e.dst} for e in self.edges],
            "involution": {e.name: self.involution.get(e.name) for e in self.edges},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    def __str__(self) -> str:
        return (
            f"StratGraph(|V|={len(self.vertices)}, |E|={len(self.edges)}, base={self.base!r})"
        )


def _split_edges(text: str) -> tuple[str, ...]:
    return tuple(t for t in text.split() if t != UNIT_SYMBOL)


def validate(g: StratGraph) -> list[str]:
    """Every violated graph invariant, as human-readable messages."""
    problems: list[str] = []
    vertex_counts = Counter(g.vertices)
    for v, n in sorted(vertex_counts.items()):
        if n > 1:
            problems.append(f"duplicate vertex {v!r}")
    edge_counts = Counter(e.name for e in g.edges)
    for name, n in sorted(edge_counts.items()):
        if n > 1:
            problems.append(f"duplicate edge {name!r}")
    if g.base not in vertex_counts:
        problems.append(f"base vertex {g.base!r} does not exist")
    for e in g.edges:
        for end in (e.src, e.dst):
            if end not in vertex_counts:
                problems.append(f"edge {e.name!r}: unknown vertex {end!r}")
    names = set(edge_counts)
    for k in sorted(g.involution):
        if k not in names:
            problems.append(f"involution mentions unknown edge {k!r}")
    for e in g.edges:
        if e.name not in g.involution:
            problems.append(f"edge {e.name!r} has no involution partner")
            continue
        partner = g.involution[e.name]
        if partner not in names:
            problems.append(f"edge {e.name!r}: involution partner {partner!r} does not exist")
            continue
        back = g.involution.get(partner)
        if back != e.name:
            problems.append(
                f"not an involution: {e.name!r} -> {partner!r} -> {back!r}"
            )
            continue
        p = g.edge_map[partner]
        if partner == e.name and e.src != e.dst:
            problems.append(f"self-dual edge must be a loop: {e.name!r} ({e.src}->{e.dst})")
        elif p.src != e.dst or p.dst != e.src:
            problems.append(
                f"involution must reverse edges: {e.name!r} ({e.src}->{e.dst}) "
                f"vs {partner!r} ({p.src}->{p.dst})"
            )
    return problems


def graph_from_dict(data: Mapping, source: str = "<graph>") -> StratGraph:
    """Build a graph from the JSON object format (or a strata description)."""
    if not isinstance(data, Mapping):
        raise ParseError("graph JSON must be an object", source=source)
    if "open_strata" in data:
        return from_strata(data["open_strata"], data.get("walls", []), data.get("base"))
    if "product" in data:
        from .constructions import product_from_dict

        return product_from_dict(data, source)
    try:
        edges = [(e["name"], e["src"], e["dst"]) for e in data["edges"]]
        return StratGraph.build(data["vertices"], edges, data.get("involution", {}), data["base"])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"graph JSON is missing or has a malformed field: {exc}", source=source)


def graph_from_json(text: str, source: str = "<graph>") -> StratGraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno, source) from None
    return graph_from_dict(data, source)


def load_graph(path: str) -> StratGraph:
    with open(path, encoding="utf-8") as fh:
        return graph_from_json(fh.read(), source=path)


@dataclass(frozen=True)
class Loop:
    """A based loop; two loops are equal iff their edge sequences are."""

    edges: tuple[str, ...]
    base: str
    graph: StratGraph = field(compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.edges)

    def __mul__(self, other: Loop) -> Loop:
        return loop_mul(self, other)

    def dagger(self) -> Loop:
        return loop_dagger(self)

    def __str__(self) -> str:
        return " ".join(self.edges) if self.edges else UNIT_SYMBOL


def walk_end(g: StratGraph, start: str, edges: Sequence[str]) -> str:
    """Follow ``edges`` from ``start``; raise unless they compose."""
    here = start
    for i, name in enumerate(edges):
        if name not in g.edge_map:
            raise GraphError(f"unknown edge {name!r} at position {i + 1}")
        e = g.edge_map[name]
        if e.src != here:
            raise GraphError(
                f"edge {name!r} at position {i + 1} starts at {e.src!r}, path is at {here!r}"
            )
        here = e.dst
    return here


def make_loop(g: StratGraph, edges: Sequence[str]) -> Loop:
    edges = tuple(edges)
    end = walk_end(g, g.base, edges)
    if end != g.base:
        raise GraphError(f"path ends at {end!r}, not at base {g.base!r}")
    return Loop(edges, g.base, g)


def loop_mul(l1: Loop, l2: Loop) -> Loop:
    if l1.base != l2.base:
        raise GraphError(f"base mismatch: {l1.base!r} vs {l2.base!r}")
    if l1.graph is not l2.graph and l1.graph != l2.graph:
        raise GraphError("loops belong to different graphs")
    return Loop(l1.edges + l2.edges, l1.base, l1.graph)


def loop_dagger(l: Loop) -> Loop:
    inv = l.graph.involution
    return Loop(tuple(inv[e] for e in reversed(l.edges)), l.base, l.graph)


def iter_loops(g: StratGraph, max_len: int) -> Iterator[Loop]:
    """Loops at the base of length <= max_len, by length then edge names."""
    g.check()
    layer: list[tuple[tuple[str, ...], str]] = [((), g.base)]
    for n in range(max_len + 1):
        for path, end in layer:
            if end == g.base:
                yield Loop(path, g.base, g)
        if n == max_len:
            break
        layer = [(path + (e.name,), e.dst) for path, end in layer for e in g.out_edges[end]]


def enumerate_loops(g: StratGraph, max_len: int) -> list[Loop]:
    return list(iter_loops(g, max_len))


def iter_primitive_loops(g: StratGraph, max_len: int) -> Iterator[Loop]:
    """Nonempty loops that meet the base vertex only at their two ends."""
    g.check()
    layer = [((e.name,), e.dst) for e in g.out_edges[g.base]]
    for _ in range(max_len):
        nxt = []
        for path, end in layer:
            if end == g.base:
                yield Loop(path, g.base, g)
            else:
                nxt.extend((path + (e.name,), e.dst) for e in g.out_edges[end])
        layer = nxt


def generator_name(edges: tuple[str, ...], taken: set[str]) -> str:
    name = re.sub(r"[^A-Za-z0-9_]", "_", "_".join(edges).replace("'", "d"))
    if not IDENT_RE.fullmatch(name):
        name = "l_" + name
    candidate, i = name, 1
    while candidate in taken:
        candidate = f"{name}_{i}"
        i += 1
    return candidate


@dataclass(frozen=True)
class Presentation:
    """Primitive-loop generators of the loop monoid, up to a length bound.

    ``self_dual`` names the generators whose loop equals its own dagger; they
    carry the relation ``l = l'``.  ``max_len`` records how far the (usually
    infinite) generating set was enumerated.
    """

    graph: StratGraph = field(repr=False)
    base: str
    max_len: int
    generators: tuple[tuple[str, Loop], ...]
    self_dual: frozenset[str]

    @cached_property
    def _lookup(self) -> dict[tuple[str, ...], Letter]:
        table = {}
        for gen in self.monoid.alphabet:
            loop = dict(self.generators)[gen.name]
            table[loop.edges] = Letter(gen)
            table[loop_dagger(loop).edges] = Letter(gen, True)
        return table

    @cached_property
    def monoid(self) -> MonoidKind:
        return MonoidKind(
            Kind.FREE_DAGGER,
            tuple(Generator(name, name in self.self_dual) for name, _ in self.generators),
        )

    def factorize(self, loop: Loop) -> Word:
        return factorize_loop(loop, self)

    def expand(self, word: Word | str) -> Loop:
        if isinstance(word, str):
            word = parse_word(word, self.monoid)
        self.monoid.check_word(word)
        reps = dict(self.generators)
        out = self.graph.unit
        for letter in word:
            piece = reps[letter.name]
            out = out * (loop_dagger(piece) if letter.daggered else piece)
        return out

    def to_dict(self) -> dict:
        return {
            "base": self.base,
            "max_len": self.max_len,
            "generators": [
                {"name": name, "loop": list(loop.edges), "self_dual": name in self.self_dual}
                for name, loop in self.generators
            ],
            "J": sorted(self.self_dual),
        }


def primitive_orbits(g: StratGraph, max_len: int) -> list[tuple[Loop, ...]]:
    """Primitive loops grouped into {l, l'} orbits; each orbit sorted."""
    seen: dict[tuple[str, ...], tuple[Loop, ...]] = {}
    for loop in iter_primitive_loops(g, max_len):
        if loop.edges in seen:
            continue
        d = loop_dagger(loop)
        orbit = tuple(sorted({loop.edges: loop, d.edges: d}.values(), key=lambda x: x.edges))
        for member in orbit:
            seen[member.edges] = orbit
    unique = {orbit[0].edges: orbit for orbit in seen.values()}
    return [unique[k] for k in sorted(unique, key=lambda k: (len(k), k))]


def primitive_loops(g: StratGraph, max_len: int) -> Presentation:
    """Choose the lexicographically least loop of each primitive orbit as a generator."""
    taken: set[str] = set()
    gens = []
    self_dual = set()
    for orbit in primitive_orbits(g, max_len):
        rep = orbit[0]
        name = generator_name(rep.edges, taken)
        taken.add(name)
        gens.append((name, rep))
        if len(orbit) == 1:
            self_dual.add(name)
    return Presentation(g, g.base, max_len, tuple(gens), frozenset(self_dual))


def split_primitive(loop: Loop) -> list[tuple[str, ...]]:
    """Cut a loop at its interior visits to the base vertex."""
    g = loop.graph
    pieces, current = [], []
    for name in loop.edges:
        current.append(name)
        if g.dst(name) == loop.base:
            pieces.append(tuple(current))
            current = []
    return pieces


def factorize_loop(loop: Loop, p: Presentation) -> Word:
    if loop.base != p.base:
        raise GraphError(f"base mismatch: {loop.base!r} vs {p.base!r}")
    letters = []
    for piece in split_primitive(loop):
        try:
            letters.append(p._lookup[piece])
        except KeyError:
            raise GraphError(
                f"primitive factor {' '.join(piece)!r} (length {len(piece)}) is not in the "
                f"presentation built with max_len={p.max_len}; increase max_len"
            ) from None
    return Word(tuple(letters))


@dataclass(frozen=True)
class CrossingProfile:
    """How often a loop crosses each codimension-1 stratum.

    ``crossings`` counts traversals per dagger orbit, ``edge_counts`` per
    directed edge, and ``signed`` is (first edge) minus (its partner) for
    paired orbits.  Self-dual strata have no coorientation, so no sign.
    """

    crossings: dict[tuple[str, ...], int]
    edge_counts: dict[str, int]
    signed: dict[tuple[str, ...], int]

    def to_dict(self) -> dict:
        return {
            "crossings": {" ".join(k): v for k, v in self.crossings.items()},
            "edge_counts": dict(self.edge_counts),
            "signed": {" ".join(k): v for k, v in self.signed.items()},
        }


def crossing_profile(loop: Loop) -> CrossingProfile:
    g = loop.graph
    counts = Counter(loop.edges)
    crossings, signed = {}, {}
    for orbit in g.orbits:
        crossings[orbit] = sum(counts[e] for e in orbit)
        if len(orbit) == 2:
            signed[orbit] = counts[orbit[0]] - counts[orbit[1]]
    edge_counts = {e.name: counts[e.name] for e in sorted(g.edges, key=lambda e: e.name)}
    return CrossingProfile(crossings, edge_counts, signed)


@dataclass(frozen=True)
class SurgeryRecipe:
    """Instructions for a closed stratified 3-manifold realizing a graph.

    Take one 3-sphere per vertex, connect-sum along a bridge for each paired
    orbit (the bridge's 2-sphere slice is the wall), and plumb in the disk
    bundle of the tautological line bundle over RP^2 at each self-dual loop
    (its zero section is the wall).
    """

    components: tuple[str, ...]
    bridges: tuple[tuple[str, str, tuple[str, str]], ...]
    rp2_plumbings: tuple[tuple[str, str], ...]

    def to_dict(self) -> dict:
        return {
            "components": [{"vertex": v, "manifold": "S3"} for v in self.components],
            "bridges": [
                {"between": [u, v], "edges": list(orbit), "wall": "S2"}
                for u, v, orbit in self.bridges
            ],
            "rp2_plumbings": [
                {"vertex": v, "edge": e, "wall": "RP2"} for v, e in self.rp2_plumbings
            ],
        }


def realize_3manifold(g: StratGraph) -> SurgeryRecipe:
    g.check()
    bridges = []
    for a, b in g.paired_orbits():
        e = g.edge_map[a]
        bridges.append((e.src, e.dst, (a, b)))
    plumbings = [(g.src(e), e) for e in g.self_dual_edges()]
    return SurgeryRecipe(tuple(g.vertices), tuple(bridges), tuple(plumbings))


def _stratum_entry(entry) -> tuple[str, bool]:
    if isinstance(entry, str):
        return entry, True
    return entry["name"], bool(entry.get("simply_connected", True))


def from_strata(open_strata: Sequence, walls: Sequence[Mapping], base: str | None = None) -> StratGraph:
    """Build the graph of a stratified manifold from its codim <= 1 strata.

    ``open_strata`` lists names (or ``{"name", "simply_connected"}`` records);
    each wall is ``{"name", "adjacent": [U] or [U, V], "orientable": bool}``.
    An orientable wall ``w`` gives edges ``w`` (first to second adjacent
    stratum) and ``w'`` back; a non-orientable one gives a self-dual loop.
    """
    vertices = []
    for entry in open_strata:
        name, simply_connected = _stratum_entry(entry)
        if not simply_connected:
            raise PsiError(
                f"open stratum {name!r} is not simply connected; the graph model "
                "only covers simply-connected open strata"
            )
        vertices.append(name)
    if not vertices:
        raise PsiError("at least one open stratum is required")
    if base is None:
        base = vertices[0]
    if base not in vertices:
        raise PsiError(f"basepoint stratum {base!r} is not an open stratum")
    edges, inv = [], {}
    for wall in walls:
        name = wall["name"]
        adjacent = list(wall["adjacent"])
        if not 1 <= len(adjacent) <= 2:
            raise PsiError(f"wall {name!r} must border one or two open strata")
        for u in adjacent:
            if u not in vertices:
                raise PsiError(f"wall {name!r} borders unknown stratum {u!r}")
        u, v = adjacent[0], adjacent[-1]
        if wall.get("orientable", True):
            back = name + "'"
            edges += [(name, u, v), (back, v, u)]
            inv[name], inv[back] = back, name
        else:
            if u != v:
                raise PsiError(
                    f"non-orientable wall {name!r} must border a single open stratum "
                    f"on both sides, got {u!r} and {v!r}"
                )
            edges.append((name, u, u))
            inv[name] = name
    return StratGraph.build(vertices, edges, inv, base).check()


def connected_component(g: StratGraph, start: str) -> set[str]:
    seen, queue = {start}, deque([start])
    while queue:
        v = queue.popleft()
        for e in g.out_edges.get(v, []):
            if e.dst not in seen:
                seen.add(e.dst)
                queue.append(e.dst)
    return seen


def random_graph(
    rng: random.Random,
    n_vertices: int = 3,
    n_pairs: int = 3,
    n_self_dual: int = 1,
    connected: bool = True,
) -> StratGraph:
    """A random valid graph; vertices v0.., paired edges p<i>/p<i>', loops s<i>."""
    vertices = [f"v{i}" for i in range(n_vertices)]
    edges, inv = [], {}

    def pair(i, u, v):
        a, b = f"p{i}", f"p{i}'"
        edges.extend([(a, u, v), (b, v, u)])
        inv[a], inv[b] = b, a

    i = 0
    if connected:
        for k in range(1, n_vertices):
            pair(i, vertices[rng.randrange(k)], vertices[k])
            i += 1
    while i < n_pairs:
        pair(i, rng.choice(vertices), rng.choice(vertices))
        i += 1
    for j in range(n_self_dual):
        v = rng.choice(vertices)
        edges.append((f"s{j}", v, v))
        inv[f"s{j}"] = f"s{j}"
    return StratGraph.build(vertices, edges, inv, vertices[0]).check()


def random_loop(g: StratGraph, rng: random.Random, max_len: int) -> Loop:
    """Random walk from the base, closed up along a shortest path home."""
    g.check()
    home = _paths_home(g)
    here, edges = g.base, []
    steps = rng.randrange(max_len + 1)
    for _ in range(steps):
        out = g.out_edges[here]
        if not out:
            break
        e = rng.choice(out)
        edges.append(e.name)
        here = e.dst
    edges.extend(home[here])
    return Loop(tuple(edges), g.base, g)


def _paths_home(g: StratGraph) -> dict[str, tuple[str, ...]]:
    # every edge has a reverse partner, so forward BFS from the base gives paths back
    home: dict[str, tuple[str, ...]] = {g.base: ()}
    queue = deque([g.base])
    while queue:
        v = queue.popleft()
        for e in g.out_edges[v]:
            if e.dst not in home:
                home[e.dst] = (g.inv(e.name),) + home[v]
                queue.append(e.dst)
    return home
