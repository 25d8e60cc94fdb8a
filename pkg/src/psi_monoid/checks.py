"""The property suite behind ``psi-monoid check``.

Each check returns a :class:`CheckReport`.  Randomized checks draw from a
``random.Random(seed)`` so that a given seed and bound always give the same
output.
"""

from __future__ import annotations

import random
from typing import Callable

from . import builtin
from .constructions import check_exactness, wedge
from .graph import (
    Loop,
    StratGraph,
    connected_component,
    enumerate_loops,
    factorize_loop,
    iter_loops,
    loop_dagger,
    primitive_orbits,
    primitive_loops,
    random_graph,
    random_loop,
    realize_3manifold,
)
from .quotient import group_inv, group_mul, quotient_map, reduce_path, spanning_tree_presentation
from .reports import CheckReport
from .spheres import psi_sphere, tangle_interpretation
from .words import (
    MonoidHom,
    MonoidKind,
    Word,
    check_unitarity,
    direct_product,
    factorize_free_product,
    word_dagger,
)


def random_word(m: MonoidKind, rng: random.Random, max_len: int) -> Word:
    letters = m.letters()
    return Word(tuple(rng.choice(letters) for _ in range(rng.randrange(max_len + 1))))


def reduce_random_order(g: StratGraph, edges, rng: random.Random) -> tuple[str, ...]:
    """Delete a randomly chosen cancellable adjacent pair until none is left."""
    path = list(edges)
    while True:
        spots = [i for i in range(len(path) - 1) if g.inv(path[i]) == path[i + 1]]
        if not spots:
            return tuple(path)
        i = rng.choice(spots)
        del path[i : i + 2]


def _report(name: str, cases, predicate: Callable[..., bool], show=str) -> CheckReport:
    rep = CheckReport(name, True)
    for case in cases:
        rep.checked += 1
        if not predicate(case):
            rep.counterexamples.append(show(case))
    rep.passed = not rep.counterexamples
    return rep


def check_word_laws(rng: random.Random, max_len: int, samples: int = 200) -> list[CheckReport]:
    out = []
    for m in (MonoidKind.free("a", "b", "e", self_dual=["e"]),
              MonoidKind.free_commutative("a", "b", "e", self_dual=["e"])):
        triples = [tuple(random_word(m, rng, max_len) for _ in range(3)) for _ in range(samples)]
        out.append(_report(
            f"dagger involution + anti-hom in {m.kind.value}",
            triples,
            lambda t, m=m: m.dagger(m.dagger(t[0])) == m.normalize(t[0])
            and m.dagger(m.mul(t[0], t[1])) == m.mul(m.dagger(t[1]), m.dagger(t[0])),
            show=lambda t: f"{t[0]} / {t[1]}",
        ))
        out.append(_report(
            f"normal form is a congruence in {m.kind.value}",
            triples,
            lambda t, m=m: m.mul(m.mul(t[0], t[1]), t[2]) == m.mul(t[0], m.mul(t[1], t[2]))
            and m.mul(m.normalize(t[0]), t[1]) == m.mul(t[0], t[1]),
            show=lambda t: " / ".join(map(str, t)),
        ))
    src = MonoidKind.free("a", "b", "e", self_dual=["e"])
    tgt = MonoidKind.free("x", "y", "z", self_dual=["z"])
    h = MonoidHom(src, tgt, {"a": tgt.parse("x y'"), "b": tgt.parse(""), "e": tgt.parse("x z x'")})
    pairs = [(random_word(src, rng, max_len), random_word(src, rng, max_len)) for _ in range(samples)]
    out.append(_report(
        "homomorphism commutes with mul and dagger",
        pairs,
        lambda p: h(word_dagger(p[0])) == word_dagger(h(p[0])) and h(p[0] * p[1]) == h(p[0]) * h(p[1]),
        show=lambda p: f"{p[0]} / {p[1]}",
    ))
    return out


def check_unitarity_all(max_len: int) -> list[CheckReport]:
    kinds = [MonoidKind.free("a"), MonoidKind.free("a", "b"),
             MonoidKind.free_commutative("a"), MonoidKind.free_commutative("a", "b"),
             MonoidKind.free("a", "e", self_dual=["e"])]
    return [check_unitarity(m, max_len) for m in kinds]


def _graphs(rng: random.Random, n: int = 5) -> list[StratGraph]:
    graphs = [builtin.circle(), builtin.triangle(), builtin.rp2(), builtin.torus()]
    for _ in range(n):
        graphs.append(random_graph(rng, rng.randint(1, 3), rng.randint(1, 3), rng.randint(0, 2)))
    return graphs


def check_loop_laws(rng: random.Random, max_len: int, samples: int = 300) -> list[CheckReport]:
    out = []
    graphs = _graphs(rng)
    cases = []
    for g in graphs:
        cases += [(random_loop(g, rng, max_len), random_loop(g, rng, max_len)) for _ in range(samples // len(graphs))]

    def literal(p: tuple[Loop, Loop]) -> bool:
        a, b = p
        g = a.graph
        product_ok = (a * b).edges == a.edges + b.edges
        dagger_ok = a.dagger().edges == tuple(g.inv(e) for e in reversed(a.edges))
        return product_ok and dagger_ok and a.dagger().dagger() == a and (a * b).dagger() == b.dagger() * a.dagger()

    out.append(_report("loop mul/dagger are literal and satisfy dagger axioms", cases, literal,
                       show=lambda p: f"{p[0]} / {p[1]}"))

    def orbits_ok(g: StratGraph) -> bool:
        for orbit in primitive_orbits(g, min(max_len, 5)):
            fixed = loop_dagger(orbit[0]) == orbit[0]
            if len(orbit) not in (1, 2) or fixed != (len(orbit) == 1):
                return False
        return True

    out.append(_report("primitive orbits have size 1 (self-dual) or 2", graphs, orbits_ok))

    def roundtrip(g: StratGraph) -> bool:
        bound = min(max_len, 5)
        p = primitive_loops(g, bound)
        words = set()
        for loop in iter_loops(g, bound):
            w = factorize_loop(loop, p)
            if p.expand(w) != loop or factorize_loop(p.expand(w), p) != w:
                return False
            words.add(w)
        return len(words) == sum(1 for _ in iter_loops(g, bound))

    out.append(_report("factorize/expand round trip is bijective", graphs, roundtrip))
    return out


def check_circle_is_free(max_len: int) -> CheckReport:
    g = builtin.circle()
    p = primitive_loops(g, max_len)
    m = MonoidKind.free("a")
    words = {w for w in m.words(max_len)}
    images = [factorize_loop(l, p) for l in enumerate_loops(g, max_len)]
    ok = (
        [name for name, _ in p.generators] == ["a"]
        and not p.self_dual
        and len(images) == len(set(images)) == len(words)
        and {str(w) for w in images} == {str(w) for w in words}
    )
    return CheckReport("circle loop monoid = FreeDagger{a}", ok, len(images))


def check_van_kampen(max_len: int) -> CheckReport:
    a, b = builtin.circle(), builtin.circle_b()
    w = wedge(a, b)
    p = primitive_loops(w, max_len)
    left = MonoidKind.free("L_a")
    right = MonoidKind.free("R_b")
    rep = CheckReport("wedge of circles = FreeDagger{a,b} (alternating factorization)", True)
    seen = set()
    for loop in iter_loops(w, max_len):
        rep.checked += 1
        word = factorize_loop(loop, p)
        blocks = factorize_free_product(word, left, right)
        sides = [s for s, _ in blocks]
        alternates = all(x != y for x, y in zip(sides, sides[1:]))
        rejoined = Word(tuple(letter for _, blk in blocks for letter in blk))
        if not alternates or rejoined != word or p.expand(word) != loop or word in seen:
            rep.counterexamples.append(str(loop))
        seen.add(word)
    expected = sum(4**n for n in range(max_len + 1))
    if len(seen) != expected:
        rep.counterexamples.append(f"{len(seen)} words, expected {expected}")
    rep.passed = not rep.counterexamples
    return rep


def check_products(max_len: int) -> list[CheckReport]:
    t = builtin.torus()
    ab, ba = t.loop("a@w v@b"), t.loop("v@b a@w")
    d = direct_product(MonoidKind.free("a"), MonoidKind.free("b"))
    x, y = d.element("a", ""), d.element("", "b")
    counter = CheckReport(
        "torus middle term is not commutative, the direct product is",
        ab != ba and d.mul(x, y) == d.mul(y, x),
        2,
    )
    return [check_exactness(t, max_len), counter]


def check_quotient(rng: random.Random, samples: int = 40, orders: int = 50) -> list[CheckReport]:
    graphs = _graphs(rng)
    paths = []
    for g in graphs:
        for _ in range(samples // len(graphs) + 1):
            paths.append((g, random_loop(g, rng, 12)))
    confluence = _report(
        f"reduction is confluent ({orders} random deletion orders per loop)",
        paths,
        lambda p: all(reduce_random_order(p[0], p[1].edges, rng) == reduce_path(p[0], p[1].edges)
                      for _ in range(orders)),
        show=lambda p: str(p[1]),
    )
    pairs = [(random_loop(g, rng, 8), random_loop(g, rng, 8)) for g in graphs for _ in range(10)]
    hom = _report(
        "quotient map is a homomorphism killing l l'",
        pairs,
        lambda p: quotient_map(p[0] * p[1]) == group_mul(quotient_map(p[0]), quotient_map(p[1]))
        and len(group_mul(quotient_map(p[0]), quotient_map(p[0].dagger()))) == 0
        and group_inv(quotient_map(p[0])) == quotient_map(p[0].dagger()),
        show=lambda p: f"{p[0]} / {p[1]}",
    )

    def tree_agrees(g: StratGraph) -> bool:
        if not _connected(g):
            return True
        pres = spanning_tree_presentation(g)
        loops = enumerate_loops(g, 4)
        by_path = {l: quotient_map(l) for l in loops}
        by_word = {l: pres.word_of(l) for l in loops}
        for l in loops:
            if pres.element_of(by_word[l]) != by_path[l]:
                return False
        return len(set(by_path.values())) == len(set(by_word.values()))

    tree = _report("spanning-tree words agree with path reduction", graphs, tree_agrees)
    return [confluence, hom, tree]


def _connected(g: StratGraph) -> bool:
    return connected_component(g, g.base) == set(g.vertices)


def check_realization(rng: random.Random, n: int = 20) -> CheckReport:
    graphs = [random_graph(rng, rng.randint(1, 5), rng.randint(0, 6), rng.randint(0, 3), connected=False)
              for _ in range(n)]

    def counts(g: StratGraph) -> bool:
        r = realize_3manifold(g)
        return (len(r.components), len(r.bridges), len(r.rp2_plumbings)) == (
            len(g.vertices), len(g.paired_orbits()), len(g.self_dual_edges()))

    return _report("3-manifold recipe sizes = (|V|, paired orbits, self-dual edges)", graphs, counts)


def check_spheres(max_len: int) -> list[CheckReport]:
    out = []
    bound = min(max_len, 4)
    for r in (1, 2):
        m = psi_sphere(1, r)
        g = builtin.circle()
        for _ in range(r - 1):
            g = wedge(g, builtin.circle_b())
        p = primitive_loops(g, bound)
        n_loops = sum(1 for _ in iter_loops(g, bound))
        n_words = sum(1 for _ in m.words(bound))
        ok = len(p.generators) == r and not p.self_dual and n_loops == n_words
        out.append(CheckReport(f"psi_1 of a wedge of {r} circles matches psi_sphere(1,{r})", ok, n_loops))
    for k in (1, 2):
        m = psi_sphere(k, 2)
        words = list(m.words(bound))
        configs = [tangle_interpretation(w, k, 2) for w in words]
        injective = len(set(configs)) == len(configs)
        dagger_ok = all(tangle_interpretation(m.dagger(w), k, 2) == c.dagger() for w, c in zip(words, configs))
        out.append(CheckReport(f"tangle rendering injective and dagger-compatible (k={k})",
                               injective and dagger_ok, len(words)))
        out.append(check_unitarity(m, bound))
    return out


def check_non_finite_generation(max_len: int) -> CheckReport:
    g = builtin.triangle()
    counts = [len(primitive_loops(g, n).generators) for n in range(2, max(max_len, 3) + 1)]
    ok = all(a < b for a, b in zip(counts, counts[1:]))
    return CheckReport("triangle generator count strictly increasing", ok, len(counts),
                       detail="counts " + ",".join(map(str, counts)))


def run_all(seed: int = 0, max_len: int = 6) -> list[CheckReport]:
    rng = random.Random(seed)
    reports: list[CheckReport] = []
    reports += check_word_laws(rng, max_len)
    reports += check_unitarity_all(max_len)
    reports += check_loop_laws(rng, max_len)
    reports.append(check_circle_is_free(max_len))
    reports.append(check_van_kampen(max_len))
    reports += check_products(min(max_len, 5))
    reports += check_quotient(rng)
    reports.append(check_realization(rng))
    reports += check_spheres(max_len)
    reports.append(check_non_finite_generation(max_len))
    return reports
