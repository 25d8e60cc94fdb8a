"""Command-line front end: ``psi-monoid <subcommand> ...``.

Exit status is 0 on success, 1 on a domain error (bad graph, bad word,
failed check) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import builtin
from .checks import run_all
from .constructions import ProductGraph, check_exactness, product, wedge
from .errors import PsiError
from .graph import (
    StratGraph,
    crossing_profile,
    enumerate_loops,
    factorize_loop,
    load_graph,
    primitive_orbits,
    primitive_loops,
    realize_3manifold,
    validate,
)
from .quotient import quotient_map, spanning_tree_presentation
from .spheres import psi_sphere, tangle_interpretation
from .words import MonoidKind, parse_word


def _graph(spec: str, base: str | None = None, check: bool = True) -> StratGraph:
    if os.path.exists(spec):
        g = load_graph(spec)
    elif spec in builtin.NAMES:
        g = builtin.builtin_graph(spec)
    else:
        raise PsiError(
            f"no such graph file {spec!r} (bundled graphs: {', '.join(builtin.NAMES)})"
        )
    if base is not None:
        g = g.with_base(base)
    return g.check() if check else g


def _monoid_for(words: Sequence[str], args) -> MonoidKind:
    names: list[str] = []
    for text in words:
        for letter in parse_word(text):
            if letter.name not in names:
                names.append(letter.name)
    names += [n for n in args.self_dual if n not in names]
    factory = MonoidKind.free_commutative if args.commutative else MonoidKind.free
    return factory(*sorted(names), self_dual=args.self_dual)


def _emit(args, data, text: str) -> None:
    if args.json:
        print(json.dumps(data, indent=2, ensure_ascii=False))
    else:
        print(text)


def cmd_validate(args) -> int:
    g = _graph(args.graph, args.base, check=False)
    problems = validate(g)
    _emit(args, {"ok": not problems, "violations": problems},
          "ok" if not problems else "\n".join(f"error: {p}" for p in problems))
    return 1 if problems else 0


def cmd_loops(args) -> int:
    g = _graph(args.graph, args.base)
    loops = enumerate_loops(g, args.max_len)
    _emit(args, [list(l.edges) for l in loops], "\n".join(str(l) for l in loops))
    return 0


def cmd_primitive(args) -> int:
    g = _graph(args.graph, args.base)
    orbits = primitive_orbits(g, args.max_len)
    data = [{"orbit": [str(l) for l in orbit], "self_dual": len(orbit) == 1} for orbit in orbits]
    lines = [
        f"{' | '.join(str(l) for l in orbit):40}  {'self-dual' if len(orbit) == 1 else ''}".rstrip()
        for orbit in orbits
    ]
    _emit(args, data, "\n".join(lines) if lines else "(none)")
    return 0


def cmd_present(args) -> int:
    g = _graph(args.graph, args.base)
    p = primitive_loops(g, args.max_len)
    width = max((len(n) for n, _ in p.generators), default=0)
    lines = [f"generators (primitive loops up to length {args.max_len}): {len(p.generators)}"]
    lines += [f"  {name:<{width}}  = {loop}" for name, loop in p.generators]
    lines.append("J (l = l'): " + (", ".join(sorted(p.self_dual)) or "∅"))
    _emit(args, p.to_dict(), "\n".join(lines))
    return 0


def cmd_factorize(args) -> int:
    g = _graph(args.graph, args.base)
    p = primitive_loops(g, args.max_len)
    word = factorize_loop(g.loop(args.loop), p)
    _emit(args, {"loop": args.loop, "word": str(word)}, str(word))
    return 0


def cmd_crossings(args) -> int:
    g = _graph(args.graph, args.base)
    prof = crossing_profile(g.loop(args.loop))
    lines = []
    for orbit, n in prof.crossings.items():
        signed = prof.signed.get(orbit)
        lines.append(f"{' '.join(orbit):20} crossings={n}" + ("" if signed is None else f" signed={signed:+d}"))
    _emit(args, prof.to_dict(), "\n".join(lines))
    return 0


def cmd_mul(args) -> int:
    if args.graph:
        g = _graph(args.graph, args.base)
        out = str(g.loop(args.left) * g.loop(args.right))
    else:
        m = _monoid_for([args.left, args.right], args)
        out = str(m.mul(m.parse(args.left), m.parse(args.right)))
    _emit(args, {"result": out}, out)
    return 0


def cmd_dagger(args) -> int:
    if args.graph:
        g = _graph(args.graph, args.base)
        out = str(g.loop(args.word).dagger())
    else:
        m = _monoid_for([args.word], args)
        out = str(m.dagger(m.parse(args.word)))
    _emit(args, {"result": out}, out)
    return 0


def cmd_normalize(args) -> int:
    m = _monoid_for([args.word], args)
    out = str(m.normalize(m.parse(args.word)))
    _emit(args, {"monoid": m.kind.value, "result": out}, out)
    return 0


def cmd_quotient(args) -> int:
    g = _graph(args.graph, args.base)
    x = quotient_map(g.loop(args.loop))
    pres = spanning_tree_presentation(g)
    word = pres.word_of(x)
    data = {"reduced": list(x.edges), "word": str(word), "group": pres.describe()}
    _emit(args, data, f"reduced: {x}\nword:    {word}")
    return 0


def cmd_pi1(args) -> int:
    g = _graph(args.graph, args.base)
    pres = spanning_tree_presentation(g)
    lines = [f"group:      {pres.describe()}",
             f"tree edges: {' '.join(pres.tree_edges) or '∅'}"]
    lines += [f"  {n} <- edge {e}" + ("  (order 2)" if n in pres.involutive else "")
              for n, e in pres.generators]
    _emit(args, pres.to_dict(), "\n".join(lines))
    return 0


def _write_graph(args, g: StratGraph) -> int:
    text = g.to_json()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_wedge(args) -> int:
    return _write_graph(args, wedge(_graph(args.left), _graph(args.right)))


def cmd_product(args) -> int:
    return _write_graph(args, product(_graph(args.left), _graph(args.right)))


def cmd_exactness(args) -> int:
    g = _graph(args.graph)
    if args.other is not None:
        g = product(g, _graph(args.other))
    if not isinstance(g, ProductGraph):
        raise PsiError("exactness needs a product graph (or two factor graphs)")
    rep = check_exactness(g, args.max_len)
    _emit(args, rep.to_dict(), rep.line())
    return 0 if rep.passed else 1


def cmd_realize(args) -> int:
    g = _graph(args.graph, args.base)
    r = realize_3manifold(g)
    lines = [f"components: {len(r.components)} x S3 ({', '.join(r.components)})"]
    lines += [f"bridge:     {u} # {v}  (wall S2 for {' '.join(o)})" for u, v, o in r.bridges]
    lines += [f"RP2 plumb:  at {v}  (wall RP2 for {e})" for v, e in r.rp2_plumbings]
    _emit(args, r.to_dict(), "\n".join(lines))
    return 0


def cmd_sphere(args) -> int:
    m = psi_sphere(args.k, args.r)
    _emit(args, m.to_dict(), str(m))
    return 0


def cmd_tangle(args) -> int:
    conf = tangle_interpretation(args.word, args.k, args.r)
    _emit(args, conf.to_dict(), str(conf))
    return 0


def cmd_check(args) -> int:
    reports = run_all(seed=args.seed, max_len=args.max_len)
    ok = all(r.passed for r in reports)
    if args.json:
        print(json.dumps({"passed": ok, "checks": [r.to_dict() for r in reports]}, indent=2))
    else:
        for r in reports:
            print(r.line())
        print(f"{sum(r.passed for r in reports)}/{len(reports)} checks passed")
    return 0 if ok else 1


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="psi-monoid",
        description="Transversal homotopy monoids of stratified manifolds via graphs with involution.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    graph_opts = argparse.ArgumentParser(add_help=False)
    graph_opts.add_argument("--base", help="override the base vertex")
    bound = argparse.ArgumentParser(add_help=False)
    bound.add_argument("--max-len", type=_non_negative, default=6, help="length bound (default 6)")
    word_opts = argparse.ArgumentParser(add_help=False)
    word_opts.add_argument("--self-dual", action="append", default=[], metavar="GEN",
                           help="declare a self-dual generator (repeatable)")
    word_opts.add_argument("--commutative", action="store_true",
                           help="work in the free commutative dagger monoid")

    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help, parents=()):
        p = sub.add_parser(name, help=help, parents=[common, *parents])
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "check graph invariants", [graph_opts]).add_argument("graph")
    add("loops", cmd_loops, "list based loops", [graph_opts, bound]).add_argument("graph")
    add("primitive", cmd_primitive, "list primitive loop orbits", [graph_opts, bound]).add_argument("graph")
    add("present", cmd_present, "presentation by primitive loops", [graph_opts, bound]).add_argument("graph")
    p = add("factorize", cmd_factorize, "write a loop in the generators", [graph_opts, bound])
    p.add_argument("graph")
    p.add_argument("loop")
    p = add("crossings", cmd_crossings, "crossing counts of a loop", [graph_opts])
    p.add_argument("graph")
    p.add_argument("loop")
    p = add("mul", cmd_mul, "multiply two words (or loops with --graph)", [graph_opts, word_opts])
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--graph")
    p = add("dagger", cmd_dagger, "dagger of a word (or loop with --graph)", [graph_opts, word_opts])
    p.add_argument("word")
    p.add_argument("--graph")
    add("normalize", cmd_normalize, "normal form of a word", [word_opts]).add_argument("word")
    p = add("quotient", cmd_quotient, "image of a loop in the fundamental group", [graph_opts])
    p.add_argument("graph")
    p.add_argument("loop")
    add("pi1", cmd_pi1, "spanning-tree presentation of the fundamental group", [graph_opts]).add_argument("graph")
    for name, func, help in (("wedge", cmd_wedge, "wedge of two graphs (JSON)"),
                             ("product", cmd_product, "product of two graphs (JSON)")):
        p = add(name, func, help)
        p.add_argument("left")
        p.add_argument("right")
        p.add_argument("-o", "--output", help="write JSON here instead of stdout")
    p = add("exactness", cmd_exactness, "check the split exact sequence of a product", [bound])
    p.add_argument("graph", help="a product graph, or the left factor if OTHER is given")
    p.add_argument("other", nargs="?", help="right factor")
    add("realize", cmd_realize, "3-manifold realizing a graph", [graph_opts]).add_argument("graph")
    p = add("sphere", cmd_sphere, "monoid of a wedge of point-stratified spheres")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, default=1)
    p = add("tangle", cmd_tangle, "framed point configuration of a word")
    p.add_argument("word")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int)
    p = add("check", cmd_check, "run the property suite", [bound])
    p.add_argument("--seed", type=int, default=0)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (PsiError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
