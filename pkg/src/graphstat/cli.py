"""Command-line front end: JSON reports for homology, prediction, Morse data and gauge potentials."""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import named
from .complex import build_config_complex
from .connectivity import block_decomposition, is_biconnected, tri_decomposition
from .gauge import (
    GaugeError,
    GaugePotential,
    decompose_ab_s,
    is_topological,
    lift_to_n,
    load_potential,
    one_particle_part,
    random_topological_potential,
    subdivide_potential_for,
)
from .graph import Graph, GraphError, is_sufficiently_subdivided, load_graph, require_connected, subdivide
from .homology import HomologyError, homology_h0, homology_h1
from .morse import classify_critical, run_morse
from .statistics import predict_h1

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL, EXIT_MISMATCH = 0, 1, 2, 3


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # noqa: D401
        raise InputError(message)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _graph(args: argparse.Namespace, digests: dict[str, str]) -> Graph:
    if args.named:
        if args.named not in named.NAMED:
            raise InputError(f"unknown named graph {args.named!r}; choose from {', '.join(named.NAMED)}")
        return named.NAMED[args.named]()
    text = _read(args.graph)
    digests[args.graph] = hashlib.sha256(text.encode()).hexdigest()
    return load_graph(text)


def _seed(args: argparse.Namespace) -> int | None:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("GRAPHSTAT_SEED")
    if env is None or env == "":
        return None
    try:
        return int(env)
    except ValueError:
        raise InputError(f"GRAPHSTAT_SEED must be an integer, got {env!r}") from None


def _particles(args: argparse.Namespace) -> int:
    if args.particles < 1:
        raise InputError("--particles must be positive")
    return args.particles


def _prepare(g: Graph, n: int, auto: bool) -> tuple[Graph, bool]:
    if auto and not is_sufficiently_subdivided(g, n):
        g, _ = subdivide(g, n)
    return g, is_sufficiently_subdivided(g, n)


def cmd_homology(args, digests) -> tuple[dict, int]:
    n = _particles(args)
    g, ok = _prepare(_graph(args, digests), n, args.subdivide)
    c = build_config_complex(g, n)
    grp, basis = homology_h1(c)
    return {
        "particles": n,
        "vertices": g.num_vertices,
        "sufficiently_subdivided": ok,
        "cells": [c.count(d) for d in range(3)],
        "euler_characteristic": c.euler_characteristic(),
        "H0": homology_h0(c).to_dict(),
        "H1": grp.to_dict(),
    }, EXIT_OK


def cmd_predict(args, digests) -> tuple[dict, int]:
    n = _particles(args)
    g = _graph(args, digests)
    require_connected(g)
    return predict_h1(g, n, _seed(args)).to_dict(), EXIT_OK


def _component(comp) -> dict:
    return {
        "kind": comp.kind,
        "vertices": list(comp.vertices),
        "edges": [[u, v] if tag is None else [u, v, f"virtual:{tag}"] for u, v, tag in comp.edges],
    }


def cmd_decompose(args, digests) -> tuple[dict, int]:
    g = _graph(args, digests)
    seed = _seed(args)
    bd = block_decomposition(g)
    blocks = []
    for b in bd.blocks:
        entry: dict[str, Any] = {"vertices": list(b.vertices), "edges": [list(e) for e in b.sorted_edges()]}
        if is_biconnected(b):
            td = tri_decomposition(b, seed)
            entry.update(
                cut_pairs=[{"pair": [cp.x, cp.y], "mu": cp.mu} for cp in td.cuts],
                c2=td.c2,
                components=[_component(comp) for comp in td.components],
            )
        blocks.append(entry)
    return {
        "cut_vertices": [{"vertex": cv.vertex, "mu": cv.mu, "nu": cv.nu} for cv in bd.cut_vertices],
        "blocks": blocks,
    }, EXIT_OK


def cmd_morse(args, digests) -> tuple[dict, int]:
    g = _graph(args, digests)
    require_connected(g)
    policy = args.policy
    seed = _seed(args)
    if policy == "random" and seed is None:
        seed = 0
    c = build_config_complex(g, 2)
    pl = run_morse(g, policy, seed, None, c)
    rep = classify_critical(c, pl.field, pl.tree, pl.log)
    if not rep.ok:
        raise AssertionError(f"critical cells differ from the predicted set: {rep.mismatches()}")
    values = {
        str(cell): pl.f2.value(d, i) for d in range(3) for i, cell in enumerate(c.cells[d])
    }
    mc = pl.complex
    return {
        "policy": policy,
        "seed": seed,
        "tree": {
            "root": pl.tree.root,
            "edges": [list(e) for e in sorted(pl.tree.tree_edges)],
            "labels": {str(v): pl.tree.labels[v] for v in sorted(pl.tree.labels)},
        },
        "values": values,
        "matching": [[str(c.cells[p][lo]), str(c.cells[p + 1][hi])] for p, lo, hi in pl.field.pairs],
        "critical": [[str(x) for x in mc.critical[d]] for d in range(3)],
        "boundary1": mc.d1,
        "boundary2": mc.d2,
        "H1": pl.h1.to_dict(),
    }, EXIT_OK


def _potential_payload(om: GaugePotential) -> list:
    return json.loads(om.to_json())


def cmd_gauge(args, digests) -> tuple[dict, int]:
    g = _graph(args, digests)
    require_connected(g)
    if args.action == "sample":
        c = build_config_complex(g, 2)
        pl = run_morse(g, "lower", None, None, c)
        phases = None
        if args.phases is not None:
            try:
                phases = [Fraction(x) for x in args.phases.split(",") if x.strip()]
            except ValueError as exc:
                raise InputError(f"bad phase list: {exc}") from None
        seed = _seed(args)
        om = random_topological_potential(pl.field, pl.complex, phases, random.Random(seed or 0))
        return {
            "critical": [str(x) for x in pl.complex.critical[1]],
            "phases": [str(om.values[j]) for j in pl.field.critical(1)],
            "potential": _potential_payload(om),
        }, EXIT_OK
    if args.potential is None:
        raise InputError(f"gauge {args.action} needs --potential")
    text = _read(args.potential)
    digests[args.potential] = hashlib.sha256(text.encode()).hexdigest()
    n = 2 if args.action != "check" else _particles(args)
    om = load_potential(build_config_complex(g, n), text)
    if args.action == "check":
        ok, bad = is_topological(om)
        return {"topological": ok, "offending": [str(x) for x in bad]}, EXIT_OK
    if args.action == "decompose":
        ab, st = decompose_ab_s(om)
        return {"ab": _potential_payload(ab), "statistics": _potential_payload(st)}, EXIT_OK
    n = _particles(args)
    sub = subdivide_potential_for(om, n)
    ab, st = decompose_ab_s(sub)
    lifted = lift_to_n(sub.complex.graph, one_particle_part(ab), st, n)
    ok, _ = is_topological(lifted)
    if not ok:
        raise AssertionError("lifted potential is not topological")
    return {
        "graph": json.loads(sub.complex.graph.to_json()),
        "particles": n,
        "potential": _potential_payload(lifted),
    }, EXIT_OK


def cmd_verify(args, digests) -> tuple[dict, int]:
    n = _particles(args)
    g = _graph(args, digests)
    require_connected(g)
    pred = predict_h1(g, n, _seed(args)).group
    gs, _ = _prepare(g, n, True)
    direct, _ = homology_h1(build_config_complex(gs, n))
    groups = {"predict": pred.to_dict(), "direct": direct.to_dict()}
    if n == 2:
        groups["morse"] = run_morse(g).h1.to_dict()
    agree = all(v == groups["direct"] for v in groups.values())
    return {"particles": n, "groups": groups, "agree": agree}, EXIT_OK if agree else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="graphstat", description=__doc__)
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("--timing", action="store_true", help="add wall time to the report")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_args(sp: argparse.ArgumentParser) -> None:
        src = sp.add_mutually_exclusive_group(required=True)
        src.add_argument("--graph", help="graph JSON file")
        src.add_argument("--named", help="built-in graph: " + ", ".join(named.NAMED))

    for name, fn, needs_n in (
        ("homology", cmd_homology, True),
        ("predict", cmd_predict, True),
        ("verify", cmd_verify, True),
    ):
        sp = sub.add_parser(name)
        graph_args(sp)
        sp.add_argument("--particles", type=int, required=needs_n)
        sp.set_defaults(func=fn)
        if name == "homology":
            sp.add_argument("--subdivide", action="store_true", help="subdivide first if needed")
        if name in ("predict", "verify"):
            sp.add_argument("--seed", type=int)

    sp = sub.add_parser("decompose")
    graph_args(sp)
    sp.add_argument("--seed", type=int)
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("morse")
    graph_args(sp)
    sp.add_argument("--policy", choices=["lower", "upper", "random"], default="lower")
    sp.add_argument("--seed", type=int)
    sp.set_defaults(func=cmd_morse)

    sp = sub.add_parser("gauge")
    sp.add_argument("action", choices=["check", "decompose", "lift", "sample"])
    graph_args(sp)
    sp.add_argument("--potential", help="potential JSON file")
    sp.add_argument("--particles", type=int, default=2)
    sp.add_argument("--phases", help="comma-separated phases for the critical 1-cells")
    sp.add_argument("--seed", type=int)
    sp.set_defaults(func=cmd_gauge)
    return p


def _text(obj: Any, indent: str = "") -> list[str]:
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, dict) and v or isinstance(v, list) and any(isinstance(x, (dict, list)) for x in v):
                lines.append(f"{indent}{k}:")
                lines.extend(_text(v, indent + "  "))
            else:
                lines.append(f"{indent}{k}: {json.dumps(v)}")
    elif isinstance(obj, list):
        for v in obj:
            lines.append(f"{indent}- {json.dumps(v)}")
    else:
        lines.append(f"{indent}{obj}")
    return lines


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
    except InputError as exc:
        print(f"graphstat: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    digests: dict[str, str] = {}
    start = time.perf_counter()
    try:
        result, code = args.func(args, digests)
    except (InputError, GraphError, GaugeError) as exc:
        print(f"graphstat: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (AssertionError, HomologyError) as exc:
        print(f"graphstat: internal check failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    report: dict[str, Any] = {"command": argv, "inputs": digests, "result": result}
    if args.timing:
        report["wall_time"] = round(time.perf_counter() - start, 6)
    if args.format == "json":
        print(json.dumps(report, indent=2), file=out)
    else:
        print("\n".join(_text(report)), file=out)
    return code


def main() -> None:
    sys.exit(run())
