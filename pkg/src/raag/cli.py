"""Command line front end.

    raag invariants --graph complete:3
    raag cohomology --graph disjoint-edges:3 --degree 1
    raag tame --graph graph.txt --max-separator 2
    raag generate --steps 8 --seed 0

Output is JSON (schema ``raag-report/1``) unless ``--pretty`` is given. In
reports, ``L`` stands for the group ring Z[pi].
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .cohomology import SingleSimplexError, filtration, graded_group_cohomology
from .forms import (
    FormError,
    hyperbolic,
    is_even,
    is_hermitian,
    metabolic_double,
    stabilization_isometry,
    strongly_even_witness,
    w_invariant,
)
from .graphs import (
    GraphError,
    SimplicialGraph,
    clique_counts,
    cohomological_dimension,
    components,
    ends,
    flag_complex,
    format_graph,
    free_product_skeleton,
    parse_graph,
)
from .group_ring import GroupRing, parse_matrix
from .homology import chain_homology, euler_characteristic
from .resolution import (
    FourCliqueError,
    minimal_model_invariants,
    salvetti_resolution,
    tensor_down,
    verify_resolution,
)
from .tame import (
    ScriptError,
    cd3_automatic,
    generate_tame,
    h1_dual_nonzero,
    parse_script,
    random_build_script,
    separator_criterion,
    tame_sufficient,
    torsion_criterion,
)

SCHEMA = "raag-report/1"


class InputError(Exception):
    pass


def load_graph(arg: str) -> SimplicialGraph:
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            return parse_graph(fh.read())
    return parse_graph(arg)


def graph_json(g: SimplicialGraph) -> dict:
    return {"vertices": list(g.vertices), "edges": [list(e) for e in g.edge_list()]}


def _invariants(g: SimplicialGraph, args) -> dict:
    b = clique_counts(g)
    cd = cohomological_dimension(g)
    fpk = free_product_skeleton(g)
    fc = flag_complex(g)
    out = {
        "b0": 1,
        "b": b,
        "cd": cd.clique_number,
        "cd_at_most_3": cd.at_most_three,
        "ends": ends(g).value,
        "components": [list(c) for c in components(g)],
        "flag_euler_characteristic": euler_characteristic(fc) if g.vertices else None,
        "free_product_skeleton": {
            "n": fpk.n,
            "m": fpk.m,
            "connected": fpk.connected,
            "witness": graph_json(fpk.witness),
        },
        "h1_dual_nonzero": h1_dual_nonzero(g),
        "chi_M0": None,
    }
    if cd.at_most_three:
        out["chi_M0"] = minimal_model_invariants(g).chi_M0
    return out


def _cohomology(g, args) -> dict:
    report = graded_group_cohomology(g, args.degree)
    out = report.to_json()
    out["free_lambda_rank"] = report.free_lambda_rank()
    return out


def _filtration(g, args) -> dict:
    try:
        return filtration(g, args.degree).to_json()
    except SingleSimplexError as exc:
        raise InputError(str(exc)) from exc


def _tame(g, args) -> dict:
    out = {
        "verdict": tame_sufficient(g).to_json(),
        "torsion_criterion": {str(i): torsion_criterion(g, i).value for i in (1, 2)},
        "dimension": cd3_automatic(g).to_json(),
        "h1_dual_nonzero": h1_dual_nonzero(g),
        "separator": None,
    }
    if g.vertices and len(components(g)) == 1:
        out["separator"] = separator_criterion(g, args.max_separator).to_json()
    return out


def _generate(args) -> tuple[SimplicialGraph, dict]:
    if args.script:
        with open(args.script, encoding="utf-8") as fh:
            script = parse_script(fh.read())
    else:
        script = random_build_script(args.steps, args.seed)
    g = generate_tame(script)
    return g, {
        "seed": None if args.script else args.seed,
        "script": str(script).splitlines(),
        "graph_text": format_graph(g).splitlines(),
        "verdict": tame_sufficient(g).to_json(),
    }


def _resolution(g, args) -> dict:
    c = salvetti_resolution(g)
    ints = tensor_down(c)
    betti = [chain_homology(ints, i).free_rank for i in ints.degrees()]
    return {**c.to_json(), "verified": verify_resolution(c), "betti": betti}


def _model(g, args) -> dict:
    return minimal_model_invariants(g).to_json()


def _forms(g, args) -> dict:
    ring = GroupRing(g)
    if args.hyperbolic is not None:
        h = hyperbolic(args.hyperbolic, ring).matrix
    elif args.form:
        with open(args.form, encoding="utf-8") as fh:
            h = parse_matrix(ring, fh.read())
    else:
        raise InputError("forms needs --form FILE or --hyperbolic R")
    if args.metabolic:
        h = metabolic_double(h).matrix
    herm = is_hermitian(h)
    out: dict = {"rank": h.nrows, "matrix": h.to_json(), "hermitian": herm}
    if not herm:
        return out
    out["w"] = list(w_invariant(h))
    out["strongly_even"] = is_even(h)
    if out["strongly_even"]:
        out["witness"] = strongly_even_witness(h).matrix.to_json()
        if args.stabilize:
            out["k"] = stabilization_isometry(h).k_matrix.to_json()
    return out


COMMANDS = {
    "invariants": _invariants,
    "cohomology": _cohomology,
    "filtration": _filtration,
    "tame": _tame,
    "resolution": _resolution,
    "model": _model,
    "forms": _forms,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="raag", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help, graph=True):
        p = sub.add_parser(name, help=help)
        if graph:
            p.add_argument("--graph", required=True,
                           help="graph file, or a builtin spec such as complete:3, path:4, cycle:5, "
                                "disjoint-edges:2, disjoint:<spec>+<spec>, join:<spec>,<spec>")
        p.add_argument("--pretty", action="store_true", help="human-readable output instead of JSON")
        return p

    add("invariants", "clique counts, cd, ends, free product skeleton")
    add("cohomology", "graded H^k(pi; Z[pi])").add_argument("--degree", type=int, default=2)
    add("filtration", "filtration quotients of H^k(pi; Z[pi])").add_argument("--degree", type=int, default=2)
    p = add("tame", "sufficient checks for tame cohomology")
    p.add_argument("--max-separator", type=int, default=3)
    p = add("generate", "random graph from edge/triangle gluing moves", graph=False)
    p.add_argument("--steps", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--script", help="build script file (overrides --steps/--seed)")
    add("resolution", "free Z[pi]-resolution and its verification")
    add("model", "invariants of the minimal thickened-double model")
    p = add("forms", "hermitian form diagnostics")
    p.add_argument("--form", help="matrix file: one row per line, entries separated by '|'")
    p.add_argument("--hyperbolic", type=int, help="use the hyperbolic form of this rank")
    p.add_argument("--metabolic", action="store_true", help="replace the form d by [[d, I], [I, 0]]")
    p.add_argument("--stabilize", action="store_true", help="also output the isometry onto a hyperbolic form")
    return parser


def _pretty(value, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.append(_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
        return "\n".join(lines)
    if isinstance(value, list):
        return "\n".join(f"{pad}- {_scalar(v)}" if not isinstance(v, dict)
                         else f"{pad}- " + _pretty(v, indent + 1).lstrip() for v in value)
    return pad + _scalar(value)


def _flat(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if v is None:
        return "-"
    return str(v).lower() if isinstance(v, bool) else str(v)


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.command == "generate":
            g, result = _generate(args)
        else:
            g = load_graph(args.graph)
            result = COMMANDS[args.command](g, args)
    except (GraphError, ScriptError, FourCliqueError, FormError, InputError, OSError) as exc:
        print(f"raag {args.command}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"raag {args.command}: invalid input: {exc}", file=sys.stderr)
        return 1
    report = {
        "schema": SCHEMA,
        "version": __version__,
        "command": args.command,
        "graph": graph_json(g),
        "result": result,
    }
    if args.pretty:
        out.write(_pretty(report) + "\n")
    else:
        out.write(json.dumps(report, indent=2, ensure_ascii=False) + "\n")
    return 0


def main() -> None:
    sys.exit(run())
