"""Command line front end.

Every subcommand prints exactly one JSON document on stdout; the
compact rendering is byte-stable across runs.  Exit codes: 0 all
checks passed, 1 a verified identity failed, 2 unreadable input,
3 a search budget ran out.
"""

import argparse
import json
import sys

from .augment import augmentation_report
from .cobordism import cobordism_report, parse_script
from .dga import build_dga
from .errors import BudgetExceeded, InputError
from .grid import (parse_grid, slack_unknot_grid, stabilized_unknot_grid,
                   torus_knot_grid, unknot_grid)
from .lp import contractible_chords
from .reports import canonical_json, pretty_json
from .resolve import resolve
from .spin import (record_from_grid, spin_chain, theorem_tb_check,
                   tori_pipeline)

DEFAULT_BUDGET = 10 ** 6

NAMED_GRIDS = {
    "unknot": unknot_grid,
    "stab": stabilized_unknot_grid,
    "slack": slack_unknot_grid,
    "trefoil": lambda: torus_knot_grid(1),
}

GRID_HELP = ("named grid (unknot, trefoil, stab, slack, torus:K), "
             "a JSON file path, or - for stdin")


def _read_json(source):
    try:
        if source == "-":
            text = sys.stdin.read()
        else:
            with open(source, "r", encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError("cannot read %s: %s" % (source, exc))
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("not valid JSON: %s" % exc)


def load_grid(source, allow_links=False):
    maker = NAMED_GRIDS.get(source)
    if maker is not None:
        return maker()
    if source.startswith("torus:"):
        try:
            k = int(source[len("torus:"):])
        except ValueError:
            raise InputError("torus:K takes an integer, got %r" % source)
        return torus_knot_grid(k)
    grid = parse_grid(_read_json(source))
    if not grid.is_knot() and not allow_links:
        raise InputError("multi-component input without linking-convention "
                         "flag (--allow-links)")
    return grid


# -- subcommands ---------------------------------------------------------------


def cmd_invariants(args):
    grid = load_grid(args.grid, args.allow_links)
    if not grid.is_knot():
        # no front resolution for links; report the counting invariants
        return {
            "g": grid.g,
            "components": grid.component_count(),
            "writhe": grid.writhe(),
            "chords": None,
            "tb": grid.thurston_bennequin(),
            "rotation": None,
            "grading": {"available": False, "modulus": None, "degrees": None},
        }, True
    word = resolve(grid)
    grading = word.grading()
    payload = {
        "g": grid.g,
        "components": grid.component_count(),
        "writhe": grid.writhe(),
        "chords": len(word.chords()),
        "tb": word.tb(),
        "rotation": grid.rotation_number(),
        "grading": {
            "available": grading.available,
            "modulus": grading.modulus if grading.available else None,
            "degrees": grading.degrees if grading.available else None,
        },
    }
    return payload, True


def cmd_dga(args):
    dga = build_dga(resolve(load_grid(args.grid, args.allow_links)),
                    args.budget)
    payload = dga.to_jsonable()
    witness = dga.d_squared_witness()
    if witness is not None:
        name, mono = witness
        payload["d_squared_witness"] = {
            "generator": name,
            "monomial": " ".join(mono) if mono else "1",
        }
        return payload, False
    return payload, True


def cmd_augment(args):
    dga = build_dga(resolve(load_grid(args.grid, args.allow_links)),
                    args.budget)
    return augmentation_report(dga), True


def cmd_contractible(args):
    word = resolve(load_grid(args.grid, args.allow_links))
    return {"lp_contractible": contractible_chords(word, args.budget)}, True


def cmd_cobordism(args):
    script = parse_script(_read_json(args.script))
    report = cobordism_report(script, args.budget, args.sigma)
    report["jobs"] = args.jobs
    return report, report["ok"]


def cmd_spin(args):
    if args.spins < 0:
        raise InputError("spin count must be a nonnegative integer")
    grid = load_grid(args.grid, args.allow_links)
    chain = spin_chain(record_from_grid(grid, args.grid), args.spins)
    checks = [theorem_tb_check(r) for r in chain]
    ok = all(c["status"] != "violated" for c in checks)
    payload = {
        "ok": ok,
        "records": [r.to_jsonable() for r in chain],
        "tb_checks": checks,
    }
    return payload, ok


def cmd_pipeline(args):
    report = tori_pipeline(args.j, args.k, args.spins,
                           args.budget, args.sigma)
    report["jobs"] = args.jobs
    return report, report["ok"]


# -- wiring ---------------------------------------------------------------------


def _build_parser():
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--format", choices=("json", "pretty"),
                        default="json", help="output rendering")
    shared.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="step cap for disk and feasibility searches")
    shared.add_argument("--jobs", type=int, default=1,
                        help="worker cap; accepted and echoed, runs stay "
                             "sequential")
    shared.add_argument("--sigma", type=int, default=0,
                        help="degree shift for the filling dimension check")
    shared.add_argument("--allow-links", action="store_true",
                        help="accept multi-component grids under the front "
                             "linking conventions")

    parser = argparse.ArgumentParser(
        prog="legcob",
        description="Legendrian knot invariants and cobordism checks "
                    "on grid diagrams")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", parents=[shared],
                       help="classical invariants and chord grading")
    p.add_argument("grid", help=GRID_HELP)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("dga", parents=[shared],
                       help="the chord algebra differential over Z/2")
    p.add_argument("grid", help=GRID_HELP)
    p.set_defaults(func=cmd_dga)

    p = sub.add_parser("augment", parents=[shared],
                       help="augmentations and linearized homology")
    p.add_argument("grid", help=GRID_HELP)
    p.set_defaults(func=cmd_augment)

    p = sub.add_parser("contractible", parents=[shared],
                       help="per-chord contractibility certificates")
    p.add_argument("grid", help=GRID_HELP)
    p.set_defaults(func=cmd_contractible)

    p = sub.add_parser("cobordism", parents=[shared],
                       help="replay a move script and verify it")
    p.add_argument("script", help="script JSON file path, or - for stdin")
    p.set_defaults(func=cmd_cobordism)

    p = sub.add_parser("spin", parents=[shared],
                       help="spin calculus records for one grid")
    p.add_argument("grid", help=GRID_HELP)
    p.add_argument("--spins", type=int, default=1,
                   help="how many spins to apply")
    p.set_defaults(func=cmd_spin)

    p = sub.add_parser("pipeline", parents=[shared],
                       help="torus knot saddle cobordism plus spins")
    p.add_argument("j", type=int, help="smaller torus parameter")
    p.add_argument("k", type=int, help="larger torus parameter")
    p.add_argument("--spins", type=int, default=1,
                   help="spins applied to each end")
    p.set_defaults(func=cmd_pipeline)

    return parser


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        if args.budget < 1:
            raise InputError("budget must be a positive integer")
        if args.jobs < 1:
            raise InputError("jobs must be a positive integer")
        payload, ok = args.func(args)
    except InputError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3
    render = pretty_json if args.format == "pretty" else canonical_json
    print(render(payload))
    return 0 if ok else 1
