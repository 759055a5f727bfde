"""Command-line front end.

Every subcommand loads one document (or a built-in example), runs the
corresponding library operation and prints a stable machine-readable
report of `key: value` lines (or a JSON object with --format json).
Randomized internals (generic directions, ray directions, sample points)
all derive from --seed, so reports are reproducible.
"""

import argparse
import json
import random
import sys
from fractions import Fraction

from . import __version__
from .document import FormatError, parse, serialize
from .ehrhart import (
    character_identity_check,
    count,
    count_interior,
    ehrhart_polynomial,
    reciprocity_check,
)
from .cohomology import kp_count, todd_count, volume
from .fan import (
    GenericityError,
    InvalidFan,
    NotComplete,
    decompose_star,
    degree,
    e_vector,
    h_vector,
    is_complete,
    is_precomplete,
    signature,
    ty_genus,
    validate,
)
from .fixtures import UnknownExample, example, example_document, example_names
from .grid import grid_samples, write_csv
from .polytope import (
    MultiPolytope,
    OnHyperplane,
    dh_eval,
    lattice_data,
    wall_crossing_check,
    wn_eval,
)

DEFAULT_SEED = 1729

_EXIT_CODES = {
    FormatError: 2,
    OSError: 2,
    UnknownExample: 5,
    GenericityError: 4,
    AssertionError: 6,
}


def _csv_ints(text):
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _csv_rationals(text):
    try:
        return tuple(Fraction(x) for x in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected comma-separated rationals, got {text!r}")


def _load(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read())


def _load_fan(path):
    obj = _load(path)
    return obj.fan if isinstance(obj, MultiPolytope) else obj


def _load_polytope(path):
    obj = _load(path)
    if not isinstance(obj, MultiPolytope):
        raise FormatError(f"{path} has no support numbers; a multi-polytope is required")
    return obj


def _emit(report, fmt, stream=None):
    stream = stream or sys.stdout
    if fmt == "json":
        stream.write(json.dumps(report, indent=2, default=str) + "\n")
    else:
        for key, value in report.items():
            if isinstance(value, bool):
                value = "true" if value else "false"
            elif isinstance(value, (list, tuple)):
                value = ",".join(str(x) for x in value)
            stream.write(f"{key}: {value}\n")


# -- subcommand handlers ----------------------------------------------------


def _cmd_validate(args, rng):
    obj = _load(args.file)
    fan = obj.fan if isinstance(obj, MultiPolytope) else obj
    rep = validate(fan)
    report = {"valid": rep.ok}
    for k, issue in enumerate(rep.issues):
        report[f"issue_{k}"] = issue
    report["primitive"] = ["true" if p else "false" for p in rep.primitive]
    report["all_primitive"] = rep.all_primitive
    if isinstance(obj, MultiPolytope) and rep.ok:
        ok, _issues = lattice_data(obj)
        report["lattice"] = ok
    return report


def _cmd_degree(args, rng):
    return {"degree": degree(_load_fan(args.file))}


def _cmd_complete(args, rng):
    fan = _load_fan(args.file)
    pre, deg = is_precomplete(fan)
    report = {"precomplete": pre}
    if pre:
        report["degree"] = deg
    report["complete"] = is_complete(fan)
    return report


def _cmd_hvector(args, rng):
    return {"h": h_vector(_load_fan(args.file), v=args.generic_v, rng=rng)}


def _cmd_evector(args, rng):
    return {"e": e_vector(_load_fan(args.file))}


def _cmd_tygenus(args, rng):
    return {"ty": ty_genus(_load_fan(args.file), rng=rng)}


def _cmd_signature(args, rng):
    return {"signature": signature(_load_fan(args.file), rng=rng)}


def _cmd_dh(args, rng):
    poly = _load_polytope(args.file)
    return {"dh": dh_eval(poly, args.point, args.shift, v=args.generic_v, rng=rng)}


def _cmd_wn(args, rng):
    poly = _load_polytope(args.file)
    return {"wn": wn_eval(poly, args.point, args.shift, rng=rng)}


def _cmd_wallcheck(args, rng):
    poly = _load_polytope(args.file)
    res = wall_crossing_check(poly, args.start, args.end, args.wall, rng=rng)
    return {"wallcheck": res.ok, "lhs": res.lhs, "rhs": res.rhs,
            "wall_labels": res.wall_labels}


def _cmd_count(args, rng):
    return {"count": count(_load_polytope(args.file), rng=rng)}


def _cmd_interior(args, rng):
    return {"interior": count_interior(_load_polytope(args.file), rng=rng)}


def _cmd_ehrhart(args, rng):
    ehr = ehrhart_polynomial(_load_polytope(args.file), rng=rng)
    return {"ehrhart": ehr.coefficients,
            "constant": ehr.constant,
            "leading": ehr.leading}


def _cmd_reciprocity(args, rng):
    return {"reciprocity": reciprocity_check(_load_polytope(args.file), rng=rng)}


def _cmd_charcheck(args, rng):
    ok = character_identity_check(_load_polytope(args.file), trials=args.trials,
                                  rng=rng, tol=args.tolerance)
    return {"charcheck": ok}


def _cmd_volume(args, rng):
    return {"volume": volume(_load_polytope(args.file), rng=rng)}


def _cmd_toddcount(args, rng):
    return {"toddcount": todd_count(_load_polytope(args.file), rng=rng,
                                    tol_pole=args.tolerance)}


def _cmd_kpcount(args, rng):
    return {"kpcount": kp_count(_load_polytope(args.file), rng=rng)}


def _cmd_decompose(args, rng):
    fan = _load_fan(args.file)
    if args.ray is None:
        raise FormatError("decompose requires --ray")
    pieces = decompose_star(fan, args.ray)
    report = {"pieces": len(pieces),
              "all_complete": all(is_complete(p) for p in pieces),
              "cancellation": True}  # asserted inside decompose_star
    if args.format == "json":
        report["documents"] = [json.loads(serialize(p)) for p in pieces]
    return report


def _cmd_grid(args, rng):
    poly = _load_polytope(args.file)
    samples = grid_samples(poly, args.step, args.shift, rng=rng)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            write_csv(samples, fh)
    else:
        write_csv(samples, sys.stdout)
    report = {}
    if args.out:
        report = {"rows": len(samples), "csv": args.out}
    if args.plot:
        from .plotting import render_grid
        render_grid(samples, args.plot)
        report["figure"] = args.plot
    return report or None


def _cmd_example(args, rng):
    if args.name is None:
        return {"examples": example_names()}
    text = example_document(args.name)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        return {"written": args.out}
    sys.stdout.write(text)
    return None


_HANDLERS = {
    "validate": _cmd_validate,
    "degree": _cmd_degree,
    "complete": _cmd_complete,
    "hvector": _cmd_hvector,
    "evector": _cmd_evector,
    "tygenus": _cmd_tygenus,
    "signature": _cmd_signature,
    "dh": _cmd_dh,
    "wn": _cmd_wn,
    "wallcheck": _cmd_wallcheck,
    "count": _cmd_count,
    "interior": _cmd_interior,
    "ehrhart": _cmd_ehrhart,
    "reciprocity": _cmd_reciprocity,
    "charcheck": _cmd_charcheck,
    "volume": _cmd_volume,
    "toddcount": _cmd_toddcount,
    "kpcount": _cmd_kpcount,
    "decompose": _cmd_decompose,
    "grid": _cmd_grid,
    "example": _cmd_example,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="multifan",
        description="Exact computations with multi-fans and multi-polytopes.")
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help="seed for all randomized internals (default %(default)s)")
    common.add_argument("--tolerance", type=float, default=1e-9,
                        help="tolerance for complex-arithmetic comparisons")
    common.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, needs_file=True):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if needs_file:
            p.add_argument("file", help="fan/polytope document")
        return p

    add("validate", "check the multi-fan axioms and report issues")
    add("degree", "covering degree of a pre-complete multi-fan")
    add("complete", "pre-completeness and completeness")
    p = add("hvector", "h-vector of a complete multi-fan")
    p.add_argument("--generic-v", type=_csv_ints, default=None)
    add("evector", "e-vector of a complete multi-fan")
    add("tygenus", "genus polynomial coefficients (ascending powers of y)")
    add("signature", "signature (genus at y = 1)")
    for name, help_text in (("dh", "Duistermaat-Heckman value at a point"),
                            ("wn", "winding number at a point")):
        p = add(name, help_text)
        p.add_argument("--point", type=_csv_rationals, required=True)
        p.add_argument("--shift", choices=("exact", "plus", "minus"), default="exact")
        if name == "dh":
            p.add_argument("--generic-v", type=_csv_ints, default=None)
    p = add("wallcheck", "verify the wall-crossing identity across one wall")
    p.add_argument("--start", type=_csv_rationals, required=True)
    p.add_argument("--end", type=_csv_rationals, required=True)
    p.add_argument("--wall", type=int, required=True, help="label of the wall hyperplane")
    add("count", "number of lattice points")
    add("interior", "number of interior lattice points")
    add("ehrhart", "counting polynomial of integer dilates")
    add("reciprocity", "interior counts against the polynomial at negated dilations")
    p = add("charcheck", "localization identity at random admissible samples")
    p.add_argument("--trials", type=int, default=8)
    add("volume", "volume (integral of the top Chern power over the fan)")
    add("toddcount", "lattice count via the localized Todd formula")
    add("kpcount", "lattice count via the Todd operator on the volume polynomial")
    p = add("decompose", "star decomposition into minimal multi-fans")
    p.add_argument("--ray", type=_csv_ints, default=None, help="generic star ray")
    p = add("grid", "CSV (and optional figure) of DH values on a rational grid")
    p.add_argument("--step", type=Fraction, default=Fraction(1, 4))
    p.add_argument("--shift", choices=("exact", "plus", "minus"), default="exact")
    p.add_argument("--out", default=None, help="CSV output path (default stdout)")
    p.add_argument("--plot", default=None, help="also render a heatmap figure to this file")
    p = add("example", "emit a built-in example document", needs_file=False)
    p.add_argument("name", nargs="?", default=None)
    p.add_argument("--out", default=None)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    rng = random.Random(args.seed)
    try:
        report = _HANDLERS[args.command](args, rng)
    except Exception as exc:  # one-line diagnostic per failure class
        code = 1
        for klass, c in _EXIT_CODES.items():
            if isinstance(exc, klass):
                code = c
                break
        else:
            if isinstance(exc, (InvalidFan, NotComplete, OnHyperplane, ValueError)):
                code = 3
        sys.stderr.write(f"error: {exc}\n")
        return code
    if report:
        _emit(report, args.format)
    return 0


if __name__ == "__main__":
    sys.exit(main())
