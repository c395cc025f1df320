"""Command line front end.

Machine-readable results go to stdout as JSON with sorted keys and no
timing fields, so identical inputs produce identical bytes.  Wall-clock
timing goes to stderr.  Exit codes: 0 when the requested computation
completed (whatever the mathematical outcome), 1 when a verification
subcommand found a violation, 2 for bad configuration or arguments.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from fractions import Fraction

from . import __version__
from .arith import format_rational, parse_rational
from .certificates import (
    certificate_for_result,
    dumps_certificate,
    load_certificate,
    verify_certificate,
    write_certificate,
)
from .cnf import export_cnf, import_assignment, parse_assignment, to_dimacs
from .colorings import Coloring
from .detector import build_candidates, find_witness
from .largesets import (
    CoreNotInteriorError,
    IpSetSpec,
    LargeSetError,
    ShapeF,
    find_ip_r,
    finite_sums,
    group_untranslate,
    is_syndetic_for,
    is_thick_for,
    localize_colors,
    piecewise_syndetic_witness,
)
from .patterns import Family, PatternSyntaxError, builtin_family, default_catalog, parse_family
from .rado import RadoError, columns_condition, cross_validate, parse_equation, system_to_family
from .search import (
    AVOIDING,
    EXHAUSTED,
    SearchBudget,
    search_avoiding,
    threshold_sweep,
)
from .windows import Window, WindowError, parse_window

DEFAULT_SEED = 271828


class CliError(Exception):
    pass


def _emit(out, payload: dict) -> None:
    out.write(json.dumps(payload, sort_keys=True, indent=2))
    out.write("\n")


def _resolve_family(args: argparse.Namespace) -> Family:
    text = args.family
    try:
        return builtin_family(text)
    except KeyError:
        pass
    return parse_family(
        text,
        allow_offsets=getattr(args, "allow_offsets", False),
        require_distinct_values=getattr(args, "distinct", False),
        strict_nonzero_x=getattr(args, "strict_x", False),
    )


def _parse_colors(text: str) -> list[int]:
    body = text.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    if not body.strip():
        raise CliError("empty color list")
    return [int(tok) for tok in body.replace(",", " ").split()]


def _parse_rational_list(text: str) -> list[Fraction]:
    toks = [t for t in text.replace(",", " ").split() if t]
    if not toks:
        raise CliError("empty rational list")
    return [parse_rational(t) for t in toks]


def _budget(args: argparse.Namespace) -> SearchBudget:
    return SearchBudget(
        max_nodes=getattr(args, "nodes", None),
        max_seconds=getattr(args, "seconds", None),
        workers=getattr(args, "workers", 1),
    )


def _witness_json(w) -> dict | None:
    if w is None:
        return None
    return {
        "x": format_rational(w.x),
        "y": None if w.y is None else format_rational(w.y),
        "color": w.color,
        "values": [format_rational(v) for v in w.values],
    }


def _result_json(res) -> dict:
    return {
        "family": res.family_text,
        "window": res.window_spec,
        "r": res.r,
        "outcome": res.outcome,
        "nodes": res.nodes,
        "proof_log_hash": res.proof_log_hash,
        "coloring": None if res.coloring is None else list(res.coloring.colors),
        "budget": {
            "max_nodes": res.budget.max_nodes,
            "max_seconds": res.budget.max_seconds,
            "workers": res.budget.workers,
        },
    }


def _coloring_from_args(window: Window, args: argparse.Namespace) -> Coloring:
    colors = _parse_colors(args.colors)
    r = args.r if args.r is not None else (max(colors) + 1 if colors else 1)
    return Coloring(window, colors, r)


# ---------------------------------------------------------------------------
# Subcommand bodies


def _cmd_detect(args, out) -> int:
    family = _resolve_family(args)
    window = parse_window(args.window)
    coloring = _coloring_from_args(window, args)
    table = build_candidates(family, window)
    witness = find_witness(family, coloring, table)
    _emit(out, {
        "family": family.serialize(),
        "window": window.spec_string(),
        "r": coloring.r,
        "candidates": len(table.entries),
        "witness": _witness_json(witness),
    })
    return 0


def _cmd_search(args, out) -> int:
    family = _resolve_family(args)
    window = parse_window(args.window)
    res = search_avoiding(family, window, args.r, budget=_budget(args))
    if args.cert_dir and res.outcome in (AVOIDING, EXHAUSTED):
        path = write_certificate(certificate_for_result(res), args.cert_dir, args.cert_stem)
        print(f"certificate: {path}", file=sys.stderr)
    _emit(out, _result_json(res))
    print(f"search wall time: {res.wall_time:.3f}s", file=sys.stderr)
    return 0


def _cmd_sweep(args, out) -> int:
    family = _resolve_family(args)
    report = threshold_sweep(
        family,
        args.r,
        args.template,
        args.lo,
        args.hi,
        budget=_budget(args),
        cert_dir=args.cert_dir,
        stop_at_exhausted=args.stop_at_exhausted,
    )
    out.write("n,window_size,outcome,nodes,seconds,certificate_path\n")
    for row in report.rows:
        out.write(
            f"{row.n},{row.window_size},{row.outcome},{row.nodes},"
            f"{row.seconds:.3f},{row.certificate_path}\n"
        )
    if report.minimal_exhausted_n is not None:
        print(f"minimal exhausted n: {report.minimal_exhausted_n}", file=sys.stderr)
    return 0


def _cmd_rado(args, out) -> int:
    system = parse_equation(args.equation)
    payload: dict = {"equation": args.equation}
    if args.validate:
        report = cross_validate(system, args.r, args.n_max, budget=_budget(args))
        payload.update({
            "columns_condition": report.condition.holds,
            "partition": [list(block) for block in report.condition.partition]
            if report.condition.partition
            else None,
            "supported": report.supported,
            "family": report.family_text,
            "consistent": report.consistent,
            "note": report.note,
            "rows": [
                {"n": r.n, "outcome": r.outcome, "nodes": r.nodes} for r in report.rows
            ],
        })
    else:
        cond = columns_condition(system, method=args.method)
        family, note = system_to_family(system)
        payload.update({
            "columns_condition": cond.holds,
            "partition": [list(block) for block in cond.partition]
            if cond.partition
            else None,
            "family": None if family is None else family.serialize(),
            "note": cond.note or note,
        })
    _emit(out, payload)
    return 0


def _cmd_largeset(args, out) -> int:
    window = parse_window(args.window)
    aset = _parse_rational_list(args.set) if args.set else []
    payload: dict = {"check": args.check, "window": window.spec_string()}
    if args.check in ("thick", "syndetic", "pws"):
        if args.shape is None:
            raise CliError(f"--shape is required for {args.check}")
        shape = ShapeF(tuple(_parse_rational_list(args.shape)), args.mode)
    if args.check == "thick":
        witness = is_thick_for(aset, window, shape)
        payload["thick"] = witness is not None
        payload["witness"] = None if witness is None else format_rational(witness)
    elif args.check == "syndetic":
        if args.core is not None:
            core = _parse_rational_list(args.core)
        else:
            core = [
                x
                for x in window.elements()
                if (args.mode != "*" or x != 0)
                and all(
                    window.contains(group_untranslate(args.mode, x, f))
                    for f in shape.elements
                )
            ]
        ok, uncovered = is_syndetic_for(aset, window, shape, core)
        payload["syndetic"] = ok
        payload["core_size"] = len(core)
        payload["uncovered"] = [format_rational(x) for x in uncovered]
    elif args.check == "pws":
        found = piecewise_syndetic_witness(aset, window, args.max_f, shape)
        payload["piecewise_syndetic"] = found is not None
        payload["translates"] = (
            None if found is None else [format_rational(f) for f in found.elements]
        )
    elif args.check == "ip":
        gens = find_ip_r(aset, args.ip_r, args.mode, rng=random.Random(args.seed))
        payload["found"] = gens is not None
        payload["generators"] = (
            None if gens is None else [format_rational(g) for g in gens]
        )
        if gens is not None:
            fs = finite_sums(IpSetSpec(gens, args.mode))
            payload["combination_count"] = len(fs)
    else:
        raise CliError(f"unknown check {args.check!r}")
    _emit(out, payload)
    return 0


def _cmd_localize(args, out) -> int:
    window = parse_window(args.window)
    colors = _parse_colors(args.colors)
    r = args.r if args.r is not None else (max(colors) + 1 if colors else 1)
    coloring = Coloring(window, colors, r)
    shape = ShapeF(tuple(_parse_rational_list(args.shape)), "*")
    report = localize_colors(coloring, shape, args.max_f, exhaustive_size=args.exhaustive)
    if report is None:
        _emit(out, {"localized": False, "window": window.spec_string()})
        return 0
    _emit(out, {
        "localized": True,
        "window": window.spec_string(),
        "color_sets": [list(sub) for sub in report.color_sets],
        "translates": [format_rational(f) for f in report.translates.elements],
        "core_size": len(report.core),
        "thickness_witnesses": [format_rational(w) for w in report.thickness_witnesses],
    })
    return 0


def _cmd_export_cnf(args, out) -> int:
    family = _resolve_family(args)
    window = parse_window(args.window)
    cnf = export_cnf(family, window, args.r)
    text = to_dimacs(cnf)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.out}", file=sys.stderr)
    else:
        out.write(text)
    return 0


def _cmd_import_sat(args, out) -> int:
    family = _resolve_family(args)
    window = parse_window(args.window)
    cnf = export_cnf(family, window, args.r)
    with open(args.assignment, "r", encoding="utf-8") as fh:
        literals = parse_assignment(fh.read())
    coloring = import_assignment(cnf, literals)
    witness = find_witness(family, coloring)
    _emit(out, {
        "family": family.serialize(),
        "window": window.spec_string(),
        "r": args.r,
        "coloring": list(coloring.colors),
        "witness": _witness_json(witness),
    })
    if witness is not None:
        print("imported assignment is not avoiding", file=sys.stderr)
        return 1
    return 0


def _cmd_verify(args, out) -> int:
    cert = load_certificate(args.certificate)
    res = verify_certificate(cert, rerun=args.rerun)
    payload: dict = {"certificate": args.certificate, "ok": res.ok, "message": res.message}
    if res.witness is not None:
        payload["witness"] = _witness_json(res.witness)
    _emit(out, payload)
    return 0 if res.ok else 1


def _cmd_catalog(args, out) -> int:
    payload = {key: fam.serialize() for key, fam in default_catalog().items()}
    _emit(out, payload)
    return 0


# ---------------------------------------------------------------------------
# Parser assembly


def _add_budget_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--nodes", type=int, default=None, help="node budget for the search")
    p.add_argument("--seconds", type=float, default=None, help="time budget in seconds")
    p.add_argument("--workers", type=int, default=1, help="parallel subtree workers")


def _add_family_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--allow-offsets", action="store_true", help="permit x + c terms")
    p.add_argument("--distinct", action="store_true", help="require distinct tuple values")
    p.add_argument("--strict-x", action="store_true", help="forbid x = 0 in instantiations")


def build_parser(defaults: dict | None = None) -> argparse.ArgumentParser:
    """Assemble the parser; ``defaults`` override matching option defaults.

    Subcommands parse into their own namespace, so defaults from a config
    file have to be pushed into every subparser that knows the option, not
    just the top-level parser.
    """
    parser = argparse.ArgumentParser(
        prog="qramsey",
        description="finite partition-pattern search over rational windows",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", default=None, help="JSON file with option defaults")
    sub = parser.add_subparsers(dest="command", required=True)
    children: list[argparse.ArgumentParser] = []

    def add_command(name: str, **kwargs) -> argparse.ArgumentParser:
        child = sub.add_parser(name, **kwargs)
        children.append(child)
        return child

    p = add_command("detect", help="find a monochromatic instantiation")
    p.add_argument("family", help="catalog key or family text")
    p.add_argument("window", help="window spec, e.g. int:1..9")
    p.add_argument("--colors", required=True, help="color list, e.g. [0,1,0,1]")
    p.add_argument("-r", type=int, default=None, help="number of colors (default: max+1)")
    _add_family_flags(p)
    p.set_defaults(func=_cmd_detect)

    p = add_command("search", help="search for an avoiding coloring")
    p.add_argument("family")
    p.add_argument("window")
    p.add_argument("-r", type=int, required=True)
    p.add_argument("--cert-dir", default=None, help="write a certificate here")
    p.add_argument("--cert-stem", default="result", help="certificate file stem")
    _add_family_flags(p)
    _add_budget_args(p)
    p.set_defaults(func=_cmd_search)

    p = add_command("sweep", help="run a window ladder and report outcomes")
    p.add_argument("family")
    p.add_argument("-r", type=int, required=True)
    p.add_argument("--template", default="int", help="int, farey, or mgrid:p1,p2,...")
    p.add_argument("--lo", type=int, required=True)
    p.add_argument("--hi", type=int, required=True)
    p.add_argument("--cert-dir", default=None)
    p.add_argument("--stop-at-exhausted", action="store_true")
    _add_family_flags(p)
    _add_budget_args(p)
    p.set_defaults(func=_cmd_sweep)

    p = add_command("rado", help="columns condition for a linear equation")
    p.add_argument("equation", help='e.g. "1*x1 + 1*x2 - 1*x3 = 0"')
    p.add_argument("--method", default="auto", choices=["auto", "shortcut", "general"])
    p.add_argument("--validate", action="store_true", help="cross-check against search")
    p.add_argument("-r", type=int, default=2)
    p.add_argument("--n-max", type=int, default=20)
    _add_budget_args(p)
    p.set_defaults(func=_cmd_rado)

    p = add_command("largeset", help="finite largeness checks")
    p.add_argument("check", choices=["thick", "syndetic", "pws", "ip"])
    p.add_argument("window")
    p.add_argument("--set", default=None, help="comma-separated rationals")
    p.add_argument("--shape", default=None, help="comma-separated shape elements")
    p.add_argument("--mode", default="+", choices=["+", "*"])
    p.add_argument("--core", default=None, help="syndetic core (default: interior)")
    p.add_argument("--max-f", type=int, default=3)
    p.add_argument("--ip-r", type=int, default=2)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=_cmd_largeset)

    p = add_command("localize", help="localize colors over a multiplicative grid")
    p.add_argument("window", help="mgrid window spec")
    p.add_argument("--colors", required=True)
    p.add_argument("-r", type=int, default=None)
    p.add_argument("--shape", required=True, help="multiplicative thickness shape")
    p.add_argument("--max-f", type=int, default=3)
    p.add_argument("--exhaustive", type=int, default=3)
    p.set_defaults(func=_cmd_localize)

    p = add_command("export-cnf", help="write the avoidance problem as DIMACS")
    p.add_argument("family")
    p.add_argument("window")
    p.add_argument("-r", type=int, required=True)
    p.add_argument("--out", default=None)
    _add_family_flags(p)
    p.set_defaults(func=_cmd_export_cnf)

    p = add_command("import-sat", help="read a solver model back as a coloring")
    p.add_argument("family")
    p.add_argument("window")
    p.add_argument("-r", type=int, required=True)
    p.add_argument("assignment", help="file with DIMACS v-lines")
    _add_family_flags(p)
    p.set_defaults(func=_cmd_import_sat)

    p = add_command("verify", help="check a certificate file")
    p.add_argument("certificate")
    p.add_argument("--rerun", action="store_true", help="replay exhaustive searches")
    p.set_defaults(func=_cmd_verify)

    p = add_command("catalog", help="list the built-in families")
    p.set_defaults(func=_cmd_catalog)

    if defaults:
        for target in (parser, *children):
            known = {a.dest for a in target._actions}
            matching = {k: v for k, v in defaults.items() if k in known}
            if matching:
                target.set_defaults(**matching)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    out = out or sys.stdout
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config", default=None)
    known, _ = pre.parse_known_args(argv)
    defaults = None
    if known.config:
        try:
            with open(known.config, "r", encoding="utf-8") as fh:
                config = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            print(f"error: cannot read config: {exc}", file=sys.stderr)
            return 2
        if not isinstance(config, dict):
            print("error: config must be a JSON object", file=sys.stderr)
            return 2
        defaults = {k.replace("-", "_"): v for k, v in config.items()}
    parser = build_parser(defaults)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        started = time.perf_counter()
        code = args.func(args, out)
        print(f"total wall time: {time.perf_counter() - started:.3f}s", file=sys.stderr)
        return code
    except (
        CliError,
        WindowError,
        LargeSetError,
        CoreNotInteriorError,
        PatternSyntaxError,
        RadoError,
        ValueError,
        OSError,
        KeyError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    raise SystemExit(main())
