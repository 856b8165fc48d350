"""Command-line front end.

Commands: table, classify, conduct, bound, verify, catalog.  Group and context
references resolve against the builtin catalog first, then as file paths.
Output is deterministic byte-for-byte for fixed inputs and flags.  Exit codes:
0 success, 2 input or validation error, 3 broken internal invariant.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .catalog import default_catalog
from .characters import character_table
from .clifford import classify_irreducible
from .conductor import (BoundInputs, artin_conductor, bound_induced_case,
                        bound_restricted_case, factor_integer, global_constant,
                        root_conductor, verify_conductor_discriminant)
from .errors import CharcondError, InternalContradiction, InvalidData
from .groups import derived_subgroup, generated_subgroup, is_normal, subgroup
from .verify import SUITE_NAMES, run_suite

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INTERNAL = 3


def _common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("text", "json"), default="text",
                   help="output format (default text)")
    p.add_argument("--precision", type=int, default=12,
                   help="significant digits for decimal renderings (default 12)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="charcond",
        description="exact character tables, prime-index classification, and "
                    "Artin conductor bound arithmetic")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", help="print a character table")
    p.add_argument("--group", required=True, help="catalog name or group file")
    p.add_argument("--output", default=None,
                   help="write to this file instead of stdout")
    _common_flags(p)

    p = sub.add_parser("classify",
                       help="classify irreducibles over a prime-index normal subgroup")
    p.add_argument("--group", required=True, help="catalog name or group file")
    p.add_argument("--subgroup", required=True,
                   help="'derived', 'gens:i,j,...', or 'elements:i,j,...'")
    _common_flags(p)

    p = sub.add_parser("conduct", help="conductor report for a ramification context")
    p.add_argument("--context", required=True, help="catalog name or JSON file")
    sel = p.add_mutually_exclusive_group()
    sel.add_argument("--all", action="store_true",
                     help="all irreducible characters (default)")
    sel.add_argument("--char", type=int, default=None,
                     help="single character by table row index")
    _common_flags(p)

    p = sub.add_parser("bound", help="root-conductor bound arithmetic")
    p.add_argument("--dataset", default=None, help="named bound dataset")
    p.add_argument("--disc", type=int, default=None)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--theta-degree", type=int, default=None)
    p.add_argument("--norm-ftheta", type=int, default=None)
    p.add_argument("--T", type=str, default=None,
                   help="per-degree conductor norm cap (rational, e.g. 753664)")
    _common_flags(p)

    p = sub.add_parser("verify", help="run a catalog verification sweep")
    p.add_argument("--suite", required=True, choices=SUITE_NAMES)
    p.add_argument("--max-order", type=int, default=24,
                   help="order cap for exhaustive sweeps (default 24)")
    _common_flags(p)

    p = sub.add_parser("catalog", help="catalog inspection")
    p.add_argument("action", choices=("list",))
    _common_flags(p)
    return parser


def _resolve_subgroup(group, spec: str):
    spec = spec.strip()
    if spec == "derived":
        return derived_subgroup(group)
    if spec.startswith("gens:"):
        try:
            gens = [int(v) for v in spec[5:].split(",") if v.strip()]
        except ValueError as exc:
            raise InvalidData(f"bad generator list in {spec!r}") from exc
        return generated_subgroup(group, gens)
    if spec.startswith("elements:"):
        try:
            elems = [int(v) for v in spec[9:].split(",") if v.strip()]
        except ValueError as exc:
            raise InvalidData(f"bad element list in {spec!r}") from exc
        return subgroup(group, elems)
    raise InvalidData(
        f"bad subgroup spec {spec!r}; use 'derived', 'gens:...', or 'elements:...'")


def _cmd_table(args) -> int:
    cat = default_catalog()
    g = cat.resolve_group(args.group)
    table = character_table(g)
    if args.format == "json":
        body = json.dumps(table.to_json_dict(), indent=2, sort_keys=True)
    else:
        body = table.render_text()
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(body + "\n")
        except OSError as exc:
            raise InvalidData(f"cannot write {args.output}: {exc}") from exc
    else:
        print(body)
    return EXIT_OK


def _cmd_classify(args) -> int:
    cat = default_catalog()
    g = cat.resolve_group(args.group)
    s = _resolve_subgroup(g, args.subgroup)
    if not is_normal(g, s):
        raise InvalidData("subgroup is not normal")
    table = character_table(g)
    table_h = character_table(s.as_group())
    results = [classify_irreducible(chi, s) for chi in table]
    payload = {
        "group": g.name,
        "order": g.order,
        "subgroup": list(s.elements),
        "index": s.index,
        "results": [
            {
                "chi": i,
                "degree": c.chi.degree,
                "kind": c.kind.value,
                "theta": table_h.index_of(c.theta),
                "e": c.e,
                "t": c.t,
                "verified": dict(sorted(c.checks.items())),
            }
            for i, c in enumerate(results)
        ],
    }
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(f"classification over a normal subgroup of index {s.index} "
              f"in {g.name or 'group'} (order {g.order})")
        for row in payload["results"]:
            flag = "ok" if all(row["verified"].values()) else "FAILED"
            print(f"  X{row['chi'] + 1} (degree {row['degree']}): "
                  f"{row['kind']} from theta {row['theta']} "
                  f"(e={row['e']}, t={row['t']}) [{flag}]")
        rest = sum(1 for r in payload["results"] if r["kind"] == "restricted")
        ind = len(payload["results"]) - rest
        print(f"summary: {rest} restricted, {ind} induced")
    return EXIT_OK


def _cmd_conduct(args) -> int:
    cat = default_catalog()
    ctx = cat.resolve_context(args.context)
    table = character_table(ctx.group)
    if args.char is not None:
        if not 0 <= args.char < len(table):
            raise InvalidData(
                f"character index {args.char} out of range 0..{len(table) - 1}")
        rows = [args.char]
    else:
        rows = list(range(len(table)))
    entries = []
    for i in rows:
        chi = table[i]
        fc = artin_conductor(chi, ctx)
        rc = root_conductor(fc, chi.degree)
        entries.append({
            "chi": i,
            "degree": chi.degree,
            "exponents": {str(p): e for p, e in fc.exponents.items()},
            "norm": fc.norm,
            "root_conductor": rc.exact_str(),
            "root_conductor_decimal": rc.decimal(args.precision),
        })
    payload = {"context": ctx.name, "group_order": ctx.group.order,
               "characters": entries}
    oracle = None
    if ctx.disc is not None and args.char is None:
        oracle = verify_conductor_discriminant(ctx, table, ctx.disc)
        payload["disc"] = ctx.disc
        payload["conductor_discriminant_ok"] = oracle
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(f"conductor report for context {ctx.name} "
              f"(group order {ctx.group.order})")
        for e in entries:
            expo = ", ".join(f"{p}: {v}" for p, v in e["exponents"].items()) or "-"
            print(f"  X{e['chi'] + 1} (degree {e['degree']}): exponents {{{expo}}}, "
                  f"norm {e['norm']}, root conductor {e['root_conductor']} "
                  f"= {e['root_conductor_decimal']}")
        if oracle is not None:
            prod = 1
            for e in entries:
                prod *= e["norm"] ** e["degree"]
            print(f"conductor-discriminant product: {prod} "
                  f"(disc {ctx.disc}) -> {'ok' if oracle else 'MISMATCH'}")
    return EXIT_OK


def _render_radical(label: str, value, precision: int) -> str:
    return f"  {label}: {value.exact_str()} = {value.decimal(precision)}"


def _cmd_bound(args) -> int:
    cat = default_catalog()
    disc, q, theta_degree, norm_ftheta, cap = (args.disc, args.q,
                                               args.theta_degree,
                                               args.norm_ftheta, args.T)
    dataset = None
    if args.dataset:
        dataset = cat.bound_dataset(args.dataset)
        disc = disc if disc is not None else dataset["disc"]
        q = q if q is not None else dataset["q"]
        theta_degree = (theta_degree if theta_degree is not None
                        else dataset["theta_degree"])
        norm_ftheta = (norm_ftheta if norm_ftheta is not None
                       else dataset["norm_f_theta"])
        cap = cap if cap is not None else dataset["T"]
    if disc is None or q is None or theta_degree is None or norm_ftheta is None:
        raise InvalidData(
            "need --dataset or all of --disc, --q, --theta-degree, --norm-ftheta")
    t_value = Fraction(cap) if cap is not None else None
    inputs = BoundInputs(disc=disc, q=q, theta_degree=theta_degree,
                         norm_f_theta=norm_ftheta, T=t_value)
    restricted = bound_restricted_case(inputs)
    induced = bound_induced_case(inputs)
    payload = {
        "disc": disc,
        "q": q,
        "theta_degree": theta_degree,
        "norm_f_theta": norm_ftheta,
        "restricted_certified": restricted.certified.exact_str(),
        "restricted_certified_decimal": restricted.certified.decimal(args.precision),
        "restricted_stated": restricted.stated.exact_str(),
        "restricted_stated_decimal": restricted.stated.decimal(args.precision),
        "induced": induced.exact_str(),
        "induced_decimal": induced.decimal(args.precision),
    }
    if dataset is not None:
        payload["dataset"] = dataset["name"]
        payload["ramified_primes"] = dataset["ramified_primes"]
    if t_value is not None:
        c = global_constant(disc, t_value)
        payload["T"] = str(t_value)
        payload["C"] = str(c) if c.denominator > 1 else int(c)
        if c.denominator == 1:
            payload["C_factorization"] = {
                str(p): e for p, e in sorted(factor_integer(int(c)).items())}
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(f"bound report (disc {disc}, q {q}, theta degree {theta_degree}, "
              f"N(f_theta) {norm_ftheta})")
        print(_render_radical("restricted case, certified: disc * N^(1/t1)",
                              restricted.certified, args.precision))
        print(_render_radical("restricted case, stated:   disc^(1/q) * N^(1/t1)",
                              restricted.stated, args.precision))
        print(_render_radical("induced case (equality):   disc^(1/q) * N^(1/(q t1))",
                              induced, args.precision))
        if t_value is not None:
            c = global_constant(disc, t_value)
            if c.denominator == 1:
                facs = factor_integer(int(c))
                fac = " * ".join(f"{p}^{e}" if e > 1 else str(p)
                                 for p, e in sorted(facs.items()))
                print(f"  global constant C = disc * T = {int(c)} = {fac}")
            else:
                print(f"  global constant C = disc * T = {c}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    rep = run_suite(args.suite, max_order=args.max_order)
    if args.format == "json":
        print(json.dumps(rep.to_json_dict(), indent=2, sort_keys=True))
    else:
        print(rep.render_text())
    if not rep.passed:
        raise InternalContradiction(
            f"{rep.counts[2]} verification identities failed")
    return EXIT_OK


def _cmd_catalog(args) -> int:
    cat = default_catalog()
    groups = [(name, cat.group(name).order) for name in cat.base_names()]
    payload = {
        "groups": [{"name": n, "order": o} for n, o in groups],
        "contexts": cat.context_names(),
        "bound_datasets": cat.bound_dataset_names(),
        "products": "direct products of the names above, e.g. S3xS3xS3, "
                    "up to order 216",
    }
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("builtin groups:")
        for n, o in groups:
            print(f"  {n:<4} order {o}")
        print("contexts: " + ", ".join(payload["contexts"]))
        print("bound datasets: " + ", ".join(payload["bound_datasets"]))
        print("products: " + payload["products"])
    return EXIT_OK


_COMMANDS = {
    "table": _cmd_table,
    "classify": _cmd_classify,
    "conduct": _cmd_conduct,
    "bound": _cmd_bound,
    "verify": _cmd_verify,
    "catalog": _cmd_catalog,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    try:
        return _COMMANDS[args.command](args)
    except InternalContradiction as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except CharcondError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
