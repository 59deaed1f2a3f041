"""Command-line interface: ``gendim <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .budget import Budgets, BudgetExceeded
from .cache import ResultCache
from .catalog import CatalogEntry, catalog
from .classify import abelian_invariants, classify
from .constructions import parse_expression
from .dimensions import certify_family, maxdim, maxdim_lower_bound
from .lattice import frattini_subgroup, lattice_of, maximal_subgroups
from .perm import Permutation, PermGroup
from .records import GroupFileError, GroupRecord, load_group, save_group
from .report import analyze, to_csv, write_report
from .suites import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_BUDGET, EXIT_INPUT = 0, 1, 2, 3


def resolve_group(spec: str) -> tuple[PermGroup, GroupRecord | None]:
    """A group file path, a catalog name, or a construction expression."""
    path = Path(spec)
    if path.suffix == ".json" or path.exists():
        rec = load_group(path)
        return rec.group(), rec
    for e in catalog():
        if e.name == spec:
            return e.group(), e.record
    return parse_expression(spec), None


def _budgets(args) -> Budgets:
    return Budgets(max_order_enumerate=args.max_order_enumerate, max_lattice_nodes=args.max_lattice_nodes,
                   search_nodes=args.search_nodes)


def _emit(args, obj) -> None:
    if args.format == "json":
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        for k, v in obj.items():
            print(f"{k}: {v}")


def cmd_dims(args) -> int:
    G, _ = resolve_group(args.group)
    budgets = _budgets(args)
    res = ResultCache(args.cache_dir).analyze(G, budgets) if args.cache_dir else analyze(G, budgets)
    if args.format == "csv":
        sys.stdout.write(to_csv([res]))
    elif args.format == "json":
        print(json.dumps(res.to_json(), indent=2, sort_keys=True))
    else:
        out = {"name": res.name, "order": res.order, **res.dims.values()}
        if res.dims.bounds:
            out["bounds"] = res.dims.bounds
        _emit(args, out)
    unknown = not all(res.dims.known(k) for k in ("r", "m", "i", "maxdim"))
    return EXIT_BUDGET if unknown else EXIT_OK


def cmd_classify(args) -> int:
    G, _ = resolve_group(args.group)
    rep = classify(G, _budgets(args), check_series=True)
    out = rep.as_dict()
    out["abelian_invariants"] = abelian_invariants(G)
    _emit(args, out)
    return EXIT_BUDGET if rep.supersolvable is None else EXIT_OK


def cmd_maximal(args) -> int:
    G, _ = resolve_group(args.group)
    lat = lattice_of(G, _budgets(args))
    rows = [{"id": M.id, "order": M.order, "index": G.order // M.order, "normal": M.normal,
             "generators": [list(g.images) for g in M.generators()]} for M in maximal_subgroups(lat)]
    if args.format == "json":
        print(json.dumps(rows, indent=2))
    else:
        for r in rows:
            print(f"{r['id']}\torder {r['order']}\tindex {r['index']}\t{'normal' if r['normal'] else ''}")
    return EXIT_OK


def cmd_frattini(args) -> int:
    G, _ = resolve_group(args.group)
    lattice_of(G, _budgets(args))
    phi = frattini_subgroup(G)
    _emit(args, {"order": phi.order, "generators": [list(g.images) for g in phi.generators()]})
    return EXIT_OK


def cmd_maxdim(args) -> int:
    G, rec = resolve_group(args.group)
    budgets = _budgets(args)
    if rec is not None and rec.declared_maximal and G.order > budgets.max_order_enumerate:
        cert = rec.metadata.get("certificate")
        if cert is None:
            raise GroupFileError("declared maximal subgroups need a certificate in metadata")
        lb = maxdim_lower_bound(G, rec.declared_specs(G), [Permutation(g) for g in cert], cap=budgets.max_cosets)
        _emit(args, {"maxdim_lower_bound": lb})
        return EXIT_OK
    res = maxdim(G, budgets)
    cert = certify_family(res.witness)[0].elems if res.witness else []
    out = {"maxdim": res.value if res.exact else f">={res.value}",
           "family_orders": [M.order for M in res.witness],
           "certificate": [list(g.images) for g in cert]}
    _emit(args, out)
    return EXIT_OK if res.exact else EXIT_BUDGET


def cmd_construct(args) -> int:
    G = parse_expression(args.expr)
    rec = GroupRecord.from_group(G)
    rec.name = args.name or args.expr
    if args.output:
        save_group(rec, args.output)
    else:
        print(json.dumps(rec.to_json()))
    return EXIT_OK


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite.lower() == "all" else [args.suite]
    code = EXIT_OK
    entries = catalog()
    for spec in args.group or []:
        G, rec = resolve_group(spec)
        entries.append(CatalogEntry(G.name or spec, lambda G=G: G, frozenset({"extra"}), rec))
    for name in names:
        rep = run_suite(name, entries, _budgets(args))
        for c in rep.checks:
            if args.verbose or c.status != "pass":
                print(f"[{c.status}] {c.suite} {c.group}: {c.assertion} ({c.detail})")
        print(rep.summary())
        if rep.exit_code == EXIT_FAIL or code != EXIT_FAIL and rep.exit_code:
            code = rep.exit_code
    return code


def _catalog_results(args):
    budgets = _budgets(args)
    cache = ResultCache(args.cache_dir) if args.cache_dir else None
    out = []
    for e in catalog():
        if args.max_order and e.group().order > args.max_order:
            continue
        G = e.group()
        out.append(cache.analyze(G, budgets, e.name) if cache else analyze(G, budgets, e.name))
    return out


def cmd_catalog(args) -> int:
    if args.action == "list":
        for e in catalog():
            print(f"{e.name}\t{e.group().order}\t{','.join(sorted(e.tags))}")
        return EXIT_OK
    results = _catalog_results(args)
    fmt = args.format if args.format in ("csv", "json") else "csv"
    text = write_report(results, fmt, args.output)
    if not args.output or args.output == "-":
        sys.stdout.write(text)
    unknown = any(not r.dims.known(k) for r in results for k in ("r", "m", "i", "maxdim"))
    return EXIT_BUDGET if unknown else EXIT_OK


def cmd_report(args) -> int:
    budgets = _budgets(args)
    cache = ResultCache(args.cache_dir) if args.cache_dir else None
    results = []
    for spec in args.groups:
        G, _ = resolve_group(spec)
        results.append(cache.analyze(G, budgets) if cache else analyze(G, budgets))
    fmt = args.format if args.format in ("csv", "json") else "csv"
    text = write_report(results, fmt, args.output)
    if not args.output or args.output == "-":
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-order-enumerate", type=int, default=50_000)
    common.add_argument("--max-lattice-nodes", type=int, default=20_000)
    common.add_argument("--search-nodes", type=int, default=10_000_000)
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--cache-dir", default=None)

    p = argparse.ArgumentParser(prog="gendim", description="Generation dimensions of finite permutation groups.")
    p.add_argument("--version", action="version", version=f"gendim {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name, fn, help_ in [("dims", cmd_dims, "r, m, i and MaxDim"),
                            ("classify", cmd_classify, "structural flags"),
                            ("maximal", cmd_maximal, "maximal subgroups"),
                            ("frattini", cmd_frattini, "Frattini subgroup"),
                            ("maxdim", cmd_maxdim, "MaxDim with a certified family")]:
        s = sub.add_parser(name, parents=[common], help=help_)
        s.add_argument("group", help="group file, catalog name or expression such as 'wr(S(4),3)'")
        s.set_defaults(fn=fn)
    s = sub.add_parser("construct", parents=[common], help="write a constructed group as a group file")
    s.add_argument("expr")
    s.add_argument("-o", "--output")
    s.add_argument("--name")
    s.set_defaults(fn=cmd_construct)
    s = sub.add_parser("verify", parents=[common], help="run a theorem suite (T1..T10 or all)")
    s.add_argument("suite")
    s.add_argument("--group", action="append", help="extra group to include")
    s.add_argument("-v", "--verbose", action="store_true")
    s.set_defaults(fn=cmd_verify)
    s = sub.add_parser("catalog", parents=[common], help="list or analyse the built-in catalog")
    s.add_argument("action", choices=["run", "list"])
    s.add_argument("-o", "--output")
    s.add_argument("--max-order", type=int, default=None)
    s.set_defaults(fn=cmd_catalog)
    s = sub.add_parser("report", parents=[common], help="tabulate results for given groups")
    s.add_argument("groups", nargs="*")
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_report)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (GroupFileError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
