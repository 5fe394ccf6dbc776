"""Command line entry point: ``bihilbert <command> ...``."""
from __future__ import annotations

import argparse
import json
import sys

from .catalog import get_record, load_catalog, run_catalog
from .closed_forms import (
    HypothesisViolation,
    dseq_mixed_mult,
    embedded_degree,
    ggh_hilbert,
    lemma14_leading,
    minors_mixed_mult,
    prop13_leading,
    regseq_mixed_mult,
    teissier_dseq,
)
from .diagonal import DiagonalSpec, check_embedded_degree, diagonal_fit
from .io import PresentationError, emit_report, parse_presentation
from .oracle import CellBudgetExceeded, CellOracle, GradingError, OracleConfig, hilbert_table
from .polyfit import DEFAULT_BUDGET, StabilizationError, default_degree_bound, extract_report, fit_bivariate
from .report import MixedMultReport

EXIT_OK = 0
EXIT_STABILIZATION = 1
EXIT_INPUT = 2
EXIT_SKIPPED = 3
EXIT_MISMATCH = 4


class InputError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _config(args) -> OracleConfig:
    return OracleConfig(max_entries=args.max_entries, exact_rank=args.exact_rank, seed=args.seed)


def _load(args):
    """Presentation document from ``--input`` or ``--catalog``; returns (document, record)."""
    if args.input and args.catalog:
        raise InputError("give either --input or --catalog, not both")
    if args.catalog:
        try:
            rec = get_record(args.catalog)
        except KeyError as exc:
            raise InputError(exc.args[0]) from None
        return rec.document, rec
    if not args.input:
        raise InputError("a presentation is required (--input FILE or --catalog NAME)")
    try:
        with open(args.input) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {args.input}: {exc.strerror}") from None
    return parse_presentation(text), None


def _source(args, document, rec, config):
    use = args.source or (rec.fit_source if rec is not None else "oracle")
    if use == "dseq":
        if document.colon is None:
            raise InputError("--source dseq needs a colon-data block")
        from .closed_forms import dseq_hilbert
        cache: dict = {}

        def cell(u, v):
            if (u, v) not in cache:
                cache[(u, v)] = dseq_hilbert(document.colon, u, v, config)
            return cache[(u, v)]
        return cell
    return CellOracle(document.presentation, config)


def _bound(args, pres, rec) -> int:
    if args.degree_bound is not None:
        return args.degree_bound
    if rec is not None:
        return rec.bound
    return default_degree_bound(pres)


def cmd_table(args, out) -> int:
    document, rec = _load(args)
    config = _config(args)
    pres = document.presentation
    source = _source(args, document, rec, config) if args.source == "dseq" else None
    table = hilbert_table(pres, range(args.umax + 1), range(args.vmax + 1), config,
                          presentation_id=args.catalog or args.input or "",
                          source=source, source_method="decomposition" if source else None)
    out.write(emit_report(table, args.format))
    return EXIT_SKIPPED if table.skipped else EXIT_OK


def _fit(args):
    document, rec = _load(args)
    config = _config(args)
    pres = document.presentation
    source = _source(args, document, rec, config)
    return fit_bivariate(source, pres.d_max, _bound(args, pres, rec), args.budget), document, rec


def cmd_fit(args, out) -> int:
    (p, region), _, _ = _fit(args)
    if args.format == "json":
        doc = json.loads(emit_report((p, region), "json"))
        doc["report"] = json.loads(emit_report(extract_report(p), "json"))
        out.write(json.dumps(doc, indent=2) + "\n")
    elif args.format == "text":
        out.write(emit_report((p, region), "text"))
        out.write(emit_report(extract_report(p), "text"))
    else:
        out.write(emit_report((p, region), args.format))
    return EXIT_OK


def cmd_mixedmult(args, out) -> int:
    (p, _), _, _ = _fit(args)
    out.write(emit_report(extract_report(p), args.format))
    return EXIT_OK


def cmd_closedform(args, out) -> int:
    kind = args.formula
    if kind == "prop13":
        value = prop13_leading(_need(args, "n"), _need(args, "d"))
    elif kind == "lemma14":
        value = lemma14_leading(_need(args, "e"), _need(args, "m"), _need(args, "d"))
    elif kind == "regseq":
        value = regseq_mixed_mult(_need(args, "n"), args.eA, _need(args, "d"))
    elif kind == "minors":
        value = minors_mixed_mult(_need(args, "r"), args.degree)
    elif kind == "ggh":
        d = _need(args, "d")
        if len(d) != 2:
            raise InputError("ggh needs --d d1,d2")
        value = ggh_hilbert(d[0], d[1], _need(args, "u_prime"), _need(args, "v"))
    elif kind in ("dseq", "teissier"):
        document, _ = _load(args)
        if document.colon is None:
            raise InputError(f"{kind} needs a presentation with a colon-data block")
        value = dseq_mixed_mult(document.colon) if kind == "dseq" else teissier_dseq(document.colon)
    elif kind == "embedded-degree":
        es = _need(args, "e_seq")
        rep = MixedMultReport(len(es) - 1, len(es) - 1, tuple(es))
        value = embedded_degree(rep, _need(args, "c"), _need(args, "e"), args.d_max)
    else:
        raise InputError(f"unknown formula {kind!r}")
    out.write(emit_report(value, args.format))
    return EXIT_OK


def _need(args, name: str):
    val = getattr(args, name)
    if val is None:
        raise InputError(f"--{name.replace('_', '-')} is required for closedform {args.formula}")
    return val


def cmd_diagonal(args, out) -> int:
    document, rec = _load(args)
    config = _config(args)
    pres = document.presentation
    spec = DiagonalSpec(args.c, args.e)
    if not spec.admissible(pres.d_max):
        raise InputError(f"need c > d*e (c={args.c}, e={args.e}, d={pres.d_max})")
    source = _source(args, document, rec, config)
    bound = _bound(args, pres, rec)
    fit = diagonal_fit(pres, spec, bound, args.budget, config, source=source)
    p, _ = fit_bivariate(source, pres.d_max, bound, args.budget)
    check = check_embedded_degree(fit, extract_report(p), spec)
    if args.format == "json":
        doc = json.loads(emit_report(fit, "json"))
        doc["comparison"] = json.loads(emit_report(check, "json"))
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        out.write(emit_report(fit, args.format))
        out.write(emit_report(check, args.format))
    return EXIT_OK


def cmd_verify(args, out) -> int:
    records = load_catalog(args.catalog_file) if args.catalog_file else None
    report = run_catalog(records, _config(args), args.budget, names=args.only or None)
    out.write(emit_report(report, args.format))
    return EXIT_OK if report.passed else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for the random primes of the rank test")
    common.add_argument("--exact-rank", action="store_true", help="always use exact rational elimination")
    common.add_argument("--max-entries", type=int, default=2_000_000,
                        help="largest spanning matrix (entries) a single cell may build")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="stabilization retries")

    pres = argparse.ArgumentParser(add_help=False)
    pres.add_argument("--input", help="presentation document (JSON)")
    pres.add_argument("--catalog", help="name of a catalog record")
    pres.add_argument("--source", choices=("oracle", "dseq"), default=None,
                      help="cell values from the oracle or from the colon-data decomposition")
    pres.add_argument("--degree-bound", type=int, default=None)

    parser = argparse.ArgumentParser(prog="bihilbert", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", parents=[common, pres], help="Hilbert function values")
    p.add_argument("--umax", type=int, default=8)
    p.add_argument("--vmax", type=int, default=3)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("fit", parents=[common, pres], help="fitted Hilbert polynomial and region")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("mixedmult", parents=[common, pres], help="mixed multiplicities of the fit")
    p.set_defaults(func=cmd_mixedmult)

    p = sub.add_parser("closedform", parents=[common, pres], help="evaluate an explicit formula")
    p.add_argument("formula", choices=("prop13", "lemma14", "dseq", "regseq", "minors", "ggh",
                                       "teissier", "embedded-degree"))
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--d", type=_int_list, help="degrees, comma separated")
    p.add_argument("--m", type=int)
    p.add_argument("--e", type=int, help="leading value (lemma14) or power (embedded-degree)")
    p.add_argument("--eA", type=int, default=1)
    p.add_argument("--degree", type=int, default=None, help="minor degree for 'minors' (default r-1)")
    p.add_argument("--u-prime", type=int)
    p.add_argument("--v", type=int)
    p.add_argument("--c", type=int)
    p.add_argument("--e-seq", type=_int_list, help="e_0,...,e_s for embedded-degree")
    p.add_argument("--d-max", type=int, default=None)
    p.set_defaults(func=cmd_closedform)

    p = sub.add_parser("diagonal", parents=[common, pres], help="Hilbert polynomial along (c v, e v)")
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    p.set_defaults(func=cmd_diagonal)

    p = sub.add_parser("verify", parents=[common], help="check every catalog record")
    p.add_argument("--catalog-file", help="alternative catalog JSON")
    p.add_argument("--only", nargs="*", help="record names to check")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except StabilizationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STABILIZATION
    except CellBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SKIPPED
    except (InputError, PresentationError, GradingError, HypothesisViolation, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
