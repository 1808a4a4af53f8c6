"""Command-line interface.

Subcommands: dims, classify, census, sample, dual, braid. Output formats
are plain text (default), a single JSON document, or CSV rows; JSON
prints numeric values as strings so arbitrary-precision counts and exact
rationals survive any consumer. All randomness flows through --seed, so
identical invocations produce identical bytes.

Exit codes: 0 success (including internal verification), 2 bad arguments,
3 unreadable or malformed input, 4 invariant violation in the input,
5 enumeration budget exceeded, 6 empty stratum, 7 sampling gave up.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from . import census as census_mod
from . import errors
from .braid import (abelianization, sphere_pure_braid_presentation,
                    todd_coxeter)
from .duality import dualize_configuration
from .grassmann import configuration_from_dict, configuration_to_dict
from .linalg import FieldSpec, is_prime
from .sampler import SampleSpec, sample_in_stratum
from .strata import (StratumDescriptor, chart_local_model, codimension_step,
                     dimension, dual_stratum_of, fundamental_group,
                     is_nonempty, stratum_of)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BAD_INPUT = 3
EXIT_INVARIANT = 4
EXIT_BUDGET = 5
EXIT_EMPTY = 6
EXIT_ATTEMPTS = 7


def _emit_json(doc) -> None:
    sys.stdout.write(json.dumps(doc, sort_keys=True, separators=(",", ":")))
    sys.stdout.write("\n")


def _emit_csv(rows: list[dict], header: list[str]) -> None:
    writer = csv.DictWriter(sys.stdout, fieldnames=header, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)


def _dims_row(desc: StratumDescriptor) -> dict:
    nonempty = is_nonempty(desc)
    row = {"h": str(desc.h), "k": str(desc.k), "n": str(desc.n),
           "i": str(desc.i), "nonempty": nonempty,
           "dimension": "", "affine_dim": "", "det_rank": "",
           "det_rows": "", "det_cols": "", "codim_step": "", "pi1": ""}
    if not nonempty:
        return row
    row["dimension"] = str(dimension(desc))
    row["codim_step"] = str(codimension_step(desc))
    row["pi1"] = str(fundamental_group(desc))
    if desc.h >= 2:
        lm = chart_local_model(desc)
        row.update(affine_dim=str(lm.affine_dim), det_rank=str(lm.det_rank_r),
                   det_rows=str(lm.det_rows_m), det_cols=str(lm.det_cols_mprime))
    return row


_DIMS_HEADER = ["h", "k", "n", "i", "nonempty", "dimension", "affine_dim",
                "det_rank", "det_rows", "det_cols", "codim_step", "pi1"]


def cmd_dims(args) -> int:
    if not (0 < args.k < args.n) or args.h < 1:
        print("need h >= 1 and 0 < k < n", file=sys.stderr)
        return EXIT_USAGE
    if args.i is not None and args.i < 0:
        print("need i >= 0", file=sys.stderr)
        return EXIT_USAGE
    candidates = [args.i] if args.i is not None else list(range(args.n + 1))

    def row_for(i: int) -> dict:
        if i > args.n:
            # out of the stored range: unconditionally an empty stratum
            return {"h": str(args.h), "k": str(args.k), "n": str(args.n),
                    "i": str(i), "nonempty": False, "dimension": "",
                    "affine_dim": "", "det_rank": "", "det_rows": "",
                    "det_cols": "", "codim_step": "", "pi1": ""}
        return _dims_row(StratumDescriptor(args.h, args.k, args.n, i))

    rows = [row_for(i) for i in candidates]
    if args.format == "json":
        _emit_json({"rows": rows})
    elif args.format == "csv":
        _emit_csv(rows, _DIMS_HEADER)
    else:
        for r in rows:
            if r["nonempty"]:
                extra = ""
                if r["affine_dim"]:
                    extra = (f"  local_model=C^{r['affine_dim']} x rank-{r['det_rank']}"
                             f" locus of {r['det_rows']}x{r['det_cols']}")
                print(f"i={r['i']}: nonempty  d={r['dimension']}"
                      f"  codim_step={r['codim_step']}  pi1={r['pi1']}{extra}")
            else:
                print(f"i={r['i']}: empty")
    return EXIT_OK


def _load_configuration(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"cannot read configuration: {exc}", file=sys.stderr)
        return None, EXIT_BAD_INPUT
    try:
        return configuration_from_dict(doc), EXIT_OK
    except (errors.GstrataError, ValueError, KeyError, TypeError) as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return None, EXIT_INVARIANT


def cmd_classify(args) -> int:
    config, code = _load_configuration(args.file)
    if config is None:
        return code
    i = stratum_of(config)
    dual_dim = dual_stratum_of(config)
    desc = StratumDescriptor(config.h, config.dim_k, config.ambient_n, i)
    doc = {"h": str(config.h), "k": str(config.dim_k), "n": str(config.ambient_n),
           "stratum": str(i), "dual_intersection": str(dual_dim),
           "dimension": str(dimension(desc))}
    if args.format == "json":
        _emit_json(doc)
    else:
        for key in ("h", "k", "n", "stratum", "dual_intersection", "dimension"):
            print(f"{key} = {doc[key]}")
    return EXIT_OK


def _fit_reports(h: int, k: int, n: int, fit_qs: list[int], budget: int):
    reports = []
    failed = False
    for i in range(n + 1):
        desc = StratumDescriptor(h, k, n, i)
        if not is_nonempty(desc):
            continue
        d = dimension(desc)
        entry = {"i": str(i), "dimension": str(d)}
        try:
            poly = census_mod.fit_count_polynomial(desc, fit_qs, budget)
            entry.update(coeffs=poly.coefficient_strings(),
                         degree=poly.degree,
                         matches_dimension=(poly.degree == d))
            if poly.degree != d:
                failed = True
        except errors.InsufficientPoints as exc:
            entry["skipped"] = str(exc)
        except errors.NonPolynomialFit as exc:
            entry["failed"] = str(exc)
            failed = True
        reports.append(entry)
    return reports, failed


def cmd_census(args) -> int:
    if not (0 < args.k < args.n) or args.h < 1:
        print("need h >= 1 and 0 < k < n", file=sys.stderr)
        return EXIT_USAGE
    if not is_prime(args.q):
        print(f"{args.q} is not prime", file=sys.stderr)
        return EXIT_USAGE
    try:
        report = census_mod.partition_check(args.h, args.k, args.n, args.q,
                                            args.budget)
    except errors.BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET

    shown = [r for r in report.rows
             if r.count > 0 or is_nonempty(StratumDescriptor(r.h, r.k, r.n, r.i))]
    rows = [{"h": str(r.h), "k": str(r.k), "n": str(r.n), "i": str(r.i),
             "q": str(r.q), "count": str(r.count)} for r in shown]

    fit_reports, fit_failed = [], False
    if args.fit:
        try:
            fit_reports, fit_failed = _fit_reports(args.h, args.k, args.n,
                                                   args.fit, args.budget)
        except errors.BudgetExceeded as exc:
            print(f"budget exceeded: {exc}", file=sys.stderr)
            return EXIT_BUDGET

    if args.format == "json":
        doc = {"rows": rows, "total": str(report.total),
               "expected": str(report.expected), "passed": report.passed}
        if args.fit:
            doc["fits"] = fit_reports
        _emit_json(doc)
    elif args.format == "csv":
        _emit_csv(rows, ["h", "k", "n", "i", "q", "count"])
    else:
        for r in rows:
            print(f"i={r['i']}: {r['count']}")
        verdict = "PASS" if report.passed else "FAIL"
        print(f"partition: total={report.total} expected={report.expected} {verdict}")
        for entry in fit_reports:
            if "skipped" in entry:
                print(f"fit i={entry['i']}: skipped ({entry['skipped']})")
            elif "failed" in entry:
                print(f"fit i={entry['i']}: FAIL ({entry['failed']})")
            else:
                ok = "PASS" if entry["matches_dimension"] else "FAIL"
                print(f"fit i={entry['i']}: degree={entry['degree']} "
                      f"dimension={entry['dimension']} {ok}")
    if fit_failed and args.format != "plain":
        print("fit verification failed", file=sys.stderr)
    return EXIT_OK if report.passed and not fit_failed else EXIT_FAIL


def _parse_field(text: str) -> FieldSpec:
    if text == "rational":
        return FieldSpec.rational()
    return FieldSpec.prime(int(text))


def cmd_sample(args) -> int:
    if not (0 < args.k < args.n):
        print("need 0 < k < n", file=sys.stderr)
        return EXIT_USAGE
    try:
        field = _parse_field(args.field)
    except ValueError as exc:
        print(f"bad field: {exc}", file=sys.stderr)
        return EXIT_USAGE
    desc = StratumDescriptor(args.h, args.k, args.n, args.i)
    try:
        config = sample_in_stratum(SampleSpec(desc, field, seed=args.seed))
    except errors.EmptyStratum:
        print(f"stratum {desc} is empty", file=sys.stderr)
        return EXIT_EMPTY
    except (errors.MaxAttemptsExceeded, errors.NotEnoughSubspaces) as exc:
        print(f"sampling failed: {exc}", file=sys.stderr)
        return EXIT_ATTEMPTS
    _emit_json(configuration_to_dict(config))
    return EXIT_OK


def cmd_dual(args) -> int:
    config, code = _load_configuration(args.file)
    if config is None:
        return code
    dual = dualize_configuration(config)
    i = stratum_of(config)
    n = config.ambient_n
    print(f"sum dimension i={i}; dual intersection dimension {n - i}",
          file=sys.stderr)
    _emit_json(configuration_to_dict(dual))
    return EXIT_OK


def cmd_braid(args) -> int:
    if args.h < 2:
        print("need h >= 2 strands", file=sys.stderr)
        return EXIT_USAGE
    pres = sphere_pure_braid_presentation(args.h)
    doc = {"h": str(args.h), "generators": str(len(pres.generators)),
           "relators": str(len(pres.relators))}
    if args.abelianization:
        divisors, free_rank = abelianization(pres)
        doc["abelianization"] = {"divisors": [str(d) for d in divisors],
                                 "free_rank": str(free_rank)}
    if args.todd_coxeter is not None:
        doc["todd_coxeter"] = str(todd_coxeter(pres, args.todd_coxeter))
    if args.format == "json":
        if args.emit:
            doc["presentation"] = pres.to_text()
        _emit_json(doc)
    else:
        print(f"strands h={doc['h']}: {doc['generators']} generators, "
              f"{doc['relators']} relators")
        if "abelianization" in doc:
            ab = doc["abelianization"]
            print(f"abelianization: divisors={ab['divisors']} "
                  f"free_rank={ab['free_rank']}")
        if "todd_coxeter" in doc:
            print(f"todd_coxeter: {doc['todd_coxeter']}")
        if args.emit:
            sys.stdout.write(pres.to_text())
    return EXIT_OK


def _comma_ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gstrata",
        description="Exact stratification of configuration spaces of subspaces")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["plain", "json", "csv"],
                        default="plain")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int,
                        default=int(os.environ.get("GSTRATA_BUDGET",
                                                   census_mod.DEFAULT_BUDGET)))
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, help=help_text, parents=[common])

    p = add("dims", "stratum dimension table")
    p.add_argument("h", type=int)
    p.add_argument("k", type=int)
    p.add_argument("n", type=int)
    p.add_argument("i", type=int, nargs="?", default=None)
    p.set_defaults(func=cmd_dims)

    p = add("classify", "stratum of a configuration file")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    p = add("census", "finite-field stratum counts")
    p.add_argument("h", type=int)
    p.add_argument("k", type=int)
    p.add_argument("n", type=int)
    p.add_argument("q", type=int)
    p.add_argument("--fit", type=_comma_ints, default=None,
                   metavar="q1,q2,...")
    p.set_defaults(func=cmd_census)

    p = add("sample", "random configuration in a stratum")
    p.add_argument("h", type=int)
    p.add_argument("k", type=int)
    p.add_argument("n", type=int)
    p.add_argument("i", type=int)
    p.add_argument("--field", required=True,
                   help="a prime p, or 'rational'")
    p.set_defaults(func=cmd_sample)

    p = add("dual", "annihilator-dual configuration")
    p.add_argument("file")
    p.set_defaults(func=cmd_dual)

    p = add("braid", "sphere pure braid presentation")
    p.add_argument("h", type=int)
    p.add_argument("--abelianization", action="store_true")
    p.add_argument("--todd-coxeter", type=int, default=None, metavar="N")
    p.add_argument("--emit", action="store_true")
    p.set_defaults(func=cmd_braid)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
