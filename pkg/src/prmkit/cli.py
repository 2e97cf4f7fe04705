"""Command-line front end.

Subcommands: ``params`` (closed-form and computed parameters), ``genmat``
(export a generator matrix), ``ghw`` (weight bounds per rank), ``table``
(regenerate/check the reference tables), ``verify`` (invariant sweeps).

Exit codes: 0 pass, 1 mismatch or counterexample, 2 usage error,
3 infeasible under the enumeration cap.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import codes as codes_mod
from . import linalg, tables
from .codes import (
    CodeSpec,
    LinearCode,
    dual_code,
    prm_dual_generator,
    prm_generator,
    prm_params,
    rm_generator,
    rm_params,
    ssc_degree,
)
from .gf import build_field_of_order
from .ghw import ghw_prm_lower, ghw_prm_upper, refine_hierarchy
from .oracle import EnumerationInfeasible, ghw_exact, min_distance_exact
from .subfield import ssc_prm, ssc_rm
from .pspace import enumerate_affine, enumerate_projective

SCHEMA = "prmkit/1"

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3


class UsageError(Exception):
    pass


def _spec_from_args(args) -> CodeSpec:
    family = args.family
    lam = getattr(args, "lam", None)
    d = getattr(args, "d", None)
    if lam is not None and d is not None:
        raise UsageError("give either --d or --lambda, not both")
    if d is None:
        if lam is None:
            raise UsageError("one of --d or --lambda is required")
        d = ssc_degree(args.q, args.s, lam)
    return CodeSpec(args.q, args.s, args.m, d, family, lam)


def build_code(spec: CodeSpec) -> LinearCode:
    """Construct the code a spec names, including subfield and dual families."""
    base_family = spec.family.removeprefix("dual-")
    if base_family == "rm":
        code = rm_generator(CodeSpec(spec.q, spec.s, spec.m, spec.d, "rm"))
    elif base_family == "prm":
        code = prm_generator(CodeSpec(spec.q, spec.s, spec.m, spec.d, "prm"))
    elif base_family == "ssc-rm":
        code = ssc_rm(spec.q, spec.s, spec.m, spec.d).as_code(spec)
    elif base_family == "ssc-prm":
        code = ssc_prm(spec.q, spec.s, spec.m, spec.d).as_code(spec)
    else:  # pragma: no cover
        raise UsageError(f"cannot build family {spec.family!r}")
    if spec.family.startswith("dual-"):
        code = dual_code(code)
        code.spec = spec
    return code


# -- matrix serialization -----------------------------------------------------


def matrix_to_text(code: LinearCode) -> str:
    ctx = code.ctx
    lines = [f"{ctx.p} {ctx.e} {code.k} {code.n}"]
    for row in code.generator.a:
        lines.append(" ".join(str(int(x)) for x in row))
    return "\n".join(lines) + "\n"


def matrix_to_csv(code: LinearCode) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow([code.ctx.p, code.ctx.e, code.k, code.n])
    for row in code.generator.a:
        w.writerow([int(x) for x in row])
    return buf.getvalue()


def matrix_to_json(code: LinearCode) -> str:
    payload = {
        "schema": SCHEMA,
        "field": {"p": code.ctx.p, "e": code.ctx.e},
        "rows": code.k,
        "cols": code.n,
        "entries": [[int(x) for x in row] for row in code.generator.a],
    }
    return json.dumps(payload, indent=1) + "\n"


def matrix_from_json(text: str) -> LinearCode:
    payload = json.loads(text)
    if payload.get("schema") != SCHEMA:
        raise ValueError("unknown schema")
    ctx = build_field_of_order(payload["field"]["p"] ** payload["field"]["e"])
    arr = np.array(payload["entries"], dtype=np.int64).reshape(payload["rows"], payload["cols"])
    return LinearCode(ctx, linalg.Matrix(ctx, arr))


# -- subcommands ----------------------------------------------------------------


def cmd_params(args) -> int:
    spec = _spec_from_args(args)
    out: dict = {"schema": SCHEMA, "family": spec.family, "q": spec.q, "s": spec.s,
                 "m": spec.m, "d": spec.d}
    if spec.lam is not None:
        out["lambda"] = spec.lam
    if spec.family == "rm":
        n, k, d1 = rm_params(spec)
        out.update(n=n, k=k, d1=d1, d1_kind="formula")
    elif spec.family == "prm":
        n, k, d1 = prm_params(spec)
        out.update(n=n, k=k, d1=d1, d1_kind="formula")
    else:
        code = build_code(spec)
        out.update(n=code.n, k=code.k)
        if spec.family == "ssc-prm":
            out.update(d1=codes_mod.prm_d1(spec.qs, spec.m, spec.d), d1_kind="lower-bound")
        elif spec.family == "ssc-rm":
            out.update(d1=codes_mod.rm_d1(spec.qs, spec.m, spec.d), d1_kind="lower-bound")
    infeasible = False
    if args.oracle_cap:
        code = build_code(spec)
        try:
            out.update(d1_oracle=min_distance_exact(code, cap=args.oracle_cap))
        except EnumerationInfeasible as e:
            out.update(d1_oracle=None, oracle_note=str(e))
            infeasible = True
    if args.format == "json":
        print(json.dumps(out, indent=1))
    else:
        pieces = [f"{spec.family} q={spec.q} s={spec.s} m={spec.m} d={spec.d}",
                  f"n={out['n']} k={out['k']}"]
        if "d1" in out:
            pieces.append(f"d1={out['d1']} ({out['d1_kind']})")
        if "d1_oracle" in out:
            pieces.append(f"d1_oracle={out['d1_oracle']}")
        print("  ".join(pieces))
    if out.get("d1_kind") == "lower-bound" and out.get("d1_oracle") is not None:
        if out["d1_oracle"] < out["d1"]:
            return EXIT_MISMATCH
    return EXIT_INFEASIBLE if infeasible else EXIT_OK


def cmd_genmat(args) -> int:
    spec = _spec_from_args(args)
    code = build_code(spec)
    if args.format == "txt":
        text = matrix_to_text(code)
    elif args.format == "csv":
        text = matrix_to_csv(code)
    else:
        text = matrix_to_json(code)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_ghw(args) -> int:
    qs = args.q**args.s
    if args.r is None and not args.all:
        raise UsageError("one of --r or --all is required")
    kdim_check = codes_mod.prm_dim(qs, args.m, args.d)
    if args.r is not None and not 1 <= args.r <= kdim_check:
        raise UsageError(f"rank {args.r} out of range for dimension {kdim_check}")
    records = []
    if args.refine:
        rep = refine_hierarchy(args.q, args.s, args.m, args.d, duality=not args.no_duality)
        ranks = range(1, rep.k + 1) if args.all else [args.r]
        for r in ranks:
            b = rep.bound(r)
            rec = {"r": r, "lower": b.lower, "upper": b.upper, "status": b.status}
            if b.exact:
                rec["exact"] = b.lower
            records.append(rec)
    else:
        kdim = codes_mod.prm_dim(qs, args.m, args.d)
        ranks = range(1, kdim + 1) if args.all else [args.r]
        for r in ranks:
            if r == 1:
                lo = hi = codes_mod.prm_d1(qs, args.m, args.d)
                trace = None
            else:
                lo, trace = ghw_prm_lower(args.q, args.s, args.m, args.d, r)
                hi = ghw_prm_upper(args.q, args.s, args.m, args.d, r)
            rec = {"r": r, "lower": lo, "upper": hi,
                   "status": "exact" if lo == hi else "interval"}
            if lo == hi:
                rec["exact"] = lo
            if args.trace and trace is not None and "B" in trace.detail:
                rec["trace"] = {f"{a},{g}": v for (a, g), v in trace.detail["B"].items()}
            records.append(rec)
    if args.oracle_cap:
        code = prm_generator(CodeSpec(args.q, args.s, args.m, args.d, "prm"))
        for rec in records:
            try:
                rec["oracle"] = ghw_exact(code, rec["r"], cap=args.oracle_cap)
            except EnumerationInfeasible:
                rec["oracle"] = None
    if args.format == "json":
        print(json.dumps({"schema": SCHEMA, "q": args.q, "s": args.s, "m": args.m,
                          "d": args.d, "records": records}, indent=1))
    else:
        for rec in records:
            line = f"r={rec['r']}  lower={rec['lower']}  upper={rec['upper']}  {rec['status']}"
            if rec.get("oracle") is not None:
                line += f"  oracle={rec['oracle']}"
            print(line)
    bad = [r for r in records if r.get("oracle") is not None
           and not (r["lower"] <= r["oracle"] <= r["upper"])]
    return EXIT_MISMATCH if bad else EXIT_OK


def cmd_table(args) -> int:
    if args.table == "goodparams":
        ok, problems, records = tables.check_good_params(oracle_cap=args.oracle_cap)
        if args.format == "json":
            print(json.dumps({"schema": SCHEMA, "table": "goodparams",
                              "rows": records, "check": ok}, indent=1))
        else:
            for rec in records:
                d1 = rec["d1_exact"] if rec["d1_exact"] is not None else f">={rec['d1_bound']}"
                print(f"q={rec['q']} s={rec['s']} m={rec['m']} lambda={rec['lambda']} "
                      f"{rec['kind']:4s} [{rec['n_got']},{rec['k_got']}] d1={d1} ({rec['d1_status']})")
        if args.check:
            for p in problems:
                print("MISMATCH:", p, file=sys.stderr)
            print("table goodparams:", "PASS" if ok else "FAIL")
            return EXIT_OK if ok else EXIT_MISMATCH
        return EXIT_OK

    regenerated = tables.generate_ghw_table(args.table)
    meta = tables.golden_ghw_table(args.table)
    if args.format == "json":
        print(json.dumps({"schema": SCHEMA, "table": args.table,
                          "qs": meta["qs"], "m": meta["m"], "duality": meta["duality"],
                          "rows": {str(d): cells for d, cells in sorted(regenerated.items())}},
                         indent=1))
    else:
        for d, cells in sorted(regenerated.items()):
            print(f"d={d}: " + " ".join(cells))
    if args.check:
        ok, problems = tables.check_ghw_table(args.table)
        for p in problems:
            print("MISMATCH:", p, file=sys.stderr)
        print(f"table {args.table}:", "PASS" if ok else "FAIL")
        return EXIT_OK if ok else EXIT_MISMATCH
    return EXIT_OK


# -- verify sweeps ---------------------------------------------------------------


def _prm_sweep(max_n: int, field_sizes=(2, 3, 4, 5, 8, 9), ms=(1, 2, 3)):
    for qs in field_sizes:
        for m in ms:
            if codes_mod.prm_length(qs, m) > max_n:
                continue
            for d in range(1, m * (qs - 1) + 1):
                yield qs, m, d


def verify_recursion(max_n: int, field_sizes=(2, 3, 4, 5, 8, 9), ms=(1, 2, 3)) -> tuple[int, list[str]]:
    failures = []
    count = 0
    for qs, m, d in _prm_sweep(max_n, field_sizes, ms):
        count += 1
        if not codes_mod.verify_recursion(CodeSpec(qs, 1, m, d, "prm")):
            failures.append(f"recursion failed at qs={qs} m={m} d={d}")
    return count, failures


def verify_duality(max_n: int, field_sizes=(2, 3, 4, 5, 8, 9), ms=(2, 3)) -> tuple[int, list[str]]:
    failures = []
    count = 0
    for qs, m, d in _prm_sweep(max_n, field_sizes, ms):
        if m < 2:
            continue
        count += 1
        spec = CodeSpec(qs, 1, m, d, "prm")
        direct = dual_code(prm_generator(spec))
        closed = prm_dual_generator(spec)
        if not linalg.row_space_equal(direct.generator, closed.generator):
            failures.append(f"duality failed at qs={qs} m={m} d={d}")
    return count, failures


def verify_ssc(max_n: int, pairs=((2, 2), (2, 3), (2, 4), (3, 2), (4, 2), (5, 2), (7, 2)), ms=(2, 3)) -> tuple[int, list[str]]:
    from .subfield import ssc_dual_recursive, ssc_recursion_check

    failures = []
    count = 0
    for q, s in pairs:
        qs = q**s
        for m in ms:
            if m < 2 or codes_mod.prm_length(qs, m) > max_n:
                continue
            for lam in range(1, m * (q - 1) + 1):
                count += 1
                ok, dims = ssc_recursion_check(q, s, m, lam)
                if not ok:
                    failures.append(f"subcode recursion failed at q={q} s={s} m={m} lam={lam}")
                try:
                    ssc_dual_recursive(q, s, m, lam)
                except AssertionError:
                    failures.append(f"dual subcode recursion failed at q={q} s={s} m={m} lam={lam}")
    return count, failures


def verify_ghw_sandwich(max_n: int, qs_values=(2, 3, 4), ms=(2, 3), cap: int = 200_000) -> tuple[int, list[str]]:
    from .oracle import weight_hierarchy_exact

    failures = []
    count = 0
    for qs in qs_values:
        for m in ms:
            if m < 2 or codes_mod.prm_length(qs, m) > max_n:
                continue
            for d in range(1, m * (qs - 1) + 1):
                code = prm_generator(CodeSpec(qs, 1, m, d, "prm"))
                entries = weight_hierarchy_exact(code, cap=cap)
                rep = refine_hierarchy(qs, 1, m, d)
                for e in entries:
                    if e.value is None:
                        continue
                    count += 1
                    b = rep.bound(e.r)
                    if not b.lower <= e.value <= b.upper:
                        failures.append(
                            f"sandwich failed at qs={qs} m={m} d={d} r={e.r}: "
                            f"{b.lower} <= {e.value} <= {b.upper}"
                        )
                    if qs == 2 and e.value != b.lower:
                        failures.append(
                            f"binary sharpness failed at m={m} d={d} r={e.r}: "
                            f"bound {b.lower}, true {e.value}"
                        )
    return count, failures


def verify_ordering(max_n: int, field_sizes=(2, 3, 4, 5, 7, 8, 9, 16), ms=(0, 1, 2, 3, 4)) -> tuple[int, list[str]]:
    failures = []
    count = 0
    for qs in field_sizes:
        ctx = build_field_of_order(qs)
        for m in ms:
            if codes_mod.prm_length(qs, m) > max_n:
                continue
            count += 1
            pts = enumerate_projective(ctx, m).points
            if pts.shape[0] != codes_mod.prm_length(qs, m):
                failures.append(f"point count wrong at qs={qs} m={m}")
            lead = [next((i for i, x in enumerate(p) if x), -1) for p in pts.tolist()]
            if any(pts[j, lead[j]] != 1 for j in range(len(pts))):
                failures.append(f"non-normalized point at qs={qs} m={m}")
            if len({tuple(p) for p in pts.tolist()}) != len(pts):
                failures.append(f"duplicate points at qs={qs} m={m}")
            if m >= 1:
                if not (pts[: qs**m, 0] == 1).all() or not (pts[qs**m :, 0] == 0).all():
                    failures.append(f"block structure broken at qs={qs} m={m}")
                aff = enumerate_affine(ctx, m).points
                prev = enumerate_projective(ctx, m - 1).points
                nprev = prev.shape[0]
                for r in range(qs - 1):
                    blk = aff[r * nprev : (r + 1) * nprev]
                    if not (blk == ctx.scale_vec(ctx.xi_pow(r), prev)).all():
                        failures.append(f"coset block {r} wrong at qs={qs} m={m}")
                        break
    return count, failures


VERIFY_SUITES = {
    "recursion": verify_recursion,
    "duality": verify_duality,
    "ssc": verify_ssc,
    "ghw-sandwich": verify_ghw_sandwich,
    "ordering": verify_ordering,
}


def cmd_verify(args) -> int:
    fn = VERIFY_SUITES[args.suite]
    kwargs = {}
    if args.q is not None:
        qs = args.q ** (args.s or 1)
        if args.suite == "ssc":
            kwargs["pairs"] = ((args.q, args.s or 1),)
        elif args.suite == "ghw-sandwich":
            kwargs["qs_values"] = (qs,)
        else:
            kwargs["field_sizes"] = (qs,)
    if args.m is not None:
        kwargs["ms"] = (args.m,)
    count, failures = fn(args.max_n, **kwargs)
    report = {"schema": SCHEMA, "suite": args.suite, "checked": count,
              "failures": failures, "pass": not failures}
    if args.format == "json":
        print(json.dumps(report, indent=1))
    else:
        print(f"verify {args.suite}: checked {count} cases:", "PASS" if not failures else "FAIL")
        for f in failures:
            print("  counterexample:", f)
    return EXIT_OK if not failures else EXIT_MISMATCH


# -- parser ----------------------------------------------------------------------


def _add_spec_args(p: argparse.ArgumentParser, with_family: bool = True) -> None:
    if with_family:
        p.add_argument("--family", required=True, choices=codes_mod.FAMILIES)
    p.add_argument("--q", type=int, required=True, help="subfield size")
    p.add_argument("--s", type=int, required=True, help="extension exponent (field is GF(q^s))")
    p.add_argument("--m", type=int, required=True, help="number of affine variables")
    p.add_argument("--d", type=int, help="degree")
    p.add_argument("--lambda", dest="lam", type=int, help="special-degree index")


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="prmkit", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", help="length, dimension and distance of a code")
    _add_spec_args(p)
    p.add_argument("--format", choices=("txt", "json"), default="txt")
    p.add_argument("--oracle-cap", type=int, default=0, help="verify d1 by enumeration up to this cap")
    p.set_defaults(fn=cmd_params)

    p = sub.add_parser("genmat", help="write a generator matrix")
    _add_spec_args(p)
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--format", choices=("txt", "csv", "json"), default="txt")
    p.set_defaults(fn=cmd_genmat)

    p = sub.add_parser("ghw", help="generalized Hamming weight bounds")
    _add_spec_args(p, with_family=False)
    p.add_argument("--r", type=int, help="rank")
    p.add_argument("--all", action="store_true", help="all ranks")
    p.add_argument("--refine", action="store_true", help="tighten with hierarchy refinement")
    p.add_argument("--no-duality", action="store_true", help="skip dual-code refinement")
    p.add_argument("--trace", action="store_true", help="include profile values")
    p.add_argument("--oracle-cap", type=int, default=0)
    p.add_argument("--format", choices=("txt", "json"), default="txt")
    p.set_defaults(fn=cmd_ghw)

    p = sub.add_parser("table", help="regenerate a reference table")
    p.add_argument("table", choices=tables.TABLE_IDS)
    p.add_argument("--check", action="store_true", help="diff against the golden copy")
    p.add_argument("--format", choices=("txt", "json"), default="txt")
    p.add_argument("--oracle-cap", type=int, default=None)
    p.set_defaults(fn=cmd_table)

    p = sub.add_parser("verify", help="run an invariant sweep")
    p.add_argument("suite", choices=sorted(VERIFY_SUITES))
    p.add_argument("--max-n", type=int, default=400)
    p.add_argument("--q", type=int, help="restrict the sweep to one subfield size")
    p.add_argument("--s", type=int, help="extension exponent for --q")
    p.add_argument("--m", type=int, help="restrict the sweep to one m")
    p.add_argument("--format", choices=("txt", "json"), default="txt")
    p.set_defaults(fn=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = make_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except EnumerationInfeasible as e:
        print(f"infeasible: {e}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
