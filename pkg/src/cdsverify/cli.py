"""Command-line front end.

    cdsverify barker {search,check}
    cdsverify ds {verify,complement,theta,lemma5,lemma6}
    cdsverify menon {system,lemma7,enumerate,params}
    cdsverify groebner {basis,nf,member,verify-claim}
    cdsverify hadamard {check,search,detbound}

Every command prints a JSON report (``--format json``, the default) or a
plain-text rendering of it (``--format text``).  Exit status: 0 on a finished
computation, 2 on a usage error, 3 when a work budget is exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from . import diffsets, groebner, menon, seqmat
from .errors import BudgetError, UsageError
from .polyalg import MENON_VARIABLES, CyclotomicElement, MonomialOrder, MultiPoly, parse_poly

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_BUDGET = 3

BARKER_DEFAULT_MAX_LEN = 24
HADAMARD_DEFAULT_MAX_ORDER = 20
ENUMERATE_DEFAULT_U_MAX = 4
CLAIMED_BARKER_LENGTHS = (2, 3, 4, 5, 7, 11, 13)

# Sequence images claimed for specific sets (v, D): the printed Barker row of
# length v, plus the trivial set {3} in Z_4.
CLAIMED_IMAGES = {
    (4, (3,)): (1, 1, 1, -1),
    **{(v, D): seqmat.PRINTED_BARKER_TABLE[v] for v, D, _ in diffsets.LISTED_SETS},
}


@dataclass
class Report:
    command: str
    inputs: dict = field(default_factory=dict)
    results: dict = field(default_factory=dict)
    discrepancies: list = field(default_factory=list)
    elapsed_ms: float = 0.0

    def note(self, location, expected, computed, note):
        self.discrepancies.append(
            {
                "paper_location": location,
                "expected_per_paper": jsonable(expected),
                "computed": jsonable(computed),
                "note": note,
            }
        )

    def to_dict(self) -> dict:
        return jsonable(
            {
                "command": self.command,
                "inputs": self.inputs,
                "results": self.results,
                "discrepancies": self.discrepancies,
                "elapsed_ms": self.elapsed_ms,
            }
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> Report:
        data = json.loads(text)
        return cls(
            command=data["command"],
            inputs=data["inputs"],
            results=data["results"],
            discrepancies=data["discrepancies"],
            elapsed_ms=data["elapsed_ms"],
        )


def jsonable(obj: Any):
    if isinstance(obj, MultiPoly):
        return str(obj)
    if isinstance(obj, CyclotomicElement):
        return [str(c) for c in obj.coeffs]
    if isinstance(obj, Fraction):
        return obj.numerator if obj.denominator == 1 else str(obj)
    if isinstance(obj, MonomialOrder):
        return str(obj)
    if isinstance(obj, diffsets.DSParams):
        return list(obj.as_tuple())
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [jsonable(x) for x in items]
    return obj


def render_text(data, indent=0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(data, dict):
        for k, v in data.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
    elif isinstance(data, list):
        for item in data:
            if isinstance(item, (dict, list)) and not _flat(item):
                lines.append(f"{pad}-")
                lines.append(render_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {_inline(item)}")
    else:
        lines.append(f"{pad}{data}")
    return "\n".join(lines)


def _flat(v):
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _inline(v):
    if isinstance(v, list):
        return "[" + ", ".join(str(x) for x in v) + "]"
    return str(v)


# argument helpers -----------------------------------------------------------


def parse_set(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip() != "")
    except ValueError:
        raise UsageError(f"bad set literal {text!r}") from None


def _variables(args):
    if getattr(args, "vars", None):
        return tuple(v.strip() for v in args.vars.split(",") if v.strip())
    return MENON_VARIABLES


def _order(args, variables):
    prec = None
    if getattr(args, "precedence", None):
        prec = tuple(v.strip() for v in args.precedence.split(","))
    elif variables == MENON_VARIABLES:
        prec = MENON_VARIABLES
    return MonomialOrder(args.order, prec)


def _poly_list(text, variables):
    return [parse_poly(t, variables) for t in text.split(";") if t.strip()]


def _menon_generators():
    return menon.build_menon_system().ideal_generators


def _budget(args, default):
    return args.max_work if args.max_work is not None else default


# barker ----------------------------------------------------------------------


def cmd_barker_search(args, report):
    lo, hi = args.min_len, args.max_len
    report.inputs.update(min_len=lo, max_len=hi, canonical=args.canonical)
    census = seqmat.barker_census(
        hi, min_len=lo, max_work=_budget(args, seqmat.DEFAULT_BARKER_WORK),
        workers=args.threads,
    )
    classes = {v: sorted({seqmat.canonical_barker(s) for s in seqs}, reverse=True)
               for v, seqs in census.items()}
    lengths = [v for v, seqs in census.items() if seqs]
    report.results.update(
        barker_lengths=lengths,
        counts={v: len(seqs) for v, seqs in census.items()},
        class_counts={v: len(c) for v, c in classes.items()},
        sequences=classes if args.canonical else census,
    )
    claimed = [v for v in CLAIMED_BARKER_LENGTHS if lo <= v <= hi]
    nontrivial = [v for v in lengths if v >= 2]
    report.results["matches_claimed_lengths"] = nontrivial == claimed
    if nontrivial != claimed:
        report.note("Barker table", claimed, nontrivial,
                    "lengths admitting Barker sequences differ from the claimed list")


def cmd_barker_check(args, report):
    rows = []
    if args.printed_table:
        for v, row in seqmat.PRINTED_BARKER_TABLE.items():
            rows.append(row)
    if args.seq:
        rows.append(seqmat.parse_sequence(args.seq))
    if not rows:
        raise UsageError("give --seq or --printed-table")
    report.inputs.update(sequences=rows)
    audits = []
    for row in rows:
        found = seqmat.search_barker(
            len(row), max_work=_budget(args, seqmat.DEFAULT_BARKER_WORK)
        )
        entry = seqmat.audit_barker_row(row, found)
        audits.append(entry)
        if args.printed_table and seqmat.PRINTED_BARKER_TABLE.get(len(row)) == row:
            where = f"Barker table, length {len(row)}"
            if not entry["is_barker"]:
                report.note(where, "Barker sequence", entry["aperiodic"],
                            f"not Barker; nearest Barker sequence {list(entry['nearest'])} "
                            f"at Hamming distance {entry['nearest_distance']}")
            elif not entry["all_pm1"]:
                report.note(where, "C(tau) = +-1 for all tau >= 1", entry["aperiodic"],
                            "some C(tau) = 0; accepted under |C(tau)| <= 1")
    report.results["audits"] = audits


# difference sets -----------------------------------------------------------------


def _sets(args):
    if getattr(args, "listed", False):
        return [diffsets.DifferenceSet(v, D) for v, D, _ in diffsets.LISTED_SETS]
    if args.v is None or args.set is None:
        raise UsageError("give --v and --set, or --listed")
    return [diffsets.DifferenceSet(args.v, parse_set(args.set))]


def _divisors_for(D, args):
    if getattr(args, "w", None) is not None:
        return [args.w]
    return diffsets.divisors(D.v)


def cmd_ds_verify(args, report):
    out = []
    for D in _sets(args):
        params = D.params
        entry = {"v": D.v, "set": D.elements, "params": params}
        if params is not None:
            seq = seqmat.ds_to_sequence(D)
            periodic = seqmat.periodic_profile(seq)
            entry.update(
                sequence=seq,
                periodic=periodic,
                two_valued=all(r == D.v - 4 * params.n for r in periodic[1:]),
                is_barker=seqmat.is_barker(seq),
            )
            claimed = CLAIMED_IMAGES.get((D.v, D.elements))
            if claimed is not None and claimed != seq:
                note = ("image is the negation of the claimed sequence"
                        if seqmat.negate(claimed) == seq else "image differs from claim")
                report.note(f"difference set {list(D.elements)} in Z_{D.v}",
                            claimed, seq, note)
        listed = {(v, S): p for v, S, p in diffsets.LISTED_SETS}.get((D.v, D.elements))
        if listed is not None and (params is None or params.as_tuple() != listed):
            report.note(f"difference set {list(D.elements)} in Z_{D.v}", listed,
                        params, "parameters differ from the listed ones")
        out.append(entry)
    report.inputs.update(sets=[(D.v, D.elements) for D in _sets(args)])
    report.results["sets"] = out


def cmd_ds_complement(args, report):
    (D,) = _sets(args)
    report.inputs.update(v=D.v, set=D.elements)
    C = diffsets.complement(D)
    report.results.update(
        complement=C.elements, params=C.params,
        formula_params=D.require_params().complement(),
    )


def cmd_ds_theta(args, report):
    (D,) = _sets(args)
    report.inputs.update(v=D.v, set=D.elements, w=args.w)
    report.results["theta"] = diffsets.theta(D)
    if args.w is not None:
        report.results["theta_mod"] = diffsets.theta_mod(D, args.w)


def cmd_ds_lemma5(args, report):
    out = []
    for D in _sets(args):
        for w in _divisors_for(D, args):
            lhs, rhs = diffsets.lemma5_sides(D, w)
            out.append({"v": D.v, "set": D.elements, "w": w, "lhs": lhs, "rhs": rhs,
                        "holds": lhs == rhs})
    report.inputs.update(sets=[(D.v, D.elements) for D in _sets(args)], w=args.w)
    report.results.update(checks=out, all_hold=all(c["holds"] for c in out))


def cmd_ds_lemma6(args, report):
    out = []
    strict_failures = []
    for D in _sets(args):
        params = D.require_params()
        for w in _divisors_for(D, args):
            x = diffsets.residue_counts(D, w).counts
            if args.counts is not None:
                x = parse_set(args.counts)
            eqs = diffsets.lemma6_equations(params, w, x)
            bounds = diffsets.lemma6_bounds(params, w, x)
            holds = all(l == r for _, l, r in eqs)
            out.append({"v": D.v, "set": D.elements, "w": w, "counts": x,
                        "equations": [{"equation": lab, "lhs": l, "rhs": r} for lab, l, r in eqs],
                        "holds": holds, "bounds": bounds})
            if holds and bounds["inclusive"] and not bounds["strict"]:
                strict_failures.append((D.v, w))
    report.inputs.update(sets=[(D.v, D.elements) for D in _sets(args)], w=args.w)
    report.results.update(checks=out, all_hold=all(c["holds"] for c in out))
    if strict_failures:
        report.note("residue-count bound 0 <= x_i < v/w", "strict bound",
                    strict_failures,
                    "genuine difference sets reach x_i = v/w; inclusive bound used")


# menon ------------------------------------------------------------------------------


def cmd_menon_system(args, report):
    s = menon.build_menon_system()
    report.results["polynomials"] = {
        name: {"poly": s[name], "source": s.provenance[name]} for name in s.names()
    }
    if s["f1"] == s["f8"]:
        report.note("f8 of the second system", "a new equation", "f8 == f1",
                    "f8 is textually identical to f1; kept for fidelity")


def cmd_menon_lemma7(args, report):
    rows = menon.lemma7_comparison()
    report.results.update(
        coordinates=rows,
        all_match_printed=all(r["matches_printed"] for r in rows),
        all_match_system=all(r["matches_system"] for r in rows),
    )
    for r in rows:
        if r["identically_zero"]:
            report.note(f"zeta-expansion coordinate {r['coordinate']}",
                        r["printed_text"], r["derived"],
                        f"cancels identically, so {r['system_poly']} = -u^2(u^2 - u) "
                        "is a constraint on u alone")
        elif not r["matches_printed"]:
            report.note(f"zeta-expansion coordinate {r['coordinate']}",
                        r["printed_text"], r["derived"], "symbolic mismatch")


def cmd_menon_enumerate(args, report):
    eqs = args.equations.split(",") if args.equations else None
    report.inputs.update(u_min=args.u_min, u_max=args.u_max, equations=eqs)
    pts = menon.enumerate_solutions(
        args.u_min, args.u_max, equations=eqs,
        max_work=_budget(args, menon.DEFAULT_MAX_WORK), workers=args.threads,
    )
    report.results.update(points=pts, count=len(pts))


def cmd_menon_params(args, report):
    report.inputs.update(u=args.u, sign=args.sign)
    report.results["params"] = menon.menon_params(args.u, args.sign)


# groebner -----------------------------------------------------------------------------


def _generators(args, variables):
    if args.gens:
        return _poly_list(args.gens, variables)
    if variables != MENON_VARIABLES:
        raise UsageError("--gens is required with --vars")
    return _menon_generators()


def cmd_groebner_basis(args, report):
    variables = _variables(args)
    gens = _generators(args, variables)
    order = _order(args, variables)
    report.inputs.update(gens=gens, order=order)
    basis = groebner.buchberger(gens, order)
    report.results.update(
        basis=[g.to_text(order) for g in basis],
        leading_monomials=basis.leading_monomials(),
    )


def cmd_groebner_nf(args, report):
    variables = _variables(args)
    gens = _generators(args, variables)
    order = _order(args, variables)
    p = parse_poly(args.poly, variables)
    report.inputs.update(poly=p, gens=gens, order=order)
    report.results["division_remainder"] = groebner.normal_form(p, gens, order)
    report.results["normal_form"] = groebner.normal_form(p, groebner.buchberger(gens, order))


def cmd_groebner_member(args, report):
    variables = _variables(args)
    gens = _generators(args, variables)
    order = _order(args, variables)
    p = parse_poly(args.poly, variables)
    report.inputs.update(poly=p, gens=gens, order=order)
    report.results["member"] = groebner.ideal_member(p, gens, order)


def cmd_groebner_verify_claim(args, report):
    order = _order(args, MENON_VARIABLES)
    report.inputs.update(order=order)
    res = menon.verify_groebner_claim(order)
    res["basis"] = [g.to_text(order) for g in res["basis"]]
    report.results.update(res)
    if not all(res["membership"].values()):
        report.note("Groebner claim", "u^4 - u^3 in the ideal", res["membership"],
                    "membership fails")
    if res["claim_position"] != 0:
        report.note("Groebner claim", "u^4 - u^3 is the first basis element",
                    res["claim_position"],
                    f"position in the reduced basis under {order} (0-based); "
                    "the source names no monomial order")


# hadamard -------------------------------------------------------------------------------


def cmd_hadamard_check(args, report):
    row = seqmat.parse_sequence(args.row)
    report.inputs.update(row=row)
    report.results.update(
        is_circulant_hadamard=seqmat.is_circulant_hadamard(row),
        periodic=seqmat.periodic_profile(row),
    )


def cmd_hadamard_search(args, report):
    report.inputs.update(max_order=args.max_order, reduce=args.reduce)
    found = seqmat.search_circulant_hadamard(
        args.max_order, reduce=args.reduce,
        max_work=_budget(args, seqmat.DEFAULT_HADAMARD_WORK), workers=args.threads,
    )
    orders = [n for n, rows in found.items() if rows]
    report.results.update(
        orders=orders,
        counts={n: len(rows) for n, rows in found.items()},
        rows={n: rows for n, rows in found.items() if rows},
    )
    if orders != [n for n in (1, 4) if n <= args.max_order]:
        report.note("circulant Hadamard census", [1, 4], orders,
                    "orders with circulant Hadamard matrices differ from the claim")


def cmd_hadamard_detbound(args, report):
    if args.row:
        rows = [seqmat.parse_sequence(args.row)]
    elif args.all_up_to:
        n_max = args.all_up_to
        if n_max > seqmat.MAX_DET_ORDER:
            raise BudgetError(f"exhaustive determinant check limited to order "
                              f"{seqmat.MAX_DET_ORDER}", bound=seqmat.MAX_DET_ORDER,
                              requested=n_max)
        rows = [r for n in range(1, n_max + 1) for r in seqmat.all_rows(n)]
    else:
        raise UsageError("give --row or --all-up-to")
    report.inputs.update(rows=rows if args.row else None, all_up_to=args.all_up_to)
    checks = []
    agree = True
    for row in rows:
        rep = seqmat.determinant_bound_check(row)
        rep["is_circulant_hadamard"] = seqmat.is_circulant_hadamard(row)
        agree &= rep["equality"] == rep["is_circulant_hadamard"]
        if args.row:
            rep["row"] = row
        checks.append(rep)
    report.results.update(
        checks=checks if args.row else [c for c in checks if c["equality"]],
        rows_checked=len(rows),
        equality_iff_hadamard=agree,
    )
    report.note("determinant inequality", "|det A| <= prod_i ||row_i||^2 (= n^n)",
                "|det A| <= n^(n/2)",
                "squared row norms give a looser bound; the Hadamard bound is used")


# parser -------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--max-work", type=int, default=None,
                        help="work budget (search-specific units)")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1)

    parser = argparse.ArgumentParser(prog="cdsverify", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True)

    def sub(group, name, func, **kw):
        p = group.add_parser(name, parents=[common], **kw)
        p.set_defaults(func=func)
        return p

    barker = groups.add_parser("barker").add_subparsers(dest="cmd", required=True)
    p = sub(barker, "search", cmd_barker_search)
    p.add_argument("--max-len", type=int, default=BARKER_DEFAULT_MAX_LEN)
    p.add_argument("--min-len", type=int, default=1)
    p.add_argument("--canonical", action="store_true")
    p = sub(barker, "check", cmd_barker_check)
    p.add_argument("--seq")
    p.add_argument("--printed-table", action="store_true")

    ds = groups.add_parser("ds").add_subparsers(dest="cmd", required=True)
    for name, func in (("verify", cmd_ds_verify), ("complement", cmd_ds_complement),
                       ("theta", cmd_ds_theta), ("lemma5", cmd_ds_lemma5),
                       ("lemma6", cmd_ds_lemma6)):
        p = sub(ds, name, func)
        p.add_argument("--v", type=int)
        p.add_argument("--set")
        if name in ("verify", "lemma5", "lemma6"):
            p.add_argument("--listed", action="store_true",
                           help="run on the six listed difference sets")
        if name in ("theta", "lemma5", "lemma6"):
            p.add_argument("--w", type=int)
        if name == "lemma6":
            p.add_argument("--counts", help="residue counts to test instead of D's own")

    mn = groups.add_parser("menon").add_subparsers(dest="cmd", required=True)
    sub(mn, "system", cmd_menon_system)
    sub(mn, "lemma7", cmd_menon_lemma7)
    p = sub(mn, "enumerate", cmd_menon_enumerate)
    p.add_argument("--u-min", type=int, default=0)
    p.add_argument("--u-max", type=int, default=ENUMERATE_DEFAULT_U_MAX)
    p.add_argument("--equations", help="comma-separated subset of f0..f8")
    p = sub(mn, "params", cmd_menon_params)
    p.add_argument("--u", type=int, required=True)
    p.add_argument("--sign", choices=("+", "-"), default="-")

    gb = groups.add_parser("groebner").add_subparsers(dest="cmd", required=True)
    for name, func in (("basis", cmd_groebner_basis), ("nf", cmd_groebner_nf),
                       ("member", cmd_groebner_member),
                       ("verify-claim", cmd_groebner_verify_claim)):
        p = sub(gb, name, func)
        p.add_argument("--order", choices=("lex", "grevlex"), default="lex")
        if name == "verify-claim":
            continue
        p.add_argument("--vars", help="comma-separated variable list")
        p.add_argument("--precedence", help="comma-separated variables, most significant first")
        p.add_argument("--gens", help="';'-separated generators (default: f0..f7)")
        if name in ("nf", "member"):
            p.add_argument("--poly", required=True)

    hd = groups.add_parser("hadamard").add_subparsers(dest="cmd", required=True)
    p = sub(hd, "check", cmd_hadamard_check)
    p.add_argument("--row", required=True)
    p = sub(hd, "search", cmd_hadamard_search)
    p.add_argument("--max-order", type=int, default=HADAMARD_DEFAULT_MAX_ORDER)
    p.add_argument("--reduce", action="store_true",
                   help="one row per rotation/negation orbit")
    p = sub(hd, "detbound", cmd_hadamard_detbound)
    p.add_argument("--row")
    p.add_argument("--all-up-to", type=int)
    return parser


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    report = Report(command=f"{args.group} {args.cmd}")
    start = time.perf_counter()
    try:
        args.func(args, report)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    report.elapsed_ms = round((time.perf_counter() - start) * 1000, 3)
    if args.format == "json":
        print(report.to_json(), file=stdout)
    else:
        print(render_text(report.to_dict()), file=stdout)
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
