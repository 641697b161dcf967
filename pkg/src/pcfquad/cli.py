"""Command-line front end.

Each subcommand wraps one library call and prints JSON (default) or CSV.
Exit codes: 0 success, 1 domain or resource error, 2 usage error,
3 when a verification command reports counterexamples.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Callable, Iterable, Sequence

from . import __version__
from .classify import (
    classify_theorem_1_1,
    empirical_modp_check,
    rigidity_sweep,
    scan,
    verdicts_to_csv,
    verdicts_to_json,
)
from .core_arith import is_perfect_square, ljunggren_solutions, pell_solutions
from .errors import DomainError, InconsistencyError, ResourceError
from .finite_field import check_odd_prime, type_string
from .quad_poly import Family, MonicQuadratic, NotPCF, PCFForm, critical_orbit, detect_pcf_form, iterate
from .stability import factor_witness, lemma24_chain, required_iterate, stability_verdict

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2
EXIT_COUNTEREXAMPLE = 3

PROG = "pcfquad"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse prints usage plus a message and exits; we want one line on stderr.
    def error(self, message: str):
        raise UsageError(message)


def _emit_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _emit_csv(columns: Sequence[str], rows: Iterable[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: ("" if row.get(k) is None else row[k]) for k in columns})
    return buf.getvalue()


def _poly_args(parser: argparse.ArgumentParser) -> None:
    g = parser.add_argument_group("polynomial (x^2 + lin*x + con, or a family normal form)")
    g.add_argument("--lin", type=int)
    g.add_argument("--con", type=int)
    g.add_argument("--family", choices=["F", "G", "H"])
    g.add_argument("--a", type=int)


def _poly(ns: argparse.Namespace) -> MonicQuadratic:
    by_coeffs = ns.lin is not None or ns.con is not None
    by_form = ns.family is not None or ns.a is not None
    if by_coeffs and by_form:
        raise UsageError("give either --lin/--con or --family/--a, not both")
    if by_form:
        if ns.family is None or ns.a is None:
            raise UsageError("--family and --a must be given together")
        return PCFForm(Family(ns.family), ns.a).polynomial()
    if ns.lin is None or ns.con is None:
        raise UsageError("a polynomial is required: --lin L --con C or --family F|G|H --a A")
    return MonicQuadratic(ns.lin, ns.con)


def _pcf_form(f: MonicQuadratic) -> PCFForm:
    form = detect_pcf_form(f)
    if form is None:
        raise DomainError(f"{f} is not post-critically finite")
    return form


def _coeffs(f: MonicQuadratic) -> dict:
    return {"lin": str(f.lin), "con": str(f.con)}


# ---------------------------------------------------------------------------
# Subcommands. Each returns (stdout text, exit code).
# ---------------------------------------------------------------------------


def cmd_classify(ns) -> tuple[str, int]:
    v = classify_theorem_1_1(_poly(ns), witness_bound=ns.witness_bound)
    if ns.format == "csv":
        return verdicts_to_csv([v]), EXIT_OK
    return _emit_json(v.to_dict()), EXIT_OK


def cmd_orbit(ns) -> tuple[str, int]:
    f = _poly(ns)
    orb = critical_orbit(f)
    out = {**_coeffs(f), **orb.to_dict()}
    if ns.format == "csv":
        if isinstance(orb, NotPCF):
            row = {**_coeffs(f), "pcf": False, "reason": orb.reason}
        else:
            row = {**_coeffs(f), "pcf": True, "orbit": " ".join(out["orbit"]), "o_f": orb.o_f, "t_f": orb.t_f}
        return _emit_csv(("lin", "con", "pcf", "orbit", "o_f", "t_f", "reason"), [row]), EXIT_OK
    return _emit_json(out), EXIT_OK


def cmd_typestring(ns) -> tuple[str, int]:
    g = _poly(ns)
    f = MonicQuadratic(ns.ref_lin, ns.ref_con)
    ts = type_string(g, f, ns.p)
    if ns.format == "csv":
        row = {
            "p": ts.p,
            "type": ts.entries,
            "g_irreducible": ts.g_irreducible,
            "zero_positions": " ".join(map(str, ts.zero_positions)),
        }
        return _emit_csv(("p", "type", "g_irreducible", "zero_positions"), [row]), EXIT_OK
    out = {"g": _coeffs(g), "f": _coeffs(f), **ts.to_dict()}
    return _emit_json(out), EXIT_OK


def cmd_stability(ns) -> tuple[str, int]:
    f = _poly(ns)
    form = _pcf_form(f)
    v = stability_verdict(form)
    orbit = critical_orbit(f)
    ri = required_iterate(orbit)
    if ns.format == "csv":
        row = {
            "family": form.family.value,
            "a": str(form.shift),
            "status": v.status.value,
            "rigidity_index": v.rigidity_index,
            "reducible_at": v.reducible_at,
            "conjecture_m": v.conjecture_m,
        }
        cols = ("family", "a", "status", "rigidity_index", "reducible_at", "conjecture_m")
        return _emit_csv(cols, [row]), EXIT_OK
    out = v.to_dict()
    out["required_iterate"] = {"value": ri.value, "proven": ri.proven}
    out["nonsquare_chain"] = lemma24_chain(f, orbit).to_dict()
    return _emit_json(out), EXIT_OK


def cmd_witness(ns) -> tuple[str, int]:
    form = _pcf_form(_poly(ns))
    w = factor_witness(form)
    verified = w.expand() == iterate(form.polynomial(), w.n, cap=max(w.n, 3))
    if ns.format == "csv":
        row = {
            "family": form.family.value,
            "a": str(form.shift),
            "n": w.n,
            "convention": w.convention,
            "h": " ".join(w.h.to_json()),
            "verified": verified,
        }
        return _emit_csv(("family", "a", "n", "convention", "h", "verified"), [row]), EXIT_OK
    out = {"family": form.family.value, "a": str(form.shift), **w.to_dict(), "verified": verified}
    return _emit_json(out), EXIT_OK


def cmd_scan(ns) -> tuple[str, int]:
    if ns.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    verdicts = scan(Family(ns.family), ns.a_from, ns.a_to, jobs=ns.jobs)
    if ns.format == "csv":
        return verdicts_to_csv(verdicts), EXIT_OK
    return verdicts_to_json(verdicts) + "\n", EXIT_OK


def cmd_verify_modp(ns) -> tuple[str, int]:
    f = _poly(ns)
    verdict = classify_theorem_1_1(f, witness_bound=0)
    n_from = ns.n_from if ns.n_from is not None else (verdict.N or 1)
    n_to = ns.n_to if ns.n_to is not None else n_from + 2
    if n_from < 1 or n_to < n_from:
        raise DomainError(f"bad iterate range [{n_from}, {n_to}]")
    report = empirical_modp_check(f, ns.p_bound, n_from, n_to)
    # A qualifying f must be reducible mod every prime for every n >= N.
    bad = []
    if verdict.qualifies:
        bad = [[p, n] for p, n in report.irreducible_at if n >= verdict.N]
    code = EXIT_COUNTEREXAMPLE if bad else EXIT_OK
    if ns.format == "csv":
        rows = []
        for rec in report.records:
            for n, degs in rec.factor_degrees.items():
                rows.append({"p": rec.p, "n": n, "factor_degrees": " ".join(map(str, degs)),
                             "reducible": len(degs) > 1, "type": rec.type})
        for n, red in report.mod2_reducible.items():
            rows.append({"p": 2, "n": n, "reducible": red})
        rows.sort(key=lambda r: (r["p"], r["n"]))
        return _emit_csv(("p", "n", "factor_degrees", "reducible", "type"), rows), code
    out = report.to_dict()
    out.update({"qualifies": verdict.qualifies, "N": verdict.N, "counterexamples": bad})
    return _emit_json(out), code


def cmd_verify_ff(ns) -> tuple[str, int]:
    report = rigidity_sweep(ns.p_bound, ns.max_oracle_degree)
    k = len(report.counterexamples)
    code = EXIT_COUNTEREXAMPLE if k else EXIT_OK
    if ns.format == "csv":
        cols = ("p", "lin", "con", "required_iterate", "expected", "got")
        return _emit_csv(cols, [c.to_dict() for c in report.counterexamples]), code
    out = {"summary": f"{k} counterexamples", **report.to_dict()}
    return _emit_json(out), code


def cmd_pell(ns) -> tuple[str, int]:
    sols = pell_solutions(ns.r_bound)
    rows = [{"r": s.r, "t": s.t} for s in sols]
    if ns.format == "csv":
        return _emit_csv(("r", "t"), rows), EXIT_OK
    return _emit_json({"r_bound": ns.r_bound, "solutions": rows}), EXIT_OK


def cmd_ljunggren(ns) -> tuple[str, int]:
    rows = [{"p": p, "t": is_perfect_square(2 * p**4 - 1)} for p in ljunggren_solutions(ns.p_bound)]
    if ns.format == "csv":
        return _emit_csv(("p", "t"), rows), EXIT_OK
    return _emit_json({"p_bound": ns.p_bound, "solutions": rows}), EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog=PROG, description="Stability and mod-p reducibility of PCF quadratic iterates.")
    parser.add_argument("--version", action="version", version=f"{PROG} {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    def add(name: str, func: Callable, help: str, poly: bool = False) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help, description=help)
        p.add_argument("--format", choices=["json", "csv"], default="json")
        if poly:
            _poly_args(p)
        p.set_defaults(func=func)
        return p

    p = add("classify", cmd_classify, "classify one quadratic", poly=True)
    p.add_argument("--witness-bound", type=int, default=10_000,
                   help="search bound for an all-n prime when f is not special")
    add("orbit", cmd_orbit, "post-critical orbit or escape certificate", poly=True)
    p = add("typestring", cmd_typestring, "type of g along the orbit of a reference f mod p", poly=True)
    p.add_argument("--ref-lin", type=int, required=True)
    p.add_argument("--ref-con", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    add("stability", cmd_stability, "stability verdict over Q", poly=True)
    add("witness", cmd_witness, "explicit factorization of the first reducible iterate", poly=True)
    p = add("scan", cmd_scan, "classify a range of shifts in one family")
    p.add_argument("--family", choices=["F", "G", "H"], required=True)
    p.add_argument("--from", dest="a_from", type=int, required=True)
    p.add_argument("--to", dest="a_to", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p = add("verify-modp", cmd_verify_modp, "factor iterates modulo every prime up to a bound", poly=True)
    p.add_argument("--p-bound", type=int, default=100)
    p.add_argument("--n-from", type=int)
    p.add_argument("--n-to", type=int)
    p = add("verify-ff", cmd_verify_ff, "exhaustive finite-field rigidity check")
    p.add_argument("--p-bound", type=int, required=True)
    p.add_argument("--max-oracle-degree", type=int, default=64)
    p = add("pell", cmd_pell, "solutions of 2r^2 - t^2 = 2")
    p.add_argument("--r-bound", type=int, required=True)
    p = add("ljunggren", cmd_ljunggren, "solutions of 2p^4 - 1 = t^2")
    p.add_argument("--p-bound", type=int, required=True)
    return parser


def _diag(kind: str, exc: BaseException) -> str:
    msg = " ".join(str(exc).split())
    return f"{PROG}: {kind}: {msg}"


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        if ns.command is None:
            raise UsageError("a command is required")
        if getattr(ns, "p", None) is not None:
            check_odd_prime(ns.p)
        text, code = ns.func(ns)
    except UsageError as exc:
        print(_diag("usage error", exc), file=stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(_diag("domain error", exc), file=stderr)
        return EXIT_DOMAIN
    except ResourceError as exc:
        print(_diag("resource error", exc), file=stderr)
        return EXIT_DOMAIN
    except InconsistencyError as exc:
        print(_diag("internal error", exc), file=stderr)
        return EXIT_DOMAIN
    stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())
