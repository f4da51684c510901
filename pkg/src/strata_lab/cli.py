"""Command-line interface: subcommand dispatch and JSON/DOT report emission.

Exit codes: 0 success, 1 verification failure (non-confluent presentation,
failed identity, exhausted rewrite budget), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import dsl, qdet, strat, zoo
from .coeff import CoeffError, SpecializationError
from .grading import is_homogeneous, scalar_normality_check, weight_of
from .pbw import (DEFAULT_FUEL, EngineError, FuelExhausted, NegativeExponent,
                  Presentation, PresentationError, diamond_check,
                  hilbert_count, order_key)

VERSION = "0.1.0"

CITATIONS = {
    "verify": ["confluence of the descending-pair rules certifies the ordered-monomial basis"],
    "nf": ["normal forms in the ordered-monomial basis"],
    "hilbert": ["graded dimension matches the commutative polynomial count"],
    "qdet": ["signed permutation-sum quantum determinant"],
    "qdet-verify": ["quantum determinant normality law"],
    "sl-check": ["quantum determinant centrality criterion"],
    "weights": ["torus weights realize the grading"],
    "eigencheck": ["homogeneous elements are the torus eigenvectors"],
    "normalcheck": ["scalar normality certificates for torus eigenvectors"],
    "hspec": ["finite poset of torus-stable primes of a quantum affine space"],
    "strata": ["strata localize to quantum tori",
               "stratum centers are Laurent polynomial rings of rank at most the torus rank"],
    "center": ["stratum centers are Laurent polynomial rings of rank at most the torus rank"],
    "witness": ["normal separation across comparable torus-stable primes"],
    "poset": ["stratification topology of the finite stable-prime poset"],
}


class CliFailure(Exception):
    """Verification failure carrying a partial result payload."""

    def __init__(self, message: str, results=None):
        super().__init__(message)
        self.results = results or {}


def _read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _parse_specialize(arg: str | None) -> dict[str, Fraction] | None:
    if not arg:
        return None
    out = {}
    for piece in arg.split(","):
        if "=" not in piece:
            raise dsl.DslError(f"bad specialization {piece!r}; expected sym=rational")
        name, value = piece.split("=", 1)
        try:
            out[name.strip()] = Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise dsl.DslError(f"bad rational {value!r}") from exc
    return out


def _term_list(p: Presentation, element, specialize=None) -> list[dict]:
    terms = []
    for exp in sorted(element.terms, key=order_key, reverse=True):
        entry = {"monomial": list(exp), "coeff": str(element.terms[exp])}
        if specialize is not None:
            entry["value"] = str(element.terms[exp].specialize(specialize))
        terms.append(entry)
    return terms


def _hprime_arg(text: str) -> strat.HPrime:
    text = text.strip()
    if not text:
        return strat.HPrime(())
    try:
        return strat.HPrime(tuple(int(x) for x in text.split(",")))
    except ValueError as exc:
        raise dsl.DslError(f"bad generator subset {text!r}") from exc


def _stratum_record(report: strat.StratumReport) -> dict:
    return {
        "hprime": list(report.hprime.members),
        "center_rank": report.center_rank,
        "center_basis": [list(v) for v in report.center_basis],
        "torus_size": report.torus_size,
        "citations": CITATIONS["strata"],
    }


def emit_dot(primes, ranks=None, name="hspec") -> str:
    """DOT digraph of the inclusion poset; edges are covering relations."""
    def node_id(w):
        return "n" + "_".join(str(i) for i in w.members) if w.members else "n0"

    def label(w):
        body = "{" + ",".join(str(i) for i in w.members) + "}"
        if ranks is not None:
            body += f" rank {ranks[w]}"
        return body

    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for w in primes:
        lines.append(f'  {node_id(w)} [label="{label(w)}"];')
    for a, b in strat.poset_covers(primes):
        lines.append(f"  {node_id(a)} -> {node_id(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- subcommand handlers -------------------------------------------------------


def _load(args) -> tuple[Presentation, str]:
    source = _read_source(args.file)
    p = dsl.parse(source)
    return p.with_fuel(args.fuel), source


def _cmd_verify(args):
    p, source = _load(args)
    reports = diamond_check(p)
    unresolved = [{"triple": [p.generators[t] for t in r.triple], "note": r.note}
                  for r in reports if not r.resolved]
    results = {"algebra": p.name, "triples": len(reports),
               "unresolved": unresolved, "confluent": not unresolved}
    if unresolved:
        raise CliFailure("presentation is not confluent", results)
    return results, source


def _cmd_nf(args):
    p, source = _load(args)
    element = dsl.evaluate_expression(p, args.expr)
    spec = _parse_specialize(args.specialize)
    results = {"algebra": p.name, "expr": args.expr,
               "terms": _term_list(p, element, spec), "zero": not element}
    return results, source


def _cmd_hilbert(args):
    p, source = _load(args)
    from math import comb
    counts = []
    ok = True
    for d in range(args.degree + 1):
        got = hilbert_count(p, d)
        want = comb(p.ngens + d - 1, d) if p.ngens else (1 if d == 0 else 0)
        counts.append({"degree": d, "count": got, "commutative_count": want})
        ok = ok and got == want
    results = {"algebra": p.name, "counts": counts, "matches": ok}
    if not ok:
        raise CliFailure("graded dimension mismatch", results)
    return results, source


def _matrix_data(args):
    if args.single_param:
        return zoo.single_param_matrix_data(args.n)
    return zoo.generic_matrix_data(args.n)


def _cmd_qdet(args):
    lam, p = _matrix_data(args)
    pres = zoo.quantum_matrices(args.n, args.n, lam, p).with_fuel(args.fuel)
    det = qdet.quantum_determinant(args.n, lam, p)
    spec = _parse_specialize(args.specialize)
    source = f"qdet n={args.n} single_param={args.single_param}"
    results = {"n": args.n, "single_param": args.single_param,
               "terms": _term_list(pres, det, spec)}
    return results, source


def _cmd_qdet_verify(args):
    lam, p = _matrix_data(args)
    report = qdet.verify_det_normality(args.n, lam, p)
    source = f"qdet-verify n={args.n} single_param={args.single_param}"
    results = {"n": args.n, "single_param": args.single_param,
               "identities": [{"i": r.i, "j": r.j, "ok": r.ok} for r in report.identities],
               "passed": report.passed}
    if not report.passed:
        raise CliFailure("determinant normality failed", results)
    return results, source


def _cmd_sl_check(args):
    lam, p = _matrix_data(args)
    central = qdet.sl_condition(args.n, lam, p)
    common = qdet.sl_common_value(args.n, lam, p)
    source = f"sl-check n={args.n} single_param={args.single_param}"
    results = {"n": args.n, "single_param": args.single_param, "central": central,
               "common_value": str(common) if common is not None else None}
    return results, source


def _cmd_weights(args):
    p, source = _load(args)
    element = dsl.evaluate_expression(p, args.expr)
    w = is_homogeneous(p, element)
    terms = [{"monomial": list(exp), "weight": list(weight_of(p, exp))}
             for exp in sorted(element.terms, key=order_key, reverse=True)]
    results = {"algebra": p.name, "expr": args.expr, "terms": terms,
               "homogeneous": w is not None,
               "weight": list(w) if w is not None else None}
    return results, source


def _cmd_eigencheck(args):
    p, source = _load(args)
    element = dsl.evaluate_expression(p, args.expr)
    w = is_homogeneous(p, element)
    results = {"algebra": p.name, "expr": args.expr,
               "homogeneous": w is not None,
               "weight": list(w) if w is not None else None}
    return results, source


def _cmd_normalcheck(args):
    p, source = _load(args)
    element = dsl.evaluate_expression(p, args.expr)
    cert = scalar_normality_check(p, element)
    results = {"algebra": p.name, "expr": args.expr, "scalar_normal": cert is not None}
    if cert is not None:
        results["mus"] = {g: str(mu) for g, mu in zip(p.generators, cert.mus)}
    return results, source


def _cmd_hspec(args):
    p, source = _load(args)
    primes = strat.hspec_quantum_affine(p)
    results = {"algebra": p.name, "count": len(primes),
               "hprimes": [list(w.members) for w in primes]}
    return results, source


def _cmd_strata(args):
    p, source = _load(args)
    primes = strat.hspec_quantum_affine(p)
    records = []
    ok = True
    for w in primes:
        report = strat.stratum_report(p, w)
        record = _stratum_record(report)
        if args.box:
            from itertools import product as iproduct

            from .lattice import in_row_span
            brute = strat.brute_force_central_monomials(report.torus, args.box)
            span = [v for v in iproduct(range(-args.box, args.box + 1),
                                        repeat=report.torus_size)
                    if in_row_span(report.center_basis, v)]
            record["box_check"] = span == brute
            ok = ok and record["box_check"]
        records.append(record)
    results = {"algebra": p.name, "strata": records}
    if not ok:
        raise CliFailure("stratum center box check failed", results)
    return results, source


def _cmd_center(args):
    p, source = _load(args)
    w = _hprime_arg(args.hprime)
    report = strat.stratum_report(p, w)
    return {"algebra": p.name, **_stratum_record(report)}, source


def _cmd_witness(args):
    p, source = _load(args)
    small = _hprime_arg(args.from_set)
    large = _hprime_arg(args.to_set)
    witness = strat.normal_separation_witness(p, small, large)
    q = witness.quotient
    results = {"algebra": p.name, "from": list(small.members), "to": list(large.members),
               "generator": witness.generator,
               "mus": {g: str(mu) for g, mu in zip(q.generators, witness.certificate.mus)}}
    return results, source


def _cmd_poset(args):
    p, source = _load(args)
    primes = strat.hspec_quantum_affine(p)
    ranks = {w: strat.stratum_report(p, w).center_rank for w in primes}
    if args.dot:
        return emit_dot(primes, ranks, name=p.name), source
    covers = strat.poset_covers(primes)
    results = {"algebra": p.name,
               "nodes": [{"hprime": list(w.members), "center_rank": ranks[w]}
                         for w in primes],
               "edges": [[list(a.members), list(b.members)] for a, b in covers]}
    return results, source


_HANDLERS = {
    "verify": _cmd_verify,
    "nf": _cmd_nf,
    "hilbert": _cmd_hilbert,
    "qdet": _cmd_qdet,
    "qdet-verify": _cmd_qdet_verify,
    "sl-check": _cmd_sl_check,
    "weights": _cmd_weights,
    "eigencheck": _cmd_eigencheck,
    "normalcheck": _cmd_normalcheck,
    "hspec": _cmd_hspec,
    "strata": _cmd_strata,
    "center": _cmd_center,
    "witness": _cmd_witness,
    "poset": _cmd_poset,
}


def _build_parser() -> argparse.ArgumentParser:
    env_fuel = os.environ.get("STRATA_LAB_FUEL")
    default_fuel = int(env_fuel) if env_fuel else DEFAULT_FUEL

    parser = argparse.ArgumentParser(
        prog="strata-lab",
        description="Exact rewriting, determinant laws, and stratification reports "
                    "for q-commutation algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        cmd = sub.add_parser(name, **kw)
        cmd.add_argument("--fuel", type=int, default=default_fuel,
                         help="rewrite-step budget per engine call")
        cmd.add_argument("--json", action="store_true", default=True,
                         help="JSON output (default)")
        return cmd

    def add_file(name, **kw):
        cmd = add(name, **kw)
        cmd.add_argument("file", help="presentation file, or - for stdin")
        return cmd

    add_file("verify", help="diamond-lemma confluence check")
    cmd = add_file("nf", help="normal form of an expression")
    cmd.add_argument("expr")
    cmd.add_argument("--specialize", help="sym=rat,... exact rational evaluation")
    cmd = add_file("hilbert", help="graded dimensions up to a degree")
    cmd.add_argument("--degree", type=int, default=4)
    for name in ("qdet", "qdet-verify", "sl-check"):
        cmd = add(name, help=f"{name} for n x n quantum matrices")
        cmd.add_argument("--n", type=int, required=True)
        cmd.add_argument("--single-param", action="store_true")
        if name == "qdet":
            cmd.add_argument("--specialize")
    cmd = add_file("weights", help="weights of the terms of an expression")
    cmd.add_argument("expr")
    cmd = add_file("eigencheck", help="homogeneity (eigenvector) check")
    cmd.add_argument("expr")
    cmd = add_file("normalcheck", help="scalar normality certificate")
    cmd.add_argument("expr")
    add_file("hspec", help="torus-stable prime poset of a quantum affine space")
    cmd = add_file("strata", help="all stratum reports")
    cmd.add_argument("--box", type=int, default=0,
                     help="cross-check centers against the engine within this box")
    cmd = add_file("center", help="one stratum report")
    cmd.add_argument("--hprime", default="", help="comma-separated generator indices")
    cmd = add_file("witness", help="normal separation witness")
    cmd.add_argument("--from", dest="from_set", default="", required=False)
    cmd.add_argument("--to", dest="to_set", required=True)
    cmd = add_file("poset", help="stable-prime poset (JSON or DOT)")
    cmd.add_argument("--dot", action="store_true")
    return parser


def _envelope(command: str, source: str, status: str, results) -> str:
    report = {
        "command": command,
        "version": VERSION,
        "inputs_digest": _digest(source),
        "status": status,
        "results": results,
        "citations": CITATIONS.get(command, []),
    }
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def run(argv) -> int:
    """Dispatch one subcommand; returns the process exit code."""
    try:
        parser = _build_parser()
    except ValueError as exc:
        sys.stderr.write(f"strata-lab: bad STRATA_LAB_FUEL value: {exc}\n")
        return 2
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    handler = _HANDLERS[args.command]
    try:
        results, source = handler(args)
    except CliFailure as exc:
        sys.stdout.write(_envelope(args.command, "", "fail",
                                   {**exc.results, "message": str(exc)}))
        return 1
    except FuelExhausted as exc:
        sys.stdout.write(_envelope(args.command, "", "fail", {"message": str(exc)}))
        return 1
    except (dsl.DslError, zoo.ZooError, strat.StratError, SpecializationError,
            PresentationError, NegativeExponent, FileNotFoundError) as exc:
        if isinstance(exc, strat.GenericityUnverified):
            sys.stdout.write(_envelope(args.command, "", "fail", {"message": str(exc)}))
            return 1
        sys.stdout.write(_envelope(args.command, "", "error", {"message": str(exc)}))
        return 2
    except (EngineError, CoeffError) as exc:
        sys.stdout.write(_envelope(args.command, "", "fail", {"message": str(exc)}))
        return 1
    if args.command == "poset" and args.dot:
        sys.stdout.write(results)
        return 0
    sys.stdout.write(_envelope(args.command, source, "ok", results))
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
