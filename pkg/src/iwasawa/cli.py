"""Command-line front end.

    iwasawa invariants FILE [--json]
    iwasawa verify --suite NAME --seed N --count N [--json]
    iwasawa examples --name {remark2,conductor11,theorem-k} [--document] [--json]
    iwasawa gen --kind {lambda,eigen} --seed N

Exit codes: 0 success, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from typing import Any

from . import corpus
from .arithmetic import (
    IsogenyData,
    conductor11_data,
    isogeny_mu_delta,
    lambda_growth,
    tate_global_exponent,
    tate_local_exponent,
    theorem_k_hmrank,
)
from .documents import DocumentError, ModuleDocument, parse_document, serialize_document
from .errors import IwasawaError, NotTorsionError, UnsupportedPresentationError
from .group_euler import EigenModule, GDescriptor, g_homology, gamma_rank, hmrank
from .lambda_modules import (
    LambdaModule,
    char_invariants,
    euler_char_order_exponent,
    euler_rank,
    has_short_resolution,
    homology,
    lambda_rank,
    make_module,
    p_torsion_rank,
)
from .omega_modules import (
    ElementaryModule,
    OmegaModule,
    elementary_invariants,
    omega_euler_rank,
    omega_rank,
)
from .padic_core import PrimeContext, T
from .verify import reports_json, run_verify, suite_names

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

REMEDIATION = "hint: drop dependent relation columns (or supply a square presentation) and retry"


def _exp(x):
    return "infinite" if x == math.inf else x


def _lambda_report(M: LambdaModule) -> dict:
    out: dict[str, Any] = {"kind": "lambda", "p": M.ctx.p, "rank": lambda_rank(M)}
    if not has_short_resolution(M):
        out["note"] = "presentation not injective; homology unavailable. " + REMEDIATION
        return out
    h = homology(M)
    out.update(
        euler_rank=euler_rank(M),
        H0=str(h.h0),
        H1=str(h.h1),
        chi_exponent=_exp(euler_char_order_exponent(M)),
        p_torsion_rank=p_torsion_rank(M),
    )
    if M.generators == M.n_relations:
        try:
            w = char_invariants(M)
            out.update(mu=w.mu, **{"lambda": w.lambda_})
        except NotTorsionError:
            out["mu"] = "undefined (not torsion)"
    return out


def run_invariants(doc: ModuleDocument) -> dict:
    """Invariant report for a parsed document, as an ordered dict."""
    v = doc.value
    if isinstance(v, LambdaModule):
        return _lambda_report(v)
    if isinstance(v, OmegaModule):
        out = {"kind": "omega", "p": v.ctx.p, "omega_rank": omega_rank(v)}
        try:
            out["omega_euler_rank"] = omega_euler_rank(v)
        except UnsupportedPresentationError:
            out["note"] = "presentation not injective mod p; Euler characteristic unavailable"
        return out
    if isinstance(v, EigenModule):
        h = g_homology(v)
        return {
            "kind": "eigen",
            "p": v.g.ctx.p,
            "action_exponent": v.g.action_exponent,
            "H0(G)": str(h.h0),
            "H1(G)": str(h.h1),
            "hmrank": hmrank(v),
            "gamma_rank": gamma_rank(v),
        }
    if isinstance(v, ElementaryModule):
        inv = elementary_invariants(v)
        return {
            "kind": "elementary",
            "p": v.ctx.p,
            "rank": inv.rank,
            "mu": inv.mu,
            "lambda": inv.lambda_,
            "H0": str(inv.homology.h0),
            "H1": str(inv.homology.h1),
        }
    if isinstance(v, IsogenyData):
        out = {
            "kind": "isogeny",
            "p": v.ctx.p,
            "global_degree": v.global_degree,
            "tate_global_exponent": tate_global_exponent(v),
            "tate_local_exponents": [tate_local_exponent(pd) for pd in v.p_places],
            "mu_delta": isogeny_mu_delta(v),
        }
        if v.assumptions:
            out["assumptions"] = dict(v.assumptions)
        return out
    raise TypeError(f"no report for {type(v).__name__}")


def format_report(report: dict) -> str:
    width = max(len(k) for k in report)
    return "\n".join(f"{k:<{width}}  {v}" for k, v in report.items())


def remark2_module() -> EigenModule:
    """Z_p(omega) over Gamma x| Delta with Delta acting on Gamma through omega, p = 5."""
    ctx = PrimeContext(5)
    return EigenModule(GDescriptor(ctx, 1), {1: make_module(ctx, 1, [[T]])})


def theorem_k_report() -> dict:
    # X_0(11), p = 5: cyclotomic Selmer dual has Z_5-rank 0 and r = 4 primes over 11
    return {
        "kind": "theorem-k",
        "rank_cyc": 0,
        "r": 4,
        "hmrank": theorem_k_hmrank(0, 4),
        "lambda_growth(ext_degree=5, lambda_cyc=0, r=4, r_L=4)": lambda_growth(5, 0, 4, 4),
    }


EXAMPLES = {
    "remark2": lambda: remark2_module(),
    "conductor11": lambda: conductor11_data(4),
    "theorem-k": None,
}


def _emit(report: dict, as_json: bool) -> None:
    print(json.dumps(report, indent=2) if as_json else format_report(report))


def _cmd_invariants(args) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        doc = parse_document(text)
        report = run_invariants(doc)
    except UnsupportedPresentationError as exc:
        print(f"error: {exc}\n{REMEDIATION}", file=sys.stderr)
        return EXIT_INPUT
    except (DocumentError, IwasawaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _emit(report, args.json)
    return EXIT_OK


def _cmd_verify(args) -> int:
    try:
        reports = run_verify(args.suite, args.seed, args.count)
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_INPUT
    if args.json:
        print(reports_json(reports))
    else:
        for r in reports:
            print(r.line())
            if not r.passed:
                print("  counterexample: " + json.dumps(r.counterexample, separators=(",", ":")))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _cmd_examples(args) -> int:
    if args.name == "theorem-k":
        if args.document:
            print("error: theorem-k has no module document", file=sys.stderr)
            return EXIT_INPUT
        _emit(theorem_k_report(), args.json)
        return EXIT_OK
    value = EXAMPLES[args.name]()
    if args.document:
        print(serialize_document(value))
    else:
        _emit(run_invariants(ModuleDocument("", value)), args.json)
    return EXIT_OK


def _cmd_gen(args) -> int:
    rng = random.Random(f"gen:{args.kind}:{args.seed}")
    p = args.p or rng.choice([3, 5, 7])
    try:
        PrimeContext(p)
    except IwasawaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.kind == "lambda":
        value = corpus.random_presentation(rng, p)
    else:
        value = corpus.random_eigen(rng, p)
    print(serialize_document(value))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="iwasawa", description="Exact invariants of finitely presented Iwasawa modules.")
    sub = ap.add_subparsers(dest="command", required=True)

    inv = sub.add_parser("invariants", help="report the invariants of a module document")
    inv.add_argument("file")
    inv.add_argument("--json", action="store_true", help="structured output")
    inv.set_defaults(func=_cmd_invariants)

    ver = sub.add_parser("verify", help="run randomised identity checks")
    ver.add_argument("--suite", required=True, help="all, " + ", ".join(suite_names()))
    ver.add_argument("--seed", type=int, default=1)
    ver.add_argument("--count", type=int, default=500)
    ver.add_argument("--json", action="store_true")
    ver.set_defaults(func=_cmd_verify)

    ex = sub.add_parser("examples", help="worked examples")
    ex.add_argument("--name", required=True, choices=sorted(EXAMPLES))
    ex.add_argument("--document", action="store_true", help="print the example's input document instead")
    ex.add_argument("--json", action="store_true")
    ex.set_defaults(func=_cmd_examples)

    gen = sub.add_parser("gen", help="emit a random module document")
    gen.add_argument("--kind", required=True, choices=["lambda", "eigen"])
    gen.add_argument("--seed", type=int, default=1)
    gen.add_argument("--p", type=int, default=None)
    gen.set_defaults(func=_cmd_gen)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
