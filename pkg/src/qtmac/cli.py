"""Batch front end.

Compute subcommands emit a single JSON document on stdout; verify
subcommands run the identity suites at chosen bounds.  Exit codes: 0 on
success, 1 on usage errors, 2 on verification failure.  An optional cache
directory stores result documents under deterministic keys with
write-temp-then-rename publication.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    GENERIC,
    AlgebraError,
    ScalarContext,
    SpecializationError,
    specialized,
    subst_t_power,
)
from . import comb, ctnorm, emac, istar, pieri, verify


class UsageError(Exception):
    pass


SCHEMA_VERSION = "1"


@dataclass
class ResultDocument:
    """One computed result, JSON-serializable with a fixed field order."""

    kind: str
    n: int
    inputs: dict
    params: str
    payload: object
    schema: str = SCHEMA_VERSION

    def to_dict(self) -> dict:
        doc = {"schema": self.schema, "kind": self.kind, "n": self.n}
        for key in ("eta", "nu", "lam", "r", "k"):
            if key in self.inputs:
                doc[key] = self.inputs[key]
        doc["params"] = self.params
        doc["payload"] = self.payload
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(", ", ": "))

    @classmethod
    def from_dict(cls, doc: dict) -> "ResultDocument":
        inputs = {k: doc[k] for k in ("eta", "nu", "lam", "r", "k") if k in doc}
        return cls(kind=doc["kind"], n=doc["n"], inputs=inputs,
                   params=doc["params"], payload=doc["payload"],
                   schema=doc["schema"])


# ---------------------------------------------------------------------------
# cache
# ---------------------------------------------------------------------------

def cache_key(kind: str, n: int, inputs: dict, params: str) -> str:
    parts = [kind, f"n{n}"]
    for key in ("eta", "nu", "lam", "r", "k"):
        if key in inputs:
            parts.append(f"{key}_{inputs[key]}")
    parts.append(params)
    return "__".join(parts).replace(",", "-").replace("/", "_").replace("=", "-") \
        + ".json"


def cache_store(doc: ResultDocument, cache_dir: str) -> str:
    """Atomic publish: write a temp file in the target dir, then rename."""
    os.makedirs(cache_dir, exist_ok=True)
    path = os.path.join(cache_dir,
                        cache_key(doc.kind, doc.n, doc.inputs, doc.params))
    fd, tmp = tempfile.mkstemp(dir=cache_dir, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(doc.to_json())
        os.replace(tmp, path)
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)
    return path


def cache_load(kind: str, n: int, inputs: dict, params: str,
               cache_dir: str) -> ResultDocument | None:
    """Load a cached document; corrupt or mismatched entries are ignored."""
    path = os.path.join(cache_dir, cache_key(kind, n, inputs, params))
    try:
        with open(path) as fh:
            doc = json.load(fh)
        loaded = ResultDocument.from_dict(doc)
        if (loaded.schema, loaded.kind, loaded.n, loaded.params) != \
                (SCHEMA_VERSION, kind, n, params) or loaded.inputs != inputs:
            return None
        return loaded
    except (OSError, ValueError, KeyError, TypeError):
        return None


def cache_roundtrip(doc: ResultDocument, cache_dir: str) -> ResultDocument:
    cache_store(doc, cache_dir)
    loaded = cache_load(doc.kind, doc.n, doc.inputs, doc.params, cache_dir)
    if loaded is None:
        raise AlgebraError("cache round-trip failed")
    return loaded


# ---------------------------------------------------------------------------
# payload construction
# ---------------------------------------------------------------------------

def _coeff_obj(c, ctx: ScalarContext) -> dict:
    num, den = ctx.num_den_text(ctx.coerce(c))
    return {"num": num, "den": den}


def _table_payload(table: dict, ctx: ScalarContext) -> dict:
    entries = [[comb.comp_str(lam), _coeff_obj(c, ctx)]
               for lam, c in sorted(table.items())]
    return {"entries": entries}


def _parse_params(spec: str) -> ScalarContext:
    try:
        fields = dict(part.split("=", 1) for part in spec.split(","))
        qv = Fraction(fields["q"])
        tv = Fraction(fields["t"])
    except (ValueError, KeyError, ZeroDivisionError) as exc:
        raise UsageError(
            f"cannot parse --params {spec!r}; expected q=NUM/DEN,t=NUM/DEN") from exc
    try:
        return specialized(qv, tv)
    except AlgebraError as exc:
        raise UsageError(str(exc)) from exc


def _context(args) -> ScalarContext:
    if getattr(args, "params", None):
        return _parse_params(args.params)
    return GENERIC


def _need(args, name: str):
    value = getattr(args, name, None)
    if value is None:
        raise UsageError(f"--{name} is required for this subcommand")
    return value


def compute_document(args) -> ResultDocument:
    ctx = _context(args)
    kind = args.kind
    eta = comb.parse_comp(_need(args, "eta"))
    n = len(eta)
    inputs: dict = {"eta": comb.comp_str(eta)}
    params = ctx.params_label()

    if kind == "e":
        payload = emac.generate_E(eta, ctx).poly.text(ctx)
    elif kind == "estar":
        payload = istar.generate_Estar(eta, ctx).poly.text(ctx)
    elif kind == "norm":
        payload = _coeff_obj(emac.norm_N(eta, ctx), ctx)
    elif kind == "pieri":
        r = _need(args, "r")
        if not 1 <= r <= n:
            raise UsageError(f"--r must lie in 1..{n}")
        inputs["r"] = r
        payload = _table_payload(
            pieri.pieri_homogeneous(eta, r, ctx, workers=args.workers), ctx)
    elif kind == "binom":
        nu = comb.parse_comp(_need(args, "nu"))
        if len(nu) != n:
            raise UsageError("--eta and --nu must have the same length")
        inputs["nu"] = comb.comp_str(nu)
        payload = _coeff_obj(istar.binomial_direct(eta, nu, ctx), ctx)
    elif kind == "psi":
        lam = comb.parse_comp(_need(args, "lam"))
        inputs["lam"] = comb.comp_str(lam)
        n = max(n, len(lam))
        try:
            payload = _coeff_obj(emac.psi_coefficient(eta, lam, n, ctx), ctx)
        except AlgebraError as exc:
            raise UsageError(str(exc)) from exc
    elif kind == "innerprod":
        nu = comb.parse_comp(_need(args, "nu"))
        if len(nu) != n:
            raise UsageError("--eta and --nu must have the same length")
        k = _need(args, "k")
        if k < 0:
            raise UsageError("--k must be a nonnegative integer")
        if not ctx.generic:
            raise UsageError("innerprod runs symbolically; drop --params")
        inputs["nu"] = comb.comp_str(nu)
        inputs["k"] = k
        w = ctnorm.specialized_weight(n, k, ctx)
        value = ctnorm.ct_inner_product(
            ctnorm.specialize_E(eta, k, ctx), ctnorm.specialize_E(nu, k, ctx),
            w, ctx)
        payload = _coeff_obj(value, ctx)
    else:
        raise UsageError(f"unknown compute kind {kind!r}")
    return ResultDocument(kind=kind, n=n, inputs=inputs, params=params,
                          payload=payload)


def cmd_compute(args) -> int:
    doc = None
    if args.cache_dir:
        ctx = _context(args)
        eta = comb.parse_comp(_need(args, "eta"))
        inputs = {"eta": comb.comp_str(eta)}
        for name in ("nu", "lam"):
            if getattr(args, name, None):
                inputs[name] = comb.comp_str(comb.parse_comp(getattr(args, name)))
        for name in ("r", "k"):
            if getattr(args, name, None) is not None:
                inputs[name] = getattr(args, name)
        doc = cache_load(args.kind, len(eta), inputs, ctx.params_label(),
                         args.cache_dir)
    if doc is None:
        doc = compute_document(args)
        if args.cache_dir:
            cache_store(doc, args.cache_dir)
    if args.format == "json":
        sys.stdout.write(doc.to_json() + "\n")
    else:
        sys.stdout.write(format_text(doc) + "\n")
    return 0


def format_text(doc: ResultDocument) -> str:
    lines = [f"{doc.kind} n={doc.n} params={doc.params}"]
    for key in ("eta", "nu", "lam", "r", "k"):
        if key in doc.inputs:
            lines.append(f"  {key} = {doc.inputs[key]}")
    payload = doc.payload
    if isinstance(payload, str):
        lines.append(f"  value = {payload}")
    elif isinstance(payload, dict) and "entries" in payload:
        for lam, coeff in payload["entries"]:
            num, den = coeff["num"], coeff["den"]
            val = num if den == "1" else f"({num}) / ({den})"
            lines.append(f"  {lam}: {val}")
    elif isinstance(payload, dict):
        num, den = payload["num"], payload["den"]
        lines.append(f"  value = {num}" if den == "1"
                     else f"  value = ({num}) / ({den})")
    return "\n".join(lines)


def cmd_verify(args) -> int:
    ctx = _context(args)
    ks = (args.k,) if args.k is not None else (1, 2)
    try:
        reports = verify.run_suite(args.suite, args.max_n, args.max_mod,
                                   ctx=ctx, workers=args.workers, ks=ks)
    except KeyError as exc:
        raise UsageError(f"unknown suite {args.suite!r}") from exc
    failed = False
    for report in reports:
        status = "pass" if report.ok else "FAIL"
        sys.stdout.write(
            f"[{status}] {report.suite}: {report.checked} checks"
            + ("" if report.ok else f", {len(report.failures)} failures") + "\n")
        for msg in report.failures[:5]:
            sys.stdout.write(f"    counterexample: {msg}\n")
        failed = failed or not report.ok
    return 2 if failed else 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> _Parser:
    parser = _Parser(prog="qtmac", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_compute(name, help_text, with_r=False, with_nu=False,
                    with_lam=False, with_k=False):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--eta", required=True, help="composition, e.g. 0,1,2")
        if with_nu:
            p.add_argument("--nu", help="second composition")
        if with_lam:
            p.add_argument("--lam", help="target partition")
        if with_r:
            p.add_argument("--r", type=int, help="elementary symmetric degree")
        if with_k:
            p.add_argument("--k", type=int, help="specialization t = q^k")
        p.add_argument("--params", help="q=NUM/DEN,t=NUM/DEN rational point")
        p.add_argument("--symbolic", action="store_true",
                       help="force symbolic coefficients (default)")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--cache-dir", dest="cache_dir")
        p.add_argument("--workers", type=int, default=1)
        p.set_defaults(func=cmd_compute, kind=name)
        return p

    add_compute("e", "nonsymmetric Macdonald polynomial")
    add_compute("estar", "interpolation Macdonald polynomial")
    add_compute("pieri", "branching coefficient table", with_r=True)
    add_compute("binom", "generalized binomial coefficient", with_nu=True)
    add_compute("norm", "norm of E relative to <1,1>")
    add_compute("psi", "vertical-strip branching coefficient", with_lam=True)
    add_compute("innerprod", "constant-term inner product at t=q^k",
                with_nu=True, with_k=True)

    v = sub.add_parser("verify", help="run identity suites")
    v.add_argument("--suite", required=True,
                   choices=sorted(verify.SUITES) + ["all"])
    v.add_argument("--max-n", dest="max_n", type=int, default=3)
    v.add_argument("--max-mod", dest="max_mod", type=int, default=2)
    v.add_argument("--k", type=int, help="restrict the norms suite to one k")
    v.add_argument("--params", help="q=NUM/DEN,t=NUM/DEN rational point")
    v.add_argument("--workers", type=int, default=1)
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "params", None) and getattr(args, "symbolic", False):
            raise UsageError("--params and --symbolic are mutually exclusive")
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except (SpecializationError, ZeroDivisionError) as exc:
        sys.stderr.write(f"error: specialization failed: {exc}\n")
        return 1
    except AlgebraError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
