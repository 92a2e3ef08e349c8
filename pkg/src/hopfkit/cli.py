"""Command-line front end.

Exit codes: 0 when every requested check passes, 1 on a validation failure,
2 on bad input or usage, 3 when a search exceeds its parameter bound.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import hzf
from .catalog import (
    FIXTURE_NAMES,
    FixtureValidationError,
    UnknownFixtureError,
    build_fixture,
    kx_braiding,
    kz_braiding,
    p_alpha,
    verify_fixture,
)
from .exactmath import FunctionField, PrimeField, ScalarParseError, label
from .hopfcore import WindowError, check_hopf, describe_table
from .pairings import AlgebraMismatchError, BilinearForm, check_braiding, check_skew_pairing, counit_form
from .products import PreconditionError, ProductAlgebra, check_extending_structure, product_checks
from .report import AxiomResult, VerificationReport
from .search import BoundExceeded

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BOUND = 0, 1, 2, 3


class InputError(Exception):
    pass


class Output:
    """Collects reports and writes them in the requested format."""

    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout
        self.ok = True

    def report(self, rep: VerificationReport) -> None:
        self.ok = self.ok and rep.ok
        text = rep.text() if self.fmt == "text" else rep.jsonl()
        if text:
            self.stream.write(text + "\n")

    def note(self, line: str) -> None:
        if self.fmt == "text":
            self.stream.write(line + "\n")

    def record(self, obj: dict) -> None:
        if self.fmt == "jsonl":
            self.stream.write(json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n")


# ---------------------------------------------------------------------------
# loading helpers


def _read(path: str) -> dict:
    try:
        return hzf.read(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _algebra(path: str, field=None):
    return hzf.load_any(_read(path), field)


def _params(pairs) -> dict:
    out = {}
    for item in pairs or ():
        if "=" not in item:
            raise InputError(f"--param expects name=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


NAMED_FORMS = {
    "p_alpha": ("alpha", lambda A, a: p_alpha(A, a, name="p_alpha")),
    "p_q": ("q", kz_braiding),
    "tau_alpha": ("alpha", kx_braiding),
    "eps": (None, lambda A, _: counit_form(A, A, "eps(x)eps")),
}


def _braiding_on(path: str, spec: str, params: dict):
    """(algebra, form) for a named braiding or a form file on one algebra."""
    obj = _read(path)
    if spec in NAMED_FORMS:
        param, make = NAMED_FORMS[spec]
        A = hzf.load_any(obj)
        if param is None:
            return A, make(A, None)
        if param in params:
            return A, make(A, A.field.parse(params[param]))
        if A.field.characteristic != 0:
            raise InputError(f"{spec} over {A.field.tag} needs --param {param}=<value>")
        if param not in getattr(A.field, "params", ()):
            names = set(getattr(A.field, "params", ())) | {param}
            A = hzf.load_any(obj, FunctionField(names))
        return A, make(A, param)
    A = hzf.load_any(obj)
    if not os.path.exists(spec):
        raise InputError(f"{spec!r} is neither a named form ({', '.join(NAMED_FORMS)}) nor a file")
    block = _read(spec)
    return A, hzf.load_form(block, {block.get("left", "A"): A, block.get("right", "A"): A})


# ---------------------------------------------------------------------------
# subcommands


def cmd_check(args, out: Output) -> int:
    w, full = args.window, args.full
    if args.what == "hopf":
        X = _algebra(args.file)
        out.report(product_checks(X, w, full=full) if isinstance(X, ProductAlgebra) else check_hopf(X, w, full=full))
    elif args.what == "braiding":
        if not args.algebra or not args.form:
            raise InputError("check braiding needs --algebra and --form")
        A, p = _braiding_on(args.algebra, args.form, _params(args.param))
        out.report(check_braiding(p, w, full=full))
    elif args.what == "pairing":
        if not (args.left and args.right and args.form):
            raise InputError("check pairing needs --left, --right and --form")
        L, R = _algebra(args.left), _algebra(args.right)
        block = _read(args.form)
        lam = hzf.load_form(block, {block.get("left", "H"): L, block.get("right", "A"): R})
        out.report(check_skew_pairing(lam, w, full=full))
    elif args.what == "datum":
        datum = hzf.load_datum(_read(args.file), _named_algebras(args.algebra_ref))
        out.report(check_extending_structure(datum, w, full=full))
    elif args.what == "quadruple":
        from .coquasi import check_quadruple

        P = _product(args.product)
        q = hzf.load_quadruple(_read(args.quad), P)
        out.report(check_quadruple(q, P, w, full=full))
    return EXIT_OK if out.ok else EXIT_FAIL


def _named_algebras(refs) -> dict:
    algs = {}
    for item in refs or ():
        if "=" not in item:
            raise InputError(f"--with expects NAME=PATH, got {item!r}")
        k, path = item.split("=", 1)
        algs[k] = _algebra(path)
    return algs


def _product(path: str) -> ProductAlgebra:
    P = _algebra(path)
    if not isinstance(P, ProductAlgebra):
        raise InputError(f"{path} has no product section")
    return P


def cmd_build(args, out: Output) -> int:
    P = hzf.build_from_datum(_read(args.file), _named_algebras(args.algebra_ref),
                             check=not args.no_check, window=args.window)
    text = hzf.dumps(hzf.dump_product(P))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        out.note(f"wrote {P.name} to {args.out}")
    else:
        sys.stdout.write(text)
    if args.verify:
        out.report(product_checks(P, args.window))
    return EXIT_OK if out.ok else EXIT_FAIL


def cmd_verify(args, out: Output) -> int:
    if args.what == "fixture":
        if not args.name:
            raise InputError("verify fixture needs a fixture name")
        out.report(verify_fixture(args.name, window=args.window))
        return EXIT_OK if out.ok else EXIT_FAIL
    from .coquasi import assemble_sigma, check_quadruple, decompose_sigma, forms_agree, quadruples_agree

    if not args.product:
        raise InputError("verify sigma needs --product")
    P = _product(args.product)
    w = args.window
    quad = hzf.load_quadruple(_read(args.quad), P) if args.quad else None
    sigma = None
    if args.sigma:
        block = _read(args.sigma)
        sigma = hzf.load_form(block, {block.get("left", "P"): P, block.get("right", "P"): P})
    if quad is None and sigma is None:
        raise InputError("verify sigma needs --quad or --sigma")
    rep = VerificationReport(f"sigma on {P.name} ({args.direction})", P.window_label(w), field=P.field)
    if args.direction in ("assemble", "roundtrip"):
        if quad is None:
            raise InputError(f"direction {args.direction} needs --quad")
        rep.extend(check_quadruple(quad, P, w), prefix="quadruple:")
        s = assemble_sigma(quad, P, force=True, window=w)
        rep.extend(check_braiding(s, w), prefix="sigma:")
        if args.direction == "roundtrip":
            rep.extend(quadruples_agree(decompose_sigma(s, P), quad, w), prefix="decompose_after_assemble:")
            if sigma is not None:
                rep.add(forms_agree(s, sigma, w, axiom="matches_given_sigma"))
        sigma = sigma if sigma is not None else s
    if args.direction in ("decompose", "roundtrip"):
        if sigma is None:
            raise InputError("direction decompose needs --sigma or --quad")
        if args.direction == "decompose":
            rep.extend(check_braiding(sigma, w), prefix="sigma:")
        q = decompose_sigma(sigma, P)
        rep.extend(check_quadruple(q, P, w), prefix="restricted:")
        rep.add(forms_agree(assemble_sigma(q, P, force=True, window=w), sigma, w, axiom="assemble_after_decompose"))
    out.report(rep)
    return EXIT_OK if out.ok else EXIT_FAIL


def _comodule(A, spec: str):
    from .ybe import direct_sum, regular_comodule, trivial_comodule

    parts = []
    for piece in spec.split("+"):
        name, _, arg = piece.partition(":")
        if name == "regular":
            parts.append(regular_comodule(A))
        elif name == "trivial":
            parts.append(trivial_comodule(A, int(arg or 1)))
        else:
            raise InputError(f"unknown comodule {piece!r}; use regular, trivial[:d] or sums with +")
    M = parts[0]
    for N in parts[1:]:
        M = direct_sum(M, N)
    return M


def cmd_ybe(args, out: Output) -> int:
    from .ybe import check_comodule, check_ybe, r_matrix

    A, p = _braiding_on(args.algebra, args.braiding, _params(args.param))
    M = _comodule(A, args.comodule)
    out.report(check_comodule(M))
    out.report(check_braiding(p, args.window))
    R = r_matrix(p, M)
    text = R.to_text(M.dim)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        out.note(f"wrote {R.n}x{R.n} R-matrix to {args.out}")
    elif args.format == "text":
        sys.stdout.write(text)
    out.record({"matrix": R.n, "nonzero": len(R.entries), "d": M.dim})
    out.report(check_ybe(R, M.dim))
    return EXIT_OK if out.ok else EXIT_FAIL


def cmd_enumerate(args, out: Output) -> int:
    from .search import cross_validate_bijection, decompose_all, enumerate_braidings, enumerate_quadruples

    F = PrimeField(args.prime)
    X = _algebra(args.algebra, F)
    kw = {"max_free": args.max_free, "strategy": args.strategy}
    what = args.what or ("bijection" if isinstance(X, ProductAlgebra) else "braidings")
    if what != "braidings" and not isinstance(X, ProductAlgebra):
        raise InputError(f"--what {what} needs a product file")
    lines = []
    if what == "braidings":
        found = enumerate_braidings(X, args.prime, **kw)
        for k, f in enumerate(found):
            lines.append({"index": k, "form": hzf.dump_form(f, "A", "A")})
        rep = VerificationReport(f"braidings on {X.name} over F_{args.prime}", "complete", field=F)
        bad = [k for k, f in enumerate(found) if not check_braiding(f).ok]
        rep.add(AxiomResult("results_are_braidings", passed=not bad, checked=len(found),
                            witness=(bad[0],) if bad else None, note=f"{len(found)} found"))
    elif what == "quadruples":
        found = enumerate_quadruples(X, args.prime, **kw)
        for k, q in enumerate(found):
            lines.append({"index": k, "quadruple": hzf.dump_quadruple(q)})
        rep = VerificationReport(f"quadruples over {X.name} over F_{args.prime}", "complete", field=F)
        rep.add(AxiomResult("enumerated", passed=True, checked=len(found), note=f"{len(found)} found"))
    elif what == "decompose":
        rep = decompose_all(X, args.prime, full=True, **kw)
    else:
        rep = cross_validate_bijection(X, args.prime, **kw)
    if lines:
        body = "".join(json.dumps(r, sort_keys=True, separators=(",", ":")) + "\n" for r in lines)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(body)
            out.note(f"wrote {len(lines)} results to {args.out}")
        elif args.format == "text":
            sys.stdout.write(body)
    out.report(rep)
    return EXIT_OK if out.ok else EXIT_FAIL


def _form_table(f: BilinearForm, window) -> list[str]:
    entries = f.entries(window if not (f.left.is_finite and f.right.is_finite) else None)
    rows = [f"form {f.name} on ({f.left.name}, {f.right.name}), window {f.window_label(window)}, "
            f"{len(entries)} nonzero entries"]
    for (x, y), v in entries.items():
        rows.append(f"  {label(x)} , {label(y)} : {f.field.format(v)}")
    return rows


def cmd_demo(args, out: Output) -> int:
    fx = build_fixture(args.name, window=args.window)
    lines = [f"fixture {fx.name} over {fx.field.tag}"]
    lines += [f"note: {n}" for n in fx.notes]
    for k, X in list(fx.algebras.items()) + list(fx.products.items()):
        if X.is_finite and X.dim() <= 16:
            lines.append(f"[{k}]")
            lines.append(describe_table(X))
        else:
            lines.append(f"[{k}] {X!r}")
    if args.format == "text":
        for k, f in fx.forms.items():
            if f.left.is_finite and f.right.is_finite and f.left.dim() * f.right.dim() > 1024 and not args.all:
                lines.append(f"form {k}: {f.left.dim()}x{f.right.dim()} (use --all to print)")
                continue
            lines += _form_table(f, args.window if args.window is not None else 2)
        sys.stdout.write("\n".join(lines) + "\n")
    out.report(verify_fixture(fx))
    return EXIT_OK if out.ok else EXIT_FAIL


def cmd_export(args, out: Output) -> int:
    fx = build_fixture(args.name, window=args.window)
    os.makedirs(args.out, exist_ok=True)
    named = {}
    written = []

    def emit(fname, obj):
        path = os.path.join(args.out, fname)
        hzf.write(path, obj)
        written.append(path)

    for k, X in fx.algebras.items():
        named[id(X)] = k
        emit(f"{k}.hzf", hzf.dump_algebra(X))
    for k, P in fx.products.items():
        named[id(P)] = k
        emit(f"{k}.hzf", hzf.dump_product(P))
    for k, f in fx.forms.items():
        try:
            left = named.get(id(f.left), f.left.name)
            right = named.get(id(f.right), f.right.name)
            emit(f"{k}.form.json", hzf.dump_form(f, left, right))
        except hzf.HZFError as exc:
            sys.stderr.write(f"skipped form {k}: {exc}\n")
    for k, q in fx.quadruples.items():
        emit(f"{k}.quad.json", hzf.dump_quadruple(q))
    for path in written:
        out.note(f"wrote {path}")
        out.record({"wrote": path})
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hopfkit", description="Exact checks for unified products and braidings.")
    ap.add_argument("--window", type=int, default=None, help="window for rule-backed algebras")
    ap.add_argument("--format", choices=("text", "jsonl"), default="text")
    ap.add_argument("--full", action="store_true", help="collect every failure, not just the first")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="check axioms of an algebra, form, datum or quadruple")
    c.add_argument("what", choices=("hopf", "braiding", "pairing", "datum", "quadruple"))
    c.add_argument("file", nargs="?")
    c.add_argument("--algebra")
    c.add_argument("--form")
    c.add_argument("--left")
    c.add_argument("--right")
    c.add_argument("--product")
    c.add_argument("--quad")
    c.add_argument("--param", action="append", help="name=value for named forms")
    c.add_argument("--with", dest="algebra_ref", action="append", help="NAME=PATH algebra for datum files")
    c.set_defaults(run=cmd_check)

    b = sub.add_parser("build", help="build a product from an extending-datum file")
    b.add_argument("file")
    b.add_argument("--with", dest="algebra_ref", action="append", help="NAME=PATH algebra referenced by the datum")
    b.add_argument("--out")
    b.add_argument("--no-check", action="store_true")
    b.add_argument("--verify", action="store_true", help="re-check the Hopf axioms of the result")
    b.set_defaults(run=cmd_build)

    v = sub.add_parser("verify", help="verify sigma/quadruple correspondence or a fixture")
    v.add_argument("what", choices=("sigma", "fixture"))
    v.add_argument("name", nargs="?")
    v.add_argument("--product")
    v.add_argument("--quad")
    v.add_argument("--sigma")
    v.add_argument("--direction", choices=("assemble", "decompose", "roundtrip"), default="roundtrip")
    v.set_defaults(run=cmd_verify)

    y = sub.add_parser("ybe", help="R-matrix of a braiding and the Yang-Baxter check")
    y.add_argument("--braiding", required=True, help=f"form file or one of {', '.join(NAMED_FORMS)}")
    y.add_argument("--algebra", required=True)
    y.add_argument("--comodule", default="regular")
    y.add_argument("--param", action="append")
    y.add_argument("--out")
    y.set_defaults(run=cmd_ybe)

    e = sub.add_parser("enumerate", help="exhaustive search over a prime field")
    e.add_argument("--algebra", required=True)
    e.add_argument("--prime", type=int, required=True)
    e.add_argument("--max-free", type=int, default=12)
    e.add_argument("--strategy", choices=("coset", "propagate"), default="coset")
    e.add_argument("--what", choices=("braidings", "quadruples", "bijection", "decompose"))
    e.add_argument("--out")
    e.set_defaults(run=cmd_enumerate)

    d = sub.add_parser("demo", help="print a fixture and its verification")
    d.add_argument("name", help=", ".join(FIXTURE_NAMES))
    d.add_argument("--all", action="store_true")
    d.set_defaults(run=cmd_demo)

    x = sub.add_parser("export", help="write a fixture's objects as HZF files")
    x.add_argument("name")
    x.add_argument("--out", required=True)
    x.set_defaults(run=cmd_export)
    return ap


def run(argv=None, stream=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    out = Output(args.format, stream)
    try:
        return args.run(args, out)
    except BoundExceeded as exc:
        sys.stderr.write(f"hopfkit: {exc}\n")
        return EXIT_BOUND
    except PreconditionError as exc:
        sys.stderr.write(f"hopfkit: {exc}\n")
        if exc.report is not None:
            out.report(exc.report)
        return EXIT_FAIL
    except FixtureValidationError as exc:
        sys.stderr.write(f"hopfkit: {exc}\n")
        return EXIT_FAIL
    except (InputError, hzf.HZFError, UnknownFixtureError, ScalarParseError, WindowError,
            AlgebraMismatchError, ValueError, KeyError) as exc:
        sys.stderr.write(f"hopfkit: {exc}\n")
        return EXIT_INPUT


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    raise SystemExit(main())
