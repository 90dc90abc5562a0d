"""Command-line front end.

Forms travel as single JSON documents on standard input and output, so
commands compose with pipes::

    hjflab form build phi41 | hjflab op chi --alpha 0 --beta 0

Exit status: 0 success, 1 verification failure, 2 usage or format error,
3 unsupported range.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

from .config import FORMATS, Config, load_config, parse_precision
from .errors import (DecompositionError, FormatError, HJFError, InsufficientPrecision, SupportError,
                     UnsupportedRange)
from .hermitian import (NAMED_FORMS, HermitianExpansion, build_index1_2mod4, build_ker_pi1_2mod4,
                        build_named, d06, order_vanishing, restrict, scalar_mul, taylor_chi,
                        theta_hermitian)
from .jacobi import JacobiExpansion, dev2, specialize_z0, theta_classical
from .modular import SPACES, SpaceBasis, dims
from .qseries import QSeries
from .serialize import from_json, loads, to_json
from .suites import CATALOG, GATED, modular_form, run_suite, _mod_weight

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RANGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prec", help="q-exponent bound (rational, at least 8)")
    common.add_argument("--format", choices=FORMATS, help="output format")
    common.add_argument("--config", help="JSON configuration file")

    p = argparse.ArgumentParser(prog="hjflab", parents=[common],
                                description="Exact computations with Hermitian Jacobi forms over Z[i].")
    sub = p.add_subparsers(dest="cmd", required=True)

    th = sub.add_parser("theta", parents=[common], help="theta series")
    ths = th.add_subparsers(dest="kind", required=True)
    c = ths.add_parser("classical", parents=[common])
    c.add_argument("--m", type=int, required=True)
    c.add_argument("--mu", type=int, required=True)
    h = ths.add_parser("hermitian", parents=[common])
    h.add_argument("--m", type=int, required=True)
    h.add_argument("--s", required=True, help="class representative a,b")

    fm = sub.add_parser("form", parents=[common], help="build and combine forms")
    fms = fm.add_subparsers(dest="action", required=True)
    b = fms.add_parser("build", parents=[common])
    b.add_argument("name", choices=NAMED_FORMS)
    fc = fms.add_parser("from-cusp", parents=[common])
    fc.add_argument("--k", type=int, required=True)
    fc.add_argument("--f", type=int, required=True, help="basis index in S_{k+2}")
    fk = fms.add_parser("ker", parents=[common])
    fk.add_argument("--k", type=int, required=True)
    fk.add_argument("--f", type=int, help="basis index in S_{k+6}")
    fk.add_argument("--g", type=int, help="basis index in S_{k+2}")
    mu = fms.add_parser("mul", parents=[common], help="multiply the form on stdin by another")
    mu.add_argument("--with", dest="other", help="second form (JSON file); default squares the input")
    sc = fms.add_parser("scale", parents=[common], help="multiply by an elliptic modular form")
    sc.add_argument("--by", required=True, help="monomial such as E4, Delta or E4^2.Delta")

    r = sub.add_parser("restrict", parents=[common], help="restriction pi_rho of the form on stdin")
    r.add_argument("--rho", default="1", help="1 or 1+i")

    op = sub.add_parser("op", parents=[common], help="differential operators")
    op.add_argument("which", choices=("d0", "d2", "chi", "d06", "vanish"))
    op.add_argument("--alpha", type=int)
    op.add_argument("--beta", type=int)

    d = sub.add_parser("dims", parents=[common], help="quoted dimension formulas")
    d.add_argument("--k", type=int, required=True)
    d.add_argument("--space", required=True, choices=SPACES)

    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("suite", choices=list(CATALOG) + ["all"])
    v.add_argument("--data", help="directory with external generator data")
    v.add_argument("--timing", action="store_true", help="include wall times")

    ex = sub.add_parser("export", parents=[common], help="validate stdin and write it to a file")
    ex.add_argument("file")
    im = sub.add_parser("import", parents=[common], help="validate a file and write it to stdout")
    im.add_argument("file")
    return p


def _config(args) -> Config:
    cfg = load_config(args.config)
    if args.prec is not None:
        cfg.precision = parse_precision(args.prec)
    if args.format is not None:
        cfg.output = args.format
    if getattr(args, "data", None):
        cfg.data_dir = args.data
    return cfg


def _read_stdin(stdin):
    text = stdin.read()
    if not text.strip():
        raise UsageError("expected a form as JSON on standard input")
    return loads(text, "<stdin>")


def _emit(obj, cfg: Config, out):
    if isinstance(obj, (QSeries, JacobiExpansion, HermitianExpansion)):
        if cfg.output == "json":
            out.write(json.dumps(to_json(obj)) + "\n")
        else:
            out.write(_text(obj) + "\n")
    else:
        out.write((json.dumps(obj) if cfg.output == "json" else str(obj)) + "\n")


def _text(obj) -> str:
    if isinstance(obj, QSeries):
        terms = [f"({c})*q^{e}" for e, c in obj.items()]
        return " + ".join(terms or ["0"]) + f" + O(q^{obj.prec})"
    head = f"{type(obj).__name__} weight={obj.weight} index={obj.index} prec={obj.prec}"
    lines = [head]
    for key, c in obj.items():
        if isinstance(obj, JacobiExpansion):
            (n, r) = key
            lines.append(f"  q^{n} zeta^{r}: {c}")
        else:
            n, r = key
            lines.append(f"  q^{n} r=({r.a}+{r.b}i)/2: {c}")
    return "\n".join(lines)


def _need(obj, kind, what):
    if not isinstance(obj, kind):
        raise UsageError(f"{what} needs a {kind.__name__} on standard input, got {type(obj).__name__}")
    return obj


def _run(args, cfg: Config, stdin, stdout) -> int:
    P = cfg.precision
    if args.cmd == "theta":
        if args.kind == "classical":
            _emit(theta_classical(args.m, args.mu, P), cfg, stdout)
        else:
            _emit(theta_hermitian(args.m, args.s, P), cfg, stdout)
        return EXIT_OK

    if args.cmd == "form":
        if args.action == "build":
            obj = build_named(args.name, P)
        elif args.action == "from-cusp":
            obj = build_index1_2mod4(args.k, _basis(args.k + 2, args.f, P), P)
        elif args.action == "ker":
            if args.f is None and args.g is None:
                raise UsageError("form ker needs --f and/or --g")
            f = _basis(args.k + 6, args.f, P) if args.f is not None else None
            g = _basis(args.k + 2, args.g, P) if args.g is not None else None
            obj = build_ker_pi1_2mod4(args.k, f, g, P)
        elif args.action == "mul":
            a = _read_stdin(stdin)
            b = a if args.other is None else _load_file(args.other)
            if type(a) is not type(b) or isinstance(a, QSeries):
                raise UsageError("form mul needs two forms of the same kind")
            obj = a * b
        else:
            phi = _read_stdin(stdin)
            try:
                w = _mod_weight(args.by)
                f = modular_form(args.by, P)
            except (KeyError, ValueError):
                raise UsageError(f"cannot parse modular form {args.by!r}; use E4, E6, Delta, products with '.'") from None
            if isinstance(phi, HermitianExpansion):
                obj = scalar_mul(f, phi, w)
            elif isinstance(phi, JacobiExpansion):
                obj = (phi * f).with_weight(None if phi.weight is None else phi.weight + w)
            else:
                obj = phi * f
        _emit(obj, cfg, stdout)
        return EXIT_OK

    if args.cmd == "restrict":
        phi = _need(_read_stdin(stdin), HermitianExpansion, "restrict")
        try:
            obj = restrict(phi, args.rho)
        except ValueError as e:
            raise UsageError(str(e)) from None
        _emit(obj, cfg, stdout)
        return EXIT_OK

    if args.cmd == "op":
        return _op(args, cfg, stdin, stdout)

    if args.cmd == "dims":
        _emit(dims(args.k, args.space), cfg, stdout)
        return EXIT_OK

    if args.cmd == "verify":
        names = [n for n in CATALOG] if args.suite == "all" else [args.suite]
        reports = [run_suite(n, P, cfg.data_dir) for n in names]
        ok = all(r.passed for r in reports)
        if cfg.output == "json":
            if len(reports) == 1:
                doc = reports[0].to_json(args.timing)
            else:
                doc = {"status": "PASS" if ok else "FAIL",
                       "suites": [r.to_json(args.timing) for r in reports]}
            stdout.write(json.dumps(doc) + "\n")
        else:
            for r in reports:
                stdout.write(r.to_text(args.timing) + "\n")
        return EXIT_OK if ok else EXIT_FAIL

    if args.cmd == "export":
        obj = _read_stdin(stdin)
        with open(args.file, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(to_json(obj), indent=1) + "\n")
        return EXIT_OK

    if args.cmd == "import":
        obj = _load_file(args.file)
        _emit(obj, cfg, stdout)
        return EXIT_OK
    raise UsageError(f"unknown command {args.cmd}")


def _basis(k: int, idx: int, P) -> QSeries:
    space = SpaceBasis(k, True, P)
    if not 0 <= idx < len(space):
        raise UnsupportedRange(f"S_{k} has dimension {len(space)}; basis index {idx} is out of range")
    return space.basis[idx]


def _load_file(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise FormatError(f"{path}: {e.strerror}") from None
    try:
        return loads(text, "")
    except FormatError as e:
        raise FormatError(f"{path}: {e}") from None


def _op(args, cfg, stdin, stdout) -> int:
    obj = _read_stdin(stdin)
    w = args.which
    if w in ("d0", "d2"):
        # on a Hermitian form these act on its restriction pi_1
        psi = restrict(obj, 1) if isinstance(obj, HermitianExpansion) else _need(obj, JacobiExpansion, w)
        if w == "d0":
            _emit(specialize_z0(psi), cfg, stdout)
        else:
            if psi.weight is None:
                raise UsageError("d2 needs a form with a weight")
            _emit(dev2(psi), cfg, stdout)
        return EXIT_OK
    phi = _need(obj, HermitianExpansion, w)
    if w == "chi":
        if args.alpha is None or args.beta is None or args.alpha < 0 or args.beta < 0:
            raise UsageError("op chi needs nonnegative --alpha and --beta")
        _emit(taylor_chi(phi, args.alpha, args.beta), cfg, stdout)
    elif w == "d06":
        _emit(d06(phi), cfg, stdout)
    else:
        rho = order_vanishing(phi)
        _emit("inf" if rho == float("inf") else rho, cfg, stdout)
    return EXIT_OK


def main(argv: Optional[list] = None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        cfg = _config(args)
        return _run(args, cfg, stdin, stdout)
    except UnsupportedRange as e:
        stderr.write(f"hjflab: unsupported range: {e}\n")
        return EXIT_RANGE
    except (FormatError, UsageError, InsufficientPrecision) as e:
        stderr.write(f"hjflab: {e}\n")
        return EXIT_USAGE
    except (DecompositionError, SupportError) as e:
        stderr.write(f"hjflab: {e}\n")
        return EXIT_USAGE
    except ValueError as e:
        stderr.write(f"hjflab: {e}\n")
        return EXIT_USAGE
    except HJFError as e:
        stderr.write(f"hjflab: {e}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
