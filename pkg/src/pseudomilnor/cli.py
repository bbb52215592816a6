"""Command-line front end.

    pseudomilnor signature --input problem.json
    pseudomilnor classify --algebra heisenberg3 --synthesize lambda=2
    pseudomilnor frame --input problem.json --pretty
    pseudomilnor curvature --algebra rhn:4 --metric "[[1,0,0,0],[0,1,0,0],[0,0,-1,0],[0,0,0,-1]]"
    pseudomilnor selftest --seed 0 --samples 200

Exit codes: 0 success, 1 selftest failure, 2 degenerate or wrong-signature
input, 3 unsupported request, 4 invalid arguments.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

import numpy as np

from . import __version__
from .curvature import SAMPLES, classify_curvature
from .errors import (
    DegenerateMetric,
    InternalConsistencyError,
    UnsupportedAlgebra,
    UnsupportedSignature,
)
from .forms import DEFAULT_TOL, MetricTensor, epsilons
from .frames import milnor_frame, rahmani_form, verify_frame
from .hyperbolic import normalized_constant
from .io import ProblemSpec, dumps, load_problem, parse_algebra, parse_problem
from .reduction import reduce_metric, synthesize_metric

EXIT_OK = 0
EXIT_SELFTEST = 1
EXIT_INPUT = 2
EXIT_UNSUPPORTED = 3
EXIT_USAGE = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _parse_signature(text: str) -> tuple[int, int]:
    try:
        p, q = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"signature must look like 'p,q', got {text!r}")
    if p < 0 or q < 0:
        raise argparse.ArgumentTypeError("signature entries must be nonnegative")
    return p, q


def _parse_synthesize(text: str) -> int:
    key, _, value = text.partition("=")
    if key.strip() not in ("lambda", "lam") or value.strip() not in ("0", "1", "2"):
        raise argparse.ArgumentTypeError(f"expected lambda=0, lambda=1 or lambda=2, got {text!r}")
    return int(value)


def _common(parser: argparse.ArgumentParser, metric: bool = True):
    parser.add_argument("--input", metavar="FILE", help="problem or report JSON ('-' for stdin)")
    if metric:
        parser.add_argument("--algebra", help="'rhn:N' or 'heisenberg3' when no input file is given")
        parser.add_argument("--metric", help="metric as a JSON array of rows")
    parser.add_argument("--tol", type=float, default=None)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--samples", type=int, default=None)
    out = parser.add_mutually_exclusive_group()
    out.add_argument("--json", action="store_true", help="compact JSON report")
    out.add_argument("--pretty", action="store_true", help="indented JSON report")


def _synth(parser: argparse.ArgumentParser):
    parser.add_argument("--synthesize", type=_parse_synthesize, metavar="lambda=K",
                        help="build the metric from the lambda=K representative")
    parser.add_argument("--signature", type=_parse_signature, metavar="P,Q",
                        help="signature for --synthesize (default: one negative direction)")
    parser.add_argument("--scale", type=float, default=1.0, help="overall scale for --synthesize")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pseudomilnor", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("signature", help="Sylvester signature of the metric")
    _common(p)
    p = sub.add_parser("classify", help="orbit label lambda, scale k and representative g0")
    _common(p)
    _synth(p)
    p = sub.add_parser("frame", help="Milnor-type frame with its bracket table")
    _common(p)
    _synth(p)
    p = sub.add_parser("curvature", help="connection, curvature and Ricci flags")
    _common(p)
    _synth(p)
    p = sub.add_parser("selftest", help="run the randomized property suites")
    _common(p, metric=False)
    return parser


def _problem(args, require_metric: bool = True) -> ProblemSpec:
    if args.input is not None:
        spec = load_problem(args.input, require_metric=require_metric)
    else:
        if not getattr(args, "algebra", None):
            raise UsageError("need --input or --algebra")
        data = {"algebra": args.algebra}
        if args.metric is not None:
            data["metric"] = json.loads(args.metric)
        spec = parse_problem(data, require_metric=require_metric)
    if args.tol is not None:
        spec.tol = args.tol
    if args.seed is not None:
        spec.seed = args.seed
    if args.samples is not None:
        spec.samples = args.samples
    if spec.tol <= 0:
        raise UsageError("--tol must be positive")
    if spec.samples < 0:
        raise UsageError("--samples must be nonnegative")
    return spec


def _provenance(spec: ProblemSpec) -> dict:
    return {"tool": "pseudomilnor", "version": __version__, "seed": spec.seed,
            "tol": spec.tol, "samples": spec.samples}


def _base_report(command: str, spec: ProblemSpec) -> dict:
    metric = MetricTensor(spec.metric, tol=spec.tol)
    p, q = metric.signature
    return {"command": command, "problem": spec.to_dict(), "signature": [p, q]}


def _require_builtin(spec: ProblemSpec):
    if "builtin" not in spec.algebra_spec:
        raise UnsupportedAlgebra("no representative set wired for custom algebras")


def _frame_block(spec: ProblemSpec) -> tuple[dict, object]:
    _require_builtin(spec)
    frame = milnor_frame(spec.algebra, spec.metric, tol=spec.tol)
    check = verify_frame(frame)
    x = frame.vectors
    actual = np.einsum("ai,bj,abk->ijk", x, x, spec.algebra.structure)
    expected = np.einsum("ijl,kl->ijk", frame.canonical_table(), x)
    scale = max(1.0, float(np.abs(x).max()) ** 2)
    table = []
    n = spec.algebra.dim
    for i in range(n):
        for j in range(i + 1, n):
            coords = frame.canonical_table()[i, j]
            table.append({
                "pair": [i + 1, j + 1],
                "coefficients": coords,
                "residual": float(np.abs(actual[i, j] - expected[i, j]).max()) / scale,
            })
    block = {
        "lambda": frame.lam,
        "k": frame.k,
        "boundary": frame.boundary,
        "vectors": x.T,
        "eps": epsilons(*frame.signature),
        "bracket_table": table,
        "residuals": {
            "orthonormality": check.orthonormality,
            "brackets": check.brackets,
            "automorphism": check.automorphism,
        },
        "verified": check.passed,
    }
    return block, frame


def _rahmani_block(frame) -> dict:
    r = rahmani_form(frame)
    return {"case": r.case, "parameter": r.parameter, "basis": r.basis.T, "residual": r.residual}


def cmd_signature(spec: ProblemSpec) -> dict:
    return _base_report("signature", spec)


def cmd_classify(spec: ProblemSpec) -> dict:
    report = _base_report("classify", spec)
    block, frame = _frame_block(spec)
    red = reduce_metric(spec.algebra, spec.metric, tol=spec.tol)
    report["classification"] = {
        "lambda": red.lam,
        "k": frame.k,
        "g0": red.g0,
        "boundary": red.boundary,
        "acting_group": red.group,
        "residuals": {
            "factorization": red.residual(),
            "frame_orthonormality": block["residuals"]["orthonormality"],
            "frame_brackets": block["residuals"]["brackets"],
        },
    }
    if frame.family == "heisenberg3":
        report["rahmani"] = _rahmani_block(frame)
    return report


def cmd_frame(spec: ProblemSpec) -> dict:
    report = _base_report("frame", spec)
    block, frame = _frame_block(spec)
    report["frame"] = block
    if frame.family == "heisenberg3":
        report["rahmani"] = _rahmani_block(frame)
    return report


def cmd_curvature(spec: ProblemSpec) -> dict:
    report = _base_report("curvature", spec)
    curv = classify_curvature(spec.algebra, spec.metric, samples=max(spec.samples, 1),
                              seed=spec.seed, tol=spec.tol)
    flags = curv.flags()
    block = {
        "flags": flags,
        "constant_K": curv.constant_K,
        "scalar": curv.scalar,
        "ricci": curv.ricci,
        "sectional_range": ([float(curv.sectional_samples.min()), float(curv.sectional_samples.max())]
                            if curv.sectional_samples.size else None),
        "residuals": curv.residuals,
    }
    p, q = report["signature"]
    if spec.algebra.family == "rhn" and p >= 1 and q >= 1:
        block_frame, frame = _frame_block(spec)
        # sectional curvature of <,> is k times that of the normalized metric k<,>
        predicted = frame.k * normalized_constant(frame.lam, p, q)
        block["prediction"] = {
            "lambda": frame.lam,
            "k": frame.k,
            "normalized_constant": normalized_constant(frame.lam, p, q),
            "predicted_constant_K": predicted,
            "residual": None if curv.constant_K is None else abs(curv.constant_K - predicted),
        }
    report["curvature"] = block
    return report


def cmd_selftest(seed: int, samples: int, tol: float = DEFAULT_TOL) -> tuple[int, dict]:
    from .selftest import run_suites

    if samples <= 0:
        raise UsageError("empty suite: --samples must be positive")
    results = run_suites(seed=seed, samples=samples, tol=tol)
    suites = [
        {"name": r.name, "passed": r.passed, "max_residual": r.max_residual,
         "threshold": r.threshold, "cases": r.cases, "failures": r.failures}
        for r in results
    ]
    ok = all(r.passed for r in results)
    report = {"command": "selftest", "passed": ok, "suites": suites}
    return (EXIT_OK if ok else EXIT_SELFTEST), report


def _synthesized(args) -> ProblemSpec:
    if args.input is not None:
        raise UsageError("--synthesize and --input are exclusive")
    if not args.algebra:
        raise UsageError("--synthesize needs --algebra")
    alg, echo = parse_algebra(args.algebra)
    n = alg.dim
    p, q = args.signature if args.signature else (n - 1, 1)
    if p + q != n:
        raise UsageError(f"signature ({p}, {q}) does not match dimension {n}")
    if args.scale <= 0:
        raise UsageError("--scale must be positive")
    metric = synthesize_metric(alg, args.synthesize, p, q, scale=args.scale)
    spec = ProblemSpec(algebra=alg, algebra_spec=echo, metric=metric)
    if args.tol is not None:
        spec.tol = args.tol
    if args.seed is not None:
        spec.seed = args.seed
    if args.samples is not None:
        spec.samples = args.samples
    return spec


def _human(report: dict) -> str:
    lines = []
    cmd = report["command"]
    if cmd == "selftest":
        for s in report["suites"]:
            mark = "ok  " if s["passed"] else "FAIL"
            lines.append(f"{mark} {s['name']:<36} max residual {s['max_residual']:.3e}"
                         f"  (threshold {s['threshold']:.1e}, {s['cases']} cases)")
        lines.append("all suites passed" if report["passed"] else "some suites failed")
        return "\n".join(lines)
    p, q = report["signature"]
    lines.append(f"signature: ({p}, {q})")
    if "classification" in report:
        c = report["classification"]
        lines.append(f"lambda: {c['lambda']}")
        lines.append(f"k: {c['k']!r}")
        lines.append("g0:")
        lines.extend("  " + " ".join(f"{v: .6g}" for v in row) for row in np.asarray(c["g0"]))
        lines.append(f"factorization residual: {c['residuals']['factorization']:.3e}")
    if "frame" in report:
        f = report["frame"]
        lines.append(f"lambda: {f['lambda']}  k: {f['k']!r}")
        for i, v in enumerate(np.asarray(f["vectors"]), start=1):
            lines.append(f"  x{i} = " + " ".join(f"{a: .6g}" for a in v))
        for entry in f["bracket_table"]:
            i, j = entry["pair"]
            lines.append(f"  [x{i}, x{j}] residual {entry['residual']:.3e}")
    if "rahmani" in report:
        r = report["rahmani"]
        param = "" if r["parameter"] is None else f" parameter {r['parameter']!r}"
        lines.append(f"Rahmani case {r['case']}{param} (residual {r['residual']:.3e})")
    if "curvature" in report:
        c = report["curvature"]
        lines.append(f"flat: {c['flags']['flat']}")
        lines.append(f"constant_K: {c['constant_K']!r}")
        lines.append(f"scalar: {c['scalar']!r}")
        lines.append(f"einstein: {c['flags']['einstein']!r}")
        sol = c["flags"]["algebraic_soliton"]
        lines.append("algebraic soliton: " + ("no" if sol is None else f"c = {sol['c']!r}"))
        if "prediction" in c:
            lines.append(f"predicted constant_K: {c['prediction']['predicted_constant_K']!r}")
    return "\n".join(lines)


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "selftest":
            if args.input is not None:
                spec = load_problem(args.input, require_metric=False)
                seed, samples, tol = spec.seed, spec.samples, spec.tol
            else:
                seed, samples, tol = 0, SAMPLES, DEFAULT_TOL
            seed = seed if args.seed is None else args.seed
            samples = samples if args.samples is None else args.samples
            tol = tol if args.tol is None else args.tol
            code, report = cmd_selftest(seed, samples, tol)
            report["provenance"] = {"tool": "pseudomilnor", "version": __version__,
                                    "seed": seed, "tol": tol, "samples": samples}
        else:
            if getattr(args, "synthesize", None) is not None:
                spec = _synthesized(args)
            else:
                spec = _problem(args)
            handler = {"signature": cmd_signature, "classify": cmd_classify,
                       "frame": cmd_frame, "curvature": cmd_curvature}[args.command]
            report = handler(spec)
            report["provenance"] = _provenance(spec)
            code = EXIT_OK
    except (DegenerateMetric, UnsupportedSignature) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except UnsupportedAlgebra as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except InternalConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_SELFTEST
    except (UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if args.json or args.pretty:
        print(dumps(report, pretty=args.pretty))
    else:
        print(_human(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
