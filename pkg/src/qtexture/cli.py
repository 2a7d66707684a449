"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 parse error,
3 state-validation error, 4 output I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import checks
from .errors import NotHermitian, NotPSD, QTextureError, TraceNotOne, UnknownMeasure
from .measures import (
    MEASURE_ORDER,
    MEASURES,
    measure_all,
    rugosity,
    texture_bures,
    texture_fidelity,
    texture_trace,
)
from .states import (
    HamiltonianSpec,
    bell_state,
    coherent_gibbs_ket,
    gibbs_state,
    sigma_alpha,
    tau_alpha,
)
from .stateio import (
    StateFileError,
    csv_text,
    encode_json_values,
    format_cell,
    read_state_file,
    write_csv,
)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_IO = 4

# checks expected to find a violation rather than pass clean
EXPECTED_VIOLATIONS = {"axioms:l1:monotonicity", "falsify:l1"}


def _default_seed() -> int:
    raw = os.environ.get("TEXLAB_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        return 0


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _parse_measures(raw: str) -> list[str]:
    if raw == "all":
        return list(MEASURE_ORDER)
    names = [m.strip() for m in raw.split(",") if m.strip()]
    for m in names:
        if m not in MEASURES:
            raise UnknownMeasure(f"unknown measure {m!r}; expected one of {sorted(MEASURES)}")
    return names


def _parse_dims(raw: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(x) for x in raw.split(",") if x.strip())
    except ValueError as exc:
        raise QTextureError(f"malformed dims {raw!r}") from exc
    if not dims or any(d < 1 for d in dims):
        raise QTextureError(f"dims must be positive integers, got {raw!r}")
    return dims


def cmd_measure(args) -> int:
    try:
        rho = read_state_file(args.infile)
    except (OSError, StateFileError) as exc:
        return _fail(EXIT_PARSE, str(exc))
    except (NotHermitian, TraceNotOne, NotPSD) as exc:
        return _fail(EXIT_VALIDATION, f"{type(exc).__name__}: {exc}")
    try:
        names = _parse_measures(args.measures)
    except UnknownMeasure as exc:
        return _fail(EXIT_PARSE, str(exc))
    report = measure_all(rho)
    if args.json:
        doc = {
            "dim": report.dim,
            "overlap": report.overlap,
            "measures": {name: report.value(name) for name in names},
            "geometric_lower_bound": report.geometric_lower_bound,
        }
        print(json.dumps(encode_json_values(doc)))
    else:
        print(f"dim: {report.dim}")
        print(f"overlap: {format_cell(report.overlap)}")
        print(f"geometric_lower_bound: {format_cell(report.geometric_lower_bound)}")
        width = max(len(n) for n in names)
        for name in names:
            print(f"{name:<{width}}  {format_cell(report.value(name))}")
    return EXIT_OK


def cmd_examples(args) -> int:
    if args.which == "bell":
        columns = {sign: measure_all(bell_state(sign).density()) for sign in ("+", "-")}
        names = ("trace", "geometric", "fidelity", "bures", "rel_entropy", "robustness", "rugosity")
        width = max(len(n) for n in names)
        print(f"{'measure':<{width}}  {'psi_plus':>16}  {'psi_minus':>16}")
        for name in names:
            plus = format_cell(columns["+"].value(name))
            minus = format_cell(columns["-"].value(name))
            print(f"{name:<{width}}  {plus:>16}  {minus:>16}")
        return EXIT_OK

    rows = []
    for k in range(args.grid + 1):
        alpha = k / args.grid
        s, t = sigma_alpha(alpha), tau_alpha(alpha)
        rows.append(
            (
                alpha,
                texture_trace(s),
                texture_trace(t),
                rugosity(s),
                rugosity(t),
            )
        )
    header = ["alpha", "T_tr_sigma", "T_tr_tau", "rugosity_sigma", "rugosity_tau"]
    try:
        write_csv(args.out, header, rows)
    except OSError as exc:
        return _fail(EXIT_IO, f"cannot write {args.out}: {exc}")
    return EXIT_OK


def cmd_gibbs(args) -> int:
    if args.energies is not None:
        try:
            energies = np.array([float(x) for x in args.energies.split(",") if x.strip()])
        except ValueError:
            return _fail(EXIT_PARSE, f"malformed energies {args.energies!r}")
        if energies.size == 0:
            return _fail(EXIT_PARSE, "at least one energy is required")
    else:
        energies = np.arange(args.dim, dtype=float)
    if args.tmin <= 0.0 or args.tmax < args.tmin or args.steps < 1:
        return _fail(EXIT_PARSE, "need tmin > 0, tmax >= tmin and steps >= 1")
    temps = np.linspace(args.tmin, args.tmax, args.steps)
    header = ["T", "T_F_gibbs", "T_B_gibbs"]
    if args.coherent:
        header += ["T_F_coherent", "T_B_coherent"]
    rows = []
    for t in temps:
        spec = HamiltonianSpec(energies, float(t))
        rho = gibbs_state(spec)
        row = [float(t), texture_fidelity(rho), texture_bures(rho)]
        if args.coherent:
            ket = coherent_gibbs_ket(spec).density()
            row += [texture_fidelity(ket), texture_bures(ket)]
        rows.append(row)
    print(csv_text(header, rows), end="")
    return EXIT_OK


def cmd_textureplot(args) -> int:
    try:
        rho = read_state_file(args.infile)
    except (OSError, StateFileError) as exc:
        return _fail(EXIT_PARSE, str(exc))
    except (NotHermitian, TraceNotOne, NotPSD) as exc:
        return _fail(EXIT_VALIDATION, f"{type(exc).__name__}: {exc}")
    re_rows = [list(map(float, row)) for row in rho.matrix.real]
    im_rows = [list(map(float, row)) for row in rho.matrix.imag]
    try:
        write_csv(args.out_re, None, re_rows)
        write_csv(args.out_im, None, im_rows)
    except OSError as exc:
        return _fail(EXIT_IO, f"cannot write grid: {exc}")
    return EXIT_OK


def _verify_reports(args):
    seed = args.seed
    measures = _parse_measures(args.measures)
    dims = _parse_dims(args.dims) if args.dims else None

    def axiom_reports():
        for m in measures:
            yield from checks.check_axioms(
                m, dims or checks.DEFAULT_AXIOM_DIMS, args.trials, seed
            )

    suite = args.suite
    if suite in ("axioms", "all"):
        yield from axiom_reports()
    if suite in ("theorem3", "all"):
        yield checks.check_theorem3(dims or checks.DEFAULT_THEOREM3_DIMS, max(args.trials, 1), seed)
        yield checks.check_trace_distance_convexity(max(args.trials // 2, 1), seed)
    if suite in ("appendixD", "all"):
        adims = dims or checks.DEFAULT_MAXIMALITY_DIMS
        yield checks.check_appendix_d(adims, max(args.trials // 10, 1), seed)
    if suite in ("examples", "all"):
        yield checks.check_examples(seed=seed)
    if suite in ("gibbs", "all"):
        yield checks.check_gibbs(dims or checks.DEFAULT_GIBBS_DIMS, seed=seed)
    if suite in ("falsify", "all"):
        for m in measures:
            yield checks.falsify_monotonicity(
                m, args.budget, seed, dims or checks.DEFAULT_AXIOM_DIMS
            )


def cmd_verify(args) -> int:
    ok = True
    try:
        for report in _verify_reports(args):
            expected_violation = report.name in EXPECTED_VIOLATIONS
            doc = {
                "name": report.name,
                "trials": report.trials,
                "failures": report.failures,
                "worst_violation": report.worst_violation,
                "seed": report.seed,
            }
            if report.counterexample is not None:
                doc["counterexample"] = report.counterexample
            if expected_violation:
                doc["expected_violation"] = True
                if report.passed:
                    ok = False
            elif not report.passed:
                ok = False
            print(json.dumps(encode_json_values(doc)))
    except QTextureError as exc:
        return _fail(EXIT_PARSE, str(exc))
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qtexture", description="Quantum-state texture toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measure", help="evaluate all texture measures on a state file")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--measures", default="all")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--table", action="store_true")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("examples", help="worked examples: Bell table or family sweep")
    p.add_argument("which", choices=("bell", "families"))
    p.add_argument("--grid", type=int, default=100)
    p.add_argument("--out", default="families.csv")
    p.set_defaults(func=cmd_examples)

    p = sub.add_parser("gibbs", help="thermal-state sweep over temperature")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--dim", type=int, default=2)
    group.add_argument("--energies")
    p.add_argument("--tmin", type=float, default=0.1)
    p.add_argument("--tmax", type=float, default=10.0)
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--coherent", action="store_true")
    p.set_defaults(func=cmd_gibbs)

    p = sub.add_parser("textureplot", help="write the real/imaginary entry grids as CSV")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out-re", dest="out_re", required=True)
    p.add_argument("--out-im", dest="out_im", required=True)
    p.set_defaults(func=cmd_textureplot)

    p = sub.add_parser("verify", help="run the falsification harness; JSON report per line")
    p.add_argument(
        "--suite",
        default="all",
        choices=("all", "axioms", "theorem3", "appendixD", "examples", "gibbs", "falsify"),
    )
    p.add_argument("--measures", default="all")
    p.add_argument("--dims", default=None)
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--budget", type=int, default=1000)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "seed", None) is None:
        args.seed = _default_seed()
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
