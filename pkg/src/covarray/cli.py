"""Command-line interface.

    covarray bound --alpha 2 --t 3 --k 2 --m 1000
    covarray gamma --alpha 2 --t 3 --k 2
    covarray table
    covarray generate --m 6 --alpha 2 --k 1 --n 42 --seed 3 > a.txt
    covarray verify a.txt --t 3
    covarray construct --m 5 --t 2 --alpha 2 --k 1 --seed 1 -o a.txt
    covarray montecarlo gamma --alpha 2 --t 3 --k 2 --trials 100000

Exit codes: 0 success (verify: covering), 1 not covering / construction
failed, 2 input error. The resolved configuration of every run is echoed
to stderr as a ``# config:`` JSON line.
"""

import argparse
import json
import sys
from pathlib import Path

from covarray import bounds, model, montecarlo, verify
from covarray.construct import ConstructionFailure, construct
from covarray.exact_arith import rational_to_json

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _params(args):
    try:
        return bounds.CoveringParams(args.m, args.t, args.alpha)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(text, path=None):
    if path and path != "-":
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_bound(args):
    if args.t < 2:
        raise UsageError(f"strength t must be >= 2 for bounds, got {args.t}")
    if args.alpha < 2:
        raise UsageError(f"alphabet size must be >= 2, got {args.alpha}")
    if args.k < 0:
        raise UsageError(f"k must be >= 0, got {args.k}")
    if args.m is None:
        coef = bounds.coefficient(args.alpha, args.t, args.k)
        gamma = bounds._model(args.alpha, args.t, args.k).gamma
        out = {
            "m": None,
            "t": args.t,
            "alpha": args.alpha,
            "k": args.k,
            "mode": args.mode,
            "gamma": rational_to_json(gamma),
            "coefficient": coef,
            "sufficient_n": None,
            "lll_product": None,
            "augmentation_columns": args.alpha if args.k else 0,
        }
    else:
        out = bounds.sufficient_n(_params(args), args.k, args.mode).to_json()
    if args.format == "json":
        _emit(json.dumps(out) + "\n")
    else:
        g = out["gamma"]
        lines = [
            f"alpha={args.alpha} t={args.t} k={args.k} mode={args.mode}",
            f"gamma        = {g['num']}/{g['den']}",
            f"coefficient  = {out['coefficient']:.2f}  (N <= coefficient * log2(m) * (1 + o(1)))",
        ]
        if out["sufficient_n"] is not None:
            lines += [
                f"m            = {out['m']}",
                f"sufficient_n = {out['sufficient_n']}  ({out['augmentation_columns']} constant columns included)",
                f"e*p*(d+1)    = {out['lll_product']:.6g}",
            ]
        _emit("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_gamma(args):
    try:
        g = bounds.gamma_k(args.alpha, args.t, args.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = {"alpha": args.alpha, "t": args.t, "k": args.k, "gamma": rational_to_json(g), "value": float(g)}
    if args.enumerate:
        e = montecarlo.enumerate_gamma(args.alpha, args.t, args.k)
        out["enumerated"] = rational_to_json(e)
        out["agrees"] = e == g
    if args.format == "json":
        _emit(json.dumps(out) + "\n")
    else:
        text = f"gamma_{args.k}(alpha={args.alpha}, t={args.t}) = {g} ~ {float(g):.12g}\n"
        if args.enumerate:
            text += f"enumeration: {out['enumerated']['num']}/{out['enumerated']['den']} ({'agrees' if out['agrees'] else 'DISAGREES'})\n"
        _emit(text)
    return EXIT_OK


def cmd_table(args):
    rows = bounds.paper_table(rounded=False)
    if args.format == "json":
        _emit(json.dumps([{"alpha": a, "t": t, "k": k, "coefficient": c} for a, t, k, c in rows]) + "\n")
    else:
        _emit(bounds.format_table(rows))
    return EXIT_OK


def cmd_generate(args):
    try:
        # strength plays no part in sampling
        params = bounds.CoveringParams(args.m, 2, args.alpha)
        if args.k == 0:
            mat = model.sample_iid_array(params, args.n, args.seed)
        else:
            n_core = args.n - (args.alpha if args.augment else 0)
            if n_core < 0:
                raise ValueError(f"n={args.n} is smaller than the {args.alpha} augmentation columns")
            mat = model.sample_array(params, n_core, args.k, args.augment, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(model.dumps_matrix(mat), args.output)
    return EXIT_OK


def _read_matrix(path):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    try:
        return model.loads_matrix(text)
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None


def cmd_verify(args):
    try:
        mat = _read_matrix(args.file)
    except FileNotFoundError as exc:
        raise UsageError(str(exc)) from None
    if not 1 <= args.t <= mat.rows:
        raise UsageError(f"need 1 <= t <= m, got t={args.t}, m={mat.rows}")
    report = verify.missing_tuples(mat, args.t, args.method)
    if args.format == "json":
        _emit(report.to_json_lines())
    else:
        covered = report.total_checked - len(report.missing)
        status = "covering" if report.is_covering else "NOT covering"
        lines = [f"{mat.rows}x{mat.cols} alpha={mat.alpha} t={args.t}: {status} ({covered}/{report.total_checked} covered)"]
        for rs, v in report.missing[: args.show]:
            lines.append(f"  missing rows={list(rs)} vector={list(v)}")
        if len(report.missing) > args.show:
            lines.append(f"  ... {len(report.missing) - args.show} more")
        _emit("\n".join(lines) + "\n")
    return EXIT_OK if report.is_covering else EXIT_FAIL


def cmd_construct(args):
    params = _params(args)
    log_path = args.log
    if log_path is None and args.output and args.output != "-":
        log_path = args.output + ".log.json"
    try:
        mat, log = construct(
            params, args.k, args.n, args.seed, args.max_resamples, args.mode, record_trace=args.trace
        )
        code = EXIT_OK
    except ConstructionFailure as exc:
        mat, log, code = exc.matrix, exc.log, EXIT_FAIL
        print(f"error: {exc}", file=sys.stderr)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if code == EXIT_OK:
        _emit(model.dumps_matrix(mat), args.output)
    if log_path:
        Path(log_path).write_text(log.dumps() + "\n")
    else:
        print(json.dumps(log.to_json()), file=sys.stderr)
    return code


def cmd_montecarlo(args):
    target = tuple(args.target) if args.target else None
    try:
        if args.what == "gamma":
            reports = [montecarlo.estimate_gamma(args.alpha, args.t, args.k, args.trials, args.seed, target, args.threads)]
        elif args.what == "lambda":
            params = bounds.CoveringParams(max(args.m or args.t, args.t), args.t, args.alpha)
            reports = [
                montecarlo.estimate_lambda(params, args.k, args.n_core, args.trials, args.seed, target, args.threads)
            ]
        else:
            summary = montecarlo.empirical_min_n(_params(args), args.k, args.trials, args.seed)
            out = {
                "m": args.m,
                "t": args.t,
                "alpha": args.alpha,
                "k": args.k,
                "trials": args.trials,
                "min": summary.min,
                "median": summary.median,
                "max": summary.max,
                "sufficient_n": summary.sufficient_n,
                "exceed_bound": summary.exceed_bound,
            }
            _emit(json.dumps(out) + "\n")
            return EXIT_OK
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "json":
        _emit("".join(json.dumps(r.row()) + "\n" for r in reports))
    else:
        montecarlo.write_csv(reports, sys.stdout)
    return EXIT_OK


def _common(p, m_required=False, k_default=1):
    p.add_argument("--m", type=int, required=m_required, default=None, help="number of rows")
    p.add_argument("--t", type=int, required=True, help="strength")
    p.add_argument("--alpha", type=int, required=True, help="alphabet size")
    p.add_argument("--k", type=int, default=k_default, help="copies of each letter per tile (0 = i.i.d. model)")


def build_parser():
    parser = argparse.ArgumentParser(prog="covarray", description="Tiled-model covering array bounds and constructions")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="LLL bound for one parameter set")
    _common(p)
    p.add_argument("--mode", choices=bounds.MODES, default="exact", help="d+1 bound: exact binomial or t*m^(t-1)/(t-1)!")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("gamma", help="exact gamma_k")
    _common(p)
    p.add_argument("--enumerate", action="store_true", help="cross-check by exhaustive enumeration")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("table", help="recompute the 32-row coefficient table")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("generate", help="sample a random matrix")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--k", type=int, default=1, help="tile multiplicity; 0 samples i.i.d. entries")
    p.add_argument("--n", type=int, required=True, help="total columns, constant columns included")
    p.add_argument("--augment", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", help="check the covering property of a matrix file")
    p.add_argument("file", help="matrix file, or - for stdin")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--method", choices=verify.METHODS, default="hash")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--show", type=int, default=10, help="missing tuples listed in text output")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", help="build a covering array by resampling")
    _common(p, m_required=True)
    p.add_argument("--n", type=int, default=None, help="total columns (default: LLL sufficient n)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-resamples", type=int, default=None)
    p.add_argument("--mode", choices=bounds.MODES, default="exact")
    p.add_argument("--trace", action="store_true", help="record violated events in the log")
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--log", default=None, help="ConstructionLog JSON path (default: <output>.log.json)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("montecarlo", help="sampling checks of gamma_k, lambda_k and minimal n")
    p.add_argument("what", choices=("gamma", "lambda", "minn"))
    _common(p)
    p.add_argument("--n-core", type=int, default=None, help="core width for lambda")
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--target", type=int, nargs="+", default=None, help="target vector (default all 1s)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_montecarlo)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = {k: v for k, v in vars(args).items() if k != "func"}
    print(f"# config: {json.dumps(config)}", file=sys.stderr)
    if args.command == "montecarlo" and args.what == "lambda" and args.n_core is None:
        parser.error("montecarlo lambda needs --n-core")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
