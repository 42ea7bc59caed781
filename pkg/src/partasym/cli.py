"""Command line entry point: ``partasym {exact,asym,limits,compare,sweep}``.

Exit status is 0 on success, 1 on argument or configuration errors and 2 when
the query is infeasible or the asymptotic formula is not valid there.
"""

from __future__ import annotations

import argparse
import logging
import sys

from . import bench, exact, limits, saddle
from .errors import (
    ConfigError,
    FeasibilityError,
    PartitionArgumentError,
    SaddleNumericalError,
    ValidityError,
)

EXIT_OK, EXIT_USAGE, EXIT_INFEASIBLE = 0, 1, 2

_EXACT_MODELS = ("unrestricted", "distinct", "bounded", "bounded-distinct", "total")
_ASYM_MODELS = ("unrestricted", "distinct", "bounded", "bounded-distinct")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; this CLI reserves 2 for infeasibility
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


def _g(x):
    return format(x, ".17g")


def _add_query(p, need_n=True):
    p.add_argument("--E", type=int, required=True, help="number being partitioned")
    p.add_argument("--N", type=int, required=need_n, help="number of parts")
    p.add_argument("--B", type=int, default=None, help="largest allowed part")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="partasym", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("exact", help="exact count by dynamic programming")
    p.add_argument("--model", choices=_EXACT_MODELS, required=True)
    _add_query(p, need_n=False)

    p = sub.add_parser("asym", help="saddle-point estimate")
    p.add_argument("--model", choices=_ASYM_MODELS, required=True)
    _add_query(p)

    p = sub.add_parser("limits", help="closed-form limit values")
    _add_query(p)

    p = sub.add_parser("compare", help="one exact-versus-asymptotic row")
    p.add_argument("--model", choices=_ASYM_MODELS, required=True)
    _add_query(p)
    p.add_argument("--format", choices=bench.FORMATS, default="csv")
    p.add_argument("--limit", choices=bench.LIMITS, default="auto")
    p.add_argument("--exact-cap", type=int, default=None)

    p = sub.add_parser("sweep", help="parameter sweep to CSV or JSON")
    p.add_argument("--config", help="flat key = value file")
    p.add_argument("--model", choices=_ASYM_MODELS)
    p.add_argument("--E", help="comma list or start:stop:step")
    p.add_argument("--N", help="explicit list of N")
    p.add_argument("--u", type=float, help="fixed u: N = round(u sqrt E)")
    p.add_argument("--sigma-zero", action="store_true", help="N = round(sqrt(E) ln2 / c)")
    p.add_argument("--B", help="explicit list of B")
    p.add_argument("--B-ratio", type=float, help="B = round(r sqrt E)")
    p.add_argument("--format", choices=bench.FORMATS)
    p.add_argument("--limit", choices=bench.LIMITS)
    p.add_argument("--exact-cap", type=int)
    p.add_argument("--rel-tol", type=float)
    p.add_argument("--jobs", type=int)
    p.add_argument("--out", help="write here instead of stdout")
    return parser


def _cmd_exact(args):
    if args.model == "total":
        c = exact.count_distinct_total(args.E)
    else:
        if args.N is None:
            raise PartitionArgumentError(f"model {args.model} needs --N")
        c = exact.count(args.model, args.E, args.N, args.B)
    print(c.value)
    print(f"ln={_g(c.ln_value)}")


def _cmd_asym(args):
    est = saddle.estimate(args.model, args.E, args.N, args.B)
    sol = est.solution
    print(f"ln_value={_g(est.ln_value)}")
    print(f"g_term={_g(est.g_term)}")
    print(f"f_term={_g(est.f_term)}")
    print(f"v={_g(sol.v)}")
    print(f"u={_g(sol.u)}")
    if sol.w is not None:
        print(f"w={_g(sol.w)}")
    print(f"alpha_star={_g(sol.alpha_star)}")
    print(f"beta_star={_g(sol.beta_star)}")


def _cmd_limits(args):
    E, N = args.E, args.N
    print(f"mb_limit_ln_q={_g(limits.mb_limit_ln_q(E, N))}")
    print(f"erdos_ln_q={_g(limits.erdos_ln_q(E, N))}")
    print(f"total_distinct_ln_q={_g(limits.total_distinct_ln_q(E))}")
    if args.B is None:
        print("szekeres_bounded_ln_q=NA (needs --B)")
    else:
        print(f"szekeres_bounded_ln_q={_g(limits.szekeres_bounded_ln_q(E, N, args.B))}")


def _cmd_compare(args):
    model = saddle.ModelKind.parse(args.model)
    cap = args.exact_cap
    if cap is None:
        cap = bench.SweepSpec(model=model, E_values=(args.E,), N_values=(args.N,),
                              B_rule="explicit" if args.B else None,
                              B_values=(args.B,) if args.B else ()).resolved_exact_cap()
    row = bench.evaluate_cell(model, args.E, args.N, args.B, exact_cap=cap, limit=args.limit)
    sys.stdout.write(bench.emit([row], args.format))
    return EXIT_INFEASIBLE if row.status != "ok" else EXIT_OK


def _sweep_spec(args) -> bench.SweepSpec:
    mapping = bench.read_config(args.config) if args.config else {}
    flags = {
        "model": args.model, "E": args.E, "N": args.N, "u": args.u, "B": args.B,
        "r": args.B_ratio, "format": args.format, "limit": args.limit,
        "exact_cap": args.exact_cap, "rel_tol": args.rel_tol, "jobs": args.jobs,
    }
    mapping.update({k: v for k, v in flags.items() if v is not None})
    if args.sigma_zero:
        mapping["N_rule"] = "sigma-zero"
    elif args.u is not None:
        mapping["N_rule"] = "fixed-u"
    if args.B_ratio is not None:
        mapping["B_rule"] = "fixed-ratio"
    elif args.B is not None:
        mapping["B_rule"] = "explicit"
    kwargs = bench.spec_kwargs_from_mapping(mapping)
    if "model" not in kwargs:
        raise ConfigError("model", "required")
    if "E_values" not in kwargs:
        raise ConfigError("E_values", "required")
    return bench.SweepSpec(**kwargs)


def _cmd_sweep(args):
    spec = _sweep_spec(args)
    text = bench.emit(bench.run_sweep(spec), spec.output_format)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


_COMMANDS = {
    "exact": _cmd_exact, "asym": _cmd_asym, "limits": _cmd_limits,
    "compare": _cmd_compare, "sweep": _cmd_sweep,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return _COMMANDS[args.command](args) or EXIT_OK
    except (PartitionArgumentError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FeasibilityError, ValidityError, SaddleNumericalError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
