"""Command-line entry point: ``lmg-ent <subcommand> ...``."""
from __future__ import annotations

import argparse
import logging
import sys

from . import oracle, sweep
from .dicke import solve_ground
from .entanglement import pair_correlators, state_entanglement
from .errors import ConfigError, DomainError, InvalidInput, SolverFailure
from .model import ModelParams

log = logging.getLogger("lmg_entanglement")

EXIT_OK, EXIT_CONFIG, EXIT_SOLVER, EXIT_IO = 0, 1, 2, 3


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _str_list(text: str) -> list[str]:
    return [x.strip() for x in text.split(",") if x.strip()]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _model_args(p, need_grid=True):
    p.add_argument("--coupling", choices=["ferro", "antiferro"], default="ferro")
    p.add_argument("--gamma", type=float, default=0.5)
    p.add_argument("--n", type=_int_list, default=[50], help="particle numbers, e.g. 50,500")
    if need_grid:
        p.add_argument("--h-start", type=float, default=0.0)
        p.add_argument("--h-stop", type=float, default=2.0)
        p.add_argument("--h-step", type=float, default=0.01)
    p.add_argument("--out", default=None, help="output path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lmg-ent", description="Multiparticle entanglement in the LMG model.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("sweep", help="Q and E_g along an h grid")
    _model_args(p)
    p.add_argument("--method", type=_str_list, default=["dicke"])
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("scale", help="Q and E_g versus N at fixed h")
    _model_args(p, need_grid=False)
    p.add_argument("--h-star", type=float, required=True)

    p = sub.add_parser("derive", help="finite-difference dQ/dh and dE_g/dh")
    _model_args(p)
    p.add_argument("--method", type=_str_list, default=["dicke"])
    p.add_argument("--h-star", type=float, default=None)
    p.add_argument("--in", dest="infile", default=None, help="read an existing sweep CSV")

    p = sub.add_parser("oracle-check", help="compare the Dicke pipeline with the 2^N brute force")
    _model_args(p)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--sector", choices=["max_spin", "global"], default="max_spin",
                   help="compare inside the S = N/2 multiplet or against the global ground state")

    for name in sweep.RECIPES:
        p = sub.add_parser(name, help=f"reproduce {name}")
        p.add_argument("--out", default=None)
        p.add_argument("--jobs", type=int, default=1)
    return parser


def _emit(text: str, path) -> None:
    if path:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_sweep(args) -> int:
    spec = sweep.SweepSpec.from_range(args.coupling, args.gamma, args.n, args.h_start,
                                      args.h_stop, args.h_step, args.method)
    _emit(sweep.records_to_csv(sweep.run_sweep(spec, jobs=args.jobs)), args.out)
    return EXIT_OK


def _cmd_scale(args) -> int:
    records = sweep.scaling_study(args.coupling, args.gamma, args.h_star, args.n)
    _emit(sweep.records_to_csv(records), args.out)
    return EXIT_OK


def _cmd_derive(args) -> int:
    if args.infile:
        rows = sweep.read_csv(args.infile)
    else:
        spec = sweep.SweepSpec.from_range(args.coupling, args.gamma, args.n, args.h_start,
                                          args.h_stop, args.h_step, args.method)
        rows = [dict(zip(sweep.CSV_HEADER, r.row())) for r in sweep.run_sweep(spec)]
    groups: dict[tuple[str, str], list[dict]] = {}
    for row in rows:
        groups.setdefault((row["n"], row["method"]), []).append(row)
    lines = [["n", "method", "h", "dq_dh", "de_g_dh"]]
    for (n, method), group in groups.items():
        group = [r for r in group if r["e_g"] != ""]
        h = [float(r["h"]) for r in group]
        derivs = []
        for key in ("q_global", "e_g"):
            d = sweep.finite_difference_derivative(h, [float(r[key]) for r in group], args.h_star)
            derivs.append(d)
            if args.h_star is not None:
                print(f"N={n} {method} d{key}/dh at h*={args.h_star}: "
                      f"left={d.left_slope} right={d.right_slope}", file=sys.stderr)
        for i, hv in enumerate(h):
            lines.append([n, method, format(hv, ".15g"), format(derivs[0].slope[i], ".15g"),
                          format(derivs[1].slope[i], ".15g")])
    text = "".join(",".join(str(c) for c in line) + "\n" for line in lines)
    _emit(text, args.out)
    return EXIT_OK


def _cmd_oracle_check(args) -> int:
    rows = [["coupling", "gamma", "h", "n", "quantity", "dicke", "oracle", "abs_diff"]]
    worst = 0.0
    for n in args.n:
        for h in sweep.h_grid(args.h_start, args.h_stop, args.h_step):
            params = ModelParams(args.coupling, args.gamma, h, n)
            sol = solve_ground(params)
            pc = pair_correlators(sol.state)
            ent = state_entanglement(sol.state)
            e_full, full = oracle.full_ground_state(params, sector=args.sector)
            ref = oracle.oracle_correlators(full)
            pairs = {
                "ground_energy": (sol.energy, e_full),
                "m_z": (pc.m_z, ref["m_z"]),
                "c_xx": (pc.c_xx, ref["c_xx"]),
                "c_yy": (pc.c_yy, ref["c_yy"]),
                "c_zz": (pc.c_zz, ref["c_zz"]),
                "q_global": (ent.q_global, oracle.brennen_Q(full)),
                "e_g": (ent.e_g, oracle.oracle_Eg(full)),
            }
            for name, (a, b) in pairs.items():
                worst = max(worst, abs(a - b))
                rows.append([args.coupling, args.gamma, h, n, name, format(a, ".15g"),
                             format(b, ".15g"), format(abs(a - b), ".3e")])
    _emit("".join(",".join(str(c) for c in r) + "\n" for r in rows), args.out)
    print(f"max abs difference {worst:.3e} (tol {args.tol:g})", file=sys.stderr)
    return EXIT_OK if worst <= args.tol else EXIT_SOLVER


def _cmd_recipe(args) -> int:
    _emit(sweep.records_to_csv(sweep.run_recipe(args.command, jobs=args.jobs)), args.out)
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    handlers = {"sweep": _cmd_sweep, "scale": _cmd_scale, "derive": _cmd_derive,
                "oracle-check": _cmd_oracle_check}
    handler = handlers.get(args.command, _cmd_recipe)
    try:
        return handler(args)
    except (ConfigError, InvalidInput, DomainError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SolverFailure as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
