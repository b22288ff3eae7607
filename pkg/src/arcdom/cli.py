"""Command-line front end: ``arcdom solve|verify|gen|info|fuzz``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import ArcDomError, InternalInvariantError
from .graph_core import Problem, intersection_graph, verify
from .weights import format_weight

EXIT_OK, EXIT_INFEASIBLE, EXIT_USAGE, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


class _UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc.strerror}") from None


class _InputError(Exception):
    pass


def _load(args, kind):
    from .io import parse_instance

    weights = _read(args.weights) if getattr(args, "weights", None) else None
    return parse_instance(_read(args.model), weights, kind)


def _cmd_solve(args, out) -> int:
    from .io import emit_solution
    from .solvers import solve

    problem = Problem(args.problem)
    model, w = _load(args, problem.kind)
    sol = solve(problem, model, w, check=args.check)
    out.write(emit_solution(sol))
    out.write(f"c trace: {' '.join(sol.trace)}\n")
    return EXIT_OK if sol.feasible else EXIT_INFEASIBLE


def _cmd_verify(args, out) -> int:
    from .io import parse_solution_members

    problem = Problem(args.problem)
    model, w = _load(args, problem.kind)
    members = parse_solution_members(_read(args.solution), problem.kind)
    ok, value, why = verify(problem, intersection_graph(model), w, members)
    out.write(f"FEASIBLE {format_weight(value)}\n" if ok else f"INFEASIBLE {why}\n")
    return EXIT_OK


def _cmd_gen(args, out) -> int:
    from .io import emit_model, emit_weights
    from .testkit import GenSpec, generate

    spec = GenSpec(args.seed, args.n, args.family, args.weights, args.kind)
    model, w = generate(spec)
    header = f"c gen family={spec.family.value} n={spec.n} seed={spec.seed} weights={spec.weight_spec.value}\n"
    model_text = header + emit_model(model)
    weight_text = header + emit_weights(w)
    if args.out_model:
        Path(args.out_model).write_text(model_text, encoding="utf-8")
    if args.out_weights:
        Path(args.out_weights).write_text(weight_text, encoding="utf-8")
    if not args.out_model and not args.out_weights:
        out.write(model_text)
        out.write(weight_text)
    return EXIT_OK


def _ids(arcs) -> str:
    return " ".join(str(a + 1) for a in sorted(arcs)) if arcs else "none"


def _seg(seg) -> str:
    return f"{seg.index} ({seg.left_endpoint}, {seg.right_endpoint})"


def info_lines(model) -> list[str]:
    from .arc_model import (
        coverage_extremes,
        edge_count,
        extract_cycle_structure,
        find_small_cover,
        universal_arcs,
    )

    cmin, cmax, gmin, gmax = coverage_extremes(model)
    uni = universal_arcs(model)
    cover2 = find_small_cover(model, 2)
    cover3 = cover2 if cover2 is not None else find_small_cover(model, 3)
    lines = [
        f"n {model.n}",
        f"m {edge_count(model)}",
        f"coverage min {cmin} at segment {_seg(gmin)}",
        f"coverage max {cmax} at segment {_seg(gmax)}",
        f"universal {_ids(uni[:1])}",
        f"cover2 {_ids(cover2)}",
        f"cover3 {_ids(cover3)}",
        f"hca-by-cover {'yes' if cover3 is None else 'no'}",
    ]
    if cmax == 2 and cmin == 1 and cover3 is None:
        cs = extract_cycle_structure(model)
        lines.append("cycle " + " ".join(str(v + 1) for v in cs.cycle))
        for parent in cs.cycle:
            if cs.leaves(parent):
                lines.append(f"pendants {parent + 1}: {_ids(cs.leaves(parent))}")
    return lines


def _cmd_info(args, out) -> int:
    from .io import parse_model

    out.write("\n".join(info_lines(parse_model(_read(args.model)))) + "\n")
    return EXIT_OK


def _cmd_fuzz(args, out) -> int:
    from .testkit import differential_run

    problem = Problem(args.problem)
    weights = args.weights or ("signed" if problem in (Problem.MWPVD, Problem.MWPED) else "nonneg")
    report = differential_run(
        problem, args.trials, (args.n_min, args.n_max), weights, args.seed, args.family
    )
    out.write(report.to_text())
    return EXIT_OK if report.ok else EXIT_INTERNAL


def build_parser() -> argparse.ArgumentParser:
    from .testkit import Family, WeightSpec

    problems = [p.value for p in Problem]
    p = _Parser(prog="arcdom", description="Exact efficient and perfect domination on circular-arc graphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="solve one instance")
    s.add_argument("--problem", required=True, choices=problems)
    s.add_argument("--model", required=True, help="model file, '-' for stdin")
    s.add_argument("--weights", help="weight file (unit weights when absent)")
    s.add_argument("--check", action="store_true", help="re-verify the answer before printing")

    v = sub.add_parser("verify", help="check a solution file")
    v.add_argument("--problem", required=True, choices=problems)
    v.add_argument("--model", required=True)
    v.add_argument("--weights")
    v.add_argument("--solution", required=True)

    g = sub.add_parser("gen", help="generate an instance")
    g.add_argument("--family", required=True, choices=[f.value for f in Family])
    g.add_argument("--n", required=True, type=int)
    g.add_argument("--seed", required=True, type=int)
    g.add_argument("--weights", default="unit", choices=[w.value for w in WeightSpec])
    g.add_argument("--kind", default="vertex", choices=["vertex", "edge"])
    g.add_argument("--out-model")
    g.add_argument("--out-weights")

    i = sub.add_parser("info", help="structural summary of a model")
    i.add_argument("--model", required=True)

    f = sub.add_parser("fuzz", help="differential test against brute force")
    f.add_argument("--problem", required=True, choices=problems)
    f.add_argument("--trials", required=True, type=int)
    f.add_argument("--n-max", required=True, type=int)
    f.add_argument("--n-min", type=int, default=2)
    f.add_argument("--seed", required=True, type=int)
    f.add_argument("--family", default="random", choices=[x.value for x in Family])
    f.add_argument("--weights", choices=[w.value for w in WeightSpec])
    return p


_COMMANDS = {
    "solve": _cmd_solve,
    "verify": _cmd_verify,
    "gen": _cmd_gen,
    "info": _cmd_info,
    "fuzz": _cmd_fuzz,
}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    try:
        return _COMMANDS[args.command](args, out)
    except InternalInvariantError as exc:
        err.write(f"internal error: {exc}\n")
        return EXIT_INTERNAL
    except (ArcDomError, _InputError) as exc:
        err.write(f"input error: {exc}\n")
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())
