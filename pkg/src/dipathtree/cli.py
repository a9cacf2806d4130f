"""Command-line front end.

Exit status is 0 on success, 1 when ``verify`` rejects a solution and 2 on
unreadable or invalid input.
"""

from __future__ import annotations

import argparse
import random
import sys
from typing import Sequence, TextIO

from .coloring import color_dipaths
from .dot import export_dot
from .errors import InstanceError, SizeLimit
from .formats import (
    Instance,
    Solution,
    emit_instance,
    emit_solution,
    instance_to_json,
    parse_instance,
    parse_solution,
    solution_to_json,
)
from .generate import SHAPES, random_dipaths, random_per_arc_orders, random_ranking, random_tree
from .kernel import PriorityRelation, kernel, validate_priorities
from .multicut import multicut
from .tree import DirectedTree, Dipath, index_paths, root_tree
from .verify import check_coloring, check_kernel, check_multicut

EXIT_OK, EXIT_INVALID, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    """Anything that should end the program with exit status 2."""


def _read(path: str, stdin: TextIO) -> str:
    if path == "-":
        return stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def load_instance(path: str, stdin: TextIO = sys.stdin) -> tuple[Instance, DirectedTree, list[Dipath]]:
    inst = parse_instance(_read(path, stdin))
    tree, paths = inst.build()
    return inst, tree, paths


def _root(args: argparse.Namespace, inst: Instance) -> int:
    if args.root is not None:
        if not 0 <= args.root < inst.n:
            raise InputError(f"--root {args.root} not in 0..{inst.n - 1}")
        return args.root
    return inst.root if inst.root is not None else 0


def _relation(inst: Instance, paths: Sequence[Dipath], index) -> PriorityRelation:
    """The instance's priorities, defaulting to ranking dipaths by id."""
    rel = inst.relation() or PriorityRelation.ranking(range(len(paths)))
    return validate_priorities(paths, index, rel)


# --------------------------------------------------------------------------
# solvers


def cmd_color(inst: Instance, tree: DirectedTree, paths: Sequence[Dipath], root: int) -> Solution:
    res = color_dipaths(tree, paths, start=root)
    return Solution("coloring", color=dict(res.color), num_colors=res.num_colors, omega=res.omega)


def cmd_multicut(inst: Instance, tree: DirectedTree, paths: Sequence[Dipath], root: int) -> Solution:
    rooted = root_tree(tree, root)
    cert = multicut(rooted, index_paths(rooted, paths))
    return Solution("multicut", packed=set(cert.stable_set), cut=set(cert.cut))


def cmd_kernel(inst: Instance, tree: DirectedTree, paths: Sequence[Dipath], root: int) -> Solution:
    rooted = root_tree(tree, root)
    index = index_paths(rooted, paths)
    res = kernel(rooted, index, _relation(inst, paths, index))
    return Solution("kernel", kernel=set(res.kernel), witness=dict(res.witness))


def cmd_verify(inst: Instance, tree: DirectedTree, paths: Sequence[Dipath], sol: Solution) -> list[str]:
    if sol.kind == "coloring":
        return check_coloring(tree, paths, sol)
    if sol.kind == "multicut":
        return check_multicut(tree, paths, sol)
    index = index_paths(root_tree(tree, 0), paths)
    return check_kernel(tree, paths, _relation(inst, paths, index), sol)


def cmd_gen(
    seed: int, n: int, p: int, shape: str = "random", priority: str = "none", max_len: int | None = None
) -> Instance:
    if n < 1 or p < 0:
        raise InputError("need n >= 1 and p >= 0")
    rng = random.Random(seed)
    tree = random_tree(rng, n, shape)
    paths = random_dipaths(rng, tree, p, shape, max_len) if n > 1 else []
    rel = None
    if priority == "ranking":
        rel = random_ranking(rng, len(paths))
    elif priority == "per-arc":
        rel = random_per_arc_orders(rng, tree, paths)
    return Instance.from_problem(tree, paths, rel)


# --------------------------------------------------------------------------
# output


def _table(header: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    cells = [list(map(str, header))] + [list(map(str, r)) for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def pretty_solution(sol: Solution, tree: DirectedTree) -> str:
    if sol.kind == "coloring":
        head = f"{sol.num_colors} colours, max arc load {sol.omega}\n"
        return head + _table(("dipath", "colour"), sorted(sol.color.items()))
    if sol.kind == "multicut":
        head = f"{len(sol.packed)} arc-disjoint dipaths, cut of {len(sol.cut)} arcs\n"
        rows = [(a, f"{tree.arcs[a][0]}->{tree.arcs[a][1]}") for a in sorted(sol.cut)]
        packed = "packed: " + " ".join(map(str, sorted(sol.packed))) + "\n"
        return head + packed + _table(("cut arc", "tail->head"), rows)
    head = f"kernel of {len(sol.kernel)} dipaths: " + " ".join(map(str, sorted(sol.kernel))) + "\n"
    rows = [(q, a, p) for q, (a, p) in sorted(sol.witness.items())]
    return head + _table(("dipath", "arc", "beaten by"), rows)


def _emit(sol: Solution, args: argparse.Namespace, tree: DirectedTree) -> str:
    if args.pretty:
        return pretty_solution(sol, tree)
    if args.format == "json":
        return solution_to_json(sol)
    return emit_solution(sol)


# --------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dipathtree",
        description="Colouring, multicut and kernels for dipaths in directed trees.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text", help="output format")
    common.add_argument("--pretty", action="store_true", help="human-readable tables instead of records")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, what in (
        ("color", "minimum colouring"),
        ("multicut", "maximum arc-disjoint packing with a minimum multicut"),
        ("kernel", "kernel for the instance's priorities (default: rank by dipath id)"),
    ):
        p = sub.add_parser(name, parents=[common], help=what)
        p.add_argument("instance", nargs="?", default="-", help="instance file, '-' for stdin")
        p.add_argument("--root", type=int, help="root / start vertex (overrides the instance)")

    p = sub.add_parser("verify", parents=[common], help="check a solution against an instance")
    p.add_argument("instance")
    p.add_argument("solution", nargs="?", default="-")

    p = sub.add_parser("gen", parents=[common], help="seeded random instance")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-n", "--vertices", type=int, default=10)
    p.add_argument("-p", "--paths", type=int, default=10)
    p.add_argument("--shape", choices=SHAPES, default="random")
    p.add_argument("--priority", choices=("none", "ranking", "per-arc"), default="none")
    p.add_argument("--max-len", type=int, default=None, help="longest random walk, in arcs")
    p.add_argument("--root", type=int, help="record this root in the instance")

    p = sub.add_parser("export-dot", parents=[common], help="Graphviz rendering")
    p.add_argument("instance", nargs="?", default="-")
    p.add_argument("--solution", help="solution file to highlight")
    return parser


def run(argv: Sequence[str] | None = None, stdin: TextIO = sys.stdin, stdout: TextIO = sys.stdout,
        stderr: TextIO = sys.stderr) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args, stdin, stdout)
    except (InputError, InstanceError, SizeLimit) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT


def _dispatch(args: argparse.Namespace, stdin: TextIO, stdout: TextIO) -> int:
    if args.command == "gen":
        inst = cmd_gen(args.seed, args.vertices, args.paths, args.shape, args.priority, args.max_len)
        if args.root is not None:
            if not 0 <= args.root < inst.n:
                raise InputError(f"--root {args.root} not in 0..{inst.n - 1}")
            inst.root = args.root
        stdout.write(instance_to_json(inst, 2 if args.pretty else None) if args.format == "json" else emit_instance(inst))
        return EXIT_OK

    if args.command == "verify":
        if args.instance == "-" and args.solution == "-":
            raise InputError("instance and solution cannot both come from stdin")
        inst, tree, paths = load_instance(args.instance, stdin)
        sol = parse_solution(_read(args.solution, stdin))
        problems = cmd_verify(inst, tree, paths, sol)
        for line in problems:
            stdout.write(f"invalid: {line}\n")
        if problems:
            return EXIT_INVALID
        stdout.write(f"ok: {sol.kind} solution is valid\n")
        return EXIT_OK

    inst, tree, paths = load_instance(args.instance, stdin)
    if args.command == "export-dot":
        sol = parse_solution(_read(args.solution, stdin)) if args.solution else None
        stdout.write(export_dot(tree, paths, sol))
        return EXIT_OK

    solver = {"color": cmd_color, "multicut": cmd_multicut, "kernel": cmd_kernel}[args.command]
    sol = solver(inst, tree, paths, _root(args, inst))
    stdout.write(_emit(sol, args, tree))
    return EXIT_OK


def main() -> None:
    sys.exit(run())
