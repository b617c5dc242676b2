"""Command-line interface: ``gen``, ``check``, ``solve`` and ``exp``."""
from __future__ import annotations

import argparse
import logging
import sys

from .core import (Instance, format_allocation, format_allocation_inline, parse_allocation,
                   parse_instance, serialize_instance)
from .efficiency import exists_ef1_po, exists_ef1_so, exists_mms_so, is_po, is_so, leximin_select
from .errors import InvalidArgument, ParseError, ResourceLimitError
from .experiments import EXPERIMENTS, ExperimentConfig, run
from .fairness import envy_graph_ef1, is_ef, is_ef1, is_mms, mms_cost
from .frontier import DEFAULT_MAX_AGENTS, DEFAULT_WORK_BUDGET, find_pareto_frontier
from .gen import FIXTURES, fixture, random_tree_prufer, spider_from_integers


def int_list(text: str) -> list:
    """``"2,3,4"``, or an arithmetic range written ``"10,20,...,100"``."""
    parts = [p.strip() for p in text.split(",") if p.strip()]
    try:
        if "..." in parts:
            if len(parts) != 4 or parts[2] != "...":
                raise ValueError
            first, second, last = int(parts[0]), int(parts[1]), int(parts[3])
            step = second - first
            if step <= 0:
                raise ValueError
            return list(range(first, last + 1, step))
        values = [int(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty integer list")
    return values


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _bool(x: bool) -> str:
    return "true" if x else "false"


def cmd_gen(args) -> int:
    if args.fixture:
        instance = fixture(args.fixture)
        if args.agents is not None:
            instance = Instance(args.agents, instance.tree)
    else:
        if args.prufer is not None:
            tree = random_tree_prufer(args.prufer, args.seed)
        else:
            tree = spider_from_integers(args.spider)
        instance = Instance(args.agents or 2, tree)
    sys.stdout.write(serialize_instance(instance))
    return 0


def cmd_check(args) -> int:
    instance = parse_instance(_read(args.instance))
    allocation = parse_allocation(_read(args.allocation))
    allocation.validate(instance)
    tree = instance.tree
    if args.oracle:
        from .oracle import check_allocation

        report = check_allocation(instance, allocation)
        costs, flags, mms = report.costs, (report.ef, report.ef1, report.mms, report.so,
                                           report.po), report.mms_value
    else:
        frontier = find_pareto_frontier(instance, args.max_agents, args.budget)
        mms = mms_cost(instance, frontier=frontier).value
        costs = allocation.costs(tree)
        flags = (is_ef(instance, allocation), is_ef1(instance, allocation),
                 is_mms(instance, allocation, mms), is_so(instance, allocation),
                 is_po(instance, allocation, frontier))
    print("costs=" + ",".join(str(c) for c in costs))
    print(f"mms_value={mms}")
    for name, flag in zip(("EF", "EF1", "MMS", "SO", "PO"), flags):
        print(f"{name}={_bool(flag)}")
    return 0


def cmd_solve(args) -> int:
    instance = parse_instance(_read(args.instance))
    if args.ef1:
        sys.stdout.write(format_allocation(envy_graph_ef1(instance)))
        return 0
    if args.exists == "ef1-so":
        print(exists_ef1_so(instance).format())
        return 0
    frontier = find_pareto_frontier(instance, args.max_agents, args.budget)
    if args.frontier:
        for allocation, profile in frontier:
            print(",".join(str(x) for x in profile) + "\t" + format_allocation_inline(allocation))
    elif args.exists == "ef1-po":
        print(exists_ef1_po(frontier).format())
    elif args.exists == "mms-so":
        print(exists_mms_so(instance, mms_cost(instance, frontier=frontier).value).format())
    elif args.mms:
        print(f"mms={mms_cost(instance, frontier=frontier).value}")
    else:
        sys.stdout.write(format_allocation(leximin_select(frontier)))
    return 0


def cmd_exp(args) -> int:
    config = ExperimentConfig(args.experiment, args.sizes, args.agents, args.samples,
                              args.seed, args.out)
    result = run(config)
    if not args.out:
        sys.stdout.write(result.to_csv())
    return 1 if result.errors else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fairdelivery", description="Fair allocation of delivery orders on trees.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="emit an instance in text format")
    source = gen.add_mutually_exclusive_group(required=True)
    source.add_argument("--prufer", type=int, metavar="SIZE", help="uniform random tree")
    source.add_argument("--spider", type=int_list, metavar="LEGS", help="e.g. 3,3,3,6,6,1")
    source.add_argument("--fixture", choices=FIXTURES)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--agents", type=int, default=None, help="default 2")
    gen.set_defaults(func=cmd_gen)

    limits = argparse.ArgumentParser(add_help=False)
    limits.add_argument("--max-agents", type=int, default=DEFAULT_MAX_AGENTS)
    limits.add_argument("--budget", type=int, default=DEFAULT_WORK_BUDGET,
                        help="work estimate allowed per frontier merge")

    check = sub.add_parser("check", parents=[limits], help="report fairness/efficiency")
    check.add_argument("instance")
    check.add_argument("allocation")
    check.add_argument("--oracle", action="store_true", help="judge by exhaustive search")
    check.set_defaults(func=cmd_check)

    solve = sub.add_parser("solve", parents=[limits], help="compute allocations")
    solve.add_argument("instance")
    mode = solve.add_mutually_exclusive_group()
    mode.add_argument("--frontier", action="store_true", help="print the Pareto frontier")
    mode.add_argument("--ef1", action="store_true", help="envy-graph EF1 allocation")
    mode.add_argument("--mms", action="store_true", help="print the MMS value")
    mode.add_argument("--exists", choices=("ef1-po", "ef1-so", "mms-so"))
    solve.set_defaults(func=cmd_solve)

    exp = sub.add_parser("exp", help="run a batch experiment, CSV output")
    exp.add_argument("experiment", choices=EXPERIMENTS)
    exp.add_argument("--sizes", type=int_list, required=True)
    exp.add_argument("--agents", type=int_list, default=[2])
    exp.add_argument("--samples", type=int, default=200)
    exp.add_argument("--seed", type=int, default=42)
    exp.add_argument("--out", default=None, help="CSV path (default stdout)")
    exp.set_defaults(func=cmd_exp)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="warning: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InvalidArgument, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
