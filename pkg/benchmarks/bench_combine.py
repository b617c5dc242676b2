"""Compare the compiled and pure-Python frontier kernels.

    python benchmarks/bench_combine.py [--repeat 3]

Each case runs find_pareto_frontier once per backend on the same Prüfer
trees, checks that both produce identical frontiers, and prints mean seconds
per tree and the speed-up.
"""
import argparse
import time
from unittest import mock

from fairdelivery import kernels
from fairdelivery.core import Instance
from fairdelivery.frontier import find_pareto_frontier
from fairdelivery.gen import random_tree_prufer

CASES = [(100, 2), (300, 2), (60, 3), (100, 3), (40, 4)]


def _python_only(left, right, perms):
    return kernels.python_combine(left, right, perms)


def timed(instance, python):
    start = time.perf_counter()
    if python:
        with mock.patch("fairdelivery.frontier.combine_profiles", _python_only):
            frontier = find_pareto_frontier(instance)
    else:
        frontier = find_pareto_frontier(instance)
    return time.perf_counter() - start, frontier.profiles


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3, help="trees per case")
    args = parser.parse_args()
    if kernels.compiled_combine is None:
        raise SystemExit("compiled kernel unavailable; build with "
                         "`pip install --no-build-isolation -e .`")
    print(f"{'size':>5} {'agents':>6} {'cython_s':>10} {'python_s':>10} {'speedup':>8}")
    for size, n in CASES:
        fast = slow = 0.0
        for seed in range(args.repeat):
            inst = Instance(n, random_tree_prufer(size, seed))
            t_fast, p_fast = timed(inst, python=False)
            t_slow, p_slow = timed(inst, python=True)
            assert p_fast == p_slow, "backends disagree"
            fast += t_fast
            slow += t_slow
        fast, slow = fast / args.repeat, slow / args.repeat
        print(f"{size:>5} {n:>6} {fast:>10.4f} {slow:>10.4f} {slow / fast:>7.1f}x")


if __name__ == "__main__":
    main()
