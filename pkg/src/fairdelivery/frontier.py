"""Pareto frontiers of delivery instances.

The frontier is computed bottom-up over the tree. Every vertex ``v`` gets the
frontier of the instance rooted at ``v`` (its subtree, ``v`` acting as hub):
start from the all-empty allocation and fold in one child ``u`` at a time,
first adding ``u`` to the costliest bundle of each of ``u``'s allocations and
then combining both lists over all agent permutations, keeping only
undominated cost profiles.

Costs of disjoint branches simply add up, so the whole computation runs on
sorted cost profiles. Each kept profile records which pair of operands and
which permutation produced it; the witness allocations are rebuilt from these
records only when asked for.
"""
from __future__ import annotations

import itertools
from typing import Optional

import numpy as np

from .core import Allocation, Instance
from .errors import InvalidArgument, ResourceLimitError
from .kernels import combine_profiles

DEFAULT_MAX_AGENTS = 6
DEFAULT_WORK_BUDGET = 10 ** 9


def weakly_dominates(p, q) -> bool:
    """True when every entry of ``p`` is at most the matching entry of ``q``."""
    if len(p) != len(q):
        raise InvalidArgument(f"profile lengths differ: {len(p)} vs {len(q)}")
    return all(a <= b for a, b in zip(p, q))


def strictly_dominates(p, q) -> bool:
    return weakly_dominates(p, q) and tuple(p) != tuple(q)


def _permutations(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)


def _sort_order(sums) -> list:
    return sorted(range(len(sums)), key=lambda i: -sums[i])


class Frontier:
    """Allocations whose sorted cost profiles form a Pareto frontier.

    ``profiles`` are distinct and ascending in lexicographic order, so the
    first entry is the leximin-best one. Allocations are sorted to match their
    profile (bundle 0 is the costliest).
    """

    def __init__(self, agents: int, profiles, allocations=None, builder=None,
                 fingerprint=None):
        self.agents = agents
        self.profiles = [tuple(int(x) for x in p) for p in profiles]
        self._allocations = list(allocations) if allocations is not None \
            else [None] * len(self.profiles)
        self._builder = builder
        self.fingerprint = fingerprint

    @classmethod
    def from_allocations(cls, instance: Instance, allocations) -> "Frontier":
        """Wrap explicit (possibly partial) allocations, sorted by cost."""
        tree = instance.tree
        allocations = [a.sorted(tree) for a in allocations]
        return cls(instance.agents, [a.costs(tree) for a in allocations], allocations)

    def __len__(self) -> int:
        return len(self.profiles)

    def __iter__(self):
        return iter(self.entries)

    def __repr__(self) -> str:
        return f"Frontier(agents={self.agents}, profiles={self.profiles})"

    def allocation(self, k: int) -> Allocation:
        if self._allocations[k] is None:
            self._allocations[k] = self._builder(k)
        return self._allocations[k]

    @property
    def entries(self) -> list:
        return [(self.allocation(k), p) for k, p in enumerate(self.profiles)]

    def profile_set(self) -> set:
        return set(self.profiles)

    def matches(self, instance: Instance) -> bool:
        return self.fingerprint == (instance.agents, instance.tree.fingerprint())


class _Witnesses:
    """Rebuilds frontier allocations from per-vertex combine records."""

    def __init__(self, tree, agents, perms, stages, records):
        self.tree = tree
        self.agents = agents
        self.perms = perms.tolist()
        self.stages = stages      # v -> [profiles after 0, 1, ... children]
        self.records = records    # v -> [provenance array per child]

    def __call__(self, k: int) -> Allocation:
        n, tree = self.agents, self.tree
        bundles = [set() for _ in range(n)]
        stack = [(tree.hub, k, list(range(n)))]
        while stack:
            v, k, target = stack.pop()
            kids = tree.children[v]
            for j in range(len(kids) - 1, -1, -1):
                u = kids[j]
                prev = self.stages[v][j]
                lifted = _lift(self.stages[u][-1])
                ia, ib, ip = (int(x) for x in self.records[v][j][k])
                perm = self.perms[ip]
                sums = [int(prev[ia, i] + lifted[ib, perm[i]]) for i in range(n)]
                prev_target, child_target = [0] * n, [0] * n
                for q, i in enumerate(_sort_order(sums)):
                    prev_target[i] = target[q]
                    child_target[perm[i]] = target[q]
                bundles[child_target[0]].add(u)
                stack.append((u, ib, child_target))
                k, target = ia, prev_target
        return Allocation(tuple(bundles))


def _lift(profiles: np.ndarray) -> np.ndarray:
    """Profiles after adding the subtree root to the costliest bundle."""
    out = profiles.copy()
    out[out > 0] += 1
    if out.shape[0] and out[0, 0] == 0:
        out[0, 0] = 1
    return out


def find_pareto_frontier(instance: Instance, max_agents: int = DEFAULT_MAX_AGENTS,
                         work_budget: int = DEFAULT_WORK_BUDGET) -> Frontier:
    """Pareto frontier of ``instance``: one allocation per undominated sorted profile."""
    n, tree = instance.agents, instance.tree
    if n > max_agents:
        raise ResourceLimitError(
            f"{n} agents exceeds the configured limit of {max_agents}", bound=max_agents)
    perms = _permutations(n)
    stages, records = {}, {}
    for v in reversed(tree.order):
        current = np.zeros((1, n), dtype=np.int64)
        stage, record, edges = [current], [], 0
        for u in tree.children[v]:
            lifted = _lift(stages[u][-1])
            estimate = current.shape[0] * lifted.shape[0] * perms.shape[0]
            if estimate > work_budget:
                raise ResourceLimitError(
                    f"combining frontiers of sizes {current.shape[0]} and "
                    f"{lifted.shape[0]} needs ~{estimate} steps, budget is {work_budget}",
                    bound=estimate)
            current, provenance = combine_profiles(current, lifted, perms)
            edges += tree.subtree_size[u]
            assert current.shape[0] <= (edges + 1) ** n, "frontier exceeds (m+1)^n"
            stage.append(current)
            record.append(provenance)
        stages[v], records[v] = stage, record
    top = stages[tree.hub][-1]
    builder = _Witnesses(tree, n, perms, stages, records)
    return Frontier(n, top.tolist(), builder=builder,
                    fingerprint=(n, tree.fingerprint()))


def combine_frontiers(first: Frontier, second: Frontier, agents: Optional[int] = None) -> Frontier:
    """Undominated merges ``sort(A + pi(B))`` of two frontiers over disjoint vertices."""
    n = first.agents if agents is None else agents
    if first.agents != n or second.agents != n:
        raise InvalidArgument("both frontiers must have the same number of agents")
    left_vertices = set().union(*(a.assigned() for a, _ in first.entries))
    right_vertices = set().union(*(a.assigned() for a, _ in second.entries))
    overlap = left_vertices & right_vertices
    if overlap:
        raise InvalidArgument(f"frontiers share vertices {sorted(overlap)}")
    perms = _permutations(n)
    left = np.array(first.profiles, dtype=np.int64).reshape(-1, n)
    right = np.array(second.profiles, dtype=np.int64).reshape(-1, n)
    profiles, provenance = combine_profiles(left, right, perms)
    allocations = []
    for ia, ib, ip in provenance.tolist():
        a, b, perm = first.allocation(ia), second.allocation(ib), perms[ip].tolist()
        sums = [first.profiles[ia][i] + second.profiles[ib][perm[i]] for i in range(n)]
        allocations.append(Allocation(tuple(
            a.bundles[i] | b.bundles[perm[i]] for i in _sort_order(sums))))
    return Frontier(n, profiles.tolist(), allocations)


def frontier_stats(frontier: Frontier) -> list:
    """``(total_cost, max_gap)`` per entry, keeping the cheapest entry per gap."""
    best = {}
    for p in frontier.profiles:
        total, gap = sum(p), p[0] - p[-1]
        if gap not in best or total < best[gap]:
            best[gap] = total
    out, seen = [], set()
    for p in frontier.profiles:
        gap = p[0] - p[-1]
        if gap not in seen:
            seen.add(gap)
            out.append((best[gap], gap))
    return out
