"""Brute-force ground truth for small instances.

Everything here is deliberately independent of the optimised code paths: bundle
costs come from simulating the closed delivery walk over an adjacency list,
and the fairness/efficiency predicates are re-implemented straight from their
definitions over the full list of allocations.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .core import Allocation, Instance, RootedTree
from .errors import InvalidArgument, ResourceLimitError

DEFAULT_GUARD = 10 ** 7

FAIRNESS = ("EF", "EF1", "MMS", "none")
EFFICIENCY = ("SO", "PO", "none")


def walk_cost(tree: RootedTree, S) -> int:
    """Half the length of the shortest closed walk from the hub through ``S``."""
    return (len(delivery_walk(tree, S)) - 1) // 2


def delivery_walk(tree: RootedTree, S) -> list:
    """Depth-first closed walk from the hub that only enters parts containing ``S``."""
    adjacency = [[] for _ in range(tree.vertex_count)]
    for u, v in tree.edges():
        adjacency[u].append(v)
        adjacency[v].append(u)
    targets = set(S)
    # which vertices have a target at or below them, seen from the hub
    up = {tree.hub: None}
    order = [tree.hub]
    for v in order:
        for w in adjacency[v]:
            if w not in up:
                up[w] = v
                order.append(w)
    needed = {v: v in targets for v in order}
    for v in reversed(order[1:]):
        if needed[v]:
            needed[up[v]] = True
    walk = [tree.hub]
    stack = [(tree.hub, iter(sorted(adjacency[tree.hub])))]
    while stack:
        v, neighbours = stack[-1]
        for w in neighbours:
            if w != up[v] and needed[w]:
                walk.append(w)
                stack.append((w, iter(sorted(adjacency[w]))))
                break
        else:
            stack.pop()
            if stack:
                walk.append(stack[-1][0])
    if not targets <= set(walk):
        raise AssertionError("walk misses a target")
    return walk


def _check_guard(instance: Instance, guard: int) -> int:
    count = instance.agents ** (instance.tree.vertex_count - 1)
    if count > guard:
        raise ResourceLimitError(
            f"{count} allocations exceed the enumeration guard of {guard}", bound=guard)
    return count


def _assignments(instance: Instance, guard: int):
    _check_guard(instance, guard)
    k = instance.tree.vertex_count - 1
    return itertools.product(range(instance.agents), repeat=k)


def enumerate_allocations(instance: Instance, visitor, guard: int = DEFAULT_GUARD) -> None:
    """Call ``visitor(allocation)`` once per complete allocation."""
    vertices = instance.tree.non_hub()
    n = instance.agents
    for assignment in _assignments(instance, guard):
        bundles = [set() for _ in range(n)]
        for v, agent in zip(vertices, assignment):
            bundles[agent].add(v)
        visitor(Allocation(tuple(bundles)))


class OracleTable:
    """Every complete allocation of a small instance with its cost vector."""

    def __init__(self, instance: Instance, guard: int = DEFAULT_GUARD):
        self.instance = instance
        tree, n = instance.tree, instance.agents
        self.vertices = tree.non_hub()
        self._bit = {v: 1 << i for i, v in enumerate(self.vertices)}
        self._cost_memo = {}
        self.assignments = []
        self.masks = []
        self.costs = []
        for assignment in _assignments(instance, guard):
            masks = [0] * n
            for v, agent in zip(self.vertices, assignment):
                masks[agent] |= self._bit[v]
            self.assignments.append(assignment)
            self.masks.append(tuple(masks))
            self.costs.append(tuple(self.cost(m) for m in masks))

    def __len__(self) -> int:
        return len(self.costs)

    def cost(self, mask: int) -> int:
        if mask not in self._cost_memo:
            members = [v for v in self.vertices if mask & self._bit[v]]
            self._cost_memo[mask] = walk_cost(self.instance.tree, members)
        return self._cost_memo[mask]

    def allocation(self, index: int) -> Allocation:
        bundles = [set() for _ in range(self.instance.agents)]
        for v, agent in zip(self.vertices, self.assignments[index]):
            bundles[agent].add(v)
        return Allocation(tuple(bundles))

    @cached_property
    def mms(self) -> int:
        return min(max(c) for c in self.costs)

    @cached_property
    def undominated_vectors(self) -> frozenset:
        vectors = set(self.costs)
        keep = set()
        for c in vectors:
            if not any(d != c and all(x <= y for x, y in zip(d, c)) for d in vectors):
                keep.add(c)
        return frozenset(keep)

    @cached_property
    def pareto_profiles(self) -> frozenset:
        return frozenset(tuple(sorted(c, reverse=True)) for c in self.undominated_vectors)

    def is_ef(self, index: int) -> bool:
        c = self.costs[index]
        return all(c[i] <= c[j] for i in range(len(c)) for j in range(len(c)))

    def is_ef1(self, index: int) -> bool:
        masks, c = self.masks[index], self.costs[index]
        n = len(c)
        for i in range(n):
            if masks[i] == 0:
                continue
            drops = [self.cost(masks[i] & ~bit) for bit in self._bits_of(masks[i])]
            for j in range(n):
                if i != j and min(drops) > c[j]:
                    return False
        return True

    def is_mms(self, index: int) -> bool:
        return max(self.costs[index]) <= self.mms

    def is_so(self, index: int) -> bool:
        return sum(self.costs[index]) == self.instance.tree.edge_count

    def is_po(self, index: int) -> bool:
        return self.costs[index] in self.undominated_vectors

    def satisfies(self, index: int, fairness: str = "none", efficiency: str = "none") -> bool:
        fair = {"EF": self.is_ef, "EF1": self.is_ef1, "MMS": self.is_mms,
                "none": lambda i: True}[fairness]
        eff = {"SO": self.is_so, "PO": self.is_po, "none": lambda i: True}[efficiency]
        return eff(index) and fair(index)

    def dominated(self, index: int) -> bool:
        return not self.is_po(index)

    def _bits_of(self, mask: int):
        while mask:
            low = mask & -mask
            yield low
            mask ^= low


def brute_pareto_profiles(instance: Instance, guard: int = DEFAULT_GUARD) -> frozenset:
    return OracleTable(instance, guard).pareto_profiles


def brute_mms(instance: Instance, guard: int = DEFAULT_GUARD) -> tuple:
    """``(mms_value, witness)`` by exhaustive search; witness is the first minimiser."""
    table = OracleTable(instance, guard)
    for index, c in enumerate(table.costs):
        if max(c) == table.mms:
            return table.mms, table.allocation(index)


def brute_exists(instance: Instance, fairness: str = "none", efficiency: str = "none",
                 guard: int = DEFAULT_GUARD, table: OracleTable = None):
    """First allocation (enumeration order) meeting both requested properties."""
    from .efficiency import ExistenceVerdict

    if fairness not in FAIRNESS or efficiency not in EFFICIENCY:
        raise InvalidArgument(f"unknown property combination {fairness}+{efficiency}")
    table = table or OracleTable(instance, guard)
    for index in range(len(table)):
        if table.satisfies(index, fairness, efficiency):
            return ExistenceVerdict(True, table.allocation(index), "exhaustive")
    return ExistenceVerdict(False, None, "exhaustive")


@dataclass(frozen=True)
class OracleReport:
    costs: tuple
    ef: bool
    ef1: bool
    mms: bool
    mms_value: int
    so: bool
    po: bool


def check_allocation(instance: Instance, allocation: Allocation,
                     guard: int = DEFAULT_GUARD) -> OracleReport:
    """Judge one allocation against the exhaustive table."""
    allocation.validate(instance)
    table = OracleTable(instance, guard)
    agent_of = {v: i for i, b in enumerate(allocation.bundles) for v in b}
    index = table.assignments.index(tuple(agent_of[v] for v in table.vertices))
    return OracleReport(table.costs[index], table.is_ef(index), table.is_ef1(index),
                        table.is_mms(index), table.mms, table.is_so(index),
                        table.is_po(index))
