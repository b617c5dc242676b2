"""Fairness notions (EF, EF1, MMS) and the envy-graph EF1 construction."""
from __future__ import annotations

from dataclasses import dataclass

from .core import Allocation, Instance, _cost
from .errors import InvalidArgument


@dataclass(frozen=True)
class MmsResult:
    value: int
    witness: Allocation
    method: str


def is_ef(instance: Instance, allocation: Allocation) -> bool:
    allocation.validate(instance)
    costs = allocation.costs(instance.tree)
    return max(costs) <= min(costs)


def _ef1_threshold(tree, bundle) -> int:
    """Lowest cost reachable by dropping a single vertex from ``bundle``."""
    return min(_cost(tree, bundle - {x}) for x in bundle)


def is_ef1(instance: Instance, allocation: Allocation) -> bool:
    """Envy towards any agent disappears after removing one vertex from the envier."""
    allocation.validate(instance)
    tree = instance.tree
    costs = allocation.costs(tree)
    for i, bundle in enumerate(allocation.bundles):
        if not bundle:
            continue
        others = [c for j, c in enumerate(costs) if j != i]
        if others and _ef1_threshold(tree, bundle) > min(others):
            return False
    return True


def mms_cost(instance: Instance, method: str = "frontier", guard: int = None,
             frontier=None) -> MmsResult:
    """Minimax share: the smallest achievable maximum bundle cost.

    ``method="frontier"`` reads it off the Pareto frontier (some minimiser of
    the maximum cost is Pareto optimal); ``"brute-force"`` enumerates every
    allocation and is limited by ``guard``.
    """
    if method == "frontier":
        from .frontier import find_pareto_frontier

        frontier = frontier if frontier is not None else find_pareto_frontier(instance)
        best = min(range(len(frontier)), key=lambda k: frontier.profiles[k])
        return MmsResult(frontier.profiles[best][0], frontier.allocation(best), "frontier")
    if method == "brute-force":
        from .oracle import DEFAULT_GUARD, brute_mms

        value, witness = brute_mms(instance, guard or DEFAULT_GUARD)
        return MmsResult(value, witness, "brute-force")
    raise InvalidArgument(f"unknown MMS method {method!r}")


def is_mms(instance: Instance, allocation: Allocation, mms_value: int) -> bool:
    allocation.validate(instance)
    return max(allocation.costs(instance.tree)) <= mms_value


def envy_graph_ef1(instance: Instance) -> Allocation:
    """Repeatedly give the cheapest-so-far agent the vertex of least marginal cost.

    Ties go to the lowest agent index and then the lowest vertex id. With
    identical costs the cheapest agent is never envied, so no bundle rotation
    is needed.
    """
    tree, n = instance.tree, instance.agents
    parent, hub = tree.parent, tree.hub
    bundles = [set() for _ in range(n)]
    visited = [{hub} for _ in range(n)]
    costs = [0] * n
    unassigned = tree.non_hub()
    while unassigned:
        agent = min(range(n), key=lambda a: (costs[a], a))
        seen = visited[agent]
        best_vertex, best_extra = None, None
        for v in unassigned:
            extra, u = 0, v
            while u not in seen:
                extra += 1
                u = parent[u]
            if best_extra is None or extra < best_extra:
                best_vertex, best_extra = v, extra
                if extra == 0:
                    break
        unassigned.remove(best_vertex)
        bundles[agent].add(best_vertex)
        costs[agent] += best_extra
        u = best_vertex
        while u not in seen:
            seen.add(u)
            u = parent[u]
    allocation = Allocation(tuple(bundles))
    assert is_ef1(instance, allocation), "envy-graph output is not EF1"
    return allocation
