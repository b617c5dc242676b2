"""Efficiency notions (SO, PO, leximin) and existence deciders for fair+efficient pairs."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import Allocation, Instance, branches, format_allocation_inline, tree_center
from .errors import InvalidArgument, ResourceLimitError
from .fairness import is_ef1

DEFAULT_BRANCH_LIMIT = 24

REASONS = ("balanced-branch-partition", "center-precondition-failed", "leximin-gap",
           "frontier-search", "branch-packing", "exhaustive")


@dataclass(frozen=True)
class ExistenceVerdict:
    exists: bool
    witness: Optional[Allocation]
    reason: str

    def __post_init__(self):
        if self.exists and self.witness is None:
            raise InvalidArgument("a positive verdict needs a witness")

    def format(self) -> str:
        witness = "-"
        if self.witness is not None:
            witness = format_allocation_inline(self.witness)
        return f"exists={'true' if self.exists else 'false'} reason={self.reason} witness={witness}"


def is_so(instance: Instance, allocation: Allocation) -> bool:
    """Total cost equals the edge count (equivalently no branch is split)."""
    allocation.validate(instance)
    tree = instance.tree
    by_total = sum(allocation.costs(tree)) == tree.edge_count
    by_branches = all(any(branch <= bundle for bundle in allocation.bundles)
                      for branch in branches(tree))
    assert by_total == by_branches, "SO criteria disagree"
    return by_total


def is_po(instance: Instance, allocation: Allocation, frontier) -> bool:
    """Pareto optimality, read off the instance's frontier.

    Agents share one cost function, so whether an allocation is dominated
    depends only on its sorted profile.
    """
    if not frontier.matches(instance):
        raise InvalidArgument("frontier was computed for a different instance")
    allocation.validate(instance)
    return allocation.profile(instance.tree) in frontier.profile_set()


def leximin_compare(p, q) -> int:
    """-1 if ``p`` is leximin-better than ``q``, 1 if worse, 0 if equal."""
    if len(p) != len(q):
        raise InvalidArgument(f"profile lengths differ: {len(p)} vs {len(q)}")
    for a, b in zip(p, q):
        if a != b:
            return -1 if a < b else 1
    return 0


def _leximin_index(frontier) -> int:
    if not len(frontier):
        raise RuntimeError("empty frontier")
    best = 0
    for k in range(1, len(frontier)):
        if leximin_compare(frontier.profiles[k], frontier.profiles[best]) < 0:
            best = k
    return best


def leximin_select(frontier) -> Allocation:
    return frontier.allocation(_leximin_index(frontier))


def exists_ef1_po(frontier) -> ExistenceVerdict:
    """EF1 and PO are compatible exactly when the leximin profile has spread <= 1."""
    k = _leximin_index(frontier)
    profile = frontier.profiles[k]
    if profile[0] - profile[-1] <= 1:
        return ExistenceVerdict(True, frontier.allocation(k), "leximin-gap")
    return ExistenceVerdict(False, None, "leximin-gap")


def _pack(sizes, bins, capacity, max_over=None, over=None):
    """Assign ``sizes`` to ``bins`` without exceeding ``capacity`` per bin.

    Optionally at most ``max_over`` bins may end up with a load above ``over``.
    Returns a bin index per size, or ``None``. Sizes are tried largest first
    and bins with equal loads are treated as interchangeable.
    """
    order = sorted(range(len(sizes)), key=lambda i: -sizes[i])
    loads = [0] * bins
    placement = [None] * len(sizes)

    def overfull():
        return over is not None and sum(1 for x in loads if x > over) > max_over

    def place(pos):
        if pos == len(order):
            return True
        item = order[pos]
        tried = set()
        for b in range(bins):
            if loads[b] in tried or loads[b] + sizes[item] > capacity:
                continue
            tried.add(loads[b])
            loads[b] += sizes[item]
            if not overfull():
                placement[item] = b
                if place(pos + 1):
                    return True
            loads[b] -= sizes[item]
        return False

    return placement if place(0) else None


def _witness_from_placement(instance, branch_sets, placement) -> Allocation:
    bundles = [set() for _ in range(instance.agents)]
    for branch, b in zip(branch_sets, placement):
        bundles[b] |= branch
    return Allocation(tuple(bundles)).sorted(instance.tree)


def _branch_sets(instance, branch_limit):
    branch_sets = branches(instance.tree)
    if len(branch_sets) > branch_limit:
        raise ResourceLimitError(
            f"{len(branch_sets)} hub branches exceed the limit of {branch_limit}",
            bound=branch_limit)
    return branch_sets


def exists_ef1_so(instance: Instance, branch_limit: int = DEFAULT_BRANCH_LIMIT) -> ExistenceVerdict:
    """EF1+SO exists iff whole branches split into parts whose sizes differ by <= 1."""
    tree, n = instance.tree, instance.agents
    if n > 1 and tree.hub not in tree_center(tree):
        return ExistenceVerdict(False, None, "center-precondition-failed")
    branch_sets = _branch_sets(instance, branch_limit)
    m = tree.edge_count
    low, extra = divmod(m, n)
    placement = _pack([len(b) for b in branch_sets], n, low + (1 if extra else 0),
                      max_over=extra, over=low)
    if placement is None:
        return ExistenceVerdict(False, None, "balanced-branch-partition")
    witness = _witness_from_placement(instance, branch_sets, placement)
    return ExistenceVerdict(True, witness, "balanced-branch-partition")


def exists_mms_so(instance: Instance, mms_value: int,
                  branch_limit: int = DEFAULT_BRANCH_LIMIT) -> ExistenceVerdict:
    """MMS+SO exists iff whole branches pack into ``n`` bins of capacity ``mms_value``."""
    branch_sets = _branch_sets(instance, branch_limit)
    placement = _pack([len(b) for b in branch_sets], instance.agents, mms_value)
    if placement is None:
        return ExistenceVerdict(False, None, "branch-packing")
    witness = _witness_from_placement(instance, branch_sets, placement)
    return ExistenceVerdict(True, witness, "branch-packing")


def cost_gap_dominated_check(instance: Instance, allocation: Allocation,
                             guard: int = None) -> bool:
    """True when an EF1 allocation has a cost gap above 1 and is Pareto dominated.

    Dominance is decided by exhaustive search, so this is a test utility for
    small instances.
    """
    from .oracle import DEFAULT_GUARD, OracleTable

    if not is_ef1(instance, allocation):
        raise InvalidArgument("allocation is not EF1")
    costs = allocation.costs(instance.tree)
    if max(costs) - min(costs) <= 1:
        return False
    table = OracleTable(instance, guard or DEFAULT_GUARD)
    return costs not in table.undominated_vectors
