"""Tree model, instances, allocations and the coverage cost function.

Vertices are dense integer ids ``0..vertex_count-1``; the hub may sit at any
id. The cost of servicing a set ``S`` is the number of edges of the minimal
connected subgraph spanning ``S`` and the hub (one-way edge count, so a
round-trip distance is twice this value).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import InvalidArgument, ParseError

CostProfile = tuple  # non-increasing tuple of per-agent costs


@dataclass(frozen=True)
class RootedTree:
    """A tree rooted at ``hub``.

    ``parent[hub]`` is ``None``; ``children[v]`` is sorted ascending, which is
    the canonical order used for every deterministic tie-break downstream.
    ``labels`` are display names only and do not take part in equality.
    """

    vertex_count: int
    hub: int
    parent: tuple
    children: tuple
    labels: Optional[tuple] = field(default=None, compare=False)

    def __post_init__(self):
        n = self.vertex_count
        if n < 1:
            raise InvalidArgument("a tree needs at least one vertex")
        if not 0 <= self.hub < n:
            raise InvalidArgument(f"hub {self.hub} out of range 0..{n - 1}")
        if len(self.parent) != n or len(self.children) != n:
            raise InvalidArgument("parent/children tables must have one entry per vertex")
        if self.parent[self.hub] is not None:
            raise InvalidArgument("the hub cannot have a parent")
        if self.labels is not None and len(self.labels) != n:
            raise InvalidArgument("labels must name every vertex")
        seen = {self.hub}
        queue = deque([self.hub])
        while queue:
            v = queue.popleft()
            kids = self.children[v]
            if list(kids) != sorted(kids):
                raise InvalidArgument(f"children of {v} are not sorted")
            for w in kids:
                if w in seen or self.parent[w] != v:
                    raise InvalidArgument(f"inconsistent parent link at vertex {w}")
                seen.add(w)
                queue.append(w)
        if len(seen) != n:
            raise InvalidArgument("not a tree: some vertices are unreachable from the hub")

    @classmethod
    def from_edges(cls, vertex_count: int, hub: int, edges: Iterable[tuple],
                   labels: Optional[Sequence[str]] = None) -> "RootedTree":
        edges = list(edges)
        if len(edges) != vertex_count - 1:
            raise InvalidArgument(
                f"not a tree: {len(edges)} edges for {vertex_count} vertices")
        adj = [[] for _ in range(vertex_count)]
        for u, v in edges:
            if not (0 <= u < vertex_count and 0 <= v < vertex_count) or u == v:
                raise InvalidArgument(f"bad edge ({u}, {v})")
            adj[u].append(v)
            adj[v].append(u)
        if not 0 <= hub < vertex_count:
            raise InvalidArgument(f"hub {hub} out of range 0..{vertex_count - 1}")
        parent = [None] * vertex_count
        children = [[] for _ in range(vertex_count)]
        seen = [False] * vertex_count
        seen[hub] = True
        queue = deque([hub])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if seen[w]:
                    if w != parent[v]:
                        raise InvalidArgument("not a tree: the edges contain a cycle")
                    continue
                seen[w] = True
                parent[w] = v
                children[v].append(w)
                queue.append(w)
        if not all(seen):
            raise InvalidArgument("not a tree: the graph is disconnected")
        return cls(vertex_count, hub, tuple(parent),
                   tuple(tuple(sorted(c)) for c in children),
                   tuple(labels) if labels is not None else None)

    @classmethod
    def from_parents(cls, parent: Sequence[Optional[int]],
                     labels: Optional[Sequence[str]] = None) -> "RootedTree":
        roots = [v for v, p in enumerate(parent) if p is None]
        if len(roots) != 1:
            raise InvalidArgument("exactly one vertex must have no parent")
        children = [[] for _ in parent]
        for v, p in enumerate(parent):
            if p is not None:
                children[p].append(v)
        return cls(len(parent), roots[0], tuple(parent),
                   tuple(tuple(c) for c in children),
                   tuple(labels) if labels is not None else None)

    @property
    def edge_count(self) -> int:
        return self.vertex_count - 1

    @cached_property
    def order(self) -> tuple:
        """Vertices in breadth-first order from the hub (children ascending)."""
        out = [self.hub]
        for v in out:
            out.extend(self.children[v])
        return tuple(out)

    @cached_property
    def depth(self) -> tuple:
        depth = [0] * self.vertex_count
        for v in self.order[1:]:
            depth[v] = depth[self.parent[v]] + 1
        return tuple(depth)

    @cached_property
    def subtree_size(self) -> tuple:
        size = [1] * self.vertex_count
        for v in reversed(self.order[1:]):
            size[self.parent[v]] += size[v]
        return tuple(size)

    def edges(self) -> list:
        """``(parent, child)`` pairs, ordered by child id."""
        return [(p, v) for v, p in enumerate(self.parent) if p is not None]

    def non_hub(self) -> list:
        return [v for v in range(self.vertex_count) if v != self.hub]

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def vertex(self, name: str) -> int:
        """Look a vertex up by label (or by its decimal id when unlabeled)."""
        if self.labels is not None and name in self.labels:
            return self.labels.index(name)
        try:
            v = int(name)
        except ValueError:
            raise InvalidArgument(f"unknown vertex {name!r}") from None
        self._check_vertex(v)
        return v

    def fingerprint(self) -> int:
        return hash((self.vertex_count, self.hub, self.parent))

    def _check_vertex(self, v) -> None:
        if not isinstance(v, int) or not 0 <= v < self.vertex_count:
            raise InvalidArgument(f"unknown vertex {v!r}")


@dataclass(frozen=True)
class Instance:
    agents: int
    tree: RootedTree

    def __post_init__(self):
        if not isinstance(self.agents, int) or self.agents < 1:
            raise InvalidArgument(f"agent count must be a positive integer, got {self.agents!r}")

    @property
    def m(self) -> int:
        return self.tree.edge_count


@dataclass(frozen=True)
class Allocation:
    """One bundle of vertex ids per agent.

    Partial allocations use the same type; :meth:`is_complete` tells them apart.
    """

    bundles: tuple

    def __post_init__(self):
        object.__setattr__(self, "bundles", tuple(frozenset(b) for b in self.bundles))

    @classmethod
    def of(cls, *bundles) -> "Allocation":
        return cls(tuple(bundles))

    @property
    def agents(self) -> int:
        return len(self.bundles)

    def assigned(self) -> frozenset:
        return frozenset().union(*self.bundles)

    def is_complete(self, tree: RootedTree) -> bool:
        return self.assigned() == frozenset(tree.non_hub())

    def validate(self, instance: Instance, complete: bool = True) -> None:
        tree = instance.tree
        if self.agents != instance.agents:
            raise InvalidArgument(
                f"allocation has {self.agents} bundles for {instance.agents} agents")
        seen = set()
        for i, bundle in enumerate(self.bundles):
            for v in bundle:
                tree._check_vertex(v)
                if v == tree.hub:
                    raise InvalidArgument(f"bundle {i} contains the hub")
                if v in seen:
                    raise InvalidArgument(f"vertex {v} appears in two bundles")
                seen.add(v)
        if complete and len(seen) != tree.vertex_count - 1:
            raise InvalidArgument("allocation is not complete")

    def costs(self, tree: RootedTree) -> tuple:
        return tuple(_cost(tree, b) for b in self.bundles)

    def profile(self, tree: RootedTree) -> CostProfile:
        return tuple(sorted(self.costs(tree), reverse=True))

    def sorted(self, tree: RootedTree) -> "Allocation":
        """Same bundles, reordered by non-increasing cost (stable)."""
        costs = self.costs(tree)
        order = sorted(range(self.agents), key=lambda i: -costs[i])
        return Allocation(tuple(self.bundles[i] for i in order))


def _check_set(tree: RootedTree, S) -> None:
    for v in S:
        tree._check_vertex(v)
        if v == tree.hub:
            raise InvalidArgument("the hub cannot be serviced")


def _cost(tree: RootedTree, S) -> int:
    parent, hub = tree.parent, tree.hub
    marked = set()
    for v in S:
        while v != hub and v not in marked:
            marked.add(v)
            v = parent[v]
    return len(marked)


def service_cost(tree: RootedTree, S) -> int:
    """Edges of the minimal connected subgraph containing ``S`` and the hub."""
    _check_set(tree, S)
    return _cost(tree, S)


def marginal_cost(tree: RootedTree, S, v: int) -> int:
    """Extra edges needed to also service ``v`` given that ``S`` is serviced."""
    _check_set(tree, S)
    _check_set(tree, (v,))
    if v in S:
        raise InvalidArgument(f"vertex {v} is already in the set")
    marked = visited_vertices(tree, S)
    extra = 0
    while v not in marked:
        extra += 1
        v = tree.parent[v]
    return extra


def visited_vertices(tree: RootedTree, S) -> frozenset:
    """Vertex set of the minimal connected subgraph spanning ``S`` and the hub."""
    _check_set(tree, S)
    marked = {tree.hub}
    for v in S:
        while v not in marked:
            marked.add(v)
            v = tree.parent[v]
    return frozenset(marked)


def branches(tree: RootedTree) -> list:
    """Vertex sets of the subtrees hanging off the hub, one per hub child."""
    return [_descendants(tree, c) for c in tree.children[tree.hub]]


def _descendants(tree: RootedTree, u: int) -> frozenset:
    out = [u]
    for v in out:
        out.extend(tree.children[v])
    return frozenset(out)


class Subtree(NamedTuple):
    tree: RootedTree
    original: tuple  # original[new_id] -> id in the parent tree


def subtree(tree: RootedTree, u: int) -> Subtree:
    """The subtree rooted at ``u``, renumbered breadth-first from 0."""
    tree._check_vertex(u)
    original = [u]
    for v in original:
        original.extend(tree.children[v])
    new_id = {v: i for i, v in enumerate(original)}
    parent = tuple(None if v == u else new_id[tree.parent[v]] for v in original)
    children = tuple(tuple(new_id[w] for w in tree.children[v]) for v in original)
    labels = tuple(tree.labels[v] for v in original) if tree.labels else None
    return Subtree(RootedTree(len(original), 0, parent, children, labels), tuple(original))


def tree_center(tree: RootedTree) -> frozenset:
    """Vertices minimising the total distance to all other vertices."""
    n = tree.vertex_count
    size = tree.subtree_size
    total = [0] * n
    total[tree.hub] = sum(tree.depth)
    for v in tree.order[1:]:
        total[v] = total[tree.parent[v]] + n - 2 * size[v]
    best = min(total)
    return frozenset(v for v in range(n) if total[v] == best)


# -- text formats -----------------------------------------------------------

def _content_lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line


def parse_instance(text: str) -> Instance:
    """Parse the line-oriented ``agents`` / ``hub`` / ``edge`` format."""
    lines = list(_content_lines(text))
    if len(lines) < 2:
        raise ParseError("expected 'agents <n>' and 'hub <v>' lines")

    def header(index, keyword):
        number, line = lines[index]
        parts = line.split()
        if len(parts) != 2 or parts[0] != keyword:
            raise ParseError(f"expected '{keyword} <int>', got {line!r}", number)
        try:
            return int(parts[1])
        except ValueError:
            raise ParseError(f"expected an integer after '{keyword}'", number) from None

    agents = header(0, "agents")
    if agents < 1:
        raise ParseError("agent count must be at least 1", lines[0][0])
    hub = header(1, "hub")
    edges, edge_lines = [], []
    for number, line in lines[2:]:
        parts = line.split()
        if len(parts) != 3 or parts[0] != "edge":
            raise ParseError(f"expected 'edge <u> <v>', got {line!r}", number)
        try:
            u, v = int(parts[1]), int(parts[2])
        except ValueError:
            raise ParseError("edge endpoints must be integers", number) from None
        if u < 0 or v < 0:
            raise ParseError("vertex ids must be non-negative", number)
        if u == v:
            raise ParseError(f"self-loop on vertex {u}", number)
        edges.append((u, v))
        edge_lines.append(number)

    vertex_count = len(edges) + 1
    if not 0 <= hub < vertex_count:
        raise ParseError(f"hub {hub} out of range 0..{vertex_count - 1}", lines[1][0])
    uf = list(range(vertex_count))

    def find(x):
        while uf[x] != x:
            uf[x] = uf[uf[x]]
            x = uf[x]
        return x

    seen = set()
    for (u, v), number in zip(edges, edge_lines):
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"duplicate edge {u} {v}", number)
        seen.add(key)
        if u >= vertex_count or v >= vertex_count:
            raise ParseError(
                f"not a tree: vertex id {max(u, v)} out of range for "
                f"{len(edges)} edges (disconnected graph)", number)
        ru, rv = find(u), find(v)
        if ru == rv:
            raise ParseError(f"not a tree: edge {u} {v} closes a cycle", number)
        uf[ru] = rv
    return Instance(agents, RootedTree.from_edges(vertex_count, hub, edges,
                                                  _parse_labels(text, vertex_count)))


def _parse_labels(text: str, vertex_count: int):
    """Display names from an optional ``# labels: 0=h 1=a ...`` comment."""
    for raw in text.splitlines():
        raw = raw.strip()
        if raw.startswith("# labels:"):
            names = dict(item.split("=", 1) for item in raw[len("# labels:"):].split())
            try:
                return tuple(names[str(v)] for v in range(vertex_count))
            except KeyError:
                return None
    return None


def serialize_instance(instance: Instance) -> str:
    tree = instance.tree
    lines = [f"agents {instance.agents}", f"hub {tree.hub}"]
    if tree.labels is not None:
        lines.append("# labels: " + " ".join(f"{v}={tree.labels[v]}"
                                             for v in range(tree.vertex_count)))
    lines.extend(f"edge {p} {c}" for p, c in tree.edges())
    return "\n".join(lines) + "\n"


def format_allocation(allocation: Allocation) -> str:
    return "\n".join(
        f"agent {i}:" + "".join(f" {v}" for v in sorted(b))
        for i, b in enumerate(allocation.bundles)) + "\n"


def format_allocation_inline(allocation: Allocation) -> str:
    """Single-line form: the allocation text lines joined by ``"; "``."""
    return "; ".join(format_allocation(allocation).splitlines())


def parse_allocation(text: str) -> Allocation:
    bundles = []
    for number, line in _content_lines(text):
        head, sep, rest = line.partition(":")
        parts = head.split()
        if not sep or len(parts) != 2 or parts[0] != "agent":
            raise ParseError(f"expected 'agent <i>: <vertices>', got {line!r}", number)
        if parts[1] != str(len(bundles)):
            raise ParseError(f"expected agent {len(bundles)}, got agent {parts[1]}", number)
        try:
            bundles.append(frozenset(int(x) for x in rest.split()))
        except ValueError:
            raise ParseError("vertex ids must be integers", number) from None
    if not bundles:
        raise ParseError("no 'agent' lines found")
    return Allocation(tuple(bundles))
