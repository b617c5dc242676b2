"""Instance generators: random Prüfer trees, spiders and two named fixtures.

Random trees draw from numpy's PCG64 bit generator, whose output stream is
platform independent, so a ``(size, seed)`` pair always yields the same tree.
The hub of a random tree is vertex 0.
"""
from __future__ import annotations

import networkx as nx
import numpy as np

from .core import Instance, RootedTree
from .errors import InvalidArgument


def prufer_sequence(size: int, seed: int) -> list:
    if size < 2:
        raise InvalidArgument(f"tree size must be at least 2, got {size}")
    rng = np.random.Generator(np.random.PCG64(seed))
    return rng.integers(0, size, size=size - 2).tolist()


def random_tree_prufer(size: int, seed: int) -> RootedTree:
    """Uniformly random labeled tree on ``size`` vertices, rooted at vertex 0."""
    sequence = prufer_sequence(size, seed)
    if size == 2:
        edges = [(0, 1)]
    else:
        edges = list(nx.from_prufer_sequence(sequence).edges())
    return RootedTree.from_edges(size, 0, edges)


def spider_from_integers(values) -> RootedTree:
    """Hub 0 with one path of ``s`` vertices per value ``s``."""
    values = list(values)
    if not values:
        raise InvalidArgument("need at least one leg length")
    if any(not isinstance(s, int) or s < 1 for s in values):
        raise InvalidArgument(f"leg lengths must be positive integers: {values}")
    edges, next_id = [], 1
    for s in values:
        prev = 0
        for _ in range(s):
            edges.append((prev, next_id))
            prev = next_id
            next_id += 1
    return RootedTree.from_edges(next_id, 0, edges)


_FIG1 = ("h", "a", "b", "c", "d", "e", "f", "g")
_FIG6 = ("h", "a", "b", "c", "d")

FIXTURES = ("fig1", "fig6")


def fixture(name: str) -> Instance:
    """Named two-agent instances: ``fig1`` (8-vertex tree) and ``fig6`` (5-path)."""
    if name == "fig1":
        h, a, b, c, d, e, f, g = range(8)
        edges = [(a, h), (h, b), (b, c), (b, d), (d, e), (e, f), (f, g)]
        return Instance(2, RootedTree.from_edges(8, h, edges, _FIG1))
    if name == "fig6":
        h, a, b, c, d = range(5)
        edges = [(a, b), (b, h), (h, c), (c, d)]
        return Instance(2, RootedTree.from_edges(5, h, edges, _FIG6))
    raise InvalidArgument(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}")
