import pytest
from hypothesis import given
from hypothesis import strategies as st

from fairdelivery.core import (Allocation, Instance, RootedTree, branches, format_allocation,
                               marginal_cost, parse_allocation, parse_instance,
                               serialize_instance, service_cost, subtree, tree_center,
                               visited_vertices)
from fairdelivery.errors import InvalidArgument, ParseError
from fairdelivery.gen import fixture, spider_from_integers

from _helpers import alloc, ids, path, trees


@pytest.fixture
def fig1():
    return fixture("fig1").tree


class TestServiceCost:
    def test_single_deep_vertex(self, fig1):
        assert service_cost(fig1, ids(fig1, "f")) == 4

    def test_shared_path(self, fig1):
        assert service_cost(fig1, ids(fig1, "fg")) == 5

    def test_empty(self, fig1):
        assert service_cost(fig1, set()) == 0

    def test_two_branches(self, fig1):
        assert service_cost(fig1, ids(fig1, "ac")) == 3

    def test_rejects_hub(self, fig1):
        with pytest.raises(InvalidArgument):
            service_cost(fig1, {fig1.hub})

    def test_rejects_unknown_vertex(self, fig1):
        with pytest.raises(InvalidArgument):
            service_cost(fig1, {99})


class TestMarginalCost:
    def test_on_visited_path(self, fig1):
        assert marginal_cost(fig1, ids(fig1, "fg"), fig1.vertex("e")) == 0

    def test_other_branch(self, fig1):
        assert marginal_cost(fig1, ids(fig1, "a"), fig1.vertex("f")) == 4

    def test_from_empty_is_depth(self, fig1):
        assert marginal_cost(fig1, set(), fig1.vertex("g")) == 5

    def test_member_rejected(self, fig1):
        with pytest.raises(InvalidArgument):
            marginal_cost(fig1, ids(fig1, "f"), fig1.vertex("f"))


def test_visited_vertices(fig1):
    assert visited_vertices(fig1, ids(fig1, "g")) == ids(fig1, "hbdefg")
    assert visited_vertices(fig1, set()) == {fig1.hub}
    assert visited_vertices(fig1, ids(fig1, "ac")) == ids(fig1, "habc")


def test_branches(fig1):
    assert branches(fig1) == [ids(fig1, "a"), ids(fig1, "bcdefg")]
    assert [len(b) for b in branches(path(2))] == [1]
    spider = spider_from_integers([3, 3, 3, 6, 6, 1])
    assert [len(b) for b in branches(spider)] == [3, 3, 3, 6, 6, 1]


class TestSubtree:
    def test_inner_vertex(self, fig1):
        sub = subtree(fig1, fig1.vertex("b"))
        assert sub.tree.vertex_count == 6 and sub.tree.hub == 0
        assert set(sub.original) == ids(fig1, "bcdefg")
        assert sub.tree.label(0) == "b"
        # parent links survive the renumbering
        for new, old in enumerate(sub.original[1:], start=1):
            assert sub.original[sub.tree.parent[new]] == fig1.parent[old]

    def test_leaf(self, fig1):
        sub = subtree(fig1, fig1.vertex("g"))
        assert sub.tree.vertex_count == 1 and sub.original == (fig1.vertex("g"),)

    def test_hub_is_identity(self, fig1):
        sub = subtree(fig1, fig1.hub)
        assert sub.tree == fig1 and sub.original == tuple(range(8))

    def test_unknown_vertex(self, fig1):
        with pytest.raises(InvalidArgument):
            subtree(fig1, 8)


class TestCenter:
    def test_fig1(self, fig1):
        assert tree_center(fig1) == ids(fig1, "bd")

    def test_single_vertex(self):
        assert tree_center(RootedTree.from_parents([None])) == {0}

    def test_path_of_four(self):
        assert tree_center(path(4)) == {1, 2}

    @given(trees(1, 30))
    def test_one_or_two_adjacent(self, tree):
        center = sorted(tree_center(tree))
        assert len(center) in (1, 2)
        if len(center) == 2:
            u, v = center
            assert tree.parent[u] == v or tree.parent[v] == u


class TestTextFormat:
    def test_single_edge(self):
        inst = parse_instance("agents 2\nhub 0\nedge 0 1\n")
        assert inst.agents == 2 and inst.tree.vertex_count == 2 and inst.m == 1

    def test_fixture_round_trip(self):
        inst = fixture("fig1")
        again = parse_instance(serialize_instance(inst))
        assert again == inst and again.tree.vertex_count == 8 and again.agents == 2
        assert again.tree.labels == inst.tree.labels

    def test_comments_and_blank_lines(self):
        inst = parse_instance("# demo\nagents 1\n\nhub 1  # middle\nedge 0 1\nedge 1 2\n")
        assert inst.tree.hub == 1 and inst.tree.children[1] == (0, 2)

    @pytest.mark.parametrize("text, needle, line", [
        ("agents 2\nhub 0\nedge 0 1\nedge 1 2\nedge 2 0\n", "not a tree", 5),
        ("agents 2\nhub 0\nedge 0 1\nedge 1 0\n", "duplicate edge", 4),
        ("agents 2\nhub 5\nedge 0 1\n", "hub 5 out of range", 2),
        ("agents 2\nhub 0\nedge 0 1\nedge 2 3\n", "not a tree", 4),
        ("agents 2\nhub 0\nedge 0 x\n", "integers", 3),
        ("agent 2\nhub 0\nedge 0 1\n", "agents", 1),
        ("agents 2\nhub 0\nedge 1 1\n", "self-loop", 3),
    ])
    def test_errors_name_the_line(self, text, needle, line):
        with pytest.raises(ParseError) as err:
            parse_instance(text)
        assert needle in str(err.value) and err.value.line == line

    @given(trees(1, 20))
    def test_round_trip(self, tree):
        inst = Instance(3, tree)
        assert parse_instance(serialize_instance(inst)) == inst

    def test_allocation_round_trip(self):
        a = Allocation.of({1, 3}, set(), {2})
        text = format_allocation(a)
        assert text == "agent 0: 1 3\nagent 1:\nagent 2: 2\n"
        assert parse_allocation(text) == a

    def test_allocation_errors(self):
        with pytest.raises(ParseError):
            parse_allocation("agent 1: 2\n")
        with pytest.raises(ParseError):
            parse_allocation("")


class TestAllocation:
    def test_validate(self, fig1):
        inst = Instance(2, fig1)
        alloc(fig1, "abf", "cdeg").validate(inst)
        with pytest.raises(InvalidArgument):
            alloc(fig1, "abf", "cde").validate(inst)
        alloc(fig1, "abf", "cde").validate(inst, complete=False)
        with pytest.raises(InvalidArgument):
            alloc(fig1, "abf", "fcdeg").validate(inst)
        with pytest.raises(InvalidArgument):
            Allocation.of({0}, set(range(1, 8))).validate(inst)
        with pytest.raises(InvalidArgument):
            alloc(fig1, "abcdefg").validate(inst)

    def test_sorted_profile(self, fig1):
        a = alloc(fig1, "a", "bcdefg")
        assert a.costs(fig1) == (1, 6)
        assert a.profile(fig1) == (6, 1)
        assert a.sorted(fig1).bundles == (ids(fig1, "bcdefg"), ids(fig1, "a"))

    def test_rejects_bad_tree(self):
        with pytest.raises(InvalidArgument):
            RootedTree.from_edges(3, 0, [(0, 1)])
        with pytest.raises(InvalidArgument):
            RootedTree.from_edges(3, 0, [(0, 1), (1, 2), (2, 0)])


@st.composite
def nested_sets(draw):
    tree = draw(trees(2, 25))
    vertices = tree.non_hub()
    T = draw(st.sets(st.sampled_from(vertices)))
    S = draw(st.sets(st.sampled_from(sorted(T)))) if T else set()
    rest = [v for v in vertices if v not in T]
    v = draw(st.sampled_from(rest)) if rest else None
    return tree, S, T, v


@given(nested_sets())
def test_monotone_and_submodular(case):
    tree, S, T, v = case
    assert service_cost(tree, S) <= service_cost(tree, T)
    if v is not None:
        assert marginal_cost(tree, S, v) >= marginal_cost(tree, T, v)


@given(trees(1, 25), st.data())
def test_cost_matches_visited(tree, data):
    S = data.draw(st.sets(st.sampled_from(tree.non_hub()))) if tree.non_hub() else set()
    assert service_cost(tree, S) == len(visited_vertices(tree, S)) - 1
