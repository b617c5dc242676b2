import pytest
from hypothesis import given
from hypothesis import strategies as st

from fairdelivery.core import Allocation, Instance, RootedTree, tree_center
from fairdelivery.efficiency import (ExistenceVerdict, cost_gap_dominated_check, exists_ef1_po,
                                     exists_ef1_so, exists_mms_so, is_po, is_so, leximin_compare,
                                     leximin_select)
from fairdelivery.errors import InvalidArgument, ResourceLimitError
from fairdelivery.fairness import is_ef1, is_mms, mms_cost
from fairdelivery.frontier import find_pareto_frontier
from fairdelivery.gen import fixture, spider_from_integers

from _helpers import alloc, allocations, instances, path, star


@pytest.fixture
def fig1():
    return fixture("fig1")


@pytest.fixture
def fig1_frontier(fig1):
    return find_pareto_frontier(fig1)


SPIDER = Instance(2, spider_from_integers([3, 3, 3, 6, 6, 1]))


class TestSO:
    def test_single_branch_split_off(self, fig1):
        assert is_so(fig1, alloc(fig1.tree, "a", "bcdefg"))

    def test_all_to_one(self, fig1):
        assert is_so(fig1, alloc(fig1.tree, "abcdefg", ""))

    def test_split_branch(self, fig1):
        assert not is_so(fig1, alloc(fig1.tree, "abf", "cdeg"))

    @given(st.data())
    def test_criteria_agree_and_imply_po(self, data):
        inst = data.draw(instances(2, 9))
        a = data.draw(allocations(inst))
        if is_so(inst, a):  # asserts internally that both criteria agree
            assert is_po(inst, a, find_pareto_frontier(inst))


class TestPO:
    def test_example2(self, fig1, fig1_frontier):
        assert is_po(fig1, alloc(fig1.tree, "defg", "abc"), fig1_frontier)

    def test_example1_not_po(self, fig1, fig1_frontier):
        assert not is_po(fig1, alloc(fig1.tree, "abf", "cdeg"), fig1_frontier)

    def test_example3_dominated(self, fig1, fig1_frontier):
        assert not is_po(fig1, alloc(fig1.tree, "abdefg", "c"), fig1_frontier)

    def test_mismatched_frontier(self, fig1):
        other = find_pareto_frontier(fixture("fig6"))
        with pytest.raises(InvalidArgument):
            is_po(fig1, alloc(fig1.tree, "defg", "abc"), other)


class TestLeximin:
    def test_compare(self):
        assert leximin_compare((5, 3), (6, 1)) == -1
        assert leximin_compare((5, 3), (5, 3)) == 0
        assert leximin_compare((6, 1), (7, 0)) == -1
        assert leximin_compare((7, 0), (6, 1)) == 1
        with pytest.raises(InvalidArgument):
            leximin_compare((1,), (1, 0))

    def test_fig1(self, fig1, fig1_frontier):
        assert leximin_select(fig1_frontier).profile(fig1.tree) == (5, 3)

    def test_single_agent(self, fig1):
        inst = Instance(1, fig1.tree)
        a = leximin_select(find_pareto_frontier(inst))
        assert a == alloc(fig1.tree, "abcdefg")

    def test_spider_mms_value(self):
        # MMS is 12; see the spider leximin test in the acceptance suite
        a = leximin_select(find_pareto_frontier(SPIDER))
        assert a.profile(SPIDER.tree)[0] == 12

    @given(instances(2, 12))
    def test_leximin_is_mms_and_po(self, inst):
        frontier = find_pareto_frontier(inst)
        a = leximin_select(frontier)
        assert is_po(inst, a, frontier)
        assert is_mms(inst, a, mms_cost(inst, frontier=frontier).value)


class TestExistsEF1PO:
    def test_fig1(self, fig1_frontier):
        verdict = exists_ef1_po(fig1_frontier)
        assert verdict == ExistenceVerdict(False, None, "leximin-gap")

    def test_single_edge(self):
        inst = Instance(2, path(2))
        verdict = exists_ef1_po(find_pareto_frontier(inst))
        assert verdict.exists and verdict.witness.profile(inst.tree) == (1, 0)

    def test_witness_is_ef1(self):
        inst = Instance(3, star(5))
        verdict = exists_ef1_po(find_pareto_frontier(inst))
        assert verdict.exists and is_ef1(inst, verdict.witness)


class TestExistsEF1SO:
    def test_fig1(self, fig1):
        verdict = exists_ef1_so(fig1)
        assert not verdict.exists and verdict.reason == "center-precondition-failed"

    def test_fig1_rerooted_at_b(self, fig1):
        t = fig1.tree
        inst = Instance(2, RootedTree.from_edges(8, t.vertex("b"), t.edges(), t.labels))
        verdict = exists_ef1_so(inst)
        assert verdict.exists and verdict.reason == "balanced-branch-partition"
        assert verdict.witness == alloc(inst.tree, "defg", "hac")
        assert verdict.witness.costs(inst.tree) == (4, 3)
        assert is_so(inst, verdict.witness) and is_ef1(inst, verdict.witness)

    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_symmetric_spider(self, k):
        inst = Instance(k, spider_from_integers([3] * k))
        verdict = exists_ef1_so(inst)
        assert verdict.exists
        assert verdict.witness.costs(inst.tree) == (3,) * k

    def test_partition_search_after_center_check(self):
        # hub is central in both spiders; only 3,3,1,1 splits into equal halves
        inst = Instance(2, spider_from_integers([3, 3, 1, 1]))
        assert inst.tree.hub in tree_center(inst.tree)
        assert exists_ef1_so(inst).exists
        inst = Instance(2, spider_from_integers([3, 3, 2]))
        verdict = exists_ef1_so(inst)
        assert not verdict.exists and verdict.reason == "balanced-branch-partition"

    def test_branch_guard(self):
        with pytest.raises(ResourceLimitError):
            exists_ef1_so(Instance(2, star(30)))
        assert exists_ef1_so(Instance(2, star(30)), branch_limit=30).exists

    def test_single_agent(self, fig1):
        assert exists_ef1_so(Instance(1, fig1.tree)).exists

    @given(instances(2, 14, max_agents=4))
    def test_exists_implies_center(self, inst):
        if inst.agents >= 2 and exists_ef1_so(inst).exists:
            assert inst.tree.hub in tree_center(inst.tree)


class TestExistsMMSSO:
    def test_spider(self):
        verdict = exists_mms_so(SPIDER, 12)
        assert verdict.exists and verdict.reason == "branch-packing"
        assert verdict.witness.costs(SPIDER.tree) == (12, 10)
        assert is_so(SPIDER, verdict.witness)

    def test_fig1(self, fig1):
        assert not exists_mms_so(fig1, 5).exists

    def test_single_agent(self, fig1):
        inst = Instance(1, fig1.tree)
        verdict = exists_mms_so(inst, 7)
        assert verdict.exists and verdict.witness == alloc(fig1.tree, "abcdefg")


class TestCostGapDominated:
    def test_gap_one(self, fig1):
        assert cost_gap_dominated_check(fig1, alloc(fig1.tree, "abf", "cdeg")) is False

    def test_star_example_is_not_ef1(self):
        inst = Instance(2, star(4))
        with pytest.raises(InvalidArgument):
            cost_gap_dominated_check(inst, Allocation.of({1, 2, 3}, {4}))

    def test_gap_two_dominated(self):
        inst = Instance(3, path(3))
        a = Allocation.of({2}, {1}, set())
        assert a.costs(inst.tree) == (2, 1, 0) and is_ef1(inst, a)
        assert cost_gap_dominated_check(inst, a) is True

    def test_single_edge(self):
        assert cost_gap_dominated_check(Instance(2, path(2)), Allocation.of({1}, set())) is False


def test_verdict_format(fig1):
    assert exists_ef1_po(find_pareto_frontier(fig1)).format() == \
        "exists=false reason=leximin-gap witness=-"
    verdict = exists_mms_so(Instance(2, spider_from_integers([1, 1])), 1)
    assert verdict.format() == \
        "exists=true reason=branch-packing witness=agent 0: 1; agent 1: 2"
    with pytest.raises(InvalidArgument):
        ExistenceVerdict(True, None, "leximin-gap")


def test_spider_exhaustive_profiles():
    """All 2^22 two-agent allocations of the 3,3,3,6,6,1 spider, vectorised.

    On a spider a bundle's cost is the sum over legs of its deepest vertex.
    The cheapest maximum is 12 and the leximin profile is (12, 10): whole
    legs {6,6} against {3,3,3,1}. (12, 12) is dominated by it.
    """
    import numpy as np

    legs = [3, 3, 3, 6, 6, 1]
    masks = np.arange(1 << 22, dtype=np.int64)
    full = (1 << 22) - 1

    def cost(ms):
        total, bit = np.zeros_like(ms), 0
        for length in legs:
            deepest = np.zeros_like(ms)
            for depth in range(1, length + 1):
                deepest = np.where(ms & (1 << bit), depth, deepest)
                bit += 1
            total += deepest
        return total

    a, b = cost(masks), cost(full ^ masks)
    hi, lo = np.maximum(a, b), np.minimum(a, b)
    assert hi.min() == 12
    profiles = set(zip(hi.tolist(), lo.tolist()))
    pareto = {p for p in profiles
              if not any(q != p and q[0] <= p[0] and q[1] <= p[1] for q in profiles)}
    assert min(pareto) == (12, 10)
    assert (12, 12) not in pareto
    assert pareto == set(find_pareto_frontier(SPIDER).profiles)
    assert not exists_ef1_po(find_pareto_frontier(SPIDER)).exists
