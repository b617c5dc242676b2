"""Fair distribution of delivery orders on trees among identical agents."""
from .core import (Allocation, Instance, RootedTree, branches, marginal_cost, parse_allocation,
                   parse_instance, serialize_instance, service_cost, subtree, tree_center,
                   visited_vertices)
from .efficiency import (ExistenceVerdict, cost_gap_dominated_check, exists_ef1_po,
                         exists_ef1_so, exists_mms_so, is_po, is_so, leximin_compare,
                         leximin_select)
from .errors import InvalidArgument, ParseError, ResourceLimitError
from .fairness import MmsResult, envy_graph_ef1, is_ef, is_ef1, is_mms, mms_cost
from .frontier import (Frontier, combine_frontiers, find_pareto_frontier, frontier_stats,
                       strictly_dominates, weakly_dominates)
from .gen import fixture, random_tree_prufer, spider_from_integers
from .kernels import BACKEND

__version__ = "0.1.0"
