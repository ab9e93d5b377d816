"""Exact enumeration and coalescent statistics of ranked trees."""

from .closed_forms import evaluate_closed_forms, f_series_coefficients
from .distributions import (
    DistributionTable,
    JointCountTable,
    cherry_distribution,
    conditional_pitchfork_distribution,
    euler_numbers,
    expected_cherries,
    expected_pitchforks,
    extend_counts,
    identity_probability,
    joint_counts,
    joint_distribution,
    pitchfork_distribution,
    variance_cherries,
)
from .errors import (
    DomainError,
    MalformedMergeSequenceError,
    NullEventError,
    RankedTreeError,
    SizeOutOfRangeError,
)
from .simulate import SimConfig, estimate_identity_probability, estimate_statistics, sample_ranked_tree
from .trees import (
    IncreasingTree,
    canonical_code,
    coalescent_probability,
    count_pitchforks,
    enumerate_increasing_trees,
    outdegree_profile,
    tree_from_merge_sequence,
)

__version__ = "0.1.0"
