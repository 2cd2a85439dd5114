from .groups import (
    FiniteGroup,
    GroupSpec,
    InvalidGroup,
    cyclic,
    dihedral,
    direct_product,
    group_vector,
    read_group,
    small_groups,
    symmetric,
    verify_group_multiplicative,
    write_group,
)
from .pmf import (
    InvalidPMF,
    JointPMF,
    entropy_vector,
    entropy_vector_mp,
    random_pmf,
    read_pmf,
    uniform_over,
    write_pmf,
)
from .search import SearchOptions, search_counterexample

__all__ = [
    "FiniteGroup", "GroupSpec", "InvalidGroup", "InvalidPMF", "JointPMF", "SearchOptions",
    "cyclic", "dihedral", "direct_product", "entropy_vector", "entropy_vector_mp",
    "group_vector", "random_pmf", "read_group", "read_pmf", "search_counterexample",
    "small_groups", "symmetric", "uniform_over", "verify_group_multiplicative",
    "write_group", "write_pmf",
]
