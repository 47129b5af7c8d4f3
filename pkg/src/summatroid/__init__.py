"""Sum-rank metric codes and sum-matroids over towers of finite fields."""

from .errors import ProfileMismatchError, ScaleError, TowerError
from .field_tower import FieldTower, make_tower
from .lattice import ProductElement, ProductLattice, Subspace, gaussian_binomial
from .sum_matroid import SumMatroid, check_axioms, from_code, uniform
from .sumrank_code import SumRankCode, dual_code, srank, support
from .weights import WeightHierarchy, code_weights, matroid_weights

__all__ = [
    "FieldTower", "make_tower", "ProductElement", "ProductLattice", "Subspace", "gaussian_binomial",
    "SumMatroid", "check_axioms", "from_code", "uniform", "SumRankCode", "dual_code", "srank", "support",
    "WeightHierarchy", "code_weights", "matroid_weights", "ProfileMismatchError", "ScaleError", "TowerError",
]
