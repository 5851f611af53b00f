from .growth import GrowthError, GrowthEstimate, growth, growth_of, series
from .moments import FactorialMoments, LinearForm, MomentFitError, MomentReport, moments
from .normality import NormalityReport, bivariate_normal_moment, normality_check
from .ranking import RankRow, RankTable, rank_patterns, reversal_representatives

__all__ = [
    "FactorialMoments",
    "GrowthError",
    "GrowthEstimate",
    "LinearForm",
    "MomentFitError",
    "MomentReport",
    "NormalityReport",
    "RankRow",
    "RankTable",
    "bivariate_normal_moment",
    "growth",
    "growth_of",
    "moments",
    "normality_check",
    "rank_patterns",
    "reversal_representatives",
    "series",
]
