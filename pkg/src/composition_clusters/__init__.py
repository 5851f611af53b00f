"""Exact enumeration of integer compositions avoiding sub-composition patterns."""

from .cluster import avoider_gf, cluster_gf, explain_system, joint_gf
from .compositions import Composition, PatternSet, parse_patterns

__all__ = [
    "Composition",
    "PatternSet",
    "avoider_gf",
    "cluster_gf",
    "explain_system",
    "joint_gf",
    "parse_patterns",
]
