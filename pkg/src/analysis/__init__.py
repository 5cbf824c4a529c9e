"""Propagation-latency analysis over the dependency graph."""

from src.analysis.empc import INFINITY, EmpcMap, compute_empc, dynamic_prop

__all__ = ["INFINITY", "EmpcMap", "compute_empc", "dynamic_prop"]
