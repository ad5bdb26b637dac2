"""Exact computation for d-cluster-free set families and multigraph Turán problems."""

__version__ = "0.1.0"
