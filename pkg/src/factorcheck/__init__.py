"""Exact verification of group factorizations G = HK for classical and
alternating groups, built on a small Schreier-Sims engine."""

__version__ = "0.1.0"
