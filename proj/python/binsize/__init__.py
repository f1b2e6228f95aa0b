"""Exact minimum sample size for estimating a binomial proportion."""

from ._binsize import (
    ResourceLimit,
    baseline_bernoulli,
    baseline_chernoff,
    baseline_normal,
    candidates,
    coverage_at,
    min_coverage,
    min_sample_size,
)

__all__ = [
    "ResourceLimit",
    "baseline_bernoulli",
    "baseline_chernoff",
    "baseline_normal",
    "candidates",
    "coverage_at",
    "min_coverage",
    "min_sample_size",
]
